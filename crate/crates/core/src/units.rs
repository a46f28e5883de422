//! Unit conventions used throughout the crate.
//!
//! Propagation distance `z` and device length `L` are in centimeters,
//! waveguide separations in micrometers, couplings and loss rates in 1/cm.
//! Conversions happen here and nowhere else.

/// Converts an intensity loss in dB/cm to an amplitude decay rate in 1/cm.
///
/// Intensity decays as `10^(-loss_db * z / 10)`, so the amplitude rate
/// `gamma` satisfies `e^(-gamma * z) = 10^(-loss_db * z / 20)` per
/// amplitude, i.e. `gamma = ln(10)/10 * loss_db` with amplitudes carrying
/// `e^(-gamma * z / 2)`.
pub fn amplitude_rate_from_db(loss_db_per_cm: f64) -> f64 {
    std::f64::consts::LN_10 / 10.0 * loss_db_per_cm
}

/// Intensity attenuation factor over `z_cm` at `loss_db_per_cm`.
pub fn intensity_factor(loss_db_per_cm: f64, z_cm: f64) -> f64 {
    10f64.powf(-loss_db_per_cm * z_cm / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_conversion_matches_power_law() {
        let gamma = amplitude_rate_from_db(0.4);
        let z = 10.0;
        let amp = (-gamma * z / 2.0).exp();
        assert!((amp * amp - 10f64.powf(-0.4)).abs() < 1e-15);
    }
}
