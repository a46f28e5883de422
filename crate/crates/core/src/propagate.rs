//! Propagation of an excitation through the lattice.
//!
//! The primary solver is spectral: the coupled-mode equations
//! `i dpsi/dz = H psi` have constant coefficients, so
//! `psi(z) = exp(-i H z) psi(0)` is evaluated exactly per z sample from the
//! eigendecomposition of the real-symmetric part of `H`. Uniform loss
//! factors out of the evolution as a scalar `exp(-gamma z / 2)`; site-varying
//! loss makes `H` genuinely non-Hermitian and takes the fixed-step
//! integrator path instead. The integrator also serves as an independent
//! numerical oracle for the spectral solver.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{ensure_non_negative, Error, Result};
use crate::lattice::Hamiltonian;
use crate::units;

/// Default number of z samples for intensity maps; resolves every
/// oscillation at device-scale couplings.
pub const DEFAULT_Z_SAMPLES: usize = 501;

/// Spectral residual allowed per eigenpair, relative to the matrix norm.
const EIGEN_RESIDUAL_REL: f64 = 1e-10;

/// Integrator accuracy rule: a step of `1e-3 / max|H|` keeps the fixed-step
/// solution within 1e-8 of the spectral one.
const STEP_ACCURACY_FACTOR: f64 = 1e-3;

/// Complex amplitudes on a z grid: one row per sample, one column per site.
/// The numerical analog of a top-view fluorescence image of the array.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationRecord {
    z_grid_cm: Vec<f64>,
    /// rows = z samples, columns = sites
    amplitudes: DMatrix<Complex64>,
    input_site: usize,
}

impl PropagationRecord {
    pub fn z_grid(&self) -> &[f64] {
        &self.z_grid_cm
    }

    pub fn n_samples(&self) -> usize {
        self.z_grid_cm.len()
    }

    pub fn n_sites(&self) -> usize {
        self.amplitudes.ncols()
    }

    /// 1-based site the excitation entered at.
    pub fn input_site(&self) -> usize {
        self.input_site
    }

    pub fn amplitude(&self, sample: usize, site_zero_based: usize) -> Complex64 {
        self.amplitudes[(sample, site_zero_based)]
    }

    /// `|psi_site(z_sample)|^2` with a 0-based site index.
    pub fn intensity(&self, sample: usize, site_zero_based: usize) -> f64 {
        self.amplitudes[(sample, site_zero_based)].norm_sqr()
    }

    pub fn intensity_row(&self, sample: usize) -> Vec<f64> {
        (0..self.n_sites())
            .map(|j| self.intensity(sample, j))
            .collect()
    }

    pub fn total_intensity(&self, sample: usize) -> f64 {
        (0..self.n_sites()).map(|j| self.intensity(sample, j)).sum()
    }

    /// Largest per-site intensity difference against another record on the
    /// same grid.
    pub fn max_intensity_deviation(&self, other: &PropagationRecord) -> f64 {
        let mut max = 0.0f64;
        for i in 0..self.n_samples() {
            for j in 0..self.n_sites() {
                max = max.max((self.intensity(i, j) - other.intensity(i, j)).abs());
            }
        }
        max
    }

    /// Rescales every row to unit total intensity. This is the loss
    /// convention used for reporting transfer fractions: relative site
    /// populations survive, the global decay does not.
    pub fn renormalized(&self) -> PropagationRecord {
        let mut amplitudes = self.amplitudes.clone();
        for i in 0..self.n_samples() {
            let total = self.total_intensity(i);
            if total > 0.0 {
                let scale = Complex64::new(1.0 / total.sqrt(), 0.0);
                for j in 0..self.n_sites() {
                    amplitudes[(i, j)] *= scale;
                }
            }
        }
        PropagationRecord {
            z_grid_cm: self.z_grid_cm.clone(),
            amplitudes,
            input_site: self.input_site,
        }
    }

    /// Writes the intensity map as delimited text: header
    /// `z_cm, I_1, ..., I_N`, one row per z sample, every value printed
    /// with 12 significant digits so repeated runs are byte-identical.
    pub fn write_intensity_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "z_cm")?;
        for j in 1..=self.n_sites() {
            write!(w, ", I_{j}")?;
        }
        writeln!(w)?;
        for i in 0..self.n_samples() {
            write!(w, "{}", format_sig12(self.z_grid_cm[i]))?;
            for j in 0..self.n_sites() {
                write!(w, ", {}", format_sig12(self.intensity(i, j)))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Formats with 12 significant digits in scientific notation.
pub(crate) fn format_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Uniform grid of `samples` points covering `[0, length_cm]`.
pub fn uniform_grid(length_cm: f64, samples: usize) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::InvalidGrid {
            message: "need at least one sample".into(),
        });
    }
    if !(length_cm > 0.0) {
        return Err(Error::invalid("length_cm", "must be positive"));
    }
    if samples == 1 {
        return Ok(vec![length_cm]);
    }
    let step = length_cm / (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            if i + 1 == samples {
                length_cm
            } else {
                i as f64 * step
            }
        })
        .collect())
}

fn validate_grid(z_grid: &[f64]) -> Result<()> {
    if z_grid.is_empty() {
        return Err(Error::InvalidGrid {
            message: "grid is empty".into(),
        });
    }
    if !z_grid.iter().all(|z| z.is_finite() && *z >= 0.0) {
        return Err(Error::InvalidGrid {
            message: "grid must be non-negative and finite".into(),
        });
    }
    if z_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid {
            message: "grid must be strictly increasing".into(),
        });
    }
    Ok(())
}

fn validate_site(h: &Hamiltonian, input_site: usize) -> Result<()> {
    if input_site == 0 || input_site > h.size() {
        return Err(Error::SiteOutOfRange {
            index: input_site,
            n_sites: h.size(),
        });
    }
    Ok(())
}

/// Eigendecomposition of the real-symmetric part of `h`, with the residual
/// check `||H v - lambda v|| <= 1e-10 ||H||` per pair in debug builds.
fn symmetric_eigen(h: &Hamiltonian) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let real = h.real_part();
    let eig = SymmetricEigen::new(real.clone());
    if cfg!(debug_assertions) {
        let norm = real.norm().max(f64::MIN_POSITIVE);
        for (i, lambda) in eig.eigenvalues.iter().enumerate() {
            let v = eig.eigenvectors.column(i);
            let residual = (&real * v - *lambda * v).norm();
            debug_assert!(
                residual <= EIGEN_RESIDUAL_REL * norm,
                "eigenpair {i} residual {residual:e} exceeds {EIGEN_RESIDUAL_REL:e} * {norm:e}"
            );
        }
    }
    eig
}

/// Evolves a unit excitation on `input_site` (1-based) through `h`,
/// sampling the state at every grid point.
///
/// Hermitian lattices and lattices with one common loss rate are evaluated
/// exactly per sample from the eigendecomposition; site-varying loss falls
/// back to the fixed-step integrator with an automatically chosen step.
pub fn propagate_spectral(
    h: &Hamiltonian,
    input_site: usize,
    z_grid: &[f64],
) -> Result<PropagationRecord> {
    validate_site(h, input_site)?;
    validate_grid(z_grid)?;

    let gamma = match h.uniform_loss_rate() {
        Some(g) => g,
        None => {
            // non-uniform loss: no scalar factorization exists, integrate
            let step = auto_step(h, z_grid);
            return integrate_fixed_step(h, input_site, z_grid, step);
        }
    };

    let n = h.size();
    let eig = symmetric_eigen(h);
    let weights = eig.eigenvectors.row(input_site - 1).transpose();

    let mut amplitudes = DMatrix::from_element(z_grid.len(), n, Complex64::new(0.0, 0.0));
    for (i, &z) in z_grid.iter().enumerate() {
        let decay = (-gamma * z / 2.0).exp();
        let phases: DVector<Complex64> = DVector::from_iterator(
            n,
            eig.eigenvalues
                .iter()
                .zip(weights.iter())
                .map(|(lambda, w)| Complex64::from_polar(decay * w, -lambda * z)),
        );
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..n {
                acc += eig.eigenvectors[(j, m)] * phases[m];
            }
            amplitudes[(i, j)] = acc;
        }
    }
    Ok(PropagationRecord {
        z_grid_cm: z_grid.to_vec(),
        amplitudes,
        input_site,
    })
}

/// Step that keeps the fixed-step integrator within 1e-8 of the spectral
/// solution while also fitting between grid points.
fn auto_step(h: &Hamiltonian, z_grid: &[f64]) -> f64 {
    let max_entry = h.max_entry_abs();
    let accuracy = if max_entry > 0.0 {
        STEP_ACCURACY_FACTOR / max_entry
    } else {
        f64::INFINITY
    };
    accuracy.min(min_interval(z_grid)).max(f64::MIN_POSITIVE)
}

/// Smallest positive integration interval implied by the grid, including
/// the lead-in from z = 0 to the first sample.
fn min_interval(z_grid: &[f64]) -> f64 {
    let mut min = f64::INFINITY;
    if z_grid[0] > 0.0 {
        min = z_grid[0];
    }
    for w in z_grid.windows(2) {
        min = min.min(w[1] - w[0]);
    }
    min
}

/// Classical fourth-order fixed-step integration of `dpsi/dz = -i H psi`.
/// Exists as an independent oracle for the spectral path and as the solver
/// for site-varying loss. Refuses steps that cannot resolve the grid.
pub fn propagate_integrator(
    h: &Hamiltonian,
    input_site: usize,
    z_grid: &[f64],
    step_cm: f64,
) -> Result<PropagationRecord> {
    validate_site(h, input_site)?;
    validate_grid(z_grid)?;
    if !(step_cm > 0.0) {
        return Err(Error::invalid("step", "must be positive"));
    }
    let limit = min_interval(z_grid);
    if step_cm > limit {
        return Err(Error::StepTooLarge {
            step: step_cm,
            max_allowed: auto_step(h, z_grid),
        });
    }
    integrate_fixed_step(h, input_site, z_grid, step_cm)
}

fn integrate_fixed_step(
    h: &Hamiltonian,
    input_site: usize,
    z_grid: &[f64],
    step_cm: f64,
) -> Result<PropagationRecord> {
    let n = h.size();
    let mut psi = DVector::from_element(n, Complex64::new(0.0, 0.0));
    psi[input_site - 1] = Complex64::new(1.0, 0.0);

    let mut k1 = psi.clone();
    let mut k2 = psi.clone();
    let mut k3 = psi.clone();
    let mut k4 = psi.clone();
    let mut scratch = psi.clone();

    let mut amplitudes = DMatrix::from_element(z_grid.len(), n, Complex64::new(0.0, 0.0));
    let mut z = 0.0;
    for (i, &z_target) in z_grid.iter().enumerate() {
        let span = z_target - z;
        if span > 0.0 {
            let substeps = (span / step_cm).ceil().max(1.0) as usize;
            let hstep = span / substeps as f64;
            for _ in 0..substeps {
                rk4_step(h, &mut psi, hstep, &mut k1, &mut k2, &mut k3, &mut k4, &mut scratch);
            }
            z = z_target;
        }
        for j in 0..n {
            amplitudes[(i, j)] = psi[j];
        }
    }
    Ok(PropagationRecord {
        z_grid_cm: z_grid.to_vec(),
        amplitudes,
        input_site,
    })
}

/// `rhs = -i H psi`, evaluated into `out`.
fn rhs(h: &Hamiltonian, psi: &DVector<Complex64>, out: &mut DVector<Complex64>) {
    h.apply(psi, out);
    for v in out.iter_mut() {
        *v *= -Complex64::i();
    }
}

#[allow(clippy::too_many_arguments)]
fn rk4_step(
    h: &Hamiltonian,
    psi: &mut DVector<Complex64>,
    step: f64,
    k1: &mut DVector<Complex64>,
    k2: &mut DVector<Complex64>,
    k3: &mut DVector<Complex64>,
    k4: &mut DVector<Complex64>,
    scratch: &mut DVector<Complex64>,
) {
    let n = psi.len();
    rhs(h, psi, k1);
    for j in 0..n {
        scratch[j] = psi[j] + 0.5 * step * k1[j];
    }
    rhs(h, scratch, k2);
    for j in 0..n {
        scratch[j] = psi[j] + 0.5 * step * k2[j];
    }
    rhs(h, scratch, k3);
    for j in 0..n {
        scratch[j] = psi[j] + step * k3[j];
    }
    rhs(h, scratch, k4);
    for j in 0..n {
        psi[j] += step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
}

/// Applies a uniform propagation loss to a lossless record: each row is
/// scaled by the amplitude factor `10^(-loss z / 20)`.
pub fn apply_uniform_loss(
    record: &PropagationRecord,
    loss_db_per_cm: f64,
) -> Result<PropagationRecord> {
    ensure_non_negative("loss_db_per_cm", loss_db_per_cm)?;
    let gamma = units::amplitude_rate_from_db(loss_db_per_cm);
    let mut amplitudes = record.amplitudes.clone();
    for (i, &z) in record.z_grid_cm.iter().enumerate() {
        let factor = Complex64::new((-gamma * z / 2.0).exp(), 0.0);
        for j in 0..record.n_sites() {
            amplitudes[(i, j)] *= factor;
        }
    }
    Ok(PropagationRecord {
        z_grid_cm: record.z_grid_cm.clone(),
        amplitudes,
        input_site: record.input_site,
    })
}

/// Closed-form site intensities for the transfer profile with the
/// excitation entering site 1:
/// `I_j(z) = C(N-1, j-1) sin^(2(j-1))(c0 z) cos^(2(N-j))(c0 z)`.
///
/// An independent analytic oracle for the spectral and integrator paths;
/// its agreement with them is pinned by tests across N = 2..=12.
pub fn closed_form_pst_intensity(n_sites: usize, c0_per_cm: f64, z_cm: f64) -> Result<Vec<f64>> {
    if n_sites < 2 {
        return Err(Error::invalid("n_sites", "need at least 2 sites"));
    }
    crate::error::ensure_positive("c0", c0_per_cm)?;
    ensure_non_negative("z", z_cm)?;
    let s2 = (c0_per_cm * z_cm).sin().powi(2);
    let c2 = (c0_per_cm * z_cm).cos().powi(2);
    let n = n_sites;
    let mut out = Vec::with_capacity(n);
    // walk the binomial row to avoid large factorials
    let mut binom = 1.0f64;
    for j in 1..=n {
        let i = binom * s2.powi((j - 1) as i32) * c2.powi((n - j) as i32);
        out.push(i);
        binom *= (n - j) as f64 / j as f64;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design;
    use crate::lattice::{build_hamiltonian, ChannelSpec, CouplingProfile};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn pst_hamiltonian(n: usize, c0: f64) -> Hamiltonian {
        let spec = ChannelSpec::new(n, 10.0, CouplingProfile::Pst { c0_per_cm: c0 }).unwrap();
        build_hamiltonian(&spec).unwrap()
    }

    #[test]
    fn perfect_transfer_at_device_length() {
        let h = pst_hamiltonian(9, PI / 20.0);
        let rec = propagate_spectral(&h, 1, &[10.0]).unwrap();
        assert!((rec.intensity(0, 8) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn identity_at_zero_length() {
        let h = pst_hamiltonian(5, 0.3);
        let rec = propagate_spectral(&h, 3, &[0.0, 1.0]).unwrap();
        assert_eq!(rec.amplitude(0, 2), Complex64::new(1.0, 0.0));
        for j in [0, 1, 3, 4] {
            assert_eq!(rec.amplitude(0, j), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn two_site_rabi_oscillation() {
        let c = 0.42;
        let h = Hamiltonian::tridiagonal(&[c]).unwrap();
        let grid = uniform_grid(10.0, 101).unwrap();
        let rec = propagate_spectral(&h, 1, &grid).unwrap();
        for (i, &z) in grid.iter().enumerate() {
            assert_relative_eq!(
                rec.intensity(i, 1),
                (c * z).sin().powi(2),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn central_input_self_images() {
        let h = pst_hamiltonian(9, PI / 20.0);
        let rec = propagate_spectral(&h, 5, &[10.0]).unwrap();
        assert!((rec.intensity(0, 4) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lossless_rows_stay_normalized() {
        let h = pst_hamiltonian(7, 0.21);
        let grid = uniform_grid(12.0, 101).unwrap();
        let rec = propagate_spectral(&h, 2, &grid).unwrap();
        for i in 0..rec.n_samples() {
            assert!((rec.total_intensity(i) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn out_of_range_input_site() {
        let h = pst_hamiltonian(4, 0.3);
        assert!(matches!(
            propagate_spectral(&h, 5, &[1.0]),
            Err(Error::SiteOutOfRange { .. })
        ));
        assert!(matches!(
            propagate_spectral(&h, 0, &[1.0]),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn non_monotone_grid_rejected() {
        let h = pst_hamiltonian(4, 0.3);
        assert!(matches!(
            propagate_spectral(&h, 1, &[0.0, 1.0, 1.0]),
            Err(Error::InvalidGrid { .. })
        ));
        assert!(matches!(
            propagate_spectral(&h, 1, &[]),
            Err(Error::InvalidGrid { .. })
        ));
        assert!(matches!(
            propagate_spectral(&h, 1, &[-1.0, 1.0]),
            Err(Error::InvalidGrid { .. })
        ));
    }

    #[test]
    fn integrator_refuses_oversized_step() {
        let h = pst_hamiltonian(4, 0.3);
        let err = propagate_integrator(&h, 1, &[0.0, 0.5, 1.0], 0.7).unwrap_err();
        match err {
            Error::StepTooLarge { max_allowed, .. } => assert!(max_allowed <= 0.5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn integrator_zero_hamiltonian_constant_state() {
        let h = Hamiltonian::tridiagonal(&[0.0, 0.0]).unwrap();
        let rec = propagate_integrator(&h, 2, &[0.0, 1.0, 5.0], 0.1).unwrap();
        for i in 0..3 {
            assert_eq!(rec.intensity(i, 1), 1.0);
        }
    }

    #[test]
    fn integrator_matches_spectral() {
        let h = pst_hamiltonian(9, PI / 20.0);
        let grid = uniform_grid(10.0, 51).unwrap();
        let spectral = propagate_spectral(&h, 1, &grid).unwrap();
        let step = 1e-3 / h.max_entry_abs();
        let integrated = propagate_integrator(&h, 1, &grid, step).unwrap();
        assert!(spectral.max_intensity_deviation(&integrated) < 1e-8);
    }

    #[test]
    fn nonuniform_loss_takes_integrator_path() {
        let mut diag = DVector::from_element(3, Complex64::new(0.0, -0.02));
        diag[1] = Complex64::new(0.0, -0.08);
        let h = Hamiltonian::tridiagonal(&[0.5, 0.5])
            .unwrap()
            .with_diagonal(diag)
            .unwrap();
        let grid = uniform_grid(4.0, 21).unwrap();
        let rec = propagate_spectral(&h, 1, &grid).unwrap();
        // cross-check against an explicit fine-step integration
        let oracle = propagate_integrator(&h, 1, &grid, 1e-4).unwrap();
        assert!(rec.max_intensity_deviation(&oracle) < 1e-8);
        // total intensity must decay
        assert!(rec.total_intensity(rec.n_samples() - 1) < 1.0);
    }

    #[test]
    fn uniform_loss_total_intensity() {
        let h = pst_hamiltonian(9, PI / 20.0);
        let rec = propagate_spectral(&h, 1, &[10.0]).unwrap();
        let lossy = apply_uniform_loss(&rec, 0.4).unwrap();
        assert_relative_eq!(lossy.total_intensity(0), 10f64.powf(-0.4), epsilon = 1e-9);
    }

    #[test]
    fn zero_loss_is_identity() {
        let h = pst_hamiltonian(5, 0.3);
        let rec = propagate_spectral(&h, 1, &uniform_grid(10.0, 11).unwrap()).unwrap();
        let same = apply_uniform_loss(&rec, 0.0).unwrap();
        assert_eq!(rec, same);
    }

    #[test]
    fn renormalizing_lossy_record_recovers_lossless() {
        let h = pst_hamiltonian(6, 0.4);
        let rec = propagate_spectral(&h, 2, &uniform_grid(10.0, 41).unwrap()).unwrap();
        let lossy = apply_uniform_loss(&rec, 0.4).unwrap();
        let back = lossy.renormalized();
        assert!(rec.max_intensity_deviation(&back) < 1e-9);
    }

    #[test]
    fn loss_built_into_diagonal_matches_applied_loss() {
        let gamma = units::amplitude_rate_from_db(0.4);
        let h = pst_hamiltonian(9, PI / 20.0);
        let lossy_h = h
            .with_diagonal(DVector::from_element(9, Complex64::new(0.0, -gamma / 2.0)))
            .unwrap();
        let grid = uniform_grid(10.0, 26).unwrap();
        let direct = propagate_spectral(&lossy_h, 1, &grid).unwrap();
        let applied =
            apply_uniform_loss(&propagate_spectral(&h, 1, &grid).unwrap(), 0.4).unwrap();
        assert!(direct.max_intensity_deviation(&applied) < 1e-9);
    }

    #[test]
    fn closed_form_endpoints() {
        let c0 = PI / 20.0;
        let at_transfer = closed_form_pst_intensity(9, c0, 10.0).unwrap();
        assert!((at_transfer[8] - 1.0).abs() < 1e-12);
        assert!(at_transfer[..8].iter().all(|i| *i < 1e-12));
        let at_zero = closed_form_pst_intensity(9, c0, 0.0).unwrap();
        assert_eq!(at_zero[0], 1.0);
        assert!(at_zero[1..].iter().all(|i| *i == 0.0));
    }

    #[test]
    fn closed_form_matches_spectral_up_to_twelve_sites() {
        // validation gate for the analytic formula before anything relies
        // on it
        for n in 2..=12 {
            let c0 = 0.23;
            let h = pst_hamiltonian(n, c0);
            for z in [0.0, 1.3, 5.0, PI / (2.0 * c0)] {
                let rec = propagate_spectral(&h, 1, &[z.max(1e-12)]).unwrap();
                let closed = closed_form_pst_intensity(n, c0, z.max(1e-12)).unwrap();
                for j in 0..n {
                    assert!(
                        (rec.intensity(0, j) - closed[j]).abs() < 1e-10,
                        "N={n} z={z} site={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_n9_midpoint_matches_spectral() {
        let c0 = PI / 20.0;
        let h = pst_hamiltonian(9, c0);
        let rec = propagate_spectral(&h, 1, &[5.0]).unwrap();
        let closed = closed_form_pst_intensity(9, c0, 5.0).unwrap();
        for j in 0..9 {
            assert!((rec.intensity(0, j) - closed[j]).abs() < 1e-10);
        }
    }

    #[test]
    fn grid_invariance_of_sampled_intensity() {
        let h = pst_hamiltonian(9, PI / 20.0);
        let z = 3.7;
        let lone = propagate_spectral(&h, 1, &[z]).unwrap();
        let embedded = propagate_spectral(&h, 1, &[0.5, 1.9, z, 8.8]).unwrap();
        for j in 0..9 {
            assert_relative_eq!(lone.intensity(0, j), embedded.intensity(2, j), epsilon = 1e-14);
        }
    }

    #[test]
    fn csv_export_format() {
        let h = Hamiltonian::tridiagonal(&[0.5]).unwrap();
        let rec = propagate_spectral(&h, 1, &[0.0, 1.0]).unwrap();
        let mut buf = Vec::new();
        rec.write_intensity_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "z_cm, I_1, I_2");
        let row = lines.next().unwrap();
        assert!(row.starts_with("0.00000000000e0, 1.00000000000e0"), "row: {row}");
    }

    #[test]
    fn uniform_grid_includes_endpoints() {
        let g = uniform_grid(10.0, DEFAULT_Z_SAMPLES).unwrap();
        assert_eq!(g.len(), DEFAULT_Z_SAMPLES);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 10.0);
    }
}
