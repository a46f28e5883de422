//! Forward and inverse coupling design: transfer-profile couplings, the
//! exponential coupling-law fit, separation synthesis, and the
//! nearest-neighbour validity bound.

use std::f64::consts::PI;

use crate::error::{ensure_positive, Error, Result};
use crate::lattice::{CouplingLaw, Geometry};

/// One directional-coupler measurement: separation in um, coupling in 1/cm.
/// The wavelength tag is metadata only and plays no role in the fit.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplerMeasurement {
    pub separation_um: f64,
    pub coupling_per_cm: f64,
    pub wavelength_nm: Option<f64>,
}

impl CouplerMeasurement {
    pub fn new(separation_um: f64, coupling_per_cm: f64) -> Result<Self> {
        ensure_positive("separation", separation_um)?;
        ensure_positive("coupling", coupling_per_cm)?;
        Ok(Self {
            separation_um,
            coupling_per_cm,
            wavelength_nm: None,
        })
    }
}

/// Result of the exponential-law regression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingFit {
    pub law: CouplingLaw,
    /// Root-mean-square residual of `ln C` over the data set.
    pub rms_log_residual: f64,
}

/// Nearest-neighbour validity summary: `epsilon = exp(-beta * d_min)` and
/// the largest site count a device of the given length supports at that
/// epsilon, `floor(4 L alpha epsilon / pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NNValidity {
    pub epsilon: f64,
    pub d_min_um: f64,
    pub max_sites_bound: u64,
}

/// Couplings that make an N-site chain a faithful transfer channel:
/// element k (1-based) is `c0 * sqrt((N - k) k)`, a palindromic sequence.
pub fn pst_couplings(n_sites: usize, c0_per_cm: f64) -> Result<Vec<f64>> {
    if n_sites < 2 {
        return Err(Error::invalid("n_sites", "need at least 2 sites"));
    }
    ensure_positive("c0", c0_per_cm)?;
    let n = n_sites as f64;
    Ok((1..n_sites)
        .map(|k| {
            let k = k as f64;
            c0_per_cm * ((n - k) * k).sqrt()
        })
        .collect())
}

/// Device length at which a chain with base coupling `c0` completes one
/// mirror transfer: `L = pi / (2 c0)`.
pub fn transfer_length(c0_per_cm: f64) -> Result<f64> {
    ensure_positive("c0", c0_per_cm)?;
    Ok(PI / (2.0 * c0_per_cm))
}

/// Base coupling that completes a mirror transfer over `length_cm`:
/// `c0 = pi / (2 L)`. Inverse of [`transfer_length`].
pub fn c0_for_length(length_cm: f64) -> Result<f64> {
    ensure_positive("length_cm", length_cm)?;
    Ok(PI / (2.0 * length_cm))
}

/// Coupling at separation `d` under the exponential law.
pub fn coupling_from_separation(law: &CouplingLaw, separation_um: f64) -> Result<f64> {
    ensure_positive("separation", separation_um)?;
    Ok(law.alpha() * (-law.beta() * separation_um).exp())
}

/// Inverts a coupling sequence to physical separations,
/// `d = ln(alpha / C) / beta`. Every coupling must satisfy `0 < C < alpha`;
/// a coupling at or above `alpha` would demand a non-positive separation and
/// is reported as infeasible rather than clamped.
pub fn design_separations(couplings_per_cm: &[f64], law: &CouplingLaw) -> Result<Geometry> {
    let mut separations = Vec::with_capacity(couplings_per_cm.len());
    for (i, c) in couplings_per_cm.iter().enumerate() {
        if !c.is_finite() || *c <= 0.0 {
            return Err(Error::invalid(
                "couplings",
                format!("entry {} must be positive, got {c}", i + 1),
            ));
        }
        if *c >= law.alpha() {
            return Err(Error::InfeasibleGeometry {
                index: i + 1,
                coupling: *c,
                alpha: law.alpha(),
            });
        }
        separations.push((law.alpha() / c).ln() / law.beta());
    }
    Geometry::new(separations)
}

/// Least-squares fit of `ln C = ln alpha - beta d` over coupler
/// measurements. The model is linear in `(ln alpha, beta)`, so ordinary
/// regression in log space recovers the generator exactly on noiseless data.
pub fn fit_coupling_law(measurements: &[CouplerMeasurement]) -> Result<CouplingFit> {
    for m in measurements {
        ensure_positive("separation", m.separation_um)?;
        ensure_positive("coupling", m.coupling_per_cm)?;
    }
    let mut distinct: Vec<f64> = Vec::new();
    for m in measurements {
        if !distinct.iter().any(|d| *d == m.separation_um) {
            distinct.push(m.separation_um);
        }
    }
    if distinct.len() < 2 {
        return Err(Error::UnderdeterminedFit {
            distinct: distinct.len(),
        });
    }

    let n = measurements.len() as f64;
    let mean_d = measurements.iter().map(|m| m.separation_um).sum::<f64>() / n;
    let mean_ln_c = measurements
        .iter()
        .map(|m| m.coupling_per_cm.ln())
        .sum::<f64>()
        / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for m in measurements {
        let dx = m.separation_um - mean_d;
        let dy = m.coupling_per_cm.ln() - mean_ln_c;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    // slope of ln C vs d is -beta
    let beta = -sxy / sxx;
    let ln_alpha = mean_ln_c + beta * mean_d;
    let law = CouplingLaw::new(ln_alpha.exp(), beta).map_err(|_| {
        Error::invalid(
            "measurements",
            "data does not describe a decaying exponential (fitted beta <= 0)",
        )
    })?;

    let mut ss = 0.0;
    for m in measurements {
        let r = m.coupling_per_cm.ln() - (ln_alpha - beta * m.separation_um);
        ss += r * r;
    }
    Ok(CouplingFit {
        law,
        rms_log_residual: (ss / n).sqrt(),
    })
}

/// `epsilon = exp(-beta * d_min)`: the weight of the strongest coupling the
/// nearest-neighbour truncation discards.
pub fn nn_epsilon(law: &CouplingLaw, d_min_um: f64) -> Result<f64> {
    ensure_positive("d_min", d_min_um)?;
    Ok((-law.beta() * d_min_um).exp())
}

/// Largest site count a device of length `L` supports while keeping
/// beyond-nearest-neighbour couplings under `epsilon`:
/// `floor(4 L alpha epsilon / pi)`.
pub fn max_sites_bound(length_cm: f64, alpha_per_cm: f64, epsilon: f64) -> Result<u64> {
    ensure_positive("length_cm", length_cm)?;
    ensure_positive("alpha", alpha_per_cm)?;
    ensure_positive("epsilon", epsilon)?;
    Ok((4.0 * length_cm * alpha_per_cm * epsilon / PI).floor() as u64)
}

/// Evaluates the nearest-neighbour validity of a geometry under a law, for
/// a device of the given length.
pub fn nn_validity(geometry: &Geometry, law: &CouplingLaw, length_cm: f64) -> Result<NNValidity> {
    let d_min = geometry.min_separation().ok_or_else(|| {
        Error::invalid("geometry", "needs at least one separation")
    })?;
    let epsilon = nn_epsilon(law, d_min)?;
    let bound = max_sites_bound(length_cm, law.alpha(), epsilon)?;
    Ok(NNValidity {
        epsilon,
        d_min_um: d_min,
        max_sites_bound: bound,
    })
}

/// Parses coupler measurements from delimited text: one record per line,
/// `separation_um, coupling_per_cm` with an optional third wavelength
/// column; `#` starts a comment line.
pub fn parse_measurements(text: &str) -> Result<Vec<CouplerMeasurement>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(Error::invalid(
                "measurements",
                format!("line {}: expected 2 or 3 comma-separated fields", lineno + 1),
            ));
        }
        let parse = |s: &str, what: &str| {
            s.parse::<f64>().map_err(|_| {
                Error::invalid(
                    "measurements",
                    format!("line {}: invalid {what} '{s}'", lineno + 1),
                )
            })
        };
        let mut m = CouplerMeasurement::new(
            parse(fields[0], "separation")?,
            parse(fields[1], "coupling")?,
        )?;
        if fields.len() == 3 {
            m.wavelength_nm = Some(parse(fields[2], "wavelength")?);
        }
        out.push(m);
    }
    Ok(out)
}
