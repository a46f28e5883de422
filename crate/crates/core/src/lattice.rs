//! Core domain types: coupling law, channel specification, geometry, and the
//! effective Hamiltonian of a one-dimensional waveguide lattice.
//!
//! Sites are indexed 1-based in the public API, matching the usual labelling
//! of waveguides in an array; internal storage is 0-based.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::design;
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Exponential map from waveguide separation to coupling strength,
/// `C(d) = alpha * exp(-beta * d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingLaw {
    alpha_per_cm: f64,
    beta_per_um: f64,
}

impl CouplingLaw {
    /// `alpha` in 1/cm, `beta` in 1/um; both must be positive.
    pub fn new(alpha_per_cm: f64, beta_per_um: f64) -> Result<Self> {
        ensure_positive("alpha", alpha_per_cm)?;
        ensure_positive("beta", beta_per_um)?;
        Ok(Self {
            alpha_per_cm,
            beta_per_um,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_per_cm
    }

    pub fn beta(&self) -> f64 {
        self.beta_per_um
    }
}

/// Coupling profile along the chain.
///
/// The transfer profile tapers couplings as `c0 * sqrt((N-k) k)` so that an
/// excitation entering site `k` exits at the mirror site `N-k+1`; `uniform`
/// and `harmonic` (`c0 * sqrt(k)`) are the standard comparison ladders.
#[derive(Debug, Clone, PartialEq)]
pub enum CouplingProfile {
    Pst { c0_per_cm: f64 },
    Uniform { c_per_cm: f64 },
    Harmonic { c0_per_cm: f64 },
    Custom { couplings_per_cm: Vec<f64> },
}

impl CouplingProfile {
    fn validate(&self, n_sites: usize) -> Result<()> {
        match self {
            CouplingProfile::Pst { c0_per_cm } => ensure_positive("c0", *c0_per_cm),
            CouplingProfile::Harmonic { c0_per_cm } => ensure_positive("c0", *c0_per_cm),
            CouplingProfile::Uniform { c_per_cm } => ensure_non_negative("c", *c_per_cm),
            CouplingProfile::Custom { couplings_per_cm } => {
                if couplings_per_cm.len() != n_sites.saturating_sub(1) {
                    return Err(Error::invalid(
                        "couplings",
                        format!(
                            "expected {} value(s) for {} sites, got {}",
                            n_sites.saturating_sub(1),
                            n_sites,
                            couplings_per_cm.len()
                        ),
                    ));
                }
                for (i, c) in couplings_per_cm.iter().enumerate() {
                    if !c.is_finite() || *c < 0.0 {
                        return Err(Error::invalid(
                            "couplings",
                            format!("entry {} must be non-negative, got {c}", i + 1),
                        ));
                    }
                }
                Ok(())
            }
        }
    }
}

/// A lattice description: site count, device length, and a coupling profile.
///
/// `n_sites = 1` is admitted as the trivial identity channel; propagation
/// through it leaves the input untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    n_sites: usize,
    length_cm: f64,
    profile: CouplingProfile,
}

impl ChannelSpec {
    pub fn new(n_sites: usize, length_cm: f64, profile: CouplingProfile) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::invalid("n_sites", "must be at least 1"));
        }
        ensure_positive("length_cm", length_cm)?;
        profile.validate(n_sites)?;
        Ok(Self {
            n_sites,
            length_cm,
            profile,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn length_cm(&self) -> f64 {
        self.length_cm
    }

    pub fn profile(&self) -> &CouplingProfile {
        &self.profile
    }

    /// The N-1 nearest-neighbour couplings prescribed by the profile, in 1/cm.
    pub fn couplings(&self) -> Vec<f64> {
        let n = self.n_sites;
        if n < 2 {
            return Vec::new();
        }
        match &self.profile {
            CouplingProfile::Pst { c0_per_cm } => design::pst_couplings(n, *c0_per_cm)
                .expect("validated spec yields valid transfer couplings"),
            CouplingProfile::Uniform { c_per_cm } => vec![*c_per_cm; n - 1],
            CouplingProfile::Harmonic { c0_per_cm } => {
                (1..n).map(|k| c0_per_cm * (k as f64).sqrt()).collect()
            }
            CouplingProfile::Custom { couplings_per_cm } => couplings_per_cm.clone(),
        }
    }
}

/// Ordered adjacent-waveguide separations, in micrometers.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    separations_um: Vec<f64>,
}

impl Geometry {
    pub fn new(separations_um: Vec<f64>) -> Result<Self> {
        for (i, d) in separations_um.iter().enumerate() {
            if !d.is_finite() || *d <= 0.0 {
                return Err(Error::invalid(
                    "separations",
                    format!("entry {} must be positive, got {d}", i + 1),
                ));
            }
        }
        Ok(Self { separations_um })
    }

    pub fn separations(&self) -> &[f64] {
        &self.separations_um
    }

    pub fn n_sites(&self) -> usize {
        self.separations_um.len() + 1
    }

    /// Smallest adjacent separation; `None` for a single-site geometry.
    pub fn min_separation(&self) -> Option<f64> {
        self.separations_um
            .iter()
            .copied()
            .fold(None, |m, d| Some(m.map_or(d, |m: f64| m.min(d))))
    }

    /// Absolute transverse positions with site 1 at the origin. Strictly
    /// increasing because every separation is positive.
    pub fn positions(&self) -> Vec<f64> {
        let mut pos = Vec::with_capacity(self.n_sites());
        let mut acc = 0.0;
        pos.push(acc);
        for d in &self.separations_um {
            acc += d;
            pos.push(acc);
        }
        pos
    }
}

/// Effective lattice Hamiltonian: a real-symmetric coupling matrix (1/cm)
/// plus a per-site complex diagonal `delta_k - i*gamma_k/2` where `delta_k`
/// is a detuning and `gamma_k` an amplitude-loss rate, both in 1/cm.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    couplings: DMatrix<f64>,
    diagonal: DVector<Complex64>,
}

impl Hamiltonian {
    /// Builds from an explicit symmetric coupling matrix and diagonal.
    /// The coupling matrix must be exactly symmetric with zero diagonal,
    /// and every diagonal imaginary part must be <= 0 (losses, not gain).
    pub fn from_parts(couplings: DMatrix<f64>, diagonal: DVector<Complex64>) -> Result<Self> {
        let n = couplings.nrows();
        if couplings.ncols() != n {
            return Err(Error::invalid("couplings", "matrix must be square"));
        }
        if diagonal.len() != n {
            return Err(Error::invalid(
                "diagonal",
                format!("expected {n} entries, got {}", diagonal.len()),
            ));
        }
        for k in 0..n {
            if couplings[(k, k)] != 0.0 {
                return Err(Error::invalid(
                    "couplings",
                    format!("diagonal entry {} must be zero", k + 1),
                ));
            }
            for l in 0..k {
                if couplings[(k, l)] != couplings[(l, k)] {
                    return Err(Error::invalid(
                        "couplings",
                        format!("entries ({},{}) and ({},{}) differ", k + 1, l + 1, l + 1, k + 1),
                    ));
                }
            }
        }
        for (k, v) in diagonal.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() || v.im > 0.0 {
                return Err(Error::invalid(
                    "diagonal",
                    format!("entry {} must be finite with non-positive imaginary part", k + 1),
                ));
            }
        }
        Ok(Self {
            couplings,
            diagonal,
        })
    }

    /// Nearest-neighbour Hamiltonian from a list of adjacent couplings,
    /// zero diagonal.
    pub fn tridiagonal(couplings: &[f64]) -> Result<Self> {
        let n = couplings.len() + 1;
        let mut m = DMatrix::zeros(n, n);
        for (k, c) in couplings.iter().enumerate() {
            if !c.is_finite() || *c < 0.0 {
                return Err(Error::invalid(
                    "couplings",
                    format!("entry {} must be non-negative, got {c}", k + 1),
                ));
            }
            m[(k, k + 1)] = *c;
            m[(k + 1, k)] = *c;
        }
        Ok(Self {
            couplings: m,
            diagonal: DVector::from_element(n, Complex64::new(0.0, 0.0)),
        })
    }

    pub fn size(&self) -> usize {
        self.couplings.nrows()
    }

    /// Coupling between 0-based sites `k` and `l`.
    pub fn coupling(&self, k: usize, l: usize) -> f64 {
        self.couplings[(k, l)]
    }

    pub fn coupling_matrix(&self) -> &DMatrix<f64> {
        &self.couplings
    }

    pub fn diagonal(&self) -> &DVector<Complex64> {
        &self.diagonal
    }

    /// Replaces the diagonal, keeping the coupling matrix.
    pub fn with_diagonal(&self, diagonal: DVector<Complex64>) -> Result<Self> {
        Self::from_parts(self.couplings.clone(), diagonal)
    }

    /// True when every diagonal imaginary part is zero.
    pub fn is_hermitian(&self) -> bool {
        self.diagonal.iter().all(|v| v.im == 0.0)
    }

    /// The common amplitude-loss rate `gamma` when all sites share one,
    /// `None` when losses differ between sites.
    pub fn uniform_loss_rate(&self) -> Option<f64> {
        let first = self.diagonal.get(0)?.im;
        if self.diagonal.iter().all(|v| v.im == first) {
            Some(-2.0 * first)
        } else {
            None
        }
    }

    /// Real part of the Hamiltonian: couplings plus detunings. This is the
    /// symmetric matrix the spectral solver diagonalizes.
    pub fn real_part(&self) -> DMatrix<f64> {
        let mut m = self.couplings.clone();
        for k in 0..self.size() {
            m[(k, k)] = self.diagonal[k].re;
        }
        m
    }

    /// Largest magnitude among couplings and diagonal entries, used to pick
    /// integrator steps.
    pub fn max_entry_abs(&self) -> f64 {
        let c = self
            .couplings
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let d = self
            .diagonal
            .iter()
            .fold(0.0f64, |m, v| m.max(v.norm()));
        c.max(d)
    }

    /// `y = H x` with the full complex diagonal.
    pub(crate) fn apply(&self, x: &DVector<Complex64>, y: &mut DVector<Complex64>) {
        let n = self.size();
        for k in 0..n {
            let mut acc = self.diagonal[k] * x[k];
            for l in 0..n {
                let c = self.couplings[(k, l)];
                if c != 0.0 {
                    acc += c * x[l];
                }
            }
            y[k] = acc;
        }
    }
}

/// Builds the nearest-neighbour Hamiltonian prescribed by a channel spec:
/// tridiagonal couplings from the profile, zero diagonal.
pub fn build_hamiltonian(spec: &ChannelSpec) -> Result<Hamiltonian> {
    Hamiltonian::tridiagonal(&spec.couplings())
}

/// Builds a banded Hamiltonian from physical geometry: entry (k, l) is
/// `alpha * exp(-beta * D_kl)` with `D_kl` the centre-to-centre distance
/// (sum of separations) between sites k and l. Entries below
/// `coupling_cutoff_per_cm` are set to exactly zero, which keeps the matrix
/// banded. `diagonal` may be empty for a resonant, lossless lattice.
pub fn build_hamiltonian_from_geometry(
    geometry: &Geometry,
    law: &CouplingLaw,
    coupling_cutoff_per_cm: f64,
    diagonal: Option<DVector<Complex64>>,
) -> Result<Hamiltonian> {
    ensure_non_negative("coupling_cutoff", coupling_cutoff_per_cm)?;
    let n = geometry.n_sites();
    let pos = geometry.positions();
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n {
        for l in (k + 1)..n {
            let c = design::coupling_from_separation(law, pos[l] - pos[k])?;
            if c >= coupling_cutoff_per_cm && c > 0.0 {
                m[(k, l)] = c;
                m[(l, k)] = c;
            }
        }
    }
    let diagonal =
        diagonal.unwrap_or_else(|| DVector::from_element(n, Complex64::new(0.0, 0.0)));
    Hamiltonian::from_parts(m, diagonal)
}

/// Default cutoff for geometry-derived couplings, far below anything that
/// affects results at the ~10 cm device scale.
pub const DEFAULT_COUPLING_CUTOFF_PER_CM: f64 = 1e-6;

/// Modal amplitudes over the lattice sites.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    amplitudes: Vec<Complex64>,
}

impl FieldState {
    /// Unit excitation on 1-based `site`.
    pub fn basis(n_sites: usize, site: usize) -> Result<Self> {
        if site == 0 || site > n_sites {
            return Err(Error::SiteOutOfRange {
                index: site,
                n_sites,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_sites];
        amplitudes[site - 1] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn intensities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn total_intensity(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}
