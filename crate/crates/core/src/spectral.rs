//! Invariant angle, eigenvalues and degeneracy classification of a normalized generator.
//!
//! For `tr H = 0` and `tr H² = 2` the only remaining invariant is `det H`, encoded as
//! the angle `φ = (arccos((3√3/2)·det H) − π/2)/3`. The eigenvalues follow as
//! `μ_k = (2/√3)·sin(φ + 2πk/3)`. With the principal arccos branch, `φ ∈ [−π/6, π/6]`,
//! branch `k = 1` carries the largest eigenvalue and `k = 2` the smallest; a double
//! eigenvalue always pairs branch 0 with one of them.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Result, Su3Error};
use crate::linalg3::HermitianGenerator;

/// Default eigenvalue-gap threshold below which two eigenvalues are treated as merged.
pub const DEFAULT_DEGENERACY_THRESHOLD: f64 = 1e-3;

/// Overshoot of the arccos argument beyond ±1 that is still attributed to roundoff.
pub const ARCCOS_CLAMP_TOL: f64 = 1e-9;

const TWO_OVER_SQRT3: f64 = 1.154_700_538_379_251_5;
const THREE_SQRT3_OVER_2: f64 = 2.598_076_211_353_316;

/// The invariant angle `φ`, always in `[−π/6, π/6]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct PhiAngle(f64);

impl PhiAngle {
    /// Wraps an arbitrary angle. Values outside the principal range are allowed here;
    /// they describe the same eigenvalue set up to a relabelling of the branches.
    pub fn new(phi: f64) -> Self {
        Self(phi)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `ψ_k = φ + 2πk/3`.
    pub fn branch_angle(self, k: usize) -> f64 {
        self.0 + 2.0 * PI * k as f64 / 3.0
    }

    /// `μ_k = (2/√3)·sin ψ_k`, unsorted.
    pub fn branch_eigenvalue(self, k: usize) -> f64 {
        TWO_OVER_SQRT3 * self.branch_angle(k).sin()
    }
}

/// Eigenvalues sorted in descending order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenTriple {
    pub mu: [f64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Degeneracy {
    Distinct,
    /// Two eigenvalues closer than the threshold; `branch` indexes the isolated one.
    Double {
        branch: usize,
        isolated: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralData {
    pub phi: PhiAngle,
    pub eigenvalues: EigenTriple,
    /// Eigenvalues indexed by branch `k` rather than sorted.
    pub branch_eigenvalues: [f64; 3],
    pub det: f64,
    pub degeneracy: Degeneracy,
    pub min_gap: f64,
    /// Gap threshold the classification was made with.
    pub threshold: f64,
}

impl SpectralData {
    pub fn is_distinct(&self) -> bool {
        self.degeneracy == Degeneracy::Distinct
    }
}

pub fn compute_phi(g: &HermitianGenerator) -> Result<PhiAngle> {
    phi_from_det(g.det())
}

/// `φ` from the determinant of a normalized generator.
pub fn phi_from_det(det: f64) -> Result<PhiAngle> {
    let arg = THREE_SQRT3_OVER_2 * det;
    if !arg.is_finite() || arg.abs() > 1.0 + ARCCOS_CLAMP_TOL {
        return Err(Su3Error::InvariantOutOfRange { value: arg });
    }
    let arg = arg.clamp(-1.0, 1.0);
    Ok(PhiAngle((arg.acos() - FRAC_PI_2) / 3.0))
}

/// `det H = −(2/(3√3))·sin 3φ`.
pub fn det_from_phi(p: PhiAngle) -> f64 {
    -(3.0 * p.0).sin() / THREE_SQRT3_OVER_2
}

pub fn eigenvalues_from_phi(p: PhiAngle) -> EigenTriple {
    let mut mu = [0, 1, 2].map(|k| p.branch_eigenvalue(k));
    mu.sort_by(|a, b| b.total_cmp(a));
    EigenTriple { mu }
}

pub fn analyze(g: &HermitianGenerator, delta: f64) -> Result<SpectralData> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Su3Error::InvalidParameter(format!(
            "degeneracy threshold must be positive and finite, got {delta}"
        )));
    }
    let det = g.det();
    let phi = phi_from_det(det)?;
    let branch_eigenvalues = [0, 1, 2].map(|k| phi.branch_eigenvalue(k));

    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| branch_eigenvalues[b].total_cmp(&branch_eigenvalues[a]));
    let mu = order.map(|k| branch_eigenvalues[k]);
    let upper_gap = mu[0] - mu[1];
    let lower_gap = mu[1] - mu[2];
    let min_gap = upper_gap.min(lower_gap);

    if upper_gap < delta && lower_gap < delta {
        // Unreachable for tr(H²) = 2 unless delta is of order one.
        return Err(Su3Error::InvalidParameter(format!(
            "threshold {delta} merges all three eigenvalues"
        )));
    }
    let degeneracy = if min_gap >= delta {
        Degeneracy::Distinct
    } else {
        let branch = if upper_gap < lower_gap { order[2] } else { order[0] };
        Degeneracy::Double {
            branch,
            isolated: branch_eigenvalues[branch],
        }
    };

    Ok(SpectralData {
        phi,
        eigenvalues: EigenTriple { mu },
        branch_eigenvalues,
        det,
        degeneracy,
        min_gap,
        threshold: delta,
    })
}
