//! Closed-form evaluation of `exp(iθH)` for normalized generators.
//!
//! The general result is a sum over the three spectral projectors, each a
//! quadratic polynomial in `H`:
//!
//! ```text
//! exp(iθH) = Σ_k [H² + μ_k H − (1/3)(1 + 2cos 2ψ_k) I] / (1 − 2cos 2ψ_k) · exp(iθμ_k)
//! ```
//!
//! with `ψ_k = φ + 2πk/3` and `μ_k = (2/√3) sin ψ_k`. The denominator equals
//! `(μ_k − μ_j)(μ_k − μ_l)` and vanishes when two eigenvalues meet, so a
//! near-double spectrum is evaluated through the isolated projector and the
//! exact exponential of the remaining two-dimensional block instead.

use std::fmt;

use crate::error::{Result, Su3Error};
use crate::linalg3::{validate_and_normalize, Complex, HermitianGenerator, Matrix3, DEFAULT_VALIDATION_TOL, I};
use crate::spectral::{analyze, Degeneracy, PhiAngle, SpectralData, DEFAULT_DEGENERACY_THRESHOLD};

const TWO_OVER_SQRT3: f64 = 1.154_700_538_379_251_5;

/// Default `|det H|` bound for the Euler–Rodrigues fast path.
pub const DEFAULT_RODRIGUES_DET_TOL: f64 = 1e-12;

/// Thresholds that select the evaluation path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    /// Eigenvalue gap below which two eigenvalues are merged.
    pub delta: f64,
    /// `|det H|` at or below which the Rodrigues formula is used.
    pub det_tol: f64,
    /// Hermiticity/trace tolerance for input validation.
    pub validation_tol: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            delta: DEFAULT_DEGENERACY_THRESHOLD,
            det_tol: DEFAULT_RODRIGUES_DET_TOL,
            validation_tol: DEFAULT_VALIDATION_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Distinct,
    Degenerate,
    Rodrigues,
    Transfer,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Distinct => "distinct",
            Method::Degenerate => "degenerate",
            Method::Rodrigues => "rodrigues",
            Method::Transfer => "transfer",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An SU(3) matrix produced by one of the evaluation paths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    u: Matrix3,
}

impl GroupElement {
    pub fn matrix(&self) -> &Matrix3 {
        &self.u
    }

    pub fn into_matrix(self) -> Matrix3 {
        self.u
    }

    /// `‖U†U − I‖_F`
    pub fn unitarity_residual(&self) -> f64 {
        self.u.unitarity_residual()
    }

    /// `|det U − 1|`
    pub fn det_residual(&self) -> f64 {
        (self.u.det() - Complex::new(1.0, 0.0)).norm()
    }
}

/// Diagnostics for one evaluation. Residuals are measured on the returned matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalReport {
    pub method: Method,
    pub phi: f64,
    pub theta_effective: f64,
    pub unitarity_residual: f64,
    pub det_residual: f64,
}

impl EvalReport {
    fn measure(method: Method, sd: &SpectralData, theta_effective: f64, u: &GroupElement) -> Self {
        Self {
            method,
            phi: sd.phi.value(),
            theta_effective,
            unitarity_residual: u.unitarity_residual(),
            det_residual: u.det_residual(),
        }
    }
}

fn phase(x: f64) -> Complex {
    Complex::from_polar(1.0, x)
}

/// Bracketed numerator of branch `k` and its denominator `1 − 2cos 2ψ_k`.
fn branch_terms(g: &HermitianGenerator, p: PhiAngle, k: usize) -> (Matrix3, f64) {
    let psi = p.branch_angle(k);
    let cos2 = (2.0 * psi).cos();
    let numerator =
        *g.square() + *g.matrix() * (TWO_OVER_SQRT3 * psi.sin()) - Matrix3::identity() * ((1.0 + 2.0 * cos2) / 3.0);
    (numerator, 1.0 - 2.0 * cos2)
}

/// Spectral projector of branch `k`; fails when `|1 − 2cos 2ψ_k| < den_bound`.
pub fn projector_term(g: &HermitianGenerator, p: PhiAngle, k: usize, den_bound: f64) -> Result<Matrix3> {
    let (numerator, den) = branch_terms(g, p, k);
    if den.abs() < den_bound || den == 0.0 {
        return Err(Su3Error::DegenerateDenominator {
            branch: k,
            denominator: den,
            bound: den_bound,
        });
    }
    Ok(numerator.scale_real(1.0 / den))
}

/// `(H − μ_j)(H − μ_l)/((μ − μ_j)(μ − μ_l))` written through `μ` alone.
fn projector_for_eigenvalue(g: &HermitianGenerator, mu: f64) -> Matrix3 {
    let numerator = *g.square() + *g.matrix() * mu + Matrix3::identity() * (mu * mu - 1.0);
    numerator.scale_real(1.0 / (3.0 * mu * mu - 1.0))
}

/// The three-term sum evaluated literally with no guard on the denominators.
///
/// Accurate only for well-separated eigenvalues; kept as a reference point for
/// how the literal formula degrades near a double eigenvalue.
pub fn exp_naive_sum(g: &HermitianGenerator, theta_eff: f64, p: PhiAngle) -> Matrix3 {
    (0..3).fold(Matrix3::zero(), |acc, k| {
        let (numerator, den) = branch_terms(g, p, k);
        acc + numerator.scale(phase(theta_eff * p.branch_eigenvalue(k)) / den)
    })
}

pub fn exp_distinct(g: &HermitianGenerator, theta_eff: f64, sd: &SpectralData) -> Result<GroupElement> {
    if !sd.is_distinct() {
        return Err(Su3Error::SpectrumMismatch { expected: "distinct" });
    }
    // Each projector is a quadratic in H, so the sum collapses onto I, H and H².
    let (mut c0, mut c1, mut c2) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    for k in 0..3 {
        let psi = sd.phi.branch_angle(k);
        let cos2 = (2.0 * psi).cos();
        let den = 1.0 - 2.0 * cos2;
        if den.abs() < sd.threshold || den == 0.0 {
            return Err(Su3Error::DegenerateDenominator {
                branch: k,
                denominator: den,
                bound: sd.threshold,
            });
        }
        let w = phase(theta_eff * sd.phi.branch_eigenvalue(k)) / den;
        c2 += w;
        c1 += w * (TWO_OVER_SQRT3 * psi.sin());
        c0 -= w * ((1.0 + 2.0 * cos2) / 3.0);
    }
    let u = g.square().scale(c2) + g.matrix().scale(c1) + Matrix3::identity().scale(c0);
    Ok(GroupElement { u })
}

/// Newton refinement of a simple root of `μ³ − μ − det`.
fn polish_root(mut mu: f64, det: f64) -> f64 {
    for _ in 0..2 {
        let slope = 3.0 * mu * mu - 1.0;
        if slope.abs() < 0.5 {
            break;
        }
        mu -= (mu * mu * mu - mu - det) / slope;
    }
    mu
}

/// `sin(x)/x`
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// Evaluation for a spectrum with two (nearly) coincident eigenvalues.
///
/// The isolated eigenvalue `μ_m` has a well-conditioned projector `P_m`; the pair
/// shares `P = I − P_m` and mean `μ̄ = −μ_m/2`. On that block `N = (H − μ̄)P`
/// satisfies `N² = h²P` with `h` the half splitting, so
/// `exp(iθH)·P = e^{iθμ̄}(cos(θh)P + iθ·sinc(θh)·N)` exactly. At an exact double
/// eigenvalue `N = 0` and this reduces to `e^{iθμ̄}·P`.
pub fn exp_degenerate(g: &HermitianGenerator, theta_eff: f64, sd: &SpectralData) -> Result<GroupElement> {
    let Degeneracy::Double { isolated, .. } = sd.degeneracy else {
        return Err(Su3Error::SpectrumMismatch { expected: "double" });
    };
    let mu_m = polish_root(isolated, g.det());
    let p_m = projector_for_eigenvalue(g, mu_m);
    let p_pair = Matrix3::identity() - p_m;
    let mu_pair = -0.5 * mu_m;

    let n = (*g.matrix() - Matrix3::identity() * mu_pair) * p_pair;
    let half_gap = n.norm() / std::f64::consts::SQRT_2;
    let x = theta_eff * half_gap;
    let block = p_pair * x.cos() + n.scale(I * (theta_eff * sinc(x)));

    let u = p_m.scale(phase(theta_eff * mu_m)) + block.scale(phase(theta_eff * mu_pair));
    Ok(GroupElement { u })
}

/// `I + iH sin θ + H²(cos θ − 1)`, valid when `det H = 0`.
pub fn exp_rodrigues(g: &HermitianGenerator, theta_eff: f64, det_tol: f64) -> Result<GroupElement> {
    let det = g.det();
    if det.abs() > det_tol {
        return Err(Su3Error::NotRodriguesCase { det, bound: det_tol });
    }
    let u = Matrix3::identity() + g.matrix().scale(I * theta_eff.sin()) + *g.square() * (theta_eff.cos() - 1.0);
    Ok(GroupElement { u })
}

/// The differential operator `H² − iH d/dθ − (1 + d²/dθ²)` applied term by term to
/// `Σ_k exp(iθμ_k)/(1 − 2cos 2ψ_k)`.
pub fn exp_via_transfer(g: &HermitianGenerator, theta_eff: f64, sd: &SpectralData) -> Result<GroupElement> {
    if !sd.is_distinct() {
        return Err(Su3Error::SpectrumMismatch { expected: "distinct" });
    }
    let mut u = Matrix3::zero();
    for k in 0..3 {
        let psi = sd.phi.branch_angle(k);
        let den = 1.0 - 2.0 * (2.0 * psi).cos();
        if den.abs() < sd.threshold {
            return Err(Su3Error::DegenerateDenominator {
                branch: k,
                denominator: den,
                bound: sd.threshold,
            });
        }
        let mu = sd.phi.branch_eigenvalue(k);
        // d/dθ → iμ and d²/dθ² → −μ² on exp(iθμ)
        let operator = *g.square() + *g.matrix() * mu - Matrix3::identity() * (1.0 - mu * mu);
        u += operator.scale(phase(theta_eff * mu) / den);
    }
    Ok(GroupElement { u })
}

/// Automatic path selection for an already validated generator.
pub fn exp_generator(
    g: &HermitianGenerator,
    theta_eff: f64,
    config: &EvalConfig,
) -> Result<(GroupElement, EvalReport)> {
    let sd = analyze(g, config.delta)?;
    let method = if g.det().abs() <= config.det_tol {
        Method::Rodrigues
    } else if sd.is_distinct() {
        Method::Distinct
    } else {
        Method::Degenerate
    };
    evaluate(g, theta_eff, &sd, config, method)
}

/// Evaluation along a named path; fails if the path's precondition does not hold.
pub fn exp_generator_with(
    g: &HermitianGenerator,
    theta_eff: f64,
    config: &EvalConfig,
    method: Method,
) -> Result<(GroupElement, EvalReport)> {
    let sd = analyze(g, config.delta)?;
    evaluate(g, theta_eff, &sd, config, method)
}

fn evaluate(
    g: &HermitianGenerator,
    theta_eff: f64,
    sd: &SpectralData,
    config: &EvalConfig,
    method: Method,
) -> Result<(GroupElement, EvalReport)> {
    let u = match method {
        Method::Rodrigues => exp_rodrigues(g, theta_eff, config.det_tol)?,
        Method::Distinct => exp_distinct(g, theta_eff, sd)?,
        Method::Degenerate => exp_degenerate(g, theta_eff, sd)?,
        Method::Transfer => exp_via_transfer(g, theta_eff, sd)?,
    };
    let report = EvalReport::measure(method, sd, theta_eff, &u);
    Ok((u, report))
}

/// `exp(iθ·raw)` for a traceless hermitian `raw`, with automatic path selection.
///
/// `raw` is normalized first; its scale is folded into the angle.
pub fn exp_su3(raw: &Matrix3, theta: f64, config: &EvalConfig) -> Result<(GroupElement, EvalReport)> {
    let g = validate_and_normalize(raw, config.validation_tol)?;
    exp_generator(&g, g.effective_theta(theta), config)
}

/// [`exp_su3`] forced along `method`.
pub fn exp_su3_with(
    raw: &Matrix3,
    theta: f64,
    config: &EvalConfig,
    method: Method,
) -> Result<(GroupElement, EvalReport)> {
    let g = validate_and_normalize(raw, config.validation_tol)?;
    exp_generator_with(&g, g.effective_theta(theta), config, method)
}
