//! Resolvent and Cayley transform of a normalized generator as quadratic matrix
//! polynomials, plus a quadrature check of the Laplace-transform relation
//! `∫₀^∞ e^{−t} exp(itsH) dt = (I − isH)⁻¹`.

use crate::error::{Result, Su3Error};
use crate::expsu3::{exp_generator, EvalConfig};
use crate::linalg3::{Complex, HermitianGenerator, Matrix3, I, ONE};

/// Polynomial in the real parameter `s`, ascending powers, degree at most 3.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCoeffs(Vec<Complex>);

impl PolyCoeffs {
    pub const MAX_LEN: usize = 4;

    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.len() > Self::MAX_LEN {
            return Err(Su3Error::InvalidParameter(format!(
                "polynomial has {} coefficients, at most {} allowed",
                coeffs.len(),
                Self::MAX_LEN
            )));
        }
        Ok(Self(coeffs))
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.0
    }

    pub fn eval(&self, s: f64) -> Complex {
        self.0.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * s + c)
    }
}

/// Keeps the terms of degree `≤ m`.
pub fn trunc_poly(p: &PolyCoeffs, m: usize) -> PolyCoeffs {
    PolyCoeffs(p.0.iter().take(m + 1).copied().collect())
}

/// `det(I − isH) = 1 + s² + i s³ det H`.
pub fn char_poly_s(g: &HermitianGenerator) -> PolyCoeffs {
    PolyCoeffs(vec![ONE, Complex::new(0.0, 0.0), ONE, Complex::new(0.0, g.det())])
}

/// `(I − isH)⁻¹ = ((1 + s²)I + isH − s²H²) / (1 + s² + is³ det H)`
pub fn resolvent(g: &HermitianGenerator, s: f64) -> Matrix3 {
    let s2 = s * s;
    let den = Complex::new(1.0 + s2, s2 * s * g.det());
    let num = Matrix3::identity() * (1.0 + s2) + g.matrix().scale(I * s) - *g.square() * s2;
    num.scale(den.inv())
}

/// The resolvent assembled as `Σ_{n=0}^{2} (isH)ⁿ · Trunc_{2−n}[det(I − isH)] / det(I − isH)`.
pub fn resolvent_general(g: &HermitianGenerator, s: f64) -> Matrix3 {
    const RANK: usize = 3;
    let det_poly = char_poly_s(g);
    let ish = g.matrix().scale(I * s);
    let mut power = Matrix3::identity();
    let mut sum = Matrix3::zero();
    for n in 0..RANK {
        sum += power.scale(trunc_poly(&det_poly, RANK - 1 - n).eval(s));
        power = power * ish;
    }
    sum.scale(det_poly.eval(s).inv())
}

/// `(I + isH)(I − isH)⁻¹ = ((1 + s² − is³ det H)I + 2isH − 2s²H²) / (1 + s² + is³ det H)`
pub fn cayley(g: &HermitianGenerator, s: f64) -> Matrix3 {
    let s2 = s * s;
    let d = s2 * s * g.det();
    let den = Complex::new(1.0 + s2, d);
    let num = Matrix3::identity().scale(Complex::new(1.0 + s2, -d)) + g.matrix().scale(I * (2.0 * s))
        - *g.square() * (2.0 * s2);
    num.scale(den.inv())
}

/// Convergence tolerance between successive quadrature levels.
pub const LAPLACE_LEVEL_TOL: f64 = 1e-9;

/// `∫₀^∞ e^{−t} exp(itsH) dt` by Gauss–Laguerre quadrature.
///
/// Evaluates with `nodes` and `2·nodes` points and returns the finer result, or
/// [`Su3Error::QuadratureNotConverged`] if the two differ by more than
/// [`LAPLACE_LEVEL_TOL`] in any entry.
pub fn laplace_check(g: &HermitianGenerator, s: f64, nodes: usize) -> Result<Matrix3> {
    if nodes < 16 {
        return Err(Su3Error::InvalidParameter(format!(
            "at least 16 quadrature nodes required, got {nodes}"
        )));
    }
    if !s.is_finite() {
        return Err(Su3Error::InvalidParameter(format!("s must be finite, got {s}")));
    }
    let config = EvalConfig::default();
    let integrate = |n: usize| -> Result<Matrix3> {
        let rule = quadrature::gauss_laguerre(n);
        let mut acc = Matrix3::zero();
        for (&t, &w) in rule.nodes.iter().zip(rule.weights.iter()) {
            if w == 0.0 {
                continue;
            }
            let (u, _) = exp_generator(g, t * s, &config)?;
            acc += *u.matrix() * w;
        }
        Ok(acc)
    };
    let coarse = integrate(nodes)?;
    let fine = integrate(2 * nodes)?;
    let difference = coarse.max_abs_diff(&fine);
    if difference > LAPLACE_LEVEL_TOL {
        return Err(Su3Error::QuadratureNotConverged { nodes, difference });
    }
    Ok(fine)
}

pub(crate) mod quadrature {
    //! Gauss–Laguerre rules (weight `e^{−t}` on `[0, ∞)`).

    pub struct Rule {
        pub nodes: Vec<f64>,
        pub weights: Vec<f64>,
    }

    const RESCALE_AT: f64 = 1e150;
    const RESCALE_EXP2: i32 = 500;

    /// Runs the three-term recurrence up to `L_n(x)`, returning `L_n`, `L_{n−1}`,
    /// `Σ_{j<n} L_j(x)²` and a power-of-two exponent shared by all three (the sum
    /// carries it twice). The Laguerre polynomials are orthonormal for `e^{−x}`.
    fn laguerre_run(n: usize, x: f64) -> (f64, f64, f64, i32) {
        let mut p_prev = 0.0;
        let mut p = 1.0;
        let mut sum_sq = 0.0;
        let mut exp2 = 0i32;
        for j in 0..n {
            sum_sq += p * p;
            let jf = j as f64;
            let next = ((2.0 * jf + 1.0 - x) * p - jf * p_prev) / (jf + 1.0);
            p_prev = p;
            p = next;
            if p.abs() > RESCALE_AT {
                let f = 2f64.powi(-RESCALE_EXP2);
                p *= f;
                p_prev *= f;
                sum_sq *= f * f;
                exp2 += RESCALE_EXP2;
            }
        }
        (p, p_prev, sum_sq, exp2)
    }

    /// Nodes by Newton iteration from the usual asymptotic initial guesses;
    /// weights from the Christoffel function `1/Σ_{j<n} L_j(x)²`.
    pub fn gauss_laguerre(n: usize) -> Rule {
        let nf = n as f64;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut z = 0.0f64;
        for i in 0..n {
            z = match i {
                0 => 3.0 / (1.0 + 2.4 * nf),
                1 => z + 15.0 / (1.0 + 2.5 * nf),
                _ => {
                    let ai = (i - 1) as f64;
                    z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
                }
            };
            let mut converged = false;
            for _ in 0..100 {
                let (p, p_prev, _, _) = laguerre_run(n, z);
                // L_n'(x) = n (L_n − L_{n−1}) / x
                let dp = nf * (p - p_prev) / z;
                let step = p / dp;
                z -= step;
                if converged {
                    break;
                }
                // one extra step after the relative tolerance is met
                converged = step.abs() <= 1e-14 * z.abs();
            }
            nodes.push(z);
            let (_, _, sum_sq, exp2) = laguerre_run(n, z);
            let log_w = -(sum_sq.ln() + 2.0 * exp2 as f64 * std::f64::consts::LN_2);
            weights.push(log_w.exp());
        }
        Rule { nodes, weights }
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn integrates_monomials() {
            // ∫ e^{−t} t^k dt = k!
            for n in [16, 32, 64] {
                let rule = gauss_laguerre(n);
                let mut factorial = 1.0;
                for k in 0..12 {
                    if k > 0 {
                        factorial *= k as f64;
                    }
                    let q: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(k)).sum();
                    assert!((q - factorial).abs() < 1e-11 * factorial, "n={n} k={k}: {q}");
                }
            }
        }

        #[test]
        fn large_rules_are_finite_and_normalized() {
            for n in [128, 160, 192, 224, 256] {
                let rule = gauss_laguerre(n);
                assert!(rule.nodes.windows(2).all(|w| w[1] > w[0]));
                assert!(rule.weights.iter().all(|w| w.is_finite() && *w >= 0.0));
                let total: f64 = rule.weights.iter().sum();
                assert!((total - 1.0).abs() < 1e-12, "n={n}: {total}");
            }
        }
    }
}
