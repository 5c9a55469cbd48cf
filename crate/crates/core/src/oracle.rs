//! Reference implementations used to check the closed forms.
//!
//! Nothing here touches the invariant angle, the Gell-Mann basis or spectral
//! projectors: the exponential is a scaled-and-squared Taylor series, inversion
//! goes through the adjugate, and eigenvalues come from the general depressed
//! cubic. These are slow on purpose.

use std::f64::consts::PI;

use crate::error::{Result, Su3Error};
use crate::linalg3::{mat_mul, Complex, Matrix3};

const SCALED_NORM_BOUND: f64 = 0.5;
const SERIES_REL_TOL: f64 = 1e-18;

/// `exp(iθm)` by scaling and squaring with a Taylor series.
pub fn exp_series(m: &Matrix3, theta: f64) -> Matrix3 {
    let a = m.scale(Complex::new(0.0, theta));
    let norm = a.norm();
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > SCALED_NORM_BOUND {
        squarings += 1;
    }
    let a = a.scale_real(0.5f64.powi(squarings as i32));

    let mut sum = Matrix3::identity();
    let mut term = Matrix3::identity();
    for n in 1..64 {
        term = mat_mul(&term, &a).scale_real(1.0 / n as f64);
        sum += term;
        if term.norm() < SERIES_REL_TOL * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = mat_mul(&sum, &sum);
    }
    sum
}

/// Inverse via adjugate over determinant.
pub fn invert3(m: &Matrix3) -> Result<Matrix3> {
    let det = m.det();
    if det.norm() <= 1e-14 {
        return Err(Su3Error::SingularMatrix { det: det.norm() });
    }
    let r = m.rows();
    let cof = |i0: usize, i1: usize, j0: usize, j1: usize| r[i0][j0] * r[i1][j1] - r[i0][j1] * r[i1][j0];
    // adj[i][j] = cofactor of entry (j, i)
    let adj = Matrix3::from_rows([
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ]);
    Ok(adj.scale(det.inv()))
}

/// Eigenvalues of a hermitian matrix, descending, from the characteristic cubic
/// `x³ + a x² + b x + c` solved by the trigonometric method.
pub fn eig_hermitian3(m: &Matrix3) -> [f64; 3] {
    let tr = m.trace().re;
    let tr_sq = mat_mul(m, m).trace().re;
    let a = -tr;
    let b = 0.5 * (tr * tr - tr_sq);
    let c = -m.det().re;

    // x = t − a/3 gives t³ + p t + q = 0
    let shift = -a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    let mut roots = if p >= 0.0 {
        // Hermitian input forces p ≤ 0; p ≥ 0 means a triple root up to rounding.
        [shift; 3]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let base = arg.acos() / 3.0;
        [0.0, 1.0, 2.0].map(|k| shift + r * (base - 2.0 * PI * k / 3.0).cos())
    };
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}
