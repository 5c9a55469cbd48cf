//! Fixed-size complex 3×3 linear algebra and generator validation.
//!
//! Everything here is stack-allocated and `Copy`. [`HermitianGenerator`] is the
//! validated, normalized form of a traceless hermitian matrix: its square has
//! unit half-trace, `tr(H²) = 2`, and the original scale is kept so callers can
//! fold it into the rotation angle.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Result, Su3Error};

pub type Complex = Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// Default tolerance for [`validate_and_normalize`].
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-10;

/// Complex 3×3 matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix3 {
    rows: [[Complex; 3]; 3],
}

impl Default for Matrix3 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Matrix3 {
    pub const fn from_rows(rows: [[Complex; 3]; 3]) -> Self {
        Self { rows }
    }

    /// Builds a matrix from `[re, im]` pairs, row-major.
    pub fn from_pairs(pairs: [[[f64; 2]; 3]; 3]) -> Self {
        let mut m = Self::zero();
        for (r, row) in pairs.iter().enumerate() {
            for (c, &[re, im]) in row.iter().enumerate() {
                m.rows[r][c] = Complex::new(re, im);
            }
        }
        m
    }

    pub fn to_pairs(&self) -> [[[f64; 2]; 3]; 3] {
        let mut out = [[[0.0; 2]; 3]; 3];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                out[r][c] = [z.re, z.im];
            }
        }
        out
    }

    pub const fn zero() -> Self {
        Self { rows: [[ZERO; 3]; 3] }
    }

    pub const fn identity() -> Self {
        Self {
            rows: [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]],
        }
    }

    pub fn diag(d: [Complex; 3]) -> Self {
        let mut m = Self::zero();
        for (i, z) in d.into_iter().enumerate() {
            m.rows[i][i] = z;
        }
        m
    }

    pub fn real_diag(d: [f64; 3]) -> Self {
        Self::diag(d.map(|x| Complex::new(x, 0.0)))
    }

    pub fn rows(&self) -> &[[Complex; 3]; 3] {
        &self.rows
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = &Complex> {
        self.rows.iter().flatten()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, k: Complex) -> Self {
        self.map(|z| z * k)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.map(|z| z * k)
    }

    fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        Self {
            rows: self.rows.map(|row| row.map(&f)),
        }
    }

    pub fn adjoint(&self) -> Self {
        adjoint(self)
    }

    pub fn trace(&self) -> Complex {
        trace(self)
    }

    pub fn det(&self) -> Complex {
        det3(self)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix3) -> f64 {
        self.entries()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `u · self · u†`.
    pub fn conjugated_by(&self, u: &Matrix3) -> Matrix3 {
        mat_mul(&mat_mul(u, self), &u.adjoint())
    }

    /// `‖self†·self − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        (mat_mul(&self.adjoint(), self) - Matrix3::identity()).norm()
    }
}

impl Index<(usize, usize)> for Matrix3 {
    type Output = Complex;

    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        &self.rows[r][c]
    }
}

impl IndexMut<(usize, usize)> for Matrix3 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex {
        &mut self.rows[r][c]
    }
}

impl Add for Matrix3 {
    type Output = Matrix3;

    fn add(mut self, rhs: Matrix3) -> Matrix3 {
        self += rhs;
        self
    }
}

impl AddAssign for Matrix3 {
    fn add_assign(&mut self, rhs: Matrix3) {
        for r in 0..3 {
            for c in 0..3 {
                self.rows[r][c] += rhs.rows[r][c];
            }
        }
    }
}

impl Sub for Matrix3 {
    type Output = Matrix3;

    fn sub(mut self, rhs: Matrix3) -> Matrix3 {
        for r in 0..3 {
            for c in 0..3 {
                self.rows[r][c] -= rhs.rows[r][c];
            }
        }
        self
    }
}

impl Neg for Matrix3 {
    type Output = Matrix3;

    fn neg(self) -> Matrix3 {
        self.map(|z| -z)
    }
}

impl Mul for Matrix3 {
    type Output = Matrix3;

    fn mul(self, rhs: Matrix3) -> Matrix3 {
        mat_mul(&self, &rhs)
    }
}

impl Mul<&Matrix3> for &Matrix3 {
    type Output = Matrix3;

    fn mul(self, rhs: &Matrix3) -> Matrix3 {
        mat_mul(self, rhs)
    }
}

impl Mul<Complex> for Matrix3 {
    type Output = Matrix3;

    fn mul(self, k: Complex) -> Matrix3 {
        self.scale(k)
    }
}

impl Mul<f64> for Matrix3 {
    type Output = Matrix3;

    fn mul(self, k: f64) -> Matrix3 {
        self.scale_real(k)
    }
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let (a, b) = (&a.rows, &b.rows);
    let entry = |r: usize, c: usize| a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c];
    Matrix3::from_rows([
        [entry(0, 0), entry(0, 1), entry(0, 2)],
        [entry(1, 0), entry(1, 1), entry(1, 2)],
        [entry(2, 0), entry(2, 1), entry(2, 2)],
    ])
}

/// Conjugate transpose.
pub fn adjoint(a: &Matrix3) -> Matrix3 {
    let m = &a.rows;
    Matrix3::from_rows([
        [m[0][0].conj(), m[1][0].conj(), m[2][0].conj()],
        [m[0][1].conj(), m[1][1].conj(), m[2][1].conj()],
        [m[0][2].conj(), m[1][2].conj(), m[2][2].conj()],
    ])
}

pub fn trace(a: &Matrix3) -> Complex {
    a.rows[0][0] + a.rows[1][1] + a.rows[2][2]
}

/// Determinant by cofactor expansion along the first row.
pub fn det3(a: &Matrix3) -> Complex {
    let m = &a.rows;
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// A traceless hermitian matrix normalized to `tr(H²) = 2`.
///
/// `scale` is the factor `c = sqrt(tr(raw²)/2)` removed from the raw input, so
/// `exp(iθ·raw) = exp(i(θc)·H)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianGenerator {
    m: Matrix3,
    sq: Matrix3,
    scale: f64,
}

impl HermitianGenerator {
    /// Validates with [`DEFAULT_VALIDATION_TOL`].
    pub fn new(raw: &Matrix3) -> Result<Self> {
        validate_and_normalize(raw, DEFAULT_VALIDATION_TOL)
    }

    /// The normalized matrix `H`.
    pub fn matrix(&self) -> &Matrix3 {
        &self.m
    }

    /// `H²`, computed once at construction.
    pub fn square(&self) -> &Matrix3 {
        &self.sq
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Real part of `det(H)`; the imaginary part vanishes for hermitian `H`.
    pub fn det(&self) -> f64 {
        det3(&self.m).re
    }

    /// Rotation angle for the normalized matrix corresponding to `theta` on the raw input.
    pub fn effective_theta(&self, theta: f64) -> f64 {
        theta * self.scale
    }
}

/// Checks that `raw` is traceless and hermitian within `tol` (relative to
/// `max(1, ‖raw‖_F)`), then divides out `sqrt(tr(raw²)/2)`.
pub fn validate_and_normalize(raw: &Matrix3, tol: f64) -> Result<HermitianGenerator> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Su3Error::InvalidParameter(format!(
            "validation tolerance must be positive and finite, got {tol}"
        )));
    }
    if !raw.is_finite() {
        return Err(Su3Error::NonFinite);
    }
    let norm = raw.norm();
    let bound = tol * norm.max(1.0);

    let herm = (*raw - raw.adjoint()).norm();
    if herm > bound {
        return Err(Su3Error::NotHermitian { residual: herm, bound });
    }
    let tr = raw.trace().norm();
    if tr > bound {
        return Err(Su3Error::NotTraceless { residual: tr, bound });
    }
    // For hermitian input tr(raw²) = ‖raw‖_F².
    let norm_sq = norm * norm;
    if norm_sq <= tol * tol {
        return Err(Su3Error::ZeroGenerator { norm_sq });
    }
    let scale = (norm_sq / 2.0).sqrt();
    let m = raw.scale_real(1.0 / scale);
    Ok(HermitianGenerator {
        m,
        sq: mat_mul(&m, &m),
        scale,
    })
}
