//! The Gell-Mann basis of su(3) and seeded generator sampling.
//!
//! Conventions are the standard ones, with `tr(λᵢλⱼ) = 2δᵢⱼ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Result, Su3Error};
use crate::linalg3::{mat_mul, Complex, Matrix3, I, ONE, ZERO};

/// Coefficients `a₁..a₈` of `H = Σ aᵢλᵢ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GellMannVector(pub [f64; 8]);

impl GellMannVector {
    /// Unit vector along `λᵢ` (1-based).
    pub fn basis(i: usize) -> Result<Self> {
        if !(1..=8).contains(&i) {
            return Err(Su3Error::IndexOutOfRange(i));
        }
        let mut a = [0.0; 8];
        a[i - 1] = 1.0;
        Ok(Self(a))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;

/// `λᵢ` for `i` in `1..=8`.
pub fn lambda_matrix(i: usize) -> Result<Matrix3> {
    let z = ZERO;
    let m = match i {
        1 => [[z, ONE, z], [ONE, z, z], [z, z, z]],
        2 => [[z, -I, z], [I, z, z], [z, z, z]],
        3 => [[ONE, z, z], [z, -ONE, z], [z, z, z]],
        4 => [[z, z, ONE], [z, z, z], [ONE, z, z]],
        5 => [[z, z, -I], [z, z, z], [I, z, z]],
        6 => [[z, z, z], [z, z, ONE], [z, ONE, z]],
        7 => [[z, z, z], [z, z, -I], [z, I, z]],
        8 => {
            let a = Complex::new(FRAC_1_SQRT_3, 0.0);
            [[a, z, z], [z, a, z], [z, z, a * -2.0]]
        }
        _ => return Err(Su3Error::IndexOutOfRange(i)),
    };
    Ok(Matrix3::from_rows(m))
}

/// Infallible form of [`lambda_matrix`]; panics outside `1..=8`.
pub fn lambda(i: usize) -> Matrix3 {
    lambda_matrix(i).expect("Gell-Mann index in 1..=8")
}

pub fn from_coefficients(v: &GellMannVector) -> Matrix3 {
    v.0.iter()
        .enumerate()
        .fold(Matrix3::zero(), |acc, (i, &a)| acc + lambda(i + 1) * a)
}

/// Inverse of [`from_coefficients`] by trace pairing, `aᵢ = tr(m·λᵢ)/2`.
pub fn to_coefficients(m: &Matrix3) -> Result<GellMannVector> {
    if !m.is_finite() {
        return Err(Su3Error::NonFinite);
    }
    let mut a = [0.0; 8];
    for (i, ai) in a.iter_mut().enumerate() {
        *ai = mat_mul(m, &lambda(i + 1)).trace().re / 2.0;
    }
    let v = GellMannVector(a);
    let residual = (*m - from_coefficients(&v)).norm();
    if residual > 1e-10 {
        return Err(Su3Error::NotInAlgebra { residual });
    }
    Ok(v)
}

/// Diagonal generator `cos(φ+π/3)·λ₃ + sin(φ+π/3)·λ₈`, whose invariant angle is `φ`.
pub fn diagonal_generator(phi: f64) -> Matrix3 {
    let alpha = phi + std::f64::consts::FRAC_PI_3;
    lambda(3) * alpha.cos() + lambda(8) * alpha.sin()
}

/// Sampling law for [`sample_generator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution {
    /// Standard-normal 8-vector projected onto the unit sphere, so `tr(H²) = 2`.
    SphereUniform,
    /// Independent standard-normal coefficients.
    Gaussian,
}

pub fn sample_coefficients(seed: u64, index: u64, dist: Distribution) -> GellMannVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut a = [0.0; 8];
    loop {
        for x in a.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let norm = GellMannVector(a).norm();
        match dist {
            Distribution::Gaussian => return GellMannVector(a),
            Distribution::SphereUniform if norm > 1e-8 => {
                return GellMannVector(a.map(|x| x / norm));
            }
            Distribution::SphereUniform => {}
        }
    }
}

/// Deterministic pseudorandom traceless hermitian matrix for `seed`.
pub fn sample_generator(seed: u64, dist: Distribution) -> Matrix3 {
    sample_generator_at(seed, 0, dist)
}

/// Item `index` of the ensemble identified by `seed`; items are independent streams.
pub fn sample_generator_at(seed: u64, index: u64, dist: Distribution) -> Matrix3 {
    from_coefficients(&sample_coefficients(seed, index, dist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg3::validate_and_normalize;
    use crate::spectral::compute_phi;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_6;

    #[test]
    fn lambda8_is_displayed_form() {
        let expected = Matrix3::real_diag([1.0, 1.0, -2.0]) * (1.0 / 3f64.sqrt());
        assert!(lambda(8).max_abs_diff(&expected) < 1e-16);
        assert_eq!(lambda(3), Matrix3::real_diag([1.0, -1.0, 0.0]));
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(lambda_matrix(0), Err(Su3Error::IndexOutOfRange(0)));
        assert_eq!(lambda_matrix(9), Err(Su3Error::IndexOutOfRange(9)));
        assert!(GellMannVector::basis(9).is_err());
    }

    #[test]
    fn trace_orthonormality() {
        for i in 1..=8 {
            for j in 1..=8 {
                let t = mat_mul(&lambda(i), &lambda(j)).trace();
                let expected = if i == j { 2.0 } else { 0.0 };
                assert!((t - Complex::new(expected, 0.0)).norm() < 1e-15, "({i},{j})");
            }
        }
    }

    #[test]
    fn determinants_of_basis() {
        for i in 1..=7 {
            assert_eq!(lambda(i).det().norm(), 0.0, "λ{i}");
        }
        let d8 = lambda(8).det().re;
        assert!((d8 + 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn coefficient_edge_cases() {
        assert_eq!(from_coefficients(&GellMannVector::basis(8).unwrap()), lambda(8));
        assert_eq!(from_coefficients(&GellMannVector([0.0; 8])), Matrix3::zero());
        let v = to_coefficients(&lambda(8)).unwrap();
        let e8 = GellMannVector::basis(8).unwrap();
        for (a, b) in v.0.iter().zip(e8.0.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn non_hermitian_is_not_in_algebra() {
        let mut m = lambda(1);
        m[(1, 0)] = Complex::new(0.0, 1.0);
        assert!(matches!(to_coefficients(&m), Err(Su3Error::NotInAlgebra { .. })));
        let traced = Matrix3::identity();
        assert!(matches!(to_coefficients(&traced), Err(Su3Error::NotInAlgebra { .. })));
    }

    #[test]
    fn sampler_is_deterministic() {
        for dist in [Distribution::SphereUniform, Distribution::Gaussian] {
            assert_eq!(sample_generator(7, dist), sample_generator(7, dist));
            assert_ne!(sample_generator_at(7, 0, dist), sample_generator_at(7, 1, dist));
        }
    }

    #[test]
    fn sphere_samples_are_normalized_and_phi_in_branch() {
        for idx in 0..10_000 {
            let m = sample_generator_at(3, idx, Distribution::SphereUniform);
            let g = validate_and_normalize(&m, 1e-10).unwrap();
            assert!((g.scale() - 1.0).abs() < 1e-12);
            let phi = compute_phi(&g).unwrap().value();
            assert!((-FRAC_PI_6..=FRAC_PI_6).contains(&phi), "φ = {phi}");
        }
        for idx in 0..10_000 {
            let m = sample_generator_at(4, idx, Distribution::Gaussian);
            let g = validate_and_normalize(&m, 1e-10).unwrap();
            let phi = compute_phi(&g).unwrap().value();
            assert!((-FRAC_PI_6..=FRAC_PI_6).contains(&phi), "φ = {phi}");
        }
    }

    #[test]
    fn diagonal_generator_hits_reference_points() {
        assert!(diagonal_generator(0.0).max_abs_diff(&Matrix3::real_diag([1.0, 0.0, -1.0])) < 1e-15);
        assert!(diagonal_generator(FRAC_PI_6).max_abs_diff(&lambda(8)) < 1e-15);
    }

    proptest! {
        #[test]
        fn combinations_are_traceless_hermitian(a in prop::array::uniform8(-5.0f64..5.0)) {
            let h = from_coefficients(&GellMannVector(a));
            prop_assert!((h - h.adjoint()).norm() < 1e-15);
            prop_assert!(h.trace().norm() < 1e-15);
            let sq = (h * h).trace().re;
            let expected = 2.0 * a.iter().map(|x| x * x).sum::<f64>();
            prop_assert!((sq - expected).abs() < 1e-12 * expected.max(1.0));
        }

        #[test]
        fn coefficient_roundtrip(a in prop::array::uniform8(-5.0f64..5.0)) {
            let v = to_coefficients(&from_coefficients(&GellMannVector(a))).unwrap();
            for (x, y) in v.0.iter().zip(a.iter()) {
                prop_assert!((x - y).abs() < 1e-13);
            }
        }

        #[test]
        fn subalgebra_combinations_have_zero_det(a in prop::array::uniform3(-1.0f64..1.0),
                                                 b in prop::array::uniform4(-1.0f64..1.0)) {
            let n3 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let n4 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assume!(n3 > 1e-6 && n4 > 1e-6);
            let mut va = [0.0; 8];
            for (i, x) in a.iter().enumerate() { va[i] = x / n3; }
            let mut vb = [0.0; 8];
            for (i, x) in b.iter().enumerate() { vb[3 + i] = x / n4; }
            prop_assert!(from_coefficients(&GellMannVector(va)).det().norm() <= 1e-14);
            prop_assert!(from_coefficients(&GellMannVector(vb)).det().norm() <= 1e-14);
        }
    }
}
