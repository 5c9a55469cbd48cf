use su3exp::gellmann::{lambda, sample_generator_at, Distribution};
use su3exp::oracle::exp_series;
use su3exp::transforms::{cayley, resolvent};
use su3exp::{exp_su3, exp_su3_with, validate_and_normalize, EvalConfig, Matrix3, Method, Su3Error};

#[test]
fn scaled_generators_fold_into_the_angle() {
    let config = EvalConfig::default();
    for i in 0..50 {
        let raw = sample_generator_at(9, i, Distribution::Gaussian) * 3.5;
        let (u, report) = exp_su3(&raw, 0.4, &config).unwrap();
        assert!(u.matrix().max_abs_diff(&exp_series(&raw, 0.4)) < 1e-12);
        let g = validate_and_normalize(&raw, 1e-10).unwrap();
        assert!((report.theta_effective - 0.4 * g.scale()).abs() < 1e-14);
    }
}

#[test]
fn every_path_agrees_on_lambda_two() {
    let config = EvalConfig::default();
    let (auto, report) = exp_su3(&lambda(2), 1.1, &config).unwrap();
    assert_eq!(report.method, Method::Rodrigues);
    for method in [Method::Distinct, Method::Transfer] {
        let (u, _) = exp_su3_with(&lambda(2), 1.1, &config, method).unwrap();
        assert!(u.matrix().max_abs_diff(auto.matrix()) < 1e-14, "{method}");
    }
    let err = exp_su3_with(&lambda(8), 1.1, &config, Method::Distinct).unwrap_err();
    assert_eq!(err.kind(), "SpectrumMismatch");
}

#[test]
fn error_kinds() {
    let config = EvalConfig::default();
    assert!(matches!(
        exp_su3(&Matrix3::zero(), 1.0, &config),
        Err(Su3Error::ZeroGenerator { .. })
    ));
    assert!(matches!(
        exp_su3(&Matrix3::identity(), 1.0, &config),
        Err(Su3Error::NotTraceless { .. })
    ));
    let mut nan = lambda(1);
    nan[(0, 0)].re = f64::NAN;
    assert!(matches!(exp_su3(&nan, 1.0, &config), Err(Su3Error::NonFinite)));
}

#[test]
fn cayley_of_resolvent_pair() {
    // C = 2R − I
    let g = validate_and_normalize(&sample_generator_at(4, 0, Distribution::SphereUniform), 1e-10).unwrap();
    for s in [-3.0, 0.2, 8.0] {
        let expected = resolvent(&g, s) * 2.0 - Matrix3::identity();
        assert!(cayley(&g, s).max_abs_diff(&expected) < 1e-14);
    }
}
