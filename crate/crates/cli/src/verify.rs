//! `verify`: run the library invariants over a seeded ensemble.

use std::f64::consts::FRAC_PI_6;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use su3exp::expsu3::{exp_distinct, exp_generator, exp_rodrigues, exp_via_transfer, projector_term};
use su3exp::gellmann::{diagonal_generator, sample_generator_at, Distribution};
use su3exp::linalg3::I;
use su3exp::oracle::exp_series;
use su3exp::spectral::analyze;
use su3exp::transforms::{cayley, laplace_check, resolvent, resolvent_general};
use su3exp::{validate_and_normalize, EvalConfig, HermitianGenerator, Matrix3, Su3Error};

use crate::commands::deviation;
use crate::error::CliError;

/// Number of ensemble items that also get the (slow) quadrature check.
const LAPLACE_SUBSAMPLE: u64 = 16;
const LAPLACE_NODES: usize = 64;
const STRESS_EXPONENTS: std::ops::RangeInclusive<i32> = 4..=12;
const STRESS_THETAS: [f64; 2] = [1.3, -7.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    Unitarity,
    Determinant,
    Oracle,
    GroupLaw,
    CayleyHamilton,
    ProjectorAlgebra,
    PathAgreement,
    ResolventIdentity,
    ResolventGeneral,
    CayleyUnitarity,
    Laplace,
    DegenerateStress,
}

const CHECKS: [(Check, &str, f64); 12] = [
    (Check::Unitarity, "unitarity", 1e-12),
    (Check::Determinant, "determinant", 1e-12),
    (Check::Oracle, "oracle_deviation", 1e-11),
    (Check::GroupLaw, "group_law", 1e-11),
    (Check::CayleyHamilton, "cayley_hamilton", 1e-12),
    (Check::ProjectorAlgebra, "projector_algebra", 1e-11),
    (Check::PathAgreement, "path_agreement", 1e-12),
    (Check::ResolventIdentity, "resolvent_identity", 1e-12),
    (Check::ResolventGeneral, "resolvent_general", 1e-13),
    (Check::CayleyUnitarity, "cayley_unitarity", 1e-12),
    (Check::Laplace, "laplace", 1e-7),
    (Check::DegenerateStress, "degenerate_stress", 1e-10),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: &'static str,
    pub tolerance: f64,
    pub max: f64,
    pub worst_index: Option<u64>,
    pub samples: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub count: u64,
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verify seed={} count={}", self.seed, self.count);
        let _ = writeln!(
            out,
            "{:<20} {:>10} {:>12} {:>10} {:>8}  status",
            "check", "tolerance", "max", "worst", "samples"
        );
        for r in &self.rows {
            let worst = r.worst_index.map_or("-".to_string(), |i| i.to_string());
            let _ = writeln!(
                out,
                "{:<20} {:>10.0e} {:>12.3e} {:>10} {:>8}  {}",
                r.name,
                r.tolerance,
                r.max,
                worst,
                r.samples,
                if r.passed { "ok" } else { "FAIL" }
            );
        }
        for r in self.rows.iter().filter(|r| !r.passed) {
            let _ = writeln!(
                out,
                "FAIL {} seed={} index={} value={:e}",
                r.name,
                self.seed,
                r.worst_index.map_or("-".to_string(), |i| i.to_string()),
                r.max
            );
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub count: u64,
    pub config: EvalConfig,
}

type Observations = Vec<(Check, f64)>;

fn value_or_inf(r: Result<f64, Su3Error>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

fn sample_angles(seed: u64, index: u64) -> (f64, f64, f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    rng.set_stream(index);
    (
        rng.gen_range(-10.0..=10.0),
        rng.gen_range(-10.0..=10.0),
        rng.gen_range(-10.0..=10.0),
        rng.gen_range(-2.0..=2.0),
    )
}

fn projector_residual(g: &HermitianGenerator, config: &EvalConfig) -> Result<Option<f64>, Su3Error> {
    let sd = analyze(g, config.delta)?;
    if !sd.is_distinct() {
        return Ok(None);
    }
    let p: Vec<Matrix3> = (0..3)
        .map(|k| projector_term(g, sd.phi, k, sd.threshold))
        .collect::<Result<_, _>>()?;
    let mut worst = (p[0] + p[1] + p[2]).max_abs_diff(&Matrix3::identity());
    let mut spectral = Matrix3::zero();
    for j in 0..3 {
        let mu = sd.phi.branch_eigenvalue(j);
        worst = worst.max((*g.matrix() * p[j]).max_abs_diff(&(p[j] * mu)));
        spectral += p[j] * mu;
        for k in 0..3 {
            let expected = if j == k { p[k] } else { Matrix3::zero() };
            worst = worst.max((p[j] * p[k]).max_abs_diff(&expected));
        }
    }
    Ok(Some(worst.max(spectral.max_abs_diff(g.matrix()))))
}

fn path_agreement(g: &HermitianGenerator, theta: f64, config: &EvalConfig) -> Result<Option<f64>, Su3Error> {
    let sd = analyze(g, config.delta)?;
    if !sd.is_distinct() {
        return Ok(None);
    }
    let distinct = exp_distinct(g, theta, &sd)?;
    let transfer = exp_via_transfer(g, theta, &sd)?;
    let mut worst = deviation(&distinct, transfer.matrix());
    if g.det().abs() <= config.det_tol {
        let rodrigues = exp_rodrigues(g, theta, config.det_tol)?;
        worst = worst.max(deviation(&rodrigues, distinct.matrix()));
    }
    Ok(Some(worst))
}

fn ensemble_item(opts: &VerifyOptions, index: u64) -> Observations {
    let config = &opts.config;
    let raw = sample_generator_at(opts.seed, index, Distribution::SphereUniform);
    let g = match validate_and_normalize(&raw, config.validation_tol) {
        Ok(g) => g,
        Err(_) => return CHECKS.iter().map(|&(c, _, _)| (c, f64::INFINITY)).collect(),
    };
    let (t1, t2, s, s_small) = sample_angles(opts.seed, index);
    let mut obs = Observations::new();

    let exp = |theta: f64| exp_generator(&g, g.effective_theta(theta), config).map(|(u, _)| u);
    match (exp(t1), exp(t2), exp(t1 + t2)) {
        (Ok(a), Ok(b), Ok(ab)) => {
            obs.push((Check::Unitarity, a.unitarity_residual()));
            obs.push((Check::Determinant, a.det_residual()));
            obs.push((Check::Oracle, deviation(&a, &exp_series(&raw, t1))));
            obs.push((Check::GroupLaw, (*a.matrix() * *b.matrix()).max_abs_diff(ab.matrix())));
        }
        _ => {
            for c in [Check::Unitarity, Check::Determinant, Check::Oracle, Check::GroupLaw] {
                obs.push((c, f64::INFINITY));
            }
        }
    }

    let h = g.matrix();
    let cube = *h * *g.square();
    obs.push((
        Check::CayleyHamilton,
        cube.max_abs_diff(&(*h + Matrix3::identity() * g.det())),
    ));

    match projector_residual(&g, config) {
        Ok(Some(v)) => obs.push((Check::ProjectorAlgebra, v)),
        Ok(None) => {}
        Err(_) => obs.push((Check::ProjectorAlgebra, f64::INFINITY)),
    }
    match path_agreement(&g, t1, config) {
        Ok(Some(v)) => obs.push((Check::PathAgreement, v)),
        Ok(None) => {}
        Err(_) => obs.push((Check::PathAgreement, f64::INFINITY)),
    }

    let r = resolvent(&g, s);
    let ish = h.scale(I * s);
    obs.push((
        Check::ResolventIdentity,
        ((Matrix3::identity() - ish) * r).max_abs_diff(&Matrix3::identity()),
    ));
    obs.push((Check::ResolventGeneral, resolvent_general(&g, s).max_abs_diff(&r)));
    obs.push((Check::CayleyUnitarity, cayley(&g, s).unitarity_residual()));

    let stride = (opts.count / LAPLACE_SUBSAMPLE).max(1);
    if index.is_multiple_of(stride) && index / stride < LAPLACE_SUBSAMPLE {
        let v =
            value_or_inf(laplace_check(&g, s_small, LAPLACE_NODES).map(|q| q.max_abs_diff(&resolvent(&g, s_small))));
        obs.push((Check::Laplace, v));
    }
    obs
}

/// Generators with `φ = ±π/6 ± 10^{−k}`, rotated off the diagonal.
fn stress_item(opts: &VerifyOptions, k: i32) -> Observations {
    let config = &opts.config;
    let eps = 10f64.powi(-k);
    let rotation_source = sample_generator_at(opts.seed, opts.count + k as u64, Distribution::SphereUniform);
    let rotation = match exp_generator(
        &HermitianGenerator::new(&rotation_source).expect("sphere samples are valid"),
        1.7,
        config,
    ) {
        Ok((u, _)) => *u.matrix(),
        Err(_) => return vec![(Check::DegenerateStress, f64::INFINITY)],
    };
    let mut obs = Observations::new();
    for phi in [FRAC_PI_6 - eps, FRAC_PI_6 + eps, -FRAC_PI_6 + eps, -FRAC_PI_6 - eps] {
        let h = diagonal_generator(phi).conjugated_by(&rotation);
        let h = (h + h.adjoint()).scale_real(0.5);
        for theta in STRESS_THETAS {
            let v =
                value_or_inf(su3exp::exp_su3(&h, theta, config).map(|(u, _)| deviation(&u, &exp_series(&h, theta))));
            obs.push((Check::DegenerateStress, v));
        }
    }
    obs
}

pub fn cmd_verify(opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    if opts.count == 0 {
        return Err(CliError::usage("--count must be at least 1"));
    }
    let c = &opts.config;
    for (name, v) in [("--tol", c.validation_tol), ("--delta", c.delta)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::usage(format!("{name} must be positive and finite, got {v}")));
        }
    }

    let ensemble: Vec<Observations> = (0..opts.count)
        .into_par_iter()
        .map(|i| ensemble_item(opts, i))
        .collect();
    let stress: Vec<Observations> = STRESS_EXPONENTS
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| stress_item(opts, k))
        .collect();

    let mut rows: Vec<CheckRow> = CHECKS
        .iter()
        .map(|&(_, name, tolerance)| CheckRow {
            name,
            tolerance,
            max: 0.0,
            worst_index: None,
            samples: 0,
            passed: true,
        })
        .collect();
    let stress_indexed = stress.into_iter().zip(STRESS_EXPONENTS.map(|k| k as u64));
    for (observations, index) in ensemble.into_iter().zip(0..).chain(stress_indexed) {
        for (check, value) in observations {
            let pos = CHECKS.iter().position(|&(c, _, _)| c == check).expect("known check");
            let row = &mut rows[pos];
            row.samples += 1;
            // NaN counts as worst and sticks
            if row.worst_index.is_none() || value.is_nan() || (!row.max.is_nan() && value > row.max) {
                row.max = value;
                row.worst_index = Some(index);
            }
        }
    }
    for row in &mut rows {
        row.passed = !row.max.is_nan() && row.max <= row.tolerance;
    }
    Ok(VerifyReport {
        seed: opts.seed,
        count: opts.count,
        rows,
    })
}
