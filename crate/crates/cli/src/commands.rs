//! `compute`, `resolvent` and `cayley`.

use serde::Serialize;
use su3exp::expsu3::{exp_generator, exp_generator_with};
use su3exp::linalg3::I;
use su3exp::oracle::exp_series;
use su3exp::spectral::analyze;
use su3exp::transforms::{cayley, resolvent};
use su3exp::{validate_and_normalize, EvalConfig, GroupElement, Matrix3, Method};

use crate::document::{MatrixDocument, MatrixPairs};
use crate::error::CliError;

/// Evaluation path requested with `--method`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    /// Automatic dispatch between the closed-form paths.
    #[default]
    Closed,
    Rodrigues,
    Transfer,
    /// Scaling-and-squaring series.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComputeOutput {
    pub result: MatrixPairs,
    pub phi: f64,
    pub det: f64,
    pub eigenvalues: [f64; 3],
    pub method: String,
    pub scale: f64,
    pub unitarity_residual: f64,
    pub det_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformOutput {
    pub result: MatrixPairs,
    pub residual: f64,
}

pub fn cmd_compute(
    doc: &MatrixDocument,
    method: MethodArg,
    check: bool,
    config: &EvalConfig,
) -> Result<ComputeOutput, CliError> {
    let theta = doc.require_theta()?;
    let raw = doc.generator();
    let g = validate_and_normalize(&raw, config.validation_tol)?;
    let theta_eff = g.effective_theta(theta);
    let sd = analyze(&g, config.delta)?;

    let (u, method_name) = match method {
        MethodArg::Closed => {
            let (u, report) = exp_generator(&g, theta_eff, config)?;
            (*u.matrix(), report.method.as_str())
        }
        MethodArg::Rodrigues => {
            let (u, _) = exp_generator_with(&g, theta_eff, config, Method::Rodrigues)?;
            (*u.matrix(), Method::Rodrigues.as_str())
        }
        MethodArg::Transfer => {
            let (u, _) = exp_generator_with(&g, theta_eff, config, Method::Transfer)?;
            (*u.matrix(), Method::Transfer.as_str())
        }
        MethodArg::Oracle => (exp_series(&raw, theta), "oracle"),
    };

    let deviation = check.then(|| u.max_abs_diff(&exp_series(&raw, theta)));
    let unitarity_residual = u.unitarity_residual();
    let det_residual = (u.det() - su3exp::Complex::new(1.0, 0.0)).norm();
    Ok(ComputeOutput {
        result: u.to_pairs(),
        phi: sd.phi.value(),
        det: sd.det,
        eigenvalues: sd.eigenvalues.mu,
        method: method_name.to_string(),
        scale: g.scale(),
        unitarity_residual,
        det_residual,
        deviation,
    })
}

/// `(I − is·raw)⁻¹`; the generator scale is folded into `s`.
pub fn cmd_resolvent(doc: &MatrixDocument, config: &EvalConfig) -> Result<TransformOutput, CliError> {
    let s = doc.require_s()?;
    let raw = doc.generator();
    let g = validate_and_normalize(&raw, config.validation_tol)?;
    let r = resolvent(&g, s * g.scale());
    let defining = (Matrix3::identity() - raw.scale(I * s)) * r;
    Ok(TransformOutput {
        result: r.to_pairs(),
        residual: (defining - Matrix3::identity()).norm(),
    })
}

/// `(I + is·raw)(I − is·raw)⁻¹`, with its unitarity residual.
pub fn cmd_cayley(doc: &MatrixDocument, config: &EvalConfig) -> Result<TransformOutput, CliError> {
    let s = doc.require_s()?;
    let g = validate_and_normalize(&doc.generator(), config.validation_tol)?;
    let u = cayley(&g, s * g.scale());
    Ok(TransformOutput {
        result: u.to_pairs(),
        residual: u.unitarity_residual(),
    })
}

pub(crate) fn deviation(u: &GroupElement, reference: &Matrix3) -> f64 {
    u.matrix().max_abs_diff(reference)
}
