//! Closed-form SU(3) group elements in the fundamental representation.
//!
//! For a traceless hermitian 3×3 generator `H` normalized to `tr(H²) = 2`, every
//! analytic function of `H` is a quadratic polynomial in `H` whose coefficients
//! depend only on `det H`. This crate evaluates `exp(iθH)`, the resolvent
//! `(I − isH)⁻¹` and the Cayley transform `(I + isH)(I − isH)⁻¹` that way, handles
//! coincident eigenvalues without loss of accuracy, and ships an independent
//! series/cubic-root oracle to check the results against.
//!
//! ```
//! use su3exp::{exp_su3, gellmann::lambda, EvalConfig};
//!
//! let (u, report) = exp_su3(&lambda(8), 1.0, &EvalConfig::default()).unwrap();
//! assert!(report.unitarity_residual < 1e-14);
//! assert!((u.matrix()[(2, 2)].arg() + 2.0 / 3f64.sqrt()).abs() < 1e-14);
//! ```

pub mod error;
pub mod expsu3;
pub mod gellmann;
pub mod linalg3;
pub mod oracle;
pub mod spectral;
pub mod transforms;

pub use error::{Result, Su3Error};
pub use expsu3::{exp_su3, exp_su3_with, EvalConfig, EvalReport, GroupElement, Method};
pub use gellmann::GellMannVector;
pub use linalg3::{validate_and_normalize, Complex, HermitianGenerator, Matrix3};
pub use spectral::{analyze, Degeneracy, PhiAngle, SpectralData};
