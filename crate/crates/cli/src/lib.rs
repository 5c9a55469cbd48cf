//! Command implementations behind the `su3exp` binary.
//!
//! Each command returns a value that the binary serializes; errors carry the
//! process exit code (1 for input/usage problems, 2 for failed verification).

pub mod bench;
pub mod commands;
pub mod document;
pub mod error;
pub mod verify;

pub use bench::{cmd_bench, BenchFormat, BenchReport};
pub use commands::{cmd_cayley, cmd_compute, cmd_resolvent, MethodArg};
pub use document::MatrixDocument;
pub use error::CliError;
pub use verify::{cmd_verify, VerifyOptions, VerifyReport};
