//! Command-line front end for `dupin-core`: job files, mesh export and
//! JSON-lines verification reports.

// `!(x < tol)` is used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod config;
pub mod error;
pub mod mesh;

pub use checks::{run_calapso, run_report, Check, CheckRecord, Solution};
pub use config::{load_config, parse_config, JobConfig, RawConfig};
pub use error::CliError;
pub use mesh::{export_mesh, render_mesh, MeshStats};
