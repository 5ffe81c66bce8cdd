//! Command drivers behind the `schurrates` binary: configuration, input loading, CSV
//! tables and the verification report.

mod commands;
mod io;
mod verify;

use std::path::PathBuf;

use serde::Serialize;

pub use commands::{cmd_converge, cmd_divergence, cmd_rt_scan};
pub use io::{format_matrix, num, parse_entry, parse_matrix, read_matrix, Csv};
pub use verify::{cmd_verify, CheckEntry, CheckStatus, VerificationReport};

use crate::error::Error;
use crate::oracle::Quantity;

pub const EXIT_OK: i32 = 0;
/// Internal numerical failure (a solver did not converge).
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// Exit status for an error raised by a command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::NoConvergence(_) => EXIT_INTERNAL,
        _ => EXIT_VALIDATION,
    }
}

/// Everything a run depends on. Identical configurations give byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Dimension of randomly drawn inputs (ignored when inputs come from files).
    pub d: usize,
    /// Largest `n` of a rate series; each quantity has its own default.
    pub n_max: Option<usize>,
    /// Overrides the pass tolerance of `converge` and the series checks of `verify`.
    pub tol: Option<f64>,
    pub quantity: Quantity,
    pub paper_literal: bool,
    pub state_a: Option<PathBuf>,
    pub state_b: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub alphas: Vec<f64>,
    pub zs: Vec<f64>,
    /// Target type `p` for `delta` and `theta1`.
    pub p: Option<Vec<f64>>,
    /// Target type `q` for the `theta` family.
    pub q: Option<Vec<f64>>,
    /// Number of grid intervals for `rt-scan`.
    pub steps: usize,
    /// Scales the randomized sweeps of `verify` (1 = full size).
    pub trials_scale: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            d: 2,
            n_max: None,
            tol: None,
            quantity: Quantity::Phi,
            paper_literal: false,
            state_a: None,
            state_b: None,
            matrix: None,
            alphas: vec![0.25, 0.5, 0.75, 1.5, 2.0],
            zs: vec![0.5, 1.0],
            p: None,
            q: None,
            steps: 20,
            trials_scale: 1.0,
        }
    }
}
