use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schurrates::harness::{
    cmd_converge, cmd_divergence, cmd_rt_scan, cmd_verify, exit_code, ExperimentConfig, EXIT_VALIDATION,
    EXIT_VERIFICATION,
};
use schurrates::oracle::Quantity;

#[derive(Parser)]
#[command(name = "schurrates", version, about = "Finite-n Schur-Weyl trace oracles and asymptotic rates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate D, Phi and the Renyi families for a pair of states.
    Divergence(Common),
    /// Exact rate series against the closed-form limit.
    Converge(Common),
    /// Run the invariant suites and write a JSON report.
    Verify(Common),
    /// Tabulate t -> R_t for a pair of qubit states.
    RtScan(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dimension of randomly drawn inputs.
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also evaluate the literal variants and record them as reconciled.
    #[arg(long)]
    paper_literal: bool,
    /// phi, lambda, delta, theta, theta1 or theta2.
    #[arg(long, default_value = "phi")]
    quantity: String,
    #[arg(long, value_name = "FILE")]
    state_a: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    state_b: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Comma-separated alpha grid.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    /// Comma-separated z grid.
    #[arg(long, value_delimiter = ',')]
    z: Option<Vec<f64>>,
    /// Target type p, comma-separated.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    /// Target type q, comma-separated.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<f64>>,
    /// Grid intervals for rt-scan.
    #[arg(long, default_value_t = 20)]
    steps: usize,
    /// Scale factor for the randomized sweeps of verify.
    #[arg(long, default_value_t = 1.0)]
    trials_scale: f64,
}

impl Common {
    fn config(&self) -> schurrates::Result<ExperimentConfig> {
        let defaults = ExperimentConfig::default();
        Ok(ExperimentConfig {
            seed: self.seed,
            d: self.d,
            n_max: self.n_max,
            tol: self.tol,
            quantity: self.quantity.parse::<Quantity>()?,
            paper_literal: self.paper_literal,
            state_a: self.state_a.clone(),
            state_b: self.state_b.clone(),
            matrix: self.matrix.clone(),
            alphas: self.alpha.clone().unwrap_or(defaults.alphas),
            zs: self.z.clone().unwrap_or(defaults.zs),
            p: self.p.clone(),
            q: self.q.clone(),
            steps: self.steps,
            trials_scale: self.trials_scale,
        })
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Divergence(c) | Command::Converge(c) | Command::Verify(c) | Command::RtScan(c) => c,
    };
    let cfg = match common.config() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
    };
    let (text, code) = match &cli.command {
        Command::Verify(_) => {
            let report = cmd_verify(&cfg);
            for c in report.failures() {
                eprintln!("failed: {} ({})", c.check, c.anchor);
            }
            let code = if report.passed { 0 } else { EXIT_VERIFICATION };
            (format!("{}\n", report.to_json()), code)
        }
        cmd => {
            let result = match cmd {
                Command::Divergence(_) => cmd_divergence(&cfg),
                Command::Converge(_) => cmd_converge(&cfg),
                _ => cmd_rt_scan(&cfg),
            };
            match result {
                Ok(text) => (text, 0),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(exit_code(&e) as u8);
                }
            }
        }
    };
    if let Err(e) = emit(&common.out, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_VALIDATION as u8);
    }
    ExitCode::from(code as u8)
}
