use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dupin_cli::checks::{all_pass, build_subject, to_jsonl, write_report};
use dupin_cli::{
    export_mesh, load_config, run_calapso, run_report, CheckRecord, CliError, JobConfig, RawConfig,
    Solution,
};
use dupin_core::Method;

#[derive(Parser)]
#[command(
    name = "dupin",
    version,
    about = "Construct and verify ε-isothermic Dupin surfaces"
)]
struct Cli {
    /// Derivative method for the pseudo-Calapso residuals.
    #[arg(long, value_enum, global = true, default_value_t = MethodArg::Jet)]
    method: MethodArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Jet,
    Fd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolutionArg {
    Corollary1,
    Prop2,
    Prop3,
    Prop4,
    Prop5,
}

impl From<SolutionArg> for Solution {
    fn from(s: SolutionArg) -> Solution {
        match s {
            SolutionArg::Corollary1 => Solution::Corollary1,
            SolutionArg::Prop2 => Solution::Prop2,
            SolutionArg::Prop3 => Solution::Prop3,
            SolutionArg::Prop4 => Solution::Prop4,
            SolutionArg::Prop5 => Solution::Prop5,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample the surface and write an OBJ mesh plus a CSV of samples.
    Construct {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the configured checks and write a JSON-lines report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate the pseudo-Calapso residual of a solution family.
    Calapso {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        solution: SolutionArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Solve the compatibility constraint for one constant and print the job.
    SolveConstraint {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        free: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Construct { config, out } => {
            let cfg = load_config(&config)?;
            let obj = out.or_else(|| cfg.outputs.mesh.clone()).ok_or_else(|| {
                CliError::Config("no output path: pass --out or set outputs.mesh".into())
            })?;
            let csv = cfg
                .outputs
                .csv
                .clone()
                .unwrap_or_else(|| obj.with_extension("csv"));
            let d = build_subject(&cfg)?;
            let stats = export_mesh(&d, cfg.grid, &obj, Some(&csv))?;
            eprintln!(
                "wrote {} ({} vertices, {} faces, {} dropped) and {}",
                obj.display(),
                stats.vertices,
                stats.faces,
                stats.dropped,
                csv.display()
            );
            Ok(0)
        }
        Command::Verify { config, report } => {
            let cfg = load_config(&config)?;
            let records = run_report(&cfg, method(cli.method, &cfg))?;
            finish(
                &records,
                report.as_deref().or(cfg.outputs.report.as_deref()),
            )
        }
        Command::Calapso {
            config,
            solution,
            report,
        } => {
            let cfg = load_config(&config)?;
            let records = run_calapso(&cfg, solution.into(), method(cli.method, &cfg))?;
            finish(
                &records,
                report.as_deref().or(cfg.outputs.report.as_deref()),
            )
        }
        Command::SolveConstraint { config, free } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", config.display())))?;
            let mut raw: RawConfig = serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("malformed config: {e}")))?;
            raw.solve_for = Some(free);
            let cfg = JobConfig::from_raw(raw)?;
            println!("{}", cfg.to_json());
            Ok(0)
        }
    }
}

fn method(arg: MethodArg, cfg: &JobConfig) -> Method {
    match arg {
        MethodArg::Jet => Method::Jet,
        MethodArg::Fd => Method::Fd { h: cfg.fd_step },
    }
}

fn finish(records: &[CheckRecord], report: Option<&Path>) -> Result<u8, CliError> {
    match report {
        Some(path) => write_report(records, path)?,
        None => print!("{}", to_jsonl(records)),
    }
    for r in records.iter().filter(|r| !r.pass) {
        eprintln!(
            "FAIL {}: max_abs {:?} > tol {:e}",
            r.check, r.max_abs, r.tol
        );
    }
    Ok(if all_pass(records) { 0 } else { 1 })
}
