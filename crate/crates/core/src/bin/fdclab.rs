//! Command-line front end: validate specs, run experiments, export
//! trees to DOT. Exit codes: 0 pass, 1 verification failure, 2 budget
//! exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fdclab::config::GroupSpec;
use fdclab::decomp::{tree_to_dot, DecompTree};
use fdclab::experiments::{run_experiment, RunOptions, EXPERIMENTS};
use fdclab::report::Verdict;

#[derive(Parser)]
#[command(name = "fdclab", version, about = "Exact-arithmetic workbench for coarse decompositions of matrix groups over F_p(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a group spec, printing a summary.
    Check {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run an experiment and write its report and certificates.
    Run {
        /// One of: balls, axioms, quotient-family, asdim-scan,
        /// fdc-pipeline, th-factorize, triangularize, hirsch, equivariant.
        experiment: String,
        #[arg(long)]
        spec: PathBuf,
        /// Word radius of the window (overrides the spec).
        #[arg(long)]
        radius: Option<u32>,
        /// Scale ladder, comma separated (overrides the spec).
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<u64>>,
        /// Window point cap (overrides the spec).
        #[arg(long)]
        cap: Option<usize>,
        /// Output directory for the report and certificate files.
        #[arg(long, default_value = "fdclab-out")]
        out: PathBuf,
        /// Seed for the randomized sample suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hirsch-rank bound for the solvable probe.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Convert a serialized decomposition tree to DOT.
    ExportDot {
        tree: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // worker pool size for the data-parallel distance computations
    if let Ok(workers) = std::env::var("FDCLAB_WORKERS") {
        if let Ok(n) = workers.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    match Cli::parse().command {
        Command::Check { spec } => check(&spec),
        Command::Run {
            experiment,
            spec,
            radius,
            scales,
            cap,
            out,
            seed,
            bound,
        } => run(
            &experiment,
            &spec,
            RunOptions {
                radius,
                scales,
                cap,
                seed,
                bound,
            },
            &out,
        ),
        Command::ExportDot { tree, out } => export_dot(&tree, out.as_deref()),
    }
}

fn check(spec_path: &Path) -> ExitCode {
    let text = match fs::read_to_string(spec_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", spec_path.display());
            return ExitCode::from(1);
        }
    };
    match GroupSpec::parse(&text) {
        Ok(spec) => {
            println!(
                "ok: GL_{}(F_{}(t)), {} generator(s), {} norm(s), {} subgroup(s), {} series",
                spec.dim,
                spec.field.modulus(),
                spec.generators.len(),
                spec.profile.norms().len(),
                spec.subgroups.len(),
                spec.series.len()
            );
            println!(
                "window: radius {}, cap {}, scales {:?}",
                spec.window.radius, spec.window.cap, spec.window.scales
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("invalid spec: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(experiment: &str, spec_path: &Path, opts: RunOptions, out_dir: &Path) -> ExitCode {
    if !EXPERIMENTS.contains(&experiment) {
        eprintln!("unknown experiment {experiment:?}; expected one of {EXPERIMENTS:?}");
        return ExitCode::from(1);
    }
    let text = match fs::read_to_string(spec_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", spec_path.display());
            return ExitCode::from(1);
        }
    };
    let spec = match GroupSpec::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("invalid spec: {e}");
            return ExitCode::from(1);
        }
    };
    let output = match run_experiment(&spec, &text, experiment, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("experiment failed: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = fs::create_dir_all(out_dir) {
        eprintln!("error: cannot create {}: {e}", out_dir.display());
        return ExitCode::from(1);
    }
    let report_path = out_dir.join(format!("{experiment}-report.json"));
    if let Err(e) = fs::write(&report_path, output.report.to_json()) {
        eprintln!("error: cannot write {}: {e}", report_path.display());
        return ExitCode::from(1);
    }
    for (name, contents) in &output.files {
        let path = out_dir.join(name);
        if let Err(e) = fs::write(&path, contents) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    let verdict = output.report.verdict;
    println!(
        "{experiment}: {} (report: {})",
        match verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::BudgetExceeded => "budget exceeded",
        },
        report_path.display()
    );
    ExitCode::from(verdict.exit_code() as u8)
}

fn export_dot(tree_path: &Path, out: Option<&Path>) -> ExitCode {
    let text = match fs::read_to_string(tree_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", tree_path.display());
            return ExitCode::from(1);
        }
    };
    let tree = match DecompTree::from_text(&text) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("invalid tree file: {e}");
            return ExitCode::from(1);
        }
    };
    let name = tree_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "tree".into());
    let dot = tree_to_dot(&tree, &name);
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, dot) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{dot}"),
    }
    ExitCode::SUCCESS
}
