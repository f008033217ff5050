//! `fspa` — spectral projection toolkit CLI.
//!
//! Exit codes: 0 success, 1 configuration/input error, 2 runtime or
//! numerical error. All diagnostics go to stderr; stdout carries only data
//! and is byte-stable for fixed inputs.

mod input;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fspa_core::{
    eigendecompose, fspa_run, interlacing_check, load_csv, power_iteration_run, schedule_total,
    theorem_bound, ConvergenceTarget, RunTrace, Termination,
};
use fspa_harness::{format_float, run_scenario, ScenarioConfig, ScenarioKind};

/// Environment variable supplying the default output directory for scenario
/// results; the `--out` flag always wins.
const OUT_DIR_ENV: &str = "FSPA_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "fspa",
    version,
    about = "Spectral projection toolkit: filtered spectral projection runs, a power-iteration baseline, a finite-resolution phase-estimation model, covariance encodings, and reproducible experiment scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment scenario and write its CSV + metadata.
    Scenario {
        /// One of: gap_scaling, instability, magnitude, gap_map, warm_start,
        /// degeneracy_lifting, downstream.
        name: String,
        /// TOML config file; omitted keys fall back to scenario defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory (default: --out, then config out_dir, then
        /// $FSPA_OUT_DIR, then ./results).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run one algorithm on one operator and print the fidelity trace.
    Run {
        /// Operator as a square numeric CSV file (no header).
        #[arg(long, conflicts_with = "spec")]
        operator: Option<PathBuf>,
        /// Inline operator spec, e.g. diag:0.9,0.45.
        #[arg(long)]
        spec: Option<String>,
        /// Initial state: uniform, basis:K (0-based), or a comma list.
        #[arg(long, default_value = "uniform")]
        init: String,
        /// Doubling rounds (the baseline gets the same total budget).
        #[arg(long, default_value_t = 10)]
        rounds: u32,
        /// Stop once fidelity to the top eigenvector reaches 1 - epsilon.
        #[arg(long, default_value_t = 1e-4)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Algo::Fspa)]
        algo: Algo,
        /// Optionally write the final state, one amplitude per line.
        #[arg(long)]
        final_state: Option<PathBuf>,
    },
    /// Print the worst-case application count for given ratio/overlap/epsilon.
    Bound {
        /// Spectral ratio lambda2/lambda1, in (0, 1).
        #[arg(long)]
        ratio: f64,
        /// Initial overlap |a1|^2, in (0, 1].
        #[arg(long)]
        overlap: f64,
        #[arg(long, default_value_t = 1e-4)]
        epsilon: f64,
    },
    /// Validate a dataset CSV and print its interlacing report.
    DatasetCheck {
        path: PathBuf,
        /// Name of an integer label column to extract.
        #[arg(long)]
        label_column: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Fspa,
    Power,
}

enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Runtime(m) => m,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = dispatch(cli.command) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Scenario {
            name,
            config,
            out,
            seed,
        } => cmd_scenario(&name, config.as_deref(), out, seed),
        Command::Run {
            operator,
            spec,
            init,
            rounds,
            epsilon,
            algo,
            final_state,
        } => cmd_run(operator, spec, &init, rounds, epsilon, algo, final_state),
        Command::Bound {
            ratio,
            overlap,
            epsilon,
        } => cmd_bound(ratio, overlap, epsilon),
        Command::DatasetCheck { path, label_column } => {
            cmd_dataset_check(&path, label_column.as_deref())
        }
    }
}

fn classify(e: fspa_harness::HarnessError) -> CliError {
    use fspa_harness::HarnessError as H;
    match e {
        H::InvalidConfig(_) | H::ConfigIo { .. } | H::ConfigParse { .. } | H::Data(_) => {
            CliError::Config(e.to_string())
        }
        H::Core(_) | H::InvariantViolated(_) | H::DeflationRankExceeded { .. } | H::Io(_) => {
            CliError::Runtime(e.to_string())
        }
    }
}

fn cmd_scenario(
    name: &str,
    config_path: Option<&std::path::Path>,
    out: Option<PathBuf>,
    seed: Option<u64>,
) -> Result<(), CliError> {
    let kind = ScenarioKind::parse(name).ok_or_else(|| {
        let valid: Vec<&str> = ScenarioKind::ALL.iter().map(|k| k.name()).collect();
        CliError::Config(format!(
            "unknown scenario '{name}'; valid names: {}",
            valid.join(", ")
        ))
    })?;
    let mut config = ScenarioConfig::load(kind, config_path).map_err(classify)?;
    if let Some(seed) = seed {
        config.set_seed(seed);
    }
    let out_dir = out
        .or_else(|| config.out_dir().map(PathBuf::from))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results"));

    for (key, value) in config.echo() {
        eprintln!("config {key} = {value}");
    }
    let result = run_scenario(&config).map_err(classify)?;
    let (csv_path, meta_path) = result.write(&out_dir).map_err(classify)?;
    println!("{}", csv_path.display());
    println!("{}", meta_path.display());
    Ok(())
}

fn cmd_run(
    operator: Option<PathBuf>,
    spec: Option<String>,
    init: &str,
    rounds: u32,
    epsilon: f64,
    algo: Algo,
    final_state: Option<PathBuf>,
) -> Result<(), CliError> {
    let rho = match (&operator, &spec) {
        (Some(path), None) => input::load_operator_csv(path).map_err(CliError::Config)?,
        (None, Some(inline)) => input::parse_operator_spec(inline).map_err(CliError::Config)?,
        _ => {
            return Err(CliError::Config(
                "exactly one of --operator or --spec is required".into(),
            ))
        }
    };
    let phi0 = input::parse_init(init, rho.dim()).map_err(CliError::Config)?;

    eprintln!(
        "config algo = {}",
        match algo {
            Algo::Fspa => "fspa",
            Algo::Power => "power",
        }
    );
    eprintln!("config dim = {}", rho.dim());
    eprintln!("config rounds = {rounds}");
    eprintln!("config epsilon = {}", format_float(epsilon));

    // Fidelity is measured against the operator's computed top eigenvector.
    let spectrum = eigendecompose(&rho).map_err(|e| CliError::Runtime(e.to_string()))?;
    let top = spectrum
        .eigenvector(0)
        .map_err(|e| CliError::Runtime(e.to_string()))?
        .clone();
    let target =
        ConvergenceTarget::vector(top, epsilon).map_err(|e| CliError::Config(e.to_string()))?;

    let trace: RunTrace = match algo {
        Algo::Fspa => fspa_run(&rho, &phi0, rounds, Some(&target)),
        Algo::Power => {
            let budget = schedule_total(rounds).map_err(|e| CliError::Config(e.to_string()))?;
            power_iteration_run(&rho, &phi0, budget, Some(&target))
        }
    }
    .map_err(|e| CliError::Runtime(e.to_string()))?;

    println!("oracle_count,fidelity");
    for step in trace.steps() {
        println!(
            "{},{}",
            step.oracle_count,
            format_float(step.fidelity.unwrap_or(f64::NAN))
        );
    }

    if let Some(path) = final_state {
        let mut text = String::new();
        for a in trace.final_state().amplitudes() {
            text.push_str(&format_float(*a));
            text.push('\n');
        }
        std::fs::write(&path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    }

    if trace.termination() == Termination::KernelAnnihilation {
        return Err(CliError::Runtime(format!(
            "iterate annihilated after {} applications (operator kernel)",
            trace.total_applications()
        )));
    }
    Ok(())
}

fn cmd_bound(ratio: f64, overlap: f64, epsilon: f64) -> Result<(), CliError> {
    eprintln!("config ratio = {}", format_float(ratio));
    eprintln!("config overlap = {}", format_float(overlap));
    eprintln!("config epsilon = {}", format_float(epsilon));
    let bound =
        theorem_bound(ratio, overlap, epsilon).map_err(|e| CliError::Config(e.to_string()))?;
    println!("{bound}");
    Ok(())
}

fn cmd_dataset_check(
    path: &std::path::Path,
    label_column: Option<&str>,
) -> Result<(), CliError> {
    eprintln!("config path = {}", path.display());
    eprintln!("config label_column = {}", label_column.unwrap_or("none"));
    let data = load_csv(path, label_column).map_err(|e| CliError::Config(e.to_string()))?;
    let report = interlacing_check(&data).map_err(|e| CliError::Runtime(e.to_string()))?;

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut emit = |line: String| {
        writeln!(out, "{line}").expect("stdout write");
    };
    emit(format!("samples = {}", data.n_samples()));
    emit(format!("features = {}", data.n_features()));
    emit(format!(
        "labels = {}",
        if data.labels().is_some() {
            "present"
        } else {
            "absent"
        }
    ));
    emit(format!("mean_norm_sq = {}", format_float(report.mean_norm_sq)));
    emit(format!(
        "interlacing = {}",
        if report.pass { "pass" } else { "fail" }
    ));
    emit("index,centered,uncentered,upper_slack,lower_slack".into());
    for j in 0..report.centered_eigenvalues.len() {
        emit(format!(
            "{},{},{},{},{}",
            j + 1,
            format_float(report.centered_eigenvalues[j]),
            format_float(report.uncentered_eigenvalues[j]),
            format_float(report.upper_slack[j]),
            format_float(report.lower_slack[j]),
        ));
    }
    if !report.pass {
        return Err(CliError::Runtime(
            "interlacing inequalities violated beyond tolerance".into(),
        ));
    }
    Ok(())
}
