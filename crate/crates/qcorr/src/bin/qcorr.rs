use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcorr::format::{parse_matrix, read_text};
use qcorr::qcorr_core::linalg::{CLAMP_TOL, HERMITIAN_TOL, TRACE_TOL};
use qcorr::qcorr_core::measure_g::DEFAULT_PARTITION_BUDGET;
use qcorr::qcorr_core::DensityMatrix;
use qcorr::report::{measure_report, ReportOptions};
use qcorr::search::worker_count;
use qcorr::state::{StateFamily, StateSpec};
use qcorr::sweep::{run_sweep, write_csv, Measure, SweepSpec};
use qcorr::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Nonclassical correlation measures D and G, and negativity, for
/// multipartite density matrices.
#[derive(Parser)]
#[command(name = "qcorr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute measures for one state.
    Measure(MeasureArgs),
    /// Sweep a family parameter and write CSV.
    Sweep(SweepArgs),
    /// Check a density-matrix file and print its residuals.
    Validate {
        /// Matrix file to check.
        file: PathBuf,
    },
}

#[derive(Args)]
struct StateArgs {
    /// State family: pseudo_pure, bell_mixture, sigma_p, horodecki_2x4,
    /// pseudo_ghz, classical or file.
    #[arg(long)]
    family: Option<StateFamily>,
    /// Family parameter p (b for horodecki_2x4).
    #[arg(long = "p", visible_alias = "b", allow_negative_numbers = true)]
    p: Option<f64>,
    /// Number of qubits for pseudo_ghz (default 3) and classical (default 2).
    #[arg(long)]
    n_qubits: Option<usize>,
    /// Density-matrix file (implies --family file).
    #[arg(long)]
    file: Option<PathBuf>,
    /// `vec` file holding |psi> for pseudo_pure (default: two-qubit Bell state).
    #[arg(long)]
    psi: Option<PathBuf>,
    /// Read horodecki_2x4 as a 2x2x2 state instead of 2x4.
    #[arg(long)]
    tripartite: bool,
}

#[derive(Args)]
struct CommonArgs {
    /// Comma-separated subset of D,G,negativity_min,negativity_max.
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<Measure>>,
    /// Random D trials (default 4e4 up to d=4, x10 per qubit beyond).
    #[arg(long)]
    trials: Option<u64>,
    /// Seed of the D search and of the classical family.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Refuse G when a subsystem needs more partitions than this.
    #[arg(long, default_value_t = DEFAULT_PARTITION_BUDGET)]
    partition_budget: u128,
}

#[derive(Args)]
struct MeasureArgs {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    common: CommonArgs,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    common: CommonArgs,
    /// First parameter value.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    from: f64,
    /// Last parameter value (default: the family's upper end).
    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    /// Output CSV path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_budget_exceeded() {
            EXIT_BUDGET
        } else {
            EXIT_INVALID
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

impl StateArgs {
    fn spec(&self, seed: u64) -> Result<StateSpec, Failure> {
        let family = match (self.family, &self.file) {
            (Some(f), _) => f,
            (None, Some(_)) => StateFamily::File,
            (None, None) => return Err(invalid("choose a state with --family or --file")),
        };
        let mut spec = StateSpec::new(family);
        spec.parameter = self.p;
        spec.seed = seed;
        spec.source_path = match family {
            StateFamily::File => self.file.clone(),
            StateFamily::PseudoPure => self.psi.clone(),
            _ => None,
        };
        if let Some(n) = self.n_qubits {
            if !matches!(family, StateFamily::PseudoGhz | StateFamily::Classical) {
                return Err(invalid("--n-qubits applies to pseudo_ghz and classical only"));
            }
            spec.dims = vec![2; n];
        }
        if self.tripartite {
            if family != StateFamily::Horodecki2x4 {
                return Err(invalid("--tripartite applies to horodecki_2x4 only"));
            }
            spec.dims = vec![2, 2, 2];
        }
        Ok(spec)
    }
}

impl CommonArgs {
    fn measures(&self) -> Vec<Measure> {
        self.measures.clone().unwrap_or_else(|| Measure::ALL.to_vec())
    }
}

fn workers() -> Result<usize, Failure> {
    Ok(worker_count()?)
}

fn measure(args: &MeasureArgs) -> Result<(), Failure> {
    let spec = args.state.spec(args.common.seed)?;
    let rho = spec.build()?;
    let opts = ReportOptions {
        measures: args.common.measures(),
        trials: args.common.trials,
        seed: args.common.seed,
        partition_budget: args.common.partition_budget,
        workers: workers()?,
    };
    let report = measure_report(&rho, &opts)?;
    if args.json {
        let text = serde_json::to_string_pretty(&report).map_err(|e| invalid(e.to_string()))?;
        println!("{text}");
    } else {
        println!("state           {}{}", spec.family, parameter_text(&spec));
        print!("{report}");
    }
    Ok(())
}

fn parameter_text(spec: &StateSpec) -> String {
    match spec.parameter {
        Some(p) if spec.family.has_parameter() => format!(" ({} = {p})", spec.family.parameter_name()),
        _ => String::new(),
    }
}

fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let state = args.state.spec(args.common.seed)?;
    let default_end = if state.family == StateFamily::SigmaP { 0.5 } else { 1.0 };
    let spec = SweepSpec {
        state,
        param_start: args.from,
        param_end: args.to.unwrap_or(default_end),
        param_step: args.step,
        measures: args.common.measures(),
        trials: args.common.trials,
        seed: args.common.seed,
        partition_budget: args.common.partition_budget,
        output_path: args.out.clone(),
    };
    let rows = run_sweep(&spec, workers()?)?;
    let param_name = spec.state.family.parameter_name();
    let written = match &spec.output_path {
        Some(path) => File::create(path)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                write_csv(&mut w, param_name, &spec.measures, &rows)?;
                w.flush()
            })
            .map_err(|e| (path.display().to_string(), e)),
        None => {
            write_csv(io::stdout().lock(), param_name, &spec.measures, &rows).map_err(|e| ("stdout".to_string(), e))
        }
    };
    written.map_err(|(target, e)| invalid(format!("cannot write {target}: {e}")))
}

fn validate(path: &Path) -> Result<(), Failure> {
    let (dims, mat) = parse_matrix(&read_text(path)?)?;
    let r = DensityMatrix::residuals(&mat, &dims).map_err(Error::from)?;
    let dims_text: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    println!("dims                {}  (d_tot = {})", dims_text.join(" "), mat.rows());
    let herm_ok = r.hermitian <= HERMITIAN_TOL;
    let trace_ok = r.trace <= TRACE_TOL;
    let psd_ok = r.min_eigenvalue >= -CLAMP_TOL;
    let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
    println!("hermitian residual  {:e}  {}", r.hermitian, verdict(herm_ok));
    println!("trace residual      {:e}  {}", r.trace, verdict(trace_ok));
    if r.min_eigenvalue.is_nan() {
        println!("min eigenvalue      not computed (matrix is not Hermitian)  FAIL");
    } else {
        println!("min eigenvalue      {:e}  {}", r.min_eigenvalue, verdict(psd_ok));
    }
    if herm_ok && trace_ok && psd_ok {
        println!("valid");
        Ok(())
    } else {
        let mut failed = Vec::new();
        if !herm_ok {
            failed.push("Hermiticity");
        }
        if !trace_ok {
            failed.push("unit trace");
        }
        if !psd_ok {
            failed.push("positive semidefiniteness");
        }
        Err(invalid(format!("{}: violates {}", path.display(), failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Measure(args) => measure(args),
        Command::Sweep(args) => sweep(args),
        Command::Validate { file } => validate(file),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
