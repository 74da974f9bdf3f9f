use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use faircover::verify::{GeneratorConfig, RequirementPolicy};
use faircover_cli::run::EXIT_INPUT;
use faircover_cli::{
    exit_code, generate, parse_epsilon, parse_instance, run, serialize, Algorithm, InstanceKind,
    RunError, RunReport, SolveOptions,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "faircover",
    version,
    about = "Fair vertex and edge covering solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file (or every file of a directory).
    Solve(SolveArgs),
    /// Print a random instance file.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Summary,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: Algorithm,
    /// Rational such as `1/2`.
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long, value_enum)]
    verify: Option<VerifyMode>,
    #[arg(
        long,
        required_unless_present = "input_dir",
        conflicts_with = "input_dir"
    )]
    input: Option<PathBuf>,
    #[arg(long)]
    input_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum)]
    kind: InstanceKind,
    /// Number of vertices (lines for geometric kinds).
    #[arg(long, default_value_t = 8)]
    vertices: usize,
    #[arg(long, default_value_t = 3)]
    colors: usize,
    #[arg(long, default_value_t = 0.4)]
    density: f64,
    #[arg(long, value_enum, default_value = "random-feasible")]
    policy: Policy,
    #[arg(long)]
    max_edges: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    RandomFeasible,
    RandomAny,
    Tight,
}

fn solve_file(path: &Path, opts: &SolveOptions) -> Result<RunReport, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("cannot read {}: {e}", path.display())))?;
    run(&parse_instance(&text)?, opts)
}

fn solve(args: SolveArgs) -> i32 {
    let epsilon = match args.epsilon.as_deref().map(parse_epsilon).transpose() {
        Ok(eps) => eps,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let opts = SolveOptions {
        algorithm: args.algo,
        epsilon,
        verify: args.verify.is_some(),
    };
    let emit = |report: &RunReport| match args.format {
        OutputFormat::Json => eprintln!("{}", report.summary()),
        OutputFormat::Summary => println!("{}", report.summary()),
    };

    if let Some(path) = &args.input {
        return match solve_file(path, &opts) {
            Ok(report) => {
                if args.format == OutputFormat::Json {
                    println!("{}", report.to_json());
                }
                emit(&report);
                exit_code(&report)
            }
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                e.exit_code()
            }
        };
    }

    let dir = args.input_dir.as_ref().expect("clap requires one input");
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect(),
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", dir.display());
            return EXIT_INPUT;
        }
    };
    files.sort();
    let mut worst = 0;
    let mut results = Vec::new();
    for path in &files {
        let name = path
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        let (entry, code) = match solve_file(path, &opts) {
            Ok(report) => {
                emit(&report);
                let code = exit_code(&report);
                (
                    json!({ "file": name, "exit_code": code, "report": report }),
                    code,
                )
            }
            Err(e) => {
                eprintln!("error: {name}: {e}");
                let code = e.exit_code();
                (
                    json!({ "file": name, "exit_code": code, "error": e.to_string() }),
                    code,
                )
            }
        };
        worst = worst.max(code);
        results.push(entry);
    }
    if args.format == OutputFormat::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&results).expect("reports serialize")
        );
    }
    worst
}

fn gen(args: GenArgs) -> i32 {
    if !(0.0..=1.0).contains(&args.density) {
        eprintln!("error: density must lie in [0, 1]");
        return EXIT_INPUT;
    }
    let policy = match args.policy {
        Policy::RandomFeasible => RequirementPolicy::RandomFeasible,
        Policy::RandomAny => RequirementPolicy::RandomAny,
        Policy::Tight => RequirementPolicy::Tight,
    };
    let mut cfg = GeneratorConfig::new(
        args.seed,
        args.vertices..=args.vertices,
        args.density,
        args.colors,
        policy,
    )
    .with_extra_density(0.2);
    cfg.max_edges = args.max_edges;
    print!("{}", serialize(&generate(args.kind, &cfg)));
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Gen(args) => gen(args),
    };
    ExitCode::from(code as u8)
}
