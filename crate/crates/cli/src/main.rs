use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use modrep::analysis::{analyze, AnalysisOptions, Fault};
use modrep::check::{format_check, run_suite, CheckOptions, Suite};
use modrep::perm::GroupSpec;
use modrep::report::{build_report, LabelMap};
use modrep::{builtin, Error, Field, Group, GroupAlgebra, GroupTable};

#[derive(Parser)]
#[command(
    name = "modrep",
    version,
    about = "Modular representation theory of group algebras over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute simples, radical, PIMs, Cartan matrix and blocks of kG.
    Analyze(AnalyzeArgs),
    /// Run a reproduction suite and print one line per check.
    Check(CheckArgs),
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// Builtin group: C1, C2, C3, C4, C5, V4, A4, A5, S3, S4
    #[arg(
        long,
        conflicts_with = "group_file",
        required_unless_present = "group_file"
    )]
    builtin: Option<String>,
    /// JSON group spec: {"degree": 4, "generators": ["(1,2,3)", "(1,2)(3,4)"]}
    #[arg(long)]
    group_file: Option<PathBuf>,
    #[arg(long = "char")]
    characteristic: u32,
    #[arg(long, default_value_t = 1)]
    degree: u32,
    /// Modulus coefficients, low to high, e.g. 1,1,1
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Rename simples in the report, e.g. S1=T1,S2=T3
    #[arg(long)]
    label_map: Option<String>,
    /// Include wall-clock timings (the report is then not reproducible)
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Paper,
    Properties,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    Cartan,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Fault {
        match f {
            FaultArg::Cartan => Fault::Cartan,
        }
    }
}

/// Exit codes: 0 all checks pass, 1 input error, 2 some check failed.
const EXIT_INPUT: u8 = 1;
const EXIT_FAILED: u8 = 2;

fn fail(kind: &str, msg: impl std::fmt::Display) -> ExitCode {
    let msg = msg.to_string().replace('\n', " ");
    eprintln!("error: {kind}: {}", msg.trim());
    ExitCode::from(EXIT_INPUT)
}

fn pipeline_error(e: Error) -> ExitCode {
    let msg = e.to_string().replace('\n', " ");
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn load_group(args: &AnalyzeArgs) -> Result<Group, ExitCode> {
    if let Some(name) = &args.builtin {
        return builtin(name).map_err(pipeline_error);
    }
    let path = args
        .group_file
        .as_ref()
        .expect("clap requires a group source");
    let text =
        fs::read_to_string(path).map_err(|e| fail("Io", format!("{}: {e}", path.display())))?;
    let spec: GroupSpec = serde_json::from_str(&text).map_err(|e| fail("Parse", e))?;
    GroupTable::from_spec(&spec).map_err(pipeline_error)
}

fn cmd_analyze(args: AnalyzeArgs) -> ExitCode {
    let group = match load_group(&args) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let field = match Field::new(args.characteristic, args.degree, args.modulus.clone()) {
        Ok(f) => f,
        Err(e) => return pipeline_error(e),
    };
    let labels = match args.label_map.as_deref().map(LabelMap::parse).transpose() {
        Ok(l) => l.unwrap_or_default(),
        Err(e) => return pipeline_error(e),
    };
    let alg = GroupAlgebra::new(&group, &field);
    let opts = AnalysisOptions {
        seed: args.seed,
        fault: args.inject_fault.map(Fault::from),
    };
    let analysis = match analyze(&alg, &opts) {
        Ok(a) => a,
        Err(e) => return pipeline_error(e),
    };
    let report = build_report(&analysis, args.builtin.as_deref(), &labels, args.timings);
    let body = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                return fail("Io", format!("{}: {e}", path.display()));
            }
        }
        None => print!("{body}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        for c in report.certificates.iter().filter(|c| !c.passed()) {
            eprintln!("certificate failed: {} ({})", c.name, c.detail);
        }
        ExitCode::from(EXIT_FAILED)
    }
}

fn cmd_check(args: CheckArgs) -> ExitCode {
    let suite = match args.suite {
        SuiteArg::Paper => Suite::Paper,
        SuiteArg::Properties => Suite::Properties,
    };
    let opts = CheckOptions {
        seed: args.seed,
        fault: args.inject_fault.map(Fault::from),
    };
    let checks = run_suite(suite, &opts);
    for c in &checks {
        println!("{}", format_check(c));
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    println!("{} checks, {} failed", checks.len(), failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: CheckFailed: {}", failed.join(", "));
        ExitCode::from(EXIT_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // clap's message runs until the blank line before its usage hint
            let text = e.to_string();
            let body: Vec<&str> = text
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            return fail("Usage", body.join(" ").trim_start_matches("error: "));
        }
    };
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Check(args) => cmd_check(args),
    }
}
