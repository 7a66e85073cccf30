use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, ArgGroup, Parser};

use ncgraded::cli::{run, CheckRegistry, InputSource, RunConfig};
use ncgraded::exactla::FieldSpec;

/// Homological invariants of connected graded algebras.
#[derive(Parser, Debug)]
#[command(name = "ncgraded", version, disable_help_flag = true)]
#[command(group(ArgGroup::new("source").required(true).args(["builtin", "input"])))]
struct Args {
    /// Algebra from the built-in corpus.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Presentation file in the ncgraded input language.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Coefficient field: Q or a prime field such as F32003, F2.
    #[arg(long, value_name = "Q|Fp")]
    field: Option<FieldSpec>,
    /// Largest internal degree computed.
    #[arg(short = 'd', long = "degree-bound", value_name = "N", default_value_t = 8)]
    degree_bound: u32,
    /// Largest resolution stage computed.
    #[arg(short = 'h', long = "homological-bound", value_name = "N", default_value_t = 5)]
    homological_bound: usize,
    /// Comma-separated: hilbert, betti, koszul, asregular, hochschild, rigidity, normal-elements.
    #[arg(long, value_name = "LIST", value_delimiter = ',', default_value = "hilbert,betti")]
    check: Vec<String>,
    /// Rational Hilbert series to verify, e.g. "1/(1-t)^4".
    #[arg(long, value_name = "RATIONAL")]
    claim: Option<String>,
    /// Write the JSON report here ("-" for standard output).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for the randomized reduction-order spot check.
    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Largest degree searched by the normal-elements check.
    #[arg(long = "scan-degree", value_name = "N", default_value_t = 3)]
    scan_degree: u32,
    /// Print help.
    #[arg(long, action = ArgAction::Help)]
    help: Option<bool>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match (args.builtin, args.input) {
        (Some(name), _) => InputSource::Builtin(name),
        (None, Some(path)) => InputSource::File(path),
        (None, None) => unreachable!("clap enforces one input"),
    };
    let cfg = RunConfig {
        input,
        field: args.field,
        degree_bound: args.degree_bound,
        homological_bound: args.homological_bound,
        checks: args.check.iter().map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect(),
        claim: args.claim,
        json: args.json,
        seed: args.seed,
        scan_degree: args.scan_degree,
    };
    let outcome = run(&cfg, &CheckRegistry::default());
    if outcome.status == ncgraded::cli::ExitStatus::InputError {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.status as u8)
}
