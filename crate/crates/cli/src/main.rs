//! `hcv`: exact hypercube-vanishing computations from the command line.
//!
//! Every command prints one JSON document on stdout. Exit codes: 0 ok,
//! 1 a sweep instance failed, 2 infeasible, 64 invalid input,
//! 65 division by zero in the chosen characteristic.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hcv_core::hypercube::DEFAULT_ENUMERATION_LIMIT;
use hcv_core::{FieldDescriptor, OriginCondition};

#[derive(Debug, Parser)]
#[command(name = "hcv", version, about = "Exact vanishing-multiplicity algebra on the Boolean hypercube")]
struct Cli {
    /// Lift the n <= 24 guard on hypercube sweeps.
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimum degree of a polynomial vanishing to order k off the origin.
    Mindeg(MindegArgs),
    /// Build an extremal polynomial.
    Witness(WitnessArgs),
    /// Multiplicity profile of a polynomial file and a hypothesis verdict.
    Verify(VerifyArgs),
    /// Canonical k-reduced form of a polynomial file.
    Reduce(ReduceArgs),
    /// Sweep one family of binomial and Catalan identities.
    Identities(IdentitiesArgs),
    /// Check how often affine forms cover each hypercube point.
    Cover(CoverArgs),
}

#[derive(Debug, Args)]
struct MindegArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    /// `nonzero` or `exact=<l>`.
    #[arg(long, default_value = "nonzero", value_parser = parse_origin)]
    origin: OriginCondition,
    /// `rational` or `gf:<p>`.
    #[arg(long, default_value = "rational", value_parser = parse_field)]
    field: FieldDescriptor,
    /// Defaults to n + 2k.
    #[arg(long)]
    max_degree: Option<u32>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["ell", "exact_kminus1", "gf2_counterexample"]))]
struct WitnessArgs {
    #[arg(long)]
    n: usize,
    /// Required except with --gf2-counterexample.
    #[arg(long, required_unless_present = "gf2_counterexample")]
    k: Option<u32>,
    /// Origin multiplicity l <= k - 2; degree n + 2k - 3.
    #[arg(long)]
    ell: Option<u32>,
    /// Origin multiplicity exactly k - 1; degree n + 2k - 2.
    #[arg(long)]
    exact_kminus1: bool,
    /// The GF(2) polynomial of degree n + 4 (n >= 5) vanishing to order 4.
    #[arg(long)]
    gf2_counterexample: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    poly: PathBuf,
    #[arg(long)]
    k: u32,
    /// Require origin multiplicity exactly l instead of a nonzero value.
    #[arg(long)]
    ell: Option<u32>,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(long)]
    poly: PathBuf,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct IdentitiesArgs {
    #[arg(long, value_enum)]
    suite: commands::Suite,
    #[arg(long)]
    max: u32,
}

#[derive(Debug, Args)]
struct CoverArgs {
    #[arg(long)]
    forms: PathBuf,
    #[arg(long)]
    k: u32,
}

fn parse_origin(s: &str) -> Result<OriginCondition, String> {
    if s == "nonzero" {
        return Ok(OriginCondition::Nonzero);
    }
    s.strip_prefix("exact=")
        .and_then(|l| l.parse().ok())
        .map(OriginCondition::ExactMultiplicity)
        .ok_or_else(|| format!("expected `nonzero` or `exact=<l>`, got `{s}`"))
}

fn parse_field(s: &str) -> Result<FieldDescriptor, String> {
    s.parse().map_err(|e: hcv_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if informational { 0 } else { commands::EXIT_INVALID });
        }
    };
    let limit = if cli.force { 63 } else { DEFAULT_ENUMERATION_LIMIT };
    let outcome = match cli.command {
        Command::Mindeg(a) => commands::mindeg(a.n, a.k, a.origin, a.field, a.max_degree, limit),
        Command::Witness(a) => {
            let kind = match (a.ell, a.exact_kminus1) {
                _ if a.gf2_counterexample => commands::WitnessKind::Gf2Counterexample,
                (Some(ell), _) => commands::WitnessKind::Ell(ell),
                _ => commands::WitnessKind::ExactKMinus1,
            };
            commands::witness(a.n, a.k, kind, a.out.as_deref(), limit)
        }
        Command::Verify(a) => commands::verify(&a.poly, a.k, a.ell, limit),
        Command::Reduce(a) => commands::reduce(&a.poly, a.k, a.out.as_deref()),
        Command::Identities(a) => commands::identities(a.suite, a.max),
        Command::Cover(a) => commands::cover(&a.forms, a.k, limit),
    };
    commands::finish(outcome)
}
