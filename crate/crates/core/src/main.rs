use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use theta_crystal::arith::Rational;
use theta_crystal::error::Error;
use theta_crystal::group::Group;
use theta_crystal::report::Report;
use theta_crystal::verify::{self, RunParams};

#[derive(Parser, Debug)]
#[command(name = "theta-crystal", version, about = "Verification suite for theta functions on the Klein quartic Jacobian")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Worker threads (THETA_CRYSTAL_THREADS takes precedence).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct Numeric {
    /// Working precision in decimal digits.
    #[arg(long, default_value_t = 64)]
    precision: u32,

    /// Truncation cutoff `c`: terms with B[u]/(2k) ≤ c, e.g. `3.5` or `7/2`.
    #[arg(long, value_parser = parse_rational)]
    cutoff: Option<Rational>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root system, group orders, relations and classes.
    Group,
    /// Symplectic lifts, action on the period matrix, parity.
    Symplectic,
    /// Unitarity, relations and homomorphism of ρ_k.
    Rep {
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Character values against the table, Gauss-sum path.
    Character {
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Hilbert function: traces, table, closed formula, series.
    Hilbert {
        #[arg(long, default_value_t = 42)]
        max: usize,
    },
    /// Jacobian of φ̃₀..φ̃₃ at the certificate point.
    Jacobian(Numeric),
    /// Numerical rank of the degree-8 monomials.
    Rank(Numeric),
    /// Kernel of the degree-8 monomials with the φ₄ candidate.
    Relation(Numeric),
    /// Lattice-point counts of the fundamental domain.
    Ehrhart {
        #[arg(long, default_value_t = 12)]
        max: i64,
    },
    /// Section counts on the toric model.
    Toric {
        #[arg(long, default_value_t = 20)]
        max: i64,
    },
    /// Everything with defaults.
    VerifyAll(Numeric),
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    verify::parse_rational(s).map_err(|e| e.to_string())
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, String> {
    match std::env::var("THETA_CRYSTAL_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| format!("THETA_CRYSTAL_THREADS must be a positive integer, got {v:?}")),
        _ => match flag {
            Some(0) => Err("--threads must be positive".into()),
            f => Ok(f),
        },
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let mut p = RunParams {
        seed: Some(cli.seed),
        ..RunParams::default()
    };
    let num = |p: &mut RunParams, n: &Numeric| {
        p.precision = Some(n.precision);
        p.cutoff = n.cutoff.as_ref().map(|c| c.to_string());
    };
    match &cli.command {
        Command::Rep { degree } | Command::Character { degree } => p.degree = Some(*degree),
        Command::Hilbert { max } => p.max = Some(*max as i64),
        Command::Ehrhart { max } | Command::Toric { max } => p.max = Some(*max),
        Command::Jacobian(n) | Command::Rank(n) | Command::Relation(n) | Command::VerifyAll(n) => num(&mut p, n),
        Command::Group | Command::Symplectic => {}
    }
    verify::run_command(&Group::build(), command_name(&cli.command), &p)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Group => "group",
        Command::Symplectic => "symplectic",
        Command::Rep { .. } => "rep",
        Command::Character { .. } => "character",
        Command::Hilbert { .. } => "hilbert",
        Command::Jacobian(_) => "jacobian",
        Command::Rank(_) => "rank",
        Command::Relation(_) => "relation",
        Command::Ehrhart { .. } => "ehrhart",
        Command::Toric { .. } => "toric",
        Command::VerifyAll(_) => "verify-all",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match threads(cli.threads) {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e @ (Error::InvalidArgument(_) | Error::OddDegree(_))) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => verify::error_report(command_name(&cli.command), &e),
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    ExitCode::from(report.exit_code() as u8)
}
