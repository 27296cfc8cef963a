//! `bup4`: divisor sums, factorization and perfect-polynomial searches over GF(4).
//!
//! Exit codes: 0 success, 1 well-formed query with a negative answer,
//! 2 usage or input error, 3 computation error (caps, failed verification).

mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bup4_core::classify::{
    expression_tables, search_general_bup_with, search_pair_bup, sporadic_diff, sporadic_splitting_tuples,
    GeneralStrategy, NonsplitBounds,
};
use bup4_core::omega::DEFAULT_OMEGA_DEGREE_CAP;
use bup4_core::sigma::{divisor_count, DEFAULT_DIVISOR_CAP};
use bup4_core::{
    enumerate_omega, factorize, in_omega2, is_indecomposable_bup, is_unitarily_indecomposable_bup, pk_family,
    search_nonsplit_bup, search_perfect_splitting, search_splitting_bup, sigma, Error, OmegaSet, Poly, SearchOptions,
    SearchReport, SigmaKind,
};

/// Largest degree `omega --max-degree` will enumerate.
const OMEGA_ENUM_MAX_DEGREE: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "bup4", version, about = "Divisor sums and bi-unitary perfect polynomials over GF(4)")]
struct Cli {
    /// Worker threads for searches; output does not depend on it.
    #[arg(long, global = true, env = "BUP4_THREADS", default_value_t = 1)]
    threads: usize,
    /// Refuse searches with more candidates than this.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    max_candidates: u64,
    /// Divisor cap for literal divisor enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_DIVISOR_CAP)]
    max_divisors: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Report elapsed_ms as 0 so that JSON output is byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate sigma, sigma* or sigma** of a polynomial.
    Sigma {
        poly: String,
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
        /// Print the value as a product of primes.
        #[arg(long)]
        factored: bool,
    },
    /// Test whether a polynomial is a fixed point of the chosen divisor sum.
    Check {
        poly: String,
        #[arg(long, value_enum, default_value_t = Kind::Biunitary)]
        kind: Kind,
        /// Also require bi-unitary indecomposability.
        #[arg(long)]
        indecomposable: bool,
        /// Which divisors may not be bi-unitary perfect.
        #[arg(long, value_enum, default_value_t = Decomposition::Unitary, requires = "indecomposable")]
        divisors: Decomposition,
    },
    /// Bounded exhaustive searches.
    Search(SearchArgs),
    /// List members of Omega1 / Omega2, or test one P_k.
    Omega {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), required_unless_present = "pk")]
        set: Option<u8>,
        #[arg(long, default_value_t = 1, conflicts_with = "pk")]
        max_degree: usize,
        /// Test x^(2*5^k) + x^(5^k) + a for membership in Omega2.
        #[arg(long, conflicts_with = "set")]
        pk: Option<u32>,
    },
    /// Recompute the sporadic splitting tuples and the sigma** expression tables.
    Tables,
    /// Factor a polynomial into monic irreducibles.
    Factor { poly: String },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Exponent box [1, max_exp] for split-bup, split-perfect and pair.
    #[arg(long, default_value_t = 6)]
    max_exp: u32,
    /// P in Omega2 for nonsplit-bup, or the first member of the pair.
    #[arg(long, default_value = "x")]
    base: String,
    /// Second Omega1 member for pair mode.
    #[arg(long, default_value = "x^2+x+a")]
    pair: String,
    /// Scan every h, k <= hk-max and l, t <= lt-max instead of the narrowed sets.
    #[arg(long)]
    raw: bool,
    #[arg(long, default_value_t = 64, requires = "raw")]
    hk_max: u32,
    #[arg(long, default_value_t = 15, requires = "raw")]
    lt_max: u32,
    /// Degree bound for general mode.
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    /// Only report hits with this many distinct primes (general mode).
    #[arg(long)]
    omega: Option<usize>,
    #[arg(long, value_enum, default_value_t = Strategy::Structured)]
    strategy: Strategy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    All,
    Unitary,
    Biunitary,
}

impl From<Kind> for SigmaKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::All => SigmaKind::All,
            Kind::Unitary => SigmaKind::Unitary,
            Kind::Biunitary => SigmaKind::BiUnitary,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Decomposition {
    /// No proper unitary divisor is bi-unitary perfect.
    Unitary,
    /// No proper divisor at all is bi-unitary perfect.
    Divisor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    SplitBup,
    NonsplitBup,
    SplitPerfect,
    Pair,
    General,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Strategy {
    Structured,
    Exhaustive,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::NotMonic(_)
            | Error::Constant(_)
            | Error::ZeroPolynomial
            | Error::Reducible(_)
            | Error::NotInOmega1(_)
            | Error::NotInOmega2(_)
            | Error::InvalidBound(_)
            | Error::UnknownFamily(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<bool, Failure>;

fn parse_poly(text: &str) -> Result<Poly, Failure> {
    let p = Poly::parse(text)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial.into());
    }
    if !p.is_monic() {
        return Err(Error::NotMonic(p.to_string()).into());
    }
    Ok(p)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let opts = SearchOptions {
        threads: cli.threads.max(1),
        max_candidates: cli.max_candidates,
        verify_divisor_cap: SearchOptions::default().verify_divisor_cap.min(cli.max_divisors),
        record_timing: !cli.no_timing,
    };
    match &cli.command {
        Command::Sigma { poly, kind, factored } => cmd_sigma(cli, poly, (*kind).into(), *factored),
        Command::Check { poly, kind, indecomposable, divisors } => {
            cmd_check(cli, poly, (*kind).into(), indecomposable.then_some(*divisors))
        }
        Command::Search(args) => cmd_search(cli, args, &opts),
        Command::Omega { set, max_degree, pk } => cmd_omega(cli, *set, *max_degree, *pk),
        Command::Tables => cmd_tables(cli, &opts),
        Command::Factor { poly } => cmd_factor(cli, poly),
    }
}

fn cmd_sigma(cli: &Cli, text: &str, kind: SigmaKind, factored: bool) -> CmdResult {
    let p = parse_poly(text)?;
    let value = sigma(&p, kind)?;
    let f = factorize(&value)?;
    if cli.json {
        println!("{}", json!({ "input": p, "kind": kind, "value": value, "factorization": f }));
    } else if factored {
        println!("{f}");
    } else {
        println!("{value}");
    }
    Ok(true)
}

fn cmd_check(cli: &Cli, text: &str, kind: SigmaKind, indecomposable: Option<Decomposition>) -> CmdResult {
    let p = parse_poly(text)?;
    let f = factorize(&p)?;
    let value = sigma(&p, kind)?;
    let perfect = value == p;
    let indec = match indecomposable {
        None => None,
        Some(_) if !perfect || kind != SigmaKind::BiUnitary => Some(false),
        Some(Decomposition::Unitary) => Some(is_unitarily_indecomposable_bup(&p)?),
        Some(Decomposition::Divisor) => {
            let count = divisor_count(&f);
            if count > u128::from(cli.max_divisors) {
                return Err(Error::DivisorCap { count, cap: cli.max_divisors }.into());
            }
            Some(is_indecomposable_bup(&p, cli.max_divisors)?)
        }
    };
    let holds = perfect && indec.unwrap_or(true);
    if cli.json {
        println!(
            "{}",
            json!({
                "input": p,
                "kind": kind,
                "factorization": f,
                "omega": f.omega(),
                "sigma": value,
                "perfect": perfect,
                "indecomposable": indec,
                "holds": holds,
            })
        );
    } else {
        println!("polynomial      {p}");
        println!("factorization   {f}");
        println!("omega           {}", f.omega());
        println!("sigma value     {value}");
        println!("fixed point     {}", yes_no(perfect));
        if let Some(i) = indec {
            println!("indecomposable  {}", yes_no(i));
        }
    }
    Ok(holds)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_search(cli: &Cli, args: &SearchArgs, opts: &SearchOptions) -> CmdResult {
    let report: SearchReport = match args.mode {
        Mode::SplitBup => search_splitting_bup(args.max_exp, opts)?,
        Mode::SplitPerfect => search_perfect_splitting(args.max_exp, opts)?,
        Mode::NonsplitBup => {
            let bounds =
                if args.raw { NonsplitBounds::raw(args.hk_max, args.lt_max) } else { NonsplitBounds::default() };
            search_nonsplit_bup(&parse_poly(&args.base)?, &bounds, opts)?
        }
        Mode::Pair => search_pair_bup(&parse_poly(&args.base)?, &parse_poly(&args.pair)?, args.max_exp, opts)?,
        Mode::General => {
            let strategy = match args.strategy {
                Strategy::Structured => GeneralStrategy::Structured,
                Strategy::Exhaustive => GeneralStrategy::Exhaustive,
            };
            search_general_bup_with(strategy, args.max_degree, args.omega, opts)?
        }
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render::search_table(&report));
    }
    Ok(true)
}

fn cmd_omega(cli: &Cli, set: Option<u8>, max_degree: usize, pk: Option<u32>) -> CmdResult {
    if let Some(k) = pk {
        let p = pk_family(k, DEFAULT_OMEGA_DEGREE_CAP)?;
        let member = in_omega2(&p);
        let verdict = if member { "IN_OMEGA2" } else { "NOT_IN_OMEGA2" };
        if cli.json {
            println!("{}", json!({ "k": k, "poly": p, "in_omega2": member }));
        } else {
            println!("{p}  {verdict}");
        }
        return Ok(member);
    }
    let set = OmegaSet::from_index(set.unwrap_or(1)).expect("clap restricts --set to 1 or 2");
    if max_degree > OMEGA_ENUM_MAX_DEGREE {
        return Err(
            Error::Cap { what: "max_degree", value: max_degree as u64, cap: OMEGA_ENUM_MAX_DEGREE as u64 }.into()
        );
    }
    let members = enumerate_omega(max_degree, set);
    if cli.json {
        println!("{}", json!({ "set": set, "max_degree": max_degree, "members": members }));
    } else {
        for m in members {
            println!("{m}");
        }
    }
    Ok(true)
}

fn cmd_tables(cli: &Cli, opts: &SearchOptions) -> CmdResult {
    let sporadic = sporadic_splitting_tuples(opts)?;
    let (missing, extra) = sporadic_diff(&sporadic);
    let tables = expression_tables()?;
    let mismatched: Vec<_> = tables.iter().flat_map(|t| t.mismatches()).collect();
    if cli.json {
        println!("{}", json!({ "sporadic": sporadic, "expressions": tables }));
    } else {
        print!("{}", render::tables_text(&sporadic, &tables));
    }
    if !missing.is_empty() || !extra.is_empty() || !mismatched.is_empty() {
        let show = |v: &[bup4_core::ExponentTuple]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let mut message = String::from("computed tables disagree with the predicted entries");
        if !missing.is_empty() || !extra.is_empty() {
            message += &format!("; sporadic missing [{}] extra [{}]", show(&missing), show(&extra));
        }
        for row in mismatched {
            message += &format!("; {}^{}: {} vs {}", row.prime, row.exponent, row.computed, row.predicted);
        }
        return Err(Failure { code: 3, message });
    }
    Ok(true)
}

fn cmd_factor(cli: &Cli, text: &str) -> CmdResult {
    let p = parse_poly(text)?;
    let f = factorize(&p)?;
    if cli.json {
        println!("{}", f.to_json());
    } else {
        println!("{f}");
    }
    Ok(true)
}
