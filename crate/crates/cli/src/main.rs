//! Command-line driver for the fockforge engine.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use fockforge_core::checks;
use fockforge_core::crystal::{self, NodeOrder};
use fockforge_core::fock::{
    apply_b, apply_b_dual, apply_casimir, apply_e, apply_f, FockSpaceParams, FockVector,
};
use fockforge_core::grading::GradingEngine;
use fockforge_core::partitions::{Charge, Multipartition};
use fockforge_core::{BigInt, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Parser)]
#[command(
    name = "fockforge",
    about = "Exact computations in charged level-l Fock spaces",
    version
)]
struct Cli {
    /// Rank of the affine algebra acting by node addition/removal (>= 2)
    #[arg(long, global = true, default_value_t = 2)]
    m: u32,

    /// Number of components of the multipartitions (level)
    #[arg(long, global = true, default_value_t = 1)]
    ell: usize,

    /// Comma-separated charge, one integer per component (default: zeros)
    #[arg(long, global = true)]
    charge: Option<String>,

    /// Largest degree computed
    #[arg(long = "max-degree", global = true, default_value_t = 6)]
    max_degree: u32,

    /// Output format (availability depends on the subcommand)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Node order used by the crystal operators
    #[arg(
        long = "crystal-order",
        global = true,
        default_value = "content-then-component"
    )]
    crystal_order: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bigraded dimension tables for every degree up to --max-degree
    GrTable,
    /// Finite-dimensional-simple counts by deconvolution, cross-checked
    /// against the singular-space dimensions
    Findim,
    /// Apply an operator (e q | f q | b r | b' r | casimir) to a vector
    Apply {
        /// operator name: e, f, b, b' or casimir
        op: String,
        /// residue/index followed by the vector, or just the vector
        args: Vec<String>,
    },
    /// Crystal graph up to --max-degree (dot or json)
    Crystal,
    /// Run the full invariant suite at the configured scale
    Check,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn internal_error(msg: &str) -> ExitCode {
    eprintln!("invariant failure: {msg}");
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if cli.m < 2 {
        return usage_error("--m must be at least 2");
    }
    if cli.ell < 1 {
        return usage_error("--ell must be at least 1");
    }
    let charge = match &cli.charge {
        None => Charge::zero(cli.ell),
        Some(s) => {
            let entries: Result<Vec<i64>, _> =
                s.split(',').map(|e| e.trim().parse::<i64>()).collect();
            match entries {
                Ok(v) if v.len() == cli.ell => Charge::new(v),
                Ok(v) => {
                    return usage_error(&format!(
                        "--charge has {} entries but --ell is {}",
                        v.len(),
                        cli.ell
                    ))
                }
                Err(_) => return usage_error("--charge must be comma-separated integers"),
            }
        }
    };
    let Some(order) = NodeOrder::parse(&cli.crystal_order) else {
        return usage_error(
            "--crystal-order must be content-then-component or component-then-content",
        );
    };
    if let Ok(threads) = std::env::var("FOCKFORGE_THREADS") {
        let parsed = threads.parse::<usize>();
        match parsed {
            Ok(n) if n > 0 => {
                if rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .is_err()
                {
                    return internal_error("failed to configure the thread pool");
                }
            }
            _ => return usage_error("FOCKFORGE_THREADS must be a positive integer"),
        }
    }
    let params = FockSpaceParams::new(cli.m, cli.ell, charge.clone(), cli.max_degree);

    match &cli.command {
        Command::GrTable => cmd_gr_table(&cli, params),
        Command::Findim => cmd_findim(&cli, params),
        Command::Apply { op, args } => cmd_apply(&cli, params, op, args),
        Command::Crystal => cmd_crystal(&cli, params, order),
        Command::Check => cmd_check(&cli, charge, order),
    }
}

fn params_json(p: &FockSpaceParams) -> serde_json::Value {
    serde_json::json!({
        "m": p.m,
        "ell": p.ell,
        "charge": p.charge.entries(),
        "max_degree": p.bound,
    })
}

fn cmd_gr_table(cli: &Cli, params: FockSpaceParams) -> ExitCode {
    let mut eng = GradingEngine::new(params.clone());
    let tables: Vec<_> = (0..=params.bound).map(|n| eng.graded_dims(n)).collect();
    match cli.format {
        Format::Json => {
            let out = serde_json::json!({
                "params": params_json(&params),
                "tables": tables.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("n,i,j,dim");
            for t in &tables {
                for line in t.to_csv_lines() {
                    println!("{line}");
                }
            }
        }
        Format::Text => {
            for t in &tables {
                let cells: Vec<String> = t
                    .entries
                    .iter()
                    .map(|(&(i, j), &d)| format!("({i},{j})={d}"))
                    .collect();
                println!("n={}: {}", t.n, cells.join(" "));
            }
        }
        Format::Dot => return usage_error("gr-table supports json, csv or text"),
    }
    ExitCode::SUCCESS
}

fn cmd_findim(cli: &Cli, params: FockSpaceParams) -> ExitCode {
    let mut eng = GradingEngine::new(params.clone());
    let h = match eng.findim_counts(params.bound) {
        Ok(h) => h,
        Err(e) => return internal_error(&e.to_string()),
    };
    let rows: Vec<(u32, u64, u64, bool)> = (0..=params.bound)
        .map(|n| {
            let direct = eng.singular_dim(n);
            (n, h[n as usize], direct, h[n as usize] == direct)
        })
        .collect();
    match cli.format {
        Format::Json => {
            let out = serde_json::json!({
                "params": params_json(&params),
                "counts": rows
                    .iter()
                    .map(|(n, h, s, ok)| serde_json::json!({
                        "n": n, "h": h, "singular": s, "match": ok,
                    }))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("n,h,singular,match");
            for (n, h, s, ok) in &rows {
                println!("{n},{h},{s},{ok}");
            }
        }
        Format::Text => {
            for (n, h, s, ok) in &rows {
                println!(
                    "n={n}: h={h} singular={s} {}",
                    if *ok { "match" } else { "MISMATCH" }
                );
            }
        }
        Format::Dot => return usage_error("findim supports json, csv or text"),
    }
    if rows.iter().any(|(_, _, _, ok)| !ok) {
        return internal_error("deconvolution and singular-space counts disagree");
    }
    ExitCode::SUCCESS
}

// Parses "a/b" or "a" into a rational.
fn parse_rat(tok: &str) -> Option<Rat> {
    let mut it = tok.splitn(2, '/');
    let num: BigInt = it.next()?.parse().ok()?;
    match it.next() {
        None => Some(Rat::from_integer(num)),
        Some(den) => {
            let den: BigInt = den.parse().ok()?;
            if den == BigInt::from(0) {
                None
            } else {
                Some(Rat::new(num, den))
            }
        }
    }
}

// Parses a linear combination like "1/2 [2] - 1/2 [1,1]" or "[2,1]|[]".
fn parse_vector(input: &str, params: &FockSpaceParams) -> Result<FockVector, String> {
    let mut v = FockVector::zero(params.clone());
    let mut sign = Rat::from_integer(BigInt::from(1));
    let mut coeff: Option<Rat> = None;
    for tok in input.split_whitespace() {
        match tok {
            "+" => {
                sign = Rat::from_integer(BigInt::from(1));
            }
            "-" => {
                sign = Rat::from_integer(BigInt::from(-1));
            }
            _ if tok.starts_with('[') => {
                let mp: Multipartition = tok
                    .parse()
                    .map_err(|e| format!("bad multipartition `{tok}`: {e}"))?;
                if mp.ell() != params.ell {
                    return Err(format!(
                        "`{tok}` has {} components but --ell is {}",
                        mp.ell(),
                        params.ell
                    ));
                }
                if mp.size() > params.bound {
                    return Err(format!("`{tok}` exceeds --max-degree {}", params.bound));
                }
                let c = coeff.take().unwrap_or_else(|| Rat::from_integer(1.into()));
                v.add_term(mp, c * &sign);
                sign = Rat::from_integer(BigInt::from(1));
            }
            _ => {
                let c = parse_rat(tok).ok_or_else(|| format!("bad token `{tok}`"))?;
                if coeff.replace(c).is_some() {
                    return Err(format!("two coefficients in a row near `{tok}`"));
                }
            }
        }
    }
    if coeff.is_some() {
        return Err("dangling coefficient at the end of the vector".into());
    }
    Ok(v)
}

fn cmd_apply(cli: &Cli, params: FockSpaceParams, op: &str, args: &[String]) -> ExitCode {
    let (index, vector_str): (Option<u32>, &str) = match (op, args) {
        ("casimir", [v]) => (None, v.as_str()),
        ("e" | "f" | "b" | "b'", [idx, v]) => match idx.parse::<u32>() {
            Ok(i) => (Some(i), v.as_str()),
            Err(_) => return usage_error("operator index must be a nonnegative integer"),
        },
        _ => {
            return usage_error(
                "usage: apply e|f <q> <vector> | apply b|b' <r> <vector> | apply casimir <vector>",
            )
        }
    };
    let v = match parse_vector(vector_str, &params) {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    let result = match (op, index) {
        ("e", Some(q)) if q < params.m => apply_e(q, &v),
        ("f", Some(q)) if q < params.m => apply_f(q, &v),
        ("b", Some(r)) if r >= 1 => apply_b(r, &v),
        ("b'", Some(r)) if r >= 1 => apply_b_dual(r, &v),
        ("casimir", None) => apply_casimir(&v),
        ("e" | "f", Some(_)) => return usage_error("residue must satisfy 0 <= q < m"),
        _ => return usage_error("index must satisfy r >= 1"),
    };
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "params": params_json(&params),
                "result": result.to_json(),
            }))
            .unwrap()
        ),
        Format::Text => println!("{result}"),
        _ => return usage_error("apply supports text or json"),
    }
    ExitCode::SUCCESS
}

fn cmd_crystal(cli: &Cli, params: FockSpaceParams, order: NodeOrder) -> ExitCode {
    let graph = crystal::build_graph(&params, order);
    match cli.format {
        Format::Dot | Format::Text => print!("{}", graph.to_dot()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&graph.to_json()).unwrap()
        ),
        Format::Csv => return usage_error("crystal supports dot or json"),
    }
    ExitCode::SUCCESS
}

fn cmd_check(cli: &Cli, charge: Charge, order: NodeOrder) -> ExitCode {
    let checks = checks::invariant_checks(cli.m, cli.ell, &charge, cli.max_degree, order);
    let reports: Vec<_> = checks.into_par_iter().map(|c| c.run()).collect();
    for r in &reports {
        if r.passed {
            println!("ok   {}", r.name);
        } else {
            println!("FAIL {}: {}", r.name, r.detail);
        }
    }
    if let Some(first) = reports.iter().find(|r| !r.passed) {
        return internal_error(&format!("first failing invariant: {}", first.name));
    }
    println!("all {} invariants hold", reports.len());
    ExitCode::SUCCESS
}
