mod render;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ssgl2::classno::{census, CensusReport, ClassnoError};
use ssgl2::numth::is_prime;
use ssgl2::oracle::{double_coset_table, enumerate_right_ideal_classes, EnumConfig};
use ssgl2::quatalg::{eichler_order, make_algebra, maximal_order};

use verify::Suite;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

const P_MAX: u64 = 1_000_000;
const FORMULA_BOUND: u64 = 10_000;

#[derive(Parser)]
#[command(name = "sscensus", version, about = "Finite-order GL2 class census over definite quaternion algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Census for a single prime.
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = CensusFormat::Json)]
        format: CensusFormat,
    },
    /// One census row per prime in a range.
    Table {
        #[arg(long)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Check closed forms against brute force and internal identities.
    Verify {
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        suites: Vec<Suite>,
    },
    /// Raw listings from the enumeration oracle.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Double coset counts for the cyclic subgroups of S3.
    Cosets,
    /// Right ideal classes of a maximal or Eichler order.
    Classes {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn enum_config() -> Result<EnumConfig, String> {
    let mut cfg = EnumConfig::default();
    if let Ok(v) = std::env::var("CENSUS_ENUM_BOUND") {
        cfg.discriminant_bound = v
            .parse()
            .map_err(|_| format!("CENSUS_ENUM_BOUND must be a positive integer, got {v:?}"))?;
    }
    Ok(cfg)
}

fn run_census(p: u64) -> Result<CensusReport, ExitCode> {
    match census(p) {
        Ok(r) => Ok(r),
        Err(ClassnoError::NotPrime(_)) => Err(usage(format!("{p} is not prime"))),
        Err(e) => Err(usage(e)),
    }
}

fn cmd_census(p: u64, format: CensusFormat) -> ExitCode {
    let report = match run_census(p) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let out = match format {
        CensusFormat::Json => format!("{}\n", serde_json::to_string_pretty(&render::to_json(&report)).unwrap()),
        CensusFormat::Csv => format!("{}\n{}\n", render::csv_header(), render::csv_row(&report)),
        CensusFormat::Text => render::text(&report),
    };
    print!("{out}");
    if report.total.is_none() {
        eprintln!("warning: total unavailable at p = {p}");
        return ExitCode::from(EXIT_PARTIAL);
    }
    ExitCode::SUCCESS
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("CENSUS_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| format!("CENSUS_THREADS must be a positive integer, got {v:?}"))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| e.to_string())
}

fn cmd_table(p_min: u64, p_max: u64, format: TableFormat) -> ExitCode {
    if !(2 <= p_min && p_min <= p_max && p_max <= P_MAX) {
        return usage(format!("need 2 <= p-min <= p-max <= {P_MAX}"));
    }
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let ps: Vec<u64> = (p_min..=p_max).filter(|&n| is_prime(n)).collect();
    let reports: Result<Vec<CensusReport>, ClassnoError> =
        pool.install(|| ps.par_iter().map(|&p| census(p)).collect());
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    if let TableFormat::Csv = format {
        writeln!(out, "{}", render::csv_header()).unwrap();
    }
    for r in &reports {
        match format {
            TableFormat::Csv => writeln!(out, "{}", render::csv_row(r)).unwrap(),
            TableFormat::Json => writeln!(out, "{}", render::to_json(r)).unwrap(),
        }
    }
    out.flush().unwrap();
    if reports.iter().any(|r| r.total.is_none()) {
        eprintln!("warning: some rows are partial");
        return ExitCode::from(EXIT_PARTIAL);
    }
    ExitCode::SUCCESS
}

fn cmd_verify(bound: u64, mut suites: Vec<Suite>) -> ExitCode {
    suites.sort();
    suites.dedup();
    let cfg = match enum_config() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if bound < 5 || bound > FORMULA_BOUND {
        return usage(format!("need 5 <= bound <= {FORMULA_BOUND}"));
    }
    let mut failed = false;
    for s in suites {
        let b = if s.enumerates() { bound.min(cfg.discriminant_bound) } else { bound };
        let r = verify::run(s, b, &cfg);
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}", s.name(), r.detail);
        for line in r.extra {
            println!("  {line}");
        }
        failed |= !r.passed;
    }
    if failed {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_oracle(what: OracleCommand) -> ExitCode {
    match what {
        OracleCommand::Cosets => {
            let t = double_coset_table().entries;
            println!("j1\\j2 1 2 3");
            for (i, row) in t.iter().enumerate() {
                println!("{} {} {} {}", i + 1, row[0], row[1], row[2]);
            }
            ExitCode::SUCCESS
        }
        OracleCommand::Classes { p, level } => oracle_classes(p, level),
    }
}

fn oracle_classes(p: u64, level: Option<u64>) -> ExitCode {
    let cfg = match enum_config() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if !is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    let algebra = match make_algebra(p) {
        Ok(a) => a,
        Err(e) => return usage(e),
    };
    let o = maximal_order(&algebra).expect("maximal order for a prime");
    let order = match level {
        None | Some(1) => o,
        Some(ell) if is_prime(ell) && ell != p => match eichler_order(&o, ell, 0) {
            Ok(e) => e,
            Err(e) => return usage(e),
        },
        Some(ell) => return usage(format!("level {ell} must be a prime other than {p}")),
    };
    let set = match enumerate_right_ideal_classes(&order, &cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    println!("algebra {algebra}");
    println!("order discriminant {}", order.discriminant());
    println!("classes {}", set.representatives.len());
    println!("mass {}", set.mass());
    for (i, (ideal, u)) in set.representatives.iter().zip(&set.unit_orders).enumerate() {
        println!("[{i}] norm {} units {u}", ideal.reduced_norm());
        for b in ideal.basis() {
            println!("    {b}");
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Census { p, format } => cmd_census(p, format),
        Command::Table { p_min, p_max, format } => cmd_table(p_min, p_max, format),
        Command::Verify { bound, suites } => cmd_verify(bound, suites),
        Command::Oracle { what } => cmd_oracle(what),
    }
}
