//! The `rnkit` command line: `solve`, `scan` and `verify`.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when a result disagrees
//! with its cross-check (structural vs. brute force, an inconsistent scan row,
//! or an unconfirmed lemma report).

use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rnkit::auxdioph::{run_all, run_lemma, LemmaReport, SearchBounds, LEMMA_IDS};
use rnkit::classifier::{classify, scan, Classification, Instance, DEFAULT_N_MAX};
use rnkit::qforms::DEFAULT_Z_BOUND;

pub mod record;

pub use record::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "rnkit", version, about = "Solve d1*x^2 + d2^m = 2^(n+2) in positive integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify all solutions for one coefficient pair.
    Solve(SolveArgs),
    /// Count solutions for every valid pair with 1 < d1, d2 <= d-max.
    Scan(ScanArgs),
    /// Run bounded checks of the auxiliary equations and structure lemmas.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub d1: BigInt,
    #[arg(long)]
    pub d2: BigInt,
    #[arg(long, env = "RNKIT_DEFAULT_NMAX", default_value_t = DEFAULT_N_MAX)]
    pub n_max: u64,
    #[arg(long, default_value_t = DEFAULT_Z_BOUND)]
    pub z_bound: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub d_max: u64,
    #[arg(long, env = "RNKIT_DEFAULT_NMAX", default_value_t = DEFAULT_N_MAX)]
    pub n_max: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Lemma id, e.g. 2.18 or 4.2.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub lemma: Option<String>,
    #[arg(long)]
    pub all: bool,
    /// Override a search bound, e.g. --bound x=500. Repeatable.
    #[arg(long = "bound", value_parser = parse_bound)]
    pub bounds: Vec<(String, u64)>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn parse_bound(s: &str) -> Result<(String, u64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let v: u64 = v.trim().parse().map_err(|e| format!("bad value in {s:?}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

/// Run a parsed command, writing data to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> io::Result<i32> {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Scan(a) => cmd_scan(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    }
}

fn fail(msg: impl std::fmt::Display) -> io::Result<i32> {
    eprintln!("error: {msg}");
    Ok(EXIT_INVALID)
}

pub fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> io::Result<i32> {
    let start = Instant::now();
    let inst = match Instance::new(a.d1.clone(), a.d2.clone()) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let c = match classify(&inst, a.n_max, a.z_bound) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let rec = OutputRecord::from_classification(&c, start.elapsed().as_millis());
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rec)?)?,
        Format::Csv => {
            writeln!(out, "d1,d2,x,m,n,case")?;
            write_csv_rows(out, &rec)?;
        }
        Format::Text => write_solve_text(out, &c)?,
    }
    if let Some(d) = &c.discrepancy {
        eprintln!(
            "discrepancy: structural only {:?}, brute force only {:?}",
            d.structural_only.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            d.oracle_only.iter().map(|s| s.to_string()).collect::<Vec<_>>()
        );
        return Ok(EXIT_DISCREPANCY);
    }
    Ok(EXIT_OK)
}

fn write_csv_rows(out: &mut dyn Write, rec: &OutputRecord) -> io::Result<()> {
    for s in &rec.solutions {
        writeln!(out, "{},{},{},{},{},{}", rec.instance.d1, rec.instance.d2, s.x, s.m, s.n, s.case)?;
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_solve_text(out: &mut dyn Write, c: &Classification) -> io::Result<()> {
    writeln!(out, "(d1, d2) = {}", c.instance)?;
    for s in &c.solutions {
        writeln!(out, "(x, m, n) = {}  [{}]", s.solution, s.case)?;
    }
    writeln!(
        out,
        "N = {} (odd m: {}, even m: {})  exception: {}  consistent: {}  discrepancy: {}",
        c.count,
        c.n1,
        c.n2,
        yes_no(c.theorem_exception),
        yes_no(c.theorem_consistent),
        yes_no(c.has_discrepancy())
    )?;
    if let Some(f) = &c.family {
        writeln!(
            out,
            "family: lambda = {}, Z1 = {}, t = 3 gives x = {} (closed form X1(2^(Z1+1) - lambda) = {})",
            f.lambda, f.z1, f.computed_x, f.closed_form_x
        )?;
    }
    for n in &c.notes {
        writeln!(out, "note: {n}")?;
    }
    Ok(())
}

pub fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> io::Result<i32> {
    let start = Instant::now();
    let census = match scan(a.d_max, a.n_max, a.jobs) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let elapsed = start.elapsed().as_millis();
    let summary = ScanSummary {
        command: "scan-summary".into(),
        d_max: a.d_max.to_string(),
        n_max: a.n_max.to_string(),
        instances: census.rows.len().to_string(),
        inconsistent: census.inconsistent.to_string(),
        elapsed_ms: elapsed.to_string(),
    };
    match a.format {
        Format::Json => {
            for r in &census.rows {
                let rec = OutputRecord::from_scan_row(r, a.n_max, elapsed);
                writeln!(out, "{}", serde_json::to_string(&rec)?)?;
            }
            writeln!(out, "{}", serde_json::to_string(&summary)?)?;
        }
        Format::Csv => {
            writeln!(out, "d1,d2,x,m,n,case")?;
            for r in &census.rows {
                write_csv_rows(out, &OutputRecord::from_scan_row(r, a.n_max, elapsed))?;
            }
        }
        Format::Text => {
            for r in &census.rows {
                let flag = if r.consistent { "" } else { "  INCONSISTENT" };
                writeln!(out, "{}: {}{}", r.instance, r.count, flag)?;
            }
        }
    }
    eprintln!(
        "instances={} inconsistent={} elapsed_ms={}",
        census.rows.len(),
        census.inconsistent,
        elapsed
    );
    Ok(if census.inconsistent == 0 { EXIT_OK } else { EXIT_DISCREPANCY })
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> io::Result<i32> {
    let start = Instant::now();
    let mut overrides = SearchBounds::default();
    for (k, v) in &a.bounds {
        overrides = match overrides.with(k, *v) {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
    }
    let reports: Vec<LemmaReport> = match &a.lemma {
        Some(id) if !LEMMA_IDS.contains(&id.as_str()) => {
            return fail(format!("unknown lemma id {id:?}; known: {}", LEMMA_IDS.join(", ")))
        }
        Some(id) => match run_lemma(id, &overrides) {
            Ok(r) => vec![r],
            Err(e) => return fail(e),
        },
        None => match run_all(&overrides) {
            Ok(r) => r,
            Err(e) => return fail(e),
        },
    };
    let confirmed = reports.iter().filter(|r| r.confirmed()).count();
    let rec = VerifyRecord {
        command: "verify".into(),
        reports: reports.iter().map(ReportRecord::from).collect(),
        confirmed: confirmed.to_string(),
        total: reports.len().to_string(),
        elapsed_ms: start.elapsed().as_millis().to_string(),
    };
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rec)?)?,
        Format::Csv => {
            writeln!(out, "lemma,verdict,claimed,found,bounds")?;
            for r in &reports {
                writeln!(out, "{},{},{},{},{}", r.lemma, r.verdict, r.claimed.len(), r.found.len(), r.bounds)?;
            }
        }
        Format::Text => {
            for r in &rec.reports {
                let show = |v: &[Vec<String>]| {
                    let parts: Vec<String> = v.iter().map(|t| format!("({})", t.join(", "))).collect();
                    format!("{{{}}}", parts.join(", "))
                };
                writeln!(
                    out,
                    "{} {}  ({}) = {}  bounds {}",
                    r.lemma,
                    r.verdict,
                    r.variables.join(", "),
                    show(&r.found),
                    r.bounds.iter().map(|(k, v)| format!("{k}<={v}")).collect::<Vec<_>>().join(" ")
                )?;
                if let Some(n) = &r.note {
                    writeln!(out, "    {n}")?;
                }
            }
            writeln!(out, "{confirmed}/{} confirmed within bounds", reports.len())?;
        }
    }
    Ok(if confirmed == reports.len() { EXIT_OK } else { EXIT_DISCREPANCY })
}
