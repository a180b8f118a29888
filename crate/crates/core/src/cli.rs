//! Command-line front end.
//!
//! Every subcommand builds a plain serde record with string-valued numbers
//! and renders it as text, JSON or (for tabular outputs) CSV.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graded::MiddleIndex;
use crate::{numtheory, realize, relations, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_REALIZABLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "chern-realize",
    version,
    about = "Chern number relations and realizability of rational cohomology rings with Betti numbers in degrees 0, n/2 and n"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether (signature, euler) is realized in dimension `dim`.
    Check {
        #[arg(long)]
        dim: u64,
        #[arg(long, allow_negative_numbers = true)]
        signature: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        euler: BigInt,
    },
    /// Lattice of realizable (signature, euler) pairs.
    Characterize {
        #[arg(long)]
        dim: u64,
    },
    /// All realizable pairs with euler characteristic up to `max-euler`.
    Enumerate {
        #[arg(long)]
        dim: u64,
        #[arg(long, allow_negative_numbers = true)]
        max_euler: BigInt,
    },
    /// Divisibility bounds for one dimension, or for n = 4K with K = 2..=KMAX.
    #[command(group(ArgGroup::new("target").required(true).args(["dim", "sweep"])))]
    Bounds {
        #[arg(long)]
        dim: Option<u64>,
        #[arg(long, value_name = "KMAX")]
        sweep: Option<u32>,
    },
    /// Cross-check closed forms and number-theoretic identities for K = 2..=max-k.
    Verify {
        #[arg(long)]
        max_k: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub dim: String,
    pub signature: String,
    pub euler: String,
    pub realizable: bool,
    pub x: String,
    pub a: String,
    pub b: String,
    pub obstructions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceRecord {
    pub p: String,
    pub q: String,
    pub d: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizeRecord {
    pub dim: String,
    pub basis: [[String; 2]; 2],
    pub sigma_gcd: String,
    pub chi_gcd: String,
    pub determinant: String,
    pub congruences: Vec<CongruenceRecord>,
    pub side_conditions: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateRow {
    pub euler: String,
    pub signature: String,
    pub x: String,
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateRecord {
    pub dim: String,
    pub rows: Vec<EnumerateRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub dim: String,
    pub nu2_sigma_min: String,
    pub nu2_chi_min: String,
    pub sigma_modulus: Option<String>,
    pub chi_modulus: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub rows: Vec<BoundsRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub k: String,
    pub dim: String,
    pub oracle: bool,
    pub higher_span: bool,
    pub von_staudt_clausen: bool,
    pub nu2_identities: bool,
    pub divisibility: bool,
    pub parity: bool,
}

impl VerifyRow {
    pub fn passed(&self) -> bool {
        self.oracle
            && self.higher_span
            && self.von_staudt_clausen
            && self.nu2_identities
            && self.divisibility
            && self.parity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub rows: Vec<VerifyRow>,
    pub all_pass: bool,
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, code)) => match emit(&cli.output, &report) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: cannot write report: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn emit(path: &Option<PathBuf>, report: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, report),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(report.as_bytes())?;
            out.flush()
        }
    }
}

fn execute(cli: &Cli) -> crate::Result<(String, i32)> {
    let fmt = cli.format;
    match &cli.command {
        Command::Check {
            dim,
            signature,
            euler,
        } => {
            reject_csv(fmt, "check")?;
            let rec = check_record(*dim, signature, euler)?;
            let code = if rec.realizable {
                EXIT_OK
            } else {
                EXIT_NOT_REALIZABLE
            };
            let out = match fmt {
                OutputFormat::Json => to_json(&rec)?,
                _ => check_text(&rec),
            };
            Ok((out, code))
        }
        Command::Characterize { dim } => {
            reject_csv(fmt, "characterize")?;
            let rec = characterize_record(*dim)?;
            let out = match fmt {
                OutputFormat::Json => to_json(&rec)?,
                _ => characterize_text(&rec),
            };
            Ok((out, EXIT_OK))
        }
        Command::Enumerate { dim, max_euler } => {
            let rec = enumerate_record(*dim, max_euler)?;
            let out = match fmt {
                OutputFormat::Json => to_json(&rec)?,
                OutputFormat::Csv => to_csv(&rec.rows)?,
                OutputFormat::Text => enumerate_text(&rec),
            };
            Ok((out, EXIT_OK))
        }
        Command::Bounds { dim: Some(n), .. } => {
            reject_csv(fmt, "bounds --dim")?;
            let rec = bounds_record(*n)?;
            let out = match fmt {
                OutputFormat::Json => to_json(&rec)?,
                _ => bounds_text(std::slice::from_ref(&rec)),
            };
            Ok((out, EXIT_OK))
        }
        Command::Bounds {
            sweep: Some(kmax), ..
        } => {
            let rec = sweep_record(*kmax)?;
            let out = match fmt {
                OutputFormat::Json => to_json(&rec)?,
                OutputFormat::Csv => to_csv(&rec.rows)?,
                OutputFormat::Text => bounds_text(&rec.rows),
            };
            Ok((out, EXIT_OK))
        }
        Command::Bounds { .. } => Err(Error::InvalidArgument(
            "bounds needs --dim or --sweep".into(),
        )),
        Command::Verify { max_k } => {
            reject_csv(fmt, "verify")?;
            let rec = verify_record(*max_k)?;
            let code = if rec.all_pass {
                EXIT_OK
            } else {
                EXIT_NOT_REALIZABLE
            };
            let out = match fmt {
                OutputFormat::Json => to_json(&rec)?,
                _ => verify_text(&rec),
            };
            Ok((out, code))
        }
    }
}

fn reject_csv(fmt: OutputFormat, what: &str) -> crate::Result<()> {
    if fmt == OutputFormat::Csv {
        return Err(Error::InvalidArgument(format!(
            "csv output is only available for enumerate and bounds --sweep, not {what}"
        )));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> crate::Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn to_csv<T: Serialize>(rows: &[T]) -> crate::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn check_record(n: u64, sigma: &BigInt, chi: &BigInt) -> crate::Result<CheckRecord> {
    let v = realize::check(n, sigma, chi)?;
    Ok(CheckRecord {
        dim: n.to_string(),
        signature: sigma.to_string(),
        euler: chi.to_string(),
        realizable: v.realizable,
        x: v.x.to_string(),
        a: v.a.to_string(),
        b: v.b.to_string(),
        obstructions: v.obstructions.iter().map(|s| s.to_string()).collect(),
    })
}

pub fn characterize_record(n: u64) -> crate::Result<CharacterizeRecord> {
    let r = realize::characterize(n)?;
    let (s1, c1) = r.basis.v1();
    let (z, c2) = r.basis.v2();
    Ok(CharacterizeRecord {
        dim: n.to_string(),
        basis: [
            [s1.to_string(), c1.to_string()],
            [z.to_string(), c2.to_string()],
        ],
        sigma_gcd: r.sigma_gcd.to_string(),
        chi_gcd: r.chi_gcd.to_string(),
        determinant: r.determinant.to_string(),
        congruences: r
            .congruences
            .iter()
            .map(|c| CongruenceRecord {
                p: c.p.to_string(),
                q: c.q.to_string(),
                d: c.d.to_string(),
            })
            .collect(),
        side_conditions: r.side_conditions,
    })
}

pub fn enumerate_record(n: u64, chi_max: &BigInt) -> crate::Result<EnumerateRecord> {
    let rows = realize::enumerate(n, chi_max)?
        .into_iter()
        .map(|r| EnumerateRow {
            euler: r.chi.to_string(),
            signature: r.sigma.to_string(),
            x: r.x.to_string(),
            a: r.a.to_string(),
            b: r.b.to_string(),
        })
        .collect();
    Ok(EnumerateRecord {
        dim: n.to_string(),
        rows,
    })
}

pub fn bounds_record(n: u64) -> crate::Result<BoundsRecord> {
    let b = realize::divisibility_bounds(n)?;
    Ok(BoundsRecord {
        dim: n.to_string(),
        nu2_sigma_min: b.nu2_sigma_min.to_string(),
        nu2_chi_min: b.nu2_chi_min.to_string(),
        sigma_modulus: b.sigma_modulus.map(|m| m.to_string()),
        chi_modulus: b.chi_modulus.map(|m| m.to_string()),
    })
}

pub fn sweep_record(kmax: u32) -> crate::Result<SweepRecord> {
    if kmax < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs KMAX >= 2, got {kmax}"
        )));
    }
    let rows = (2..=kmax)
        .into_par_iter()
        .map(|k| bounds_record(4 * k as u64))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(SweepRecord { rows })
}

pub fn verify_record(max_k: u32) -> crate::Result<VerifyRecord> {
    if max_k < 2 {
        return Err(Error::InvalidArgument(format!(
            "verify needs --max-k >= 2, got {max_k}"
        )));
    }
    let rows = (2..=max_k)
        .into_par_iter()
        .map(verify_row)
        .collect::<crate::Result<Vec<_>>>()?;
    let all_pass = rows.iter().all(VerifyRow::passed);
    Ok(VerifyRecord { rows, all_pass })
}

fn verify_row(k: u32) -> crate::Result<VerifyRow> {
    let mid = MiddleIndex::new(k)?;
    let n = mid.dim();
    Ok(VerifyRow {
        k: k.to_string(),
        dim: n.to_string(),
        oracle: relations::verify_against_oracle(mid).all_equal,
        higher_span: relations::higher_relations_span(mid, 2 * k)?,
        von_staudt_clausen: numtheory::von_staudt_clausen_check(2 * k)?,
        nu2_identities: numtheory::nu2_identities(k)?.all_match,
        divisibility: realize::verify_divisibility(n)?,
        parity: realize::parity_check(n)?,
    })
}

fn check_text(r: &CheckRecord) -> String {
    let mut s = format!(
        "dim {}  signature {}  euler {}\nrealizable: {}\nx = {}  a = {}  b = {}\n",
        r.dim,
        r.signature,
        r.euler,
        if r.realizable { "yes" } else { "no" },
        r.x,
        r.a,
        r.b
    );
    if !r.obstructions.is_empty() {
        s.push_str(&format!("obstructions: {}\n", r.obstructions.join(", ")));
    }
    s
}

fn characterize_text(r: &CharacterizeRecord) -> String {
    let mut s = format!("dim {}\n", r.dim);
    s.push_str(&format!(
        "basis: ({}, {}), ({}, {})\n",
        r.basis[0][0], r.basis[0][1], r.basis[1][0], r.basis[1][1]
    ));
    s.push_str(&format!("sigma gcd: {}\n", r.sigma_gcd));
    s.push_str(&format!("chi gcd: {}\n", r.chi_gcd));
    s.push_str(&format!("determinant: {}\n", r.determinant));
    s.push_str("congruences (p*sigma + q*chi = 0 mod d):\n");
    for c in &r.congruences {
        s.push_str(&format!("  {} {} {}\n", c.p, c.q, c.d));
    }
    s.push_str(&format!("side conditions: {}\n", r.side_conditions));
    s
}

fn enumerate_text(r: &EnumerateRecord) -> String {
    let mut s = format!(
        "dim {}\n{:>8} {:>10} {:>10} {:>8} {:>8}\n",
        r.dim, "euler", "signature", "x", "a", "b"
    );
    for row in &r.rows {
        s.push_str(&format!(
            "{:>8} {:>10} {:>10} {:>8} {:>8}\n",
            row.euler, row.signature, row.x, row.a, row.b
        ));
    }
    s
}

fn bounds_text(rows: &[BoundsRecord]) -> String {
    let mut s = String::new();
    for r in rows {
        s.push_str(&format!(
            "dim {}: nu2(sigma) >= {}, nu2(chi) >= {}",
            r.dim, r.nu2_sigma_min, r.nu2_chi_min
        ));
        if let Some(m) = &r.sigma_modulus {
            s.push_str(&format!(", {m} | sigma"));
        }
        if let Some(m) = &r.chi_modulus {
            s.push_str(&format!(", {m} | chi"));
        }
        s.push('\n');
    }
    s
}

fn verify_text(r: &VerifyRecord) -> String {
    let mark = |b: bool| if b { "ok" } else { "FAIL" };
    let mut s = format!(
        "{:>4} {:>5} {:>7} {:>7} {:>7} {:>7} {:>7} {:>7}\n",
        "K", "dim", "oracle", "span", "vsc", "nu2", "divis", "parity"
    );
    for row in &r.rows {
        s.push_str(&format!(
            "{:>4} {:>5} {:>7} {:>7} {:>7} {:>7} {:>7} {:>7}\n",
            row.k,
            row.dim,
            mark(row.oracle),
            mark(row.higher_span),
            mark(row.von_staudt_clausen),
            mark(row.nu2_identities),
            mark(row.divisibility),
            mark(row.parity)
        ));
    }
    s.push_str(if r.all_pass {
        "all checks pass\n"
    } else {
        "some checks FAILED\n"
    });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rejected_for_check() {
        assert_eq!(
            run([
                "chern-realize",
                "--format",
                "csv",
                "check",
                "--dim",
                "8",
                "--signature",
                "2",
                "--euler",
                "6"
            ]),
            EXIT_USAGE
        );
    }

    #[test]
    fn enumerate_csv_header() {
        let rec = enumerate_record(8, &BigInt::from(12)).unwrap();
        let csv = to_csv(&rec.rows).unwrap();
        assert_eq!(csv.lines().next(), Some("euler,signature,x,a,b"));
        assert_eq!(csv.lines().nth(1), Some("6,2,2,3,1"));
    }

    #[test]
    fn sweep_is_ordered() {
        let rec = sweep_record(6).unwrap();
        let dims: Vec<_> = rec.rows.iter().map(|r| r.dim.as_str()).collect();
        assert_eq!(dims, ["8", "12", "16", "20", "24"]);
        assert!(sweep_record(1).is_err());
    }
}
