//! The `seqcong` command line.
//!
//! Exit codes: 0 when everything passes, 1 when a check or comparison
//! fails, 2 for usage errors (bad arguments, unsupported kernels, budgets,
//! unreadable input).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::digits::decimal_to_digits;
use crate::error::{Error, Result};
use crate::exact::SequenceId;
use crate::lucas::Residue;
use crate::residues;
use crate::verify::{self, ConjectureId, IdentityBounds, Report};

#[derive(Debug, Parser)]
#[command(name = "seqcong", version, about = "Exact values and digit-based congruences of combinatorial sequences")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct SeqParams {
    /// Exponent r of a_rs.
    #[arg(long)]
    r: Option<u32>,
    /// Exponent s of a_rs.
    #[arg(long)]
    s: Option<u32>,
    /// Prime of the gould sequence.
    #[arg(long)]
    p: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Summary,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exact value of a sequence term.
    Eval {
        seq: String,
        n: String,
        #[command(flatten)]
        params: SeqParams,
    },
    /// Print a term modulo m, from the digits of n (default) or exactly.
    Residue {
        seq: String,
        /// Decimal index; omit when using --digits-file.
        n: Option<String>,
        /// File holding the decimal digits of n.
        #[arg(long)]
        digits_file: Option<PathBuf>,
        #[arg(long = "mod")]
        modulus: u64,
        /// Reduce the exact value instead of using a digit kernel.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        params: SeqParams,
    },
    /// Run a theorem check, `identities`, `orbits` or `all`.
    Verify {
        check: String,
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Summary)]
        format: Format,
    },
    /// Scan a conjecture against exact values.
    Scan {
        conjecture: String,
        #[arg(long, default_value_t = 1000)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Summary)]
        format: Format,
    },
    /// Compare the zero blocks of Catalan numbers mod p with the block formula.
    Blocks {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 12)]
        k_max: u64,
        #[arg(long, default_value_t = 50_000)]
        scan_limit: u64,
        #[arg(long, value_enum, default_value_t = Format::Summary)]
        format: Format,
    },
    /// Compare a b-file ("index value" lines) with exact values.
    Bfile {
        seq: String,
        path: PathBuf,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Index of the file's first term; defaults to the sequence's start.
        #[arg(long)]
        offset: Option<i64>,
        #[command(flatten)]
        params: SeqParams,
    },
}

/// A parsed b-file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub entries: Vec<(i64, BigInt)>,
}

impl BFile {
    /// Parses "index value" lines, skipping blank lines and `#` comments.
    pub fn parse(text: &str) -> Result<BFile> {
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let mut parts = line.split_whitespace();
            let (Some(idx), Some(val)) = (parts.next(), parts.next()) else {
                return Err(err(format!("expected `index value`, got `{line}`")));
            };
            let idx: i64 = idx.parse().map_err(|_| err(format!("bad index `{idx}`")))?;
            let val: BigInt = val.parse().map_err(|_| err(format!("bad value `{val}`")))?;
            if let Some(&(prev, _)) = entries.last() {
                if idx <= prev {
                    return Err(err(format!("index {idx} does not increase (previous {prev})")));
                }
            }
            entries.push((idx, val));
        }
        Ok(BFile { entries })
    }
}

fn sequence(name: &str, params: &SeqParams) -> Result<SequenceId> {
    name.parse::<SequenceId>()?.with_params(params.r, params.s, params.p)
}

fn index(n: &str) -> Result<u64> {
    let t = n.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidNumber(t.to_string()));
    }
    // anything too long for u64 is far beyond every budget
    t.parse::<u64>().or(Ok(u64::MAX))
}

fn emit(reports: &[Report], format: Format, out: &mut dyn Write) -> std::io::Result<bool> {
    for r in reports {
        let text = match format {
            Format::Json => r.to_json_lines(),
            Format::Tsv => r.to_tsv(),
            Format::Summary => r.to_summary(),
        };
        out.write_all(text.as_bytes())?;
    }
    Ok(reports.iter().all(Report::passed))
}

enum Outcome {
    Pass,
    Fail,
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    let io = |e: std::io::Error| Error::Inconsistency(format!("write failed: {e}"));
    match cli.command {
        Command::Eval { seq, n, params } => {
            let seq = sequence(&seq, &params)?;
            let value = seq.value(index(&n)?)?;
            writeln!(out, "{value}").map_err(io)?;
            Ok(Outcome::Pass)
        }
        Command::Residue { seq, n, digits_file, modulus, exact, params } => {
            let seq = sequence(&seq, &params)?;
            let text = match (n, digits_file) {
                (Some(n), None) => n,
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .map_err(|e| Error::InvalidNumber(format!("{}: {e}", path.display())))?,
                _ => return Err(Error::UnsupportedParameters("give exactly one of N or --digits-file".into())),
            };
            let residue = if exact {
                Residue::of_signed(&seq.value(index(&text)?)?, modulus)?
            } else {
                let base = residues::kernel_base(seq, modulus)?;
                let digits = decimal_to_digits(text.trim(), base)?;
                residues::fast_residue(seq, &digits, modulus)?
            };
            writeln!(out, "{residue}").map_err(io)?;
            Ok(Outcome::Pass)
        }
        Command::Verify { check, max, jobs, format } => {
            let started = Instant::now();
            let reports = match check.as_str() {
                "all" => verify::check_all(max.unwrap_or(2000), jobs)?,
                "identities" => {
                    let mut bounds = IdentityBounds::default();
                    if let Some(m) = max {
                        bounds.exact = m;
                        bounds.parity = m;
                    }
                    verify::check_identities(bounds)
                }
                "orbits" => vec![verify::check_orbits(max.unwrap_or(11))?],
                id => vec![verify::check_theorem(id, max.unwrap_or(2000), jobs)?],
            };
            let ok = emit(&reports, format, out).map_err(io)?;
            if format == Format::Summary {
                writeln!(err, "{} report(s) in {:.2?}", reports.len(), started.elapsed()).map_err(io)?;
            }
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Scan { conjecture, max, format } => {
            let report = verify::scan_conjecture(conjecture.parse::<ConjectureId>()?, max)?;
            if let Some(f) = report.first_failure() {
                writeln!(err, "counterexample at n={}: expected {}, got {}", f.n, f.expected, f.actual).map_err(io)?;
            }
            let ok = emit(std::slice::from_ref(&report), format, out).map_err(io)?;
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Blocks { p, k_max, scan_limit, format } => {
            let report = verify::check_blocks(p, k_max, scan_limit)?;
            let ok = emit(std::slice::from_ref(&report), format, out).map_err(io)?;
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Bfile { seq, path, modulus, offset, params } => {
            let seq = sequence(&seq, &params)?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
            let bfile = BFile::parse(&text)?;
            if let Some(m) = modulus {
                if m < 2 {
                    return Err(Error::InvalidModulus(m));
                }
            }
            let start = seq.start() as i64;
            let offset = offset.unwrap_or(start);
            let in_range: Vec<(i64, u64, &BigInt)> = bfile
                .entries
                .iter()
                .filter_map(|(i, v)| {
                    let n = i - offset + start;
                    (n >= start && n as u64 <= seq.budget()).then_some((*i, n as u64, v))
                })
                .collect();
            if in_range.is_empty() {
                writeln!(err, "warning: 0 entries compared").map_err(io)?;
                writeln!(out, "0 entries compared").map_err(io)?;
                return Ok(Outcome::Pass);
            }
            let n_max = in_range.iter().map(|e| e.1).max().expect("nonempty");
            let table = seq.table(n_max)?;
            for (i, n, file_value) in &in_range {
                let oracle = &table[(*n - seq.start()) as usize];
                let (expected, found) = match modulus {
                    Some(m) => (
                        Residue::of_signed(oracle, m)?.to_string(),
                        Residue::of_signed(file_value, m)?.to_string(),
                    ),
                    None => (oracle.to_string(), file_value.to_string()),
                };
                if expected != found {
                    writeln!(out, "mismatch at index {i} (n={n}): expected {expected}, file has {found}").map_err(io)?;
                    return Ok(Outcome::Fail);
                }
            }
            writeln!(out, "{} entries compared", in_range.len()).map_err(io)?;
            Ok(Outcome::Pass)
        }
    }
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli, out, err) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["seqcong"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(call(&["eval", "catalan", "10"]), (0, "16796\n".into(), String::new()));
        assert_eq!(call(&["eval", "motzkin", "3"]).1, "4\n");
        assert_eq!(call(&["eval", "com", "2"]).1, "-2\n");
        assert_eq!(call(&["eval", "a_rs", "2", "--r", "2", "--s", "1"]).1, "19\n");
        assert_eq!(call(&["eval", "gould", "4", "--p", "2"]).1, "2\n");
        let (code, _, err) = call(&["eval", "com", "100000"]);
        assert_eq!(code, 2);
        assert!(err.contains("budget"));
        assert_eq!(call(&["eval", "nope", "1"]).0, 2);
        assert_eq!(call(&["eval", "catalan", "12x"]).0, 2);
    }

    #[test]
    fn residue_examples() {
        assert_eq!(call(&["residue", "motzkin", "10", "--mod", "2"]).1, "0\n");
        assert_eq!(call(&["residue", "central_binom", "7", "--mod", "5"]).1, "2\n");
        assert_eq!(call(&["residue", "motzkin", "10", "--mod", "2", "--exact"]).1, "0\n");
        assert_eq!(call(&["residue", "com", "4", "--mod", "3", "--exact"]).1, "2\n");
        let (code, _, err) = call(&["residue", "motzkin", "10", "--mod", "5"]);
        assert_eq!(code, 2);
        assert!(err.contains("supported"));
        assert_eq!(call(&["residue", "motzkin", "--mod", "3"]).0, 2);
    }

    #[test]
    fn residue_from_digits_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("n.txt");
        let n = format!("1{}", "0".repeat(999));
        std::fs::write(&path, format!("{n}\n")).unwrap();
        let (code, out, _) = call(&["residue", "catalan", "--digits-file", path.to_str().unwrap(), "--mod", "3"]);
        assert_eq!(code, 0);
        let digits = decimal_to_digits(&n, 3).unwrap();
        assert_eq!(out.trim(), residues::catalan_mod3(&digits).unwrap().to_string());
    }

    #[test]
    fn verify_and_scan_exit_codes() {
        assert_eq!(call(&["verify", "motzkin_parity", "--max", "500"]).0, 0);
        assert_eq!(call(&["verify", "bogus_id"]).0, 2);
        let (code, out, _) = call(&["verify", "catalan_mod3", "--max", "50", "--format", "json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"status\":\"pass\""));
        assert_eq!(call(&["verify", "orbits", "--max", "6"]).0, 0);
        assert_eq!(call(&["scan", "amdeberhan_mod4", "--max", "300"]).0, 0);
        assert_eq!(call(&["scan", "nothing"]).0, 2);
        assert_eq!(call(&["blocks", "--p", "3", "--k-max", "3", "--scan-limit", "200"]).0, 0);
        assert_eq!(call(&["blocks", "--p", "3", "--k-max", "6", "--scan-limit", "60"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&[]).0, 2);
    }

    #[test]
    fn bfile_parsing() {
        let b = BFile::parse("# comment\n\n0 1\n1 1\n2 2\n").unwrap();
        assert_eq!(b.entries.len(), 3);
        assert!(matches!(BFile::parse("0 1\n0 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(BFile::parse("0 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(BFile::parse("5\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn bfile_comparisons() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("good.txt");
        std::fs::write(&good, "0 1\n1 1\n2 2\n3 5\n4 14\n5 42\n").unwrap();
        assert_eq!(call(&["bfile", "catalan", good.to_str().unwrap()]).0, 0);
        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "0 1\n1 1\n2 2\n3 6\n4 14\n").unwrap();
        let (code, out, _) = call(&["bfile", "catalan", bad.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(out.contains("index 3"));
        let empty = dir.path().join("empty.txt");
        std::fs::write(&empty, "").unwrap();
        let (code, out, err) = call(&["bfile", "riordan", empty.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("0 entries compared"));
        assert!(err.contains("warning"));
        let shifted = dir.path().join("shifted.txt");
        std::fs::write(&shifted, "0 1\n1 4\n2 66\n").unwrap();
        assert_eq!(call(&["bfile", "eulerian_central", shifted.to_str().unwrap(), "--offset", "0"]).0, 0);
        let mod3 = dir.path().join("mod3.txt");
        std::fs::write(&mod3, "0 1\n1 1\n2 2\n3 2\n4 2\n").unwrap();
        assert_eq!(call(&["bfile", "catalan", mod3.to_str().unwrap(), "--mod", "3"]).0, 0);
        let garbage = dir.path().join("garbage.txt");
        std::fs::write(&garbage, "0 1\nzzz\n").unwrap();
        assert_eq!(call(&["bfile", "catalan", garbage.to_str().unwrap()]).0, 2);
    }
}
