//! `qmul` command-line driver.
//!
//! Exit codes: 0 ok, 1 parse or usage error, 2 incompatible seeds,
//! 3 functional equation violated, 4 some nonzero term is not a product of
//! quantum integers.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analyzer::{classify_solution, AnalyzeOptions};
use crate::arith::MultFn;
use crate::error::Error;
use crate::poly::{quantum_integer, Poly};
use crate::solution::{check_compatibility, Compatibility, SeedFile, Solution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCOMPATIBLE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_NOT_CYCLOTOMIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qmul", version, about = "Solutions of quantum-multiplication functional equations")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the quantum integer [n]_q.
    Qi {
        #[arg(value_parser = positive)]
        n: u64,
    },
    /// Build a solution descriptor from a seed file.
    Build {
        seed_file: PathBuf,
        /// Write the descriptor here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 20, value_parser = positive)]
        precompute: u64,
    },
    /// Check f_mn = f_m alpha_u(m)(f_n) on 1..=M x 1..=N.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long = "M", default_value_t = 20, value_parser = positive)]
        max_m: u64,
        #[arg(long = "N", default_value_t = 20, value_parser = positive)]
        max_n: u64,
    },
    /// Tabulate n, u(n), f_n and support membership.
    Table {
        #[command(flatten)]
        source: Source,
        #[arg(long = "max", default_value_t = 10, value_parser = positive)]
        max_n: u64,
    },
    /// Decompose each nonzero f_n into quantum integers.
    ///
    /// Without --bound, the cyclotomic search for a polynomial of degree D
    /// covers every index d with phi(d) <= D, which is exhaustive.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[arg(long = "up-to", default_value_t = 10, value_parser = positive)]
        up_to: u64,
        #[arg(long, value_parser = positive)]
        bound: Option<u64>,
        /// Count integer content other than +1/-1 as a failure.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Args)]
struct Source {
    /// Seed file or solution descriptor (JSON).
    #[arg(conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// Built-in family instead of a seed file.
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
    /// Associated function for --builtin: epsilon, one, power:K, or a JSON file.
    #[arg(long, default_value = "epsilon", requires = "builtin")]
    u: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Builtin {
    /// f_n = [u(n)]_q
    Quantum,
    /// f_n = q^(u(n) - 1)
    Power,
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be a positive integer".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Parse `epsilon`, `one`, `power:K`, inline JSON or a path to a JSON file.
pub fn parse_mult_fn(arg: &str) -> Result<MultFn, String> {
    let arg = arg.trim();
    match arg {
        "epsilon" => return Ok(MultFn::Identity),
        "one" => return Ok(MultFn::One),
        _ => {}
    }
    if let Some(k) = arg.strip_prefix("power:") {
        let k: u32 = k.parse().map_err(|_| format!("invalid power {k:?}"))?;
        return MultFn::power(k).map_err(|e| e.to_string());
    }
    let text = if arg.starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("{arg}: {e}"))
}

enum Failure {
    Usage(String),
    Incompatible(u64, u64, Poly, Poly),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Incompatible { p1, p2, lhs, rhs } => {
                // Only reached when the pre-check was skipped; keep the pair.
                Failure::Usage(format!("incompatible seeds at ({p1}, {p2}): {lhs} != {rhs}"))
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read_seed_file(path: &Path) -> Result<SeedFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    SeedFile::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn precheck(file: &SeedFile) -> Result<(), Failure> {
    if let Some((&p, _)) = file.seeds.iter().find(|(_, h)| h.is_zero()) {
        return Err(Error::ZeroSeed(p).into());
    }
    if let Some(&p) = file.seeds.keys().find(|p| !crate::arith::is_prime(**p)) {
        return Err(Error::NotPrime(p).into());
    }
    match check_compatibility(&file.alpha, &file.u, &file.seeds)? {
        Compatibility::Compatible => Ok(()),
        Compatibility::Incompatible { p1, p2, lhs, rhs } => {
            Err(Failure::Incompatible(p1, p2, lhs, rhs))
        }
    }
}

fn load(source: &Source) -> Result<Solution, Failure> {
    match (&source.file, source.builtin) {
        (Some(path), _) => {
            let file = read_seed_file(path)?;
            precheck(&file)?;
            Ok(file.to_solution()?)
        }
        (None, Some(kind)) => {
            let u = parse_mult_fn(&source.u).map_err(Failure::Usage)?;
            Ok(match kind {
                Builtin::Quantum => Solution::quantum(u),
                Builtin::Power => Solution::power(u),
            })
        }
        (None, None) => Err(Failure::Usage(
            "expected a seed file or --builtin quantum|power".into(),
        )),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output types always serialize")
}

#[derive(Serialize)]
struct IncompatibleReport<'a> {
    error: &'static str,
    p1: u64,
    p2: u64,
    lhs: &'a Poly,
    rhs: &'a Poly,
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    u: Option<u64>,
    f: Option<Poly>,
    support: Option<bool>,
}

fn run_command(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let json = cli.json;
    let io = |e: std::io::Error| Failure::Usage(e.to_string());
    match &cli.command {
        Command::Qi { n } => {
            let f = quantum_integer(*n)?;
            if json {
                writeln!(out, "{}", to_json(&f)).map_err(io)?;
            } else {
                writeln!(out, "{f}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Build {
            seed_file,
            out: dest,
            precompute,
        } => {
            let file = read_seed_file(seed_file)?;
            precheck(&file)?;
            let desc = file.descriptor(*precompute)?;
            let body = desc.to_json_pretty() + "\n";
            match dest {
                Some(path) => std::fs::write(path, body)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => out.write_all(body.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            source,
            max_m,
            max_n,
        } => {
            let sol = load(source)?;
            let report = sol.verify(*max_m, *max_n)?;
            if json {
                writeln!(out, "{}", to_json(&report)).map_err(io)?;
            } else {
                for v in &report.violations {
                    writeln!(out, "violation at (m, n) = ({}, {})", v.m, v.n).map_err(io)?;
                    writeln!(out, "  lhs: {}", v.lhs).map_err(io)?;
                    writeln!(out, "  rhs: {}", v.rhs).map_err(io)?;
                }
                let skipped = if report.skipped > 0 {
                    format!(", {} skipped (u undefined)", report.skipped)
                } else {
                    String::new()
                };
                writeln!(
                    out,
                    "{}: {} identities checked, {} violations{skipped}",
                    if report.is_verified() { "verified" } else { "FAILED" },
                    report.checked,
                    report.violations.len()
                )
                .map_err(io)?;
            }
            Ok(if report.is_verified() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Table { source, max_n } => {
            let sol = load(source)?;
            let primes = sol.support_primes();
            let mut rows = Vec::new();
            for n in 1..=*max_n {
                let u = match sol.u().eval(n) {
                    Ok(v) => Some(v),
                    Err(Error::MissingPrime(_)) => None,
                    Err(e) => return Err(e.into()),
                };
                let f = match sol.eval(n) {
                    Ok(f) => Some(f),
                    Err(Error::MissingPrime(_)) => None,
                    Err(e) => return Err(e.into()),
                };
                let support = match (&f, &primes) {
                    (Some(f), _) => Some(!f.is_zero()),
                    (None, Some(p)) => Some(crate::solution::support_contains(p, n)),
                    (None, None) => None,
                };
                rows.push(TableRow { n, u, f, support });
            }
            if json {
                writeln!(out, "{}", to_json(&rows)).map_err(io)?;
            } else {
                writeln!(out, "n,u(n),f_n,support").map_err(io)?;
                for r in rows {
                    let u = r.u.map_or("-".to_string(), |v| v.to_string());
                    let f = r.f.map_or("-".to_string(), |f| f.to_string());
                    let s = match r.support {
                        Some(true) => "yes",
                        Some(false) => "no",
                        None => "-",
                    };
                    writeln!(out, "{},{u},\"{f}\",{s}", r.n).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Analyze {
            source,
            up_to,
            bound,
            strict,
        } => {
            let sol = load(source)?;
            let opts = AnalyzeOptions {
                bound: *bound,
                strict: *strict,
            };
            let rows = classify_solution(&sol, *up_to, &opts)?;
            let failures = rows.iter().filter(|r| !r.success).count();
            if json {
                writeln!(out, "{}", to_json(&rows)).map_err(io)?;
            } else {
                for r in &rows {
                    if r.success {
                        writeln!(out, "{}: {}", r.n, r.describe()).map_err(io)?;
                    } else {
                        writeln!(
                            out,
                            "{}: not a product of quantum integers (unit {}, q^{}, cyclotomic part {}, remainder {})",
                            r.n,
                            r.unit,
                            r.q_power,
                            r.describe_cyclo(),
                            r.remainder
                        )
                        .map_err(io)?;
                    }
                }
                if failures == 0 {
                    writeln!(out, "all {} nonzero terms decompose", rows.len()).map_err(io)?;
                } else {
                    writeln!(
                        out,
                        "{failures} of {} nonzero terms do not decompose",
                        rows.len()
                    )
                    .map_err(io)?;
                }
            }
            Ok(if failures == 0 { EXIT_OK } else { EXIT_NOT_CYCLOTOMIC })
        }
    }
}

/// Run the CLI on `args` (including the program name) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match run_command(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Incompatible(p1, p2, lhs, rhs)) => {
            if cli.json {
                let report = IncompatibleReport {
                    error: "incompatible",
                    p1,
                    p2,
                    lhs: &lhs,
                    rhs: &rhs,
                };
                let _ = writeln!(out, "{}", to_json(&report));
            } else {
                let _ = writeln!(out, "incompatible seeds at pair ({p1}, {p2})");
                let _ = writeln!(out, "  h_{p1} * alpha_u({p1})(h_{p2}) = {lhs}");
                let _ = writeln!(out, "  h_{p2} * alpha_u({p2})(h_{p1}) = {rhs}");
            }
            EXIT_INCOMPATIBLE
        }
    }
}
