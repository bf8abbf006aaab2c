//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command inside a worker pool of the
//! requested size and writes the result to `out`; diagnostics go to `err`.
//! The returned value is the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or the function is APN / the pair is equivalent |
//! | 1 | audit failure or a disagreement between two checks |
//! | 2 | usage error or invalid parameters |
//! | 3 | negative verdict (not APN, not equivalent) |

mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gf2m::{FieldElement, ModulusTable};

pub use output::{AuditRow, TableRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Workers {
    Auto,
    Fixed(usize),
}

fn parse_workers(s: &str) -> Result<Workers, String> {
    if s == "auto" {
        return Ok(Workers::Auto);
    }
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(Workers::Fixed(n)),
        _ => Err(format!("expected a positive integer or \"auto\", got {s:?}")),
    }
}

fn parse_element(s: &str) -> Result<FieldElement, String> {
    FieldElement::parse_hex(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "taniguchi",
    version,
    about = "Taniguchi APN functions on GF(2^(2m)): counts, checks, equivalence"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    pub format: Format,

    /// Worker threads: a positive integer or "auto".
    #[arg(long, value_parser = parse_workers, default_value = "auto", global = true)]
    pub workers: Workers,

    /// Field modulus override as m=HEX (repeatable).
    #[arg(long = "modulus", value_name = "m=HEX", global = true)]
    pub moduli: Vec<String>,

    /// Seed for randomized choices (audit --k-policy random).
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts of inequivalent Taniguchi APN functions and the lower bound.
    Table {
        /// Values of m: a comma list of numbers and ranges, e.g. 2..20,25,50.
        #[arg(long)]
        m: String,
        /// Add the M, N, b and epsilon columns.
        #[arg(long)]
        full: bool,
    },
    /// Closed-form counts against brute-force oracles for every m up to m-max.
    Audit {
        #[arg(long)]
        m_max: u32,
        #[arg(long, value_enum, default_value = "default")]
        k_policy: KPolicy,
    },
    /// APN verdict from the family criterion, optionally by exhaustive scan.
    CheckApn {
        #[command(subcommand)]
        family: Family,
        /// Also scan all derivatives (needs dimension <= 16).
        #[arg(long, global = true)]
        exhaustive: bool,
    },
    /// The admissible betas for which X^(2^k+1) + X + beta is rootless, with
    /// their Frobenius orbits.
    EnumerateBeta {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Differential spectrum of a family member or a stored truth table.
    Spectrum {
        #[command(subcommand)]
        source: SpectrumSource,
        /// Write the truth table (and PATH.json manifest) of a bivariate function.
        #[arg(long, value_name = "PATH", global = true)]
        save_table: Option<PathBuf>,
    },
    /// Canonical CCZ classes of the APN family members for one m.
    Classes {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Linear-equivalence witness between two members, verified exhaustively.
    Witness {
        /// m,k,alpha,beta (alpha and beta in hex).
        #[arg(long, value_name = "m,k,alpha,beta")]
        from: String,
        /// m,k,alpha,beta; omit with --pott-zhou.
        #[arg(long, value_name = "m,k,alpha,beta", required_unless_present = "pott_zhou")]
        to: Option<String>,
        /// Map an alpha = 0 member to its Pott-Zhou counterpart.
        #[arg(long, conflicts_with = "to")]
        pott_zhou: bool,
        /// Skip the exhaustive verification.
        #[arg(long)]
        no_verify: bool,
    },
    /// Automorphism group orders.
    Aut {
        #[command(flatten)]
        params: TaniguchiArgs,
        /// Cross-check the EL order by enumerating monomial automorphisms.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KPolicy {
    /// k = 1 and the largest k < m/2 coprime to m.
    Default,
    /// Every k in 1..m coprime to m.
    All,
    /// Two k drawn with --seed.
    Random,
}

#[derive(Clone, Debug, Args)]
pub struct TaniguchiArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_parser = parse_element)]
    pub alpha: FieldElement,
    #[arg(long, value_parser = parse_element)]
    pub beta: FieldElement,
}

#[derive(Clone, Debug, Args)]
pub struct PottZhouArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub s: u32,
    #[arg(long, value_parser = parse_element)]
    pub alpha: FieldElement,
}

#[derive(Clone, Debug, Args)]
pub struct GoldArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub i: u32,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Family {
    Taniguchi(TaniguchiArgs),
    PottZhou(PottZhouArgs),
    Gold(GoldArgs),
}

#[derive(Clone, Debug, Subcommand)]
pub enum SpectrumSource {
    Taniguchi(TaniguchiArgs),
    PottZhou(PottZhouArgs),
    Gold(GoldArgs),
    /// A binary truth table with its JSON manifest.
    Table {
        #[arg(long)]
        path: PathBuf,
        /// Defaults to PATH.json.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

/// Settings shared by all commands.
pub struct Context<'a> {
    pub format: Format,
    pub moduli: ModulusTable,
    pub seed: u64,
    pub out: &'a mut (dyn Write + Send),
    pub err: &'a mut (dyn Write + Send),
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotApn(_) => EXIT_NEGATIVE,
        Error::NonIntegralOrbitCount { .. } | Error::Overflow(_) | Error::Io(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut (dyn Write + Send) = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    run_cli(cli, out, err)
}

pub fn run_cli(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32 {
    let mut moduli = ModulusTable::new();
    for spec in &cli.moduli {
        if let Err(e) = moduli.add_spec(spec) {
            let _ = writeln!(err, "error: --modulus {spec}: {e}");
            return EXIT_USAGE;
        }
    }
    for (m, f) in moduli.overrides() {
        let _ = writeln!(
            err,
            "warning: GF(2^{m}) uses modulus {f:#x}; hex field elements are only comparable between runs with the same modulus"
        );
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Workers::Fixed(n) = cli.workers {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {:?} workers: {e}", cli.workers);
            return EXIT_FAILURE;
        }
    };
    let mut ctx = Context {
        format: cli.format,
        moduli,
        seed: cli.seed,
        out,
        err,
    };
    let command = cli.command;
    let result = pool.install(|| commands::dispatch(command, &mut ctx));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args() -> i32 {
    let mut out = std::io::BufWriter::new(std::io::stdout());
    let mut err = std::io::stderr();
    let code = run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}

/// Parses a list such as `2..20,25,50` (ranges inclusive).
pub fn parse_m_list(s: &str) -> Result<Vec<u32>, Error> {
    let bad = || Error::Parse(format!("bad m list {s:?}; expected e.g. 2..20,25"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_lists() {
        assert_eq!(parse_m_list("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_m_list("3").unwrap(), vec![3]);
        assert_eq!(parse_m_list("2..3,25, 50").unwrap(), vec![2, 3, 25, 50]);
        assert_eq!(parse_m_list("4..=5").unwrap(), vec![4, 5]);
        assert!(parse_m_list("5..2").is_err());
        assert!(parse_m_list("x").is_err());
        assert!(parse_m_list("").is_err());
    }

    #[test]
    fn workers_flag() {
        assert_eq!(parse_workers("auto"), Ok(Workers::Auto));
        assert_eq!(parse_workers("3"), Ok(Workers::Fixed(3)));
        assert!(parse_workers("0").is_err());
    }
}
