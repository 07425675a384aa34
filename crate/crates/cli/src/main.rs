//! `lzeros`: evaluate L-functions, locate their zeros and check the explicit
//! formula from the command line.
//!
//! Exit codes: 0 success, 1 error, 2 unresolved zero or near-miss count,
//! 3 count residual too large.

mod cache;
mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use commands::{Env, EvalArgs, ExplicitArgs, RatioArgs};
use config::{parse_entry, Format, RunConfig};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "lzeros", version, about = "Zeros of L-functions by repeated Abel summation")]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 64)]
    digits: u32,
    /// Number of Dirichlet coefficients summed.
    #[arg(long = "N", global = true)]
    n_terms: Option<usize>,
    /// Number of Abel summation levels.
    #[arg(long = "l", global = true)]
    levels: Option<usize>,
    /// Shift `a_n -> a_n n^-v` applied before summation.
    #[arg(long = "v", global = true, allow_hyphen_values = true)]
    v: Option<f64>,
    /// Grid step along the critical line.
    #[arg(long, global = true)]
    step: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (stdout when absent). For `coeffs`, the data file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Catalog name plus the Hecke parameters when the name is just `hecke`.
#[derive(Args, Debug)]
struct SpecArg {
    /// s8f, s92g, hplus, hminus, sym3, sym4, artin_s5, hecke:D:N:M or hecke.
    spec: String,
    #[arg(long = "d", allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(long = "n", allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long = "m")]
    m: Option<u8>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write `a_1..a_M` to a coefficient file with a JSON sidecar.
    Coeffs {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(value_name = "M")]
        count: usize,
    },
    /// Per-level values `S_N^(j)` at one point, rotated on the critical line.
    Eval {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Real part; defaults to the centre of the critical strip.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<f64>,
        /// Print every this many levels.
        #[arg(long, default_value_t = 5)]
        every: usize,
        /// Significant digits printed.
        #[arg(long, default_value_t = 30)]
        sig: usize,
    },
    /// Zeros on the critical line between --from and --to.
    Scan {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
    },
    /// Zeros in the rectangle up to height --to by the argument principle.
    Count {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Zeros off the critical line in a box `--re a:b --im c:d`.
    Offline {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        re: String,
        #[arg(long, allow_hyphen_values = true)]
        im: String,
    },
    /// Scan, count and, if needed, search off the line up to --to.
    Verify {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Prime side against zero side of the explicit formula for s8f, as CSV.
    Explicit {
        #[arg(long, default_value_t = 1.1)]
        from: f64,
        #[arg(long, default_value_t = 20.0)]
        to: f64,
        /// Number of zeros in the zero sum.
        #[arg(long, default_value_t = 69)]
        zeros: usize,
        /// Zeros from a `scan` output instead of scanning.
        #[arg(long)]
        zeros_file: Option<PathBuf>,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        /// L'/L at the centre; computed when absent.
        #[arg(long, allow_hyphen_values = true)]
        lder: Option<f64>,
        #[arg(long, default_value_t = 12)]
        decimals: usize,
    },
    /// Max on-parity error against a reference over max off-parity part.
    ErrorRatio {
        #[command(flatten)]
        spec: SpecArg,
        /// Grid `lo:hi` on the critical line.
        #[arg(long)]
        t: String,
        #[arg(long, value_delimiter = ',', required = true)]
        at_levels: Vec<usize>,
        #[arg(long = "ref-N")]
        ref_n: usize,
        #[arg(long = "ref-l")]
        ref_l: usize,
    },
}

fn entry(s: &SpecArg) -> anyhow::Result<lzeros::CatalogEntry> {
    parse_entry(&s.spec, s.d, s.n, s.m)
}

fn run(cli: Cli) -> anyhow::Result<commands::Status> {
    let cfg = RunConfig {
        digits: cli.digits,
        n: cli.n_terms,
        l: cli.levels,
        v: cli.v,
        step: cli.step,
        out: cli.out.clone(),
        format: cli.format,
    };
    cfg.validate()?;
    let mut sink: Box<dyn Write> = match (&cli.cmd, &cfg.out) {
        (Cmd::Coeffs { .. }, _) | (_, None) => Box::new(std::io::stdout().lock()),
        (_, Some(p)) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
    };
    let mut env = Env { cfg, out: &mut *sink };
    let status = match &cli.cmd {
        Cmd::Coeffs { spec, count } => commands::coeffs(&mut env, &entry(spec)?, *count)?,
        Cmd::Eval { spec, t, sigma, every, sig } => {
            commands::eval(&mut env, &entry(spec)?, &EvalArgs { t: *t, sigma: *sigma, every: *every, sig: *sig })?
        }
        Cmd::Scan { spec, from, to } => commands::scan(&mut env, &entry(spec)?, *from, *to)?,
        Cmd::Count { spec, to, delta, mu } => commands::count(&mut env, &entry(spec)?, *to, *delta, *mu)?,
        Cmd::Offline { spec, re, im } => commands::offline(&mut env, &entry(spec)?, re, im)?,
        Cmd::Verify { spec, to, delta, mu } => commands::verify(&mut env, &entry(spec)?, *to, *delta, *mu)?,
        Cmd::Explicit { from, to, zeros, zeros_file, samples, lder, decimals } => commands::explicit(
            &mut env,
            &ExplicitArgs {
                from: *from,
                to: *to,
                zeros: *zeros,
                zeros_file: zeros_file.clone(),
                samples: *samples,
                lder: *lder,
                decimals: *decimals,
            },
        )?,
        Cmd::ErrorRatio { spec, t, at_levels, ref_n, ref_l } => commands::error_ratio(
            &mut env,
            &entry(spec)?,
            &RatioArgs { t_range: t.clone(), levels: at_levels.clone(), ref_n: *ref_n, ref_l: *ref_l },
        )?,
    };
    sink.flush()?;
    Ok(status)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(s) => ExitCode::from(s.code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
