use crate::cache;
use crate::config::{parse_range, Format, RunConfig};
use crate::output::{self, dec, CoeffsRow, CountRow, EvalRow, ExplicitRow, RatioRow, ReportDto, ZeroRow};
use anyhow::{bail, Context, Result};
use lzeros::abel::{error_ratios, Evaluator, DEFAULT_L_TRUNC};
use lzeros::explicit::{emit_comparison, jump_midpoints, logderiv_at_center, PrimeSide};
use lzeros::lfunction::builtin_spec_with;
use lzeros::zeros::{
    count_zeros_rectangle, find_offline_zeros, rh_report, scan_critical_line, ContourConfig, Verdict,
    ZeroRecord, RESIDUAL_LIMIT,
};
use lzeros::{CatalogEntry, Cx, LFunctionSpec, PrecisionContext};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Outcome of a command, mapped to the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// An unresolved zero or a near-miss count.
    Uncertain,
    ResidualTooLarge,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Uncertain => 2,
            Status::ResidualTooLarge => 3,
        }
    }
}

pub struct Env<'w> {
    pub cfg: RunConfig,
    pub out: &'w mut dyn Write,
}

impl Env<'_> {
    fn format(&self, default: Format) -> Format {
        self.cfg.format_or(default)
    }
}

fn spec_for(entry: &CatalogEntry, m: usize, ctx: &PrecisionContext) -> Result<LFunctionSpec> {
    let coeffs = cache::load(entry, m, ctx.bits())?;
    Ok(builtin_spec_with(entry, coeffs, ctx)?)
}

fn zero_status(zs: &[ZeroRecord]) -> Status {
    if zs.iter().any(|z| z.unresolved || z.simple == Some(false)) {
        Status::Uncertain
    } else {
        Status::Ok
    }
}

pub fn coeffs(env: &mut Env, entry: &CatalogEntry, m: usize) -> Result<Status> {
    if m == 0 {
        bail!("M must be positive");
    }
    let ctx = env.cfg.ctx();
    let c = lzeros::coefficients::generate(&entry.0, m, ctx.bits())?;
    let path = match &env.cfg.out {
        Some(p) => p.clone(),
        None => {
            let dir = std::env::var_os(cache::CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir)?;
            dir.join(cache::file_name(entry, m))
        }
    };
    let side = cache::write(&path, entry, &c)?;
    // the table goes to stdout since --out names the data file
    let row = CoeffsRow {
        path: path.display().to_string(),
        family: side.family,
        m: side.m,
        kind: serde_json::to_value(side.kind)?.as_str().unwrap_or_default().to_string(),
    };
    output::write_rows(&mut std::io::stdout(), env.format(Format::Tsv), &[row])?;
    Ok(Status::Ok)
}

pub struct EvalArgs {
    pub t: f64,
    pub sigma: Option<f64>,
    pub every: usize,
    pub sig: usize,
}

pub fn eval(env: &mut Env, entry: &CatalogEntry, a: &EvalArgs) -> Result<Status> {
    let ctx = env.cfg.ctx();
    let cfg = env.cfg.scan_config(entry)?;
    let spec = spec_for(entry, cfg.n, &ctx)?;
    let ev = Evaluator::with_options(&spec, cfg.n, cfg.l, env.cfg.v_for(entry), DEFAULT_L_TRUNC, &ctx)?;
    let r = match a.sigma {
        None => ev.eval_on_line(a.t)?,
        Some(x) => ev.eval(&Cx::from_f64(ctx.bits(), x, a.t))?,
    };
    let sig = a.sig.min(ctx.digits as usize);
    let mut levels: Vec<usize> = (0..=cfg.l).step_by(a.every.max(1)).collect();
    if levels.last() != Some(&cfg.l) {
        levels.push(cfg.l);
    }
    let rows: Vec<EvalRow> = levels
        .iter()
        .map(|&l| {
            let z = r.level(l);
            EvalRow { n: cfg.n, level: l, re: dec(&z.re, sig), im: dec(&z.im, sig) }
        })
        .collect();
    let format = env.format(Format::Tsv);
    output::write_rows(env.out, format, &rows)?;
    Ok(Status::Ok)
}

pub fn scan(env: &mut Env, entry: &CatalogEntry, from: f64, to: f64) -> Result<Status> {
    let ctx = env.cfg.ctx();
    let cfg = env.cfg.scan_config(entry)?;
    let spec = spec_for(entry, cfg.n, &ctx)?;
    let ev = Evaluator::with_options(&spec, cfg.n, cfg.l, env.cfg.v_for(entry), DEFAULT_L_TRUNC, &ctx)?;
    let zs = scan_critical_line(&ev, from, to, &cfg)?;
    let rows: Vec<ZeroRow> = zs.iter().map(ZeroRow::from).collect();
    let format = env.format(Format::Tsv);
    output::write_rows(env.out, format, &rows)?;
    Ok(zero_status(&zs))
}

fn contour_for(entry: &CatalogEntry, delta: Option<f64>, mu: Option<f64>) -> ContourConfig {
    let base = ContourConfig::for_entry(entry);
    ContourConfig::new(delta.unwrap_or(base.delta), mu.unwrap_or(base.mu))
}

fn count_status(r: &lzeros::zeros::RectangleCount) -> Status {
    if r.residual >= RESIDUAL_LIMIT {
        Status::ResidualTooLarge
    } else if r.near_miss {
        Status::Uncertain
    } else {
        Status::Ok
    }
}

pub fn count(env: &mut Env, entry: &CatalogEntry, t: f64, delta: Option<f64>, mu: Option<f64>) -> Result<Status> {
    let ctx = env.cfg.ctx();
    let cfg = env.cfg.scan_config(entry)?;
    let spec = spec_for(entry, cfg.n, &ctx)?;
    let ev = Evaluator::with_options(&spec, cfg.n, cfg.l, env.cfg.v_for(entry), DEFAULT_L_TRUNC, &ctx)?;
    let r = count_zeros_rectangle(&ev, t, &contour_for(entry, delta, mu), &cfg)?;
    let mut rows = vec![CountRow::from(&r)];
    rows.extend(r.retries.iter().map(CountRow::from));
    let format = env.format(Format::Tsv);
    output::write_rows(env.out, format, &rows)?;
    Ok(count_status(&r))
}

pub fn offline(env: &mut Env, entry: &CatalogEntry, re: &str, im: &str) -> Result<Status> {
    let ctx = env.cfg.ctx();
    let cfg = env.cfg.scan_config(entry)?;
    let spec = spec_for(entry, cfg.n, &ctx)?;
    let ev = Evaluator::with_options(&spec, cfg.n, cfg.l, env.cfg.v_for(entry), DEFAULT_L_TRUNC, &ctx)?;
    let zs = find_offline_zeros(&ev, parse_range(re)?, parse_range(im)?, &cfg)?;
    let rows: Vec<ZeroRow> = zs.iter().map(ZeroRow::from).collect();
    let format = env.format(Format::Tsv);
    output::write_rows(env.out, format, &rows)?;
    Ok(zero_status(&zs))
}

pub fn verify(env: &mut Env, entry: &CatalogEntry, t: f64, delta: Option<f64>, mu: Option<f64>) -> Result<Status> {
    let ctx = env.cfg.ctx();
    let cfg = env.cfg.scan_config(entry)?;
    let spec = spec_for(entry, cfg.n, &ctx)?;
    let ev = Evaluator::with_options(&spec, cfg.n, cfg.l, env.cfg.v_for(entry), DEFAULT_L_TRUNC, &ctx)?;
    let report = rh_report(&ev, t, &cfg, &contour_for(entry, delta, mu))?;
    let format = env.format(Format::Tsv);
    output::write_report(env.out, format, &ReportDto::from(&report))?;
    Ok(if report.rectangle.residual >= RESIDUAL_LIMIT {
        Status::ResidualTooLarge
    } else if report.verdict == Verdict::Inconclusive || report.rectangle.near_miss {
        Status::Uncertain
    } else {
        Status::Ok
    })
}

pub struct ExplicitArgs {
    pub from: f64,
    pub to: f64,
    pub zeros: usize,
    pub zeros_file: Option<PathBuf>,
    pub samples: usize,
    pub lder: Option<f64>,
    pub decimals: usize,
}

/// Positive ordinates from a `scan` table (tsv, csv or json) or a two-column
/// `index t` file.
pub fn read_zeros(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("zeros file {}", path.display()))?;
    let mut ts: Vec<f64> = if text.trim_start().starts_with('[') {
        let rows: Vec<serde_json::Value> = serde_json::from_str(&text)?;
        rows.iter().filter_map(|r| r.get("im").or_else(|| r.get("t")).and_then(|v| v.as_f64())).collect()
    } else {
        let first = text.lines().next().unwrap_or_default();
        let delim = if first.contains('\t') { b'\t' } else { b',' };
        let mut rd = csv::ReaderBuilder::new().delimiter(delim).from_reader(text.as_bytes());
        let headers = rd.headers()?.clone();
        let Some(col) = headers.iter().position(|h| h == "im" || h == "t") else {
            bail!("{} has no `im` or `t` column", path.display());
        };
        let mut out = Vec::new();
        for rec in rd.records() {
            out.push(rec?[col].trim().parse::<f64>()?);
        }
        out
    };
    ts.retain(|&t| t > 0.0);
    ts.sort_by(f64::total_cmp);
    Ok(ts)
}

pub fn explicit(env: &mut Env, a: &ExplicitArgs) -> Result<Status> {
    let entry: CatalogEntry = "s8f".parse()?;
    let ctx = env.cfg.ctx();
    let n = env.cfg.n.unwrap_or(10000);
    let l = env.cfg.l.unwrap_or(35);
    let spec = spec_for(&entry, n.max(a.to.ceil() as usize + 1), &ctx)?;
    let mut status = Status::Ok;
    let zeros = match &a.zeros_file {
        Some(p) => read_zeros(p)?,
        None => {
            let cfg = env.cfg.scan_config(&entry)?;
            let scan_spec = spec_for(&entry, cfg.n, &ctx)?;
            let ev = Evaluator::new(&scan_spec, cfg.n, cfg.l, &ctx)?;
            let mut top = 100.0;
            loop {
                let zs = scan_critical_line(&ev, 0.0, top, &cfg)?;
                if zero_status(&zs) != Status::Ok {
                    status = Status::Uncertain;
                }
                if zs.len() >= a.zeros {
                    break zs.iter().map(|z| z.im).collect();
                }
                top += 50.0;
            }
        }
    };
    if zeros.len() < a.zeros {
        bail!("{} zeros requested, {} available", a.zeros, zeros.len());
    }
    let zeros = &zeros[..a.zeros];
    let lder = match a.lder {
        Some(x) => x,
        None => logderiv_at_center(&Evaluator::new(&spec, n, l, &ctx)?, &ctx)?.ratio,
    };
    let prime = PrimeSide::new(&spec.coeffs, a.to)?;
    let rows = emit_comparison(&prime, zeros, lder, a.from, a.to, a.samples)?;
    let fmt = |x: f64| format!("{:.*}", a.decimals, x);
    let out: Vec<ExplicitRow> = rows
        .iter()
        .map(|r| ExplicitRow {
            x: fmt(r.x),
            prime_side: fmt(r.prime_side),
            zero_side: fmt(r.zero_side),
            difference: fmt(r.difference),
        })
        .collect();
    let format = env.format(Format::Csv);
    output::write_rows(env.out, format, &out)?;
    let worst = jump_midpoints(&prime, a.from, a.to)
        .into_iter()
        .map(|x| (x, (prime.at(x) - lzeros::explicit::zero_side(x, zeros, lder).unwrap_or(f64::NAN)).abs()))
        .fold((f64::NAN, 0.0f64), |acc, p| if p.1 > acc.1 { p } else { acc });
    eprintln!("K = {}: max |difference| at prime-power midpoints = {:.6} (x = {})", a.zeros, worst.1, worst.0);
    Ok(status)
}

pub struct RatioArgs {
    pub t_range: String,
    pub levels: Vec<usize>,
    pub ref_n: usize,
    pub ref_l: usize,
}

pub fn error_ratio(env: &mut Env, entry: &CatalogEntry, a: &RatioArgs) -> Result<Status> {
    let ctx = env.cfg.ctx();
    let (lo, hi) = parse_range(&a.t_range)?;
    let n = env.cfg.n.unwrap_or(2000);
    let step = env.cfg.step.unwrap_or(0.1);
    if a.levels.is_empty() || a.levels.iter().any(|&l| l >= n) || a.ref_l >= a.ref_n {
        bail!("levels must be nonempty and below N");
    }
    let mut spec = spec_for(entry, n.max(a.ref_n), &ctx)?;
    spec.v_shift = env.cfg.v_for(entry);
    let ratios = error_ratios(&spec, lo, hi, step, n, &a.levels, a.ref_n, a.ref_l, &ctx)?;
    let rows: Vec<RatioRow> = a.levels.iter().zip(ratios).map(|(&level, ratio)| RatioRow { level, ratio }).collect();
    let format = env.format(Format::Tsv);
    output::write_rows(env.out, format, &rows)?;
    Ok(Status::Ok)
}
