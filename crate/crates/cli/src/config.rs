use anyhow::{bail, Result};
use clap::ValueEnum;
use lzeros::zeros::ScanConfig;
use lzeros::{CatalogEntry, PrecisionContext};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub digits: u32,
    pub n: Option<usize>,
    pub l: Option<usize>,
    pub v: Option<f64>,
    pub step: Option<f64>,
    pub out: Option<PathBuf>,
    /// `None` picks the command's own default.
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.digits < 20 {
            bail!("--digits must be at least 20, got {}", self.digits);
        }
        if let Some(n) = self.n {
            if n == 0 {
                bail!("--N must be positive");
            }
            if let Some(l) = self.l {
                if l >= n {
                    bail!("--l = {l} needs --N > {l}, got {n}");
                }
            }
        }
        if let Some(v) = self.v {
            if !v.is_finite() {
                bail!("--v must be finite");
            }
        }
        if let Some(s) = self.step {
            if !(s > 0.0 && s.is_finite()) {
                bail!("--step must be positive, got {s}");
            }
        }
        Ok(())
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn ctx(&self) -> PrecisionContext {
        PrecisionContext::new(self.digits)
    }

    /// Family defaults overridden by the command line.
    pub fn scan_config(&self, entry: &CatalogEntry) -> Result<ScanConfig> {
        let mut cfg = ScanConfig::for_entry(entry);
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if let Some(l) = self.l {
            cfg.l = l;
        }
        if let Some(s) = self.step {
            cfg.step = s;
        }
        if cfg.l >= cfg.n {
            bail!("l = {} needs N > {}, got {}", cfg.l, cfg.l, cfg.n);
        }
        Ok(cfg)
    }

    pub fn v_for(&self, entry: &CatalogEntry) -> f64 {
        self.v.unwrap_or_else(|| entry.default_v())
    }
}

/// `a:b` as a pair of floats.
pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let Some((a, b)) = s.split_once(':') else {
        bail!("expected lo:hi, got {s:?}");
    };
    let (a, b): (f64, f64) = (a.trim().parse()?, b.trim().parse()?);
    if !(b > a) {
        bail!("empty range {s:?}");
    }
    Ok((a, b))
}

/// Catalog entry from a name, with `hecke` completed by `--d/--n/--m`.
pub fn parse_entry(name: &str, d: Option<i64>, n: Option<i64>, m: Option<u8>) -> Result<CatalogEntry> {
    if name.eq_ignore_ascii_case("hecke") {
        let (Some(d), Some(n)) = (d, n) else {
            bail!("hecke needs --d and --n (and optionally --m)");
        };
        return Ok(format!("hecke:{d}:{n}:{}", m.unwrap_or(0)).parse()?);
    }
    if d.is_some() || n.is_some() || m.is_some() {
        bail!("--d/--n/--m only apply to hecke");
    }
    Ok(name.parse()?)
}
