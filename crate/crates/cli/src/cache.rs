//! Coefficient files: one value per line plus a JSON sidecar.
//!
//! Integers and rationals are stored exactly. Complex values are stored with
//! enough decimal digits to round-trip at the recorded precision.

use anyhow::{bail, Context, Result};
use lzeros::coefficients::{generate, DirichletCoefficients, ExactValues};
use lzeros::{CatalogEntry, Cx};
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

pub const CACHE_ENV: &str = "LZEROS_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Integer,
    Rational,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub family: String,
    pub m: usize,
    pub kind: Kind,
    /// Precision of the stored values; only meaningful for `complex`.
    pub bits: u32,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Default file name for `entry` with `m` coefficients.
pub fn file_name(entry: &CatalogEntry, m: usize) -> String {
    format!("{}-{m}.txt", entry.to_string().replace(':', "_"))
}

/// Digits that make a `bits`-bit float survive a decimal round trip.
fn round_trip_digits(bits: u32) -> usize {
    1 + (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize
}

pub fn write(path: &Path, entry: &CatalogEntry, c: &DirichletCoefficients) -> Result<Sidecar> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    let kind = match &c.exact {
        Some(ExactValues::Integers(v)) => {
            for a in v {
                writeln!(w, "{a}")?;
            }
            Kind::Integer
        }
        Some(ExactValues::Rationals(v)) => {
            for a in v {
                writeln!(w, "{a}")?;
            }
            Kind::Rational
        }
        None => {
            let digits = round_trip_digits(c.prec());
            for a in &c.values {
                writeln!(w, "{} {}", a.re.to_string_radix(10, Some(digits)), a.im.to_string_radix(10, Some(digits)))?;
            }
            Kind::Complex
        }
    };
    w.flush()?;
    let side = Sidecar { family: entry.to_string(), m: c.len(), kind, bits: c.prec() };
    fs::write(sidecar_path(path), serde_json::to_string_pretty(&side)?)?;
    Ok(side)
}

pub fn read(path: &Path, entry: &CatalogEntry, bits: u32) -> Result<(Sidecar, DirichletCoefficients)> {
    let side: Sidecar = serde_json::from_str(&fs::read_to_string(sidecar_path(path))?)
        .with_context(|| format!("reading sidecar of {}", path.display()))?;
    if side.family != entry.to_string() {
        bail!("{} holds {}, not {}", path.display(), side.family, entry);
    }
    let lines: Vec<String> = BufReader::new(fs::File::open(path)?).lines().collect::<std::io::Result<_>>()?;
    if lines.len() != side.m {
        bail!("{} has {} lines, sidecar says {}", path.display(), lines.len(), side.m);
    }
    let fam = entry.0.clone();
    let c = match side.kind {
        Kind::Integer => {
            let v = lines.iter().map(|l| l.trim().parse::<Integer>()).collect::<Result<Vec<_>, _>>()?;
            DirichletCoefficients::from_integers(fam, v, bits)
        }
        Kind::Rational => {
            let v = lines.iter().map(|l| l.trim().parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
            DirichletCoefficients::from_rationals(fam, v, bits)
        }
        Kind::Complex => {
            let mut v = Vec::with_capacity(lines.len());
            for l in &lines {
                let mut it = l.split_whitespace();
                let (Some(re), Some(im)) = (it.next(), it.next()) else {
                    bail!("bad complex line {l:?}");
                };
                let re = Float::with_val(side.bits, Float::parse(re)?);
                let im = Float::with_val(side.bits, Float::parse(im)?);
                v.push(Cx::new(re, im).with_prec(bits));
            }
            let real = v.iter().all(|z| z.im.is_zero());
            let mut c = DirichletCoefficients::from_complex(fam, v);
            c.real = real;
            c
        }
    };
    Ok((side, c))
}

/// Coefficients for `entry`, through the cache directory when one is set.
///
/// Complex values are only reused at the precision they were written with,
/// so cached and freshly generated runs agree bit for bit.
pub fn load(entry: &CatalogEntry, m: usize, bits: u32) -> Result<DirichletCoefficients> {
    let Some(dir) = std::env::var_os(CACHE_ENV) else {
        return Ok(generate(&entry.0, m, bits)?);
    };
    let dir = PathBuf::from(dir);
    let path = dir.join(file_name(entry, m));
    if path.exists() {
        if let Ok((side, c)) = read(&path, entry, bits) {
            if side.kind != Kind::Complex || side.bits == bits {
                return Ok(c);
            }
        }
    }
    let c = generate(&entry.0, m, bits)?;
    fs::create_dir_all(&dir)?;
    write(&path, entry, &c)?;
    Ok(c)
}
