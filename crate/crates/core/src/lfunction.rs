//! Functional-equation data and the built-in catalog.
//!
//! A spec describes `R(s) = exp(s log_scale) prod Gamma(b_i s + c_i) L(s)`
//! with `R(k - conj s) = kappa conj R(s)`.

use crate::coefficients::{self, different_character_value, DirichletCoefficients, Family, HeckeCharParams};
use crate::error::{Error, Result};
use crate::mp::{pi, Cx, PrecisionContext};
use rug::{Float, Rational};
use std::fmt;
use std::str::FromStr;

/// Which component of `e^(i theta) L` is real on the critical line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    RealOnLine,
    ImaginaryOnLine,
}

#[derive(Clone, Debug)]
pub struct GammaFactor {
    pub b: Float,
    pub c: Cx,
}

#[derive(Clone, Debug)]
pub struct GammaFactorData {
    /// `log N` for the prefactor `N^s`.
    pub log_scale: Float,
    pub factors: Vec<GammaFactor>,
}

#[derive(Clone, Debug)]
pub struct LFunctionSpec {
    pub name: String,
    pub gamma: GammaFactorData,
    pub k: Rational,
    pub kappa: Cx,
    /// `kappa1^2 kappa = 1`.
    pub kappa1: Cx,
    pub parity: Parity,
    pub coeffs: DirichletCoefficients,
    pub v_shift: f64,
    pub sigma_abs: f64,
}

impl LFunctionSpec {
    pub fn prec(&self) -> u32 {
        self.gamma.log_scale.prec()
    }

    pub fn k_f64(&self) -> f64 {
        self.k.to_f64()
    }

    /// Real part of the critical line.
    pub fn center(&self) -> Float {
        Float::with_val(self.prec(), &self.k) / 2u32
    }

    /// `k/2 + i t`
    pub fn on_line(&self, t: &Float) -> Cx {
        Cx::new(self.center(), Float::with_val(self.prec(), t))
    }

    /// Constant added to the phase so that `e^(i theta) R / |gamma part|`
    /// lands on the real or imaginary axis.
    pub fn phase_offset(&self) -> Float {
        let a = self.kappa1.arg();
        match self.parity {
            Parity::RealOnLine => a,
            Parity::ImaginaryOnLine => a - pi(self.prec()) / 2u32,
        }
    }

    /// The sign of the functional equation forces `L(k/2) = 0`.
    pub fn forced_central_zero(&self) -> bool {
        let minus_one = Cx::from_f64(self.prec(), -1.0, 0.0);
        self.coeffs.real && crate::mp::dist(&self.kappa, &minus_one) < 1e-20
    }

    /// Checks `|kappa| = 1`, `kappa1^2 kappa = 1` and that no gamma factor
    /// has a pole or zero right of the critical line.
    pub fn validate(&self) -> Result<()> {
        let tol = 1e-20;
        if (self.kappa.abs().to_f64() - 1.0).abs() > tol {
            return Err(Error::InvalidArgument(format!("|kappa| != 1 for {}", self.name)));
        }
        let prod = self.kappa1.sqr().mul(&self.kappa);
        if crate::mp::dist(&prod, &Cx::one(self.prec())) > tol {
            return Err(Error::InvalidArgument(format!("kappa1^2 kappa != 1 for {}", self.name)));
        }
        let half_k = self.k_f64() / 2.0;
        for g in &self.gamma.factors {
            if g.b.to_f64() <= 0.0 || g.c.re.to_f64() <= -g.b.to_f64() * half_k {
                return Err(Error::InvalidArgument(format!("gamma factor condition fails for {}", self.name)));
            }
        }
        Ok(())
    }
}

/// Catalog names, e.g. `s8f` or `hecke:2:1:0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CatalogEntry(pub Family);

impl FromStr for CatalogEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let fam = match lower.as_str() {
            "s8f" | "f" => Family::CuspS8,
            "s92g" | "g" => Family::CuspS92,
            "sym3" => Family::Sym3Delta,
            "sym4" => Family::Sym4Delta,
            "artin_s5" | "artin" => Family::ArtinS5,
            "hplus" => Family::KohnenHplus,
            "hminus" => Family::KohnenHminus,
            other if other.starts_with("hecke") => {
                let rest = other.trim_start_matches("hecke");
                let nums: Vec<&str> = rest
                    .split(|c: char| c == ':' || c == ',' || c == '(' || c == ')')
                    .filter(|x| !x.is_empty())
                    .collect();
                let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::UnknownSpec(s.to_string()));
                let (d, n, m) = match nums.as_slice() {
                    [d, n] => (parse(d)?, parse(n)?, 0),
                    [d, n, m] => (parse(d)?, parse(n)?, parse(m)?),
                    _ => return Err(Error::UnknownSpec(s.to_string())),
                };
                if !(0..=1).contains(&m) {
                    return Err(Error::InvalidArgument(format!("parity bit m = {m}")));
                }
                Family::HeckeChi { d, n, m: m as u8 }
            }
            _ => return Err(Error::UnknownSpec(s.to_string())),
        };
        Ok(CatalogEntry(fam))
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Family::HeckeChi { d, n, m } => write!(f, "hecke:{d}:{n}:{m}"),
            other => write!(f, "{other}"),
        }
    }
}

impl CatalogEntry {
    /// Default Dirichlet shift `v` for the family.
    pub fn default_v(&self) -> f64 {
        match self.0 {
            Family::Sym3Delta => 8.0,
            Family::Sym4Delta => 12.0,
            _ => 0.0,
        }
    }
}

fn factor(prec: u32, b: (i32, i32), c_re: (i32, i32)) -> GammaFactor {
    GammaFactor {
        b: Float::with_val(prec, Rational::from(b)),
        c: Cx::from_real(Float::with_val(prec, Rational::from(c_re))),
    }
}

/// Build a catalog spec with `m` coefficients at the context precision.
pub fn builtin_spec(entry: &CatalogEntry, m: usize, ctx: &PrecisionContext) -> Result<LFunctionSpec> {
    let coeffs = coefficients::generate(&entry.0, m, ctx.bits())?;
    builtin_spec_with(entry, coeffs, ctx)
}

/// Same as [`builtin_spec`] with coefficients supplied by the caller.
pub fn builtin_spec_with(entry: &CatalogEntry, coeffs: DirichletCoefficients, ctx: &PrecisionContext) -> Result<LFunctionSpec> {
    let prec = ctx.bits();
    let f = |x: u32| Float::with_val(prec, x);
    let ln2 = f(2).ln();
    let ln_pi = pi(prec).ln();
    let ln_2pi = (pi(prec) * 2u32).ln();
    let one = Cx::one(prec);
    let i = Cx::from_f64(prec, 0.0, 1.0);
    let gamma_s = || factor(prec, (1, 1), (0, 1));
    let real_spec = |log_scale: Float, factors: Vec<GammaFactor>, k: Rational, minus: bool| {
        let (kappa, kappa1, parity) = if minus {
            (one.neg(), i.clone(), Parity::ImaginaryOnLine)
        } else {
            (one.clone(), one.clone(), Parity::RealOnLine)
        };
        (GammaFactorData { log_scale, factors }, k, kappa, kappa1, parity)
    };
    let (gamma, k, kappa, kappa1, parity) = match &entry.0 {
        Family::CuspS8 => real_spec(ln2.clone() / 2u32 - &ln_2pi, vec![gamma_s()], Rational::from(8), false),
        Family::CuspS92 => real_spec(ln2.clone() - &ln_2pi, vec![gamma_s()], Rational::from((9, 2)), false),
        Family::KohnenHplus => real_spec(ln2.clone() - &ln_2pi, vec![gamma_s()], Rational::from((13, 2)), false),
        Family::KohnenHminus => real_spec(ln2.clone() - &ln_2pi, vec![gamma_s()], Rational::from((13, 2)), true),
        Family::Sym3Delta => real_spec(
            Float::with_val(prec, -2 * ln_2pi.clone()),
            vec![gamma_s(), factor(prec, (1, 1), (-11, 1))],
            Rational::from(34),
            true,
        ),
        Family::Sym4Delta => real_spec(
            -(ln_pi.clone() / 2u32) - Float::with_val(prec, 2 * &ln_2pi),
            vec![gamma_s(), factor(prec, (1, 1), (-11, 1)), factor(prec, (1, 2), (-11, 1))],
            Rational::from(45),
            false,
        ),
        Family::ArtinS5 => real_spec(
            f(19 * 151).ln() / 2u32 - Float::with_val(prec, 2 * &ln_pi),
            vec![factor(prec, (1, 2), (0, 1)), factor(prec, (1, 2), (0, 1)), factor(prec, (1, 2), (1, 2)), factor(prec, (1, 2), (1, 2))],
            Rational::from(1),
            false,
        ),
        Family::HeckeChi { d, n, m } => {
            let params = HeckeCharParams::new(*d, *n, *m, prec)?;
            let disc = params.field.disc;
            let v1 = params.v1.clone();
            let half = Float::with_val(prec, 0.5);
            let log_scale = f(disc as u32).ln() / 2u32 - &ln_pi;
            let factors = vec![
                GammaFactor {
                    b: half.clone(),
                    c: Cx::new(Float::with_val(prec, *m) / 2u32, v1.clone() / 2u32),
                },
                GammaFactor { b: half, c: Cx::from_real(Float::with_val(prec, *m) / 2u32) },
            ];
            // chi((d)) = sgn(N sqrt D)^m |sqrt D|^(-i v1) = (-1)^m |sqrt D|^(-i v1),
            // so kappa = (-1)^m chi((d)) never carries a sign. kappa1 is the
            // natural root |sqrt D|^(i v1 / 2); the constant pi^(-m - i v1/2)
            // is folded into both.
            let chi_d = different_character_value(&params);
            let ln_sqrt_d = f(disc as u32).ln() / 2u32;
            let root = Cx::expi(&(v1.clone() * &ln_sqrt_d / 2u32));
            let fold = Cx::expi(&(v1.clone() * &ln_pi));
            let fold_half = Cx::expi(&(-(v1.clone() * &ln_pi) / 2u32));
            let sign = if *m == 1 { one.neg() } else { one.clone() };
            let kappa = sign.mul(&chi_d).mul(&fold);
            let kappa1 = root.mul(&fold_half);
            let parity = Parity::RealOnLine;
            (GammaFactorData { log_scale, factors }, Rational::from(1), kappa, kappa1, parity)
        }
        Family::External(name) => return Err(Error::UnknownSpec(name.clone())),
    };
    let sigma_abs = (k.to_f64() + 1.0) / 2.0;
    let spec = LFunctionSpec {
        name: entry.to_string(),
        gamma,
        k,
        kappa,
        kappa1,
        parity,
        coeffs,
        v_shift: entry.default_v(),
        sigma_abs,
    };
    spec.validate()?;
    Ok(spec)
}

/// All eight catalog entries, with `hecke:2:1:0` standing for the family.
pub fn catalog() -> Vec<CatalogEntry> {
    ["s8f", "s92g", "hplus", "hminus", "sym3", "sym4", "hecke:2:1:0", "artin_s5"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}
