//! Dirichlet coefficients for the catalog families.

pub mod artin;
pub mod hecke;
pub mod modular;
pub mod qseries;
pub mod quadratic;
pub mod sympow;

use crate::error::Result;
use crate::mp::Cx;
use rug::{Float, Integer, Rational};
use std::fmt;

pub use hecke::{different_character_value, hecke_char_coeffs, HeckeCharParams};
pub use modular::{hpm_rationals, kohnen_delta_coeffs, s8f_integers, s92g_integers, tau_integers};
pub use qseries::{eta_qexp, qseries_div, qseries_inv, qseries_mul, qseries_pow, theta_qexp, QSeries};
pub use quadratic::{fundamental_unit, QuadraticFieldData};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    CuspS8,
    CuspS92,
    Sym3Delta,
    Sym4Delta,
    HeckeChi { d: i64, n: i64, m: u8 },
    ArtinS5,
    KohnenHplus,
    KohnenHminus,
    /// Coefficients read from outside the catalog.
    External(String),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::CuspS8 => write!(f, "s8f"),
            Family::CuspS92 => write!(f, "s92g"),
            Family::Sym3Delta => write!(f, "sym3"),
            Family::Sym4Delta => write!(f, "sym4"),
            Family::HeckeChi { d, n, m } => write!(f, "hecke({d},{n},{m})"),
            Family::ArtinS5 => write!(f, "artin_s5"),
            Family::KohnenHplus => write!(f, "hplus"),
            Family::KohnenHminus => write!(f, "hminus"),
            Family::External(s) => write!(f, "{s}"),
        }
    }
}

/// Exact values kept alongside the floating ones when the family has them.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactValues {
    Integers(Vec<Integer>),
    Rationals(Vec<Rational>),
}

#[derive(Clone, Debug)]
pub struct DirichletCoefficients {
    pub family: Family,
    /// `values[n - 1] = a_n`
    pub values: Vec<Cx>,
    pub exact: Option<ExactValues>,
    pub real: bool,
}

impl DirichletCoefficients {
    pub fn from_integers(family: Family, ints: Vec<Integer>, prec: u32) -> Self {
        let values = ints.iter().map(|a| Cx::from_real(Float::with_val(prec, a))).collect();
        DirichletCoefficients { family, values, exact: Some(ExactValues::Integers(ints)), real: true }
    }

    pub fn from_rationals(family: Family, q: Vec<Rational>, prec: u32) -> Self {
        let values = q.iter().map(|a| Cx::from_real(Float::with_val(prec, a))).collect();
        DirichletCoefficients { family, values, exact: Some(ExactValues::Rationals(q)), real: true }
    }

    pub fn from_complex(family: Family, values: Vec<Cx>) -> Self {
        let real = values.iter().all(|v| v.im.is_zero());
        DirichletCoefficients { family, values, exact: None, real }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn prec(&self) -> u32 {
        self.values.first().map(|v| v.prec()).unwrap_or(64)
    }

    /// `a_n`, 1-based.
    pub fn a(&self, n: usize) -> &Cx {
        &self.values[n - 1]
    }

    pub fn truncated(&self, m: usize) -> Self {
        let exact = self.exact.as_ref().map(|e| match e {
            ExactValues::Integers(v) => ExactValues::Integers(v[..m.min(v.len())].to_vec()),
            ExactValues::Rationals(v) => ExactValues::Rationals(v[..m.min(v.len())].to_vec()),
        });
        DirichletCoefficients {
            family: self.family.clone(),
            values: self.values[..m.min(self.values.len())].to_vec(),
            exact,
            real: self.real,
        }
    }
}

/// Generate `a_1..a_m` for a catalog family at `prec` bits.
pub fn generate(family: &Family, m: usize, prec: u32) -> Result<DirichletCoefficients> {
    let f = family.clone();
    Ok(match family {
        Family::CuspS8 => DirichletCoefficients::from_integers(f, s8f_integers(m), prec),
        Family::CuspS92 => DirichletCoefficients::from_integers(f, s92g_integers(m), prec),
        Family::Sym3Delta => DirichletCoefficients::from_integers(f, sympow::symmetric_power_integers(3, m), prec),
        Family::Sym4Delta => DirichletCoefficients::from_integers(f, sympow::symmetric_power_integers(4, m), prec),
        Family::ArtinS5 => DirichletCoefficients::from_integers(f, artin::artin_s5_integers(m), prec),
        Family::KohnenHplus => DirichletCoefficients::from_rationals(f, hpm_rationals(true, m), prec),
        Family::KohnenHminus => DirichletCoefficients::from_rationals(f, hpm_rationals(false, m), prec),
        Family::HeckeChi { d, n, m: par } => {
            let params = HeckeCharParams::new(*d, *n, *par, prec)?;
            let v = hecke_char_coeffs(&params, m)?;
            let mut c = DirichletCoefficients::from_complex(f, v);
            c.real = *n == 0;
            c
        }
        Family::External(name) => {
            return Err(crate::error::Error::UnknownSpec(name.clone()));
        }
    })
}
