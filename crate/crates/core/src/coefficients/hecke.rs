//! Unramified Hecke characters of infinite order on real quadratic fields
//! of class number one.

use super::quadratic::{class_number_is_one, decompose, fundamental_unit, HalfElt, PrimeDecomposition, QuadraticFieldData};
use crate::arith::{multiplicative, primes_upto};
use crate::error::{Error, Result};
use crate::mp::{pi, Cx};
use rug::Float;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct HeckeCharParams {
    pub field: QuadraticFieldData,
    pub n: i64,
    pub m: u8,
    pub v1: Float,
}

impl HeckeCharParams {
    /// The character `chi_n` (m = 0) or `chi'_n` (m = 1) with `v2 = 0`.
    pub fn new(d: i64, n: i64, m: u8, prec: u32) -> Result<Self> {
        if m > 1 {
            return Err(Error::InvalidArgument(format!("parity bit m = {m}")));
        }
        let field = fundamental_unit(d)?;
        if !class_number_is_one(&field) {
            return Err(Error::ClassNumber(d));
        }
        let odd = m == 1 && field.norm_eps == -1;
        let k = if odd { 2 * n + 1 } else { 2 * n };
        let v1 = -(pi(prec) * k) / field.log_eps_at(prec);
        let p = HeckeCharParams { field, n, m, v1 };
        let r = p.unit_condition_residual();
        if r > 1e-20 {
            return Err(Error::CharacterCondition(r));
        }
        Ok(p)
    }

    pub fn prec(&self) -> u32 {
        self.v1.prec()
    }

    /// `| |eps|^(i v1) - sgn(N eps)^m |`
    pub fn unit_condition_residual(&self) -> f64 {
        let prec = self.prec();
        let z = Cx::expi(&(self.v1.clone() * self.field.log_eps_at(prec)));
        let target = if self.m == 1 && self.field.norm_eps == -1 { -1.0 } else { 1.0 };
        z.sub(&Cx::from_f64(prec, target, 0.0)).abs().to_f64()
    }

    /// `chi_*((alpha)) = sgn(N alpha)^m |alpha^sigma1|^(-i v1)`.
    pub fn chi_of_element(&self, alpha: &HalfElt) -> Cx {
        let prec = self.prec();
        let s1 = alpha.sigma1(self.field.d, prec).abs();
        let z = Cx::expi(&(-(self.v1.clone()) * s1.ln()));
        if self.m == 1 && alpha.norm(self.field.d) < 0 {
            z.neg()
        } else {
            z
        }
    }

    /// `chi_*((p))` for a rational integer `p`.
    pub fn chi_of_rational(&self, p: u64) -> Cx {
        let prec = self.prec();
        Cx::expi(&(-(self.v1.clone()) * Float::with_val(prec, p).ln()))
    }
}

/// `chi_*((d))` on the different `(sqrt D)`.
pub fn different_character_value(params: &HeckeCharParams) -> Cx {
    let d = params.field.d;
    let disc = params.field.disc;
    // sqrt D in half form: D = d gives (0 + 2 sqrt d)/2, D = 4d gives (0 + 4 sqrt d)/2
    let b = if disc == d { 2 } else { 4 };
    params.chi_of_element(&HalfElt { a: 0.into(), b: b.into() })
}

/// Dirichlet coefficients `a_1..a_m` of `L(s, chi)`.
pub fn hecke_char_coeffs(params: &HeckeCharParams, m: usize) -> Result<Vec<Cx>> {
    let prec = params.prec();
    let mut local: HashMap<u64, (PrimeDecomposition, Vec<Cx>)> = HashMap::new();
    for p in primes_upto(m.max(2)) {
        let dec = decompose(&params.field, p)?;
        let chis = match &dec {
            PrimeDecomposition::Split(a, b) => vec![params.chi_of_element(a), params.chi_of_element(b)],
            PrimeDecomposition::Inert => vec![params.chi_of_rational(p)],
            PrimeDecomposition::Ramified(a) => vec![params.chi_of_element(a)],
        };
        local.insert(p, (dec, chis));
    }
    let a = multiplicative(
        m,
        Cx::one(prec),
        |p, e| {
            let (dec, chis) = &local[&p];
            match dec {
                PrimeDecomposition::Split(..) => {
                    let mut acc = Cx::zero(prec);
                    for i in 0..=e {
                        acc.add_assign(&chis[0].powu(i).mul(&chis[1].powu(e - i)));
                    }
                    acc
                }
                PrimeDecomposition::Inert => {
                    if e % 2 == 0 {
                        chis[0].powu(e / 2)
                    } else {
                        Cx::zero(prec)
                    }
                }
                PrimeDecomposition::Ramified(_) => chis[0].powu(e),
            }
        },
        |x, y| x.mul(y),
    );
    Ok(a[1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;
    use crate::mp::dist;

    const P: u32 = 256;

    #[test]
    fn v1_for_q_sqrt2() {
        let h = HeckeCharParams::new(2, 1, 0, P).unwrap();
        let expect = -2.0 * std::f64::consts::PI / (1.0 + 2f64.sqrt()).ln();
        assert!((h.v1.to_f64() - expect).abs() < 1e-12);
        assert!(h.unit_condition_residual() < 1e-60);
        let h1 = HeckeCharParams::new(2, 0, 1, P).unwrap();
        assert!(h1.unit_condition_residual() < 1e-60);
        assert!(h1.v1.to_f64() < 0.0);
    }

    #[test]
    fn unit_invariance() {
        for (d, n, m) in [(2i64, 1i64, 0u8), (5, 2, 1), (19, 1, 0), (29, 1, 1), (31, 3, 0), (67, 1, 1)] {
            let h = HeckeCharParams::new(d, n, m, P).unwrap();
            let f = &h.field;
            let eps = &f.eps;
            let eps_inv = {
                // eps^-1 = N(eps) * conj(eps)
                let c = eps.conj();
                if f.norm_eps == 1 { c } else { HalfElt { a: (-c.a).into(), b: (-c.b).into() } }
            };
            for p in primes_upto(60) {
                if let Ok(PrimeDecomposition::Split(a, _)) | Ok(PrimeDecomposition::Ramified(a)) = decompose(f, p) {
                    let base = h.chi_of_element(&a);
                    let neg = HalfElt { a: (-a.a.clone()).into(), b: (-a.b.clone()).into() };
                    for alt in [neg, a.mul(eps, d), a.mul(&eps_inv, d)] {
                        assert!(dist(&base, &h.chi_of_element(&alt)) < 1e-60, "d={d} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_character() {
        let h = HeckeCharParams::new(5, 0, 0, P).unwrap();
        assert!(dist(&different_character_value(&h), &Cx::one(P)) < 1e-60);
        // zeta_K coefficients count ideals of each norm
        let a = hecke_char_coeffs(&h, 50).unwrap();
        let expect = [1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 2, 0, 0, 0, 0, 1, 0, 0, 2, 1];
        for (i, e) in expect.iter().enumerate() {
            assert!(dist(&a[i], &Cx::from_f64(P, *e as f64, 0.0)) < 1e-60, "n = {}", i + 1);
        }
    }

    #[test]
    fn different_value_sqrt2() {
        let h = HeckeCharParams::new(2, 1, 0, P).unwrap();
        let z = different_character_value(&h);
        assert!((z.abs().to_f64() - 1.0).abs() < 1e-60);
        // chi_*((sqrt 2)^3) = (2^(3/2))^(-i v1)
        let theta = -h.v1.to_f64() * 1.5 * 2f64.ln();
        assert!((z.re.to_f64() - theta.cos()).abs() < 1e-12);
        assert!((z.im.to_f64() - theta.sin()).abs() < 1e-12);
    }

    #[test]
    fn coefficients_bounded_and_multiplicative() {
        let h = HeckeCharParams::new(2, 1, 0, P).unwrap();
        let a = hecke_char_coeffs(&h, 1000).unwrap();
        let ideals = hecke_char_coeffs(&HeckeCharParams::new(2, 0, 0, P).unwrap(), 500).unwrap();
        for n in 1..=500usize {
            let bound = ideals[n - 1].re.to_f64();
            assert!(a[n - 1].abs().to_f64() <= bound + 1e-30, "n = {n}");
        }
        for x in 2..=1000usize {
            for y in 2..=1000 / x {
                if gcd(x as u64, y as u64) == 1 {
                    assert!(dist(&a[x * y - 1], &a[x - 1].mul(&a[y - 1])) < 1e-60);
                }
            }
        }
    }

    #[test]
    fn ideal_enumeration_oracle() {
        // Sum chi over all principal ideals of norm n by enumerating elements
        // in a fundamental domain for the units.
        let h = HeckeCharParams::new(2, 1, 0, P).unwrap();
        let a = hecke_char_coeffs(&h, 50).unwrap();
        let eps = 1.0 + 2f64.sqrt();
        let mut sums: Vec<Cx> = (0..=50).map(|_| Cx::zero(P)).collect();
        for x in -60i64..=60 {
            for y in -60i64..=60 {
                let n = (x * x - 2 * y * y).abs();
                if n == 0 || n > 50 {
                    continue;
                }
                let s1 = x as f64 + y as f64 * 2f64.sqrt();
                let s2 = x as f64 - y as f64 * 2f64.sqrt();
                // one generator per ideal: s1 > 0, 1 <= |s1/s2| < eps^2
                let r = (s1 / s2).abs();
                if s1 <= 0.0 || r < 1.0 - 1e-12 || r >= eps * eps - 1e-9 {
                    continue;
                }
                let e = HalfElt { a: (2 * x).into(), b: (2 * y).into() };
                let c = h.chi_of_element(&e);
                sums[n as usize].add_assign(&c);
            }
        }
        for n in 1..=50usize {
            assert!(dist(&a[n - 1], &sums[n]) < 1e-50, "n = {n}: {:?} vs {:?}", a[n - 1], sums[n]);
        }
    }
}
