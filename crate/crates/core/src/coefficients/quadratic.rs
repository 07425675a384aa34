//! Real quadratic fields of class number one: fundamental unit, prime
//! decomposition and principal generators.
//!
//! Field elements are written `(a + b sqrt d) / 2` with integers `a, b`; the
//! pair lies in the ring of integers when `a = b mod 2` (d = 1 mod 4) or both
//! are even (d = 2, 3 mod 4).

use crate::arith::{is_square, is_squarefree, isqrt, primes_upto};
use crate::error::{Error, Result};
use rug::{Float, Integer};

/// Element `(a + b sqrt d) / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfElt {
    pub a: Integer,
    pub b: Integer,
}

impl HalfElt {
    pub fn norm(&self, d: i64) -> Integer {
        let n = Integer::from(self.a.square_ref()) - Integer::from(self.b.square_ref()) * d;
        n / 4
    }

    pub fn conj(&self) -> HalfElt {
        HalfElt { a: self.a.clone(), b: Integer::from(-&self.b) }
    }

    pub fn mul(&self, o: &HalfElt, d: i64) -> HalfElt {
        // ((a + b r)(c + e r)) / 4 = (ac + d be + (ae + bc) r) / 4
        let a = Integer::from(&self.a * &o.a) + Integer::from(&self.b * &o.b) * d;
        let b = Integer::from(&self.a * &o.b) + Integer::from(&self.b * &o.a);
        HalfElt { a: a / 2, b: b / 2 }
    }

    /// Image under the identity embedding.
    pub fn sigma1(&self, d: i64, prec: u32) -> Float {
        let r = Float::with_val(prec, d).sqrt();
        (Float::with_val(prec, &self.a) + r * &self.b) / 2u32
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticFieldData {
    pub d: i64,
    pub disc: i64,
    /// Fundamental unit in half form.
    pub eps: HalfElt,
    /// Coordinates `(x, y)` of the unit in the integral basis `1, omega`.
    pub eps_basis: (Integer, Integer),
    pub norm_eps: i32,
    pub log_eps: f64,
}

impl QuadraticFieldData {
    pub fn log_eps_at(&self, prec: u32) -> Float {
        self.eps.sigma1(self.d, prec).ln()
    }

    pub fn in_ring(&self, e: &HalfElt) -> bool {
        if self.d % 4 == 1 {
            Integer::from(&e.a - &e.b).is_even()
        } else {
            e.a.is_even() && e.b.is_even()
        }
    }
}

/// How a rational prime decomposes, with principal generators.
#[derive(Clone, Debug, PartialEq)]
pub enum PrimeDecomposition {
    /// `(p) = (alpha)(alpha')`
    Split(HalfElt, HalfElt),
    /// `(p)` stays prime, generated by `p`.
    Inert,
    /// `(p) = (alpha)^2`
    Ramified(HalfElt),
}

fn ring_discriminant(d: i64) -> i64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

/// Smallest unit greater than one, from the continued fraction of the
/// reduced number `(P0 + sqrt d)/Q0` generating the ring of integers.
pub fn fundamental_unit(d: i64) -> Result<QuadraticFieldData> {
    if d < 2 || !is_squarefree(d as u64) {
        return Err(Error::NotSquareFree(d));
    }
    let r = isqrt(d as u128) as i64;
    let (p0, q0) = if d % 4 == 1 {
        (if r % 2 == 1 { r } else { r - 1 }, 2i64)
    } else {
        (r, 1i64)
    };
    // Product of the complete quotients over one period.
    let (mut num_a, mut num_b, mut den) = (Integer::from(1), Integer::from(0), Integer::from(1));
    let (mut p, mut q) = (p0, q0);
    loop {
        // (num_a + num_b r)(p + r) = (num_a p + num_b d) + (num_a + num_b p) r
        let na = Integer::from(&num_a * p) + Integer::from(&num_b * d);
        let nb = Integer::from(&num_b * p) + &num_a;
        num_a = na;
        num_b = nb;
        den *= q;
        let g = Integer::from(num_a.gcd_ref(&num_b)).gcd(&den);
        if g != 1 {
            num_a /= &g;
            num_b /= &g;
            den /= &g;
        }
        let a = (p + r) / q;
        let p_next = a * q - p;
        let q_next = (d - p_next * p_next) / q;
        p = p_next;
        q = q_next;
        if p == p0 && q == q0 {
            break;
        }
    }
    let two_a = Integer::from(&num_a * 2);
    let two_b = Integer::from(&num_b * 2);
    if !two_a.is_divisible(&den) || !two_b.is_divisible(&den) {
        return Err(Error::InvalidArgument(format!("unit for d = {d} left the ring")));
    }
    let eps = HalfElt { a: two_a / &den, b: two_b / &den };
    let norm = eps.norm(d);
    let norm_eps = if norm == 1 {
        1
    } else if norm == -1 {
        -1
    } else {
        return Err(Error::InvalidArgument(format!("period product for d = {d} has norm {norm}")));
    };
    let eps_basis = if d % 4 == 1 {
        // x + y (1 + r)/2 = (2x + y + y r)/2
        let y = eps.b.clone();
        let x = Integer::from(&eps.a - &y) / 2;
        (x, y)
    } else {
        (Integer::from(&eps.a / 2), Integer::from(&eps.b / 2))
    };
    let log_eps = eps.sigma1(d, 64).ln().to_f64();
    Ok(QuadraticFieldData { d, disc: ring_discriminant(d), eps, eps_basis, norm_eps, log_eps })
}

fn legendre(a: i64, p: u64) -> i32 {
    let p = p as i64;
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r: i64 = 1;
    let mut base = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as i128 * base as i128) % p as i128) as i64;
        }
        base = ((base as i128 * base as i128) % p as i128) as i64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(D / p)` for the field discriminant.
pub fn splitting_symbol(field: &QuadraticFieldData, p: u64) -> i32 {
    if p == 2 {
        if field.disc % 2 == 0 {
            0
        } else if field.d.rem_euclid(8) == 1 {
            1
        } else {
            -1
        }
    } else {
        legendre(field.disc, p)
    }
}

/// Search an element of norm `+-p` with `|b| <= bound`.
pub fn find_generator(field: &QuadraticFieldData, p: u64, bound: u64) -> Option<HalfElt> {
    let d = field.d as i128;
    let four_p = 4 * p as i128;
    let odd_ok = field.d % 4 == 1;
    for b in 0..=bound as i128 {
        if !odd_ok && b % 2 == 1 {
            continue;
        }
        let db2 = d * b * b;
        for target in [db2 + four_p, db2 - four_p] {
            if let Some(a) = is_square(target) {
                let e = HalfElt { a: Integer::from(a), b: Integer::from(b) };
                if field.in_ring(&e) {
                    return Some(e);
                }
            }
        }
    }
    None
}

/// Upper bound on the smallest `|b|` of a generator of norm `+-p`.
pub fn generator_bound(field: &QuadraticFieldData, p: u64) -> u64 {
    let eps = field.log_eps.exp();
    ((eps + 1.0) * ((4 * p) as f64 / field.d as f64).sqrt()).ceil() as u64 + 2
}

pub fn decompose(field: &QuadraticFieldData, p: u64) -> Result<PrimeDecomposition> {
    match splitting_symbol(field, p) {
        -1 => Ok(PrimeDecomposition::Inert),
        s => {
            let g = find_generator(field, p, generator_bound(field, p).min(1_000_000))
                .ok_or(Error::NoGenerator(p))?;
            if s == 0 {
                Ok(PrimeDecomposition::Ramified(g))
            } else {
                let c = g.conj();
                Ok(PrimeDecomposition::Split(g, c))
            }
        }
    }
}

/// Every prime below the Minkowski bound that is not inert must be principal.
pub fn class_number_is_one(field: &QuadraticFieldData) -> bool {
    let mink = ((field.disc as f64).sqrt() / 2.0).floor() as usize;
    primes_upto(mink.max(2)).into_iter().all(|p| {
        splitting_symbol(field, p) == -1 || find_generator(field, p, generator_bound(field, p)).is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Smallest y > 0 with x^2 - d y^2 = +-4 (d = 1 mod 4) or +-1, by brute force.
    fn pell_oracle(d: i64) -> (i128, i128) {
        let dd = d as i128;
        let k = if d % 4 == 1 { 4 } else { 1 };
        for y in 1i128.. {
            for s in [-k, k] {
                if let Some(x) = is_square(dd * y * y + s) {
                    return if d % 4 == 1 { (x, y) } else { (2 * x, 2 * y) };
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn q_sqrt2_field() {
        let f = fundamental_unit(2).unwrap();
        assert_eq!(f.eps_basis, (Integer::from(1), Integer::from(1)));
        assert_eq!(f.norm_eps, -1);
        assert_eq!(f.disc, 8);
    }

    #[test]
    fn units_against_pell_search() {
        for (d, x, y, n) in [(5i64, 0i64, 1i64, -1), (19, 170, 39, 1), (29, 2, 1, -1), (31, 1520, 273, 1), (67, 48842, 5967, 1)] {
            let f = fundamental_unit(d).unwrap();
            assert_eq!(f.eps_basis, (Integer::from(x), Integer::from(y)), "d = {d}");
            assert_eq!(f.norm_eps, n);
            let (a, b) = pell_oracle(d);
            assert_eq!((f.eps.a.to_i128().unwrap(), f.eps.b.to_i128().unwrap()), (a, b), "d = {d}");
        }
    }

    #[test]
    fn rejects_non_squarefree() {
        assert_eq!(fundamental_unit(12), Err(Error::NotSquareFree(12)));
    }

    #[test]
    fn class_numbers() {
        for d in [2, 5, 19, 29, 31, 67] {
            assert!(class_number_is_one(&fundamental_unit(d).unwrap()), "d = {d}");
        }
        for d in [10, 15, 26, 79] {
            assert!(!class_number_is_one(&fundamental_unit(d).unwrap()), "d = {d}");
        }
    }

    #[test]
    fn decomposition_q_sqrt2() {
        let f = fundamental_unit(2).unwrap();
        assert!(matches!(decompose(&f, 2).unwrap(), PrimeDecomposition::Ramified(_)));
        assert_eq!(decompose(&f, 3).unwrap(), PrimeDecomposition::Inert);
        match decompose(&f, 7).unwrap() {
            PrimeDecomposition::Split(a, b) => {
                assert_eq!(Integer::from(a.norm(2).abs_ref()), 7);
                assert_eq!(a.conj(), b);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generators_for_ramified_19() {
        let f = fundamental_unit(19).unwrap();
        for p in [2u64, 19] {
            match decompose(&f, p).unwrap() {
                PrimeDecomposition::Ramified(g) => assert_eq!(Integer::from(g.norm(19).abs_ref()), p),
                other => panic!("{other:?}"),
            }
        }
    }
}
