//! The four-dimensional S5 Artin representation cut out by `X^5 - X + 1`.
//!
//! Frobenius classes come from the factorization pattern of the quintic
//! mod p; each class fixes the reciprocal local factor as a polynomial in
//! `X = p^-s`.

use crate::arith::{invert_poly_i, multiplicative};
use rug::Integer;

/// Coefficients of `X^5 - X + 1` mod p, low degree first.
fn quintic(p: u64) -> Vec<u64> {
    vec![1 % p, p - 1, 0, 0, 0, 1]
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn deg(a: &[u64]) -> isize {
    if a.len() == 1 && a[0] == 0 {
        -1
    } else {
        a.len() as isize - 1
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = deg(m);
    let lead_inv = inv_mod(*m.last().unwrap(), p);
    while deg(&r) >= dm {
        let shift = (deg(&r) - dm) as usize;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            let t = mulmod(c, mi, p);
            r[i + shift] = (r[i + shift] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mulmod(x, y, p)) % p;
        }
    }
    poly_rem(&c, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while deg(&b) >= 0 {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    let li = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|&c| mulmod(c, li, p)).collect()
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut c = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        c[i] = (x + p - y) % p;
    }
    trim(c)
}

fn poly_div(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = deg(m);
    if deg(&r) < dm {
        return vec![0];
    }
    let mut q = vec![0u64; (deg(&r) - dm) as usize + 1];
    let lead_inv = inv_mod(*m.last().unwrap(), p);
    while deg(&r) >= dm {
        let shift = (deg(&r) - dm) as usize;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (i, &mi) in m.iter().enumerate() {
            let t = mulmod(c, mi, p);
            r[i + shift] = (r[i + shift] + p - t) % p;
        }
        r = trim(r);
    }
    q
}

fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return vec![0];
    }
    trim((1..a.len()).map(|i| mulmod(a[i], i as u64 % p, p)).collect())
}

/// Degrees of the irreducible factors of a squarefree `g` over F_p.
fn ddf(g: &[u64], p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut g = g.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut i = 0usize;
    while deg(&g) > 0 {
        i += 1;
        if 2 * i > deg(&g) as usize {
            out.push(deg(&g) as usize);
            break;
        }
        h = poly_powmod(&h, p, &g, p);
        let d = poly_gcd(&g, &poly_sub(&h, &x, p), p);
        let dd = deg(&d) as usize;
        if dd > 0 {
            for _ in 0..dd / i {
                out.push(i);
            }
            g = poly_div(&g, &d, p);
            h = poly_rem(&h, &g, p);
        }
    }
    out.sort_unstable();
    out
}

/// Factor degrees of `X^5 - X + 1` mod p with multiplicities, as
/// `(degree, multiplicity)` pairs sorted by degree.
pub fn degree_pattern(p: u64) -> Vec<(usize, usize)> {
    let f = quintic(p);
    let mut out = Vec::new();
    // Yun's squarefree decomposition; p > 5 or the quintic is separable
    let fp = derivative(&f, p);
    let mut a = poly_gcd(&f, &fp, p);
    let mut b = poly_div(&f, &a, p);
    let mut mult = 1;
    while deg(&b) > 0 {
        let c = poly_gcd(&a, &b, p);
        let part = poly_div(&b, &c, p);
        for d in ddf(&part, p) {
            out.push((d, mult));
        }
        a = poly_div(&a, &c, p);
        b = c;
        mult += 1;
    }
    out.sort_unstable();
    out
}

/// Frobenius conjugacy class in S5, named by cycle type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusClass {
    Identity,
    Transposition,
    ThreeCycle,
    FourCycle,
    FiveCycle,
    DoubleTransposition,
    TwoThree,
}

pub fn frobenius_class(p: u64) -> Option<FrobeniusClass> {
    let pat = degree_pattern(p);
    if pat.iter().any(|&(_, m)| m > 1) {
        return None;
    }
    let degs: Vec<usize> = pat.iter().map(|&(d, _)| d).collect();
    use FrobeniusClass::*;
    Some(match degs.as_slice() {
        [1, 1, 1, 1, 1] => Identity,
        [1, 1, 1, 2] => Transposition,
        [1, 1, 3] => ThreeCycle,
        [1, 4] => FourCycle,
        [5] => FiveCycle,
        [1, 2, 2] => DoubleTransposition,
        [2, 3] => TwoThree,
        _ => return None,
    })
}

/// Reciprocal local factor `L_p(s)^-1` as coefficients in `X = p^-s`.
pub fn local_factor(p: u64) -> Vec<i64> {
    match p {
        19 => return vec![1, 0, 0, -1],
        151 => return vec![1, -1, -1, 1],
        _ => {}
    }
    use FrobeniusClass::*;
    match frobenius_class(p).expect("unramified prime") {
        Identity => vec![1, -4, 6, -4, 1],
        Transposition => vec![1, -2, 0, 2, -1],
        ThreeCycle => vec![1, -1, 0, -1, 1],
        FourCycle => vec![1, 0, 0, 0, -1],
        FiveCycle => vec![1, 1, 1, 1, 1],
        DoubleTransposition => vec![1, 0, -2, 0, 1],
        TwoThree => vec![1, 1, 0, -1, -1],
    }
}

/// Dirichlet coefficients `a_1..a_m`.
pub fn artin_s5_integers(m: usize) -> Vec<Integer> {
    let mut cache: std::collections::HashMap<u64, Vec<Integer>> = Default::default();
    let a = multiplicative(
        m,
        Integer::from(1),
        |p, e| {
            let inv = cache.entry(p).or_insert_with(|| {
                let poly: Vec<Integer> = local_factor(p).into_iter().map(Integer::from).collect();
                let mut terms = 1usize;
                let mut pe = 1u64;
                while pe <= m as u64 {
                    pe = pe.saturating_mul(p);
                    terms += 1;
                }
                invert_poly_i(&poly, terms)
            });
            inv[e as usize].clone()
        },
        |x, y| Integer::from(x * y),
    );
    a[1..].to_vec()
}
