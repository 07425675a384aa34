//! Symmetric power L-functions of Delta.
//!
//! The local factor at p is `prod_j (1 - alpha^(r-j) beta^j X)` with
//! `alpha + beta = tau(p)` and `alpha beta = p^11`. Its coefficients are
//! symmetric in alpha, beta, so they are computed exactly from power sums
//! and Newton's identities instead of from floating roots.

use super::modular::tau_integers;
use crate::arith::{invert_poly_i, multiplicative};
use rug::ops::Pow;
use rug::Integer;

/// Coefficients `[1, -e1, e2, ...]` of the reciprocal local factor of
/// `Sym^r` for the pair with trace `t` and determinant `d`.
pub fn sym_local_poly(r: usize, t: &Integer, d: &Integer) -> Vec<Integer> {
    // q_m = alpha^m + beta^m, d^m = (alpha beta)^m
    let nroots = r + 1;
    let mut q = vec![Integer::from(2), t.clone()];
    for m in 2..=nroots {
        let v = Integer::from(t * &q[m - 1]) - Integer::from(d * &q[m - 2]);
        q.push(v);
    }
    // power sums P_m = h_r(alpha^m, beta^m)
    let mut psum = vec![Integer::new(); nroots + 1];
    for m in 1..=nroots {
        let dm = Integer::from(d.pow(m as u32));
        let mut h_prev = Integer::from(1);
        let mut h = q[m].clone();
        if r == 0 {
            h = Integer::from(1);
        }
        for _ in 2..=r {
            let next = Integer::from(&q[m] * &h) - Integer::from(&dm * &h_prev);
            h_prev = std::mem::replace(&mut h, next);
        }
        psum[m] = h;
    }
    // Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) P_i
    let mut e = vec![Integer::from(1)];
    for k in 1..=nroots {
        let mut acc = Integer::new();
        for i in 1..=k {
            let term = Integer::from(&e[k - i] * &psum[i]);
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc /= k as u32;
        e.push(acc);
    }
    e.iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { Integer::from(-v) } else { v.clone() })
        .collect()
}

/// Dirichlet coefficients `a_1..a_m` of `L^(r)(s, Delta)`, exact.
pub fn symmetric_power_integers(r: usize, m: usize) -> Vec<Integer> {
    let tau = tau_integers(m.max(2));
    let a = multiplicative(
        m,
        Integer::from(1),
        |p, e| {
            let t = &tau[p as usize - 1];
            let d = Integer::from(p).pow(11u32);
            let poly = sym_local_poly(r, t, &d);
            let inv = invert_poly_i(&poly, e as usize + 1);
            inv[e as usize].clone()
        },
        |x, y| Integer::from(x * y),
    );
    a[1..].to_vec()
}
