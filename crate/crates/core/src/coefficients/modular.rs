//! q-expansions of the modular forms: f in S_8(Gamma_0(2)), g in
//! S_{9/2}(Gamma_0(4)), Delta, and the Kohnen plus-space pair h+-.

use super::qseries::{eta_qexp, qseries_div, qseries_mul, qseries_pow, theta_qexp};
use crate::arith::{is_square, sigma_table};
use rug::{Integer, Rational};

/// `a_1..a_m` of `f = (eta(z) eta(2z))^8 = q prod (1-q^n)^8 (1-q^2n)^8`.
pub fn s8f_integers(m: usize) -> Vec<Integer> {
    let e8 = qseries_pow(&eta_qexp(m), 8, m);
    let f = qseries_mul(&e8, &e8.dilate(2, m), m);
    f.numerators().to_vec()
}

/// `c_1..c_m` of `g = theta^-3 eta(2z)^12 = q theta^-3 prod (1-q^2n)^12`.
pub fn s92g_integers(m: usize) -> Vec<Integer> {
    let t3 = qseries_pow(&theta_qexp(m), 3, m);
    let e12 = qseries_pow(&eta_qexp(m), 12, m).dilate(2, m);
    qseries_div(&e12, &t3, m).expect("theta^3 has unit constant term").numerators().to_vec()
}

/// Ramanujan's `tau(1..=m)`.
pub fn tau_integers(m: usize) -> Vec<Integer> {
    qseries_pow(&eta_qexp(m), 24, m).numerators().to_vec()
}

/// Kohnen's `c(n)` for `n = 1..=m` (index 0 holds 0).
pub fn kohnen_delta_coeffs(m: usize) -> Vec<i128> {
    let s3 = sigma_table(3, m);
    let mut c = vec![0i128; m + 1];
    for n in 1..=m {
        if n % 4 == 2 || n % 4 == 3 {
            continue;
        }
        let ni = n as i128;
        let mut v = if is_square(ni).is_some() { ni } else { 0 };
        // n - 4m = j^2 with 1 <= j^2 < n and j = n mod 2
        let mut j = if n % 2 == 1 { 1 } else { 2 };
        while j * j < n {
            let mm = (n - j * j) / 4;
            if mm >= 1 {
                v += 120 * s3[mm] as i128 * (2 * ni - 9 * mm as i128);
            }
            j += 2;
        }
        if n % 4 == 0 {
            v -= 15 * ni * s3[n / 4];
        }
        c[n] = v;
    }
    c
}

/// `b_n = c(n) -+ 2^-6 c(4n)` for `h+-`; `plus = true` selects `h+`.
pub fn hpm_rationals(plus: bool, m: usize) -> Vec<Rational> {
    let c = kohnen_delta_coeffs(4 * m);
    (1..=m)
        .map(|n| {
            let d = Rational::from((Integer::from(c[4 * n]), 64));
            let cn = Rational::from(Integer::from(c[n]));
            if plus {
                cn - d
            } else {
                cn + d
            }
        })
        .collect()
}
