//! Truncated q-expansions with exact rational coefficients.
//!
//! A series is stored as integer numerators over one common positive
//! denominator. Almost every series here is integral, so the hot loops run
//! in `i128` and drop to GMP integers only when a partial sum overflows.

use crate::error::{Error, Result};
use rug::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    lead: i64,
    num: Vec<Integer>,
    den: Integer,
}

impl QSeries {
    pub fn from_integers(lead: i64, coeffs: Vec<Integer>) -> Self {
        QSeries { lead, num: coeffs, den: Integer::from(1) }
    }

    pub fn from_i64(lead: i64, coeffs: &[i64]) -> Self {
        Self::from_integers(lead, coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn from_rationals(lead: i64, coeffs: &[Rational]) -> Self {
        let mut den = Integer::from(1);
        for c in coeffs {
            den.lcm_mut(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| Integer::from(c.numer() * Integer::from(&den / c.denom())))
            .collect();
        QSeries { lead, num, den }
    }

    /// The constant series 1 known to `m` terms.
    pub fn one(m: usize) -> Self {
        let mut c = vec![Integer::new(); m];
        if m > 0 {
            c[0] = Integer::from(1);
        }
        Self::from_integers(0, c)
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Number of stored coefficients `M`.
    pub fn cutoff(&self) -> usize {
        self.num.len()
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn denominator(&self) -> &Integer {
        &self.den
    }

    /// Coefficient of `q^(lead + i)`.
    pub fn coeff(&self, i: usize) -> Rational {
        Rational::from((self.num[i].clone(), self.den.clone()))
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    /// Numerators, valid as coefficients when the series is integral.
    pub fn numerators(&self) -> &[Integer] {
        &self.num
    }

    pub fn truncate(mut self, m: usize) -> Self {
        self.num.truncate(m);
        self
    }

    /// Substitute `q -> q^k`, keeping `m` terms.
    pub fn dilate(&self, k: usize, m: usize) -> Self {
        assert!(k >= 1);
        let m = m.min(self.num.len() * k);
        let mut out = vec![Integer::new(); m];
        for (i, c) in self.num.iter().enumerate() {
            if i * k >= m {
                break;
            }
            out[i * k] = c.clone();
        }
        QSeries { lead: self.lead * k as i64, num: out, den: self.den.clone() }
    }

    fn normalize(mut self) -> Self {
        if self.den == 1 {
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            g.gcd_mut(c);
            if g == 1 {
                return self;
            }
        }
        for c in &mut self.num {
            *c /= &g;
        }
        self.den /= &g;
        self
    }

    fn small(&self) -> Option<Vec<i128>> {
        self.num.iter().map(|c| c.to_i128()).collect()
    }
}

fn from_small(v: Vec<i128>) -> Vec<Integer> {
    v.into_iter().map(Integer::from).collect()
}

fn conv_small(a: &[i128], b: &[i128], m: usize) -> Option<Vec<i128>> {
    let mut c = vec![0i128; m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 || i >= m {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(m - i) {
            if y == 0 {
                continue;
            }
            let t = x.checked_mul(y)?;
            c[i + j] = c[i + j].checked_add(t)?;
        }
    }
    Some(c)
}

fn conv_big(a: &[Integer], b: &[Integer], m: usize) -> Vec<Integer> {
    let mut c = vec![Integer::new(); m];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 || i >= m {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(m - i) {
            if *y == 0 {
                continue;
            }
            c[i + j] += x * y;
        }
    }
    c
}

/// Cauchy product truncated to `m` terms.
pub fn qseries_mul(a: &QSeries, b: &QSeries, m: usize) -> QSeries {
    let m = m.min(a.cutoff()).min(b.cutoff());
    let num = match (a.small(), b.small()) {
        (Some(x), Some(y)) => match conv_small(&x, &y, m) {
            Some(c) => from_small(c),
            None => conv_big(&a.num, &b.num, m),
        },
        _ => conv_big(&a.num, &b.num, m),
    };
    QSeries { lead: a.lead + b.lead, num, den: Integer::from(&a.den * &b.den) }.normalize()
}

/// Constant term as a rational, after checking it is +-1.
fn unit_constant(a: &QSeries) -> Result<i32> {
    let c0 = a.num.first().ok_or(Error::NotInvertible)?;
    if *c0 == a.den {
        Ok(1)
    } else if Integer::from(-c0) == a.den {
        Ok(-1)
    } else {
        Err(Error::NotInvertible)
    }
}

/// `a^e` truncated to `m` terms.
///
/// With a unit constant term the power comes from the linear recurrence
/// `n b_n = sum_k ((e+1)k - n) a_k b_(n-k)`, which costs one pass over the
/// nonzero entries of `a` per output term; otherwise repeated squaring.
pub fn qseries_pow(a: &QSeries, e: u32, m: usize) -> QSeries {
    assert!(e >= 1);
    let m = m.min(a.cutoff());
    if e == 1 {
        return a.clone().truncate(m);
    }
    if a.is_integral() {
        if let Ok(sign) = unit_constant(a) {
            let num = pow_recurrence(&a.num, sign, e, m);
            return QSeries { lead: a.lead * e as i64, num, den: Integer::from(1) };
        }
    }
    let mut base = a.clone().truncate(m);
    let mut acc: Option<QSeries> = None;
    let mut k = e;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(x) => qseries_mul(&x, &base, m),
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = qseries_mul(&base, &base, m);
    }
    acc.unwrap()
}

fn pow_recurrence(a: &[Integer], sign: i32, e: u32, m: usize) -> Vec<Integer> {
    // Work with a / a0 so the constant term is 1, then restore a0^e.
    let nz: Vec<(usize, Integer)> = a
        .iter()
        .enumerate()
        .skip(1)
        .take(m.saturating_sub(1))
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, Integer::from(c * sign)))
        .collect();
    let e1 = e as i128 + 1;
    let small = nz
        .iter()
        .map(|(i, c)| c.to_i128().map(|v| (*i, v)))
        .collect::<Option<Vec<_>>>();
    let mut out = None;
    if let Some(nz_s) = small {
        let mut b = vec![0i128; m];
        b[0] = 1;
        let mut ok = true;
        'outer: for n in 1..m {
            let mut acc = 0i128;
            for &(k, ak) in &nz_s {
                if k > n {
                    break;
                }
                let w = e1 * k as i128 - n as i128;
                let t = match ak.checked_mul(w).and_then(|x| x.checked_mul(b[n - k])) {
                    Some(t) => t,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                };
                acc = match acc.checked_add(t) {
                    Some(v) => v,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                };
            }
            b[n] = acc / n as i128;
        }
        if ok {
            out = Some(from_small(b));
        }
    }
    let mut b = out.unwrap_or_else(|| {
        let mut b = vec![Integer::new(); m];
        b[0] = Integer::from(1);
        for n in 1..m {
            let mut acc = Integer::new();
            for (k, ak) in &nz {
                if *k > n {
                    break;
                }
                let w = e1 as i64 * *k as i64 - n as i64;
                acc += Integer::from(ak * &b[n - k]) * w;
            }
            acc /= n as u64;
            b[n] = acc;
        }
        b
    });
    if sign < 0 && e % 2 == 1 {
        for c in &mut b {
            *c = Integer::from(-&*c);
        }
    }
    b
}

/// Multiplicative inverse, `qseries_mul(a, inv) = 1 + O(q^m)`.
pub fn qseries_inv(a: &QSeries, m: usize) -> Result<QSeries> {
    let sign = unit_constant(a)?;
    let m = m.min(a.cutoff());
    if a.is_integral() {
        let num = div_integral(&QSeries::one(m).num, &a.num, sign, m);
        return Ok(QSeries { lead: -a.lead, num, den: Integer::from(1) });
    }
    let c = a.coeffs();
    let mut b = vec![Rational::new(); m];
    b[0] = Rational::from(sign);
    for n in 1..m {
        let mut acc = Rational::new();
        for j in 1..=n {
            acc -= Rational::from(&c[j] * &b[n - j]);
        }
        b[n] = acc * sign;
    }
    Ok(QSeries::from_rationals(-a.lead, &b))
}

/// `a / b` for integral series where `b` has constant term +-1.
///
/// Same value as `qseries_mul(a, qseries_inv(b))`, but never materializes the
/// inverse, whose coefficients can be enormous when the quotient is small.
pub fn qseries_div(a: &QSeries, b: &QSeries, m: usize) -> Result<QSeries> {
    let sign = unit_constant(b)?;
    let m = m.min(a.cutoff()).min(b.cutoff());
    if !(a.is_integral() && b.is_integral()) {
        let inv = qseries_inv(b, m)?;
        return Ok(qseries_mul(a, &inv, m));
    }
    let num = div_integral(&a.num, &b.num, sign, m);
    Ok(QSeries { lead: a.lead - b.lead, num, den: Integer::from(1) })
}

fn div_integral(a: &[Integer], b: &[Integer], sign: i32, m: usize) -> Vec<Integer> {
    let nz: Vec<(usize, &Integer)> =
        b.iter().enumerate().skip(1).take(m.saturating_sub(1)).filter(|(_, c)| **c != 0).collect();
    let small_b = nz.iter().map(|(i, c)| c.to_i128().map(|v| (*i, v))).collect::<Option<Vec<_>>>();
    let small_a = a.iter().take(m).map(|c| c.to_i128()).collect::<Option<Vec<_>>>();
    if let (Some(bs), Some(as_)) = (small_b, small_a) {
        let mut q = vec![0i128; m];
        let mut ok = true;
        'outer: for n in 0..m {
            let mut acc = as_[n];
            for &(k, bk) in &bs {
                if k > n {
                    break;
                }
                match bk.checked_mul(q[n - k]).and_then(|t| acc.checked_sub(t)) {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            q[n] = acc * sign as i128;
        }
        if ok {
            return from_small(q);
        }
    }
    let mut q = vec![Integer::new(); m];
    for n in 0..m {
        let mut acc = a[n].clone();
        for (k, bk) in &nz {
            if *k > n {
                break;
            }
            acc -= *bk * &q[n - k];
        }
        q[n] = acc * sign;
    }
    q
}

/// `prod (1 - q^n)` by Euler's pentagonal theorem, `m` terms, no `q^(1/24)`.
pub fn eta_qexp(m: usize) -> QSeries {
    let mut c = vec![Integer::new(); m];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for j in [k, -k] {
            let e = j * (3 * j + 1) / 2;
            if (e as usize) < m {
                c[e as usize] = Integer::from(if j % 2 == 0 { 1 } else { -1 });
                any = true;
            }
            if k == 0 {
                break;
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    QSeries::from_integers(0, c)
}

/// `1 + 2 sum q^(n^2)`, `m` terms.
pub fn theta_qexp(m: usize) -> QSeries {
    let mut c = vec![Integer::new(); m];
    if m > 0 {
        c[0] = Integer::from(1);
    }
    let mut n = 1usize;
    while n * n < m {
        c[n * n] = Integer::from(2);
        n += 1;
    }
    QSeries::from_integers(0, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &QSeries) -> Vec<i64> {
        s.numerators().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn naive_eta(m: usize) -> Vec<i64> {
        let mut c = vec![0i64; m];
        c[0] = 1;
        for n in 1..m {
            for i in (n..m).rev() {
                c[i] -= c[i - n];
            }
        }
        c
    }

    #[test]
    fn eta_small() {
        assert_eq!(ints(&eta_qexp(2)), vec![1, -1]);
        assert_eq!(ints(&eta_qexp(8)), vec![1, -1, -1, 0, 0, 1, 0, 1]);
    }

    #[test]
    fn eta_pentagonal_matches_product() {
        for m in [1usize, 7, 50, 400, 2000] {
            assert_eq!(ints(&eta_qexp(m)), naive_eta(m));
        }
    }

    #[test]
    fn eta_coefficient_3500() {
        let m = 3501;
        let naive = naive_eta(m);
        assert_eq!(eta_qexp(m).numerators()[3500].to_i64().unwrap(), naive[3500]);
    }

    #[test]
    fn theta_small() {
        assert_eq!(ints(&theta_qexp(2)), vec![1, 2]);
        assert_eq!(ints(&theta_qexp(10)), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        let t2 = qseries_mul(&theta_qexp(10), &theta_qexp(10), 10);
        assert_eq!(t2.numerators()[5], 8);
    }

    #[test]
    fn mul_basic() {
        let a = QSeries::from_i64(0, &[1, -1, 0, 0]);
        let b = QSeries::from_i64(0, &[1, 1, 0, 0]);
        assert_eq!(ints(&qseries_mul(&a, &b, 4)), vec![1, 0, -1, 0]);
        let e = eta_qexp(30);
        assert_eq!(qseries_mul(&e, &e, 30), qseries_pow(&e, 2, 30));
    }

    #[test]
    fn eta_times_dilated_eta_by_index_sum() {
        // B(I) = sum over J + 2L = I + 2 of A(J) A(L), with 1-based A.
        let m = 200;
        let a = ints(&eta_qexp(m));
        let prod = qseries_mul(&eta_qexp(m), &eta_qexp(m).dilate(2, m), m);
        for i in 1..=m {
            let mut b = 0i64;
            for j in 1..=m {
                for l in 1..=m {
                    if j + 2 * l == i + 2 {
                        b += a[j - 1] * a[l - 1];
                    }
                }
            }
            assert_eq!(prod.numerators()[i - 1].to_i64().unwrap(), b, "I = {i}");
        }
    }

    #[test]
    fn tau_from_eta24() {
        let d = qseries_pow(&eta_qexp(10), 24, 10);
        assert_eq!(&ints(&d)[..5], &[1, -24, 252, -1472, 4830]);
        let e = eta_qexp(12);
        let mut sq = e.clone();
        for _ in 0..23 {
            sq = qseries_mul(&sq, &e, 12);
        }
        assert_eq!(sq, qseries_pow(&e, 24, 12));
    }

    #[test]
    fn pow_big_falls_back() {
        // Coefficients of eta^24 overflow i128 products well before 10^4 terms.
        let m = 600;
        let e = eta_qexp(m);
        let p = qseries_pow(&e, 24, m);
        let mut sq = qseries_mul(&e, &e, m);
        sq = qseries_mul(&sq, &sq, m);
        sq = qseries_mul(&sq, &sq, m);
        let e8 = sq.clone();
        sq = qseries_mul(&sq, &sq, m);
        sq = qseries_mul(&sq, &e8, m);
        assert_eq!(p, sq);
    }

    #[test]
    fn s8_a2() {
        let m = 10;
        let p = qseries_mul(&eta_qexp(m), &eta_qexp(m).dilate(2, m), m);
        let f = qseries_pow(&p, 8, m);
        assert_eq!(f.numerators()[0], 1);
        assert_eq!(f.numerators()[1], -8);
    }

    #[test]
    fn inverse() {
        assert_eq!(ints(&qseries_inv(&QSeries::one(5), 5).unwrap()), vec![1, 0, 0, 0, 0]);
        let g = QSeries::from_i64(0, &[1, -1, 0, 0, 0, 0]);
        assert_eq!(ints(&qseries_inv(&g, 6).unwrap()), vec![1; 6]);
        let t3 = qseries_pow(&theta_qexp(50), 3, 50);
        let inv = qseries_inv(&t3, 50).unwrap();
        assert_eq!(qseries_mul(&t3, &inv, 50), QSeries::one(50));
        let two = QSeries::from_i64(0, &[2, 1]);
        assert_eq!(qseries_inv(&two, 2), Err(Error::NotInvertible));
    }

    #[test]
    fn division_matches_inverse() {
        let m = 300;
        let t3 = qseries_pow(&theta_qexp(m), 3, m);
        let b = qseries_pow(&eta_qexp(m).dilate(2, m), 12, m);
        let q1 = qseries_div(&b, &t3, m).unwrap();
        let q2 = qseries_mul(&b, &qseries_inv(&t3, m).unwrap(), m);
        assert_eq!(q1, q2);
    }

    #[test]
    fn rational_series() {
        let h = QSeries::from_rationals(
            0,
            &[Rational::from(1), Rational::from((1, 2)), Rational::from((3, 4))],
        );
        assert_eq!(h.denominator(), &4);
        let sq = qseries_mul(&h, &h, 3);
        assert_eq!(sq.coeff(1), Rational::from(1));
        assert_eq!(sq.coeff(2), Rational::from((7, 4)));
        let inv = qseries_inv(&h, 3).unwrap();
        assert_eq!(qseries_mul(&h, &inv, 3), QSeries::one(3));
    }

    proptest! {
        #[test]
        fn mul_commutes_and_inverts(v in proptest::collection::vec(-50i64..50, 1..25)) {
            let mut v = v;
            v[0] = 1;
            let m = v.len();
            let a = QSeries::from_i64(0, &v);
            let b = eta_qexp(m);
            prop_assert_eq!(qseries_mul(&a, &b, m), qseries_mul(&b, &a, m));
            let inv = qseries_inv(&a, m).unwrap();
            prop_assert_eq!(qseries_mul(&a, &inv, m), QSeries::one(m));
        }

        #[test]
        fn pow_matches_repeated_mul(v in proptest::collection::vec(-9i64..9, 1..20), e in 1u32..7) {
            let mut v = v;
            v[0] = -1;
            let m = v.len();
            let a = QSeries::from_i64(0, &v);
            let mut acc = a.clone();
            for _ in 1..e {
                acc = qseries_mul(&acc, &a, m);
            }
            prop_assert_eq!(qseries_pow(&a, e, m), acc);
        }
    }
}
