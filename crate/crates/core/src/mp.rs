//! Working-precision scalars.
//!
//! Everything numeric in the crate runs on MPFR floats. `Cx` is a plain
//! rectangular complex number over them; only the handful of operations the
//! evaluator needs are provided.

use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Float, Integer, Rational};
use std::fmt;

/// Decimal working precision plus the knobs of the Stirling log-gamma.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionContext {
    pub digits: u32,
    pub stirling_terms: usize,
    pub shift_threshold: f64,
}

impl PrecisionContext {
    pub const MAX_STIRLING_TERMS: usize = 20;

    /// Context whose log-gamma is accurate to roughly `digits` digits.
    ///
    /// Uses the full Bernoulli table and picks the smallest shift threshold
    /// for which the first omitted Stirling term is below `10^-digits`.
    pub fn new(digits: u32) -> Self {
        let digits = digits.max(20);
        let terms = Self::MAX_STIRLING_TERMS;
        let mut r = 10.0_f64;
        while stirling_tail_log10(terms, r) > -(digits as f64) - 2.0 {
            r *= 1.1;
        }
        PrecisionContext {
            digits,
            stirling_terms: terms,
            shift_threshold: r.ceil(),
        }
    }

    /// Ten Bernoulli terms after shifting to real part 100. Good to about
    /// 40 digits.
    pub fn ten_terms(digits: u32) -> Self {
        PrecisionContext {
            digits: digits.max(20),
            stirling_terms: 10,
            shift_threshold: 100.0,
        }
    }

    /// MPFR mantissa bits, with a guard margin.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
    }

    pub fn eps(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(64)
    }
}

/// log10 of the first omitted term of the Stirling series at |z| = r,
/// including the 2^n sector factor for |arg z| < pi/2.
fn stirling_tail_log10(terms: usize, r: f64) -> f64 {
    let n = (terms + 1) as f64;
    // |B_2n| ~ 2 (2n)! / (2 pi)^2n
    let ln_b = 2f64.ln() + ln_factorial(2.0 * n) - 2.0 * n * (2.0 * std::f64::consts::PI).ln();
    let ln_term = ln_b - (2.0 * n * (2.0 * n - 1.0)).ln() - (2.0 * n - 1.0) * r.ln()
        + n * 2f64.ln();
    ln_term / std::f64::consts::LN_10
}

fn ln_factorial(x: f64) -> f64 {
    (1..=(x as u64)).map(|k| (k as f64).ln()).sum()
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn float(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x)
}

pub fn from_rational(prec: u32, q: &Rational) -> Float {
    Float::with_val(prec, q)
}

pub fn from_integer(prec: u32, n: &Integer) -> Float {
    Float::with_val(prec, n)
}

/// Parse a decimal string at the given precision.
pub fn parse_float(prec: u32, s: &str) -> Option<Float> {
    Float::parse(s.trim()).ok().map(|p| p.complete(prec))
}

/// Complex number over MPFR floats.
#[derive(Clone, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {:+}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Self {
        Cx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cx::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Cx::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Cx::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Cx::new(re, Float::new(prec))
    }

    /// `e^{i theta}`
    pub fn expi(theta: &Float) -> Self {
        let prec = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        Cx::new(c, s)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Cx {
        Cx::new(self.re.clone(), -self.im.clone())
    }

    pub fn neg(&self) -> Cx {
        Cx::new(-self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx::new(
            Float::with_val(p, &self.re + &o.re),
            Float::with_val(p, &self.im + &o.im),
        )
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx::new(
            Float::with_val(p, &self.re - &o.re),
            Float::with_val(p, &self.im - &o.im),
        )
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx::new(
            Float::with_val(p, &self.re * &o.re - &self.im * &o.im),
            Float::with_val(p, &self.re * &o.im + &self.im * &o.re),
        )
    }

    /// `self += a * b`
    pub fn add_mul(&mut self, a: &Cx, b: &Cx) {
        let p = self.prec();
        self.re += Float::with_val(p, &a.re * &b.re - &a.im * &b.im);
        self.im += Float::with_val(p, &a.re * &b.im + &a.im * &b.re);
    }

    pub fn add_assign(&mut self, o: &Cx) {
        self.re += &o.re;
        self.im += &o.im;
    }

    pub fn sub_assign(&mut self, o: &Cx) {
        self.re -= &o.re;
        self.im -= &o.im;
    }

    pub fn scale(&self, x: &Float) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn scale_f64(&self, x: f64) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> Cx {
        Cx::new(-self.im.clone(), self.re.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.re * &self.re + &self.im * &self.im)
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> Cx {
        let n = self.norm_sqr();
        let p = self.prec();
        Cx::new(
            Float::with_val(p, &self.re / &n),
            Float::with_val(p, -(&self.im / &n).complete(p)),
        )
    }

    pub fn div(&self, o: &Cx) -> Cx {
        self.mul(&o.recip())
    }

    pub fn exp(&self) -> Cx {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Cx::new(m.clone() * c, m * s)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Cx {
        let p = self.prec();
        let r = Float::with_val(p, self.norm_sqr().ln()) / 2u32;
        Cx::new(r, self.arg())
    }

    pub fn sqr(&self) -> Cx {
        self.mul(self)
    }

    /// `self^n` for a small nonnegative integer exponent.
    pub fn powu(&self, mut n: u32) -> Cx {
        let mut base = self.clone();
        let mut acc = Cx::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn with_prec(&self, prec: u32) -> Cx {
        Cx::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }
}

/// Maximum of |a - b| over both components, as f64.
pub fn dist(a: &Cx, b: &Cx) -> f64 {
    a.sub(b).abs().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_ln_round_trip() {
        let p = 200;
        let z = Cx::from_f64(p, -1.25, 3.5);
        let w = z.ln().exp();
        assert!(dist(&z, &w) < 1e-55);
    }

    #[test]
    fn division() {
        let p = 200;
        let a = Cx::from_f64(p, 1.0, 2.0);
        let b = Cx::from_f64(p, -3.0, 0.5);
        let q = a.div(&b);
        assert!(dist(&q.mul(&b), &a) < 1e-55);
    }

    #[test]
    fn powers() {
        let p = 128;
        let z = Cx::from_f64(p, 0.0, 1.0);
        assert!(dist(&z.powu(4), &Cx::one(p)) < 1e-30);
        assert!(dist(&z.powu(0), &Cx::one(p)) < 1e-30);
    }

    #[test]
    fn default_threshold_is_sane() {
        let c = PrecisionContext::new(64);
        assert!(c.shift_threshold > 50.0 && c.shift_threshold < 400.0);
        assert!(c.bits() >= 64 * 3);
    }
}
