//! Both sides of the explicit formula for the weight 8 level 2 newform,
//! written for `L_f(s, pi) = L(s + 7/2, f)`.

use crate::abel::Evaluator;
use crate::arith::primes_upto;
use crate::coefficients::DirichletCoefficients;
use crate::error::{Error, Result};
use crate::mp::{Cx, PrecisionContext};
use rug::Float;

/// The point `s = 7/2` where `L_f(0, pi)` is read off.
pub const CENTER_SHIFT: f64 = 3.5;

/// `(alpha_p, beta_p)` of the unitary normalisation.
///
/// At the level prime `alpha_2 = a_2 / 2^(7/2)` and `beta_2 = 0`; elsewhere the
/// roots of `1 - a_p p^(-7/2) X + X^2`.
pub fn satake_params(coeffs: &DirichletCoefficients, p: usize) -> Result<(Cx, Cx)> {
    if p > coeffs.len() {
        return Err(Error::NotEnoughCoefficients { needed: p, available: coeffs.len() });
    }
    let prec = coeffs.prec();
    let scale = (Float::with_val(prec, p).ln() * Float::with_val(prec, -CENTER_SHIFT)).exp();
    let c = Float::with_val(prec, &coeffs.a(p).re * &scale);
    if p == 2 {
        return Ok((Cx::from_real(c), Cx::zero(prec)));
    }
    let half = Float::with_val(prec, &c / 2u32);
    let disc = Float::with_val(prec, 1u32) - Float::with_val(prec, half.square_ref());
    if disc < 0 {
        // outside the Ramanujan bound: both roots real
        let r = (-disc).sqrt();
        return Ok((Cx::from_real(Float::with_val(prec, &half + &r)), Cx::from_real(half - r)));
    }
    let s = disc.sqrt();
    Ok((Cx::new(half.clone(), s.clone()), Cx::new(half, -s)))
}

/// `alpha_p^n + beta_p^n` for `n = 1..=n_max`.
fn power_sums(alpha: &Cx, beta: &Cx, n_max: u32) -> Vec<f64> {
    let mut a = alpha.clone();
    let mut b = beta.clone();
    let mut out = Vec::with_capacity(n_max as usize);
    for _ in 0..n_max {
        out.push(a.add(&b).re.to_f64());
        a = a.mul(alpha);
        b = b.mul(beta);
    }
    out
}

/// Prime powers `p^n <= x_max` with their weights `(alpha^n + beta^n) log p`.
#[derive(Clone, Debug)]
pub struct PrimeSide {
    /// `(p^n, weight)` sorted by `p^n`.
    pub jumps: Vec<(u64, f64)>,
}

impl PrimeSide {
    pub fn new(coeffs: &DirichletCoefficients, x_max: f64) -> Result<Self> {
        let top = x_max.floor().max(1.0) as u64;
        let mut jumps = Vec::new();
        for p in primes_upto(top as usize) {
            let (alpha, beta) = satake_params(coeffs, p as usize)?;
            let mut n_max = 0u32;
            let mut q = 1u64;
            while q.saturating_mul(p) <= top {
                q *= p;
                n_max += 1;
            }
            let lp = (p as f64).ln();
            let mut q = 1u64;
            for s in power_sums(&alpha, &beta, n_max) {
                q *= p;
                jumps.push((q, s * lp));
            }
        }
        jumps.sort_by_key(|j| j.0);
        Ok(PrimeSide { jumps })
    }

    /// The primed sum: a jump at `x` itself counts half.
    pub fn at(&self, x: f64) -> f64 {
        let mut total = 0.0;
        for &(q, w) in &self.jumps {
            let q = q as f64;
            if q < x {
                total += w;
            } else if q == x {
                total += 0.5 * w;
            } else {
                break;
            }
        }
        total
    }

    /// Limit from the left at `x`.
    pub fn left(&self, x: f64) -> f64 {
        self.jumps.iter().take_while(|j| (j.0 as f64) < x).map(|j| j.1).sum()
    }

    /// Limit from the right at `x`.
    pub fn right(&self, x: f64) -> f64 {
        self.jumps.iter().take_while(|j| (j.0 as f64) <= x).map(|j| j.1).sum()
    }
}

/// `h_K(x) = sum sqrt(x) (t^2 + 1/4)^-1 [cos(t log x) + 2 t sin(t log x)]`
/// over the given ordinates.
pub fn h_sum(x: f64, zeros: &[f64]) -> f64 {
    let lx = x.ln();
    let rx = x.sqrt();
    zeros
        .iter()
        .map(|&t| {
            let (s, c) = (t * lx).sin_cos();
            rx / (t * t + 0.25) * (c + 2.0 * t * s)
        })
        .sum()
}

/// Trivial-zero term `log((sqrt x + 1)/(sqrt x - 1)) - 2x^-1/2 - 2/3 x^-3/2 - 2/5 x^-5/2`.
pub fn g_closed(x: &Float) -> Float {
    let prec = x.prec();
    let r = Float::with_val(prec, x.sqrt_ref());
    let ratio = Float::with_val(prec, &r + 1u32) / Float::with_val(prec, &r - 1u32);
    let inv = Float::with_val(prec, r.recip_ref());
    let inv2 = Float::with_val(prec, inv.square_ref());
    let i3 = Float::with_val(prec, &inv * &inv2);
    let i5 = Float::with_val(prec, &i3 * &inv2);
    ratio.ln() - inv * 2u32 - i3 * 2u32 / 3u32 - i5 * 2u32 / 5u32
}

/// `2 sum_{k>=3} x^-(2k+1)/2 / (2k+1)`, summed until the terms drop below
/// the working precision.
pub fn g_series(x: &Float) -> Float {
    let prec = x.prec();
    let inv2 = Float::with_val(prec, x.recip_ref());
    let mut pow = Float::with_val(prec, x.sqrt_ref()).recip();
    for _ in 0..3 {
        pow *= &inv2;
    }
    let mut sum = Float::new(prec);
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let mut k = 3u32;
    loop {
        let term = Float::with_val(prec, &pow / (2 * k + 1));
        sum += &term;
        if term.abs() < Float::with_val(prec, &tiny * &sum).abs() || k > 100_000 {
            break;
        }
        pow *= &inv2;
        k += 1;
    }
    sum * 2u32
}

/// `-h_K(x) + g(x) - L'/L`.
pub fn zero_side(x: f64, zeros: &[f64], lder_ratio: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::InvalidArgument(format!("x = {x} must exceed 1")));
    }
    let g = g_closed(&Float::with_val(128, x)).to_f64();
    Ok(-h_sum(x, zeros) + g - lder_ratio)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDerivative {
    pub value: f64,
    pub derivative: f64,
    pub ratio: f64,
}

/// `L(7/2)`, `L'(7/2)` and their ratio; the derivative is a central difference
/// at `h` and `h/2` combined by one Richardson step.
pub fn logderiv_at_center(ev: &Evaluator, ctx: &PrecisionContext) -> Result<LogDerivative> {
    let prec = ctx.bits();
    let at = |x: &Float| -> Result<Float> { Ok(ev.l_value(&Cx::from_real(x.clone()))?.re) };
    let s = Float::with_val(prec, CENTER_SHIFT);
    let l = at(&s)?;
    let h = Float::with_val(prec, 10f64.powi(-(ctx.digits as i32) / 4));
    let diff = |h: &Float| -> Result<Float> {
        let up = at(&Float::with_val(prec, &s + h))?;
        let dn = at(&Float::with_val(prec, &s - h))?;
        Ok((up - dn) / Float::with_val(prec, h * 2u32))
    };
    let d1 = diff(&h)?;
    let d2 = diff(&Float::with_val(prec, &h / 2u32))?;
    let d = (d2 * 4u32 - d1) / 3u32;
    let ratio = Float::with_val(prec, &d / &l);
    Ok(LogDerivative { value: l.to_f64(), derivative: d.to_f64(), ratio: ratio.to_f64() })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExplicitFormulaRow {
    pub x: f64,
    pub prime_side: f64,
    pub zero_side: f64,
    pub difference: f64,
}

/// Rows on `samples + 1` equally spaced points of `[x_lo, x_hi]`, plus the
/// left limit, half-weight value and right limit at every prime power.
pub fn emit_comparison(
    prime: &PrimeSide,
    zeros: &[f64],
    lder_ratio: f64,
    x_lo: f64,
    x_hi: f64,
    samples: usize,
) -> Result<Vec<ExplicitFormulaRow>> {
    if !(x_lo > 1.0 && x_hi > x_lo) {
        return Err(Error::InvalidArgument(format!("need 1 < x_lo < x_hi, got [{x_lo}, {x_hi}]")));
    }
    let row = |x: f64, p: f64| -> Result<ExplicitFormulaRow> {
        let z = zero_side(x, zeros, lder_ratio)?;
        Ok(ExplicitFormulaRow { x, prime_side: p, zero_side: z, difference: p - z })
    };
    let mut rows = Vec::new();
    let n = samples.max(1);
    for i in 0..=n {
        let x = if i == n { x_hi } else { x_lo + (x_hi - x_lo) * i as f64 / n as f64 };
        rows.push(row(x, prime.at(x))?);
    }
    for &(q, _) in &prime.jumps {
        let x = q as f64;
        if x < x_lo || x > x_hi {
            continue;
        }
        rows.push(row(x, prime.left(x))?);
        rows.push(row(x, prime.at(x))?);
        rows.push(row(x, prime.right(x))?);
    }
    // stable: the three rows at a jump stay in left, middle, right order
    rows.sort_by(|a, b| a.x.total_cmp(&b.x));
    Ok(rows)
}

/// Midpoints between consecutive prime powers that both lie in `[x_lo, x_hi]`.
pub fn jump_midpoints(prime: &PrimeSide, x_lo: f64, x_hi: f64) -> Vec<f64> {
    let qs: Vec<f64> = prime.jumps.iter().map(|j| j.0 as f64).filter(|&q| q >= x_lo && q <= x_hi).collect();
    qs.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
}
