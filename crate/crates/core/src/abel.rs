//! Repeated Abel partial summation.
//!
//! With `b_n = a_n n^-v`, `s' = s - v`, the level-`l` approximation is
//!
//! ```text
//! S^(0) = sum_{n<=N} b_n n^-s'
//! S^(l) = S^(l-1) - s_N^(l) u_{N+1}^(l-1)
//! ```
//!
//! where `s_n^(l)` are iterated partial sums of `b` and `u^(l)` iterated
//! forward differences of `n^-s'`. Only `s_N^(l)` is needed, so the state
//! keeps the last entry of each level rather than the whole table.

use crate::arith::spf_sieve;
use crate::coefficients::DirichletCoefficients;
use crate::error::{Error, Result};
use crate::gamma::rotation;
use crate::lfunction::{LFunctionSpec, Parity};
use crate::mp::{Cx, PrecisionContext};
use rug::{Float, Integer};

pub const DEFAULT_L_TRUNC: usize = 100;

/// Tops `s_N^(l)` of the partial-sum pyramid for `l = 0..=l_max`.
#[derive(Clone, Debug)]
pub struct AbelState {
    pub n: usize,
    pub l_max: usize,
    pub v: f64,
    /// `b_1..b_N` (index 0 is `b_1`).
    pub b: Vec<Cx>,
    pub tops: Vec<Cx>,
    pub real: bool,
}

/// `b_n = a_n n^-v` and the tops of the iterated partial sums.
pub fn build_state(coeffs: &DirichletCoefficients, n: usize, l_max: usize, v: f64, prec: u32) -> Result<AbelState> {
    if n > coeffs.len() {
        return Err(Error::NotEnoughCoefficients { needed: n, available: coeffs.len() });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let b: Vec<Cx> = (1..=n)
        .map(|k| {
            let a = coeffs.a(k).with_prec(prec);
            if v == 0.0 {
                a
            } else {
                let w = (Float::with_val(prec, k).ln() * -v).exp();
                a.scale(&w)
            }
        })
        .collect();
    let real = coeffs.real;
    let mut work = b.clone();
    let mut tops = Vec::with_capacity(l_max + 1);
    tops.push(work[n - 1].clone());
    for _ in 1..=l_max {
        for i in 1..n {
            let (head, tail) = work.split_at_mut(i);
            let prev = &head[i - 1];
            tail[0].re += &prev.re;
            if !real {
                tail[0].im += &prev.im;
            }
        }
        tops.push(work[n - 1].clone());
    }
    Ok(AbelState { n, l_max, v, b, tops, real })
}

/// `sum_{m=1}^{l} (-1)^m C(l, m) m^k` for `k = 0..=l_trunc`.
pub fn difference_coefficients(l: usize, l_trunc: usize) -> Vec<Integer> {
    let mut out = Vec::with_capacity(l_trunc + 1);
    for k in 0..=l_trunc {
        let mut acc = Integer::new();
        for m in 1..=l {
            let t = Integer::from(Integer::binomial_u(l as u32, m as u32)) * Integer::from(Integer::u_pow_u(m as u32, k as u32));
            if m % 2 == 1 {
                acc -= t;
            } else {
                acc += t;
            }
        }
        out.push(acc);
    }
    out
}

/// Precomputed pieces shared by every tail evaluation.
#[derive(Clone, Debug)]
pub struct TailTable {
    pub l_trunc: usize,
    /// `co[l][k]` for `l = 1..=l_max` (row 0 unused).
    co: Vec<Vec<Float>>,
}

impl TailTable {
    pub fn new(l_max: usize, l_trunc: usize, prec: u32) -> Self {
        let mut co = vec![Vec::new()];
        for l in 1..=l_max {
            co.push(
                difference_coefficients(l, l_trunc)
                    .iter()
                    .map(|c| Float::with_val(prec, c))
                    .collect(),
            );
        }
        TailTable { l_trunc, co }
    }

    pub fn l_max(&self) -> usize {
        self.co.len() - 1
    }

    /// `u_m^(l)` for `l = 1..=l_max` at a single `m`, plus the truncation
    /// bound of each.
    pub fn tails(&self, m: usize, s: &Cx) -> Result<(Vec<Cx>, Vec<f64>)> {
        let prec = s.prec();
        let lt = self.l_trunc;
        let (sr, si) = s.to_f64();
        if sr < -(lt as f64) - 1.0 {
            return Err(Error::TruncationBound(sr));
        }
        let mf = Float::with_val(prec, m);
        let ln_m = mf.clone().ln();
        let m_pow = Cx::new(-(s.re.clone()) * &ln_m, -(s.im.clone()) * &ln_m).exp();
        // w_k = (-1)^k (s)_k / k! m^-k
        let inv_m = Float::with_val(prec, 1) / &mf;
        let mut w = Vec::with_capacity(lt + 1);
        w.push(Cx::one(prec));
        for k in 1..=lt {
            let mut f = s.clone();
            f.re += (k - 1) as u32;
            let scale = Float::with_val(prec, &inv_m / k as u32);
            let next = w[k - 1].mul(&f).scale(&scale).neg();
            w.push(next);
        }
        let mut out = Vec::with_capacity(self.l_max());
        let mut bounds = Vec::with_capacity(self.l_max());
        // log |s (s+1) ... (s+L)| / (L+1)!
        let mut log_poch = 0.0f64;
        for k in 0..=lt {
            log_poch += ((sr + k as f64).hypot(si)).ln() - ((k + 1) as f64).ln();
        }
        let mf64 = m as f64;
        for l in 1..=self.l_max() {
            let row = &self.co[l];
            let mut re = Float::new(prec);
            let mut im = Float::new(prec);
            for k in l..=lt {
                re += Float::with_val(prec, &row[k] * &w[k].re);
                im += Float::with_val(prec, &row[k] * &w[k].im);
            }
            out.push(Cx::new(re, im).mul(&m_pow));
            let log_b = l as f64 * 2f64.ln() + log_poch + (lt + 1) as f64 * (l as f64 / mf64).ln() - sr * mf64.ln();
            bounds.push(log_b.exp());
        }
        Ok((out, bounds))
    }
}

/// Single tail `u_m^(l)` with its truncation bound.
pub fn tail_u(m: usize, l: usize, s: &Cx, l_trunc: usize) -> Result<(Cx, f64)> {
    if l == 0 || m <= l || l_trunc < l {
        return Err(Error::InvalidArgument(format!("tail needs m > l >= 1, got m = {m}, l = {l}")));
    }
    let t = TailTable::new(l, l_trunc, s.prec());
    let (mut v, mut b) = t.tails(m, s)?;
    Ok((v.pop().unwrap(), b.pop().unwrap()))
}

#[derive(Clone, Debug)]
pub struct EvalResult {
    pub s: Cx,
    /// `S_N^(0..=l)` before rotation.
    pub per_level: Vec<Cx>,
    /// `e^(i theta) S_N^(l)` when `s` is on the critical line.
    pub rotated: Option<Vec<Cx>>,
    /// Requested level, rotated when on the line.
    pub value: Cx,
    /// Largest off-parity component over the last six levels.
    pub error_gauge: Option<f64>,
    /// Truncation bound of the tails used at the top level.
    pub tail_bound: f64,
}

impl EvalResult {
    pub fn level(&self, l: usize) -> &Cx {
        match &self.rotated {
            Some(r) => &r[l],
            None => &self.per_level[l],
        }
    }
}

/// On-parity and off-parity parts of a rotated value.
pub fn split_parity(z: &Cx, parity: Parity) -> (Float, Float) {
    match parity {
        Parity::RealOnLine => (z.re.clone(), z.im.clone()),
        Parity::ImaginaryOnLine => (z.im.clone(), z.re.clone()),
    }
}

/// Evaluator for one spec at fixed `N`, `l` and `v`.
pub struct Evaluator<'a> {
    pub spec: &'a LFunctionSpec,
    pub ctx: PrecisionContext,
    pub state: AbelState,
    pub l: usize,
    tails: TailTable,
    spf: Vec<u32>,
    ln: Vec<Option<Float>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(spec: &'a LFunctionSpec, n: usize, l: usize, ctx: &PrecisionContext) -> Result<Self> {
        Self::with_options(spec, n, l, spec.v_shift, DEFAULT_L_TRUNC, ctx)
    }

    pub fn with_options(
        spec: &'a LFunctionSpec,
        n: usize,
        l: usize,
        v: f64,
        l_trunc: usize,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        if l >= n {
            return Err(Error::InvalidArgument(format!("level {l} needs N > {l}")));
        }
        if l > l_trunc {
            return Err(Error::InvalidArgument(format!("level {l} above tail truncation {l_trunc}")));
        }
        let prec = ctx.bits();
        let state = build_state(&spec.coeffs, n, l, v, prec)?;
        let spf = spf_sieve(n + 1);
        let ln = (0..=n)
            .map(|p| {
                if p >= 2 && spf[p] as usize == p {
                    Some(Float::with_val(prec, p).ln())
                } else {
                    None
                }
            })
            .collect();
        Ok(Evaluator { spec, ctx: *ctx, state, l, tails: TailTable::new(l.max(1), l_trunc, prec), spf, ln })
    }

    pub fn n(&self) -> usize {
        self.state.n
    }

    fn prec(&self) -> u32 {
        self.ctx.bits()
    }

    /// `sum_{n<=N} b_n n^-s'`.
    fn head(&self, sp: &Cx) -> Cx {
        let prec = self.prec();
        let n = self.state.n;
        let mut pow: Vec<Cx> = Vec::with_capacity(n + 1);
        pow.push(Cx::zero(prec));
        pow.push(Cx::one(prec));
        let mut re = Float::with_val(prec, &self.state.b[0].re);
        let mut im = Float::with_val(prec, &self.state.b[0].im);
        for k in 2..=n {
            let p = self.spf[k] as usize;
            let z = if p == k {
                let lnp = self.ln[k].as_ref().unwrap();
                let mag = (-Float::with_val(prec, &sp.re * lnp)).exp();
                let ang = -Float::with_val(prec, &sp.im * lnp);
                let (sin, cos) = ang.sin_cos(Float::new(prec));
                Cx::new(cos * &mag, sin * mag)
            } else {
                pow[p].mul(&pow[k / p])
            };
            let b = &self.state.b[k - 1];
            if self.state.real {
                re += Float::with_val(prec, &b.re * &z.re);
                im += Float::with_val(prec, &b.re * &z.im);
            } else {
                let t = b.mul(&z);
                re += &t.re;
                im += &t.im;
            }
            pow.push(z);
        }
        Cx::new(re, im)
    }

    /// `S_N^(0..=l)` at `s`, with the truncation bound of the last tail.
    pub fn levels(&self, s: &Cx) -> Result<(Vec<Cx>, f64)> {
        let prec = self.prec();
        let s = s.with_prec(prec);
        let mut sp = s.clone();
        sp.re -= self.state.v;
        let n = self.state.n;
        let mut out = Vec::with_capacity(self.l + 1);
        out.push(self.head(&sp));
        if self.l == 0 {
            return Ok((out, 0.0));
        }
        // u_{N+1}^(0) = (N+1)^-s'
        let ln_n1 = Float::with_val(prec, n + 1).ln();
        let u0 = Cx::new(-(sp.re.clone()) * &ln_n1, -(sp.im.clone()) * &ln_n1).exp();
        let (us, bounds) = if self.l >= 2 { self.tails.tails(n + 1, &sp)? } else { (Vec::new(), Vec::new()) };
        let mut bound = 0.0f64;
        for l in 1..=self.l {
            let u = if l == 1 { &u0 } else { &us[l - 2] };
            if l >= 2 {
                bound = bound.max(bounds[l - 2]);
            }
            let next = out[l - 1].sub(&self.state.tops[l].mul(u));
            out.push(next);
        }
        Ok((out, bound))
    }

    /// Raw `S_N^(l)` at `s`, an approximation to `L(s)`.
    pub fn l_value(&self, s: &Cx) -> Result<Cx> {
        let (mut v, _) = self.levels(s)?;
        Ok(v.pop().unwrap())
    }

    /// Full evaluation; values on the critical line are rotated by
    /// `e^(i theta(t))`.
    pub fn eval(&self, s: &Cx) -> Result<EvalResult> {
        let (per_level, tail_bound) = self.levels(s)?;
        let prec = self.prec();
        let center = self.spec.center();
        let on_line = Float::with_val(prec, &s.re - &center).abs().to_f64() < self.ctx.eps();
        let (rotated, error_gauge) = if on_line {
            let rot = rotation(self.spec, &s.im, &self.ctx)?;
            let r: Vec<Cx> = per_level.iter().map(|z| z.mul(&rot)).collect();
            let lo = self.l.saturating_sub(5);
            let g = r[lo..]
                .iter()
                .map(|z| split_parity(z, self.spec.parity).1.abs().to_f64())
                .fold(0.0, f64::max);
            (Some(r), Some(g))
        } else {
            (None, None)
        };
        let value = match &rotated {
            Some(r) => r[self.l].clone(),
            None => per_level[self.l].clone(),
        };
        Ok(EvalResult { s: s.with_prec(prec), per_level, rotated, value, error_gauge, tail_bound })
    }

    /// Evaluate at `k/2 + i t`.
    pub fn eval_on_line(&self, t: f64) -> Result<EvalResult> {
        let s = self.spec.on_line(&Float::with_val(self.prec(), t));
        self.eval(&s)
    }

    /// The real-valued `e^(i theta) L` on the critical line at level `l`.
    pub fn z_value(&self, t: f64) -> Result<f64> {
        let r = self.eval_on_line(t)?;
        Ok(split_parity(&r.value, self.spec.parity).0.to_f64())
    }
}

/// One-shot evaluation.
pub fn evaluate(spec: &LFunctionSpec, s: &Cx, n: usize, l: usize, ctx: &PrecisionContext) -> Result<EvalResult> {
    Evaluator::new(spec, n, l, ctx)?.eval(s)
}

/// Grid `t_lo, t_lo + step, ..., t_hi`.
pub fn grid(t_lo: f64, t_hi: f64, step: f64) -> Vec<f64> {
    let count = ((t_hi - t_lo) / step).round() as usize;
    (0..=count).map(|i| t_lo + i as f64 * step).collect()
}

/// Ratios of the on-parity deviation from a reference evaluation to the
/// off-parity magnitude, maximised over a grid, one per requested level.
#[allow(clippy::too_many_arguments)]
pub fn error_ratios(
    spec: &LFunctionSpec,
    t_lo: f64,
    t_hi: f64,
    step: f64,
    n: usize,
    levels: &[usize],
    ref_n: usize,
    ref_l: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<f64>> {
    let l_top = levels.iter().copied().max().unwrap_or(0);
    let ev = Evaluator::new(spec, n, l_top, ctx)?;
    let reference = Evaluator::new(spec, ref_n, ref_l, ctx)?;
    let mut num = vec![0.0f64; levels.len()];
    let mut den = vec![0.0f64; levels.len()];
    for t in grid(t_lo, t_hi, step) {
        let r = ev.eval_on_line(t)?;
        let rot = r.rotated.as_ref().unwrap();
        let truth = split_parity(&reference.eval_on_line(t)?.value, spec.parity).0;
        for (i, &l) in levels.iter().enumerate() {
            let (on, off) = split_parity(&rot[l], spec.parity);
            num[i] = num[i].max(Float::with_val(ctx.bits(), on - &truth).abs().to_f64());
            den[i] = den[i].max(off.abs().to_f64());
        }
    }
    Ok(num.iter().zip(&den).map(|(a, b)| if *a == 0.0 { 0.0 } else { a / b }).collect())
}

/// Single-level form of [`error_ratios`].
#[allow(clippy::too_many_arguments)]
pub fn error_ratio(
    spec: &LFunctionSpec,
    t_lo: f64,
    t_hi: f64,
    step: f64,
    n: usize,
    l: usize,
    ref_n: usize,
    ref_l: usize,
    ctx: &PrecisionContext,
) -> Result<f64> {
    Ok(error_ratios(spec, t_lo, t_hi, step, n, &[l], ref_n, ref_l, ctx)?[0])
}
