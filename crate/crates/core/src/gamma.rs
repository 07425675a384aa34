//! Complex log-gamma by upward shifting and the Stirling series, and the
//! phase `theta(t)` built from it.

use crate::error::{Error, Result};
use crate::lfunction::LFunctionSpec;
use crate::mp::{pi, Cx, PrecisionContext};
use rug::{Float, Integer, Rational};
use std::sync::OnceLock;

/// `B_2, B_4, ..., B_20` in the old notation `B_r = |B_2r|`.
const BERNOULLI_TABLE: [(i64, i64); 10] = [
    (1, 6),
    (1, 30),
    (1, 42),
    (1, 30),
    (5, 66),
    (691, 2730),
    (7, 6),
    (3617, 510),
    (43867, 798),
    (174611, 330),
];

fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// `B_0..=B_n` in the modern convention from `sum_{j<=m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::from(1)];
    for m in 1..=n {
        let mut acc = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from(bj * binomial(m as u32 + 1, j as u32));
        }
        b.push(-acc / Integer::from(m + 1));
    }
    b
}

/// `B_2r` for `r = 1..=MAX_STIRLING_TERMS`: table values, extended by the
/// recurrence.
pub fn even_bernoulli() -> &'static [Rational] {
    static CELL: OnceLock<Vec<Rational>> = OnceLock::new();
    CELL.get_or_init(|| {
        let all = bernoulli_numbers(2 * PrecisionContext::MAX_STIRLING_TERMS);
        (1..=PrecisionContext::MAX_STIRLING_TERMS)
            .map(|r| {
                if r <= BERNOULLI_TABLE.len() {
                    let (p, q) = BERNOULLI_TABLE[r - 1];
                    let v = Rational::from((p, q));
                    if r % 2 == 1 {
                        v
                    } else {
                        -v
                    }
                } else {
                    all[2 * r].clone()
                }
            })
            .collect()
    })
}

fn is_pole(z: &Cx) -> bool {
    z.im.is_zero() && z.re.is_integer() && z.re <= 0
}

/// Principal branch of `log Gamma(z)`.
pub fn log_gamma(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if is_pole(z) {
        return Err(Error::GammaPole);
    }
    let prec = ctx.bits();
    let z = z.with_prec(prec);
    let re = z.re.to_f64();
    let shift = if re < ctx.shift_threshold { (ctx.shift_threshold - re).ceil() as u32 } else { 0 };

    // Product of z, z+1, ..., z+shift-1 with its continuous argument.
    let mut w = z.clone();
    let mut prod = Cx::one(prec);
    let mut arg_sum = 0.0f64;
    for _ in 0..shift {
        arg_sum += w.im.to_f64().atan2(w.re.to_f64());
        prod = prod.mul(&w);
        w.re += 1u32;
    }

    let mut acc = stirling(&w, ctx.stirling_terms, prec);
    if shift > 0 {
        let mut lp = prod.ln();
        let two_pi = pi(prec) * 2u32;
        let m = ((arg_sum - lp.im.to_f64()) / two_pi.to_f64()).round();
        if m != 0.0 {
            lp.im += two_pi * m;
        }
        acc.sub_assign(&lp);
    }
    Ok(acc)
}

/// `(w - 1/2) ln w - w + ln(2 pi)/2 + sum_r B_2r / (2r (2r-1) w^(2r-1))`.
fn stirling(w: &Cx, terms: usize, prec: u32) -> Cx {
    let ln_w = w.ln();
    let half = Cx::from_f64(prec, 0.5, 0.0);
    let mut acc = w.sub(&half).mul(&ln_w).sub(w);
    let half_ln_2pi = (pi(prec) * 2u32).ln() / 2u32;
    acc.re += half_ln_2pi;
    let inv = w.recip();
    let inv2 = inv.sqr();
    let mut p = inv;
    for (r, b) in even_bernoulli().iter().take(terms).enumerate() {
        let r = r as u32 + 1;
        let coef = Float::with_val(prec, b) / (2 * r * (2 * r - 1));
        acc.add_assign(&p.scale(&coef));
        p = p.mul(&inv2);
    }
    acc
}

/// `Gamma(z)`.
pub fn gamma(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_gamma(z, ctx)?.exp())
}

/// Continuous phase `theta(t) = t log_scale + sum Im log Gamma(b_i s + c_i) + offset`
/// at `s = k/2 + i t`.
pub fn phase_theta(spec: &LFunctionSpec, t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let s = spec.on_line(t).with_prec(prec);
    let mut theta = Float::with_val(prec, t * &spec.gamma.log_scale);
    for g in &spec.gamma.factors {
        let z = s.scale(&g.b).add(&g.c);
        theta += log_gamma(&z, ctx)?.im;
    }
    theta += spec.phase_offset();
    Ok(theta)
}

/// `theta(t) - theta(0)`, the quantity entering the zero count.
pub fn phase_variation(spec: &LFunctionSpec, t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let zero = Float::new(ctx.bits());
    Ok(phase_theta(spec, t, ctx)? - phase_theta(spec, &zero, ctx)?)
}

/// `theta(t)` reduced to `(-pi, pi]`.
pub fn reduce_angle(theta: &Float) -> Float {
    let prec = theta.prec();
    let two_pi = pi(prec) * 2u32;
    let mut r = Float::with_val(prec, theta % &two_pi);
    let p = pi(prec);
    if r > p {
        r -= &two_pi;
    } else if r <= -p {
        r += &two_pi;
    }
    r
}

/// `e^(i theta(t))`.
pub fn rotation(spec: &LFunctionSpec, t: &Float, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(Cx::expi(&reduce_angle(&phase_theta(spec, t, ctx)?)))
}

/// `log` of the gamma part `exp(s log_scale) prod Gamma(b_i s + c_i)`.
pub fn log_gamma_part(spec: &LFunctionSpec, s: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let prec = ctx.bits();
    let s = s.with_prec(prec);
    let mut acc = s.scale(&spec.gamma.log_scale);
    for g in &spec.gamma.factors {
        let z = s.scale(&g.b).add(&g.c);
        acc.add_assign(&log_gamma(&z, ctx)?);
    }
    Ok(acc)
}

/// `R(s)` from `L(s)`.
pub fn completed_r(spec: &LFunctionSpec, s: &Cx, l_value: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(log_gamma_part(spec, s, ctx)?.exp().mul(l_value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunction::{builtin_spec, catalog};
    use crate::mp::dist;

    fn c(re: f64, im: f64, ctx: &PrecisionContext) -> Cx {
        Cx::from_f64(ctx.bits(), re, im)
    }

    #[test]
    fn table_matches_recurrence() {
        let all = bernoulli_numbers(20);
        assert_eq!(all[1], Rational::from((-1, 2)));
        for (r, &(p, q)) in BERNOULLI_TABLE.iter().enumerate() {
            let modern = &all[2 * (r + 1)];
            assert_eq!(Rational::from(modern.abs_ref()), Rational::from((p, q)));
        }
        for r in 1..=20 {
            assert_eq!(even_bernoulli()[r - 1], bernoulli_numbers(40)[2 * r]);
        }
        for n in (3..40).step_by(2) {
            assert_eq!(bernoulli_numbers(40)[n], 0);
        }
    }

    #[test]
    fn special_values() {
        let ctx = PrecisionContext::new(50);
        let tol = 1e-48;
        assert!(log_gamma(&c(1.0, 0.0, &ctx), &ctx).unwrap().abs().to_f64() < tol);
        assert!(log_gamma(&c(2.0, 0.0, &ctx), &ctx).unwrap().abs().to_f64() < tol);
        let half = log_gamma(&c(0.5, 0.0, &ctx), &ctx).unwrap();
        let expect = Cx::from_real(pi(ctx.bits()).ln() / 2u32);
        assert!(dist(&half, &expect) < tol);
        // Gamma(5) = 24
        let g5 = gamma(&c(5.0, 0.0, &ctx), &ctx).unwrap();
        assert!(dist(&g5, &c(24.0, 0.0, &ctx)) < 1e-45);
        assert_eq!(log_gamma(&c(-3.0, 0.0, &ctx), &ctx), Err(Error::GammaPole));
        assert_eq!(log_gamma(&c(0.0, 0.0, &ctx), &ctx), Err(Error::GammaPole));
    }

    fn recurrence_residual(z: &Cx, ctx: &PrecisionContext) -> f64 {
        // log Gamma(z+1) - log Gamma(z) - log z is 0 on the principal branch
        let one = Cx::one(ctx.bits());
        let a = log_gamma(&z.add(&one), ctx).unwrap();
        let b = log_gamma(z, ctx).unwrap();
        dist(&a.sub(&b).sub(&z.ln()), &Cx::zero(ctx.bits()))
    }

    #[test]
    fn recurrence_oracle() {
        let ctx = PrecisionContext::default();
        let z = c(4.0, 100.0, &ctx);
        let eps = 10f64.powi(-(ctx.digits as i32 - 5));
        assert!(recurrence_residual(&z, &ctx) < eps);
        let ga = gamma(&z.add(&Cx::one(ctx.bits())), &ctx).unwrap();
        let gb = gamma(&z, &ctx).unwrap().mul(&z);
        assert!(dist(&ga, &gb) / ga.abs().to_f64() < eps);
        for (re, im) in [(-2.5, 0.3), (0.25, -7.0), (17.0, 11.0), (-30.5, 40.0), (200.0, 1.0)] {
            assert!(recurrence_residual(&c(re, im, &ctx), &ctx) < eps, "{re} {im}");
        }
    }

    #[test]
    fn ten_terms_reach_forty_digits() {
        let ctx = PrecisionContext::ten_terms(60);
        for (re, im) in [(4.0, 100.0), (0.5, 15.0), (-3.0, 2.0), (1.0, 0.0)] {
            assert!(recurrence_residual(&c(re, im, &ctx), &ctx) < 1e-40);
        }
    }

    #[test]
    fn deep_shift_agrees() {
        let ctx = PrecisionContext::new(40);
        let deep = PrecisionContext { shift_threshold: 200.0, ..ctx };
        let mut x = 0.37f64;
        for _ in 0..50 {
            x = (x * 7919.0 + 0.123).fract();
            let re = -3.0 + 8.0 * x;
            let y = (x * 104729.0).fract();
            let im = (2.0 * y - 1.0) * (1600.0 - re * re).max(0.0).sqrt();
            let z = c(re, im, &ctx);
            if is_pole(&z) {
                continue;
            }
            let a = gamma(&z, &ctx).unwrap();
            let b = gamma(&z, &deep).unwrap();
            assert!(dist(&a, &b) <= 10f64.powi(-(ctx.digits as i32 - 8)) * a.abs().to_f64(), "{re} {im}");
        }
    }

    #[test]
    fn argument_is_continuous_across_shifts() {
        // Im log Gamma(1/2 + it) increases smoothly through the branch line of
        // the shifted product.
        let ctx = PrecisionContext::new(30);
        let mut prev = log_gamma(&c(0.5, 0.0, &ctx), &ctx).unwrap().im.to_f64();
        for i in 1..=400 {
            let t = i as f64 * 0.25;
            let v = log_gamma(&c(0.5, t, &ctx), &ctx).unwrap().im.to_f64();
            // d/dt Im log Gamma(1/2 + it) = Re psi ~ ln t
            let bound = 0.25 * ((t + 2.0).ln() + 2.0);
            assert!((v - prev).abs() < bound, "t = {t}");
            prev = v;
        }
    }

    #[test]
    fn phase_values() {
        let ctx = PrecisionContext::new(30);
        let hundred = Float::with_val(ctx.bits(), 100);
        let p = std::f64::consts::PI;
        let f = builtin_spec(&"s8f".parse().unwrap(), 2, &ctx).unwrap();
        let th = phase_theta(&f, &hundred, &ctx).unwrap().to_f64() / p;
        assert!((th - 69.0171).abs() < 2e-4, "{th}");
        let g = builtin_spec(&"s92g".parse().unwrap(), 2, &ctx).unwrap();
        let th = phase_theta(&g, &hundred, &ctx).unwrap().to_f64() / p;
        assert!((th - 79.1885).abs() < 2e-4, "{th}");
        let h = builtin_spec(&"hecke:2:1:0".parse().unwrap(), 2, &ctx).unwrap();
        let th = phase_variation(&h, &hundred, &ctx).unwrap().to_f64() / p;
        assert!((th - 84.8864).abs() < 2e-4, "{th}");
        let th = phase_variation(&h, &Float::with_val(ctx.bits(), 101), &ctx).unwrap().to_f64() / p;
        assert!((th - 86.0881).abs() < 2e-4, "{th}");
    }

    #[test]
    fn phase_is_lipschitz() {
        let ctx = PrecisionContext::new(25);
        let h = 1e-3;
        for e in catalog() {
            let spec = builtin_spec(&e, 2, &ctx).unwrap();
            let kk = spec.k_f64() / 2.0;
            let bound: f64 = spec
                .gamma
                .factors
                .iter()
                .map(|g| {
                    let b = g.b.to_f64();
                    let (cr, ci) = g.c.to_f64();
                    b * ((b * kk + cr).hypot(b * 100.0 + ci) + 2.0).ln()
                })
                .sum::<f64>()
                + spec.gamma.log_scale.to_f64().abs();
            for i in 0..20 {
                let t = i as f64 * 5.0 + 0.37;
                let a = phase_theta(&spec, &Float::with_val(ctx.bits(), t), &ctx).unwrap();
                let b = phase_theta(&spec, &Float::with_val(ctx.bits(), t + h), &ctx).unwrap();
                assert!((b - a).to_f64().abs() <= bound * h, "{e} t = {t}");
            }
        }
    }

    #[test]
    fn reduced_angle_range() {
        let p = pi(64);
        for x in [-20.0, -3.2, 0.0, 3.1, 3.2, 100.0] {
            let r = reduce_angle(&Float::with_val(64, x)).to_f64();
            assert!(r > -p.to_f64() && r <= p.to_f64());
            assert!(((x - r) / (2.0 * std::f64::consts::PI)).fract().abs() < 1e-12);
        }
    }
}
