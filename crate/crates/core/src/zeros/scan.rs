//! Sign changes of the rotated value `Z(t)` along the critical line.

use super::{ScanConfig, ZeroMethod, ZeroRecord};
use crate::abel::{split_parity, Evaluator};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
struct Sample {
    t: f64,
    z: f64,
    /// Off-parity magnitude at the top level; zero up to evaluation error.
    noise: f64,
}

fn sample(ev: &Evaluator, t: f64) -> Result<Sample> {
    let r = ev.eval_on_line(t)?;
    let (on, off) = split_parity(&r.value, ev.spec.parity);
    Ok(Sample { t, z: on.to_f64(), noise: off.abs().to_f64() })
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| if i == n { b } else { a + (b - a) * i as f64 / n as f64 }).collect()
}

fn differs(a: f64, b: f64) -> bool {
    (a < 0.0) != (b < 0.0)
}

/// A local minimum of `|Z|` whose parabola through three neighbours dips
/// to a quarter of the middle value or crosses zero.
fn suspicious(a: &Sample, m: &Sample, b: &Sample) -> bool {
    if differs(a.z, m.z) || differs(m.z, b.z) {
        return false;
    }
    if !(m.z.abs() < a.z.abs() && m.z.abs() < b.z.abs()) {
        return false;
    }
    let curv = b.z - 2.0 * m.z + a.z;
    if curv == 0.0 {
        return false;
    }
    let vertex = m.z - (b.z - a.z).powi(2) / (8.0 * curv);
    differs(vertex, m.z) || vertex.abs() <= 0.25 * m.z.abs()
}

const MAX_DEPTH: u32 = 3;

fn brackets(ev: &Evaluator, ts: &[f64], depth: u32, out: &mut Vec<(Sample, Sample)>) -> Result<()> {
    let s: Vec<Sample> = ts.iter().map(|&t| sample(ev, t)).collect::<Result<_>>()?;
    for w in s.windows(2) {
        if differs(w[0].z, w[1].z) {
            out.push((w[0], w[1]));
        }
    }
    if depth < MAX_DEPTH {
        for w in s.windows(3) {
            if suspicious(&w[0], &w[1], &w[2]) {
                brackets(ev, &linspace(w[0].t, w[2].t, 16), depth + 1, out)?;
            }
        }
    }
    Ok(())
}

/// Illinois iteration on a sign-change bracket, then one secant step.
fn refine(ev: &Evaluator, mut a: Sample, mut b: Sample, tol: f64) -> Result<(Sample, Sample, f64)> {
    let mut fa = a.z;
    let mut fb = b.z;
    for _ in 0..200 {
        if (b.t - a.t).abs() <= tol {
            break;
        }
        let mut t = (a.t * fb - b.t * fa) / (fb - fa);
        if !(t > a.t.min(b.t) && t < a.t.max(b.t)) {
            t = 0.5 * (a.t + b.t);
        }
        let c = sample(ev, t)?;
        if c.z == 0.0 {
            return Ok((c, c, t));
        }
        if differs(c.z, fb) {
            a = b;
            fa = fb;
        } else {
            fa *= 0.5;
        }
        b = c;
        fb = c.z;
    }
    let t = if a.z != b.z { (a.t * b.z - b.t * a.z) / (b.z - a.z) } else { 0.5 * (a.t + b.t) };
    let (lo, hi) = if a.t < b.t { (a, b) } else { (b, a) };
    Ok((lo, hi, t.clamp(lo.t, hi.t)))
}

fn scan_piece(ev: &Evaluator, lo: f64, hi: f64, cfg: &ScanConfig, out: &mut Vec<ZeroRecord>) -> Result<()> {
    if hi <= lo {
        return Ok(());
    }
    let n = ((hi - lo) / cfg.step).ceil().max(1.0) as usize;
    let mut found = Vec::new();
    brackets(ev, &linspace(lo, hi, n), 0, &mut found)?;
    for (a, b) in found {
        let gauge = 10.0 * a.noise.max(b.noise);
        let unresolved = a.z.abs() < gauge && b.z.abs() < gauge;
        let (l, r, t) = refine(ev, a, b, cfg.refine_tol)?;
        let at = sample(ev, t)?;
        let h = 0.25 * cfg.step;
        let d = sample(ev, t + h)?.z - sample(ev, t - h)?.z;
        out.push(ZeroRecord {
            re: ev.spec.k_f64() / 2.0,
            im: t,
            on_line: true,
            tolerance: (r.t - l.t).abs().max(cfg.refine_tol),
            index: 0,
            method: ZeroMethod::SignChange,
            residual: at.z.abs(),
            unresolved,
            simple: Some(d.abs() > 10.0 * (at.noise + gauge)),
        });
    }
    Ok(())
}

/// Zeros of `Z(t)` for `t0 <= t <= t1`, sorted by `t`.
///
/// Positive ordinates (and a forced central zero) are numbered from 1 upwards,
/// negative ones from -1 downwards.
pub fn scan_critical_line(ev: &Evaluator, t0: f64, t1: f64, cfg: &ScanConfig) -> Result<Vec<ZeroRecord>> {
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::InvalidArgument(format!("empty range [{t0}, {t1}]")));
    }
    if !(cfg.step > 0.0) {
        return Err(Error::InvalidArgument(format!("step {} must be positive", cfg.step)));
    }
    let mut out = Vec::new();
    let central = ev.spec.forced_central_zero() && t0 <= 0.0 && 0.0 <= t1;
    if central {
        // Z vanishes identically at t = 0: scan from just beside it.
        let eps = 1e-3 * cfg.step;
        scan_piece(ev, t0, -eps, cfg, &mut out)?;
        scan_piece(ev, eps, t1, cfg, &mut out)?;
        out.push(ZeroRecord {
            re: ev.spec.k_f64() / 2.0,
            im: 0.0,
            on_line: true,
            tolerance: 0.0,
            index: 0,
            method: ZeroMethod::Central,
            residual: 0.0,
            unresolved: false,
            simple: None,
        });
    } else {
        scan_piece(ev, t0, t1, cfg, &mut out)?;
    }
    out.sort_by(|a, b| a.im.total_cmp(&b.im));
    number(&mut out);
    Ok(out)
}

fn number(zs: &mut [ZeroRecord]) {
    let first = zs.iter().position(|z| z.im >= 0.0).unwrap_or(zs.len());
    for (i, z) in zs[first..].iter_mut().enumerate() {
        z.index = i as i64 + 1;
    }
    for (i, z) in zs[..first].iter_mut().rev().enumerate() {
        z.index = -(i as i64) - 1;
    }
}
