//! Continuous argument tracking of `L` along polylines, the rectangle count
//! and box winding numbers.

use super::{ContourConfig, ScanConfig};
use crate::abel::Evaluator;
use crate::error::{Error, Result};
use crate::gamma::phase_variation;
use crate::mp::Cx;
use rug::Float;
use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::f64::consts::PI;

/// Memoised `L(s)` in double precision, keyed by the exact point.
pub struct EvalCache<'e, 'a> {
    pub ev: &'e Evaluator<'a>,
    map: RefCell<HashMap<(u64, u64), (f64, f64)>>,
    evals: Cell<usize>,
}

impl<'e, 'a> EvalCache<'e, 'a> {
    pub fn new(ev: &'e Evaluator<'a>) -> Self {
        EvalCache { ev, map: RefCell::new(HashMap::new()), evals: Cell::new(0) }
    }

    pub fn evaluations(&self) -> usize {
        self.evals.get()
    }

    pub fn value(&self, p: (f64, f64)) -> Result<(f64, f64)> {
        let key = (p.0.to_bits(), p.1.to_bits());
        if let Some(v) = self.map.borrow().get(&key) {
            return Ok(*v);
        }
        let prec = self.ev.ctx.bits();
        let s = Cx::new(Float::with_val(prec, p.0), Float::with_val(prec, p.1));
        let v = self.ev.l_value(&s)?.to_f64();
        self.evals.set(self.evals.get() + 1);
        self.map.borrow_mut().insert(key, v);
        Ok(v)
    }
}

/// Result of following `arg L` along a path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArgTrack {
    pub delta: f64,
    pub min_abs: f64,
    pub start: (f64, f64),
    pub end: (f64, f64),
}

fn arg_ratio(z1: (f64, f64), z0: (f64, f64)) -> f64 {
    // arg(z1 conj z0)
    let re = z1.0 * z0.0 + z1.1 * z0.1;
    let im = z1.1 * z0.0 - z1.0 * z0.1;
    im.atan2(re)
}

fn lerp(a: (f64, f64), b: (f64, f64), u: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * u, a.1 + (b.1 - a.1) * u)
}

fn check_nonzero(p: (f64, f64), z: (f64, f64)) -> Result<f64> {
    let a = z.0.hypot(z.1);
    if a == 0.0 || !a.is_finite() {
        return Err(Error::ZeroOnContour { re: p.0, im: p.1, abs: a });
    }
    Ok(a)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    cache: &EvalCache,
    a: (f64, f64),
    b: (f64, f64),
    u0: f64,
    z0: (f64, f64),
    u1: f64,
    z1: (f64, f64),
    cap: f64,
    depth: u32,
    min_abs: &mut f64,
) -> Result<f64> {
    let d = arg_ratio(z1, z0);
    if d.abs() <= cap {
        return Ok(d);
    }
    let um = 0.5 * (u0 + u1);
    let pm = lerp(a, b, um);
    if depth > 40 {
        return Err(Error::ArgumentJump { re: pm.0, im: pm.1 });
    }
    let zm = cache.value(pm)?;
    *min_abs = min_abs.min(check_nonzero(pm, zm)?);
    Ok(refine(cache, a, b, u0, z0, um, zm, cap, depth + 1, min_abs)?
        + refine(cache, a, b, um, zm, u1, z1, cap, depth + 1, min_abs)?)
}

/// Points `a + (b - a) j / n`, computed from the lower endpoint so that a
/// segment and its reverse hit identical points.
fn segment_points(a: (f64, f64), b: (f64, f64), n: usize) -> Vec<(f64, f64)> {
    let flip = (b.0, b.1) < (a.0, a.1);
    let (lo, hi) = if flip { (b, a) } else { (a, b) };
    let mut pts: Vec<(f64, f64)> = (0..=n)
        .map(|j| {
            if j == n {
                hi
            } else {
                lerp(lo, hi, j as f64 / n as f64)
            }
        })
        .collect();
    if flip {
        pts.reverse();
    }
    pts
}

/// Change of `arg L` along the straight segment `a -> b`, starting from `n`
/// equal pieces and halving any piece whose argument step exceeds `cap`.
pub fn track_segment(cache: &EvalCache, a: (f64, f64), b: (f64, f64), n: usize, cap: f64) -> Result<ArgTrack> {
    let pts = segment_points(a, b, n.max(1));
    track_polyline(cache, &pts, cap)
}

/// Same as [`track_segment`] for consecutive points of a polyline.
pub fn track_polyline(cache: &EvalCache, pts: &[(f64, f64)], cap: f64) -> Result<ArgTrack> {
    let mut vals = Vec::with_capacity(pts.len());
    let mut min_abs = f64::INFINITY;
    for &p in pts {
        let z = cache.value(p)?;
        min_abs = min_abs.min(check_nonzero(p, z)?);
        vals.push(z);
    }
    let mut delta = 0.0;
    for i in 1..pts.len() {
        delta += refine(cache, pts[i - 1], pts[i], 0.0, vals[i - 1], 1.0, vals[i], cap, 0, &mut min_abs)?;
    }
    Ok(ArgTrack { delta, min_abs, start: vals[0], end: *vals.last().unwrap() })
}

/// Count of zeros in the rectangle `|Re s - k/2| <= delta + mu`,
/// `0 <= Im s <= T`, with every term of the bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct RectangleCount {
    pub lower_left: (f64, f64),
    pub upper_right: (f64, f64),
    pub count: i64,
    /// `(theta(T) - theta(0)) / pi`
    pub phase_term: f64,
    /// `Delta arg L / pi` along the three legs.
    pub arg_term: f64,
    /// `r/2` for the `r` real zeros inside the rectangle.
    pub real_zero_correction: f64,
    pub residual: f64,
    /// `L` at the two ends of the horizontal leg.
    pub l3_start: (f64, f64),
    pub l3_end: (f64, f64),
    pub min_abs: f64,
    pub near_miss: bool,
    /// Counts at `T + 1` and `T + 1/2`, made when this one is a near miss.
    pub retries: Vec<RectangleCount>,
    pub evaluations: usize,
}

/// Tolerated distance of the count to an integer.
pub const RESIDUAL_LIMIT: f64 = 0.05;
/// `|L|` at the end of the horizontal leg below which the count is retried.
pub const NEAR_MISS_ABS: f64 = 0.05;

fn count_once(cache: &EvalCache, t: f64, contour: &ContourConfig, cfg: &ScanConfig) -> Result<RectangleCount> {
    let ev = cache.ev;
    let spec = ev.spec;
    let ctx = &ev.ctx;
    let k = spec.k_f64();
    let c = k / 2.0;
    let right = contour.right_edge(k);
    let cap = cfg.arg_step_cap;

    let phase = phase_variation(spec, &Float::with_val(ctx.bits(), t), ctx)?.to_f64() / PI;

    // L1 along the real axis.
    let (l1_delta, r) = if spec.coeffs.real {
        // L is real there: only sign changes matter, each one a real zero
        // mirrored at k - sigma.
        let n = contour.l1_intervals * 8;
        let eps = (right - c) / n as f64 * 1e-3;
        let mut changes = 0usize;
        let mut prev: Option<f64> = None;
        for p in segment_points((c + eps, 0.0), (right, 0.0), n) {
            let z = cache.value(p)?;
            check_nonzero(p, z)?;
            if let Some(q) = prev {
                if (q < 0.0) != (z.0 < 0.0) {
                    changes += 1;
                }
            }
            prev = Some(z.0);
        }
        let central = if spec.forced_central_zero() { 1 } else { 0 };
        (0.0, central + 2 * changes)
    } else {
        let tr = track_segment(cache, (c, 0.0), (right, 0.0), contour.l1_intervals, cap)?;
        (tr.delta, 0)
    };

    // L2 on a grid aligned to l2_step so that nearby T reuse evaluations.
    let mut pts = Vec::new();
    let mut j = 0usize;
    loop {
        let y = j as f64 * contour.l2_step;
        if y >= t {
            break;
        }
        pts.push((right, y));
        j += 1;
    }
    pts.push((right, t));
    let l2 = track_polyline(cache, &pts, cap)?;
    let l3 = track_segment(cache, (right, t), (c, t), contour.l3_intervals, cap)?;

    let arg_term = (l1_delta + l2.delta + l3.delta) / PI;
    let correction = r as f64 / 2.0;
    let total = phase + arg_term + correction;
    let count = total.round() as i64;
    let residual = (total - count as f64).abs();
    let end_abs = l3.end.0.hypot(l3.end.1);
    Ok(RectangleCount {
        lower_left: (k - right, 0.0),
        upper_right: (right, t),
        count,
        phase_term: phase,
        arg_term,
        real_zero_correction: correction,
        residual,
        l3_start: l3.start,
        l3_end: l3.end,
        min_abs: l2.min_abs.min(l3.min_abs),
        near_miss: residual >= RESIDUAL_LIMIT || end_abs < NEAR_MISS_ABS,
        retries: Vec::new(),
        evaluations: 0,
    })
}

/// Rectangle count by the argument principle; near misses are retried
/// at `T + 1` and `T + 1/2`.
pub fn count_zeros_rectangle(ev: &Evaluator, t: f64, contour: &ContourConfig, cfg: &ScanConfig) -> Result<RectangleCount> {
    if t <= 0.0 {
        return Err(Error::InvalidArgument(format!("T = {t} must be positive")));
    }
    let cache = EvalCache::new(ev);
    let mut rc = count_once(&cache, t, contour, cfg)?;
    if rc.near_miss {
        for dt in [1.0, 0.5] {
            rc.retries.push(count_once(&cache, t + dt, contour, cfg)?);
        }
    }
    rc.evaluations = cache.evaluations();
    Ok(rc)
}

fn edge_count(len: f64, h: f64) -> usize {
    ((len / h).ceil() as usize).max(4).next_power_of_two()
}

/// Winding number of `L` around the box `[x0, x1] x [y0, y1]`.
pub fn winding_number(cache: &EvalCache, x0: f64, x1: f64, y0: f64, y1: f64, h: f64, cap: f64) -> Result<(i64, f64)> {
    let corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)];
    let mut total = 0.0;
    for w in corners.windows(2) {
        let len = (w[1].0 - w[0].0).abs() + (w[1].1 - w[0].1).abs();
        total += track_segment(cache, w[0], w[1], edge_count(len, h), cap)?.delta;
    }
    let turns = total / (2.0 * PI);
    let n = turns.round();
    let residual = (turns - n).abs();
    if residual > 0.1 {
        return Err(Error::WindingResidual(residual));
    }
    Ok((n as i64, residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arg_ratio_wraps() {
        let d = arg_ratio((-1.0, -1e-9), (-1.0, 1e-9));
        assert!((d - 2e-9).abs() < 1e-15);
        assert!((arg_ratio((0.0, 1.0), (1.0, 0.0)) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn segments_are_reversible() {
        let a = (2.28125, 0.0);
        let b = (4.25, 12.5);
        let mut f = segment_points(a, b, 16);
        let r = segment_points(b, a, 16);
        f.reverse();
        assert_eq!(f, r);
        assert_eq!(edge_count(2.0, 0.125), 16);
        assert_eq!(edge_count(0.1, 0.125), 4);
    }
}
