//! Zeros off the critical line by recursive winding numbers and Newton.

use super::contour::{winding_number, EvalCache};
use super::{ScanConfig, ZeroMethod, ZeroRecord};
use crate::abel::Evaluator;
use crate::error::{Error, Result};
use crate::mp::Cx;
use rug::Float;

/// Distance kept between the search region and the critical line.
pub const LINE_MARGIN: f64 = 1.0 / 32.0;
/// Boxes at most this large with winding 1 go to Newton.
const NEWTON_BOX: f64 = 0.5;
/// Boxes are not split below this size.
const MIN_BOX: f64 = 1e-6;
/// Initial sampling of box edges.
const EDGE_STEP: f64 = 0.125;

#[derive(Clone, Copy, Debug)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn size(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        self.x0 < x && x < self.x1 && self.y0 < y && y < self.y1
    }

    fn halves(&self) -> (Rect, Rect) {
        if self.x1 - self.x0 >= self.y1 - self.y0 {
            let m = 0.5 * (self.x0 + self.x1);
            (Rect { x1: m, ..*self }, Rect { x0: m, ..*self })
        } else {
            let m = 0.5 * (self.y0 + self.y1);
            (Rect { y1: m, ..*self }, Rect { y0: m, ..*self })
        }
    }
}

struct Search<'c, 'e, 'a> {
    cache: &'c EvalCache<'e, 'a>,
    cap: f64,
    found: Vec<ZeroRecord>,
}

impl Search<'_, '_, '_> {
    fn winding(&self, r: &Rect) -> Result<i64> {
        Ok(winding_number(self.cache, r.x0, r.x1, r.y0, r.y1, EDGE_STEP.min(r.size() / 4.0), self.cap)?.0)
    }

    fn visit(&mut self, r: Rect, w: i64) -> Result<()> {
        if w <= 0 {
            return Ok(());
        }
        if w == 1 && r.size() <= NEWTON_BOX {
            if let Some(z) = newton(self.cache, &r, self.cap)? {
                self.found.push(z);
                return Ok(());
            }
        }
        if r.size() < MIN_BOX {
            for _ in 0..w {
                self.found.push(ZeroRecord {
                    re: 0.5 * (r.x0 + r.x1),
                    im: 0.5 * (r.y0 + r.y1),
                    on_line: false,
                    tolerance: r.size(),
                    index: 0,
                    method: ZeroMethod::WindingBox,
                    residual: f64::NAN,
                    unresolved: w > 1,
                    simple: Some(w == 1),
                });
            }
            return Ok(());
        }
        let (a, b) = r.halves();
        let wa = self.winding(&a)?;
        self.visit(a, wa)?;
        self.visit(b, w - wa)
    }
}

/// Newton from the centre of `r`; a root inside `r` is accepted once a
/// small box around it winds exactly once.
fn newton(cache: &EvalCache, r: &Rect, cap: f64) -> Result<Option<ZeroRecord>> {
    let ev = cache.ev;
    let prec = ev.ctx.bits();
    let h = Float::with_val(prec, 10.0f64.powi(-(ev.ctx.digits as i32) / 3));
    let hr = Cx::new(h.clone(), Float::new(prec));
    let mut s = Cx::from_f64(prec, 0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1));
    let two_h = Float::with_val(prec, &h * 2u32);
    // the evaluation itself is rarely better than this
    let target = ev.ctx.eps().max(1e-20);
    let mut last = f64::INFINITY;
    for _ in 0..60 {
        let f = ev.l_value(&s)?;
        let d = ev.l_value(&s.add(&hr))?.sub(&ev.l_value(&s.sub(&hr))?).scale(&Float::with_val(prec, two_h.recip_ref()));
        if d.is_zero() {
            return Ok(None);
        }
        let step = f.div(&d);
        s = s.sub(&step);
        let (x, y) = s.to_f64();
        if !r.contains(x, y) {
            return Ok(None);
        }
        last = step.abs().to_f64();
        if last < target * (1.0 + y.abs()) {
            break;
        }
    }
    if !(last < 1e-12) {
        return Ok(None);
    }
    let (x, y) = s.to_f64();
    let rad = 1e-4f64.min(0.5 * [x - r.x0, r.x1 - x, y - r.y0, r.y1 - y].into_iter().fold(f64::INFINITY, f64::min));
    let (w, _) = winding_number(cache, x - rad, x + rad, y - rad, y + rad, rad / 2.0, cap)?;
    if w != 1 {
        return Ok(None);
    }
    let residual = ev.l_value(&s)?.abs().to_f64();
    Ok(Some(ZeroRecord {
        re: x,
        im: y,
        on_line: false,
        tolerance: last.max(4.0 * f64::EPSILON * (1.0 + y.abs())),
        index: 0,
        method: ZeroMethod::Newton,
        residual,
        unresolved: false,
        simple: Some(true),
    }))
}

/// Zeros of `L` with `re.0 <= Re s <= re.1`, `im.0 <= Im s <= im.1`.
///
/// The left edge is moved to `k/2 + 1/32` when it lies closer to the line,
/// where on-line zeros would otherwise sit on or near the contour.
pub fn find_offline_zeros(ev: &Evaluator, re: (f64, f64), im: (f64, f64), cfg: &ScanConfig) -> Result<Vec<ZeroRecord>> {
    let c = ev.spec.k_f64() / 2.0;
    let x0 = re.0.max(c + LINE_MARGIN);
    if !(re.1 > x0) || !(im.1 > im.0) {
        return Err(Error::InvalidArgument(format!(
            "empty search region [{}, {}] x [{}, {}]",
            x0, re.1, im.0, im.1
        )));
    }
    let cache = EvalCache::new(ev);
    let mut search = Search { cache: &cache, cap: cfg.arg_step_cap, found: Vec::new() };
    let root = Rect { x0, x1: re.1, y0: im.0, y1: im.1 };
    let w = search.winding(&root)?;
    search.visit(root, w)?;
    let mut out = search.found;
    out.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    Ok(out)
}
