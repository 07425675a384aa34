//! Scan, count and (if needed) search, reconciled into one verdict.

use super::contour::RESIDUAL_LIMIT;
use super::{count_zeros_rectangle, find_offline_zeros, scan_critical_line};
use super::{ContourConfig, RectangleCount, ScanConfig, ZeroRecord};
use crate::abel::Evaluator;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every zero counted in the rectangle lies on the line.
    RhHolds,
    /// The count is explained by on-line zeros plus off-line pairs.
    OfflineZerosFound,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::RhHolds => "rh-holds",
            Verdict::OfflineZerosFound => "offline-zeros-found",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhReport {
    pub name: String,
    pub t_max: f64,
    pub online: Vec<ZeroRecord>,
    pub rectangle: RectangleCount,
    /// Off-line zeros above the real axis right of the line; each one has
    /// a mirror image left of it.
    pub offline: Vec<ZeroRecord>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl RhReport {
    /// On-line zeros with `0 <= t <= T`.
    pub fn online_count(&self) -> usize {
        self.online.iter().filter(|z| z.im >= 0.0 && z.im <= self.t_max).count()
    }
}

/// Compare the on-line zeros up to `T` with the rectangle count and look for
/// the difference off the line.
pub fn rh_report(ev: &Evaluator, t: f64, scan: &ScanConfig, contour: &ContourConfig) -> Result<RhReport> {
    let online = scan_critical_line(ev, 0.0, t, scan)?;
    let rectangle = count_zeros_rectangle(ev, t, contour, scan)?;
    let mut notes = Vec::new();
    let on = online.len() as i64;
    let unresolved = online.iter().filter(|z| z.unresolved || z.simple == Some(false)).count();
    if unresolved > 0 {
        notes.push(format!("{unresolved} on-line zeros unresolved or not simple"));
    }
    if rectangle.residual >= RESIDUAL_LIMIT {
        notes.push(format!("count residual {:.3} too large", rectangle.residual));
    }
    let k = ev.spec.k_f64();
    notes.push(format!(
        "count covers |Re s - {}| <= {}",
        k / 2.0,
        contour.right_edge(k) - k / 2.0
    ));
    let mut offline = Vec::new();
    let verdict = if rectangle.residual >= RESIDUAL_LIMIT || unresolved > 0 {
        Verdict::Inconclusive
    } else if rectangle.count == on {
        Verdict::RhHolds
    } else if rectangle.count < on {
        notes.push(format!("{} zeros on the line but only {} counted", on, rectangle.count));
        Verdict::Inconclusive
    } else {
        offline = find_offline_zeros(ev, (k / 2.0, contour.right_edge(k)), (0.0, t), scan)?;
        let explained = on + 2 * offline.len() as i64;
        if explained == rectangle.count {
            Verdict::OfflineZerosFound
        } else {
            notes.push(format!("{} on the line plus {} pairs off it, {} counted", on, offline.len(), rectangle.count));
            Verdict::Inconclusive
        }
    };
    Ok(RhReport { name: ev.spec.name.clone(), t_max: t, online, rectangle, offline, verdict, notes })
}
