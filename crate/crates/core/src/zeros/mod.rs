//! Zeros on and off the critical line.

mod contour;
mod offline;
mod report;
mod scan;

pub use contour::{
    count_zeros_rectangle, track_segment, winding_number, ArgTrack, EvalCache, RectangleCount, NEAR_MISS_ABS, RESIDUAL_LIMIT,
};
pub use offline::find_offline_zeros;
pub use report::{rh_report, RhReport, Verdict};
pub use scan::scan_critical_line;

use crate::coefficients::Family;
use crate::lfunction::CatalogEntry;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMethod {
    SignChange,
    WindingBox,
    Newton,
    /// Forced by the sign of the functional equation.
    Central,
}

impl ZeroMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroMethod::SignChange => "sign-change",
            ZeroMethod::WindingBox => "winding-box",
            ZeroMethod::Newton => "newton",
            ZeroMethod::Central => "central",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroRecord {
    pub re: f64,
    pub im: f64,
    pub on_line: bool,
    pub tolerance: f64,
    /// Ordinal along the line, negative below the real axis; 0 off the line.
    pub index: i64,
    pub method: ZeroMethod,
    /// `|value|` at the reported point.
    pub residual: f64,
    /// The sign change could not be separated from evaluation noise.
    pub unresolved: bool,
    /// `None` when simplicity was not checked.
    pub simple: Option<bool>,
}

/// Evaluation and refinement knobs shared by scan, count and search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanConfig {
    pub step: f64,
    pub refine_tol: f64,
    pub arg_step_cap: f64,
    pub n: usize,
    pub l: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { step: 0.1, refine_tol: 1e-10, arg_step_cap: std::f64::consts::FRAC_PI_2, n: 2000, l: 35 }
    }
}

impl ScanConfig {
    /// Per-family `N` and `l` good enough to place zeros to about ten digits.
    pub fn for_entry(entry: &CatalogEntry) -> Self {
        let (n, l) = match entry.0 {
            Family::CuspS8 => (2000, 35),
            Family::Sym3Delta | Family::Sym4Delta => (10000, 35),
            Family::CuspS92 | Family::KohnenHplus | Family::KohnenHminus => (4000, 35),
            Family::HeckeChi { .. } => (100000, 2),
            Family::ArtinS5 => (100000, 10),
            Family::External(_) => (2000, 35),
        };
        ScanConfig { n, l, ..Default::default() }
    }
}

/// Shape of the counting rectangle: the right edge sits at `k/2 + delta + mu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourConfig {
    pub delta: f64,
    pub mu: f64,
    /// Initial subdivisions of the three legs.
    pub l1_intervals: usize,
    pub l2_step: f64,
    pub l3_intervals: usize,
}

impl ContourConfig {
    pub fn new(delta: f64, mu: f64) -> Self {
        ContourConfig { delta, mu, l1_intervals: 15, l2_step: 0.5, l3_intervals: 150 }
    }

    pub fn for_entry(entry: &CatalogEntry) -> Self {
        match entry.0 {
            Family::CuspS92 => Self::new(2.0, 0.0),
            Family::KohnenHplus | Family::KohnenHminus => Self::new(3.0, 0.0),
            _ => Self::new(0.5, 1.0),
        }
    }

    pub fn right_edge(&self, k: f64) -> f64 {
        k / 2.0 + self.delta + self.mu
    }
}
