//! Zeros of `w` along a trajectory.
//!
//! Real runs are scanned for sign changes (refined by bisection on the
//! dense interpolant) and for tangential zeros, which show up as small
//! one-signed minima of `|w|` and are refined by golden-section search.
//! Complex runs only see `|w|` minima: a zero generically misses a line.
//!
//! Each zero is classified against the slope condition the equation imposes
//! there (`w' = ±β` for PIV).

use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::scalar::{Scalar, ScalarField};

pub const DEFAULT_SLOPE_TOL: f64 = 1e-6;
pub const DEFAULT_CURV_FLOOR: f64 = 1e-8;
/// Refined minima of `|w|` must fall below this fraction of the run's `max |w|`.
pub const TRIGGER_FRACTION: f64 = 1e-4;
/// A refined minimum counts as a zero when `|w| <= ZERO_ACCEPT_FACTOR * abs`.
pub const ZERO_ACCEPT_FACTOR: f64 = 1e3;
pub const MAX_REFINE_ITERS: usize = 60;
/// Zeros closer than this many local steps are not isolated.
pub const ISOLATION_STEPS: f64 = 10.0;
/// Upper bound on the local step used for isolation, as a fraction of the span.
pub const ISOLATION_SPAN_CAP: f64 = 1e-3;

/// Which of the admissible slopes `±m` a zero matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchClass {
    PlusBeta,
    MinusBeta,
    Unresolved,
}

impl BranchClass {
    pub fn name(self) -> &'static str {
        match self {
            BranchClass::PlusBeta => "PLUS_BETA",
            BranchClass::MinusBeta => "MINUS_BETA",
            BranchClass::Unresolved => "UNRESOLVED",
        }
    }
}

/// How a zero was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroShape {
    /// `w` is exactly zero at a node.
    Node,
    /// Sign change between nodes.
    Crossing,
    /// One-signed minimum of `|w|` reaching zero.
    Tangency,
}

impl ZeroShape {
    pub fn name(self) -> &'static str {
        match self {
            ZeroShape::Node => "node",
            ZeroShape::Crossing => "crossing",
            ZeroShape::Tangency => "tangency",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroEvent<T> {
    /// Refined location.
    pub a: T,
    /// Path parameter of `a`.
    pub t: f64,
    /// `w(a)` after refinement.
    pub w: T,
    pub slope: T,
    pub curvature: T,
    pub branch: BranchClass,
    /// `|w''(a)| >= curv_floor`; only set for PIV runs with `β = 0`.
    pub curvature_nonzero: Option<bool>,
    pub shape: ZeroShape,
    pub isolated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub slope_tol: f64,
    pub curv_floor: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            slope_tol: DEFAULT_SLOPE_TOL,
            curv_floor: DEFAULT_CURV_FLOOR,
        }
    }
}

/// Result of a one-dimensional refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub x: f64,
    pub value: f64,
    /// Best `|value|` seen after each iteration; non-increasing.
    pub history: Vec<f64>,
}

/// Bisection on a bracketed sign change of `f`, stopping once `|f| < tol`
/// or after `max_iter` halvings. Returns the best point evaluated.
pub fn bisect_sign_change<F>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Refinement>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let fb = f(b)?;
    let (mut best_x, mut best_v) = if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    let mut history = Vec::with_capacity(max_iter);
    for _ in 0..max_iter {
        if best_v.abs() < tol {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm.abs() < best_v.abs() {
            best_x = m;
            best_v = fm;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        history.push(best_v.abs());
    }
    Ok(Refinement {
        x: best_x,
        value: best_v,
        history,
    })
}

/// Golden-section minimization of `g` on `[lo, hi]`.
pub fn golden_minimize<F>(g: F, lo: f64, hi: f64, max_iter: usize) -> Result<Refinement>
where
    F: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c)?;
    let mut gd = g(d)?;
    let (mut best_x, mut best_v) = if gc <= gd { (c, gc) } else { (d, gd) };
    let mut history = Vec::with_capacity(max_iter);
    for _ in 0..max_iter {
        if b - a <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
        if gc <= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c)?;
            if gc < best_v {
                best_x = c;
                best_v = gc;
            }
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d)?;
            if gd < best_v {
                best_x = d;
                best_v = gd;
            }
        }
        history.push(best_v.abs());
    }
    Ok(Refinement {
        x: best_x,
        value: best_v,
        history,
    })
}

/// Locates zeros with the default curvature floor.
pub fn locate_zeros<T: Scalar>(t: &Trajectory<T>, slope_tol: f64) -> Vec<ZeroEvent<T>> {
    locate_zeros_with(
        t,
        &ScanOptions {
            slope_tol,
            ..ScanOptions::default()
        },
    )
}

/// Scans the accepted nodes of `t` for zeros of `w`, ordered along the path.
///
/// An identically zero run yields no events.
pub fn locate_zeros_with<T: Scalar>(t: &Trajectory<T>, opts: &ScanOptions) -> Vec<ZeroEvent<T>> {
    let nodes = &t.nodes;
    let max_w = t.max_abs_w();
    if nodes.len() < 2 || max_w == 0.0 {
        return Vec::new();
    }
    let trigger = TRIGGER_FRACTION * max_w;
    let zero_tol = ZERO_ACCEPT_FACTOR * t.tol.abs;
    let w_at = |s: f64| t.dense_eval(s).map(|j| j.w);
    let n = nodes.len();
    let mut found: Vec<(f64, ZeroShape)> = Vec::new();

    // exact zeros at nodes, unless part of an identically zero stretch
    for i in 0..n {
        if nodes[i].jet.w.is_zero() {
            let left = i > 0 && nodes[i - 1].jet.w.is_zero();
            let right = i + 1 < n && nodes[i + 1].jet.w.is_zero();
            if !left && !right {
                found.push((nodes[i].t, ZeroShape::Node));
            }
        }
    }

    if T::FIELD == ScalarField::Real {
        for i in 0..n - 1 {
            let (wa, wb) = (nodes[i].jet.w.re(), nodes[i + 1].jet.w.re());
            if wa * wb < 0.0 {
                let r = bisect_sign_change(
                    |s| w_at(s).map(|w| w.re()),
                    nodes[i].t,
                    nodes[i + 1].t,
                    t.tol.abs,
                    MAX_REFINE_ITERS,
                );
                if let Ok(r) = r {
                    found.push((r.x, ZeroShape::Crossing));
                }
            }
        }
    }

    for i in 1..n.saturating_sub(1) {
        let (wp, wi, wn) = (nodes[i - 1].jet.w, nodes[i].jet.w, nodes[i + 1].jet.w);
        if wi.is_zero() {
            continue;
        }
        if wi.modulus() > wp.modulus() || wi.modulus() > wn.modulus() {
            continue;
        }
        let (lo, hi) = (nodes[i - 1].t, nodes[i + 1].t);
        let refined = if T::FIELD == ScalarField::Real {
            let sigma = wp.re().signum();
            if wp.re() == 0.0 || wn.re().signum() != sigma {
                continue;
            }
            golden_minimize(
                |s| w_at(s).map(|w| sigma * w.re()),
                lo,
                hi,
                MAX_REFINE_ITERS,
            )
        } else {
            golden_minimize(|s| w_at(s).map(|w| w.modulus()), lo, hi, MAX_REFINE_ITERS)
        };
        let Ok(r) = refined else { continue };
        if r.value.abs() <= zero_tol.min(trigger) {
            // a shallow dip below zero is this same tangential zero
            found.retain(|&(s, shape)| !(shape == ZeroShape::Crossing && s > lo && s < hi));
            found.push((r.x, ZeroShape::Tangency));
        } else if T::FIELD == ScalarField::Real && r.value < 0.0 {
            // w changed sign twice between nodes of equal sign
            for (a, b) in [(lo, r.x), (r.x, hi)] {
                if found.iter().any(|&(s, _)| s > a && s < b) {
                    continue;
                }
                let crossing = bisect_sign_change(
                    |s| w_at(s).map(|w| w.re()),
                    a,
                    b,
                    t.tol.abs,
                    MAX_REFINE_ITERS,
                );
                if let Ok(c) = crossing {
                    found.push((c.x, ZeroShape::Crossing));
                }
            }
        }
    }

    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    found.dedup_by(|b, a| (b.0 - a.0).abs() <= 1e-14 * (1.0 + a.0.abs()));

    let zero_slope = t.kind.zero_slope(t.params);
    let beta_zero = t.kind.is_piv() && t.params.beta == 0.0;
    let mut events: Vec<ZeroEvent<T>> = found
        .iter()
        .filter_map(|&(s, shape)| {
            let jet = t.dense_eval(s).ok()?;
            Some(ZeroEvent {
                a: jet.z,
                t: s,
                w: jet.w,
                slope: jet.w1,
                curvature: jet.w2,
                branch: classify(jet.w1, zero_slope, opts.slope_tol),
                curvature_nonzero: beta_zero.then(|| jet.w2.modulus() >= opts.curv_floor),
                shape,
                isolated: true,
            })
        })
        .collect();

    for k in 0..events.len() {
        let radius = ISOLATION_STEPS * local_step(t, events[k].t);
        let crowded = events
            .iter()
            .enumerate()
            .any(|(m, e)| m != k && (e.t - events[k].t).abs() <= radius);
        events[k].isolated = !crowded;
    }
    events
}

/// Step size around `s`, capped at a fraction of the covered span so that
/// the large steps taken on polynomial solutions do not merge distant zeros.
fn local_step<T: Scalar>(t: &Trajectory<T>, s: f64) -> f64 {
    let i = t
        .nodes
        .partition_point(|n| n.t <= s)
        .clamp(1, t.nodes.len() - 1);
    let (lo, hi) = t.t_range();
    (t.nodes[i].t - t.nodes[i - 1].t).min(ISOLATION_SPAN_CAP * (hi - lo))
}

fn classify<T: Scalar>(slope: T, zero_slope: Option<f64>, slope_tol: f64) -> BranchClass {
    let Some(m) = zero_slope else {
        return BranchClass::Unresolved;
    };
    let tol = slope_tol * m.max(1.0);
    let plus = (slope - T::from_real(m)).modulus() <= tol;
    let minus = (slope + T::from_real(m)).modulus() <= tol;
    match (plus, minus) {
        (true, true) => {
            if slope.re() >= 0.0 {
                BranchClass::PlusBeta
            } else {
                BranchClass::MinusBeta
            }
        }
        (true, false) => BranchClass::PlusBeta,
        (false, true) => BranchClass::MinusBeta,
        (false, false) => BranchClass::Unresolved,
    }
}

/// A zero that fails the `β = 0` curvature check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureViolation {
    pub a: f64,
    pub slope: f64,
    pub curvature: f64,
    pub slope_ok: bool,
    pub curvature_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub checked: usize,
    pub identically_zero: bool,
    pub violations: Vec<CurvatureViolation>,
}

impl CurvatureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// No zeros to check.
    pub fn vacuous(&self) -> bool {
        self.checked == 0
    }
}

/// For PIV with `β = 0`, checks that every zero has `w' ≈ 0` and
/// `|w''| >= curv_floor`.
///
/// A violation points at integration accuracy or a non-isolated zero: true
/// solutions always pass.
pub fn check_curvature_theorem(
    events: &[ZeroEvent<f64>],
    t: &Trajectory<f64>,
    curv_floor: f64,
) -> Result<CurvatureReport> {
    if !t.kind.is_piv() || t.params.beta != 0.0 {
        return Err(Error::WrongKind(format!(
            "curvature check needs piv or piv0 with beta = 0, got {} with beta = {}",
            t.kind, t.params.beta
        )));
    }
    let violations = events
        .iter()
        .filter_map(|e| {
            let slope_ok = e.slope.abs() < DEFAULT_SLOPE_TOL;
            let curvature_ok = e.curvature.abs() >= curv_floor;
            (!(slope_ok && curvature_ok)).then_some(CurvatureViolation {
                a: e.a,
                slope: e.slope,
                curvature: e.curvature,
                slope_ok,
                curvature_ok,
            })
        })
        .collect();
    Ok(CurvatureReport {
        checked: events.len(),
        identically_zero: t.max_abs_w() == 0.0,
        violations,
    })
}
