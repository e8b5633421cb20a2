//! Independent ground truth for the integrator: the quadratic solutions of
//! XVII and XXXII, the first integrals of XXIX and XXXII, an exact pole
//! family of XXIX, and the signed square root of PIV₀ solutions.

use crate::equations::{rhs2, EquationKind, Jet2, Jet3, Params};
use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::zeros::{locate_zeros, ZeroEvent, DEFAULT_SLOPE_TOL};

/// Allowed deviation of a fitted discriminant from its required value.
pub const DISCRIMINANT_TOL: f64 = 1e-10;

/// `w = a z^2 + b z + c`.
///
/// Every solution of XVII and XXXII is such a quadratic: their third-order
/// forms reduce to `2 w w''' = 0`. The second-order equation then forces
/// `b^2 - 4ac = 1` (XXXII) or `b^2 - 4ac = 0` (XVII).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticSolution {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub kind: EquationKind,
}

impl QuadraticSolution {
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    /// The discriminant value the kind requires.
    pub fn required_discriminant(kind: EquationKind) -> Option<f64> {
        match kind {
            EquationKind::Xxxii => Some(1.0),
            EquationKind::Xvii => Some(0.0),
            _ => None,
        }
    }
}

/// Reads off the quadratic through a jet of XVII or XXXII.
pub fn fit_quadratic(kind: EquationKind, j: &Jet2<f64>) -> Result<QuadraticSolution> {
    let Some(required) = QuadraticSolution::required_discriminant(kind) else {
        return Err(Error::UnsupportedKind {
            kind,
            op: "fit_quadratic",
        });
    };
    let a = rhs2(kind, Params::ZERO, j)? / 2.0;
    let b = j.w1 - 2.0 * a * j.z;
    let c = j.w - a * j.z * j.z - b * j.z;
    let q = QuadraticSolution { a, b, c, kind };
    let disc = q.discriminant();
    // scale by the size of the terms so large coefficients are judged fairly
    let scale = (b * b).max((4.0 * a * c).abs()).max(1.0);
    if (disc - required).abs() > DISCRIMINANT_TOL * scale {
        return Err(Error::DiscriminantViolation {
            found: disc,
            expected: required,
        });
    }
    Ok(q)
}

pub fn eval_quadratic(q: &QuadraticSolution, z: f64) -> Jet3<f64> {
    Jet3::new(z, (q.a * z + q.b) * z + q.c, 2.0 * q.a * z + q.b, 2.0 * q.a)
}

/// Constants of the XXIX reduction chain on a single jet:
/// `w'' = 2 w^3 + k` and `w'^2 = w^4 + K w + L` with `K = 2k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxixIntegrals {
    pub k: f64,
    pub big_k: f64,
    pub l: f64,
}

/// `k = w'' - 2w^3`, `K = 2k`, `L = w'^2 - w^4 - 2k w`.
///
/// `k` and `L` are constant along the third-order flow `w''' = 6 w^2 w'`,
/// and `L = 0` exactly when the jet satisfies XXIX itself.
pub fn xxix_integrals(j: &Jet3<f64>) -> XxixIntegrals {
    let Jet3 { w, w1, w2, .. } = *j;
    let k = w2 - 2.0 * w * w * w;
    XxixIntegrals {
        k,
        big_k: 2.0 * k,
        l: w1 * w1 - w.powi(4) - 2.0 * k * w,
    }
}

/// Term magnitudes behind `xxix_integrals`, for relative comparisons.
pub fn xxix_integral_scales(j: &Jet3<f64>) -> (f64, f64) {
    let Jet3 { w, w1, w2, .. } = *j;
    let k_scale = w2.abs().max(2.0 * w.abs().powi(3));
    let l_scale = (w1 * w1).max(w.powi(4)).max(2.0 * k_scale * w.abs());
    (k_scale, l_scale)
}

/// Exact solution `w = 1/(C - z)` of XXIX (with `k = K = L = 0`).
pub fn xxix_pole_family(pole: f64, z: f64) -> Result<Jet3<f64>> {
    if z == pole {
        return Err(Error::SingularInput {
            op: "xxix_pole_family",
        });
    }
    let r = 1.0 / (pole - z);
    Ok(Jet3::new(z, r, r * r, 2.0 * r * r * r))
}

/// First integral of XXXII from the substitution `w = u^2`:
/// `K = u'^2 - 1/(4u^2) = (w'^2 - 1)/(4w)`.
///
/// `sign` picks the branch of `u`; `K` does not depend on it. On the
/// quadratic `a z^2 + b z + c` with `b^2 - 4ac = 1`, `K = a`.
pub fn xxxii_u_integral(j: &Jet2<f64>, sign: f64) -> Result<f64> {
    if !(j.w > 0.0) {
        return Err(Error::SingularInput {
            op: "xxxii_u_integral",
        });
    }
    let u = sign.signum() * j.w.sqrt();
    let u1 = j.w1 / (2.0 * u);
    Ok(u1 * u1 - 1.0 / (4.0 * u * u))
}

/// `(t, f, f')` to the PIV₀ jet of `w = f^2`, with `f''` from the
/// square-root equation.
pub fn square_push(t: f64, f: f64, fdot: f64) -> Jet3<f64> {
    let fddot = rhs2(EquationKind::SqrtPiv0, Params::ZERO, &Jet2::new(t, f, fdot))
        .expect("square-root equation has no singular points");
    Jet3::new(
        t,
        f * f,
        2.0 * f * fdot,
        2.0 * fdot * fdot + 2.0 * f * fddot,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftSample {
    pub t: f64,
    pub f: f64,
    pub fdot: f64,
    pub fddot: f64,
    /// `4 f'' - f (3 f^2 + 2t)(f^2 + 2t)`; `None` too close to the zero,
    /// where `f''` cannot be recovered from `w` without cancellation.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SqrtLift {
    pub samples: Vec<LiftSample>,
    /// `|(f'(a-δ) + f'(a+δ))/2 - f'(a)|` at the zero; `None` without a zero.
    pub fdot_jump: Option<f64>,
}

impl SqrtLift {
    pub fn max_abs_residual(&self) -> f64 {
        self.samples
            .iter()
            .filter_map(|s| s.residual)
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Samples closer than this to the zero (in `|f|`) get no residual.
const LIFT_RESIDUAL_MIN_F: f64 = 1e-3;
/// Offset used for the continuity check of `f'` at the zero.
const LIFT_JUMP_OFFSET: f64 = 1e-4;

/// Signed square root of a real PIV₀ solution on an interval with at most
/// one zero: `f = -sqrt(w)` before the zero and `+sqrt(w)` after, so that
/// `f` crosses zero increasing, with `f'(a) = +sqrt(w''(a)/2)`.
///
/// Without an `event` the interval must be free of zeros and `f = +sqrt(w)`.
/// Samples are the trajectory nodes inside the interval plus the zero.
pub fn sqrt_lift(
    t: &Trajectory<f64>,
    event: Option<&ZeroEvent<f64>>,
    interval: (f64, f64),
) -> Result<SqrtLift> {
    if t.kind != EquationKind::Piv0 {
        return Err(Error::WrongKind(format!(
            "sqrt_lift needs piv0, got {}",
            t.kind
        )));
    }
    let (lo, hi) = (interval.0.min(interval.1), interval.0.max(interval.1));
    let abs_tol = t.tol.abs;
    let a = event.map(|e| e.a);
    if let Some(a) = a {
        if !(a >= lo && a <= hi) {
            return Err(Error::InvalidInitialData(format!(
                "zero at {a} lies outside the lift interval [{lo}, {hi}]"
            )));
        }
    }

    let identically_zero = t.max_abs_w() == 0.0;
    if !identically_zero {
        let zeros_inside: Vec<f64> = locate_zeros(t, DEFAULT_SLOPE_TOL)
            .into_iter()
            .map(|e| e.a)
            .filter(|&z| z >= lo && z <= hi)
            .collect();
        let foreign = zeros_inside
            .iter()
            .filter(|&&z| a.map_or(true, |a| (z - a).abs() > 1e-6 * (1.0 + a.abs())))
            .count();
        if foreign > 0 {
            return Err(Error::MultipleZeros {
                count: foreign + usize::from(a.is_some()),
            });
        }
    }

    let mut points: Vec<Jet3<f64>> = t
        .nodes
        .iter()
        .filter(|n| n.jet.z >= lo && n.jet.z <= hi)
        .map(|n| n.jet)
        .collect();
    points.sort_by(|x, y| x.z.total_cmp(&y.z));
    if let Some(e) = event {
        let jet = Jet3::new(e.a, 0.0, 0.0, e.curvature);
        let pos = points.partition_point(|j| j.z < e.a);
        if points.get(pos).map_or(true, |j| j.z != e.a) {
            points.insert(pos, jet);
        } else {
            points[pos] = jet;
        }
    }

    let zero_fdot = |w2: f64| (w2.max(0.0) / 2.0).sqrt();
    let mut samples = Vec::with_capacity(points.len());
    for j in &points {
        if j.w < -abs_tol {
            return Err(Error::NegativeW { z: j.z, w: j.w });
        }
        let w = j.w.max(0.0);
        let sign = match a {
            Some(a) if j.z < a => -1.0,
            _ => 1.0,
        };
        let f = sign * w.sqrt();
        let (fdot, fddot) = if f == 0.0 {
            (zero_fdot(j.w2), 0.0)
        } else {
            let fdot = j.w1 / (2.0 * f);
            (fdot, (j.w2 - 2.0 * fdot * fdot) / (2.0 * f))
        };
        let residual = (f.abs() >= LIFT_RESIDUAL_MIN_F)
            .then(|| 4.0 * fddot - f * (3.0 * f * f + 2.0 * j.z) * (f * f + 2.0 * j.z));
        samples.push(LiftSample {
            t: j.z,
            f,
            fdot,
            fddot,
            residual,
        });
    }

    let fdot_jump = match event {
        Some(e) => {
            let delta = LIFT_JUMP_OFFSET.min(0.5 * (e.a - lo)).min(0.5 * (hi - e.a));
            if delta > 0.0 {
                let side = |z: f64, sign: f64| -> Result<f64> {
                    let j = t.dense_eval_z(z)?;
                    Ok(j.w1 / (2.0 * sign * j.w.max(0.0).sqrt()))
                };
                let left = side(e.a - delta, -1.0)?;
                let right = side(e.a + delta, 1.0)?;
                Some((0.5 * (left + right) - zero_fdot(e.curvature)).abs())
            } else {
                None
            }
        }
        None => None,
    };

    Ok(SqrtLift { samples, fdot_jump })
}
