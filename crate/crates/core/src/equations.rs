//! Right-hand sides, residuals and the conserved constraint of the
//! fourth Painlevé equation and its relatives XVII, XXIX and XXXII.
//!
//! PIV is written with the `β²` parameter (Ince's form XXXI):
//!
//! ```text
//! w'' = w'^2/(2w) + 3/2 w^3 + 4 z w^2 + 2 (z^2 - α) w - β^2/(2w)
//! ```
//!
//! Clearing the denominator and differentiating once gives a third-order
//! equation that is polynomial in every variable, so it can be integrated
//! straight through the zeros of `w`. The second-order form survives here as
//! a residual monitor.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The equation being integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationKind {
    Piv,
    /// PIV with `α = β = 0`.
    Piv0,
    Xvii,
    Xxix,
    Xxxii,
    /// The square-root equation `4 f'' = f (3 f^2 + 2t)(f^2 + 2t)` satisfied
    /// by a signed square root of a PIV₀ solution.
    SqrtPiv0,
}

impl EquationKind {
    pub const ALL: [EquationKind; 6] = [
        EquationKind::Piv,
        EquationKind::Piv0,
        EquationKind::Xvii,
        EquationKind::Xxix,
        EquationKind::Xxxii,
        EquationKind::SqrtPiv0,
    ];

    /// Name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            EquationKind::Piv => "piv",
            EquationKind::Piv0 => "piv0",
            EquationKind::Xvii => "xvii",
            EquationKind::Xxix => "xxix",
            EquationKind::Xxxii => "xxxii",
            EquationKind::SqrtPiv0 => "sqrt-piv0",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// True for the kinds integrated in third-order form.
    pub fn is_third_order(self) -> bool {
        self != EquationKind::SqrtPiv0
    }

    /// True for PIV and PIV₀.
    pub fn is_piv(self) -> bool {
        matches!(self, EquationKind::Piv | EquationKind::Piv0)
    }

    /// Parameters actually used by the right-hand sides.
    ///
    /// Only PIV reads `α` and `β`; every other kind behaves as if both were 0.
    pub fn effective(self, p: Params) -> Params {
        match self {
            EquationKind::Piv => p,
            _ => Params::ZERO,
        }
    }

    /// Rejects parameters that the kind cannot carry (nonzero `α`, `β` for PIV₀).
    pub fn check_params(self, p: Params) -> Result<()> {
        if self == EquationKind::Piv0 && (p.alpha != 0.0 || p.beta != 0.0) {
            return Err(Error::InvalidParams(format!(
                "piv0 requires alpha = beta = 0, got alpha = {}, beta = {}",
                p.alpha, p.beta
            )));
        }
        Ok(())
    }

    /// Magnitude `m` such that every zero of a solution has slope `±m`,
    /// or `None` when the equation imposes no such condition.
    ///
    /// For PIV this is `|β|`; clearing the denominator of XXXII at `w = 0`
    /// forces `w'^2 = 1`, and XVII/XXIX force `w' = 0`.
    pub fn zero_slope(self, p: Params) -> Option<f64> {
        match self {
            EquationKind::Piv => Some(p.beta.abs()),
            EquationKind::Piv0 | EquationKind::Xvii | EquationKind::Xxix => Some(0.0),
            EquationKind::Xxxii => Some(1.0),
            EquationKind::SqrtPiv0 => None,
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The `(α, β)` pair of PIV, `β` entering only through `β²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub alpha: f64,
    pub beta: f64,
}

impl Params {
    pub const ZERO: Params = Params {
        alpha: 0.0,
        beta: 0.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be finite, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Params { alpha, beta })
    }

    pub fn beta_sq(&self) -> f64 {
        self.beta * self.beta
    }
}

impl Default for Params {
    fn default() -> Self {
        Params::ZERO
    }
}

/// Point value `(z, w, w')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<T> {
    pub z: T,
    pub w: T,
    pub w1: T,
}

/// Point value `(z, w, w', w'')`, the full state of the third-order system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3<T> {
    pub z: T,
    pub w: T,
    pub w1: T,
    pub w2: T,
}

impl<T: Scalar> Jet2<T> {
    pub fn new(z: T, w: T, w1: T) -> Self {
        Jet2 { z, w, w1 }
    }

    pub fn with_w2(self, w2: T) -> Jet3<T> {
        Jet3 {
            z: self.z,
            w: self.w,
            w1: self.w1,
            w2,
        }
    }
}

impl<T: Scalar> Jet3<T> {
    pub fn new(z: T, w: T, w1: T, w2: T) -> Self {
        Jet3 { z, w, w1, w2 }
    }

    pub fn truncate(&self) -> Jet2<T> {
        Jet2 {
            z: self.z,
            w: self.w,
            w1: self.w1,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.z.is_finite() && self.w.is_finite() && self.w1.is_finite() && self.w2.is_finite()
    }
}

/// Second derivative from the second-order form of `kind`.
///
/// Refuses `w = 0` for every kind with a `1/w` term: the limiting value
/// there depends on `w' = ±β`, which a pointwise evaluator cannot check.
pub fn rhs2<T: Scalar>(kind: EquationKind, p: Params, j: &Jet2<T>) -> Result<T> {
    let Jet2 { z, w, w1 } = *j;
    if kind == EquationKind::SqrtPiv0 {
        let f2 = w * w;
        let two_t = z * 2.0;
        return Ok(w * (f2 * 3.0 + two_t) * (f2 + two_t) * 0.25);
    }
    if w.is_zero() {
        return Err(Error::SingularInput { op: "rhs2" });
    }
    let p = kind.effective(p);
    let two_w = w * 2.0;
    let v = match kind {
        EquationKind::Piv | EquationKind::Piv0 => {
            let w2 = w * w;
            (w1 * w1 - T::from_real(p.beta_sq())) / two_w
                + w2 * w * 1.5
                + z * w2 * 4.0
                + (z * z - T::from_real(p.alpha)) * w * 2.0
        }
        EquationKind::Xvii => w1 * w1 / two_w,
        EquationKind::Xxix => w1 * w1 / two_w + w * w * w * 1.5,
        EquationKind::Xxxii => (w1 * w1 - T::from_real(1.0)) / two_w,
        EquationKind::SqrtPiv0 => unreachable!(),
    };
    Ok(v)
}

/// Third derivative from the regularized (polynomial) third-order form.
///
/// Defined for every `w`, including `w = 0`.
pub fn rhs3<T: Scalar>(kind: EquationKind, p: Params, z: T, w: T, w1: T) -> Result<T> {
    let p = kind.effective(p);
    match kind {
        EquationKind::Piv | EquationKind::Piv0 => {
            let bracket = w * w * 6.0 + z * w * 12.0 + (z * z - T::from_real(p.alpha)) * 4.0;
            Ok(bracket * w1 + (w + z) * w * 4.0)
        }
        EquationKind::Xvii | EquationKind::Xxxii => Ok(T::zero()),
        EquationKind::Xxix => Ok(w * w * w1 * 6.0),
        EquationKind::SqrtPiv0 => Err(Error::UnsupportedKind { kind, op: "rhs3" }),
    }
}

/// The PIV constraint
/// `C = 2 w w'' - w'^2 - 3 w^4 - 8 z w^3 - 4 (z^2 - α) w^2 + β^2`.
///
/// `C = 0` exactly on jets of PIV solutions (including zeros of `w`, where
/// it reduces to `w'^2 = β^2`), and `C` is a first integral of the
/// third-order flow: `dC/dz = 2 w (w''' - rhs3)`.
pub fn constraint_c<T: Scalar>(p: Params, j: &Jet3<T>) -> T {
    let Jet3 { z, w, w1, w2 } = *j;
    let wsq = w * w;
    w * w2 * 2.0
        - w1 * w1
        - wsq * wsq * 3.0
        - z * wsq * w * 8.0
        - (z * z - T::from_real(p.alpha)) * wsq * 4.0
        + T::from_real(p.beta_sq())
}

/// Division-free residual: `2w (w'' - RHS)` of the second-order equation,
/// expanded so that it is defined at `w = 0`. For PIV it is `constraint_c`.
///
/// `SqrtPiv0` has no denominator; its residual is `4 f'' - f (3 f^2 + 2t)(f^2 + 2t)`.
pub fn residual2<T: Scalar>(kind: EquationKind, p: Params, j: &Jet3<T>) -> T {
    let Jet3 { z, w, w1, w2 } = *j;
    let cleared = w * w2 * 2.0 - w1 * w1;
    match kind {
        EquationKind::Piv | EquationKind::Piv0 => constraint_c(kind.effective(p), j),
        EquationKind::Xvii => cleared,
        EquationKind::Xxix => cleared - w * w * w * w * 3.0,
        EquationKind::Xxxii => cleared + T::from_real(1.0),
        EquationKind::SqrtPiv0 => {
            let f2 = w * w;
            let two_t = z * 2.0;
            w2 * 4.0 - w * (f2 * 3.0 + two_t) * (f2 + two_t)
        }
    }
}

/// Magnitude of the largest individual term of `residual2`, used to turn
/// absolute residuals into relative ones.
pub fn residual2_scale<T: Scalar>(kind: EquationKind, p: Params, j: &Jet3<T>) -> f64 {
    let Jet3 { z, w, w1, w2 } = *j;
    let (z, w, w1, w2) = (z.modulus(), w.modulus(), w1.modulus(), w2.modulus());
    let cleared = (2.0 * w * w2).max(w1 * w1);
    match kind {
        EquationKind::Piv | EquationKind::Piv0 => {
            let p = kind.effective(p);
            let w_sq = w * w;
            cleared
                .max(3.0 * w_sq * w_sq)
                .max(8.0 * z * w_sq * w)
                .max(4.0 * (z * z + p.alpha.abs()) * w_sq)
                .max(p.beta_sq())
        }
        EquationKind::Xvii => cleared,
        EquationKind::Xxix => cleared.max(3.0 * w.powi(4)),
        EquationKind::Xxxii => cleared.max(1.0),
        EquationKind::SqrtPiv0 => (4.0 * w2).max(w * (3.0 * w * w + 2.0 * z) * (w * w + 2.0 * z)),
    }
}

/// Defects of the two derivative identities on a jet `(w, w', w'', w''')`:
///
/// * `delta1`: `d/dz (2 w w'' - w'^2) - 2 w w'''`
/// * `delta2`: `d/dz (w'^2 / w) - (w'/w^2)(2 w w'' - w'^2)`
///
/// Both vanish identically; they are evaluated with the derivative expanded
/// term by term so that any nonzero value is rounding. `delta2` needs `w ≠ 0`.
pub fn jet_identities<T: Scalar>(j: &Jet3<T>, w3: T) -> (T, Result<T>) {
    let Jet3 { w, w1, w2, .. } = *j;
    let delta1 = (w1 * w2 * 2.0 + w * w3 * 2.0 - w1 * w2 * 2.0) - w * w3 * 2.0;
    let delta2 = if w.is_zero() {
        Err(Error::SingularInput {
            op: "jet_identities",
        })
    } else {
        let lhs = w1 * w2 * 2.0 / w - w1 * w1 * w1 / (w * w);
        let rhs = w1 / (w * w) * (w * w2 * 2.0 - w1 * w1);
        Ok(lhs - rhs)
    };
    (delta1, delta2)
}

/// Term magnitudes for relative comparison of `jet_identities` output.
pub fn jet_identity_scales<T: Scalar>(j: &Jet3<T>, w3: T) -> (f64, f64) {
    let (w, w1, w2, w3) = (j.w.modulus(), j.w1.modulus(), j.w2.modulus(), w3.modulus());
    let s1 = (2.0 * w1 * w2).max(2.0 * w * w3);
    let s2 = if w == 0.0 {
        f64::NAN
    } else {
        (2.0 * w1 * w2 / w).max(w1 * w1 * w1 / (w * w))
    };
    (s1, s2)
}
