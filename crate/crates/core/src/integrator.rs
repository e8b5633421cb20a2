//! Adaptive Dormand-Prince 5(4) integration of the regularized equations.
//!
//! Third-order kinds advance `(w, w', w'')` with derivative
//! `(w', w'', rhs3)`; PIV is always integrated in this form, zeros of `w`
//! included. The square-root equation advances `(f, f')` with `(f', rhs2)`.
//!
//! In complex mode the path is the straight line `z(t) = z0 + t*d` with
//! `|d| = 1` and the real path parameter `t` runs over `[0, span]`.

use crate::equations::{constraint_c, residual2, rhs2, rhs3, EquationKind, Jet2, Jet3, Params};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarField};

/// Safety factor of the step-size controller.
const SAFETY: f64 = 0.9;
const FACTOR_MIN: f64 = 0.2;
const FACTOR_MAX: f64 = 5.0;
/// PI controller exponents for a fifth-order method.
const PI_ALPHA: f64 = 0.7 / 5.0;
const PI_BETA: f64 = 0.4 / 5.0;
/// Hard cap on attempted steps; reported as a step underflow.
const MAX_ATTEMPTS: usize = 5_000_000;

// Dormand-Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth-order minus embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Step-control settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
    pub h_init: f64,
    pub h_min: f64,
    /// `|w|` above which the run stops with a pole.
    pub pole_cutoff: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel: 1e-10,
            abs: 1e-10,
            h_init: 1e-3,
            h_min: 1e-12,
            pole_cutoff: 1e8,
        }
    }
}

impl Tolerances {
    pub fn new(rel: f64, abs: f64, h_init: f64, h_min: f64, pole_cutoff: f64) -> Result<Self> {
        let t = Tolerances {
            rel,
            abs,
            h_init,
            h_min,
            pole_cutoff,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTolerances(msg));
        if !(self.rel >= 1e-14 && self.rel.is_finite()) {
            return bad(format!("rel must be >= 1e-14, got {}", self.rel));
        }
        if !(self.abs >= 1e-14 && self.abs.is_finite()) {
            return bad(format!("abs must be >= 1e-14, got {}", self.abs));
        }
        if !(self.h_min > 0.0 && self.h_init.is_finite() && self.h_min < self.h_init) {
            return bad(format!(
                "need 0 < h_min < h_init, got h_min = {}, h_init = {}",
                self.h_min, self.h_init
            ));
        }
        if !(self.pole_cutoff >= 1e3) {
            return bad(format!(
                "pole_cutoff must be >= 1e3, got {}",
                self.pole_cutoff
            ));
        }
        Ok(())
    }

    /// Mixed error measure `max_i |e_i| / (abs + rel |y_i|)`.
    fn error_norm<T: Scalar>(&self, dim: usize, err: &[T; 3], y0: &[T; 3], y1: &[T; 3]) -> f64 {
        (0..dim)
            .map(|i| {
                let scale = self.abs + self.rel * y0[i].modulus().max(y1[i].modulus());
                err[i].modulus() / scale
            })
            .fold(0.0, f64::max)
    }
}

/// Sign of `w'` at a prescribed zero: `w'(z0) = ±β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroBranch {
    Plus,
    Minus,
}

impl ZeroBranch {
    pub fn sign(self) -> f64 {
        match self {
            ZeroBranch::Plus => 1.0,
            ZeroBranch::Minus => -1.0,
        }
    }
}

/// How the initial jet is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialMode<T> {
    /// `w(z0) ≠ 0` and `w'(z0)` given; `w''` follows from the second-order equation.
    NonZero { w0: T, w1: T },
    /// `w(z0) = 0`, so `w'(z0) = ±β`; `w''(z0)` is free.
    Zero { branch: ZeroBranch, w2: T },
    /// Unconstrained third-order data.
    Raw { w0: T, w1: T, w2: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialData<T> {
    pub z0: T,
    pub mode: InitialMode<T>,
    /// Unit direction of the path. Real mode accepts `±1`.
    pub direction: T,
}

impl<T: Scalar> InitialData<T> {
    pub fn new(z0: T, mode: InitialMode<T>) -> Self {
        InitialData {
            z0,
            mode,
            direction: T::from_real(1.0),
        }
    }

    pub fn nonzero(z0: T, w0: T, w1: T) -> Self {
        Self::new(z0, InitialMode::NonZero { w0, w1 })
    }

    pub fn zero(z0: T, branch: ZeroBranch, w2: T) -> Self {
        Self::new(z0, InitialMode::Zero { branch, w2 })
    }

    pub fn raw(z0: T, w0: T, w1: T, w2: T) -> Self {
        Self::new(z0, InitialMode::Raw { w0, w1, w2 })
    }

    pub fn with_direction(mut self, direction: T) -> Self {
        self.direction = direction;
        self
    }
}

/// Builds the starting jet from the initial data.
///
/// `NonZero` data gets `w''` from the second-order equation, so the PIV
/// constraint starts at exactly zero. `Zero` data for PIV gives
/// `(z0, 0, ±β, w2)`, which also has `C = 0`. `Raw` data is passed through
/// (except for the square-root equation, whose `f''` is always `rhs2`).
pub fn complete_initial_data<T: Scalar>(
    kind: EquationKind,
    p: Params,
    id: &InitialData<T>,
) -> Result<Jet3<T>> {
    kind.check_params(p)?;
    if kind == EquationKind::SqrtPiv0 && T::FIELD != ScalarField::Real {
        return Err(Error::UnsupportedField { kind });
    }
    let z0 = id.z0;
    let jet = match id.mode {
        InitialMode::NonZero { w0, w1 } => {
            if w0.is_zero() {
                return Err(Error::InvalidInitialData(
                    "nonzero mode requires w0 != 0".into(),
                ));
            }
            let j2 = Jet2::new(z0, w0, w1);
            j2.with_w2(rhs2(kind, p, &j2)?)
        }
        InitialMode::Zero { branch, w2 } => {
            if !kind.is_piv() {
                return Err(Error::InvalidInitialData(format!(
                    "zero mode is only valid for piv and piv0, not {kind}"
                )));
            }
            let slope = kind.effective(p).beta * branch.sign();
            Jet3::new(z0, T::zero(), T::from_real(slope), w2)
        }
        InitialMode::Raw { w0, w1, w2 } => {
            if kind == EquationKind::SqrtPiv0 {
                let j2 = Jet2::new(z0, w0, w1);
                j2.with_w2(rhs2(kind, p, &j2)?)
            } else {
                Jet3::new(z0, w0, w1, w2)
            }
        }
    };
    if !jet.is_finite() {
        return Err(Error::InvalidInitialData("non-finite initial jet".into()));
    }
    Ok(jet)
}

/// One Dormand-Prince step along a fixed path.
#[derive(Debug, Clone, Copy)]
pub struct Stepper<T> {
    pub kind: EquationKind,
    pub params: Params,
    pub z0: T,
    pub dir: T,
    pub tol: Tolerances,
}

impl<T: Scalar> Stepper<T> {
    pub fn new(kind: EquationKind, params: Params, z0: T, dir: T, tol: Tolerances) -> Self {
        Stepper {
            kind,
            params,
            z0,
            dir,
            tol,
        }
    }

    fn dim(&self) -> usize {
        if self.kind.is_third_order() {
            3
        } else {
            2
        }
    }

    pub fn z_at(&self, t: f64) -> T {
        self.z0 + self.dir * t
    }

    /// `dy/dt` with `t` the path parameter.
    fn deriv(&self, t: f64, y: &[T; 3]) -> Result<[T; 3]> {
        let z = self.z_at(t);
        let d = self.dir;
        if self.kind.is_third_order() {
            let w3 = rhs3(self.kind, self.params, z, y[0], y[1])?;
            Ok([d * y[1], d * y[2], d * w3])
        } else {
            let f2 = rhs2(self.kind, self.params, &Jet2::new(z, y[0], y[1]))?;
            Ok([d * y[1], d * f2, T::zero()])
        }
    }

    pub fn state_of(&self, j: &Jet3<T>) -> [T; 3] {
        if self.kind.is_third_order() {
            [j.w, j.w1, j.w2]
        } else {
            [j.w, j.w1, T::zero()]
        }
    }

    pub fn jet_of(&self, t: f64, y: &[T; 3]) -> Result<Jet3<T>> {
        let z = self.z_at(t);
        if self.kind.is_third_order() {
            Ok(Jet3::new(z, y[0], y[1], y[2]))
        } else {
            let j2 = Jet2::new(z, y[0], y[1]);
            Ok(j2.with_w2(rhs2(self.kind, self.params, &j2)?))
        }
    }

    /// Advances from path parameter `t` by `h`, returning the new state and
    /// the scaled error estimate (accept when `<= 1`).
    pub fn step_state(&self, t: f64, y: &[T; 3], h: f64) -> Result<([T; 3], f64)> {
        let dim = self.dim();
        let comb = |terms: &[(f64, &[T; 3])]| -> [T; 3] {
            let mut out = *y;
            for i in 0..dim {
                let mut acc = T::zero();
                for (c, k) in terms {
                    if *c != 0.0 {
                        acc += k[i] * *c;
                    }
                }
                out[i] = y[i] + acc * h;
            }
            out
        };
        let k1 = self.deriv(t, y)?;
        let k2 = self.deriv(t + C2 * h, &comb(&[(A21, &k1)]))?;
        let k3 = self.deriv(t + C3 * h, &comb(&[(A31, &k1), (A32, &k2)]))?;
        let k4 = self.deriv(t + C4 * h, &comb(&[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
        let k5 = self.deriv(
            t + C5 * h,
            &comb(&[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        )?;
        let k6 = self.deriv(
            t + h,
            &comb(&[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        )?;
        let y_new = comb(&[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        if (0..dim).any(|i| !y_new[i].is_finite()) {
            return Err(Error::NonFiniteState);
        }
        let k7 = self.deriv(t + h, &y_new)?;
        let mut err = [T::zero(); 3];
        for i in 0..dim {
            err[i] =
                (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
        }
        let norm = self.tol.error_norm(dim, &err, y, &y_new);
        if !norm.is_finite() {
            return Err(Error::NonFiniteState);
        }
        Ok((y_new, norm))
    }
}

/// One explicit embedded step from `j` by `h` along `dir` (real mode: `dir = ±1`).
pub fn step<T: Scalar>(
    kind: EquationKind,
    p: Params,
    j: &Jet3<T>,
    h: f64,
    dir: T,
    tol: &Tolerances,
) -> Result<(Jet3<T>, f64)> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::InvalidInitialData(format!(
            "step size must be nonzero, got {h}"
        )));
    }
    let stepper = Stepper::new(kind, p, j.z, dir, *tol);
    let (y, err) = stepper.step_state(0.0, &stepper.state_of(j), h)?;
    Ok((stepper.jet_of(h, &y)?, err))
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Status<T> {
    Completed,
    /// `|w|` exceeded the pole cutoff; `z_est` extrapolates `1/w` to zero.
    Pole {
        z_est: T,
    },
    StepUnderflow,
}

impl<T> Status<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Completed => "COMPLETED",
            Status::Pole { .. } => "POLE",
            Status::StepUnderflow => "STEP_UNDERFLOW",
        }
    }
}

/// An accepted integration node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node<T> {
    /// Path parameter: `z = z0 + t*d`.
    pub t: f64,
    pub jet: Jet3<T>,
    /// Step that produced this node (0 for the seed).
    pub h: f64,
    pub err_est: f64,
    /// Conserved constraint of the third-order flow (`constraint_c` for PIV,
    /// `residual2` for the other kinds).
    pub constraint: T,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub kind: EquationKind,
    pub params: Params,
    pub tol: Tolerances,
    pub z0: T,
    pub dir: T,
    /// Nodes ordered by strictly increasing `t`.
    pub nodes: Vec<Node<T>>,
    /// Status at the far (`t > 0`) end.
    pub status: Status<T>,
    /// Status at the near end for two-sided runs.
    pub backward_status: Option<Status<T>>,
}

fn monitor<T: Scalar>(kind: EquationKind, p: Params, j: &Jet3<T>) -> (T, T) {
    let residual = residual2(kind, p, j);
    let constraint = if kind.is_piv() {
        constraint_c(kind.effective(p), j)
    } else {
        residual
    };
    (constraint, residual)
}

fn make_node<T: Scalar>(
    kind: EquationKind,
    p: Params,
    t: f64,
    jet: Jet3<T>,
    h: f64,
    err: f64,
) -> Node<T> {
    let (constraint, residual) = monitor(kind, p, &jet);
    Node {
        t,
        jet,
        h,
        err_est: err,
        constraint,
        residual,
    }
}

/// Extrapolates `1/w` linearly to zero from the last two nodes.
fn pole_estimate<T: Scalar>(nodes: &[Node<T>], z0: T, dir: T) -> T {
    let last = nodes[nodes.len() - 1];
    let t_star = if nodes.len() >= 2 {
        let prev = nodes[nodes.len() - 2];
        let g1 = T::from_real(1.0) / prev.jet.w;
        let g2 = T::from_real(1.0) / last.jet.w;
        let dt = T::from_real(last.t - prev.t);
        T::from_real(last.t) - g2 * dt / (g2 - g1)
    } else {
        // Newton step on 1/w: dt = w / (dw/dt)
        T::from_real(last.t) + last.jet.w / (last.jet.w1 * dir)
    };
    z0 + dir * t_star
}

/// Integrates over the path parameter range `[0, span_length]`.
pub fn integrate<T: Scalar>(
    kind: EquationKind,
    p: Params,
    id: &InitialData<T>,
    span_length: f64,
    tol: &Tolerances,
) -> Result<Trajectory<T>> {
    tol.validate()?;
    if !(span_length > 0.0 && span_length.is_finite()) {
        return Err(Error::InvalidInitialData(format!(
            "span length must be positive, got {span_length}"
        )));
    }
    let dir = id.direction;
    if !dir.is_finite() || (dir.modulus() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInitialData(format!(
            "path direction must have modulus 1, got {dir:?}"
        )));
    }
    let jet0 = complete_initial_data(kind, p, id)?;
    let p = kind.effective(p);
    let stepper = Stepper::new(kind, p, jet0.z, dir, *tol);

    let mut nodes = vec![make_node(kind, p, 0.0, jet0, 0.0, 0.0)];
    let mut y = stepper.state_of(&jet0);
    let mut t = 0.0;
    let mut h = tol.h_init.min(span_length);
    let mut err_prev: f64 = 1e-4;
    let mut rejected_last = false;
    let mut attempts = 0usize;

    let status = loop {
        if t >= span_length {
            break Status::Completed;
        }
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            break Status::StepUnderflow;
        }
        let remaining = span_length - t;
        let last_step = h >= remaining;
        if last_step {
            h = remaining;
        }
        if h < tol.h_min && !last_step {
            break underflow_status(&nodes, jet0.z, dir);
        }
        match stepper.step_state(t, &y, h) {
            Err(Error::NonFiniteState) => {
                h *= FACTOR_MIN;
                rejected_last = true;
                if h < tol.h_min {
                    break underflow_status(&nodes, jet0.z, dir);
                }
            }
            Err(e) => return Err(e),
            Ok((y_new, err)) if err <= 1.0 => {
                if y_new[0].modulus() > tol.pole_cutoff {
                    break Status::Pole {
                        z_est: pole_estimate(&nodes, jet0.z, dir),
                    };
                }
                let t_new = if last_step { span_length } else { t + h };
                let jet = stepper.jet_of(t_new, &y_new)?;
                nodes.push(make_node(kind, p, t_new, jet, h, err));
                t = t_new;
                y = y_new;

                let err_c = err.max(1e-10);
                let mut factor = SAFETY * err_c.powf(-PI_ALPHA) * err_prev.powf(PI_BETA);
                factor = factor.clamp(FACTOR_MIN, FACTOR_MAX);
                if rejected_last {
                    factor = factor.min(1.0);
                }
                h = (h * factor).min(span_length);
                err_prev = err_c;
                rejected_last = false;
            }
            Ok((_, err)) => {
                let factor = (SAFETY * err.powf(-1.0 / 5.0)).clamp(FACTOR_MIN, 1.0);
                h *= factor;
                rejected_last = true;
            }
        }
    };

    Ok(Trajectory {
        kind,
        params: p,
        tol: *tol,
        z0: jet0.z,
        dir,
        nodes,
        status,
        backward_status: None,
    })
}

fn underflow_status<T: Scalar>(nodes: &[Node<T>], z0: T, dir: T) -> Status<T> {
    let growing = nodes.len() >= 2 && {
        let n = nodes.len();
        nodes[n - 1].jet.w.modulus() > nodes[n - 2].jet.w.modulus()
            && nodes[n - 1].jet.w.modulus() > 1.0
    };
    if growing {
        Status::Pole {
            z_est: pole_estimate(nodes, z0, dir),
        }
    } else {
        Status::StepUnderflow
    }
}

/// Integrates both ways from `z0`, covering path parameters
/// `[-half_span, half_span]`, and merges into one trajectory ordered by `t`.
pub fn integrate_two_sided<T: Scalar>(
    kind: EquationKind,
    p: Params,
    id: &InitialData<T>,
    half_span: f64,
    tol: &Tolerances,
) -> Result<Trajectory<T>> {
    let forward = integrate(kind, p, id, half_span, tol)?;
    let back_id = InitialData {
        direction: -id.direction,
        ..*id
    };
    let backward = integrate(kind, p, &back_id, half_span, tol)?;

    let mut nodes: Vec<Node<T>> = backward
        .nodes
        .iter()
        .skip(1)
        .rev()
        .map(|n| Node { t: -n.t, ..*n })
        .collect();
    nodes.extend_from_slice(&forward.nodes);
    Ok(Trajectory {
        nodes,
        backward_status: Some(backward.status),
        ..forward
    })
}

impl<T: Scalar> Trajectory<T> {
    pub fn z_at(&self, t: f64) -> T {
        self.z0 + self.dir * t
    }

    /// Path parameter of a point on the path (real part of `(z - z0)/d`).
    pub fn t_of(&self, z: T) -> f64 {
        ((z - self.z0) / self.dir).re()
    }

    /// `(t_first, t_last)`.
    pub fn t_range(&self) -> (f64, f64) {
        (self.nodes[0].t, self.nodes[self.nodes.len() - 1].t)
    }

    pub fn max_abs_w(&self) -> f64 {
        self.nodes
            .iter()
            .map(|n| n.jet.w.modulus())
            .fold(0.0, f64::max)
    }

    /// Largest `|C - C(z0)|` over the nodes, with `z0` the seed node.
    pub fn max_constraint_drift(&self) -> f64 {
        let seed = self.seed_node().constraint;
        self.nodes
            .iter()
            .map(|n| (n.constraint - seed).modulus())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_constraint(&self) -> f64 {
        self.nodes
            .iter()
            .map(|n| n.constraint.modulus())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_residual(&self) -> f64 {
        self.nodes
            .iter()
            .map(|n| n.residual.modulus())
            .fold(0.0, f64::max)
    }

    /// The node at `t = 0`.
    pub fn seed_node(&self) -> &Node<T> {
        self.nodes
            .iter()
            .find(|n| n.t == 0.0)
            .unwrap_or(&self.nodes[0])
    }

    /// Index `i` with `nodes[i].t <= t <= nodes[i+1].t`.
    fn bracket(&self, t: f64) -> Result<usize> {
        let (lo, hi) = self.t_range();
        if !(t >= lo && t <= hi) {
            return Err(Error::OutOfSpan { t, lo, hi });
        }
        let i = self.nodes.partition_point(|n| n.t <= t);
        Ok(i.saturating_sub(1).min(self.nodes.len().saturating_sub(2)))
    }

    /// Jet at path parameter `t` from quintic Hermite interpolation of
    /// `(w, w', w'')` between the bracketing nodes.
    pub fn dense_eval(&self, t: f64) -> Result<Jet3<T>> {
        let i = self.bracket(t)?;
        if let Some(n) = self.nodes.iter().skip(i).take(2).find(|n| n.t == t) {
            return Ok(n.jet);
        }
        let (a, b) = (&self.nodes[i], &self.nodes[i + 1]);
        let h = b.t - a.t;
        let s = (t - a.t) / h;
        let d = self.dir;
        let d2 = d * d;
        // data in path-parameter derivatives
        let ya = [a.jet.w, d * a.jet.w1 * h, d2 * a.jet.w2 * (h * h)];
        let yb = [b.jet.w, d * b.jet.w1 * h, d2 * b.jet.w2 * (h * h)];
        let mut out = [T::zero(); 3];
        for (order, o) in out.iter_mut().enumerate() {
            let basis = hermite5(s, order);
            *o = ya[0] * basis[0]
                + ya[1] * basis[1]
                + ya[2] * basis[2]
                + yb[0] * basis[3]
                + yb[1] * basis[4]
                + yb[2] * basis[5];
        }
        let w1 = out[1] / (d * h);
        let w2 = out[2] / (d2 * (h * h));
        let mut jet = Jet3::new(self.z_at(t), out[0], w1, w2);
        if self.kind == EquationKind::SqrtPiv0 {
            // f'' from the equation is more accurate than the interpolant's curvature
            if let Ok(f2) = rhs2(self.kind, self.params, &jet.truncate()) {
                jet.w2 = f2;
            }
        }
        Ok(jet)
    }

    /// Dense evaluation at a real `z` (real mode).
    pub fn dense_eval_z(&self, z: T) -> Result<Jet3<T>> {
        self.dense_eval(self.t_of(z))
    }
}

/// `order`-th derivative (in `s`) of the quintic Hermite basis on `[0, 1]`,
/// ordered `[value0, slope0, curv0, value1, slope1, curv1]`.
fn hermite5(s: f64, order: usize) -> [f64; 6] {
    // coefficients of s^0..s^5
    const BASIS: [[f64; 6]; 6] = [
        [1.0, 0.0, 0.0, -10.0, 15.0, -6.0],
        [0.0, 1.0, 0.0, -6.0, 8.0, -3.0],
        [0.0, 0.0, 0.5, -1.5, 1.5, -0.5],
        [0.0, 0.0, 0.0, 10.0, -15.0, 6.0],
        [0.0, 0.0, 0.0, -4.0, 7.0, -3.0],
        [0.0, 0.0, 0.0, 0.5, -1.0, 0.5],
    ];
    let mut out = [0.0; 6];
    for (o, coeffs) in out.iter_mut().zip(BASIS.iter()) {
        let mut acc = 0.0;
        for k in (order..6).rev() {
            let mut c = coeffs[k];
            for m in 0..order {
                c *= (k - m) as f64;
            }
            acc = acc * s + c;
        }
        *o = acc;
    }
    out
}
