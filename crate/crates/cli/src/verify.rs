//! Randomized property suites behind `painleve verify`.
//!
//! Random jets draw every entry uniformly from `[-10, 10]`, redrawing `w`
//! while `|w| < 1e-3` wherever the check divides by it. Deviations of
//! quantities that grow with the jet are measured relative to the largest
//! term involved (never less than 1), so a run approaching a pole is judged
//! on the same footing as an O(1) one.

use std::fmt;

use num_complex::Complex64;
use painleve_core::equations::{jet_identity_scales, residual2_scale};
use painleve_core::oracles::{
    eval_quadratic, fit_quadratic, sqrt_lift, square_push, xxix_integral_scales, xxix_integrals,
    xxix_pole_family, xxxii_u_integral,
};
use painleve_core::zeros::{locate_zeros, DEFAULT_SLOPE_TOL};
use painleve_core::{
    constraint_c, integrate, integrate_two_sided, jet_identities, residual2, rhs2, rhs3,
    EquationKind, InitialData, Jet2, Jet3, Params, Status, Tolerances, Trajectory,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::Suite;
use crate::output::scaled_constraint_drift;

pub const JET_RANGE: f64 = 10.0;
pub const MIN_ABS_W: f64 = 1e-3;

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Constraint => "constraint",
            Suite::ClosedForms => "closed-forms",
            Suite::XxixIntegrals => "xxix-integrals",
            Suite::Sqrt => "sqrt",
        }
    }

    pub fn default_count(self) -> usize {
        match self {
            Suite::Identities => 1000,
            Suite::Constraint => 50,
            Suite::ClosedForms => 100,
            Suite::XxixIntegrals => 50,
            Suite::Sqrt => 50,
        }
    }
}

/// Worst deviation of one property over a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Property {
    pub name: &'static str,
    pub threshold: f64,
    pub worst: f64,
    pub samples: usize,
    /// Instances that could not be evaluated at all.
    pub errors: Vec<String>,
}

impl Property {
    fn new(name: &'static str, threshold: f64) -> Self {
        Property {
            name,
            threshold,
            worst: 0.0,
            samples: 0,
            errors: Vec::new(),
        }
    }

    fn observe(&mut self, deviation: f64) {
        self.samples += 1;
        // NaN poisons the maximum on purpose
        if !(deviation <= self.worst) {
            self.worst = deviation;
        }
    }

    fn error(&mut self, msg: impl fmt::Display) {
        self.samples += 1;
        self.errors.push(msg.to_string());
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.worst < self.threshold
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<34} worst {:.3e}  threshold {:.0e}  n = {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.threshold,
            self.samples
        )?;
        for e in self.errors.iter().take(5) {
            write!(f, "\n     error: {e}")?;
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, seed: u64, count: usize) -> Vec<Property> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Identities => identities(&mut rng, count),
        Suite::Constraint => constraint(&mut rng, count),
        Suite::ClosedForms => closed_forms(&mut rng, count),
        Suite::XxixIntegrals => xxix(&mut rng, count),
        Suite::Sqrt => sqrt(&mut rng, count),
    }
}

fn entry(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-JET_RANGE..=JET_RANGE)
}

fn nonzero_entry(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let w = entry(rng);
        if w.abs() >= MIN_ABS_W {
            return w;
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng) -> Params {
    Params {
        alpha: rng.gen_range(-2.0..=2.0),
        beta: rng.gen_range(-2.0..=2.0),
    }
}

fn rel(dev: f64, scale: f64) -> f64 {
    dev / scale.max(1.0)
}

fn identities(rng: &mut ChaCha8Rng, count: usize) -> Vec<Property> {
    let mut d1 = Property::new("product identity (real)", 1e-12);
    let mut d2 = Property::new("rival identity (real)", 1e-12);
    let mut c1 = Property::new("product identity (complex)", 1e-12);
    let mut c2 = Property::new("rival identity (complex)", 1e-12);
    let mut flow = Property::new("product identity on PIV' flow", 1e-12);
    for _ in 0..count {
        let j = Jet3::new(entry(rng), nonzero_entry(rng), entry(rng), entry(rng));
        let w3 = entry(rng);
        let (s1, s2) = jet_identity_scales(&j, w3);
        let (e1, e2) = jet_identities(&j, w3);
        d1.observe(rel(e1.abs(), s1));
        match e2 {
            Ok(e2) => d2.observe(rel(e2.abs(), s2)),
            Err(e) => d2.error(e),
        }

        let c = |rng: &mut ChaCha8Rng| Complex64::new(entry(rng), entry(rng));
        let w = loop {
            let w = c(rng);
            if w.norm() >= MIN_ABS_W {
                break w;
            }
        };
        let jc = Jet3::new(c(rng), w, c(rng), c(rng));
        let w3c = c(rng);
        let (s1, s2) = jet_identity_scales(&jc, w3c);
        let (e1, e2) = jet_identities(&jc, w3c);
        c1.observe(rel(e1.norm(), s1));
        match e2 {
            Ok(e2) => c2.observe(rel(e2.norm(), s2)),
            Err(e) => c2.error(e),
        }

        let p = random_params(rng);
        let w3 = rhs3(EquationKind::Piv, p, j.z, j.w, j.w1).expect("piv has a third-order form");
        let (s1, _) = jet_identity_scales(&j, w3);
        flow.observe(rel(jet_identities(&j, w3).0.abs(), s1));
    }
    vec![d1, d2, c1, c2, flow]
}

fn constraint(rng: &mut ChaCha8Rng, count: usize) -> Vec<Property> {
    let tol = Tolerances {
        rel: 1e-10,
        abs: 1e-10,
        ..Tolerances::default()
    };
    let mut drift = Property::new("C drift along PIV' runs", 1e-7);
    let mut start_zero = Property::new("C = 0 for second-order data", 1e-12);
    let mut same = Property::new("residual2 equals C", 1e-300);
    for _ in 0..count {
        let p = random_params(rng);
        let id = InitialData::raw(entry(rng), entry(rng), entry(rng), entry(rng));
        match integrate(EquationKind::Piv, p, &id, 2.0, &tol) {
            Ok(t) => drift.observe(scaled_constraint_drift(&t)),
            Err(e) => drift.error(e),
        }

        let j2 = Jet2::new(entry(rng), nonzero_entry(rng), entry(rng));
        match rhs2(EquationKind::Piv, p, &j2) {
            Ok(w2) => {
                let j = j2.with_w2(w2);
                let scale = residual2_scale(EquationKind::Piv, p, &j);
                start_zero.observe(rel(constraint_c(p, &j).abs(), scale));
            }
            Err(e) => start_zero.error(e),
        }

        let j = Jet3::new(entry(rng), entry(rng), entry(rng), entry(rng));
        same.observe((residual2(EquationKind::Piv, p, &j) - constraint_c(p, &j)).abs());
    }
    vec![drift, start_zero, same]
}

fn quadratic_closure(
    kind: EquationKind,
    j2: Jet2<f64>,
    span: f64,
    closure: &mut Property,
    disc: &mut Property,
    absolute: bool,
) {
    let q = match fit_quadratic(kind, &j2) {
        Ok(q) => q,
        Err(e) => return disc.error(e),
    };
    let required = if kind == EquationKind::Xxxii {
        1.0
    } else {
        0.0
    };
    let d_scale = if absolute {
        1.0
    } else {
        (q.b * q.b).max((4.0 * q.a * q.c).abs())
    };
    disc.observe(rel((q.discriminant() - required).abs(), d_scale));
    let id = InitialData::nonzero(j2.z, j2.w, j2.w1);
    let t = match integrate(kind, Params::ZERO, &id, span, &Tolerances::default()) {
        Ok(t) => t,
        Err(e) => return closure.error(e),
    };
    let worst = t
        .nodes
        .iter()
        .map(|n| {
            let z = n.jet.z;
            let exact = eval_quadratic(&q, z);
            let scale = if absolute {
                1.0
            } else {
                (q.a * z * z).abs().max((q.b * z).abs()).max(q.c.abs())
            };
            rel((n.jet.w - exact.w).abs(), scale)
        })
        .fold(0.0, f64::max);
    closure.observe(worst);
}

fn closed_forms(rng: &mut ChaCha8Rng, count: usize) -> Vec<Property> {
    let mut fixed = Property::new("fixed quadratics (absolute)", 1e-9);
    let mut fixed_disc = Property::new("fixed discriminants", 1e-12);
    quadratic_closure(
        EquationKind::Xxxii,
        Jet2::new(0.0, 2.0, 3.0),
        4.0,
        &mut fixed,
        &mut fixed_disc,
        true,
    );
    quadratic_closure(
        EquationKind::Xvii,
        Jet2::new(0.0, 1.0, 2.0),
        4.0,
        &mut fixed,
        &mut fixed_disc,
        true,
    );

    let mut x32 = Property::new("XXXII runs stay on their quadratic", 1e-9);
    let mut x17 = Property::new("XVII runs stay on their quadratic", 1e-9);
    let mut disc = Property::new("fitted discriminants", 1e-10);
    let mut u = Property::new("XXXII u-integral equals a", 1e-8);
    for _ in 0..count {
        let j = Jet2::new(entry(rng), nonzero_entry(rng), entry(rng));
        quadratic_closure(EquationKind::Xxxii, j, 2.0, &mut x32, &mut disc, false);
        let j = Jet2::new(entry(rng), nonzero_entry(rng), entry(rng));
        quadratic_closure(EquationKind::Xvii, j, 2.0, &mut x17, &mut disc, false);

        let j = Jet2::new(entry(rng), nonzero_entry(rng).abs(), entry(rng));
        match (
            fit_quadratic(EquationKind::Xxxii, &j),
            xxxii_u_integral(&j, 1.0),
        ) {
            (Ok(q), Ok(k)) => u.observe(rel((k - q.a).abs(), q.a.abs())),
            (Err(e), _) | (_, Err(e)) => u.error(e),
        }
    }
    vec![fixed, fixed_disc, x32, x17, disc, u]
}

/// Integral drifts along one XXIX run, into `[k, L, |L|, K - 2k]`.
fn xxix_run(t: &Trajectory<f64>, [k, l, l_zero, big_k]: [&mut Property; 4]) {
    let i0 = xxix_integrals(&t.seed_node().jet);
    for n in &t.nodes {
        let i = xxix_integrals(&n.jet);
        let (ks, ls) = xxix_integral_scales(&n.jet);
        k.observe(rel((i.k - i0.k).abs(), ks));
        l.observe(rel((i.l - i0.l).abs(), ls));
        l_zero.observe(rel(i.l.abs(), ls));
        big_k.observe((i.big_k - 2.0 * i.k).abs());
    }
}

fn xxix(rng: &mut ChaCha8Rng, count: usize) -> Vec<Property> {
    let mut k = Property::new("k constant along XXIX runs", 1e-7);
    let mut l = Property::new("L constant along XXIX runs", 1e-7);
    let mut l_zero = Property::new("L = 0 on XXIX solutions", 1e-8);
    let mut big_k = Property::new("K = 2k", 1e-300);
    let mut family = Property::new("pole family has k = L = 0", 1e-12);
    let mut pole = Property::new("pole of 1/(1 - z) located", 1e-3);

    match integrate(
        EquationKind::Xxix,
        Params::ZERO,
        &InitialData::nonzero(0.0, 1.0, 1.0),
        2.0,
        &Tolerances::default(),
    ) {
        Ok(t) => {
            xxix_run(&t, [&mut k, &mut l, &mut l_zero, &mut big_k]);
            match t.status {
                Status::Pole { z_est } => pole.observe((z_est - 1.0).abs()),
                s => pole.error(format!("run ended {}", s.name())),
            }
        }
        Err(e) => pole.error(e),
    }

    for _ in 0..count {
        let id = InitialData::nonzero(entry(rng), nonzero_entry(rng), entry(rng));
        match integrate(
            EquationKind::Xxix,
            Params::ZERO,
            &id,
            2.0,
            &Tolerances::default(),
        ) {
            Ok(t) => xxix_run(&t, [&mut k, &mut l, &mut l_zero, &mut big_k]),
            Err(e) => k.error(e),
        }
        let c = entry(rng);
        let z = c + rng.gen_range(0.1..=JET_RANGE) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        match xxix_pole_family(c, z) {
            Ok(j) => {
                let i = xxix_integrals(&j);
                let (ks, ls) = xxix_integral_scales(&j);
                family.observe(rel(i.k.abs(), ks).max(rel(i.l.abs(), ls)));
            }
            Err(e) => family.error(e),
        }
    }
    vec![k, l, l_zero, big_k, family, pole]
}

fn sqrt(rng: &mut ChaCha8Rng, count: usize) -> Vec<Property> {
    let mut push = Property::new("square_push satisfies PIV0", 1e-8);
    let mut trip = Property::new("lift reproduces f", 1e-7);
    let mut jump = Property::new("lift f' continuous at the zero", 1e-7);
    let tol = Tolerances::default();

    // f(0) = 0.5, f'(0) = 0 over [0, 1]: no zero, f stays positive
    lift_round_trip(
        0.0, 0.5, 0.0, 0.0, 1.0, &tol, &mut push, &mut trip, &mut jump,
    );

    for _ in 0..count {
        // zero at the seed: exercises the sign switch and continuity
        let t0 = rng.gen_range(-0.5..=0.5);
        let fdot = rng.gen_range(0.5..=2.0);
        lift_round_trip(
            t0,
            0.0,
            fdot,
            t0 - 0.5,
            t0 + 0.5,
            &tol,
            &mut push,
            &mut trip,
            &mut jump,
        );

        // free square-root runs, pushed node by node
        let id = InitialData::nonzero(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-2.0..=2.0),
            rng.gen_range(-2.0..=2.0),
        );
        match integrate(EquationKind::SqrtPiv0, Params::ZERO, &id, 1.0, &tol) {
            Ok(t) => {
                for n in &t.nodes {
                    let j = square_push(n.jet.z, n.jet.w, n.jet.w1);
                    let r = residual2(EquationKind::Piv0, Params::ZERO, &j);
                    push.observe(rel(
                        r.abs(),
                        residual2_scale(EquationKind::Piv0, Params::ZERO, &j),
                    ));
                }
            }
            Err(e) => push.error(e),
        }
    }
    vec![push, trip, jump]
}

/// Integrates the square-root equation from `(t0, f0, fdot0)` and PIV0 from
/// the pushed jet over `[lo, hi]`, lifts the latter and compares.
#[allow(clippy::too_many_arguments)]
fn lift_round_trip(
    t0: f64,
    f0: f64,
    fdot0: f64,
    lo: f64,
    hi: f64,
    tol: &Tolerances,
    push: &mut Property,
    trip: &mut Property,
    jump: &mut Property,
) {
    let run = |kind: EquationKind, id: InitialData<f64>| {
        if lo < t0 {
            integrate_two_sided(kind, Params::ZERO, &id, hi - t0, tol)
        } else {
            integrate(kind, Params::ZERO, &id, hi - t0, tol)
        }
    };
    let f_run = match run(EquationKind::SqrtPiv0, InitialData::raw(t0, f0, fdot0, 0.0)) {
        Ok(t) => t,
        Err(e) => return trip.error(e),
    };
    for n in &f_run.nodes {
        let j = square_push(n.jet.z, n.jet.w, n.jet.w1);
        let r = residual2(EquationKind::Piv0, Params::ZERO, &j);
        push.observe(rel(
            r.abs(),
            residual2_scale(EquationKind::Piv0, Params::ZERO, &j),
        ));
    }
    let seed = square_push(t0, f0, fdot0);
    let w_run = match run(
        EquationKind::Piv0,
        InitialData::raw(t0, seed.w, seed.w1, seed.w2),
    ) {
        Ok(t) => t,
        Err(e) => return trip.error(e),
    };
    if f_run.status != Status::Completed || w_run.status != Status::Completed {
        return trip.error(format!(
            "runs from ({t0}, {f0}, {fdot0}) ended {} / {}",
            f_run.status.name(),
            w_run.status.name()
        ));
    }
    let events: Vec<_> = locate_zeros(&w_run, DEFAULT_SLOPE_TOL)
        .into_iter()
        .filter(|e| e.a >= lo && e.a <= hi)
        .collect();
    if events.len() > 1 {
        return trip.error(format!("{} zeros in [{lo}, {hi}]", events.len()));
    }
    let lift = match sqrt_lift(&w_run, events.first(), (lo, hi)) {
        Ok(l) => l,
        Err(e) => return trip.error(e),
    };
    // the lift crosses zero increasing; a decreasing f is its negative
    let sign = if fdot0 < 0.0 || (f0 < 0.0 && events.is_empty()) {
        -1.0
    } else {
        1.0
    };
    let mut worst: f64 = 0.0;
    for s in &lift.samples {
        match f_run.dense_eval_z(s.t) {
            Ok(j) => worst = worst.max(rel((sign * s.f - j.w).abs(), j.w.abs())),
            Err(e) => return trip.error(e),
        }
    }
    trip.observe(worst);
    if let Some(d) = lift.fdot_jump {
        jump.observe(d);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_bookkeeping() {
        let mut p = Property::new("x", 1e-3);
        p.observe(1e-5);
        p.observe(1e-4);
        assert!(p.passed());
        assert_eq!((p.worst, p.samples), (1e-4, 2));
        p.observe(f64::NAN);
        assert!(!p.passed());
        let mut q = Property::new("y", 1.0);
        q.error("boom");
        assert!(!q.passed());
        assert!(q.to_string().starts_with("FAIL"));
    }

    #[test]
    fn suites_pass_on_small_counts() {
        for suite in [
            Suite::Identities,
            Suite::Constraint,
            Suite::ClosedForms,
            Suite::XxixIntegrals,
            Suite::Sqrt,
        ] {
            for p in run_suite(suite, 1, 5) {
                assert!(p.passed(), "{}: {p}", suite.name());
            }
        }
    }

    #[test]
    fn suites_are_deterministic() {
        assert_eq!(
            run_suite(Suite::Constraint, 3, 3),
            run_suite(Suite::Constraint, 3, 3)
        );
    }
}
