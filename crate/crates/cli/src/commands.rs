use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use painleve_core::zeros::{check_curvature_theorem, locate_zeros_with, ZeroEvent};
use painleve_core::{integrate, integrate_two_sided, ScalarField, Status, Trajectory};
use rayon::prelude::*;
use serde_json::Value;

use crate::args::{SweepArgs, VerifyArgs};
use crate::output;
use crate::spec::{params, system_spec, FromComplex, RunSpec, SpecMode};
use crate::verify::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNDERFLOW: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

pub const MAX_SWEEP_CELLS: usize = 1_000_000;

pub fn run_spec<T: FromComplex>(spec: &RunSpec) -> Result<Trajectory<T>> {
    let id = spec.initial_data::<T>();
    let t = if spec.two_sided {
        integrate_two_sided(spec.kind, spec.params, &id, spec.span, &spec.tol)
    } else {
        integrate(spec.kind, spec.params, &id, spec.span, &spec.tol)
    }?;
    Ok(t)
}

fn warnings<T: FromComplex>(t: &Trajectory<T>) -> Vec<String> {
    let mut w = Vec::new();
    if t.max_abs_w() == 0.0 {
        w.push("identically zero".to_string());
    }
    for s in std::iter::once(&t.status).chain(t.backward_status.as_ref()) {
        if *s == Status::StepUnderflow {
            w.push("step size underflow before the end of the span".to_string());
        }
    }
    w
}

fn exit_for<T: FromComplex>(t: &Trajectory<T>) -> i32 {
    let underflow = std::iter::once(&t.status)
        .chain(t.backward_status.as_ref())
        .any(|s| *s == Status::StepUnderflow);
    if underflow {
        EXIT_UNDERFLOW
    } else {
        EXIT_OK
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn emit_json(v: &Value, path: Option<&Path>, fallback_stdout: bool) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = create(p)?;
            output::write_json(v, &mut f)?;
            f.flush()?;
        }
        None if fallback_stdout => output::write_json(v, io::stdout().lock())?,
        None => output::write_json(v, io::stderr().lock())?,
    }
    Ok(())
}

fn write_trajectory<T: FromComplex>(t: &Trajectory<T>, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = create(p)?;
            output::write_csv(t, &mut f)?;
            f.flush()?;
        }
        None => output::write_csv(t, io::stdout().lock())?,
    }
    Ok(())
}

/// Trajectory CSV to `--out` (standard output without it) and the summary to
/// `--summary`; without `--summary` the summary goes to standard output if
/// the CSV went to a file and to standard error otherwise.
pub fn cmd_integrate(spec: &RunSpec) -> Result<i32> {
    match spec.field {
        ScalarField::Real => integrate_typed::<f64>(spec),
        ScalarField::Complex => integrate_typed::<Complex64>(spec),
    }
}

fn integrate_typed<T: FromComplex>(spec: &RunSpec) -> Result<i32> {
    let t = run_spec::<T>(spec)?;
    let events = locate_zeros_with(&t, &spec.scan);
    let warns = warnings(&t);
    for w in &warns {
        log::warn!("{w}");
    }
    write_trajectory(&t, spec.out.as_deref())?;
    let summary = output::summary_json(&t, &events, &warns, spec.seed, vec![]);
    emit_json(&summary, spec.summary.as_deref(), spec.out.is_some())?;
    Ok(exit_for(&t))
}

/// Events JSON to `--summary` (standard output without it); the trajectory
/// CSV only when `--out` is given.
pub fn cmd_zeros(spec: &RunSpec) -> Result<i32> {
    if spec.field != ScalarField::Real {
        bail!("--field: zeros runs in real mode only");
    }
    let t = run_spec::<f64>(spec)?;
    let events = locate_zeros_with(&t, &spec.scan);
    let mut warns = warnings(&t);
    let mut extra = Vec::new();
    if spec.kind.is_piv() && spec.params.beta == 0.0 {
        let report = check_curvature_theorem(&events, &t, spec.scan.curv_floor)?;
        if !report.passed() {
            warns.push(format!(
                "{} zero(s) with nonzero slope or vanishing curvature",
                report.violations.len()
            ));
        }
        extra.push(("curvature_check", output::curvature_json(&report)));
    }
    for w in &warns {
        log::warn!("{w}");
    }
    if spec.out.is_some() {
        write_trajectory(&t, spec.out.as_deref())?;
    }
    let summary = output::summary_json(&t, &events, &warns, spec.seed, extra);
    emit_json(&summary, spec.summary.as_deref(), true)?;
    Ok(exit_for(&t))
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let count = a.count.unwrap_or(a.suite.default_count());
    if count == 0 {
        bail!("--count: must be positive");
    }
    let props = run_suite(a.suite, a.seed, count);
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "suite {} seed {} count {}",
        a.suite.name(),
        a.seed,
        count
    )?;
    for p in &props {
        writeln!(out, "{p}")?;
    }
    let failed = props.iter().filter(|p| !p.passed()).count();
    if failed == 0 {
        writeln!(out, "all {} properties passed", props.len())?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "{failed} of {} properties failed", props.len())?;
        Ok(EXIT_PROPERTY)
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// One sweep cell: grid values and either the run summary or the error.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub alpha: f64,
    pub beta: f64,
    pub w0: Option<f64>,
    pub outcome: Result<CellSummary, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub status: &'static str,
    pub zero_count: usize,
    pub pole_estimate: Option<Complex64>,
    pub max_c_drift: f64,
    pub max_c_drift_scaled: f64,
    /// Curvature check for `β = 0` PIV cells.
    pub curvature_ok: Option<bool>,
}

impl Cell {
    pub fn failed(&self) -> bool {
        match &self.outcome {
            Ok(s) => s.status == Status::<f64>::StepUnderflow.name(),
            Err(_) => true,
        }
    }
}

fn summarize<T: FromComplex>(spec: &RunSpec) -> Result<CellSummary> {
    let t = run_spec::<T>(spec)?;
    let events: Vec<ZeroEvent<T>> = locate_zeros_with(&t, &spec.scan);
    let curvature_ok =
        if spec.kind.is_piv() && spec.params.beta == 0.0 {
            Some(events.iter().all(|e| {
                e.curvature_nonzero == Some(true) && e.slope.modulus() < spec.scan.slope_tol
            }))
        } else {
            None
        };
    let underflow = std::iter::once(&t.status)
        .chain(t.backward_status.as_ref())
        .any(|s| *s == Status::StepUnderflow);
    let status = if underflow {
        Status::<T>::StepUnderflow.name()
    } else {
        t.status.name()
    };
    let pole_estimate = [Some(t.status), t.backward_status]
        .into_iter()
        .flatten()
        .find_map(|s| match s {
            Status::Pole { z_est } => Some(Complex64::new(z_est.re(), z_est.im())),
            _ => None,
        });
    Ok(CellSummary {
        status,
        zero_count: events.len(),
        pole_estimate,
        max_c_drift: t.max_constraint_drift(),
        max_c_drift_scaled: output::scaled_constraint_drift(&t),
        curvature_ok,
    })
}

pub fn sweep_cells(a: &SweepArgs) -> Result<Vec<Cell>> {
    let mut system = a.system.clone();
    if a.w0_min.is_some() && system.w0.is_none() && system.zero_branch.is_none() {
        // the grid supplies w0
        system.w0 = a.w0_min;
    }
    let base = system_spec(&system, &a.tol)?;
    let w0_grid = match (a.w0_min, a.w0_max) {
        (None, None) => None,
        (Some(lo), Some(hi)) => {
            if matches!(base.mode, SpecMode::Zero { .. }) {
                bail!("--w0-min/--w0-max: conflict with --zero-branch");
            }
            Some(linspace(lo, hi, a.w0_steps))
        }
        _ => bail!("--w0-min/--w0-max: give both or neither"),
    };
    let alphas = linspace(a.alpha_min, a.alpha_max, a.alpha_steps);
    let betas = linspace(a.beta_min, a.beta_max, a.beta_steps);
    let w0s: Vec<Option<f64>> = match &w0_grid {
        Some(g) => g.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let cells = alphas.len() * betas.len() * w0s.len();
    if cells == 0 {
        bail!("grid: empty (every --*-steps must be at least 1)");
    }
    if cells > MAX_SWEEP_CELLS {
        bail!("grid: {cells} cells exceeds the limit of {MAX_SWEEP_CELLS}");
    }
    for (name, x) in [
        ("--alpha-min", a.alpha_min),
        ("--alpha-max", a.alpha_max),
        ("--beta-min", a.beta_min),
        ("--beta-max", a.beta_max),
    ] {
        if !x.is_finite() {
            bail!("{name}: must be finite, got {x}");
        }
    }

    let (betas, w0s) = (&betas, &w0s);
    let grid: Vec<(f64, f64, Option<f64>)> = alphas
        .iter()
        .flat_map(|&al| {
            betas
                .iter()
                .flat_map(move |&be| w0s.iter().map(move |&w| (al, be, w)))
        })
        .collect();
    let out = grid
        .into_par_iter()
        .map(|(alpha, beta, w0)| {
            let outcome = (|| -> Result<CellSummary> {
                let mut spec = base.clone();
                spec.params = params(spec.kind, alpha, beta)?;
                if let Some(w) = w0 {
                    let w = Complex64::new(w, a.system.w0_im);
                    spec.mode = match spec.mode {
                        SpecMode::NonZero { w1, .. } => SpecMode::NonZero { w0: w, w1 },
                        SpecMode::Raw { w1, w2, .. } => SpecMode::Raw { w0: w, w1, w2 },
                        m => m,
                    };
                }
                match spec.field {
                    ScalarField::Real => summarize::<f64>(&spec),
                    ScalarField::Complex => summarize::<Complex64>(&spec),
                }
            })()
            .map_err(|e| format!("{e:#}"));
            Cell {
                alpha,
                beta,
                w0,
                outcome,
            }
        })
        .collect();
    Ok(out)
}

pub const SWEEP_HEADER: [&str; 12] = [
    "index",
    "alpha",
    "beta",
    "w0",
    "status",
    "zero_count",
    "pole_re",
    "pole_im",
    "max_C_drift",
    "max_C_drift_scaled",
    "curvature_ok",
    "error",
];

pub fn write_sweep<W: Write>(cells: &[Cell], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    let f = output::fmt_num;
    for (i, c) in cells.iter().enumerate() {
        let w0 = c.w0.map(f).unwrap_or_default();
        let row: Vec<String> = match &c.outcome {
            Ok(s) => vec![
                i.to_string(),
                f(c.alpha),
                f(c.beta),
                w0,
                s.status.to_string(),
                s.zero_count.to_string(),
                s.pole_estimate.map(|z| f(z.re)).unwrap_or_default(),
                s.pole_estimate.map(|z| f(z.im)).unwrap_or_default(),
                f(s.max_c_drift),
                f(s.max_c_drift_scaled),
                s.curvature_ok.map(|b| b.to_string()).unwrap_or_default(),
                String::new(),
            ],
            Err(e) => {
                let mut row = vec![i.to_string(), f(c.alpha), f(c.beta), w0, "ERROR".into()];
                row.resize(SWEEP_HEADER.len() - 1, String::new());
                row.push(e.clone());
                row
            }
        };
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Summary rows in grid order (alpha outermost, then beta, then w0).
pub fn cmd_sweep(a: &SweepArgs) -> Result<i32> {
    let cells = sweep_cells(a)?;
    match &a.out {
        Some(p) => {
            let mut f = create(p)?;
            write_sweep(&cells, &mut f)?;
            f.flush()?;
        }
        None => write_sweep(&cells, io::stdout().lock())?,
    }
    let failed = cells.iter().filter(|c| c.failed()).count();
    if failed > 0 {
        log::warn!("{failed} of {} cells failed", cells.len());
    }
    if failed == cells.len() {
        bail!("sweep: all {} cells failed", cells.len());
    }
    Ok(EXIT_OK)
}
