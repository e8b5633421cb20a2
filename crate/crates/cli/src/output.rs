//! Trajectory CSV and JSON serialization.
//!
//! Every number is written with 17 significant digits, which round-trips
//! `f64` exactly.

use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use painleve_core::equations::residual2_scale;
use painleve_core::zeros::{CurvatureReport, ZeroEvent};
use painleve_core::{Scalar, ScalarField, Status, Trajectory};
use serde_json::{json, Map, Number, Value};

pub const CSV_HEADER: [&str; 14] = [
    "z_re", "z_im", "w_re", "w_im", "w1_re", "w1_im", "w2_re", "w2_im", "h", "err_est", "C_re",
    "C_im", "res2_re", "res2_im",
];

pub const CONVENTION: &str = "Ince XXXI β² convention";

/// Largest `|C - C(z0)|` relative to the largest term of `C` at each node
/// (never less than 1). Near a pole the terms of `C` grow like `|w|^4`, so
/// the absolute drift says little there.
pub fn scaled_constraint_drift<T: Scalar>(t: &Trajectory<T>) -> f64 {
    let c0 = t.seed_node().constraint;
    t.nodes
        .iter()
        .map(|n| (n.constraint - c0).modulus() / residual2_scale(t.kind, t.params, &n.jet).max(1.0))
        .fold(0.0, f64::max)
}

pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number at 17 significant digits; `null` for non-finite values.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let n: Number = serde_json::from_str(&fmt_num(x)).expect("formatted float is a JSON number");
    Value::Number(n)
}

/// A bare number in real mode, `{"re", "im"}` in complex mode.
pub fn scalar<T: Scalar>(x: T) -> Value {
    match T::FIELD {
        ScalarField::Real => num(x.re()),
        ScalarField::Complex => json!({ "re": num(x.re()), "im": num(x.im()) }),
    }
}

pub fn csv_row<T: Scalar>(n: &painleve_core::Node<T>) -> [f64; 14] {
    let j = &n.jet;
    [
        j.z.re(),
        j.z.im(),
        j.w.re(),
        j.w.im(),
        j.w1.re(),
        j.w1.im(),
        j.w2.re(),
        j.w2.im(),
        n.h,
        n.err_est,
        n.constraint.re(),
        n.constraint.im(),
        n.residual.re(),
        n.residual.im(),
    ]
}

pub fn write_csv<T: Scalar, W: Write>(t: &Trajectory<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for n in &t.nodes {
        w.write_record(csv_row(n).iter().map(|&x| fmt_num(x)))?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a trajectory CSV back into rows, checking the header.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<[f64; 14]>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        bail!("unexpected CSV header: {:?}", header);
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let mut row = [0.0; 14];
        for (k, field) in rec.iter().enumerate() {
            if k >= 14 {
                bail!("row {}: too many columns", i + 1);
            }
            row[k] = field
                .parse()
                .with_context(|| format!("row {}, column {}", i + 1, CSV_HEADER[k]))?;
        }
        if rec.len() != 14 {
            bail!("row {}: expected 14 columns, got {}", i + 1, rec.len());
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn status_json<T: Scalar>(s: &Status<T>) -> Value {
    match s {
        Status::Pole { z_est } => json!({ "status": s.name(), "pole_estimate": scalar(*z_est) }),
        _ => json!({ "status": s.name() }),
    }
}

pub fn event_json<T: Scalar>(e: &ZeroEvent<T>) -> Value {
    let mut m = Map::new();
    m.insert("a".into(), scalar(e.a));
    m.insert("t".into(), num(e.t));
    m.insert("w".into(), scalar(e.w));
    m.insert("slope".into(), scalar(e.slope));
    m.insert("curvature".into(), scalar(e.curvature));
    m.insert("branch".into(), e.branch.name().into());
    m.insert(
        "curvature_nonzero".into(),
        e.curvature_nonzero.map_or(Value::Null, Value::Bool),
    );
    m.insert("shape".into(), e.shape.name().into());
    m.insert("isolated".into(), e.isolated.into());
    Value::Object(m)
}

pub fn curvature_json(r: &CurvatureReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "a": num(v.a),
                "slope": num(v.slope),
                "curvature": num(v.curvature),
                "slope_ok": v.slope_ok,
                "curvature_ok": v.curvature_ok,
            })
        })
        .collect();
    json!({
        "checked": r.checked,
        "passed": r.passed(),
        "identically_zero": r.identically_zero,
        "violations": violations,
    })
}

/// Run summary; `extra` entries are appended after the standard fields.
pub fn summary_json<T: Scalar>(
    t: &Trajectory<T>,
    events: &[ZeroEvent<T>],
    warnings: &[String],
    seed: Option<u64>,
    extra: Vec<(&str, Value)>,
) -> Value {
    let mut m = Map::new();
    m.insert("equation".into(), t.kind.name().into());
    m.insert(
        "params".into(),
        json!({ "alpha": num(t.params.alpha), "beta": num(t.params.beta) }),
    );
    m.insert("convention".into(), CONVENTION.into());
    m.insert(
        "field".into(),
        match T::FIELD {
            ScalarField::Real => "real",
            ScalarField::Complex => "complex",
        }
        .into(),
    );
    m.insert("z0".into(), scalar(t.z0));
    m.insert("direction".into(), scalar(t.dir));
    m.insert("status".into(), t.status.name().into());
    m.insert(
        "pole_estimate".into(),
        match t.status {
            Status::Pole { z_est } => scalar(z_est),
            _ => Value::Null,
        },
    );
    m.insert(
        "backward_status".into(),
        t.backward_status.as_ref().map_or(Value::Null, status_json),
    );
    m.insert("node_count".into(), t.nodes.len().into());
    let (lo, hi) = t.t_range();
    m.insert("t_range".into(), json!([num(lo), num(hi)]));
    m.insert("max_abs_C".into(), num(t.max_abs_constraint()));
    m.insert("max_abs_residual2".into(), num(t.max_abs_residual()));
    m.insert("max_C_drift".into(), num(t.max_constraint_drift()));
    m.insert("max_C_drift_scaled".into(), num(scaled_constraint_drift(t)));
    m.insert("events".into(), events.iter().map(event_json).collect());
    m.insert(
        "warnings".into(),
        warnings.iter().map(|w| Value::from(w.as_str())).collect(),
    );
    m.insert("seed".into(), seed.map_or(Value::Null, Value::from));
    for (k, v) in extra {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

pub fn write_json<W: Write>(v: &Value, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use painleve_core::{integrate, EquationKind, InitialData, Params, Tolerances};

    #[test]
    fn numbers_keep_17_digits() {
        for x in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            1e300,
            0.0,
            f64::MIN_POSITIVE,
            5e-324,
        ] {
            let s = num(x).to_string();
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(num(1.0 / 3.0).to_string(), "3.3333333333333331e-1");
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(num(f64::INFINITY), Value::Null);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let tr = integrate(
            EquationKind::Piv,
            Params::new(0.3, 0.7).unwrap(),
            &InitialData::nonzero(0.1, 0.9, -0.2),
            1.0,
            &Tolerances::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&tr, &mut buf).unwrap();
        let rows = read_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), tr.nodes.len());
        for (r, n) in rows.iter().zip(&tr.nodes) {
            assert_eq!(r, &csv_row(n));
        }
    }

    #[test]
    fn csv_rejects_bad_header() {
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn summary_has_required_fields() {
        let tr = integrate(
            EquationKind::Xxxii,
            Params::ZERO,
            &InitialData::nonzero(0.0, 2.0, 3.0),
            1.0,
            &Tolerances::default(),
        )
        .unwrap();
        let v = summary_json(&tr, &[], &[], None, vec![]);
        for key in [
            "equation",
            "params",
            "convention",
            "status",
            "node_count",
            "max_abs_C",
            "max_abs_residual2",
            "events",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["convention"], CONVENTION);
        assert_eq!(v["status"], "COMPLETED");
    }
}
