//! Validated run specifications built from command-line arguments.

use std::path::PathBuf;

use anyhow::{bail, Result};
use num_complex::Complex64;
use painleve_core::zeros::ScanOptions;
use painleve_core::{
    EquationKind, InitialData, InitialMode, Params, Scalar, ScalarField, Tolerances, ZeroBranch,
};

use crate::args::{BranchArg, Field, RunArgs, SystemArgs, TolArgs};

/// Conversion from the complex values held by a spec to the run's scalar.
pub trait FromComplex: Scalar {
    fn from_complex(c: Complex64) -> Self;
}

impl FromComplex for f64 {
    fn from_complex(c: Complex64) -> Self {
        c.re
    }
}

impl FromComplex for Complex64 {
    fn from_complex(c: Complex64) -> Self {
        c
    }
}

/// Initial data before the scalar field is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecMode {
    NonZero {
        w0: Complex64,
        w1: Complex64,
    },
    Zero {
        branch: ZeroBranch,
        w2: Complex64,
    },
    Raw {
        w0: Complex64,
        w1: Complex64,
        w2: Complex64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub kind: EquationKind,
    pub params: Params,
    pub field: ScalarField,
    pub z0: Complex64,
    pub mode: SpecMode,
    pub span: f64,
    pub two_sided: bool,
    pub dir: Complex64,
    pub tol: Tolerances,
    pub scan: ScanOptions,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunSpec {
    pub fn from_args(a: &RunArgs) -> Result<Self> {
        let mut spec = system_spec(&a.system, &a.tol)?;
        spec.params = params(spec.kind, a.alpha, a.beta)?;
        spec.out = a.out.clone();
        spec.summary = a.summary.clone();
        spec.seed = a.seed;
        Ok(spec)
    }

    pub fn initial_data<T: FromComplex>(&self) -> InitialData<T> {
        let c = T::from_complex;
        let mode = match self.mode {
            SpecMode::NonZero { w0, w1 } => InitialMode::NonZero {
                w0: c(w0),
                w1: c(w1),
            },
            SpecMode::Zero { branch, w2 } => InitialMode::Zero { branch, w2: c(w2) },
            SpecMode::Raw { w0, w1, w2 } => InitialMode::Raw {
                w0: c(w0),
                w1: c(w1),
                w2: c(w2),
            },
        };
        InitialData::new(c(self.z0), mode).with_direction(c(self.dir))
    }
}

pub fn params(kind: EquationKind, alpha: f64, beta: f64) -> Result<Params> {
    if !alpha.is_finite() {
        bail!("--alpha: must be finite, got {alpha}");
    }
    if !beta.is_finite() {
        bail!("--beta: must be finite, got {beta}");
    }
    let p = Params { alpha, beta };
    if kind.check_params(p).is_err() {
        bail!("--alpha/--beta: {kind} takes alpha = beta = 0, got alpha = {alpha}, beta = {beta}");
    }
    Ok(p)
}

fn finite(name: &str, x: f64) -> Result<f64> {
    if !x.is_finite() {
        bail!("{name}: must be finite, got {x}");
    }
    Ok(x)
}

/// Everything but the parameters and output paths.
pub fn system_spec(s: &SystemArgs, t: &TolArgs) -> Result<RunSpec> {
    let Some(kind) = EquationKind::from_name(&s.eq) else {
        bail!(
            "--eq: unknown equation {:?} (expected piv|piv0|xvii|xxix|xxxii|sqrt-piv0)",
            s.eq
        );
    };
    let field = match s.field {
        Field::Real => ScalarField::Real,
        Field::Complex => ScalarField::Complex,
    };
    if kind == EquationKind::SqrtPiv0 && field == ScalarField::Complex {
        bail!("--field: sqrt-piv0 is real-only");
    }

    let c = |name: &str, re: f64, im: f64| -> Result<Complex64> {
        finite(name, re)?;
        finite(&format!("{name}-im"), im)?;
        if field == ScalarField::Real && im != 0.0 {
            bail!("{name}-im: must be 0 in real mode, got {im}");
        }
        Ok(Complex64::new(re, im))
    };
    let z0 = c("--z0", s.z0, s.z0_im)?;
    // an imaginary part alone means a purely imaginary value
    let opt = |name: &str, re: Option<f64>, im: f64| -> Result<Option<Complex64>> {
        match (re, im) {
            (None, im) if im == 0.0 => Ok(None),
            (re, im) => c(name, re.unwrap_or(0.0), im).map(Some),
        }
    };
    let w0 = opt("--w0", s.w0, s.w0_im)?;
    let w1 = opt("--w1", s.w1, s.w1_im)?;
    let w2 = opt("--w2", s.w2, s.w2_im)?;

    let mode = match (s.zero_branch, w0) {
        (Some(_), Some(_)) => {
            bail!("--zero-branch: conflicts with --w0 (the zero mode sets w0 = 0)")
        }
        (Some(_), None) if !kind.is_piv() => {
            bail!("--zero-branch: only valid for piv and piv0, not {kind}")
        }
        (Some(_), None) if w1.is_some() => {
            bail!("--zero-branch: conflicts with --w1 (the slope is +beta or -beta)")
        }
        (Some(b), None) => SpecMode::Zero {
            branch: match b {
                BranchArg::Plus => ZeroBranch::Plus,
                BranchArg::Minus => ZeroBranch::Minus,
            },
            w2: w2.unwrap_or_default(),
        },
        (None, None) => bail!("--w0: required unless --zero-branch is given"),
        (None, Some(w0)) => {
            let w1 = w1.unwrap_or_default();
            match w2 {
                Some(w2) => SpecMode::Raw { w0, w1, w2 },
                // the square-root equation has no 1/w term, so f = 0 is ordinary data
                None if kind == EquationKind::SqrtPiv0 => SpecMode::Raw {
                    w0,
                    w1,
                    w2: Complex64::default(),
                },
                None => {
                    if w0 == Complex64::default() {
                        bail!("--w0: must be nonzero unless --w2 is given (raw data) or --zero-branch is used");
                    }
                    SpecMode::NonZero { w0, w1 }
                }
            }
        }
    };

    if !(s.span > 0.0 && s.span.is_finite()) {
        bail!("--span: must be positive and finite, got {}", s.span);
    }
    finite("--dir-re", s.dir_re)?;
    finite("--dir-im", s.dir_im)?;
    let dir = match field {
        ScalarField::Real => {
            if s.dir_im != 0.0 {
                bail!("--dir-im: must be 0 in real mode, got {}", s.dir_im);
            }
            if s.dir_re == 0.0 {
                bail!("--dir-re: direction must be nonzero");
            }
            Complex64::new(s.dir_re.signum(), 0.0)
        }
        ScalarField::Complex => {
            let d = Complex64::new(s.dir_re, s.dir_im);
            if d.norm() == 0.0 {
                bail!("--dir-re/--dir-im: direction must be nonzero");
            }
            d / d.norm()
        }
    };

    let tol = tolerances(t)?;
    if !(t.slope_tol > 0.0 && t.slope_tol.is_finite()) {
        bail!("--slope-tol: must be positive, got {}", t.slope_tol);
    }
    if !(t.curv_floor >= 0.0 && t.curv_floor.is_finite()) {
        bail!("--curv-floor: must be non-negative, got {}", t.curv_floor);
    }

    Ok(RunSpec {
        kind,
        params: Params::ZERO,
        field,
        z0,
        mode,
        span: s.span,
        two_sided: s.two_sided,
        dir,
        tol,
        scan: ScanOptions {
            slope_tol: t.slope_tol,
            curv_floor: t.curv_floor,
        },
        out: None,
        summary: None,
        seed: None,
    })
}

fn tolerances(t: &TolArgs) -> Result<Tolerances> {
    let tol = Tolerances {
        rel: t.rel,
        abs: t.abs,
        h_init: t.h_init,
        h_min: t.h_min,
        pole_cutoff: t.pole_cutoff,
    };
    if !(t.rel >= 1e-14 && t.rel.is_finite()) {
        bail!("--rel: must be >= 1e-14, got {}", t.rel);
    }
    if !(t.abs >= 1e-14 && t.abs.is_finite()) {
        bail!("--abs: must be >= 1e-14, got {}", t.abs);
    }
    if !(t.h_init > 0.0 && t.h_init.is_finite()) {
        bail!("--h-init: must be positive, got {}", t.h_init);
    }
    if !(t.h_min > 0.0 && t.h_min < t.h_init) {
        bail!("--h-min: need 0 < h-min < h-init, got {}", t.h_min);
    }
    if !(t.pole_cutoff >= 1e3) {
        bail!("--pole-cutoff: must be >= 1e3, got {}", t.pole_cutoff);
    }
    tol.validate()?;
    Ok(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{Cli, Command};
    use clap::Parser;

    fn spec(line: &str) -> Result<RunSpec> {
        let argv = std::iter::once("painleve").chain(line.split_whitespace());
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Integrate(a) | Command::Zeros(a) => RunSpec::from_args(&a),
            _ => unreachable!(),
        }
    }

    fn err(line: &str) -> String {
        spec(line).unwrap_err().to_string()
    }

    #[test]
    fn modes() {
        let s = spec("integrate --eq xxxii --w0 2 --w1 3 --span 4").unwrap();
        assert!(matches!(s.mode, SpecMode::NonZero { .. }));
        let s = spec("integrate --eq piv --beta 1 --zero-branch plus --span 1").unwrap();
        assert_eq!(
            s.mode,
            SpecMode::Zero {
                branch: ZeroBranch::Plus,
                w2: Complex64::default()
            }
        );
        let s = spec("integrate --eq piv0 --w0 0 --w1 0 --w2 1 --span 1").unwrap();
        assert!(matches!(s.mode, SpecMode::Raw { .. }));
    }

    #[test]
    fn diagnostics_name_the_field() {
        assert!(err("integrate --eq piv5 --w0 1 --span 1").starts_with("--eq"));
        assert!(err("integrate --eq piv --w0 1 --span 0").starts_with("--span"));
        assert!(err("integrate --eq piv --w0 1 --span -1").starts_with("--span"));
        assert!(err("integrate --eq piv --w0 1 --w0-im 1 --span 1").starts_with("--w0-im"));
        assert!(err("integrate --eq piv --w0 1 --span 1 --rel 1e-20").starts_with("--rel"));
        assert!(
            err("integrate --eq piv --w0 1 --span 1 --pole-cutoff 10").starts_with("--pole-cutoff")
        );
        assert!(err("integrate --eq piv0 --beta 1 --w0 1 --span 1").starts_with("--alpha/--beta"));
        assert!(err("integrate --eq xxix --zero-branch plus --span 1").starts_with("--zero-branch"));
        assert!(err("integrate --eq piv --w0 0 --span 1").starts_with("--w0"));
        assert!(err("integrate --eq piv --span 1").starts_with("--w0"));
        assert!(
            err("integrate --eq sqrt-piv0 --field complex --w0 1 --span 1").starts_with("--field")
        );
        assert!(err("integrate --eq piv --w0 1 --span 1 --dir-re 0").starts_with("--dir-re"));
        assert!(err("integrate --eq piv --w0 1 --span 1 --dir-im 1").starts_with("--dir-im"));
    }

    #[test]
    fn directions() {
        let s = spec("integrate --eq piv --w0 1 --span 1 --dir-re -3").unwrap();
        assert_eq!(s.dir, Complex64::new(-1.0, 0.0));
        let s = spec("integrate --eq piv --field complex --w0 1 --span 1 --dir-re 3 --dir-im 4")
            .unwrap();
        assert!((s.dir - Complex64::new(0.6, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn real_initial_data_drops_imaginary_parts() {
        let s = spec("integrate --eq piv --w0 1 --w1 2 --z0 0.5 --span 1").unwrap();
        let id: InitialData<f64> = s.initial_data();
        assert_eq!(id.z0, 0.5);
        assert_eq!(id.mode, InitialMode::NonZero { w0: 1.0, w1: 2.0 });
    }
}
