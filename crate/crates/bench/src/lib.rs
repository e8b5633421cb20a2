//! Shared fixtures for the criterion benchmarks.

use painleve_core::{InitialData, Params, Tolerances};

/// PIV run through a zero of `w` (`α = 0`, `β = 1`, `w(0) = 0`, `w'(0) = 1`).
pub fn piv_zero_passage() -> (Params, InitialData<f64>) {
    (
        Params {
            alpha: 0.0,
            beta: 1.0,
        },
        InitialData::zero(0.0, painleve_core::ZeroBranch::Plus, 0.0),
    )
}

pub fn default_tolerances() -> Tolerances {
    Tolerances::default()
}
