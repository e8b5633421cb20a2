//! Numerical toolkit for the fourth Painlevé equation in its regular
//! third-order form, with the closed-form and first-integral oracles of the
//! related Ince equations XVII, XXIX and XXXII.
//!
//! The pieces:
//!
//! * [`equations`]: right-hand sides, division-free residuals, the conserved
//!   PIV constraint and the derivative identities on jets.
//! * [`integrator`]: adaptive Dormand-Prince integration with dense output,
//!   pole detection and monitor recording.
//! * [`zeros`]: location and classification of zeros of `w`.
//! * [`oracles`]: quadratic solutions, first integrals, the XXIX pole family
//!   and the square-root transform of PIV₀.

pub mod equations;
pub mod error;
pub mod integrator;
pub mod oracles;
pub mod scalar;
pub mod zeros;

pub use equations::{
    constraint_c, jet_identities, residual2, rhs2, rhs3, EquationKind, Jet2, Jet3, Params,
};
pub use error::{Error, Result};
pub use integrator::{
    complete_initial_data, integrate, integrate_two_sided, step, InitialData, InitialMode, Node,
    Status, Tolerances, Trajectory, ZeroBranch,
};
pub use num_complex::Complex64;
pub use scalar::{Scalar, ScalarField};
