//! Exact bound states of the position-dependent-mass Schrödinger equation with
//! solitonic mass `m(x) = m₀ sech²(ax)` and potential `V(x) = −V₀ csch²(ax)`,
//! together with the information-theoretic measures built on them.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Jacobi polynomials, terminating ₂F₁, log-gamma, digamma,
//!   harmonic numbers and Pochhammer symbols.
//! - [`tridiag`]: symmetric tridiagonal eigen-solvers (Sturm bisection and
//!   implicit QL) shared by the quadrature and oracle modules.
//! - [`quadrature`]: Gauss–Jacobi rules and an adaptive Gauss–Kronrod integrator.
//! - [`model`]: physical parameters, the energy spectrum and the normalized
//!   wavefunctions.
//! - [`measures`]: Fisher information, position/momentum moments and the
//!   uncertainty products.
//! - [`oracle`]: an independent finite-difference eigensolver for the
//!   transformed equation on `z ∈ (0, π/2)`.

pub mod error;
pub mod measures;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod specfun;
pub mod tridiag;

pub use error::{Error, Result};
pub use measures::MeasureReport;
pub use model::{QuantumState, SystemParams};
pub use oracle::SpectrumEstimate;
pub use quadrature::{Estimate, QuadratureRule};
