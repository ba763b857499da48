//! Parity-dependent squeezed states of a single bosonic mode.
//!
//! [`analytic`] evaluates photon statistics, wavefunctions and phase-space
//! distributions in closed form. [`fock`] rebuilds the same states by brute
//! force in a truncated number basis and serves as the reference for the
//! closed forms. [`dynamics`] propagates states under the quadratic
//! parity-dependent Hamiltonian.

pub mod analytic;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod scalar;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
pub use scalar::{wrap_angle, Real, C};

pub type PdState64 = analytic::PdState<f64>;
pub type PdState32 = analytic::PdState<f32>;
pub type SectorParams64 = analytic::SectorParams<f64>;
pub type SectorParams32 = analytic::SectorParams<f32>;
pub type Complex64 = C<f64>;
