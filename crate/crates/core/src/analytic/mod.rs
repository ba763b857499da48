//! Closed-form evaluation of parity-dependent squeezed states.
//!
//! The state `U(ξ₀,λ₀;ξ₁,λ₁)|β⟩` applies the squeeze `S(ξ_j, λ_j)` to the
//! parity-`j` component of the coherent state `|β⟩`. Every quantity here is
//! a sum over the two sectors (or sector pairs) of Gaussian-type closed
//! forms; see [`crate::fock`] for the brute-force counterpart.

mod phase_space;
mod photon;
mod quadrature;
mod state;

pub use phase_space::{coherent_overlap, overlap, q_function, wigner, wigner_complex, WIGNER_IMAG_TOLERANCE};
pub use photon::{
    characteristic_function, fock_amplitude, fock_amplitudes, photon_distribution, photon_distributions,
    photon_moments, MomentSet, SecondOrderCoherence, SectorMomentTerms,
};
pub use quadrature::{
    position_moments, position_wavefunction, quadrature_moments, sector_pair_coeffs, QuadratureMoments,
    SectorPairCoeffs,
};
pub use state::{bogoliubov_coeffs, BogoliubovCoeffs, PdState, SectorParams};

use crate::scalar::Real;

/// Photon-number cutoff `ceil(e^{2 r_max} (|β|² + 6|β| + 20))` beyond which
/// the distribution is negligible for series checks.
pub fn truncation_cutoff<T: Real>(s: &PdState<T>) -> usize {
    let b = s.beta().norm();
    let v = (T::lit(2.0) * s.max_r()).exp() * (b * b + T::lit(6.0) * b + T::lit(20.0));
    v.ceil().to_usize().unwrap_or(usize::MAX)
}
