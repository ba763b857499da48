//! Truncated Fock-space oracle.
//!
//! Operators are dense `dim × dim` matrices in the number basis; states are
//! amplitude vectors. Exponentials are evaluated at a padded dimension
//! `2·dim` and cropped, and every preparation records how much probability
//! left the retained block ("leakage").

mod operators;
mod phase_space;
mod squeeze;
mod stats;

pub use operators::{
    expectation, identity_matrix, ladder_matrices, number_matrix, projector_and_parity, su11_generators,
};
pub use phase_space::{
    coherent_overlap_from_vector, q_function_from_vector, wavefunction_from_vector, wigner_displaced_parity,
    wigner_from_vector,
};
pub use squeeze::{
    coherent_vector, pd_squeeze_matrix, prepare_state, quasiparticle_checks,
    quasiparticle_operator, squeeze_matrix, QuasiparticleReport, SectorGenerator,
};
pub use stats::{vector_statistics, VectorStatistics};

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Largest leakage accepted for a prepared state.
pub const PREPARATION_LEAK_THRESHOLD: f64 = 1e-10;
/// Largest leakage accepted for a coherent input vector.
pub const COHERENT_LEAK_THRESHOLD: f64 = 1e-12;

/// Size of the block on which truncated operator identities are asserted.
pub fn interior(dim: usize) -> usize {
    dim * 3 / 4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorRole {
    Identity,
    Annihilation,
    Creation,
    Number,
    ProjectorEven,
    ProjectorOdd,
    Parity,
    K0,
    KPlus,
    KMinus,
    Squeeze,
    PdSqueeze,
    Hamiltonian,
    Quasiparticle,
}

/// Dense operator on the truncated space.
///
/// `reliable` is the number of leading basis states whose columns are
/// faithful to the untruncated operator (to [`PREPARATION_LEAK_THRESHOLD`]);
/// for exactly representable operators it equals `dim`.
#[derive(Debug, Clone)]
pub struct OperatorMatrix<T> {
    role: OperatorRole,
    entries: Array2<C<T>>,
    reliable: usize,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn new(role: OperatorRole, entries: Array2<C<T>>) -> Self {
        let reliable = entries.nrows();
        Self { role, entries, reliable }
    }

    pub(crate) fn with_reliable(mut self, reliable: usize) -> Self {
        self.reliable = reliable;
        self
    }

    pub fn role(&self) -> OperatorRole {
        self.role
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<C<T>> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<C<T>> {
        self.entries
    }

    pub fn reliable_block(&self) -> usize {
        self.reliable
    }

    pub fn dagger(&self) -> Array2<C<T>> {
        self.entries.t().mapv(|z| z.conj())
    }

    pub fn apply(&self, v: &FockVector<T>) -> Result<FockVector<T>> {
        check_dims(self.dim(), v.dim())?;
        Ok(FockVector::from_amplitudes(self.entries.dot(&v.amplitudes)))
    }
}

/// Amplitudes of a state in the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T> {
    amplitudes: Array1<C<T>>,
    leakage: T,
}

impl<T: Real> FockVector<T> {
    pub fn from_amplitudes(amplitudes: Array1<C<T>>) -> Self {
        Self {
            amplitudes,
            leakage: T::zero(),
        }
    }

    pub(crate) fn with_leakage(amplitudes: Array1<C<T>>, leakage: T) -> Self {
        Self { amplitudes, leakage }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<C<T>> {
        &self.amplitudes
    }

    pub fn amplitude(&self, n: usize) -> C<T> {
        self.amplitudes[n]
    }

    /// Probability lost beyond the retained dimension during preparation.
    pub fn leakage(&self) -> T {
        self.leakage
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .fold(C::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Zero-padded or cropped copy of length `dim`; cropped mass is added
    /// to the leakage.
    pub fn resized(&self, dim: usize) -> Self {
        let mut amps = Array1::from_elem(dim, C::new(T::zero(), T::zero()));
        let keep = dim.min(self.dim());
        amps.slice_mut(ndarray::s![..keep])
            .assign(&self.amplitudes.slice(ndarray::s![..keep]));
        let lost: T = self.amplitudes.iter().skip(keep).map(|z| z.norm_sqr()).sum();
        Self::with_leakage(amps, self.leakage + lost)
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn check_leak<T: Real>(leak: T, threshold: f64, dim: usize) -> Result<()> {
    let l = leak.to_f64().unwrap_or(f64::INFINITY);
    if !(l <= threshold) {
        return Err(Error::Truncation {
            leak: l,
            threshold,
            dim,
        });
    }
    Ok(())
}
