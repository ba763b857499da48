//! Oracle counterparts of the wavefunction, Q and Wigner functions.

use ndarray::Array1;

use super::{check_leak, FockVector, PREPARATION_LEAK_THRESHOLD};
use crate::error::Result;
use crate::linalg::BandedHermitian;
use crate::scalar::{Real, C};
use crate::specfun::{log_factorial, oscillator_eigenfunctions};

/// `Σ c_n φ_n(x)`.
pub fn wavefunction_from_vector<T: Real>(v: &FockVector<T>, x: T) -> C<T> {
    if v.dim() == 0 {
        return C::new(T::zero(), T::zero());
    }
    let phi = oscillator_eigenfunctions(v.dim() - 1, x);
    v.amplitudes()
        .iter()
        .zip(phi)
        .fold(C::new(T::zero(), T::zero()), |acc, (c, f)| acc + *c * f)
}

/// `⟨α|v⟩` summed over the retained basis.
pub fn coherent_overlap_from_vector<T: Real>(v: &FockVector<T>, alpha: C<T>) -> C<T> {
    let a = alpha.norm();
    let half = T::lit(0.5);
    let mut acc = C::new(T::zero(), T::zero());
    for (n, c) in v.amplitudes().iter().enumerate() {
        let coef = if n == 0 {
            C::new((-a * a * half).exp(), T::zero())
        } else if a == T::zero() {
            break;
        } else {
            let log_mag = -a * a * half + T::from_count(n) * a.ln() - log_factorial::<T>(n) * half;
            C::from_polar(log_mag.exp(), alpha.arg() * T::from_count(n))
        };
        acc = acc + coef.conj() * *c;
    }
    acc
}

/// `|⟨α|v⟩|² / π`.
pub fn q_function_from_vector<T: Real>(v: &FockVector<T>, alpha: C<T>) -> T {
    coherent_overlap_from_vector(v, alpha).norm_sqr() * T::FRAC_1_PI()
}

/// Working dimension for `D(-α)` acting on a `dim`-dimensional state:
/// large enough to hold the displaced support near `(sqrt(dim) + |α|)²`.
fn displacement_dim(dim: usize, alpha_abs: f64) -> usize {
    let reach = ((dim as f64).sqrt() + alpha_abs + 6.0).powi(2).ceil() as usize;
    (2 * dim).max(reach)
}

/// `D(-α) v` at the working dimension, with `D(-α) = exp(-iH)`,
/// `H = i(α* a − α a†)`.
fn displace_back<T: Real>(v: &FockVector<T>, alpha: C<T>) -> Array1<C<T>> {
    let padded = displacement_dim(v.dim(), alpha.norm().to_f64().unwrap_or(f64::INFINITY));
    let minus_i_alpha = C::new(alpha.im, -alpha.re);
    let mut h = BandedHermitian::zeros(padded);
    h.bands.push((
        1,
        (0..padded.saturating_sub(1))
            .map(|k| minus_i_alpha * T::from_count(k + 1).sqrt())
            .collect(),
    ));
    h.propagate(T::one(), v.resized(padded).amplitudes())
}

/// Wigner value `W(x, p) = (1/π) ⟨v|D(α) P D(α)†|v⟩` by the displaced-parity
/// identity, `α = (x + ip)/√2`, normalized so that `∫∫ W dx dp = 1`.
///
/// The displacement runs in a padded space; a truncation error is returned
/// if the displaced state puts more than [`PREPARATION_LEAK_THRESHOLD`] of
/// its probability into the top eighth of that space.
pub fn wigner_displaced_parity<T: Real>(v: &FockVector<T>, alpha: C<T>) -> Result<T> {
    let u = displace_back(v, alpha);
    let edge = u.len() - u.len() / 8;
    let tail: T = u.iter().skip(edge).map(|z| z.norm_sqr()).sum();
    check_leak(tail, PREPARATION_LEAK_THRESHOLD, u.len())?;
    let mut acc = T::zero();
    for (n, z) in u.iter().enumerate() {
        if n % 2 == 0 {
            acc = acc + z.norm_sqr();
        } else {
            acc = acc - z.norm_sqr();
        }
    }
    Ok(acc * T::FRAC_1_PI())
}

/// [`wigner_displaced_parity`] in `(x, p)` coordinates.
pub fn wigner_from_vector<T: Real>(v: &FockVector<T>, x: T, p: T) -> Result<T> {
    wigner_displaced_parity(v, C::new(x, p) / T::SQRT_2())
}
