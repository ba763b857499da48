//! Husimi Q function, Wigner function and coherent overlaps.

use crate::error::{Error, Result};
use crate::scalar::{creal, imag_unit, Real, C};

use super::quadrature::sector_pair_coeffs;
use super::state::PdState;

/// Largest imaginary part of the Wigner closed form tolerated before the
/// evaluation is reported as inconsistent.
pub const WIGNER_IMAG_TOLERANCE: f64 = 1e-8;

/// `⟨α|s⟩` for a Glauber coherent state `|α⟩`.
pub fn coherent_overlap<T: Real>(s: &PdState<T>, alpha: C<T>) -> C<T> {
    let beta = s.beta();
    let two = T::lit(2.0);
    let ac = alpha.conj();
    let mut total = C::new(T::zero(), T::zero());
    for j in 0..2 {
        let p = s.sector(j);
        let b = p.bogoliubov();
        let base = creal(-(alpha.norm_sqr() + beta.norm_sqr()) / two) + b.nu.conj() / (b.mu * two) * beta * beta
            - b.nu / (b.mu * two) * ac * ac;
        let shift = ac * beta / b.mu;
        let sign = if j == 0 { T::one() } else { -T::one() };
        total = total + p.inv_sqrt_mu() * ((base + shift).exp() + (base - shift).exp() * sign);
    }
    total / two
}

/// `Q(α) = |⟨α|s⟩|² / π`.
pub fn q_function<T: Real>(s: &PdState<T>, alpha: C<T>) -> T {
    coherent_overlap(s, alpha).norm_sqr() * T::FRAC_1_PI()
}

/// Wigner function `W(x, p)`, normalized so that `∫∫ W dx dp = 1`.
///
/// Returns [`Error::Consistency`] if the closed form leaves an imaginary
/// part above [`WIGNER_IMAG_TOLERANCE`].
pub fn wigner<T: Real>(s: &PdState<T>, x: T, p: T) -> Result<T> {
    let w = wigner_complex(s, x, p);
    if w.im.abs() > T::lit(WIGNER_IMAG_TOLERANCE) || !w.re.is_finite() {
        return Err(Error::Consistency(format!(
            "Wigner closed form at ({x}, {p}) has imaginary part {}",
            w.im
        )));
    }
    Ok(w.re)
}

/// Closed-form Wigner value before the imaginary residue is discarded.
pub fn wigner_complex<T: Real>(s: &PdState<T>, x: T, p: T) -> C<T> {
    let two = T::lit(2.0);
    let b2 = s.beta().norm_sqr();
    let i = imag_unit::<T>();
    let mut total = C::new(T::zero(), T::zero());
    for j in 0..2 {
        for l in 0..2 {
            let c = sector_pair_coeffs(s, j, l);
            let base = creal(-b2) - c.z_coef - c.t_coef * (x * x / two);
            let lin = c.r_coef * x - i * (two * p);
            let denom = c.t_coef * two;
            let sj = if j == 0 { T::one() } else { -T::one() };
            let sl = if l == 0 { T::one() } else { -T::one() };
            let sq = |v: C<T>| v * v / denom;
            let terms = [
                (sj, sq(lin - c.k_coef) + c.l_coef * x),
                (sl, sq(lin + c.k_coef) - c.l_coef * x),
                (sj * sl, sq(lin + c.l_coef) - c.k_coef * x),
                (T::one(), sq(lin - c.l_coef) + c.k_coef * x),
            ];
            let mut bracket = C::new(T::zero(), T::zero());
            for (sign, expo) in terms {
                bracket = bracket + (base + expo).exp() * sign;
            }
            total = total + c.omega_sqrt * bracket;
        }
    }
    total / (T::lit(4.0) * T::PI())
}

/// `⟨a|b⟩` for two states sharing both sectors' squeeze parameters; the
/// squeeze operator is unitary so this is the coherent-state overlap.
pub fn overlap<T: Real>(a: &PdState<T>, b: &PdState<T>) -> Result<C<T>> {
    if a.sectors() != b.sectors() {
        return Err(Error::Unsupported(
            "overlap closed form requires identical squeeze parameters".into(),
        ));
    }
    let (alpha, beta) = (a.beta(), b.beta());
    let two = T::lit(2.0);
    Ok((creal(-alpha.norm_sqr() / two - beta.norm_sqr() / two) + alpha.conj() * beta).exp())
}
