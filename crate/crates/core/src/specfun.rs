//! Special functions in overflow-safe form: Hermite polynomials of complex
//! argument, log-factorials and oscillator eigenfunctions.
//!
//! Hermite values are carried as [`ScaledComplex`] (log-magnitude plus unit
//! phase) so that `H_n(z)` can be evaluated for `n` in the thousands, where
//! the magnitude exceeds the `f64` range by hundreds of orders.

use crate::error::{Error, Result};
use crate::scalar::{creal, Real, C};

/// Complex value stored as `exp(log_magnitude) * phase`.
///
/// Zero is represented by `log_magnitude == -inf` with `phase == 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex<T> {
    pub log_magnitude: T,
    pub phase: C<T>,
}

impl<T: Real> ScaledComplex<T> {
    pub fn zero() -> Self {
        Self {
            log_magnitude: T::neg_infinity(),
            phase: C::new(T::one(), T::zero()),
        }
    }

    pub fn one() -> Self {
        Self {
            log_magnitude: T::zero(),
            phase: C::new(T::one(), T::zero()),
        }
    }

    /// Scaled form of an ordinary complex value.
    pub fn from_complex(z: C<T>) -> Self {
        let m = z.norm();
        if m == T::zero() {
            Self::zero()
        } else {
            Self {
                log_magnitude: m.ln(),
                phase: z / m,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_magnitude == T::neg_infinity()
    }

    /// `exp(log_magnitude) * phase`; overflows to infinity, underflows to 0.
    pub fn reconstruct(&self) -> C<T> {
        if self.is_zero() {
            return C::new(T::zero(), T::zero());
        }
        self.phase * self.log_magnitude.exp()
    }

    /// Product with another scaled value. Zero is absorbing.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let phase = self.phase * other.phase;
        Self {
            log_magnitude: self.log_magnitude + other.log_magnitude,
            phase: phase / phase.norm(),
        }
    }

    /// Multiplies by `exp(w)` for complex `w`.
    pub fn mul_exp(&self, w: C<T>) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let phase = self.phase * C::new(w.im.cos(), w.im.sin());
        Self {
            log_magnitude: self.log_magnitude + w.re,
            phase: phase / phase.norm(),
        }
    }
}

/// Evaluates the sequence defined by
///
/// ```text
/// p_0 = 1,  p_1 = lead,  p_{k+1} = lead * p_k - k * shift * p_{k-1}
/// ```
///
/// and returns `p_n` in scaled form. With `lead = 2z`, `shift = 2` this is
/// the Hermite recurrence; with `lead = 2zc`, `shift = 2c^2` it yields
/// `c^n H_n(z)`, which stays finite when `c -> 0` and `z -> inf` together.
///
/// The running pair is renormalized after every step and the scale is
/// accumulated in log form, so no intermediate overflows.
pub fn scaled_hermite<T: Real>(n: usize, lead: C<T>, shift: C<T>) -> Result<ScaledComplex<T>> {
    if !(lead.re.is_finite() && lead.im.is_finite() && shift.re.is_finite() && shift.im.is_finite()) {
        return Err(Error::Domain(format!(
            "non-finite recurrence coefficients ({lead:?}, {shift:?})"
        )));
    }
    Ok(scaled_hermite_sequence_inner(n, lead, shift, |_, _| {}))
}

/// Like [`scaled_hermite`] but returns every `p_k` for `k = 0..=n_max`.
pub fn scaled_hermite_sequence<T: Real>(
    n_max: usize,
    lead: C<T>,
    shift: C<T>,
) -> Result<Vec<ScaledComplex<T>>> {
    if !(lead.re.is_finite() && lead.im.is_finite() && shift.re.is_finite() && shift.im.is_finite()) {
        return Err(Error::Domain(format!(
            "non-finite recurrence coefficients ({lead:?}, {shift:?})"
        )));
    }
    let mut out = Vec::with_capacity(n_max + 1);
    scaled_hermite_sequence_inner(n_max, lead, shift, |_, v| out.push(v));
    Ok(out)
}

fn scaled_hermite_sequence_inner<T: Real>(
    n: usize,
    lead: C<T>,
    shift: C<T>,
    mut visit: impl FnMut(usize, ScaledComplex<T>),
) -> ScaledComplex<T> {
    let scaled = |v: C<T>, log_scale: T| {
        let m = v.norm();
        if m == T::zero() {
            ScaledComplex::zero()
        } else {
            ScaledComplex {
                log_magnitude: log_scale + m.ln(),
                phase: v / m,
            }
        }
    };

    let one = creal(T::one());
    visit(0, ScaledComplex::one());
    if n == 0 {
        return ScaledComplex::one();
    }
    // prev = p_{k-1}, cur = p_k, both multiplied by exp(-log_scale)
    let mut prev = one;
    let mut cur = lead;
    let mut log_scale = T::zero();
    visit(1, scaled(cur, log_scale));
    for k in 1..n {
        let next = lead * cur - shift * (prev * T::from_count(k));
        prev = cur;
        cur = next;
        let m = prev.norm().max(cur.norm());
        if m == T::zero() {
            // every later term vanishes too
            for kk in (k + 1)..=n {
                visit(kk, ScaledComplex::zero());
            }
            return ScaledComplex::zero();
        }
        if m > T::lit(1e8) || m < T::lit(1e-8) {
            prev = prev / m;
            cur = cur / m;
            log_scale = log_scale + m.ln();
        }
        visit(k + 1, scaled(cur, log_scale));
    }
    scaled(cur, log_scale)
}

/// Physicists' Hermite polynomial `H_n(z)` for complex `z`, in scaled form.
pub fn hermite_scaled<T: Real>(n: usize, z: C<T>) -> Result<ScaledComplex<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("hermite argument must be finite, got {z:?}")));
    }
    let two = T::lit(2.0);
    scaled_hermite(n, z * two, creal(two))
}

/// `ln(n!)`.
pub fn log_factorial<T: Real>(n: usize) -> T {
    // 22! is the largest factorial exactly representable in f64
    if n <= 22 {
        let mut f = 1.0_f64;
        for k in 2..=n {
            f *= k as f64;
        }
        return T::lit(f.ln());
    }
    // Stirling series for ln Γ(n+1); truncation error below 1e-20 for n > 22
    let x = n as f64 + 1.0;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0)))));
    let ln_gamma = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series;
    T::lit(ln_gamma)
}

/// Normalized harmonic-oscillator eigenfunction
/// `φ_n(x) = π^{-1/4} (2^n n!)^{-1/2} H_n(x) exp(-x²/2)`.
///
/// Values below the representable range return 0.
pub fn oscillator_eigenfunction<T: Real>(n: usize, x: T) -> T {
    let mut last = T::zero();
    oscillator_recurrence(n, x, |_, v| last = v);
    last
}

/// `φ_0(x), …, φ_{n_max}(x)`.
pub fn oscillator_eigenfunctions<T: Real>(n_max: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n_max + 1);
    oscillator_recurrence(n_max, x, |_, v| out.push(v));
    out
}

fn oscillator_recurrence<T: Real>(n: usize, x: T, mut visit: impl FnMut(usize, T)) {
    let two = T::lit(2.0);
    // log of π^{-1/4} e^{-x²/2}
    let mut log_scale = -T::PI().ln() / T::lit(4.0) - x * x / two;
    let emit = |v: T, log_scale: T| {
        if v == T::zero() {
            T::zero()
        } else {
            let lm = v.abs().ln() + log_scale;
            v.signum() * lm.exp()
        }
    };
    let mut prev = T::zero();
    let mut cur = T::one();
    visit(0, emit(cur, log_scale));
    for k in 0..n {
        let kf = T::from_count(k);
        let next = (two / (kf + T::one())).sqrt() * x * cur - (kf / (kf + T::one())).sqrt() * prev;
        prev = cur;
        cur = next;
        let m = prev.abs().max(cur.abs());
        if m > T::lit(1e100) || (m < T::lit(1e-100) && m > T::zero()) {
            prev = prev / m;
            cur = cur / m;
            log_scale = log_scale + m.ln();
        }
        visit(k + 1, emit(cur, log_scale));
    }
}
