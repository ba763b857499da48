//! Photon-number statistics: Fock amplitudes, P(n), the generating
//! function F(z) and the first two factorial moments.

use crate::error::{Error, Result};
use crate::scalar::{creal, Real, C};
use crate::specfun::{log_factorial, scaled_hermite, scaled_hermite_sequence, ScaledComplex};

use super::state::PdState;

fn sector_of(n: usize) -> usize {
    n % 2
}

/// Recurrence coefficients `(β/μ, ν/μ)` for sector `j`: the amplitude
/// polynomial is `(ν/2μ)^{n/2} H_n(β/sqrt(2μν))`, which this pair generates
/// without the `0·∞` product at `r = 0`.
fn amplitude_recurrence<T: Real>(s: &PdState<T>, j: usize) -> (C<T>, C<T>) {
    let b = s.sector(j).bogoliubov();
    (s.beta() / b.mu, b.nu / b.mu)
}

/// `ln` of the n-independent prefactor
/// `μ^{-1/2} exp(-|β|²/2 + ν* β² / 2μ)` for sector `j`.
fn amplitude_prefactor<T: Real>(s: &PdState<T>, j: usize) -> ScaledComplex<T> {
    let p = s.sector(j);
    let b = p.bogoliubov();
    let beta = s.beta();
    let two = T::lit(2.0);
    let exponent = creal(-beta.norm_sqr() / two) + b.nu.conj() * beta * beta / (b.mu * two);
    ScaledComplex::from_complex(p.inv_sqrt_mu()).mul_exp(exponent)
}

fn amplitude_from_poly<T: Real>(prefactor: &ScaledComplex<T>, poly: &ScaledComplex<T>, n: usize) -> C<T> {
    let mut v = prefactor.mul(poly);
    if !v.is_zero() {
        v.log_magnitude = v.log_magnitude - log_factorial::<T>(n) / T::lit(2.0);
    }
    v.reconstruct()
}

/// Number-state amplitude `⟨n|s⟩`.
pub fn fock_amplitude<T: Real>(s: &PdState<T>, n: usize) -> C<T> {
    let j = sector_of(n);
    let (lead, shift) = amplitude_recurrence(s, j);
    let poly = scaled_hermite(n, lead, shift).expect("finite state parameters");
    amplitude_from_poly(&amplitude_prefactor(s, j), &poly, n)
}

/// `⟨n|s⟩` for `n = 0..=n_max`.
pub fn fock_amplitudes<T: Real>(s: &PdState<T>, n_max: usize) -> Vec<C<T>> {
    let seqs: [Vec<ScaledComplex<T>>; 2] = [0, 1].map(|j| {
        let (lead, shift) = amplitude_recurrence(s, j);
        scaled_hermite_sequence(n_max, lead, shift).expect("finite state parameters")
    });
    let pre = [amplitude_prefactor(s, 0), amplitude_prefactor(s, 1)];
    (0..=n_max)
        .map(|n| {
            let j = sector_of(n);
            amplitude_from_poly(&pre[j], &seqs[j][n], n)
        })
        .collect()
}

/// Coefficients of the real-form distribution in sector `j`:
/// recurrence `(|β| e^{iψ}/cosh r, tanh r)` and the log of
/// `exp(-|β|² + |β|² tanh r cos 2ψ) / cosh r`.
fn distribution_terms<T: Real>(s: &PdState<T>, j: usize) -> (C<T>, C<T>, T) {
    let r = s.sector(j).r();
    let psi = s.psi(j);
    let b2 = s.beta().norm_sqr();
    let lead = C::from_polar(s.beta().norm() / r.cosh(), psi);
    let shift = creal(r.tanh());
    let log_pre = -b2 + b2 * r.tanh() * (T::lit(2.0) * psi).cos() - r.cosh().ln();
    (lead, shift, log_pre)
}

fn distribution_from_poly<T: Real>(log_pre: T, poly: &ScaledComplex<T>, n: usize) -> T {
    if poly.is_zero() {
        return T::zero();
    }
    (log_pre - log_factorial::<T>(n) + T::lit(2.0) * poly.log_magnitude).exp()
}

/// Photon-number distribution `P(n)` from its real closed form (depends on
/// the state only through `|β|`, `r_j` and `ψ_j`).
pub fn photon_distribution<T: Real>(s: &PdState<T>, n: usize) -> T {
    let (lead, shift, log_pre) = distribution_terms(s, sector_of(n));
    let poly = scaled_hermite(n, lead, shift).expect("finite state parameters");
    distribution_from_poly(log_pre, &poly, n)
}

/// `P(0), …, P(n_max)`.
pub fn photon_distributions<T: Real>(s: &PdState<T>, n_max: usize) -> Vec<T> {
    let terms = [distribution_terms(s, 0), distribution_terms(s, 1)];
    let seqs: [Vec<ScaledComplex<T>>; 2] = [0, 1].map(|j| {
        scaled_hermite_sequence(n_max, terms[j].0, terms[j].1).expect("finite state parameters")
    });
    (0..=n_max)
        .map(|n| {
            let j = sector_of(n);
            distribution_from_poly(terms[j].2, &seqs[j][n], n)
        })
        .collect()
}

/// Generating function `F(z) = Σ z^n P(n)` in closed form, for `z ∈ [0, 1]`.
pub fn characteristic_function<T: Real>(s: &PdState<T>, z: T) -> Result<T> {
    if !(z >= T::zero() && z <= T::one()) {
        return Err(Error::Domain(format!("characteristic function needs z in [0, 1], got {z}")));
    }
    let b2 = s.beta().norm_sqr();
    let two = T::lit(2.0);
    let mut total = T::zero();
    for j in 0..2 {
        let r = s.sector(j).r();
        let tau2 = (r.cosh().powi(2) - z * z * r.sinh().powi(2)).recip();
        let tau = tau2.sqrt();
        let common = b2 * (T::one() - tau2 * z * z) * r.tanh() * (two * s.psi(j)).cos() - b2;
        let sign = if j == 0 { T::one() } else { -T::one() };
        let grow = (common + z * tau2 * b2).exp();
        let decay = (common - z * tau2 * b2).exp();
        total = total + tau * (grow + sign * decay);
    }
    Ok(total / two)
}

/// Second-order coherence `g²`, or the vacuum marker when `⟨N⟩ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SecondOrderCoherence<T> {
    Value(T),
    /// `β = 0` with an unsqueezed even sector: the state is the vacuum and
    /// `g²` is `0/0`.
    Vacuum,
}

impl<T: Copy> SecondOrderCoherence<T> {
    pub fn value(&self) -> Option<T> {
        match self {
            Self::Value(v) => Some(*v),
            Self::Vacuum => None,
        }
    }
}

/// `A_j^±`, `B_j^±` intermediates for one sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorMomentTerms<T> {
    pub a_plus: T,
    pub a_minus: T,
    pub b_plus: T,
    pub b_minus: T,
}

/// First and second factorial moments of `N = a†a` and `g²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet<T> {
    /// `⟨a†a⟩`
    pub mean_n: T,
    /// `⟨a†² a²⟩`
    pub second_factorial: T,
    pub g2: SecondOrderCoherence<T>,
    pub sectors: [SectorMomentTerms<T>; 2],
}

fn sector_terms<T: Real>(s: &PdState<T>, j: usize) -> SectorMomentTerms<T> {
    let r = s.sector(j).r();
    let b2 = s.beta().norm_sqr();
    let two = T::lit(2.0);
    let c = (two * s.psi(j)).cos();
    let sh2 = r.sinh().powi(2);
    let ch2r = (two * r).cosh();
    let s2r = (two * r).sinh();
    let a_common = sh2 - b2 * s2r * c;
    let b_common = sh2 * ch2r - b2 * s2r * (T::one() + T::lit(4.0) * sh2) * c;
    let b_pm = two * b2 * sh2 * (T::one() + two * ch2r);
    SectorMomentTerms {
        a_plus: a_common + b2 * ch2r,
        a_minus: a_common - b2 * ch2r,
        b_plus: b_common + b_pm,
        b_minus: b_common - b_pm,
    }
}

pub fn photon_moments<T: Real>(s: &PdState<T>) -> MomentSet<T> {
    let terms = [sector_terms(s, 0), sector_terms(s, 1)];
    let damp = (-T::lit(2.0) * s.beta().norm_sqr()).exp();
    let half = T::lit(0.5);
    let mut mean_n = T::zero();
    let mut second = T::zero();
    for (j, t) in terms.iter().enumerate() {
        let sign = if j == 0 { T::one() } else { -T::one() };
        mean_n = mean_n + half * (t.a_plus + sign * damp * t.a_minus);
        second = second
            + half * ((t.a_plus * t.a_plus + t.b_plus) + sign * damp * (t.a_minus * t.a_minus + t.b_minus));
    }
    let vacuum = s.beta().norm_sqr() == T::zero() && s.sector(0).r() == T::zero();
    let g2 = if vacuum {
        SecondOrderCoherence::Vacuum
    } else {
        SecondOrderCoherence::Value(second / (mean_n * mean_n))
    };
    MomentSet {
        mean_n,
        second_factorial: second,
        g2,
        sectors: terms,
    }
}
