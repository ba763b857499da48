//! Evolution under `H = ω a†a + Π₀(g₀ a†² + g₀* a²) + Π₁(g₁ a†² + g₁* a²)`.
//!
//! `ħ = 1` and time is dimensionless.

use ndarray::s;

use crate::analytic::{PdState, SectorParams};
use crate::error::{Error, Result};
use crate::fock::{check_leak, FockVector, OperatorMatrix, OperatorRole, PREPARATION_LEAK_THRESHOLD};
use crate::linalg::BandedHermitian;
use crate::scalar::{wrap_angle, Real, C};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianParams<T> {
    omega: T,
    couplings: [C<T>; 2],
}

impl<T: Real> HamiltonianParams<T> {
    pub fn new(omega: T, g0: C<T>, g1: C<T>) -> Result<Self> {
        let finite = |z: C<T>| z.re.is_finite() && z.im.is_finite();
        if !omega.is_finite() || !finite(g0) || !finite(g1) {
            return Err(Error::InvalidParameter("Hamiltonian parameters must be finite".into()));
        }
        Ok(Self {
            omega,
            couplings: [g0, g1],
        })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn coupling(&self, parity: usize) -> C<T> {
        self.couplings[parity]
    }

    /// Banded form on a `dim`-dimensional truncation.
    pub fn banded(&self, dim: usize) -> BandedHermitian<T> {
        let mut h = BandedHermitian::zeros(dim);
        for (n, d) in h.diag.iter_mut().enumerate() {
            *d = self.omega * T::from_count(n);
        }
        let lower = (0..dim.saturating_sub(2))
            .map(|n| self.couplings[n % 2] * (T::from_count(n + 1) * T::from_count(n + 2)).sqrt())
            .collect();
        h.bands.push((2, lower));
        h
    }
}

pub fn hamiltonian_matrix<T: Real>(dim: usize, h: &HamiltonianParams<T>) -> Result<OperatorMatrix<T>> {
    if dim < 4 {
        return Err(Error::Configuration(format!("Fock dimension must be >= 4, got {dim}")));
    }
    Ok(OperatorMatrix::new(OperatorRole::Hamiltonian, h.banded(dim).to_dense()))
}

/// `e^{-iHt} v`, propagated at dimension `2·dim` and cropped back.
///
/// The returned leakage adds the probability that left the retained block
/// to the input's own leakage.
pub fn evolve<T: Real>(h: &HamiltonianParams<T>, t: T, v: &FockVector<T>) -> Result<FockVector<T>> {
    let dim = v.dim();
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("evolution time must be finite, got {t}")));
    }
    let padded = v.resized(2 * dim);
    let out = h.banded(2 * dim).propagate(t, padded.amplitudes());
    let tail: T = out.slice(s![dim..]).iter().map(|z| z.norm_sqr()).sum();
    let leak = v.leakage() + tail;
    check_leak(leak, PREPARATION_LEAK_THRESHOLD, dim)?;
    Ok(FockVector::with_leakage(out.slice(s![..dim]).to_owned(), leak))
}

/// Squeeze parameters reached from a coherent state after time `t` with
/// `ω = 0`: `ξ_j = −2i g_j t`, so `r_j = 2|g_j t|`,
/// `θ_j = −arg(g_j t) − π/2` and `λ_j = 0`.
pub fn squeeze_correspondence<T: Real>(h: &HamiltonianParams<T>, t: T) -> Result<[SectorParams<T>; 2]> {
    if h.omega != T::zero() {
        return Err(Error::Unsupported(
            "closed-form squeeze correspondence requires omega = 0; use evolve".into(),
        ));
    }
    let two = T::lit(2.0);
    let sector = |g: C<T>| {
        let gt = g * t;
        let r = two * gt.norm();
        let theta = if r == T::zero() {
            T::zero()
        } else {
            wrap_angle(-gt.arg() - T::FRAC_PI_2())
        };
        SectorParams::new(r, theta, T::zero())
    };
    Ok([sector(h.couplings[0])?, sector(h.couplings[1])?])
}

/// State predicted by [`squeeze_correspondence`] for the input `|β⟩`.
pub fn corresponding_state<T: Real>(h: &HamiltonianParams<T>, t: T, beta: C<T>) -> Result<PdState<T>> {
    let [s0, s1] = squeeze_correspondence(h, t)?;
    PdState::new(beta, s0, s1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_vector, expectation, prepare_state, projector_and_parity, vector_statistics};
    use crate::linalg::HermitianChain;
    use std::f64::consts::PI;

    fn hp(omega: f64, g0: C<f64>, g1: C<f64>) -> HamiltonianParams<f64> {
        HamiltonianParams::new(omega, g0, g1).unwrap()
    }

    fn energy(h: &HamiltonianParams<f64>, v: &FockVector<f64>) -> f64 {
        expectation(&hamiltonian_matrix(v.dim(), h).unwrap(), v).unwrap().re
    }

    #[test]
    fn matrix_forms() {
        let free = hamiltonian_matrix(6, &hp(1.0, C::new(0.0, 0.0), C::new(0.0, 0.0))).unwrap();
        for n in 0..6 {
            assert_eq!(free.entries()[[n, n]].re, n as f64);
        }
        let h = hamiltonian_matrix(10, &hp(0.7, C::new(0.2, -0.3), C::new(-0.1, 0.05))).unwrap();
        let e = h.entries();
        let herm = (e - &h.dagger()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(herm <= 1e-12);
        // odd row couples with g1
        assert!((e[[3, 1]] - C::new(-0.1, 0.05) * 6f64.sqrt()).norm() < 1e-15);
        let g = C::new(0.3, 0.1);
        let same = hamiltonian_matrix(10, &hp(0.5, g, g)).unwrap();
        for n in 0..8 {
            let expect = g * (((n + 1) * (n + 2)) as f64).sqrt();
            assert!((same.entries()[[n + 2, n]] - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_time_and_free_rotation() {
        let beta = C::from_polar(1.5, 0.3);
        let v = coherent_vector(64, beta).unwrap();
        let h = hp(0.8, C::new(0.0, 0.0), C::new(0.0, 0.0));
        let same = evolve(&h, 0.0, &v).unwrap();
        assert_eq!(same.amplitudes(), v.amplitudes());
        let t = 1.3;
        let rotated = evolve(&h, t, &v).unwrap();
        let expect = coherent_vector(64, beta * C::from_polar(1.0, -0.8 * t)).unwrap();
        for n in 0..64 {
            assert!((rotated.amplitude(n) - expect.amplitude(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn correspondence_values() {
        let h = hp(0.0, C::new(0.2, 0.0), C::new(0.0, 0.0));
        let [s0, s1] = squeeze_correspondence(&h, 1.0).unwrap();
        assert!((s0.r() - 0.4).abs() < 1e-15);
        assert!((s0.theta() + PI / 2.0).abs() < 1e-15);
        assert!((s0.xi() - C::new(0.0, -0.4)).norm() < 1e-15);
        assert_eq!(s1.r(), 0.0);
        let bad = hp(0.1, C::new(0.2, 0.0), C::new(0.0, 0.0));
        assert!(matches!(squeeze_correspondence(&bad, 1.0), Err(Error::Unsupported(_))));
        // negative time and complex coupling keep ξ = −2igt
        let g = C::from_polar(0.3, 2.0);
        let [s0, _] = squeeze_correspondence(&hp(0.0, g, g), -0.7).unwrap();
        let xi = C::new(0.0, -2.0) * g * -0.7;
        assert!((s0.xi() - xi).norm() < 1e-14);
    }

    #[test]
    fn evolution_reaches_parity_dependent_state() {
        let h = hp(0.0, C::new(0.2, 0.0), C::new(0.05, 0.0));
        let dim = 128;
        let v = coherent_vector(dim, C::new(1.0, 0.0)).unwrap();
        let out = evolve(&h, 1.0, &v).unwrap();
        let target = prepare_state(dim, &corresponding_state(&h, 1.0, C::new(1.0, 0.0)).unwrap()).unwrap();
        assert!(out.fidelity(&target).unwrap() >= 1.0 - 1e-8);
        for n in 0..dim {
            assert!((out.amplitude(n) - target.amplitude(n)).norm() < 1e-10);
        }
    }

    #[test]
    fn conserved_quantities_and_group_property() {
        let h = hp(0.6, C::new(0.1, 0.15), C::new(-0.2, 0.05));
        let dim = 192;
        let v = coherent_vector(dim, C::from_polar(1.2, -0.4)).unwrap();
        let (_, _, parity) = projector_and_parity(dim).unwrap();
        let e0 = energy(&h, &v);
        let p0 = expectation(&parity, &v).unwrap().re;
        let a = evolve(&h, 0.9, &v).unwrap();
        let ab = evolve(&h, 0.6, &a).unwrap();
        let direct = evolve(&h, 1.5, &v).unwrap();
        for n in 0..dim {
            assert!((ab.amplitude(n) - direct.amplitude(n)).norm() < 1e-9);
        }
        for w in [&a, &direct] {
            assert!((energy(&h, w) - e0).abs() <= 1e-9 * e0.abs().max(1.0));
            assert!((expectation(&parity, w).unwrap().re - p0).abs() <= 1e-9);
            assert!((vector_statistics(w).norm - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn chebyshev_agrees_with_spectral_exponential() {
        // the even chain of H, exponentiated through its eigendecomposition
        let h = hp(0.4, C::new(0.12, -0.05), C::new(0.0, 0.0));
        let dim = 96;
        let v = coherent_vector(dim, C::new(0.8, 0.0)).unwrap();
        let out = evolve(&h, 2.0, &v).unwrap();
        let padded = 2 * dim;
        let band = h.banded(padded);
        let chain = HermitianChain {
            diag: (0..padded / 2).map(|k| band.diag[2 * k]).collect(),
            lower: (0..padded / 2 - 1).map(|k| band.bands[0].1[2 * k]).collect(),
        };
        let even: Vec<C<f64>> = (0..padded / 2)
            .map(|k| if 2 * k < dim { v.amplitude(2 * k) } else { C::new(0.0, 0.0) })
            .collect();
        let spectral = chain.spectrum().apply(2.0, &even);
        for k in 0..dim / 2 {
            assert!((spectral[k] - out.amplitude(2 * k)).norm() < 1e-11);
        }
    }

    #[test]
    fn ordinary_squeezing_reduction() {
        let g = C::new(0.15, 0.0);
        let h = hp(0.0, g, g);
        let v = coherent_vector(128, C::new(0.5, 0.0)).unwrap();
        let out = evolve(&h, 1.0, &v).unwrap();
        let [s0, s1] = squeeze_correspondence(&h, 1.0).unwrap();
        assert_eq!(s0, s1);
        let target = prepare_state(128, &PdState::ordinary(C::new(0.5, 0.0), s0).unwrap()).unwrap();
        assert!(out.fidelity(&target).unwrap() >= 1.0 - 1e-10);
    }

    #[test]
    fn leakage_reported() {
        let h = hp(0.0, C::new(1.0, 0.0), C::new(1.0, 0.0));
        let v = coherent_vector(32, C::new(1.0, 0.0)).unwrap();
        assert!(matches!(evolve(&h, 2.0, &v), Err(Error::Truncation { .. })));
    }
}
