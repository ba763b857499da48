//! Moments of a truncated state computed directly from its amplitudes.

use super::FockVector;
use crate::scalar::{Real, C};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorStatistics<T> {
    pub norm: T,
    pub mean_n: T,
    /// `⟨a†² a²⟩`
    pub second_factorial: T,
    /// `None` when `⟨N⟩ = 0`.
    pub g2: Option<T>,
    pub mean_a: C<T>,
    pub mean_a2: C<T>,
    pub parity: T,
    pub mean_x: T,
    pub mean_x2: T,
    pub var_x: T,
    pub mean_p: T,
    pub mean_p2: T,
    pub var_p: T,
}

pub fn vector_statistics<T: Real>(v: &FockVector<T>) -> VectorStatistics<T> {
    let c = v.amplitudes();
    let zero = C::new(T::zero(), T::zero());
    let (mut norm, mut mean_n, mut fact2, mut parity) = (T::zero(), T::zero(), T::zero(), T::zero());
    let (mut mean_a, mut mean_a2) = (zero, zero);
    for n in 0..c.len() {
        let p = c[n].norm_sqr();
        let nf = T::from_count(n);
        norm = norm + p;
        mean_n = mean_n + nf * p;
        if n >= 2 {
            fact2 = fact2 + nf * (nf - T::one()) * p;
            mean_a2 = mean_a2 + c[n - 2].conj() * c[n] * (nf * (nf - T::one())).sqrt();
        }
        if n >= 1 {
            mean_a = mean_a + c[n - 1].conj() * c[n] * nf.sqrt();
        }
        parity = if n % 2 == 0 { parity + p } else { parity - p };
    }
    let half = T::lit(0.5);
    let sqrt2 = T::SQRT_2();
    let mean_x = sqrt2 * mean_a.re;
    let mean_p = sqrt2 * mean_a.im;
    let mean_x2 = mean_a2.re + mean_n + half * norm;
    let mean_p2 = -mean_a2.re + mean_n + half * norm;
    VectorStatistics {
        norm,
        mean_n,
        second_factorial: fact2,
        g2: if mean_n > T::zero() { Some(fact2 / (mean_n * mean_n)) } else { None },
        mean_a,
        mean_a2,
        parity,
        mean_x,
        mean_x2,
        var_x: mean_x2 - mean_x * mean_x,
        mean_p,
        mean_p2,
        var_p: mean_p2 - mean_p * mean_p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_vector, expectation, number_matrix, prepare_state, projector_and_parity};
    use crate::analytic::{PdState, SectorParams};

    #[test]
    fn coherent_statistics() {
        let beta = C::from_polar(2.0f64, 0.7);
        let v = coherent_vector(96, beta).unwrap();
        let s = vector_statistics(&v);
        assert!((s.mean_n - 4.0).abs() < 1e-10);
        assert!((expectation(&number_matrix(96), &v).unwrap().re - 4.0).abs() < 1e-10);
        assert!((s.g2.unwrap() - 1.0).abs() < 1e-10);
        assert!((s.var_x - 0.5).abs() < 1e-10 && (s.var_p - 0.5).abs() < 1e-10);
        assert!((s.mean_a - beta).norm() < 1e-10);
    }

    #[test]
    fn even_vacuum_has_positive_parity() {
        let s = PdState::new(
            C::new(0.0f64, 0.0),
            SectorParams::new(0.8, 0.2, 0.1).unwrap(),
            SectorParams::new(0.3, 0.0, 0.0).unwrap(),
        )
        .unwrap();
        let v = prepare_state(128, &s).unwrap();
        let (_, _, p) = projector_and_parity(128).unwrap();
        assert!((expectation(&p, &v).unwrap().re - 1.0).abs() < 1e-10);
        assert!((vector_statistics(&v).parity - 1.0).abs() < 1e-10);
    }
}
