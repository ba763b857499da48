//! Ladder operators, parity projectors and the SU(1,1) generators.

use ndarray::Array2;

use super::{check_dims, FockVector, OperatorMatrix, OperatorRole};
use crate::error::{Error, Result};
use crate::scalar::{creal, Real, C};

fn zeros<T: Real>(dim: usize) -> Array2<C<T>> {
    Array2::from_elem((dim, dim), C::new(T::zero(), T::zero()))
}

fn diagonal<T: Real>(role: OperatorRole, dim: usize, f: impl Fn(usize) -> T) -> OperatorMatrix<T> {
    let mut m = zeros(dim);
    for n in 0..dim {
        m[[n, n]] = creal(f(n));
    }
    OperatorMatrix::new(role, m)
}

fn require_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        return Err(Error::Configuration(format!("Fock dimension must be >= {min}, got {dim}")));
    }
    Ok(())
}

pub fn identity_matrix<T: Real>(dim: usize) -> OperatorMatrix<T> {
    diagonal(OperatorRole::Identity, dim, |_| T::one())
}

/// `(a, a†)` with `a|n⟩ = sqrt(n)|n-1⟩`.
pub fn ladder_matrices<T: Real>(dim: usize) -> Result<(OperatorMatrix<T>, OperatorMatrix<T>)> {
    require_dim(dim, 2)?;
    let mut a = zeros(dim);
    for n in 1..dim {
        a[[n - 1, n]] = creal(T::from_count(n).sqrt());
    }
    let ad = a.t().to_owned();
    Ok((
        OperatorMatrix::new(OperatorRole::Annihilation, a),
        OperatorMatrix::new(OperatorRole::Creation, ad),
    ))
}

pub fn number_matrix<T: Real>(dim: usize) -> OperatorMatrix<T> {
    diagonal(OperatorRole::Number, dim, T::from_count)
}

/// `(Π₀, Π₁, P)`: even and odd projectors and the parity `P = Π₀ − Π₁`.
pub fn projector_and_parity<T: Real>(
    dim: usize,
) -> Result<(OperatorMatrix<T>, OperatorMatrix<T>, OperatorMatrix<T>)> {
    require_dim(dim, 2)?;
    let ind = |parity: usize| move |n: usize| if n % 2 == parity { T::one() } else { T::zero() };
    Ok((
        diagonal(OperatorRole::ProjectorEven, dim, ind(0)),
        diagonal(OperatorRole::ProjectorOdd, dim, ind(1)),
        diagonal(OperatorRole::Parity, dim, |n| if n % 2 == 0 { T::one() } else { -T::one() }),
    ))
}

/// `(K₀, K₊, K₋)` with `K₀ = (aa† + a†a)/4`, `K₊ = a†²/2`, `K₋ = a²/2`.
///
/// `K₀` is built from the untruncated diagonal `(2n+1)/4`.
pub fn su11_generators<T: Real>(
    dim: usize,
) -> Result<(OperatorMatrix<T>, OperatorMatrix<T>, OperatorMatrix<T>)> {
    require_dim(dim, 4)?;
    let k0 = diagonal(OperatorRole::K0, dim, |n| (T::from_count(2 * n) + T::one()) / T::lit(4.0));
    let mut km = zeros(dim);
    for n in 2..dim {
        km[[n - 2, n]] = creal((T::from_count(n) * T::from_count(n - 1)).sqrt() / T::lit(2.0));
    }
    let kp = km.t().to_owned();
    Ok((
        k0,
        OperatorMatrix::new(OperatorRole::KPlus, kp),
        OperatorMatrix::new(OperatorRole::KMinus, km),
    ))
}

/// `⟨v|op|v⟩`.
pub fn expectation<T: Real>(op: &OperatorMatrix<T>, v: &FockVector<T>) -> Result<C<T>> {
    check_dims(op.dim(), v.dim())?;
    let w = op.entries().dot(v.amplitudes());
    Ok(v.amplitudes()
        .iter()
        .zip(w.iter())
        .fold(C::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array1;

    #[test]
    fn dim_two_ladder() {
        let (a, ad) = ladder_matrices::<f64>(2).unwrap();
        assert_eq!(a.entries()[[0, 1]], C::new(1.0, 0.0));
        assert_eq!(a.entries()[[1, 0]], C::new(0.0, 0.0));
        assert_eq!(ad.entries()[[1, 0]], C::new(1.0, 0.0));
        assert!(matches!(ladder_matrices::<f64>(1), Err(Error::Configuration(_))));
        assert!(su11_generators::<f64>(3).is_err());
    }

    #[test]
    fn truncated_commutator_corner() {
        let dim = 6;
        let (a, ad) = ladder_matrices::<f64>(dim).unwrap();
        let c = a.entries().dot(ad.entries()) - ad.entries().dot(a.entries());
        for n in 0..dim {
            let expect = if n == dim - 1 { -(dim as f64 - 1.0) } else { 1.0 };
            assert!((c[[n, n]].re - expect).abs() < 1e-14);
        }
        let nn = ad.entries().dot(a.entries());
        for n in 0..dim {
            assert!((nn[[n, n]].re - n as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn parity_projectors() {
        let (p0, p1, p) = projector_and_parity::<f64>(4).unwrap();
        let d: Vec<f64> = (0..4).map(|n| p0.entries()[[n, n]].re).collect();
        assert_eq!(d, vec![1.0, 0.0, 1.0, 0.0]);
        assert_eq!(p1.entries()[[1, 1]].re, 1.0);
        assert_eq!(p.entries()[[3, 3]].re, -1.0);
    }

    #[test]
    fn k0_diagonal() {
        let (k0, _, _) = su11_generators::<f64>(8).unwrap();
        for n in 0..8 {
            assert_eq!(k0.entries()[[n, n]].re, (2.0 * n as f64 + 1.0) / 4.0);
        }
    }

    #[test]
    fn expectation_values() {
        let v = FockVector::from_amplitudes(Array1::from_vec(vec![
            C::new(0.6f64, 0.0),
            C::new(0.0, 0.8),
            C::new(0.0, 0.0),
        ]));
        let e = expectation(&identity_matrix(3), &v).unwrap();
        assert!((e - C::new(1.0, 0.0)).norm() < 1e-15);
        let n = expectation(&number_matrix(3), &v).unwrap();
        assert!((n.re - 0.64).abs() < 1e-15);
        assert!(matches!(
            expectation(&number_matrix(4), &v),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        ));
    }
}
