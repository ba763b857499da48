//! Squeeze operators, coherent inputs and state preparation.

use ndarray::{s, Array1, Array2};

use super::{
    check_leak, FockVector, OperatorMatrix, OperatorRole, COHERENT_LEAK_THRESHOLD, PREPARATION_LEAK_THRESHOLD,
};
use crate::analytic::{PdState, SectorParams};
use crate::error::{Error, Result};
use crate::linalg::{BandedHermitian, HermitianChain};
use crate::scalar::{Real, C};
use crate::specfun::log_factorial;

fn zero<T: Real>() -> C<T> {
    C::new(T::zero(), T::zero())
}

/// Generator of `U = Σ_j S(ξ_j, λ_j) Π_j` on a space of dimension `dim`:
/// `S(ξ, λ) = exp(-iH) e^{iλ(N + 1/2)}` with `H = i(ξK₊ − ξ*K₋)`.
#[derive(Debug, Clone)]
pub struct SectorGenerator<T> {
    phases: Vec<C<T>>,
    band: BandedHermitian<T>,
}

impl<T: Real> SectorGenerator<T> {
    pub fn new(dim: usize, sectors: [&SectorParams<T>; 2]) -> Self {
        let half = T::lit(0.5);
        let phases = (0..dim)
            .map(|n| C::from_polar(T::one(), sectors[n % 2].lambda() * (T::from_count(n) + half)))
            .collect();
        let xi = sectors.map(|p| p.xi());
        let i = C::new(T::zero(), T::one());
        let lower: Vec<C<T>> = (0..dim.saturating_sub(2))
            .map(|n| i * xi[n % 2] * ((T::from_count(n + 1) * T::from_count(n + 2)).sqrt() * half))
            .collect();
        let mut band = BandedHermitian::zeros(dim);
        band.bands.push((2, lower));
        Self { phases, band }
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    /// `U v`.
    pub fn apply(&self, v: &Array1<C<T>>) -> Array1<C<T>> {
        let rotated = Array1::from_iter(v.iter().zip(&self.phases).map(|(a, p)| *a * *p));
        self.band.propagate(T::one(), &rotated)
    }

    /// `U† v`.
    pub fn apply_inverse(&self, v: &Array1<C<T>>) -> Array1<C<T>> {
        let w = self.band.propagate(-T::one(), v);
        Array1::from_iter(w.iter().zip(&self.phases).map(|(a, p)| *a * p.conj()))
    }

    /// The parity-`j` block of `H` as a chain over `n = j, j+2, …`.
    fn chain(&self, parity: usize) -> HermitianChain<T> {
        let lower = &self.band.bands[0].1;
        let len = (self.dim() + 1 - parity) / 2;
        HermitianChain {
            diag: vec![T::zero(); len],
            lower: (0..len.saturating_sub(1)).map(|k| lower[parity + 2 * k]).collect(),
        }
    }

    /// Dense `U` on the full space.
    fn dense(&self) -> Array2<C<T>> {
        let dim = self.dim();
        let mut u = Array2::from_elem((dim, dim), zero());
        for parity in 0..2 {
            let chain = self.chain(parity);
            if chain.is_empty() {
                continue;
            }
            let prop = chain.spectrum().propagator(T::one());
            for (a, row) in prop.outer_iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    let nb = parity + 2 * b;
                    u[[parity + 2 * a, nb]] = *v * self.phases[nb];
                }
            }
        }
        u
    }
}

fn require_dim(dim: usize) -> Result<()> {
    if dim < 4 {
        return Err(Error::Configuration(format!("Fock dimension must be >= 4, got {dim}")));
    }
    Ok(())
}

/// Builds the padded dense operator, measures column leakage past `dim`
/// and crops.
fn cropped_squeeze<T: Real>(dim: usize, sectors: [&SectorParams<T>; 2], role: OperatorRole) -> Result<OperatorMatrix<T>> {
    require_dim(dim)?;
    let padded = 2 * dim;
    let u = SectorGenerator::new(padded, sectors).dense();
    let leak_of = |c: usize| -> T { u.slice(s![dim.., c]).iter().map(|z| z.norm_sqr()).sum() };
    let threshold = T::lit(PREPARATION_LEAK_THRESHOLD);
    let reliable = (0..dim).find(|&c| leak_of(c) > threshold).unwrap_or(dim);
    if reliable < 2 {
        check_leak(leak_of(reliable), PREPARATION_LEAK_THRESHOLD, dim)?;
    }
    let entries = u.slice(s![..dim, ..dim]).to_owned();
    Ok(OperatorMatrix::new(role, entries).with_reliable(reliable))
}

/// `S(ξ, λ) = exp(ξK₊ − ξ*K₋) exp(2iλK₀)`.
///
/// Columns past [`OperatorMatrix::reliable_block`] have lost more than
/// [`PREPARATION_LEAK_THRESHOLD`] of their norm to the truncation; a
/// truncation error is returned when even the two lowest columns do.
pub fn squeeze_matrix<T: Real>(dim: usize, p: &SectorParams<T>) -> Result<OperatorMatrix<T>> {
    cropped_squeeze(dim, [p, p], OperatorRole::Squeeze)
}

/// `U = S(ξ₀, λ₀) Π₀ + S(ξ₁, λ₁) Π₁`.
pub fn pd_squeeze_matrix<T: Real>(dim: usize, s0: &SectorParams<T>, s1: &SectorParams<T>) -> Result<OperatorMatrix<T>> {
    cropped_squeeze(dim, [s0, s1], OperatorRole::PdSqueeze)
}

/// Poisson tail `Σ_{n ≥ dim} e^{-b²} b^{2n}/n!`.
fn poisson_tail<T: Real>(b2: T, dim: usize) -> T {
    if b2 == T::zero() {
        return T::zero();
    }
    let log_b2 = b2.ln();
    let mut total = T::zero();
    let mut n = dim;
    loop {
        let term = (-b2 + T::from_count(n) * log_b2 - log_factorial::<T>(n)).exp();
        total = total + term;
        let past_peak = T::from_count(n) > b2;
        if past_peak && (term <= total * T::epsilon() || term < T::min_positive_value()) {
            break;
        }
        n += 1;
    }
    total
}

/// Glauber coherent state `|β⟩` truncated to `dim`.
pub fn coherent_vector<T: Real>(dim: usize, beta: C<T>) -> Result<FockVector<T>> {
    if dim < 1 {
        return Err(Error::Configuration("Fock dimension must be positive".into()));
    }
    let b = beta.norm();
    let b2 = b * b;
    let phi = if b == T::zero() { T::zero() } else { beta.arg() };
    let amps = Array1::from_iter((0..dim).map(|n| {
        if n == 0 {
            C::from_polar((-b2 / T::lit(2.0)).exp(), T::zero())
        } else if b == T::zero() {
            zero()
        } else {
            let log_mag = -b2 / T::lit(2.0) + T::from_count(n) * b.ln() - log_factorial::<T>(n) / T::lit(2.0);
            C::from_polar(log_mag.exp(), phi * T::from_count(n))
        }
    }));
    let leak = poisson_tail(b2, dim);
    check_leak(leak, COHERENT_LEAK_THRESHOLD, dim)?;
    Ok(FockVector::with_leakage(amps, leak))
}

/// `U|β⟩` at dimension `2·dim`, before cropping; returns the vector, the
/// generator used and the leakage past `dim`.
pub(crate) fn prepare_state_padded<T: Real>(
    dim: usize,
    s: &PdState<T>,
) -> Result<(Array1<C<T>>, SectorGenerator<T>, T)> {
    require_dim(dim)?;
    let padded = 2 * dim;
    let input = coherent_vector(padded, s.beta())?;
    let generator = SectorGenerator::new(padded, [s.sector(0), s.sector(1)]);
    let out = generator.apply(input.amplitudes());
    let tail: T = out.slice(s![dim..]).iter().map(|z| z.norm_sqr()).sum();
    let leak = tail + input.leakage();
    check_leak(leak, PREPARATION_LEAK_THRESHOLD, dim)?;
    Ok((out, generator, leak))
}

/// `U(ξ₀,λ₀;ξ₁,λ₁)|β⟩` in a `dim`-dimensional truncation.
pub fn prepare_state<T: Real>(dim: usize, s: &PdState<T>) -> Result<FockVector<T>> {
    let (out, _, leak) = prepare_state_padded(dim, s)?;
    Ok(FockVector::with_leakage(out.slice(s![..dim]).to_owned(), leak))
}

/// Quasiparticle operator `b = U a U†`, cropped from the padded space.
pub fn quasiparticle_operator<T: Real>(
    dim: usize,
    s0: &SectorParams<T>,
    s1: &SectorParams<T>,
) -> Result<OperatorMatrix<T>> {
    let u = pd_squeeze_matrix(2 * dim, s0, s1)?;
    let reliable = u.reliable_block().min(dim);
    let ue = u.entries();
    let padded = ue.nrows();
    let mut ua = Array2::from_elem((padded, padded), zero());
    // (U a)[:, n-1] picks up column n of U scaled by sqrt(n)
    for n in 1..padded {
        let f = T::from_count(n).sqrt();
        for r in 0..padded {
            ua[[r, n]] = ue[[r, n - 1]] * f;
        }
    }
    let ud = ue.t().mapv(|z| z.conj());
    let b = ua.dot(&ud);
    Ok(OperatorMatrix::new(OperatorRole::Quasiparticle, b.slice(s![..dim, ..dim]).to_owned()).with_reliable(reliable))
}

/// Numerical checks of the quasiparticle picture on the prepared state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiparticleReport<T> {
    /// `‖(b b† − b† b)|s⟩ − |s⟩‖`
    pub commutator_residual: T,
    /// `‖b|s⟩ − β|s⟩‖`
    pub eigen_residual: T,
    pub mean_b: C<T>,
    /// Variances of `x_b = (b + b†)/√2` and `p_b = (b − b†)/(i√2)`.
    pub var_xb: T,
    pub var_pb: T,
    pub leakage: T,
}

fn lower<T: Real>(v: &Array1<C<T>>) -> Array1<C<T>> {
    let n = v.len();
    Array1::from_iter((0..n).map(|k| if k + 1 < n { v[k + 1] * T::from_count(k + 1).sqrt() } else { zero() }))
}

fn raise<T: Real>(v: &Array1<C<T>>) -> Array1<C<T>> {
    let n = v.len();
    Array1::from_iter((0..n).map(|k| if k > 0 { v[k - 1] * T::from_count(k).sqrt() } else { zero() }))
}

fn dot<T: Real>(a: &Array1<C<T>>, b: &Array1<C<T>>) -> C<T> {
    a.iter().zip(b).fold(zero(), |acc, (x, y)| acc + x.conj() * y)
}

fn norm<T: Real>(v: &Array1<C<T>>) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Applies `b = U a U†` and `b† = U a† U†` to the prepared state at padded
/// dimension and reports the eigenrelation, the commutator on the state and
/// the `b`-quadrature variances.
pub fn quasiparticle_checks<T: Real>(dim: usize, s: &PdState<T>) -> Result<QuasiparticleReport<T>> {
    let (state, generator, leak) = prepare_state_padded(dim, s)?;
    let w = generator.apply_inverse(&state);
    let aw = lower(&w);
    let b_s = generator.apply(&aw);
    let bb_s = generator.apply(&lower(&aw));
    let bdb_s = generator.apply(&raise(&aw));
    let bbd_s = generator.apply(&lower(&raise(&w)));

    let commutator_residual = norm(&(&(&bbd_s - &bdb_s) - &state));
    let eigen_residual = norm(&(&b_s - &state.mapv(|z| z * s.beta())));
    let mean_b = dot(&state, &b_s);
    let mean_b2 = dot(&state, &bb_s);
    let occupation = dot(&b_s, &b_s).re;
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let var_xb = mean_b2.re + occupation + half - two * mean_b.re * mean_b.re;
    let var_pb = -mean_b2.re + occupation + half - two * mean_b.im * mean_b.im;
    Ok(QuasiparticleReport {
        commutator_residual,
        eigen_residual,
        mean_b,
        var_xb,
        var_pb,
        leakage: leak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::fock_amplitudes;
    use crate::fock::interior;
    use std::f64::consts::PI;

    fn sp(r: f64, th: f64, la: f64) -> SectorParams<f64> {
        SectorParams::new(r, th, la).unwrap()
    }

    fn max_dev(a: &Array2<C<f64>>, b: &Array2<C<f64>>, block: usize) -> f64 {
        let mut m = 0.0f64;
        for r in 0..block {
            for c in 0..block {
                m = m.max((a[[r, c]] - b[[r, c]]).norm());
            }
        }
        m
    }

    #[test]
    fn coherent_amplitudes() {
        let v = coherent_vector(16, C::new(1.0f64, 0.0)).unwrap();
        assert!((v.amplitude(2).re - 0.4288819424803534).abs() < 1e-15);
        let vac = coherent_vector(8, C::new(0.0f64, 0.0)).unwrap();
        assert_eq!(vac.amplitude(0), C::new(1.0, 0.0));
        assert!(vac.amplitudes().iter().skip(1).all(|z| *z == C::new(0.0, 0.0)));
        assert!(matches!(coherent_vector(10, C::new(3.0f64, 0.0)), Err(Error::Truncation { .. })));
    }

    #[test]
    fn coherent_is_annihilation_eigenstate() {
        let beta = C::from_polar(1.7f64, 0.4);
        let v = coherent_vector(64, beta).unwrap();
        let av = lower(v.amplitudes());
        for n in 0..interior(64) {
            assert!((av[n] - beta * v.amplitude(n)).norm() < 1e-10);
        }
    }

    #[test]
    fn trivial_squeezes() {
        let dim = 12;
        let id = squeeze_matrix(dim, &sp(0.0, 0.0, 0.0)).unwrap();
        let rot = squeeze_matrix(dim, &sp(0.0, 0.0, 0.9)).unwrap();
        for r in 0..dim {
            for c in 0..dim {
                let e = if r == c { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
                assert!((id.entries()[[r, c]] - e).norm() < 1e-14);
                let e = if r == c { C::from_polar(1.0, 0.9 * (r as f64 + 0.5)) } else { C::new(0.0, 0.0) };
                assert!((rot.entries()[[r, c]] - e).norm() < 1e-14);
            }
        }
        assert_eq!(id.reliable_block(), dim);
    }

    #[test]
    fn reduces_to_ordinary_squeeze() {
        let p = sp(0.4, 1.1, -0.3);
        let a = squeeze_matrix(32, &p).unwrap();
        let b = pd_squeeze_matrix(32, &p, &p).unwrap();
        assert!(max_dev(a.entries(), b.entries(), 32) < 1e-15);
    }

    #[test]
    fn unitary_on_supported_block() {
        let u = pd_squeeze_matrix(64, &sp(0.2, 0.5, 0.3), &sp(0.35, -2.0, 1.0)).unwrap();
        let block = u.reliable_block().min(interior(64));
        assert!(block >= 8, "block {block}");
        let e = u.entries();
        for c1 in 0..block {
            for c2 in 0..block {
                let v: C<f64> = (0..64).map(|r| e[[r, c1]].conj() * e[[r, c2]]).sum();
                let expect = if c1 == c2 { 1.0 } else { 0.0 };
                assert!((v - C::new(expect, 0.0)).norm() < 1e-10, "({c1},{c2})");
            }
        }
    }

    #[test]
    fn squeezed_vacuum_column_matches_closed_form() {
        // column 0 of U is U|0⟩, a zero-amplitude parity-dependent state
        let (s0, s1) = (sp(0.3, 0.7, 0.2), sp(0.7, -1.0, 0.5));
        let u = pd_squeeze_matrix(64, &s0, &s1).unwrap();
        let expect = fock_amplitudes(&PdState::new(C::new(0.0, 0.0), s0, s1).unwrap(), 63);
        for n in 0..64 {
            assert!((u.entries()[[n, 0]] - expect[n]).norm() < 1e-12);
        }
    }

    #[test]
    fn columns_match_prepared_vectors() {
        let s = PdState::new(C::from_polar(0.9, 0.3), sp(0.2, 0.1, 0.4), sp(0.15, 2.0, -0.2)).unwrap();
        let dim = 48;
        let u = pd_squeeze_matrix(dim, s.sector(0), s.sector(1)).unwrap();
        let coh = coherent_vector(dim, s.beta()).unwrap();
        let dense = u.apply(&coh).unwrap();
        let prepared = prepare_state(dim, &s).unwrap();
        for n in 0..dim / 2 {
            assert!((dense.amplitude(n) - prepared.amplitude(n)).norm() < 1e-10);
        }
    }

    #[test]
    fn prepared_state_matches_analytic_amplitudes() {
        let s = PdState::new(C::new(2.0, 0.0), sp(0.8, 0.0, 0.0), sp(0.2, 0.0, 0.0)).unwrap();
        let v = prepare_state(256, &s).unwrap();
        let expect = fock_amplitudes(&s, 255);
        for n in 0..256 {
            assert!((v.amplitude(n) - expect[n]).norm() < 1e-10);
        }
        assert!(v.leakage() <= 1e-10);
        assert!((v.norm_sqr() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn prepared_identity_and_even_vacuum() {
        let beta = C::from_polar(1.3f64, -0.8);
        let coh = coherent_vector(40, beta).unwrap();
        let s = PdState::coherent(beta).unwrap();
        let v = prepare_state(40, &s).unwrap();
        for n in 0..40 {
            assert!((v.amplitude(n) - coh.amplitude(n)).norm() < 1e-13);
        }
        let vac = PdState::new(C::new(0.0, 0.0), sp(0.5, 0.3, 0.0), sp(1.1, 0.0, 0.0)).unwrap();
        let v = prepare_state(128, &vac).unwrap();
        assert!(v.amplitudes().iter().skip(1).step_by(2).all(|z| z.norm() == 0.0));
    }

    #[test]
    fn leakage_rejected_and_monotone() {
        let s = PdState::new(C::new(3.0, 0.0), sp(1.2, 0.0, 0.0), sp(1.2, PI, 0.0)).unwrap();
        assert!(matches!(prepare_state(64, &s), Err(Error::Truncation { .. })));
        let mut last = f64::INFINITY;
        for dim in [64usize, 128, 256, 384, 512, 640] {
            let leak = match prepare_state_padded(dim, &s) {
                Ok((_, _, l)) => l,
                Err(Error::Truncation { leak, .. }) => leak,
                Err(e) => panic!("{e}"),
            };
            assert!(leak <= last * (1.0 + 1e-6) + 1e-16, "dim {dim}: {leak} > {last}");
            last = leak;
        }
        assert!(last <= 1e-10);
    }

    #[test]
    fn quasiparticle_contract() {
        let s = PdState::new(C::new(1.5, 0.0), sp(1.0, 0.4, 0.2), sp(0.6, -1.3, 0.9)).unwrap();
        let r = quasiparticle_checks(256, &s).unwrap();
        assert!(r.eigen_residual < 1e-8, "{r:?}");
        assert!(r.commutator_residual < 1e-8);
        assert!((r.var_xb - 0.5).abs() < 1e-8);
        assert!((r.var_pb - 0.5).abs() < 1e-8);
        assert!((r.mean_b - C::new(1.5, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn ordinary_quasiparticle_is_bogoliubov_combination() {
        let p = sp(0.1, 0.6, -0.4);
        let dim = 32;
        let b = quasiparticle_operator(dim, &p, &p).unwrap();
        let bog = p.bogoliubov();
        let block = b.reliable_block().min(interior(dim));
        assert!(block >= 16);
        for r in 0..block {
            for c in 0..block {
                let mut e = C::new(0.0, 0.0);
                if r + 1 == c {
                    e = bog.mu * (c as f64).sqrt();
                }
                if c + 1 == r {
                    e = bog.nu * (r as f64).sqrt();
                }
                assert!((b.entries()[[r, c]] - e).norm() < 1e-10, "({r},{c})");
            }
        }
    }
}
