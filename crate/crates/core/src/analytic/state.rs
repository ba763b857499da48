use crate::error::{Error, Result};
use crate::scalar::{cplx, wrap_angle, Real, C};

/// Squeeze transformation applied to one parity sector: magnitude `r`,
/// squeeze angle `theta` (with `ξ = -r e^{-iθ}`) and rotation `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorParams<T> {
    r: T,
    theta: T,
    lambda: T,
}

impl<T: Real> SectorParams<T> {
    /// Builds the parameters, wrapping both angles into (-π, π].
    pub fn new(r: T, theta: T, lambda: T) -> Result<Self> {
        if !r.is_finite() || r < T::zero() {
            return Err(Error::InvalidParameter(format!("squeeze magnitude must be finite and >= 0, got {r}")));
        }
        if !theta.is_finite() || !lambda.is_finite() {
            return Err(Error::InvalidParameter("squeeze angles must be finite".into()));
        }
        Ok(Self {
            r,
            theta: wrap_angle(theta),
            lambda: wrap_angle(lambda),
        })
    }

    /// No squeezing, no rotation.
    pub fn identity() -> Self {
        Self {
            r: T::zero(),
            theta: T::zero(),
            lambda: T::zero(),
        }
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// Complex squeeze parameter `ξ = -r e^{-iθ}`.
    pub fn xi(&self) -> C<T> {
        C::from_polar(-self.r, -self.theta)
    }

    pub fn bogoliubov(&self) -> BogoliubovCoeffs<T> {
        bogoliubov_coeffs(self)
    }

    /// `1/sqrt(μ)` on the branch `e^{iλ/2}/sqrt(cosh r)`, consistent with
    /// `exp(2iλK_0) = e^{iλ(N + 1/2)}`.
    pub(crate) fn inv_sqrt_mu(&self) -> C<T> {
        C::from_polar(self.r.cosh().sqrt().recip(), self.lambda / T::lit(2.0))
    }

    /// `1/sqrt(μ - ν)` with the `e^{iλ/2}` phase pulled out so the
    /// remaining square root has a positive-real-part argument.
    pub(crate) fn inv_sqrt_mu_minus_nu(&self) -> C<T> {
        // μ - ν = e^{-iλ}(cosh r - sinh r e^{-iθ})
        let inner = C::new(self.r.cosh(), T::zero()) - C::from_polar(self.r.sinh(), -self.theta);
        C::from_polar(T::one(), self.lambda / T::lit(2.0)) / inner.sqrt()
    }
}

/// Bogoliubov pair `μ = cosh r e^{-iλ}`, `ν = sinh r e^{-i(θ+λ)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovCoeffs<T> {
    pub mu: C<T>,
    pub nu: C<T>,
}

impl<T: Real> BogoliubovCoeffs<T> {
    /// `|μ|² - |ν|²`, identically 1 up to rounding.
    pub fn unimodularity(&self) -> T {
        self.mu.norm_sqr() - self.nu.norm_sqr()
    }
}

pub fn bogoliubov_coeffs<T: Real>(p: &SectorParams<T>) -> BogoliubovCoeffs<T> {
    BogoliubovCoeffs {
        mu: C::from_polar(p.r.cosh(), -p.lambda),
        nu: C::from_polar(p.r.sinh(), -(p.theta + p.lambda)),
    }
}

/// Parity-dependent squeezed state `U(ξ₀,λ₀;ξ₁,λ₁)|β⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdState<T> {
    beta: C<T>,
    sectors: [SectorParams<T>; 2],
}

impl<T: Real> PdState<T> {
    pub fn new(beta: C<T>, sector0: SectorParams<T>, sector1: SectorParams<T>) -> Result<Self> {
        if !(beta.re.is_finite() && beta.im.is_finite()) {
            return Err(Error::InvalidParameter(format!("coherent amplitude must be finite, got {beta:?}")));
        }
        Ok(Self {
            beta,
            sectors: [sector0, sector1],
        })
    }

    /// Ordinary squeezed state: the same squeeze on both sectors.
    pub fn ordinary(beta: C<T>, sector: SectorParams<T>) -> Result<Self> {
        Self::new(beta, sector, sector)
    }

    /// Glauber coherent state `|β⟩`.
    pub fn coherent(beta: C<T>) -> Result<Self> {
        Self::new(beta, SectorParams::identity(), SectorParams::identity())
    }

    /// State specified through the combined phases `ψ_j` with the convention
    /// `λ_j = arg β = 0`, `θ_j = 2ψ_j` (β real and non-negative).
    pub fn from_psi(beta_abs: T, r0: T, psi0: T, r1: T, psi1: T) -> Result<Self> {
        let two = T::lit(2.0);
        Self::new(
            cplx(beta_abs, T::zero()),
            SectorParams::new(r0, two * psi0, T::zero())?,
            SectorParams::new(r1, two * psi1, T::zero())?,
        )
    }

    pub fn beta(&self) -> C<T> {
        self.beta
    }

    pub fn sector(&self, j: usize) -> &SectorParams<T> {
        &self.sectors[j]
    }

    pub fn sectors(&self) -> &[SectorParams<T>; 2] {
        &self.sectors
    }

    /// `φ_β = arg β`, taken as 0 for β = 0.
    pub fn phi_beta(&self) -> T {
        if self.beta.norm_sqr() == T::zero() {
            T::zero()
        } else {
            self.beta.arg()
        }
    }

    /// `ψ_j = φ_β + λ_j + θ_j / 2`.
    pub fn psi(&self, j: usize) -> T {
        let s = &self.sectors[j];
        self.phi_beta() + s.lambda + s.theta / T::lit(2.0)
    }

    /// Same state with a different coherent amplitude.
    pub fn with_beta(&self, beta: C<T>) -> Result<Self> {
        Self::new(beta, self.sectors[0], self.sectors[1])
    }

    /// State rotated in phase space by `e^{-iφN}`: `β -> β e^{-iφ}`,
    /// `θ_j -> θ_j + 2φ`.
    pub fn rotated(&self, phi: T) -> Result<Self> {
        let two = T::lit(2.0);
        let rot = |s: &SectorParams<T>| SectorParams::new(s.r, s.theta + two * phi, s.lambda);
        Self::new(
            self.beta * C::from_polar(T::one(), -phi),
            rot(&self.sectors[0])?,
            rot(&self.sectors[1])?,
        )
    }

    pub fn max_r(&self) -> T {
        self.sectors[0].r.max(self.sectors[1].r)
    }

    pub(crate) fn bogoliubov_pair(&self) -> [BogoliubovCoeffs<T>; 2] {
        [self.sectors[0].bogoliubov(), self.sectors[1].bogoliubov()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn identity_transformation() {
        let b = bogoliubov_coeffs(&SectorParams::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(b.mu, C::new(1.0, 0.0));
        assert_eq!(b.nu, C::new(0.0, 0.0));
    }

    #[test]
    fn real_squeeze() {
        let b = bogoliubov_coeffs(&SectorParams::new(0.5, 0.0, 0.0).unwrap());
        assert!((b.mu - C::new(1.1276259652063807, 0.0)).norm() < 1e-12);
        assert!((b.nu - C::new(0.5210953054937474, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rotated_squeeze() {
        let b = bogoliubov_coeffs(&SectorParams::new(1.0, PI / 2.0, PI).unwrap());
        assert!((b.mu - C::new(-1.5430806348152437, 0.0)).norm() < 1e-12);
        assert!((b.nu - C::new(0.0, 1.1752011936438014)).norm() < 1e-12);
        assert!((b.unimodularity() - 1.0).abs() < 1e-12);
        assert!(b.mu.norm() >= 1.0);
    }

    #[test]
    fn invalid_sector_params() {
        assert!(SectorParams::new(-0.1, 0.0, 0.0).is_err());
        assert!(SectorParams::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(SectorParams::new(0.1, f64::INFINITY, 0.0).is_err());
        assert!(PdState::coherent(C::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn angles_are_wrapped() {
        let p = SectorParams::new(0.2, 3.0 * PI, -PI).unwrap();
        assert!((p.theta() - PI).abs() < 1e-12);
        assert_eq!(p.lambda(), PI);
    }

    #[test]
    fn psi_conventions() {
        let s = PdState::new(
            C::from_polar(2.0f64, 0.3),
            SectorParams::new(0.1, 0.8, 0.2).unwrap(),
            SectorParams::new(0.1, -0.4, 0.0).unwrap(),
        )
        .unwrap();
        assert!((s.psi(0) - (0.3 + 0.2 + 0.4)).abs() < 1e-12);
        assert!((s.psi(1) - (0.3 - 0.2)).abs() < 1e-12);
        let vac = PdState::new(C::new(0.0f64, 0.0), SectorParams::new(0.1, 1.0, 0.5).unwrap(), SectorParams::identity()).unwrap();
        assert!((vac.psi(0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_square_roots_square_back() {
        for &(r, th, la) in &[(0.4, 3.1, -3.1), (1.2, -2.0, PI), (0.0, 0.0, 0.7)] {
            let p = SectorParams::new(r, th, la).unwrap();
            let b = p.bogoliubov();
            let s = p.inv_sqrt_mu();
            assert!((s * s * b.mu - 1.0).norm() < 1e-12);
            let d = p.inv_sqrt_mu_minus_nu();
            assert!((d * d * (b.mu - b.nu) - 1.0).norm() < 1e-12);
        }
    }
}
