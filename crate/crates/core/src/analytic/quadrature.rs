//! Position-representation wavefunction and quadrature moments.

use crate::scalar::{creal, imag_unit, Real, C};

use super::state::PdState;

/// Sector-pair coefficients shared by the position moments and the Wigner
/// function. Indices `(j, l)` refer to the ket and bra sectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorPairCoeffs<T> {
    /// `Ω_jl = (μ_j μ_l* − ν_j ν_l*)^{-1}`
    pub omega: C<T>,
    /// `Ω_jl^{1/2}` on the branch matching the wavefunction square roots.
    pub omega_sqrt: C<T>,
    /// `Ω_jl^{3/2}` on the same branch.
    pub omega_three_halves: C<T>,
    pub v_plus: C<T>,
    pub v_minus: C<T>,
    pub z_coef: C<T>,
    pub t_coef: C<T>,
    pub r_coef: C<T>,
    pub k_coef: C<T>,
    pub l_coef: C<T>,
}

pub fn sector_pair_coeffs<T: Real>(s: &PdState<T>, j: usize, l: usize) -> SectorPairCoeffs<T> {
    let [bj, bl] = [s.sector(j).bogoliubov(), s.sector(l).bogoliubov()];
    let beta = s.beta();
    let two = T::lit(2.0);
    let sqrt2 = T::SQRT_2();

    // Ω = e^{i(λ_j-λ_l)} / (cosh r_j cosh r_l − sinh r_j sinh r_l e^{-i(θ_j-θ_l)});
    // the denominator has positive real part, so its principal powers are
    // continuous in the parameters.
    let (pj, pl) = (s.sector(j), s.sector(l));
    let den = creal(pj.r().cosh() * pl.r().cosh())
        - C::from_polar(pj.r().sinh() * pl.r().sinh(), -(pj.theta() - pl.theta()));
    let dlam = pj.lambda() - pl.lambda();
    let omega = C::from_polar(T::one(), dlam) / den;
    let omega_sqrt = C::from_polar(T::one(), dlam / two) / den.sqrt();
    let omega_three_halves = C::from_polar(T::one(), T::lit(1.5) * dlam) / den.powf(T::lit(1.5));

    let dj = bj.mu - bj.nu;
    let dl = (bl.mu - bl.nu).conj();
    let sj = bj.mu + bj.nu;
    let sl = (bl.mu + bl.nu).conj();

    SectorPairCoeffs {
        omega,
        omega_sqrt,
        omega_three_halves,
        v_plus: beta.conj() * dj + beta * dl,
        v_minus: beta.conj() * dj - beta * dl,
        z_coef: dj.conj() / dj * beta * beta / two + dl.conj() / dl * beta.conj() * beta.conj() / two,
        t_coef: sj / dj + sl / dl,
        r_coef: -sj / dj + sl / dl,
        k_coef: beta * sqrt2 / dj + beta.conj() * sqrt2 / dl,
        l_coef: -beta * sqrt2 / dj + beta.conj() * sqrt2 / dl,
    }
}

/// Wavefunction `Ψ(x) = ⟨x|s⟩` with `x = (a + a†)/√2`.
pub fn position_wavefunction<T: Real>(s: &PdState<T>, x: T) -> C<T> {
    let beta = s.beta();
    let two = T::lit(2.0);
    let mut total = C::new(T::zero(), T::zero());
    for j in 0..2 {
        let p = s.sector(j);
        let b = p.bogoliubov();
        let dm = b.mu - b.nu;
        let base = creal(-beta.norm_sqr() / two)
            - dm.conj() / dm * beta * beta / two
            - (b.mu + b.nu) / dm * (x * x / two);
        let k = beta * T::SQRT_2() * x / dm;
        let sign = if j == 0 { T::one() } else { -T::one() };
        total = total + p.inv_sqrt_mu_minus_nu() * ((base + k).exp() + (base - k).exp() * sign);
    }
    total * (T::FRAC_1_PI().powf(T::lit(0.25)) / two)
}

/// `(⟨x⟩, ⟨x²⟩)` from the Gaussian-integral closed forms.
pub fn position_moments<T: Real>(s: &PdState<T>) -> (T, T) {
    let beta = s.beta();
    let b2 = beta.norm_sqr();
    let bog = s.bogoliubov_pair();
    let i = imag_unit::<T>();
    let quarter = T::lit(0.25);

    let mut mean = C::new(T::zero(), T::zero());
    let mut mean_sq = C::new(T::zero(), T::zero());
    for j in 0..2 {
        for l in 0..2 {
            let c = sector_pair_coeffs(s, j, l);
            let sign = if j == 0 { T::one() } else { -T::one() };
            if j == l {
                let dm2 = creal((bog[j].mu - bog[j].nu).norm_sqr());
                let damp = (-T::lit(2.0) * b2).exp();
                mean_sq = mean_sq
                    + ((dm2 + c.v_plus * c.v_plus) + (dm2 + c.v_minus * c.v_minus) * (sign * damp)) * quarter;
            } else {
                // only cross-parity terms contribute to ⟨x⟩
                let cross = bog[j].mu * bog[l].nu - bog[l].mu * bog[j].nu;
                let phase = i * c.omega * (beta.conj() * beta.conj() * cross).im;
                let grow = (creal(-b2) + c.omega * b2 + phase).exp();
                let decay = (creal(-b2) - c.omega * b2 + phase).exp();
                mean = mean + c.omega_three_halves * (c.v_plus * grow + c.v_minus * decay * sign);
            }
        }
    }
    let mean = mean / (T::lit(2.0) * T::SQRT_2());
    (mean.re, mean_sq.re)
}

/// Quadrature means, second moments and variances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureMoments<T> {
    pub mean_x: T,
    pub mean_x2: T,
    pub var_x: T,
    pub mean_p: T,
    pub mean_p2: T,
    pub var_p: T,
    pub uncertainty_product: T,
}

/// Position moments from the closed forms; momentum moments from the same
/// closed forms evaluated on the state rotated by a quarter turn
/// (`β -> -iβ`, `θ_j -> θ_j + π`), which maps `p` onto `x`.
pub fn quadrature_moments<T: Real>(s: &PdState<T>) -> QuadratureMoments<T> {
    let (mean_x, mean_x2) = position_moments(s);
    let rotated = s.rotated(T::FRAC_PI_2()).expect("rotation keeps parameters valid");
    let (mean_p, mean_p2) = position_moments(&rotated);
    let var_x = mean_x2 - mean_x * mean_x;
    let var_p = mean_p2 - mean_p * mean_p;
    QuadratureMoments {
        mean_x,
        mean_x2,
        var_x,
        mean_p,
        mean_p2,
        var_p,
        uncertainty_product: var_x * var_p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::SectorParams;
    use std::f64::consts::PI;

    fn st(beta: C<f64>, p0: (f64, f64, f64), p1: (f64, f64, f64)) -> PdState<f64> {
        PdState::new(
            beta,
            SectorParams::new(p0.0, p0.1, p0.2).unwrap(),
            SectorParams::new(p1.0, p1.1, p1.2).unwrap(),
        )
        .unwrap()
    }

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
        let h = (b - a) / steps as f64;
        let mut acc = f(a) + f(b);
        for i in 1..steps {
            acc += f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    }

    #[test]
    fn coherent_wavefunction_is_gaussian() {
        let beta = 0.8;
        let s = PdState::coherent(C::new(beta, 0.0)).unwrap();
        for x in [-2.0, -0.3, 0.0, 1.1, 2.5] {
            let expect = PI.powf(-0.25) * (-(x - 2f64.sqrt() * beta).powi(2) / 2.0).exp();
            assert!((position_wavefunction(&s, x) - C::new(expect, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn vacuum_wavefunction_is_even() {
        let s = st(C::new(0.0, 0.0), (0.6, 1.0, 0.4), (1.2, -2.0, 0.0));
        for x in [0.2, 1.0, 2.7] {
            assert!((position_wavefunction(&s, x) - position_wavefunction(&s, -x)).norm() < 1e-14);
        }
    }

    #[test]
    fn wavefunction_normalized() {
        let s = st(C::from_polar(1.3, 0.7), (0.3, 0.4, 0.2), (0.6, PI / 2.0, -0.5));
        let norm = simpson(|x| position_wavefunction(&s, x).norm_sqr(), -15.0, 15.0, 6000);
        assert!((norm - 1.0).abs() < 1e-8);
    }

    #[test]
    fn moments_match_quadrature_of_density() {
        let s = st(C::from_polar(1.1, -0.4), (0.5, PI, 0.3), (0.3, 0.2, -1.0));
        let (mx, mx2) = position_moments(&s);
        let qx = simpson(|x| x * position_wavefunction(&s, x).norm_sqr(), -15.0, 15.0, 6000);
        let qx2 = simpson(|x| x * x * position_wavefunction(&s, x).norm_sqr(), -15.0, 15.0, 6000);
        assert!((mx - qx).abs() < 1e-9);
        assert!((mx2 - qx2).abs() < 1e-9);
    }

    #[test]
    fn coherent_variances() {
        let s = PdState::coherent(C::from_polar(2.0f64, 1.0)).unwrap();
        let q = quadrature_moments(&s);
        assert!((q.var_x - 0.5).abs() < 1e-12);
        assert!((q.var_p - 0.5).abs() < 1e-12);
        assert!((q.mean_x - 2f64.sqrt() * 2.0 * 1f64.cos()).abs() < 1e-12);
        assert!((q.mean_p - 2f64.sqrt() * 2.0 * 1f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn even_sector_squeezing_limit() {
        for r0 in [0.25, 0.5, 1.0] {
            let s = st(C::new(1e-3, 0.0), (r0, 0.0, 0.0), (0.0, 0.0, 0.0));
            let q = quadrature_moments(&s);
            assert!((q.var_x - 0.5 * (-2.0 * r0).exp()).abs() < 1e-4);
        }
    }

    #[test]
    fn odd_sector_squeezing_dips_below_coherent_level() {
        let small = st(C::new(1e-4, 0.0), (0.0, 0.0, 0.0), (0.5, 0.0, 0.0));
        assert!((quadrature_moments(&small).var_x - 0.5).abs() < 1e-6);
        let dip = st(C::new(0.3, 0.0), (0.0, 0.0, 0.0), (0.5, 0.0, 0.0));
        assert!((quadrature_moments(&dip).var_x - 0.48110710007681146).abs() < 1e-10);
        // the dip is over by |β| = 1
        let s = st(C::new(1.0, 0.0), (0.0, 0.0, 0.0), (0.5, 0.0, 0.0));
        assert!((quadrature_moments(&s).var_x - 0.952628532520352).abs() < 1e-10);
    }

    #[test]
    fn diagonal_pair_coefficients() {
        let s = st(C::from_polar(1.3, 0.2), (0.7, 2.0, -3.0), (0.1, -1.0, 2.5));
        for j in 0..2 {
            let c = sector_pair_coeffs(&s, j, j);
            assert!((c.omega - C::new(1.0, 0.0)).norm() < 1e-12);
            assert!(c.t_coef.re > 0.0);
            assert!((c.omega_sqrt * c.omega_sqrt - c.omega).norm() < 1e-12);
        }
        let c = sector_pair_coeffs(&s, 0, 1);
        assert!((c.omega_sqrt * c.omega_sqrt - c.omega).norm() < 1e-12);
        assert!((c.omega_three_halves - c.omega_sqrt * c.omega).norm() < 1e-12);
    }
}
