//! Linear algebra for the Fock-space oracle.
//!
//! Every generator used here (squeeze, displacement, the quadratic
//! Hamiltonian) is Hermitian and banded in the number basis. Two routes to
//! `exp(-iHt)` are provided:
//!
//! * [`HermitianChain`]: a tridiagonal Hermitian matrix is gauged to a real
//!   symmetric one and diagonalized by implicit QL; yields the dense
//!   propagator.
//! * [`BandedHermitian::propagate`]: Chebyshev expansion of `exp(-iHt) v`
//!   using only banded matrix-vector products.

use ndarray::{Array1, Array2};

use crate::scalar::{creal, Real, C};

/// Eigen-decomposition of a real symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagonalEigen<T> {
    pub values: Vec<T>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: Array2<T>,
}

/// Implicit QL iteration with Wilkinson-type shifts (`tql2`).
///
/// `diag` has length `n`, `off` length `n - 1` (sub-diagonal).
pub fn symmetric_tridiagonal_eigen<T: Real>(diag: &[T], off: &[T]) -> TridiagonalEigen<T> {
    let n = diag.len();
    assert!(n == 0 || off.len() + 1 == n, "off-diagonal length must be n - 1");
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(T::zero());
    // rows of `zt` are the columns of the eigenvector matrix
    let mut zt = vec![T::zero(); n * n];
    for i in 0..n {
        zt[i * n + i] = T::one();
    }

    let eps = T::epsilon();
    let two = T::lit(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            loop {
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = zt.split_at_mut((i + 1) * n);
                    let row_i = &mut lo[i * n..];
                    let row_next = &mut hi[..n];
                    for k in 0..n {
                        let hk = row_next[k];
                        row_next[k] = s * row_i[k] + c * hk;
                        row_i[k] = c * row_i[k] - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }

    let vectors = Array2::from_shape_fn((n, n), |(row, col)| zt[col * n + row]);
    TridiagonalEigen { values: d, vectors }
}

/// Hermitian tridiagonal matrix: real diagonal and complex sub-diagonal
/// `lower[k] = H[k+1, k]`.
#[derive(Debug, Clone)]
pub struct HermitianChain<T> {
    pub diag: Vec<T>,
    pub lower: Vec<C<T>>,
}

/// Spectral form `H = G Q Λ Qᵀ G†` of a [`HermitianChain`], with `G` the
/// diagonal gauge that makes the off-diagonal real and non-negative.
#[derive(Debug, Clone)]
pub struct ChainSpectrum<T> {
    gauge: Vec<C<T>>,
    eigen: TridiagonalEigen<T>,
}

impl<T: Real> HermitianChain<T> {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn spectrum(&self) -> ChainSpectrum<T> {
        let n = self.diag.len();
        let mut gauge = Vec::with_capacity(n);
        let mut chi = T::zero();
        if n > 0 {
            gauge.push(creal(T::one()));
        }
        for o in &self.lower {
            if o.norm() > T::zero() {
                chi = chi + o.arg();
            }
            gauge.push(C::from_polar(T::one(), chi));
        }
        let off: Vec<T> = self.lower.iter().map(|o| o.norm()).collect();
        ChainSpectrum {
            gauge,
            eigen: symmetric_tridiagonal_eigen(&self.diag, &off),
        }
    }

    pub fn to_dense(&self) -> Array2<C<T>> {
        let n = self.len();
        let mut m = Array2::from_elem((n, n), C::new(T::zero(), T::zero()));
        for k in 0..n {
            m[[k, k]] = creal(self.diag[k]);
        }
        for (k, o) in self.lower.iter().enumerate() {
            m[[k + 1, k]] = *o;
            m[[k, k + 1]] = o.conj();
        }
        m
    }
}

impl<T: Real> ChainSpectrum<T> {
    pub fn values(&self) -> &[T] {
        &self.eigen.values
    }

    /// Dense `exp(-iHt)`.
    pub fn propagator(&self, t: T) -> Array2<C<T>> {
        let n = self.gauge.len();
        let q = &self.eigen.vectors;
        let mut qc = q.clone();
        let mut qs = q.clone();
        for (k, &lam) in self.eigen.values.iter().enumerate() {
            let (sn, cs) = (lam * t).sin_cos();
            qc.column_mut(k).mapv_inplace(|v| v * cs);
            qs.column_mut(k).mapv_inplace(|v| v * sn);
        }
        let re = qc.dot(&q.t());
        let im = qs.dot(&q.t());
        Array2::from_shape_fn((n, n), |(m, k)| {
            C::new(re[[m, k]], -im[[m, k]]) * self.gauge[m] * self.gauge[k].conj()
        })
    }

    /// `exp(-iHt) v` without forming the dense propagator.
    pub fn apply(&self, t: T, v: &[C<T>]) -> Vec<C<T>> {
        let n = self.gauge.len();
        assert_eq!(v.len(), n, "vector length must match chain length");
        let q = &self.eigen.vectors;
        let g: Vec<C<T>> = v.iter().zip(&self.gauge).map(|(a, g)| *a * g.conj()).collect();
        let mut coeff = vec![C::new(T::zero(), T::zero()); n];
        for (k, ck) in coeff.iter_mut().enumerate() {
            let mut acc = C::new(T::zero(), T::zero());
            for m in 0..n {
                acc = acc + g[m] * q[[m, k]];
            }
            *ck = acc * C::from_polar(T::one(), -self.eigen.values[k] * t);
        }
        (0..n)
            .map(|m| {
                let mut acc = C::new(T::zero(), T::zero());
                for k in 0..n {
                    acc = acc + coeff[k] * q[[m, k]];
                }
                acc * self.gauge[m]
            })
            .collect()
    }
}

/// Sparse Hermitian matrix: real diagonal plus complex lower bands
/// `H[n + offset, n] = band[n]`; upper bands are the conjugates.
#[derive(Debug, Clone)]
pub struct BandedHermitian<T> {
    pub diag: Vec<T>,
    pub bands: Vec<(usize, Vec<C<T>>)>,
}

impl<T: Real> BandedHermitian<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            diag: vec![T::zero(); dim],
            bands: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn matvec(&self, v: &[C<T>], out: &mut [C<T>]) {
        for (o, (d, x)) in out.iter_mut().zip(self.diag.iter().zip(v)) {
            *o = *x * *d;
        }
        for (off, band) in &self.bands {
            for (n, b) in band.iter().enumerate() {
                out[n + off] = out[n + off] + *b * v[n];
                out[n] = out[n] + b.conj() * v[n + off];
            }
        }
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn spectral_bounds(&self) -> (T, T) {
        let mut radius = vec![T::zero(); self.dim()];
        for (off, band) in &self.bands {
            for (n, b) in band.iter().enumerate() {
                radius[n] = radius[n] + b.norm();
                radius[n + off] = radius[n + off] + b.norm();
            }
        }
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for (d, r) in self.diag.iter().zip(&radius) {
            lo = lo.min(*d - *r);
            hi = hi.max(*d + *r);
        }
        if self.dim() == 0 {
            (T::zero(), T::zero())
        } else {
            (lo, hi)
        }
    }

    pub fn to_dense(&self) -> Array2<C<T>> {
        let n = self.dim();
        let mut m = Array2::from_elem((n, n), C::new(T::zero(), T::zero()));
        for k in 0..n {
            m[[k, k]] = creal(self.diag[k]);
        }
        for (off, band) in &self.bands {
            for (k, b) in band.iter().enumerate() {
                m[[k + off, k]] = m[[k + off, k]] + *b;
                m[[k, k + off]] = m[[k, k + off]] + b.conj();
            }
        }
        m
    }

    /// `exp(-iHt) v` by Chebyshev expansion.
    pub fn propagate(&self, t: T, v: &Array1<C<T>>) -> Array1<C<T>> {
        let n = self.dim();
        assert_eq!(v.len(), n, "vector length must match operator dimension");
        if n == 0 || t == T::zero() {
            return v.clone();
        }
        let (lo, hi) = self.spectral_bounds();
        let two = T::lit(2.0);
        let center = (hi + lo) / two;
        if hi - lo <= T::epsilon() * (T::one() + center.abs()) {
            // H is a multiple of the identity
            let global = C::from_polar(T::one(), -center * t);
            return v.mapv(|a| a * global);
        }
        // keep the scaled spectrum strictly inside [-1, 1]
        let half = ((hi - lo) / two).max(T::min_positive_value()) * T::lit(1.0 + 1e-12);
        let x = half * t.abs();
        let bessel = bessel_j_sequence(x);
        let sign = if t < T::zero() { -T::one() } else { T::one() };

        let scaled = |src: &[C<T>], dst: &mut [C<T>]| {
            self.matvec(src, dst);
            for (d, s) in dst.iter_mut().zip(src) {
                *d = (*d - *s * center) / half;
            }
        };

        let mut prev: Vec<C<T>> = v.to_vec();
        let mut cur = vec![C::new(T::zero(), T::zero()); n];
        scaled(&prev, &mut cur);
        let mut acc: Vec<C<T>> = prev.iter().map(|a| *a * bessel[0]).collect();
        // (-i)^k sign^k
        let step = C::new(T::zero(), -sign);
        let mut phase = step;
        let mut next = vec![C::new(T::zero(), T::zero()); n];
        for (k, jk) in bessel.iter().enumerate().skip(1) {
            let coef = phase * (two * *jk);
            for (a, c) in acc.iter_mut().zip(&cur) {
                *a = *a + *c * coef;
            }
            if k + 1 == bessel.len() {
                break;
            }
            scaled(&cur, &mut next);
            for (nx, p) in next.iter_mut().zip(&prev) {
                *nx = *nx * two - *p;
            }
            std::mem::swap(&mut prev, &mut cur);
            std::mem::swap(&mut cur, &mut next);
            phase = phase * step;
        }
        let global = C::from_polar(T::one(), -center * t);
        Array1::from_iter(acc.into_iter().map(|a| a * global))
    }
}

/// `J_0(x), …, J_K(x)` for `x ≥ 0`, with `K` large enough that the
/// neglected tail is below double-precision roundoff. Miller's backward
/// recurrence normalized by `J_0 + 2 Σ J_{2k} = 1`.
pub fn bessel_j_sequence<T: Real>(x: T) -> Vec<T> {
    if x == T::zero() {
        return vec![T::one()];
    }
    if x < T::lit(1e-12) {
        let h = x / T::lit(2.0);
        return vec![T::one() - h * h, h, h * h / T::lit(2.0)];
    }
    let xf = x.to_f64().unwrap_or(0.0);
    let cube = xf.cbrt();
    let keep = (xf + 12.0 * cube + 40.0).ceil() as usize;
    let mut start = keep + (10.0 * cube).ceil() as usize + 40;
    if start % 2 == 1 {
        start += 1;
    }
    let mut j = vec![T::zero(); start + 2];
    j[start] = T::lit(1e-30);
    let big = T::lit(1e200);
    for k in (1..=start).rev() {
        let v = T::from_count(2 * k) / x * j[k] - j[k + 1];
        j[k - 1] = v;
        if v.abs() > big {
            // rescale everything computed so far
            for jj in j.iter_mut().skip(k - 1) {
                *jj = *jj / big;
            }
        }
    }
    let mut norm = j[0];
    let mut k = 2;
    while k <= start {
        norm = norm + T::lit(2.0) * j[k];
        k += 2;
    }
    j.truncate(keep + 1);
    for v in j.iter_mut() {
        *v = *v / norm;
    }
    j
}
