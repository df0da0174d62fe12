//! Small dense complex matrices: LU factorization, determinants, inverses,
//! linear solves and eigenvalues (characteristic polynomial + Durand-Kerner).
//!
//! Everything here operates on matrices of modest size (n ≤ ~40 for the NZ
//! determinants, n ≤ ~10 for cocycle matrices), so plain O(n³) dense
//! algorithms with partial pivoting are entirely adequate.

use num_complex::Complex64;

use crate::{Error, Result};

pub type C = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub n: usize,
    pub m: usize,
    data: Vec<C>, // row-major
}

impl CMat {
    pub fn zeros(n: usize, m: usize) -> Self {
        CMat {
            n,
            m,
            data: vec![C::new(0.0, 0.0); n * m],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = C::new(1.0, 0.0);
        }
        a
    }

    pub fn diag(d: &[C]) -> Self {
        let mut a = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            a[(i, i)] = x;
        }
        a
    }

    pub fn from_rows(rows: &[Vec<C>]) -> Self {
        let n = rows.len();
        let m = if n == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(n * m);
        for r in rows {
            assert_eq!(r.len(), m);
            data.extend_from_slice(r);
        }
        CMat { n, m, data }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| C::new(v as f64, 0.0)).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.m, other.n);
        let mut out = CMat::zeros(self.n, other.m);
        for i in 0..self.n {
            for k in 0..self.m {
                let aik = self[(i, k)];
                if aik == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.m {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.n, self.m), (other.n, other.m));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        out
    }

    pub fn scale(&self, c: C) -> CMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= c;
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        let mut out = CMat::zeros(self.m, self.n);
        for i in 0..self.n {
            for j in 0..self.m {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// In-place LU with partial pivoting; returns (LU, perm, pivot sign), or
    /// None when singular to working precision.
    fn lu(&self) -> Option<(Vec<C>, Vec<usize>, f64)> {
        assert_eq!(self.n, self.m);
        let n = self.n;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let scale = self.max_norm().max(1.0);
        for k in 0..n {
            let (piv, mx) = (k..n)
                .map(|i| (i, a[i * n + k].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if mx <= 1e-300 * scale {
                return None;
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
                sign = -sign;
            }
            let akk = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / akk;
                a[i * n + k] = f;
                for j in k + 1..n {
                    let v = a[k * n + j];
                    a[i * n + j] -= f * v;
                }
            }
        }
        Some((a, perm, sign))
    }

    pub fn det(&self) -> C {
        match self.lu() {
            None => C::new(0.0, 0.0),
            Some((lu, _, sign)) => {
                let n = self.n;
                let mut d = C::new(sign, 0.0);
                for k in 0..n {
                    d *= lu[k * n + k];
                }
                d
            }
        }
    }

    /// Solve `A x = b` for one right-hand side.
    pub fn solve(&self, b: &[C]) -> Result<Vec<C>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let (lu, perm, _) = self.lu().ok_or(Error::Singular)?;
        let mut x: Vec<C> = perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                let f = lu[i * n + j];
                let v = x[j];
                x[i] -= f * v;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let f = lu[i * n + j];
                let v = x[j];
                x[i] -= f * v;
            }
            x[i] /= lu[i * n + i];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<CMat> {
        let n = self.n;
        let mut out = CMat::zeros(n, n);
        let mut e = vec![C::new(0.0, 0.0); n];
        for j in 0..n {
            e[j] = C::new(1.0, 0.0);
            let col = self.solve(&e)?;
            e[j] = C::new(0.0, 0.0);
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> C {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Characteristic polynomial coefficients `[c_0, ..., c_{n-1}, 1]` of
    /// `det(xI - A)` via the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<C> {
        let n = self.n;
        let mut coeffs = vec![C::new(0.0, 0.0); n + 1];
        coeffs[n] = C::new(1.0, 0.0);
        let mut m = CMat::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I;  c_{n-k} = -tr(A·M_k)/k
            m = self.mul(&m);
            let c_prev = coeffs[n - k + 1];
            for i in 0..n {
                m[(i, i)] += c_prev;
            }
            coeffs[n - k] = -self.mul(&m).trace() / C::new(k as f64, 0.0);
        }
        coeffs
    }

    /// All eigenvalues, via Durand-Kerner on the characteristic polynomial.
    pub fn eigenvalues(&self) -> Vec<C> {
        poly_roots(&self.char_poly())
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.m + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.m + j]
    }
}

/// Roots of a monic-normalizable polynomial `Σ coeffs[k] x^k` by
/// Durand-Kerner iteration.
pub fn poly_roots(coeffs: &[C]) -> Vec<C> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return vec![];
    }
    let lead = coeffs[deg];
    let monic: Vec<C> = coeffs.iter().map(|&c| c / lead).collect();
    let eval = |x: C| {
        let mut v = C::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            v = v * x + c;
        }
        v
    };
    // standard initialization: powers of a non-real point of modulus ~1
    let seed = C::new(0.4, 0.9);
    let mut roots: Vec<C> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    roots
}
