//! Small dense complex float matrices for pencil evaluation, sampled
//! fixtures and quadrature. All exact verification lives in [`crate::exact`];
//! this type only carries the floating-point side.

use num_complex::Complex64;

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat { n, data: vec![Complex64::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(l, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        CMat { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        CMat { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        CMat { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    /// Blockwise quaternionic transpose, the float counterpart of
    /// [`crate::involutions::sharp_tr`]. Requires even size.
    pub fn sharp_tr(&self) -> Self {
        debug_assert_eq!(self.n % 2, 0);
        Self::from_fn(self.n, |r, c| {
            let (i, a) = (r / 2, r % 2);
            let (j, b) = (c / 2, c % 2);
            // block (i,j) of the output is sharp2 of block (j,i) of the input
            let src = |p: usize, q: usize| self.get(2 * j + p, 2 * i + q);
            match (a, b) {
                (0, 0) => src(1, 1),
                (0, 1) => -src(0, 1),
                (1, 0) => -src(1, 0),
                _ => src(0, 0),
            }
        })
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |(A·A* - I)_{ij}|`, the sampled unitarity defect.
    pub fn unitary_defect(&self) -> f64 {
        self.mul(&self.adjoint()).sub(&Self::identity(self.n)).max_norm()
    }

    pub fn self_adjoint_defect(&self) -> f64 {
        self.sub(&self.adjoint()).max_norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_tr_matches_exact_version() {
        use crate::exact::{Dyadic, ExactMatrix};
        let m = ExactMatrix::from_fn(4, |i, j| Dyadic::gauss((i * 4 + j) as i64, -(j as i64)));
        let exact = crate::involutions::sharp_tr(&m).unwrap().to_complex();
        let float = m.to_complex().sharp_tr();
        assert!(exact.sub(&float).max_norm() < 1e-14);
    }

    #[test]
    fn unitary_defect_of_identity_is_zero() {
        assert_eq!(CMat::identity(3).unitary_defect(), 0.0);
    }
}
