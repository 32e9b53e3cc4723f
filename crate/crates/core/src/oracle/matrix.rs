use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::{GaussianRational, Rational};

/// Dense square matrix over `GaussianRational`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, data: vec![GaussianRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    /// `E_jk`, zero-based.
    pub fn unit(n: usize, j: usize, k: usize) -> Self {
        let mut m = Matrix::zero(n);
        m[(j, k)] = GaussianRational::one();
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> GaussianRational) -> Self {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussianRational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn dagger(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.dagger()
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.n).fold(GaussianRational::zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn scale_real(&self, c: &Rational) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x.scale(c)).collect() }
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// `c` with `self = c * other`, if the two are proportional.
    pub fn ratio_to(&self, other: &Matrix) -> Option<GaussianRational> {
        let (pos, pivot) = other.data.iter().enumerate().find(|(_, x)| !x.is_zero())?;
        let c = self.data[pos].checked_div(pivot).ok()?;
        (*self == other.scale(&c)).then_some(c)
    }

    /// `Re tr(self other)`, the real inner product on Hermitian matrices.
    pub fn trace_form(&self, other: &Matrix) -> Rational {
        (self * other).trace().re
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_of_units() {
        let e = Matrix::unit(2, 0, 1);
        let f = e.dagger();
        let h = e.commutator(&f);
        assert_eq!(h, &Matrix::unit(2, 0, 0) - &Matrix::unit(2, 1, 1));
        assert!(h.is_hermitian());
        assert!(h.trace().is_zero());
        assert_eq!(h.commutator(&e).ratio_to(&e), Some(GaussianRational::from_int(2)));
    }

    #[test]
    fn dagger_conjugates() {
        let i = GaussianRational::i();
        let m = Matrix::unit(2, 0, 1).scale(&i);
        assert_eq!(m.dagger(), Matrix::unit(2, 1, 0).scale(&-&i));
        assert!(!m.is_hermitian());
        assert!((&m + &m.dagger()).is_hermitian());
    }
}
