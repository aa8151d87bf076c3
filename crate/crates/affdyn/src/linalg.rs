//! Small dense linear algebra over exact rationals.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular; kernel vector {0:?}")]
    Singular(Vec<String>),
    #[error("dimension mismatch")]
    Dimension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    m: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize, m: usize) -> Self {
        RatMatrix { n, m, data: vec![Rational::zero(); n * m] }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.set(i, i, Rational::one());
        }
        out
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let mut out = Self::zeros(n, m);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                out.set(i, j, int(x));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.m + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.m..(i + 1) * self.m].to_vec()
    }

    pub fn mul(&self, o: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.m != o.n {
            return Err(LinalgError::Dimension);
        }
        let mut out = RatMatrix::zeros(self.n, o.m);
        for i in 0..self.n {
            for k in 0..self.m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.m {
                    let v = out.get(i, j) + a * o.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| (0..self.m).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mv = self.mul_vec(v);
        u.iter().zip(&mv).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Reduced row echelon form; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.m {
            if r == self.n {
                break;
            }
            let Some(p) = (r..self.n).find(|&i| !self.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..self.m {
                    self.data.swap(p * self.m + j, r * self.m + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in 0..self.m {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.n {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in 0..self.m {
                    let v = self.get(i, j) - &f * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// A nonzero kernel vector, if any.
    pub fn kernel_vector(&self) -> Option<Vec<Rational>> {
        let mut a = self.clone();
        let pivots = a.rref();
        let free = (0..self.m).find(|c| !pivots.contains(c))?;
        let mut v = vec![Rational::zero(); self.m];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a.get(r, free).clone();
        }
        Some(v)
    }

    fn singular(&self) -> LinalgError {
        let k = self.kernel_vector().unwrap_or_default();
        LinalgError::Singular(k.iter().map(|x| x.to_string()).collect())
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if self.n != self.m || b.len() != self.n {
            return Err(LinalgError::Dimension);
        }
        let mut aug = RatMatrix::zeros(self.n, self.n + 1);
        for i in 0..self.n {
            for j in 0..self.n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.n, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.len() < self.n || pivots[self.n - 1] != self.n - 1 {
            return Err(self.singular());
        }
        Ok((0..self.n).map(|i| aug.get(i, self.n).clone()).collect())
    }

    pub fn inverse(&self) -> Result<RatMatrix, LinalgError> {
        if self.n != self.m {
            return Err(LinalgError::Dimension);
        }
        let n = self.n;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(self.singular());
        }
        let mut out = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> Rational {
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..self.n {
            let Some(p) = (c..self.n).find(|&i| !a.get(i, c).is_zero()) else { return Rational::zero() };
            if p != c {
                for j in 0..self.m {
                    a.data.swap(p * self.m + j, c * self.m + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for i in c + 1..self.n {
                let f = a.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..self.m {
                    let v = a.get(i, j) - &f * a.get(c, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Signature `(n₊, n₋, n₀)` of a symmetric matrix, by congruence
    /// diagonalization.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let mut a = self.clone();
        let n = self.n;
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        let mut active: Vec<usize> = (0..n).collect();
        while let Some(&first) = active.first() {
            let pivot = active.iter().copied().find(|&i| !a.get(i, i).is_zero());
            let k = match pivot {
                Some(k) => k,
                None => {
                    // all diagonal entries vanish: fold a partner row into the first
                    match active.iter().copied().find(|&j| j != first && !a.get(first, j).is_zero()) {
                        None => {
                            active.retain(|&i| i != first);
                            zero += 1;
                            continue;
                        }
                        Some(j) => {
                            for t in 0..n {
                                let v = a.get(first, t) + a.get(j, t);
                                a.set(first, t, v);
                            }
                            for t in 0..n {
                                let v = a.get(t, first) + a.get(t, j);
                                a.set(t, first, v);
                            }
                            first
                        }
                    }
                }
            };
            let piv = a.get(k, k).clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != k);
            for &i in &active {
                let f = a.get(i, k) / &piv;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
            for &i in &active {
                a.set(i, k, Rational::zero());
                a.set(k, i, Rational::zero());
            }
        }
        (pos, neg, zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_i64(&[vec![-1, 1, 1], vec![1, -1, 1], vec![1, 1, -1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
        assert_eq!(inv.get(0, 1), &rat(1, 2));
        assert_eq!(m.determinant(), int(4));
    }

    #[test]
    fn singular_reports_kernel() {
        let m = RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert!(m.inverse().is_ok());
        let s = RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        let k = s.kernel_vector().unwrap();
        assert!(s.mul_vec(&k).iter().all(|x| x.is_zero()));
        assert!(matches!(s.solve(&[int(1), int(0)]), Err(LinalgError::Singular(_))));
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).inertia(), (1, 1, 0));
        assert_eq!(RatMatrix::from_i64(&[vec![0, 1], vec![1, -1]]).inertia(), (1, 1, 0));
        assert_eq!(RatMatrix::from_i64(&[vec![-2, 1], vec![1, -2]]).inertia(), (0, 2, 0));
        assert_eq!(RatMatrix::from_i64(&[vec![-1, 1, 1], vec![1, -1, 1], vec![1, 1, -1]]).inertia(), (1, 2, 0));
        assert_eq!(RatMatrix::from_i64(&[vec![1, 1], vec![1, 1]]).inertia(), (1, 0, 1));
        assert_eq!(RatMatrix::from_i64(&[vec![1, 1, 0], vec![1, 2, 1], vec![0, 1, 0]]).inertia(), (2, 1, 0));
    }
}
