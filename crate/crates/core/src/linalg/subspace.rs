use serde::Serialize;

use super::{mismatch, LinalgError, Matrix};
use crate::scalar::Scalar;

/// A subspace of k^n stored by its canonical RREF basis, so two subspaces
/// are equal exactly when their representations are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace::from_vectors(n, &Matrix::identity(n).to_rows())
    }

    /// Span of `vecs`. Panics if a vector has the wrong length; use
    /// [`Subspace::try_from_vectors`] on untrusted input.
    pub fn from_vectors(n: usize, vecs: &[Vec<Scalar>]) -> Self {
        Subspace::try_from_vectors(n, vecs).expect("vector length matches ambient dimension")
    }

    pub fn try_from_vectors(n: usize, vecs: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        if let Some(v) = vecs.iter().find(|v| v.len() != n) {
            return Err(mismatch("subspace vector", n, v.len()));
        }
        if vecs.is_empty() {
            return Ok(Subspace::zero(n));
        }
        let r = Matrix::from_rows(vecs.to_vec())?.rref();
        let basis = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim: n, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
            .collect()
    }

    /// Coefficients of v in the RREF basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &(c * b);
                }
            }
        }
        rest.iter().all(Scalar::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient_dim, &vecs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j: solve [U^T | -W^T] (a, b) = 0
        let n = self.ambient_dim;
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Subspace::zero(n);
        }
        let m = Matrix::from_fn(n, p + q, |i, j| {
            if j < p {
                self.basis[j][i].clone()
            } else {
                -&other.basis[j - p][i]
            }
        });
        let vecs: Vec<Vec<Scalar>> = m
            .kernel()
            .basis()
            .iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); n];
                for (a, u) in c.iter().take(p).zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += &(a * y);
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(n, &vecs)
    }

    pub fn as_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(0, self.ambient_dim);
        }
        Matrix::from_rows(self.basis.clone()).expect("rows share the ambient length")
    }

    /// Deterministic total order: by dimension, then by printed basis.
    pub fn sort_key(&self) -> (usize, Vec<String>) {
        (self.dim(), self.basis.iter().flatten().map(|x| x.to_string()).collect())
    }
}

/// Incrementally grown semi-echelon basis: each stored row has a unit pivot
/// and zeros at the pivots of the rows stored before it.
#[derive(Debug, Clone)]
pub struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, v: &mut [Scalar]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
    }

    /// Adds v if it is independent of the stored rows; returns whether it was.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.n, "echelon vector length");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("pivot is nonzero");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    pub fn to_subspace(&self) -> Subspace {
        let vecs: Vec<Vec<Scalar>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        Subspace::from_vectors(self.n, &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn sums_and_intersections() {
        let a = Subspace::from_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_vectors(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.intersect(&b), Subspace::from_vectors(3, &[v(&[0, 1, 0])]));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[0, 2, 2])));
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(!e.insert(&v(&[1, 2, 1])));
        assert!(e.contains(&v(&[2, 0, -2])));
        assert_eq!(e.to_subspace().dim(), 2);
    }
}
