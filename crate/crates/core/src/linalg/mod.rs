//! Dense exact matrices, row reduction and tensor embeddings.
//!
//! Tensor convention: on V^{⊗n} with dim V = d the basis vector
//! e_{s_1} ⊗ … ⊗ e_{s_n} has index s_1 + d·s_2 + … + d^{n-1}·s_n, i.e. the
//! first slot varies fastest. For n = 2, d = 2 this is the order
//! {w1⊗w1, w2⊗w1, w1⊗w2, w2⊗w2}. Consequently `tensor(a, b)` (a on the first
//! slot) is the textbook Kronecker product `kron(b, a)`.

mod invariant;
mod subspace;

pub use invariant::{
    algebra_span, algebra_span_dim, closure_of, composition_dims, invariant_closure, is_invariant,
    proper_invariant_subspace, weight_invariant_subspaces,
};
pub use subspace::{Echelon, Subspace};

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch { context: String, expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("index error: {0}")]
    Index(String),
    #[error("operator {op} has off-diagonal entry at ({row}, {col})")]
    NotDiagonal { op: usize, row: usize, col: usize },
    #[error("weight cluster {cluster:?} carries infinitely many invariant lines")]
    InfiniteFamily { cluster: Vec<usize> },
    #[error("weight cluster {cluster:?} does not split over the base field")]
    NonSplit { cluster: Vec<usize> },
    #[error("weight cluster {cluster:?} of dimension {} with a {algebra_dim}-dimensional local algebra is outside the solver's reach", cluster.len())]
    Undetermined { cluster: Vec<usize>, algebra_dim: usize },
}

pub(crate) fn mismatch(context: &str, expected: usize, found: usize) -> LinalgError {
    LinalgError::DimensionMismatch { context: context.to_string(), expected, found }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form with its rank and pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(mismatch("from_rows", c, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect();
        Matrix::from_rows(v).expect("rectangular literal")
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(mismatch("matrix product", self.cols, other.rows));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Textbook Kronecker product: row index i_a·rows(b) + i_b.
    pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
        Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
            let x = a.get(i / b.rows, j / b.cols);
            if x.is_zero() {
                return Scalar::zero();
            }
            x * b.get(i % b.rows, j % b.cols)
        })
    }

    /// a ⊗ b in the first-slot-fastest tensor order (a acts on slot 1).
    pub fn tensor(a: &Matrix, b: &Matrix) -> Matrix {
        Matrix::kron(b, a)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&k| !m[k][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("pivot is nonzero");
            for x in m[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = m[r].clone();
            for (k, row) in m.iter_mut().enumerate() {
                if k == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &(&f * &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let matrix = Matrix::from_rows(m).unwrap_or_else(|_| Matrix::zeros(self.rows, self.cols));
        Rref { matrix, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space {v : M v = 0}.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vecs = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate().take(rank) {
                    v[p] = -matrix.get(i, f);
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::from_vectors(self.cols, &vecs)
    }

    /// Column space, as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.rows, &self.transpose().to_rows())
    }

    pub fn det(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(mismatch("det", self.rows, self.cols));
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&k| !m[k][c].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det = &det * &m[c][c];
            let inv = m[c][c].inv().expect("pivot is nonzero");
            for k in c + 1..n {
                if m[k][c].is_zero() {
                    continue;
                }
                let f = &m[k][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[k][j] -= &t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(mismatch("inverse", self.rows, self.cols));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let r = aug.rref();
        if r.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || r.rank < n {
            return Err(LinalgError::Singular);
        }
        let idx: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.matrix.submatrix(&idx, &cols))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// The permutation matrix sending e_{s_1..s_n} to e_{s_{σ(1)}..s_{σ(n)}}
/// where slot k of the output carries slot `perm[k]` of the input.
pub fn slot_permutation(perm: &[usize], d: usize) -> Matrix {
    let n = perm.len();
    let size = d.pow(n as u32);
    let mut m = Matrix::zeros(size, size);
    for src in 0..size {
        let digits = digits_of(src, d, n);
        let dst: usize = (0..n).map(|k| digits[perm[k]] * d.pow(k as u32)).sum();
        m.set(dst, src, Scalar::one());
    }
    m
}

pub(crate) fn digits_of(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(idx % d);
        idx /= d;
    }
    out
}

/// M (an operator on V⊗V) acting on slots i < j (1-based) of V^{⊗n}.
pub fn embed_pair(m: &Matrix, positions: (usize, usize), n: usize) -> Result<Matrix, LinalgError> {
    embed_pair_dim(m, positions, n, 2)
}

pub fn embed_pair_dim(m: &Matrix, (i, j): (usize, usize), n: usize, d: usize) -> Result<Matrix, LinalgError> {
    if !(1 <= i && i < j && j <= n) {
        return Err(LinalgError::Index(format!("slots ({i}, {j}) in a {n}-fold tensor")));
    }
    if m.rows != d * d || m.cols != d * d {
        return Err(mismatch("embed_pair operator", d * d, m.rows));
    }
    let (i, j) = (i - 1, j - 1);
    let size = d.pow(n as u32);
    let mut out = Matrix::zeros(size, size);
    for col in 0..size {
        let digits = digits_of(col, d, n);
        let src = digits[i] + d * digits[j];
        for a in 0..d {
            for b in 0..d {
                let v = m.get(a + d * b, src);
                if v.is_zero() {
                    continue;
                }
                let mut dd = digits.clone();
                dd[i] = a;
                dd[j] = b;
                let row: usize = dd.iter().enumerate().map(|(k, &s)| s * d.pow(k as u32)).sum();
                out.set(row, col, v.clone());
            }
        }
    }
    Ok(out)
}

/// The flip τ on V⊗V.
pub fn flip(d: usize) -> Matrix {
    slot_permutation(&[1, 0], d)
}
