use serde::Serialize;

use super::{tensor_word, Element, FrtError, GradedComponent, Quotient};
use crate::linalg::{weight_invariant_subspaces, Matrix, Subspace};
use crate::scalar::Scalar;

/// Which graded component a coaction is expressed in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ComponentId {
    pub multiset: Vec<usize>,
    pub quotient: Quotient,
}

/// A subquotient of V_{p_1} ⊗ … ⊗ V_{p_n} given by explicit vectors.
///
/// The first `sub_rows` rows of `basis` span a subcomodule that is divided
/// out; the remaining rows are representatives of the visible basis. With
/// `sub_rows = 0` this is an honest subcomodule.
#[derive(Debug, Clone, Serialize)]
pub struct TensorComodule {
    pub points: Vec<usize>,
    pub basis: Matrix,
    pub sub_rows: usize,
    pub labels: Vec<String>,
}

fn digit_label(idx: usize, n: usize) -> String {
    let digits: String = (0..n).map(|k| if (idx >> k) & 1 == 0 { '1' } else { '2' }).collect();
    format!("v{digits}")
}

impl TensorComodule {
    /// V_{p_1} ⊗ … ⊗ V_{p_n} with its tensor basis.
    pub fn standard(points: &[usize]) -> Self {
        let n = points.len();
        let size = 1 << n;
        TensorComodule {
            points: points.to_vec(),
            basis: Matrix::identity(size),
            sub_rows: 0,
            labels: (0..size).map(|i| digit_label(i, n)).collect(),
        }
    }

    /// The one-dimensional comodule with coaction v ↦ 1 ⊗ v.
    pub fn trivial() -> Self {
        TensorComodule { points: Vec::new(), basis: Matrix::identity(1), sub_rows: 0, labels: vec!["1".into()] }
    }

    pub fn span(points: &[usize], vectors: Vec<Vec<Scalar>>, labels: Vec<String>) -> Result<Self, FrtError> {
        TensorComodule::subquotient(points, Vec::new(), vectors, labels)
    }

    pub fn subquotient(
        points: &[usize],
        sub: Vec<Vec<Scalar>>,
        reps: Vec<Vec<Scalar>>,
        labels: Vec<String>,
    ) -> Result<Self, FrtError> {
        let size = 1usize << points.len();
        if labels.len() != reps.len() {
            return Err(FrtError::BasisMismatch("one label per visible basis vector".into()));
        }
        let sub_rows = sub.len();
        let rows: Vec<Vec<Scalar>> = sub.into_iter().chain(reps).collect();
        if let Some(v) = rows.iter().find(|v| v.len() != size) {
            return Err(FrtError::BasisMismatch(format!("vector of length {} in a {size}-dimensional tensor", v.len())));
        }
        let basis = if rows.is_empty() { Matrix::zeros(0, size) } else { Matrix::from_rows(rows)? };
        Ok(TensorComodule { points: points.to_vec(), basis, sub_rows, labels })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows() - self.sub_rows
    }

    pub fn component_id(&self, quotient: Quotient) -> ComponentId {
        let mut multiset = self.points.clone();
        multiset.sort_unstable();
        ComponentId { multiset, quotient }
    }
}

/// Δ(b_i) = Σ_k Σ_j M^(k)_{ij} · basis_k ⊗ b_j over the basis of a graded
/// component.
#[derive(Debug, Clone, Serialize)]
pub struct CoactionMatrixSet {
    pub component: ComponentId,
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl CoactionMatrixSet {
    /// The coefficient of b_j in Δ(b_i), as an element in normal form.
    pub fn coefficient(&self, gc: &GradedComponent, i: usize, j: usize) -> Element {
        let coords: Vec<Scalar> = self.matrices.iter().map(|m| m.get(i, j).clone()).collect();
        gc.element(&coords)
    }

    /// The operators a subcomodule (as row-coordinate vectors) must be
    /// stable under.
    pub fn operators(&self) -> Vec<Matrix> {
        self.matrices.iter().map(Matrix::transpose).collect()
    }
}

pub fn coaction_matrices(cm: &TensorComodule, gc: &GradedComponent) -> Result<CoactionMatrixSet, FrtError> {
    let id = cm.component_id(gc.quotient());
    if id.multiset != gc.multiset() {
        return Err(FrtError::BasisMismatch(format!(
            "comodule points {:?} against a component over {:?}",
            cm.points,
            gc.multiset()
        )));
    }
    let rows = cm.basis.rows();
    let size = cm.basis.cols();
    let big_n = gc.dim();
    // coefficient of w_J in Δ(row i), in normal-form coordinates
    let mut c = vec![vec![Vec::new(); size]; rows];
    for (i, ci) in c.iter_mut().enumerate() {
        for (jj, cij) in ci.iter_mut().enumerate() {
            let mut e = Element::zero();
            for ii in 0..size {
                let b = cm.basis.get(i, ii);
                if !b.is_zero() {
                    e.add_term(tensor_word(&cm.points, ii, jj), b);
                }
            }
            *cij = gc.normal_form(&e)?;
        }
    }
    let r = cm.basis.rref();
    if r.rank < rows {
        return Err(FrtError::BasisMismatch("comodule basis vectors are dependent".into()));
    }
    let all: Vec<usize> = (0..rows).collect();
    let binv = cm.basis.submatrix(&all, &r.pivots).inverse()?;
    let mut alpha = vec![vec![vec![Scalar::zero(); big_n]; rows]; rows];
    for i in 0..rows {
        for j in 0..rows {
            for (pi, &p) in r.pivots.iter().enumerate() {
                let f = binv.get(pi, j);
                if f.is_zero() {
                    continue;
                }
                for k in 0..big_n {
                    if !c[i][p][k].is_zero() {
                        alpha[i][j][k] += &(&c[i][p][k] * f);
                    }
                }
            }
        }
    }
    for i in 0..rows {
        for jj in 0..size {
            for k in 0..big_n {
                let mut acc = Scalar::zero();
                for (j, aij) in alpha[i].iter().enumerate() {
                    let b = cm.basis.get(j, jj);
                    if !b.is_zero() && !aij[k].is_zero() {
                        acc += &(&aij[k] * b);
                    }
                }
                if acc != c[i][jj][k] {
                    return Err(FrtError::NotClosed(format!(
                        "coaction of basis vector {i} leaves the span (tensor coordinate {jj})"
                    )));
                }
            }
        }
    }
    for i in 0..cm.sub_rows {
        for j in cm.sub_rows..rows {
            if alpha[i][j].iter().any(|x| !x.is_zero()) {
                return Err(FrtError::NotClosed(format!("divided-out vector {i} is not in a subcomodule")));
            }
        }
    }
    let d = cm.dim();
    let s = cm.sub_rows;
    let matrices = (0..big_n)
        .map(|k| Matrix::from_fn(d, d, |i, j| alpha[s + i][s + j][k].clone()))
        .collect();
    Ok(CoactionMatrixSet { component: id, dim: d, matrices })
}

/// Every subcomodule, as a subspace of coordinate vectors over the
/// comodule basis. `diag` is the coaction over the quotient with both
/// off-diagonal generators struck; its matrices must be diagonal.
pub fn subcomodule_solve(cm: &CoactionMatrixSet, diag: &CoactionMatrixSet) -> Result<Vec<Subspace>, FrtError> {
    if cm.dim != diag.dim {
        return Err(FrtError::BasisMismatch("coactions of different dimension".into()));
    }
    Ok(weight_invariant_subspaces(&diag.operators(), &cm.operators(), cm.dim)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct HomCheck {
    pub pass: bool,
    /// First failing basis element of the component and the residual
    /// M_src F^T − F^T M_dst there.
    pub witness: Option<(usize, Matrix)>,
}

/// Whether f (dst_dim × src_dim, columns are images) intertwines the
/// coactions.
pub fn comodule_hom_check(f: &Matrix, src: &CoactionMatrixSet, dst: &CoactionMatrixSet) -> Result<HomCheck, FrtError> {
    if src.component != dst.component {
        return Err(FrtError::BasisMismatch("source and target live in different components".into()));
    }
    if f.rows() != dst.dim || f.cols() != src.dim {
        return Err(FrtError::BasisMismatch(format!(
            "map is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            dst.dim,
            src.dim
        )));
    }
    let ft = f.transpose();
    for (k, (ms, md)) in src.matrices.iter().zip(&dst.matrices).enumerate() {
        let res = &(ms * &ft) - &(&ft * md);
        if !res.is_zero() {
            return Ok(HomCheck { pass: false, witness: Some((k, res)) });
        }
    }
    Ok(HomCheck { pass: true, witness: None })
}

/// A basis of all comodule maps src → dst.
pub fn hom_space(src: &CoactionMatrixSet, dst: &CoactionMatrixSet) -> Result<Vec<Matrix>, FrtError> {
    if src.component != dst.component {
        return Err(FrtError::BasisMismatch("source and target live in different components".into()));
    }
    let (m, n) = (dst.dim, src.dim);
    // unknown F_{a j} at position a*n + j; equation (M_s F^T − F^T M_d)_{i c}
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for (ms, md) in src.matrices.iter().zip(&dst.matrices) {
        for i in 0..n {
            for c in 0..m {
                let mut row = vec![Scalar::zero(); m * n];
                for j in 0..n {
                    row[c * n + j] += ms.get(i, j);
                }
                for a in 0..m {
                    row[a * n + i] -= md.get(a, c);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    let kernel = if eqs.is_empty() {
        Subspace::full(m * n)
    } else {
        Matrix::from_rows(eqs)?.kernel()
    };
    Ok(kernel.basis().iter().map(|v| Matrix::from_fn(m, n, |a, j| v[a * n + j].clone())).collect())
}
