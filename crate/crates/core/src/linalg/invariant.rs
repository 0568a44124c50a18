use std::collections::{HashSet, VecDeque};

use super::{mismatch, Echelon, LinalgError, Matrix, Subspace};
use crate::scalar::{FieldTag, Scalar};

fn check_ops(ops: &[Matrix], n: usize) -> Result<(), LinalgError> {
    for op in ops {
        if op.rows() != n || op.cols() != n {
            return Err(mismatch("operator", n, op.rows().max(op.cols())));
        }
    }
    Ok(())
}

pub fn is_invariant(sub: &Subspace, ops: &[Matrix]) -> bool {
    ops.iter().all(|op| sub.basis().iter().all(|v| sub.contains(&op.mul_vec(v))))
}

/// Smallest subspace containing `sub` and stable under every op.
pub fn closure_of(sub: &Subspace, ops: &[Matrix]) -> Result<Subspace, LinalgError> {
    let n = sub.ambient_dim();
    check_ops(ops, n)?;
    let mut ech = Echelon::new(n);
    let mut queue: VecDeque<Vec<Scalar>> = VecDeque::new();
    for v in sub.basis() {
        if ech.insert(v) {
            queue.push_back(v.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for op in ops {
            let w = op.mul_vec(&v);
            if ech.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    Ok(ech.to_subspace())
}

pub fn invariant_closure(v: &[Scalar], ops: &[Matrix]) -> Result<Subspace, LinalgError> {
    closure_of(&Subspace::from_vectors(v.len(), &[v.to_vec()]), ops)
}

/// A basis (as products of the ops) of the unital algebra they generate.
pub fn algebra_span(ops: &[Matrix], dim: usize) -> Result<Vec<Matrix>, LinalgError> {
    check_ops(ops, dim)?;
    let mut ech = Echelon::new(dim * dim);
    let id = Matrix::identity(dim);
    ech.insert(id.entries());
    let mut basis = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for op in ops {
            let p = &m * op;
            if ech.insert(p.entries()) {
                basis.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    Ok(basis)
}

pub fn algebra_span_dim(ops: &[Matrix], dim: usize) -> Result<usize, LinalgError> {
    Ok(algebra_span(ops, dim)?.len())
}

/// Every subspace invariant under `ops` and `diag_ops`, where the diagonal
/// operators split the coordinates into weight clusters.
///
/// An invariant subspace is the direct sum of its intersections with the
/// clusters, and each intersection is invariant under the compression of the
/// generated algebra to its cluster. The lattice is therefore spanned by the
/// closures of those local pieces.
pub fn weight_invariant_subspaces(
    diag_ops: &[Matrix],
    ops: &[Matrix],
    dim: usize,
) -> Result<Vec<Subspace>, LinalgError> {
    check_ops(diag_ops, dim)?;
    check_ops(ops, dim)?;
    for (k, d) in diag_ops.iter().enumerate() {
        for i in 0..dim {
            for j in 0..dim {
                if i != j && !d.get(i, j).is_zero() {
                    return Err(LinalgError::NotDiagonal { op: k, row: i, col: j });
                }
            }
        }
    }
    let mut clusters: Vec<(Vec<Scalar>, Vec<usize>)> = Vec::new();
    for i in 0..dim {
        let key: Vec<Scalar> = diag_ops.iter().map(|d| d.get(i, i).clone()).collect();
        match clusters.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(i),
            None => clusters.push((key, vec![i])),
        }
    }
    let all_ops: Vec<Matrix> = ops.iter().chain(diag_ops).cloned().collect();
    let algebra = algebra_span(&all_ops, dim)?;

    let mut generators: Vec<Subspace> = Vec::new();
    for (_, members) in &clusters {
        for piece in local_pieces(&algebra, members)? {
            let vecs: Vec<Vec<Scalar>> = piece
                .iter()
                .map(|local| {
                    let mut v = vec![Scalar::zero(); dim];
                    for (x, &i) in local.iter().zip(members) {
                        v[i] = x.clone();
                    }
                    v
                })
                .collect();
            let g = closure_of(&Subspace::from_vectors(dim, &vecs), &all_ops)?;
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
    }

    let mut seen: HashSet<Subspace> = HashSet::new();
    let zero = Subspace::zero(dim);
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(s) = queue.pop_front() {
        for g in &generators {
            let t = s.sum(g);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<Subspace> = seen.into_iter().collect();
    out.sort_by_key(Subspace::sort_key);
    Ok(out)
}

/// A proper nonzero invariant subspace, or `None` when the ops generate all
/// d × d matrices (absolutely irreducible).
///
/// Two certificates are tried: J·V for the radical J of the generated
/// algebra (the kernel of its trace form, characteristic 0), and an
/// eigenspace of a non-scalar central element with an eigenvalue in the
/// field. Anything else is reported as undetermined.
pub fn proper_invariant_subspace(ops: &[Matrix], dim: usize) -> Result<Option<Subspace>, LinalgError> {
    let algebra = algebra_span(ops, dim)?;
    if algebra.len() == dim * dim {
        return Ok(None);
    }
    let k = algebra.len();
    let gram = Matrix::from_fn(k, k, |i, j| (&algebra[i] * &algebra[j]).trace());
    let combine = |c: &[Scalar]| {
        let mut m = Matrix::zeros(dim, dim);
        for (ci, b) in c.iter().zip(&algebra) {
            m = &m + &b.scale(ci);
        }
        m
    };
    let radical = gram.kernel();
    if radical.dim() > 0 {
        let mut ech = Echelon::new(dim);
        for c in radical.basis() {
            let j = combine(c);
            for col in 0..dim {
                ech.insert(&j.col(col));
            }
        }
        return Ok(Some(ech.to_subspace()));
    }
    // semisimple: look for a non-scalar central element
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for op in ops {
        let comms: Vec<Matrix> = algebra.iter().map(|b| &(b * op) - &(op * b)).collect();
        for i in 0..dim {
            for j in 0..dim {
                eqs.push(comms.iter().map(|m| m.get(i, j).clone()).collect());
            }
        }
    }
    let center = Matrix::from_rows(eqs)?.kernel();
    let id = Matrix::identity(dim);
    for c in center.basis() {
        let z = combine(c);
        if z == id.scale(z.get(0, 0)) {
            continue;
        }
        for lambda in eigenvalue_candidates(&z) {
            let e = (&z - &id.scale(&lambda)).kernel();
            if e.dim() > 0 && e.dim() < dim {
                return Ok(Some(e));
            }
        }
    }
    Err(LinalgError::Undetermined { cluster: (0..dim).collect(), algebra_dim: k })
}

/// Roots in the field of the minimal polynomial of `z`, when it has degree
/// at most two; diagonal entries otherwise.
fn eigenvalue_candidates(z: &Matrix) -> Vec<Scalar> {
    let n = z.rows();
    let id = Matrix::identity(n);
    let z2 = z * z;
    // z² = s z + p·1 ?
    let sys = Matrix::from_fn(n * n, 3, |r, c| match c {
        0 => z.entries()[r].clone(),
        1 => id.entries()[r].clone(),
        _ => -z2.entries()[r].clone(),
    });
    let mut out: Vec<Scalar> = (0..n).map(|i| z.get(i, i).clone()).collect();
    if let Some(v) = sys.kernel().basis().iter().find(|v| !v[2].is_zero()) {
        let (s, p) = (&v[0] / &v[2], &v[1] / &v[2]);
        let disc = &(&s * &s) + &(&Scalar::from(4) * &p);
        if let Some(r) = disc.sqrt() {
            let two = Scalar::from(2);
            out.insert(0, &(&s - &r) / &two);
            out.insert(0, &(&s + &r) / &two);
        }
    }
    out
}

/// Dimensions of the factors of a composition series, bottom first.
pub fn composition_dims(ops: &[Matrix], dim: usize) -> Result<Vec<usize>, LinalgError> {
    check_ops(ops, dim)?;
    if dim <= 1 {
        return Ok(vec![dim].into_iter().filter(|&d| d > 0).collect());
    }
    let Some(sub) = proper_invariant_subspace(ops, dim)? else {
        return Ok(vec![dim]);
    };
    // basis adapted to sub: P = [sub | complement]
    let k = sub.dim();
    let mut ech = Echelon::new(dim);
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for v in sub.basis() {
        ech.insert(v);
        cols.push(v.clone());
    }
    for i in 0..dim {
        let mut e = vec![Scalar::zero(); dim];
        e[i] = Scalar::one();
        if ech.insert(&e) {
            cols.push(e);
        }
    }
    let p = Matrix::from_fn(dim, dim, |i, j| cols[j][i].clone());
    let pi = p.inverse()?;
    let inner: Vec<usize> = (0..k).collect();
    let outer: Vec<usize> = (k..dim).collect();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for op in ops {
        let m = &(&pi * op) * &p;
        lower.push(m.submatrix(&inner, &inner));
        upper.push(m.submatrix(&outer, &outer));
    }
    let mut out = composition_dims(&lower, k)?;
    out.extend(composition_dims(&upper, dim - k)?);
    Ok(out)
}

/// Nonzero invariant subspaces of the compressed algebra on one cluster,
/// each given by local basis vectors.
fn local_pieces(algebra: &[Matrix], members: &[usize]) -> Result<Vec<Vec<Vec<Scalar>>>, LinalgError> {
    let m = members.len();
    let whole: Vec<Vec<Scalar>> = Matrix::identity(m).to_rows();
    if m == 1 {
        return Ok(vec![whole]);
    }
    let compressed: Vec<Matrix> = algebra.iter().map(|a| a.submatrix(members, members)).collect();
    let local = algebra_span(&compressed, m)?;
    if local.len() == m * m {
        return Ok(vec![whole]);
    }
    if m > 2 {
        return Err(LinalgError::Undetermined { cluster: members.to_vec(), algebra_dim: local.len() });
    }
    if local.len() == 1 {
        return Err(LinalgError::InfiniteFamily { cluster: members.to_vec() });
    }
    let k = local.len();
    let gram = Matrix::from_fn(k, k, |i, j| (&local[i] * &local[j]).trace());
    let radical = gram.kernel();
    if let Some(c) = radical.basis().first() {
        let mut j = Matrix::zeros(m, m);
        for (ci, b) in c.iter().zip(&local) {
            j = &j + &b.scale(ci);
        }
        let line = j.image();
        return Ok(vec![line.basis().to_vec(), whole]);
    }
    // semisimple and commutative: two eigenlines of a non-scalar element
    let b = local
        .iter()
        .find(|b| !b.get(0, 1).is_zero() || !b.get(1, 0).is_zero() || b.get(0, 0) != b.get(1, 1))
        .expect("a two-dimensional algebra has a non-scalar element");
    let tr = b.trace();
    let det = b.det()?;
    let disc = &(&tr * &tr) - &(&Scalar::from(4) * &det);
    // stay inside the field the operators live in
    let field = if b.entries().iter().all(|x| x.field() == FieldTag::Rational) {
        FieldTag::Rational
    } else {
        FieldTag::GaussianRational
    };
    let Some(root) = disc.sqrt().filter(|r| field.admits(r)) else {
        return Err(LinalgError::NonSplit { cluster: members.to_vec() });
    };
    let two = Scalar::from(2);
    let mut pieces = Vec::new();
    for lambda in [(&tr + &root) / &two, (&tr - &root) / &two] {
        let shifted = b - &Matrix::identity(2).scale(&lambda);
        pieces.push(shifted.kernel().basis().to_vec());
    }
    pieces.push(whole);
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    #[test]
    fn closure_fixpoint_and_zero() {
        let shift = m(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let c = invariant_closure(&[1.into(), 0.into(), 0.into()], std::slice::from_ref(&shift)).unwrap();
        assert_eq!(c.dim(), 3);
        let z = invariant_closure(&[0.into(), 0.into(), 0.into()], std::slice::from_ref(&shift)).unwrap();
        assert_eq!(z.dim(), 0);
        let c2 = invariant_closure(&[0.into(), 1.into(), 0.into()], std::slice::from_ref(&shift)).unwrap();
        assert_eq!(c2.dim(), 2);
        assert_eq!(closure_of(&c2, &[shift]).unwrap(), c2);
    }

    #[test]
    fn algebra_dims() {
        assert_eq!(algebra_span_dim(&[Matrix::identity(3)], 3).unwrap(), 1);
        let e = m(&[&[0, 1], &[0, 0]]);
        let f = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(algebra_span_dim(std::slice::from_ref(&e), 2).unwrap(), 2);
        assert_eq!(algebra_span_dim(&[e, f], 2).unwrap(), 4);
    }

    #[test]
    fn coordinate_lattice_without_ops() {
        let d = Matrix::diagonal(&[1.into(), 2.into(), 3.into()]);
        let subs = weight_invariant_subspaces(&[d], &[], 3).unwrap();
        assert_eq!(subs.len(), 8);
    }

    #[test]
    fn rejects_non_diagonal_weights() {
        let d = m(&[&[1, 1], &[0, 1]]);
        assert!(matches!(
            weight_invariant_subspaces(&[d], &[], 2),
            Err(LinalgError::NotDiagonal { op: 0, row: 0, col: 1 })
        ));
    }

    #[test]
    fn cluster_with_nilpotent_part() {
        // one weight cluster; the algebra is k[N] with N nilpotent
        let n = m(&[&[0, 1], &[0, 0]]);
        let subs = weight_invariant_subspaces(&[Matrix::identity(2)], &[n], 2).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs[1], Subspace::from_vectors(2, &[vec![1.into(), 0.into()]]));
    }

    #[test]
    fn cluster_with_split_semisimple_part() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let subs = weight_invariant_subspaces(&[], &[a], 2).unwrap();
        assert_eq!(subs.iter().filter(|s| s.dim() == 1).count(), 2);
        let rot = m(&[&[0, -1], &[1, 0]]);
        assert!(matches!(weight_invariant_subspaces(&[], &[rot], 2), Err(LinalgError::NonSplit { .. })));
        assert!(matches!(weight_invariant_subspaces(&[], &[], 2), Err(LinalgError::InfiniteFamily { .. })));
    }
}
