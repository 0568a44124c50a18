use std::collections::BTreeMap;

use serde::Serialize;

use super::{coproduct, Letter, UElement};
use crate::linalg::Matrix;
use crate::scalar::{QSpec, Scalar, ScalarError};

/// One matrix per generator letter; columns are images of basis vectors.
pub type LetterMatrices = BTreeMap<Letter, Matrix>;

/// The evaluation module V_a(r) with basis v_0, …, v_r.
#[derive(Debug, Clone, Serialize)]
pub struct EvalRep {
    pub a: Scalar,
    pub r: usize,
    pub q: Scalar,
    pub matrices: LetterMatrices,
}

impl EvalRep {
    pub fn dim(&self) -> usize {
        self.r + 1
    }

    pub fn letter(&self, l: Letter) -> &Matrix {
        &self.matrices[&l]
    }
}

pub fn eval_rep(a: &Scalar, r: usize, q: &QSpec) -> Result<EvalRep, ScalarError> {
    let ai = a.inv()?;
    let qi = q.pow(-1);
    let d = r + 1;
    let ri = r as i64;
    let diag = |f: &dyn Fn(i64) -> Scalar| Matrix::from_fn(d, d, |i, j| if i == j { f(i as i64) } else { Scalar::zero() });
    let int = |n: i64| q.int(n.max(0) as u32);
    // raising: v_j -> c(j) v_{j+1}; lowering: v_j -> c(j) v_{j-1}
    let raise = |f: &dyn Fn(i64) -> Scalar| Matrix::from_fn(d, d, |i, j| if i == j + 1 { f(j as i64) } else { Scalar::zero() });
    let lower = |f: &dyn Fn(i64) -> Scalar| Matrix::from_fn(d, d, |i, j| if i + 1 == j { f(j as i64) } else { Scalar::zero() });
    let mut m = LetterMatrices::new();
    m.insert(Letter::K1, diag(&|j| q.pow(ri - 2 * j)));
    m.insert(Letter::K1Inv, diag(&|j| q.pow(2 * j - ri)));
    m.insert(Letter::K0, diag(&|j| q.pow(2 * j - ri)));
    m.insert(Letter::K0Inv, diag(&|j| q.pow(ri - 2 * j)));
    m.insert(Letter::E1, lower(&|j| int(ri - j + 1)));
    m.insert(Letter::F1, raise(&|j| int(j + 1)));
    m.insert(Letter::E0, raise(&|j| &(&qi * a) * &int(j + 1)));
    m.insert(Letter::F0, lower(&|j| &(q.q() * &ai) * &int(ri - j + 1)));
    Ok(EvalRep { a: a.clone(), r, q: q.q().clone(), matrices: m })
}

/// The action of `u` through a representation.
pub fn element_matrix(rep: &LetterMatrices, u: &UElement, dim: usize) -> Matrix {
    let mut out = Matrix::zeros(dim, dim);
    for (w, c) in u.terms() {
        let mut acc = Matrix::identity(dim);
        for l in w {
            acc = &acc * &rep[l];
        }
        out = &out + &acc.scale(c);
    }
    out
}

/// The action on A ⊗ B through Δ; the first factor is the fastest index.
pub fn tensor_rep(a: &LetterMatrices, b: &LetterMatrices) -> LetterMatrices {
    let da = a[&Letter::K1].rows();
    let db = b[&Letter::K1].rows();
    let mut out = LetterMatrices::new();
    for l in Letter::ALL {
        let d = coproduct(&UElement::letter(l), 2);
        let mut m = Matrix::zeros(da * db, da * db);
        for (legs, c) in d.terms() {
            let left = element_matrix(a, &UElement::word(&legs[0]), da);
            let right = element_matrix(b, &UElement::word(&legs[1]), db);
            m = &m + &Matrix::tensor(&left, &right).scale(c);
        }
        out.insert(l, m);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
    pub residual: Option<Matrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub pass: bool,
    /// K1 K0 = 1 (type 1); not a defining relation, reported separately.
    pub type_one: bool,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }
}

const CARTAN: [[i64; 2]; 2] = [[2, -2], [-2, 2]];

fn pick(node: usize, zero: Letter, one: Letter) -> Letter {
    if node == 0 {
        zero
    } else {
        one
    }
}

fn power(m: &Matrix, n: usize) -> Matrix {
    (0..n).fold(Matrix::identity(m.rows()), |acc, _| &acc * m)
}

/// Σ_s sign(s) C(3, s) x^{3−s} y x^s with the given coefficient rule.
fn serre_sum(x: &Matrix, y: &Matrix, coeff: &dyn Fn(usize) -> Scalar) -> Matrix {
    let mut acc = Matrix::zeros(x.rows(), x.cols());
    for s in 0..=3usize {
        let term = &(&power(x, 3 - s) * y) * &power(x, s);
        acc = &acc + &term.scale(&coeff(s));
    }
    acc
}

/// Every defining relation, as exact matrix identities.
pub fn check_uq_relations(rep: &LetterMatrices, q: &QSpec) -> RelationReport {
    let dim = rep[&Letter::K1].rows();
    let id = Matrix::identity(dim);
    let mut checks = Vec::new();
    let mut push = |name: String, residual: Matrix| {
        let pass = residual.is_zero();
        checks.push(RelationCheck { name, pass, residual: (!pass).then_some(residual) });
    };
    let k = |i| &rep[&pick(i, Letter::K0, Letter::K1)];
    let ki = |i| &rep[&pick(i, Letter::K0Inv, Letter::K1Inv)];
    let e = |i| &rep[&pick(i, Letter::E0, Letter::E1)];
    let f = |i| &rep[&pick(i, Letter::F0, Letter::F1)];
    for i in 0..2 {
        push(format!("K{i} K{i}^-1 = 1"), &(k(i) * ki(i)) - &id);
        push(format!("K{i}^-1 K{i} = 1"), &(ki(i) * k(i)) - &id);
    }
    push("K0 K1 = K1 K0".into(), &(k(0) * k(1)) - &(k(1) * k(0)));
    for i in 0..2 {
        for j in 0..2 {
            let c = q.pow(CARTAN[i][j]);
            let ci = q.pow(-CARTAN[i][j]);
            push(format!("K{i} e{j} K{i}^-1 = q^{} e{j}", CARTAN[i][j]), &(&(k(i) * e(j)) * ki(i)) - &e(j).scale(&c));
            push(format!("K{i} f{j} K{i}^-1 = q^{} f{j}", -CARTAN[i][j]), &(&(k(i) * f(j)) * ki(i)) - &f(j).scale(&ci));
        }
    }
    let qq = q.q() - &q.pow(-1);
    for i in 0..2 {
        for j in 0..2 {
            let comm = &(e(i) * f(j)) - &(f(j) * e(i));
            let rhs = if i == j { (k(i) - ki(i)).scale(&qq.inv().expect("q^2 != 1")) } else { Matrix::zeros(dim, dim) };
            push(format!("e{i} f{j} - f{j} e{i}"), &comm - &rhs);
        }
    }
    let coeff = |s: usize| {
        let b = q.binomial(3, s as i64).expect("small binomial");
        if s % 2 == 1 {
            -b
        } else {
            b
        }
    };
    for (i, j) in [(0, 1), (1, 0)] {
        push(format!("Serre e{i}^3 e{j}"), serre_sum(e(i), e(j), &coeff));
        push(format!("Serre f{i}^3 f{j}"), serre_sum(f(i), f(j), &coeff));
    }
    let type_one = (k(1) * k(0)) == id;
    RelationReport { pass: checks.iter().all(|c| c.pass), type_one, checks }
}

/// The Serre sums without alternating signs and with [n]/([m][n−m]) as the
/// binomial (undefined at m = 0, n; those terms are taken with coefficient
/// 1). Returned for comparison only.
pub fn printed_serre_residuals(rep: &LetterMatrices, q: &QSpec) -> Vec<(String, bool)> {
    let coeff = |s: usize| {
        if s == 0 || s == 3 {
            Scalar::one()
        } else {
            &q.int(3) / &(&q.int(s as u32) * &q.int(3 - s as u32))
        }
    };
    let mut out = Vec::new();
    for (i, j) in [(0usize, 1usize), (1, 0)] {
        let (ei, ej) = (&rep[&pick(i, Letter::E0, Letter::E1)], &rep[&pick(j, Letter::E0, Letter::E1)]);
        out.push((format!("e{i}^3 e{j}"), serre_sum(ei, ej, &coeff).is_zero()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_module_matches_table() {
        let q = QSpec::new("2".parse().unwrap()).unwrap();
        let a: Scalar = "3".parse().unwrap();
        let v = eval_rep(&a, 1, &q).unwrap();
        assert_eq!(v.letter(Letter::K1), &Matrix::diagonal(&[q.pow(1), q.pow(-1)]));
        // e0 v0 = q^-1 a v1, f0 v1 = q a^-1 v0
        assert_eq!(v.letter(Letter::E0).get(1, 0), &(&q.pow(-1) * &a));
        assert_eq!(v.letter(Letter::F0).get(0, 1), &(&q.pow(1) * &a.inv().unwrap()));
        let rep = check_uq_relations(&v.matrices, &q);
        assert!(rep.pass, "{:?}", rep.failed());
        assert!(rep.type_one);
    }

    #[test]
    fn perturbed_generator_is_caught() {
        let q = QSpec::new("3/2".parse().unwrap()).unwrap();
        let mut v = eval_rep(&"5".parse().unwrap(), 2, &q).unwrap();
        let e1 = v.matrices.get_mut(&Letter::E1).unwrap();
        let x = e1.get(0, 1) + &Scalar::one();
        e1.set(0, 1, x);
        let rep = check_uq_relations(&v.matrices, &q);
        assert!(!rep.pass);
        assert!(rep.failed().contains(&"e1 f1 - f1 e1"));
    }
}
