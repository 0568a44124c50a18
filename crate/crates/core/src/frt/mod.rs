//! Parametrized FRT algebras at finitely many parameter points.
//!
//! The algebra is generated by t_ij(x) for x in a finite slate and is cut out
//! by the quadratic relations
//!
//!   Σ_{k,l} R^{ab}_{kl}(z) t_ik(x) t_jl(y) = Σ_{k,l} R^{lk}_{ij}(z) t_kb(y) t_la(x)
//!
//! for every ordered pair (x, y) of slate points, with z = x⁻¹∘y (see
//! [`SpectralFamily::ratio`]). Here R^{kl}_{ij} is the
//! matrix entry in row (k, l) and column (i, j) of the internal basis order.
//! Each multidegree (a multiset of slate points) is handled separately by
//! exact row reduction.

mod comodule;
mod component;
mod commutation;
mod relations;

pub use comodule::{
    coaction_matrices, comodule_hom_check, hom_space, subcomodule_solve, CoactionMatrixSet, ComponentId,
    HomCheck, TensorComodule,
};
pub use component::{GradedComponent, DEFAULT_DEGREE_CAP};
pub use commutation::{detq_expressions, verify_commutation_relations, CommutationLine, CommutationReport};
pub use relations::{generate_relations, pair_relation, Relation, RelationSet};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{LinalgError, Matrix};
use crate::rmatrix::{RMatrixError, SpectralFamily};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrtError {
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("span is not closed under the coaction: {0}")]
    NotClosed(String),
    #[error("cannot compose slate points: {0}")]
    Composition(#[from] RMatrixError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Δ(e) with Δ(t_ij(x)) = Σ_k t_ik(x) ⊗ t_kj(x), as (left, right) word pairs.
pub fn coproduct_terms(e: &Element) -> BTreeMap<(Word, Word), Scalar> {
    let mut out: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
    for (w, c) in e.terms() {
        let mut partial: Vec<(Word, Word)> = vec![(Vec::new(), Vec::new())];
        for g in w {
            let mut next = Vec::with_capacity(partial.len() * 2);
            for (l, r) in &partial {
                for k in 1..=2u8 {
                    let (mut l2, mut r2) = (l.clone(), r.clone());
                    l2.push(t(g.i, k, g.point));
                    r2.push(t(k, g.j, g.point));
                    next.push((l2, r2));
                }
            }
            partial = next;
        }
        for key in partial {
            *out.entry(key).or_insert_with(Scalar::zero) += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The generator t_ij at slate point `point`; i, j ∈ {1, 2}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GenSymbol {
    pub i: u8,
    pub j: u8,
    pub point: usize,
}

impl GenSymbol {
    pub fn new(i: u8, j: u8, point: usize) -> Self {
        assert!((1..=2).contains(&i) && (1..=2).contains(&j), "generator indices are 1 or 2");
        GenSymbol { i, j, point }
    }
}

impl fmt::Debug for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}{}(p{})", self.i, self.j, self.point)
    }
}

pub type Word = Vec<GenSymbol>;

pub fn t(i: u8, j: u8, point: usize) -> GenSymbol {
    GenSymbol::new(i, j, point)
}

pub fn word_string(w: &[GenSymbol]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|g| format!("{g:?}")).collect::<Vec<_>>().join(" ")
}

/// A finite linear combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::monomial(Vec::new(), Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(w, &c);
        e
    }

    pub fn word(w: &[GenSymbol]) -> Self {
        Element::monomial(w.to_vec(), Scalar::one())
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_term(w.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (w1, v1) in &self.terms {
            for (w2, v2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &(v1 * v2));
            }
        }
        out
    }

    /// Counit: ε(t_ij(x)) = δ_ij, extended multiplicatively.
    pub fn counit(&self) -> Scalar {
        self.terms
            .iter()
            .filter(|(w, _)| w.iter().all(|g| g.i == g.j))
            .map(|(_, v)| v.clone())
            .sum()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}) {}", word_string(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    coefficient: &'a Scalar,
    word: String,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&TermOut { coefficient: c, word: word_string(w) })?;
        }
        seq.end()
    }
}

/// Which generators are set to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Quotient {
    /// The algebra itself.
    Full,
    /// t21 struck.
    BPlus,
    /// t12 struck.
    BMinus,
    /// Both off-diagonal generators struck.
    Torus,
}

impl Quotient {
    pub fn allows(self, g: &GenSymbol) -> bool {
        match self {
            Quotient::Full => true,
            Quotient::BPlus => !(g.i == 2 && g.j == 1),
            Quotient::BMinus => !(g.i == 1 && g.j == 2),
            Quotient::Torus => g.i == g.j,
        }
    }

    pub fn allows_word(self, w: &[GenSymbol]) -> bool {
        w.iter().all(|g| self.allows(g))
    }
}

/// The R-matrices R(p_i⁻¹ ∘ p_j) for every ordered pair of slate points.
#[derive(Debug, Clone)]
pub struct RTable {
    labels: Vec<String>,
    r: Vec<Vec<Matrix>>,
}

impl RTable {
    pub fn new<F: SpectralFamily>(family: &F, points: &[F::Point]) -> Result<Self, FrtError> {
        if points.is_empty() {
            return Err(FrtError::BasisMismatch("empty slate".into()));
        }
        let mut r = Vec::with_capacity(points.len());
        for x in points {
            let mut row = Vec::with_capacity(points.len());
            for y in points {
                row.push(family.r_matrix(&family.ratio(x, y)?));
            }
            r.push(row);
        }
        Ok(RTable { labels: points.iter().map(|p| family.label(p)).collect(), r })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// R(x⁻¹∘y) for slate indices x, y.
    pub fn r(&self, x: usize, y: usize) -> &Matrix {
        &self.r[x][y]
    }
}

/// Row/column index of the pair (a, b), a, b ∈ {1, 2}, in the internal order.
pub(crate) fn pair_index(a: u8, b: u8) -> usize {
    (a as usize - 1) + 2 * (b as usize - 1)
}

/// The word t_{I,J}(p_1 … p_n) for multi-indices given as 0/1 digits,
/// first slot fastest, as in the tensor basis.
pub fn tensor_word(points: &[usize], row: usize, col: usize) -> Word {
    points
        .iter()
        .enumerate()
        .map(|(k, &p)| t(((row >> k) & 1) as u8 + 1, ((col >> k) & 1) as u8 + 1, p))
        .collect()
}
