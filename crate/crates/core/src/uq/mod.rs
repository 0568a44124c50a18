//! U_q(ŝl2) as free words in its eight generator letters, with the
//! coproduct, counit and antipode, the evaluation modules V_a(r), and the
//! pairing against ŜL_q(2) monomials.
//!
//! Words are never normalized: everything that is checked about them goes
//! through a representation, where the defining relations hold or fail on
//! their own.

mod pairing;
mod rep;

pub use pairing::{
    det_q, letter_matrix, pairing, pairing_element, pairing_symbolic, pairing_well_defined, slate_rho,
    PairingFailure, WellDefinedReport,
};
pub use rep::{
    check_uq_relations, element_matrix, eval_rep, printed_serre_residuals, tensor_rep, EvalRep, LetterMatrices, RelationCheck,
    RelationReport,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    K0,
    K0Inv,
    K1,
    K1Inv,
    E0,
    E1,
    F0,
    F1,
}

impl Letter {
    pub const ALL: [Letter; 8] =
        [Letter::K0, Letter::K0Inv, Letter::K1, Letter::K1Inv, Letter::E0, Letter::E1, Letter::F0, Letter::F1];

    pub fn name(self) -> &'static str {
        match self {
            Letter::K0 => "K0",
            Letter::K0Inv => "K0^-1",
            Letter::K1 => "K1",
            Letter::K1Inv => "K1^-1",
            Letter::E0 => "e0",
            Letter::E1 => "e1",
            Letter::F0 => "f0",
            Letter::F1 => "f1",
        }
    }

    pub fn parse(s: &str) -> Option<Letter> {
        Letter::ALL.into_iter().find(|l| l.name() == s)
    }

    /// The index i of K_i, e_i, f_i.
    pub fn node(self) -> usize {
        match self {
            Letter::K0 | Letter::K0Inv | Letter::E0 | Letter::F0 => 0,
            _ => 1,
        }
    }

    fn k(node: usize) -> Letter {
        if node == 0 {
            Letter::K0
        } else {
            Letter::K1
        }
    }

    fn k_inv(node: usize) -> Letter {
        if node == 0 {
            Letter::K0Inv
        } else {
            Letter::K1Inv
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type UWord = Vec<Letter>;

pub fn word_name(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| l.name()).collect::<Vec<_>>().join(" ")
}

/// All words of length ≤ `max_len`; with `cap`, no letter occurs more than
/// `cap` times.
pub fn words_up_to(max_len: usize, cap: Option<usize>) -> Vec<UWord> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<UWord> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in Letter::ALL {
                if let Some(c) = cap {
                    if w.iter().filter(|&&m| m == l).count() >= c {
                        continue;
                    }
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A finite combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UElement {
    terms: BTreeMap<UWord, Scalar>,
}

impl UElement {
    pub fn zero() -> Self {
        UElement::default()
    }

    pub fn one() -> Self {
        UElement::word(&[])
    }

    pub fn word(w: &[Letter]) -> Self {
        let mut e = UElement::zero();
        e.add_term(w.to_vec(), &Scalar::one());
        e
    }

    pub fn letter(l: Letter) -> Self {
        UElement::word(&[l])
    }

    pub fn add_term(&mut self, w: UWord, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UWord, &Scalar)> {
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

    pub fn scale(&self, c: &Scalar) -> UElement {
        let mut out = UElement::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &UElement) -> UElement {
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_term(w.clone(), v);
        }
        out
    }

    pub fn mul(&self, other: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, &(x * y));
            }
        }
        out
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}) {}", word_name(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for UElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(String, String)> = self.terms.iter().map(|(w, c)| (c.to_string(), word_name(w))).collect();
        v.serialize(s)
    }
}

/// A combination of tensors u_1 ⊗ … ⊗ u_n of words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    legs: usize,
    terms: BTreeMap<Vec<UWord>, Scalar>,
}

impl TensorElement {
    pub fn zero(legs: usize) -> Self {
        TensorElement { legs, terms: BTreeMap::new() }
    }

    /// 1 ⊗ … ⊗ 1.
    pub fn unit(legs: usize) -> Self {
        let mut t = TensorElement::zero(legs);
        t.add_term(vec![Vec::new(); legs], &Scalar::one());
        t
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn add_term(&mut self, w: Vec<UWord>, c: &Scalar) {
        assert_eq!(w.len(), self.legs, "tensor term with the wrong number of legs");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<UWord>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Legwise product.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.legs, other.legs);
        let mut out = TensorElement::zero(self.legs);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let w = a
                    .iter()
                    .zip(b)
                    .map(|(p, s)| {
                        let mut v = p.clone();
                        v.extend_from_slice(s);
                        v
                    })
                    .collect();
                out.add_term(w, &(x * y));
            }
        }
        out
    }

    /// Applies Δ to leg `leg`, producing legs + 1 legs.
    pub fn coproduct_at(&self, leg: usize) -> TensorElement {
        assert!(leg < self.legs);
        let mut out = TensorElement::zero(self.legs + 1);
        for (w, c) in &self.terms {
            let split = coproduct(&UElement::word(&w[leg]), 2);
            for (pair, d) in split.terms() {
                let mut v = w[..leg].to_vec();
                v.extend(pair.iter().cloned());
                v.extend(w[leg + 1..].iter().cloned());
                out.add_term(v, &(c * d));
            }
        }
        out
    }
}

/// Δ^{legs−1} of a single letter, written out.
fn letter_coproduct(l: Letter, legs: usize) -> TensorElement {
    let mut t = TensorElement::zero(legs);
    match l {
        Letter::K0 | Letter::K0Inv | Letter::K1 | Letter::K1Inv => {
            t.add_term(vec![vec![l]; legs], &Scalar::one());
        }
        Letter::E0 | Letter::E1 => {
            // Σ_k 1 ⊗ … ⊗ e ⊗ K ⊗ … ⊗ K
            let k = Letter::k(l.node());
            for pos in 0..legs {
                let w = (0..legs)
                    .map(|m| match m.cmp(&pos) {
                        std::cmp::Ordering::Less => Vec::new(),
                        std::cmp::Ordering::Equal => vec![l],
                        std::cmp::Ordering::Greater => vec![k],
                    })
                    .collect();
                t.add_term(w, &Scalar::one());
            }
        }
        Letter::F0 | Letter::F1 => {
            // Σ_k K⁻¹ ⊗ … ⊗ K⁻¹ ⊗ f ⊗ 1 ⊗ … ⊗ 1
            let ki = Letter::k_inv(l.node());
            for pos in 0..legs {
                let w = (0..legs)
                    .map(|m| match m.cmp(&pos) {
                        std::cmp::Ordering::Less => vec![ki],
                        std::cmp::Ordering::Equal => vec![l],
                        std::cmp::Ordering::Greater => Vec::new(),
                    })
                    .collect();
                t.add_term(w, &Scalar::one());
            }
        }
    }
    t
}

/// Δ^{legs−1}(u), extended multiplicatively from the generators.
pub fn coproduct(u: &UElement, legs: usize) -> TensorElement {
    assert!(legs >= 1, "at least one leg");
    let mut out = TensorElement::zero(legs);
    for (w, c) in u.terms() {
        let mut acc = TensorElement::unit(legs);
        for &l in w {
            acc = acc.mul(&letter_coproduct(l, legs));
        }
        for (tw, d) in acc.terms() {
            out.add_term(tw.clone(), &(c * d));
        }
    }
    out
}

pub fn counit(u: &UElement) -> Scalar {
    u.terms()
        .filter(|(w, _)| w.iter().all(|l| matches!(l, Letter::K0 | Letter::K0Inv | Letter::K1 | Letter::K1Inv)))
        .map(|(_, c)| c.clone())
        .sum()
}

fn letter_antipode(l: Letter) -> UElement {
    let m1 = -Scalar::one();
    match l {
        Letter::K0 => UElement::letter(Letter::K0Inv),
        Letter::K0Inv => UElement::letter(Letter::K0),
        Letter::K1 => UElement::letter(Letter::K1Inv),
        Letter::K1Inv => UElement::letter(Letter::K1),
        Letter::E0 | Letter::E1 => UElement::word(&[l, Letter::k_inv(l.node())]).scale(&m1),
        Letter::F0 | Letter::F1 => UElement::word(&[Letter::k(l.node()), l]).scale(&m1),
    }
}

/// S, extended anti-multiplicatively.
pub fn antipode(u: &UElement) -> UElement {
    let mut out = UElement::zero();
    for (w, c) in u.terms() {
        let mut acc = UElement::one();
        for &l in w.iter().rev() {
            acc = acc.mul(&letter_antipode(l));
        }
        out = out.add(&acc.scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_of_e_on_three_legs() {
        let d = coproduct(&UElement::letter(Letter::E1), 3);
        let mut want = TensorElement::zero(3);
        let (e, k) = (Letter::E1, Letter::K1);
        want.add_term(vec![vec![], vec![], vec![e]], &Scalar::one());
        want.add_term(vec![vec![], vec![e], vec![k]], &Scalar::one());
        want.add_term(vec![vec![e], vec![k], vec![k]], &Scalar::one());
        assert_eq!(d, want);
    }

    #[test]
    fn counit_and_antipode_on_generators() {
        assert!(counit(&UElement::letter(Letter::E0)).is_zero());
        assert!(counit(&UElement::letter(Letter::K1)).is_one());
        assert_eq!(antipode(&UElement::letter(Letter::K1)), UElement::letter(Letter::K1Inv));
        assert_eq!(antipode(&antipode(&UElement::letter(Letter::K1))), UElement::letter(Letter::K1));
        let s = antipode(&UElement::word(&[Letter::E1, Letter::F0]));
        // S(e1 f0) = S(f0) S(e1) = (K0 f0)(e1 K1^-1)
        assert_eq!(s, UElement::word(&[Letter::K0, Letter::F0, Letter::E1, Letter::K1Inv]));
    }

    #[test]
    fn capped_word_count() {
        assert_eq!(words_up_to(2, None).len(), 1 + 8 + 64);
        assert_eq!(words_up_to(3, Some(2)).len(), 1 + 8 + 64 + 512 - 8);
    }
}
