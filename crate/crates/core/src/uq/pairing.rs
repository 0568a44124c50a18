use std::collections::HashMap;

use serde::Serialize;

use super::{coproduct, counit, word_name, words_up_to, Letter, UElement, UWord};
use crate::frt::{generate_relations, t, Element, FrtError, GenSymbol, RTable};
use crate::linalg::Matrix;
use crate::rmatrix::AffineSl2;
use crate::scalar::{QSpec, Scalar};

/// ⟨l, t_ij(x)⟩ as a 2×2 matrix in (i, j).
pub fn letter_matrix(l: Letter, x: &Scalar, q: &QSpec) -> Matrix {
    let (z, o) = (Scalar::zero, Scalar::one);
    let (qp, qm) = (q.pow(1), q.pow(-1));
    let rows = match l {
        Letter::K1 => vec![vec![qp, z()], vec![z(), qm]],
        Letter::K1Inv => vec![vec![qm, z()], vec![z(), qp]],
        Letter::K0 => vec![vec![qm, z()], vec![z(), qp]],
        Letter::K0Inv => vec![vec![qp, z()], vec![z(), qm]],
        Letter::E1 => vec![vec![z(), o()], vec![z(), z()]],
        Letter::E0 => vec![vec![z(), z()], vec![&qm * x, z()]],
        Letter::F1 => vec![vec![z(), z()], vec![o(), z()]],
        Letter::F0 => vec![vec![z(), &qp * &x.inv().expect("spectral points are nonzero")], vec![z(), z()]],
    };
    Matrix::from_rows(rows).expect("2x2 literal")
}

fn leg_matrix(w: &[Letter], x: &Scalar, q: &QSpec) -> Matrix {
    w.iter().fold(Matrix::identity(2), |acc, &l| &acc * &letter_matrix(l, x, q))
}

/// The image of a letter on the tensor of 2-dim pairing matrices at the
/// given points, through Δ^{n−1}.
fn letter_rho(l: Letter, points: &[Scalar], q: &QSpec) -> Matrix {
    let n = points.len();
    let d = coproduct(&UElement::letter(l), n);
    let mut m = Matrix::zeros(1 << n, 1 << n);
    for (legs, c) in d.terms() {
        let mut acc = leg_matrix(&legs[0], &points[0], q);
        for k in 1..n {
            acc = Matrix::tensor(&acc, &leg_matrix(&legs[k], &points[k], q));
        }
        m = &m + &acc.scale(c);
    }
    m
}

/// ρ(u): entry (I, J) is ⟨u, t_{i₁j₁}(p₁)…t_{iₙjₙ}(pₙ)⟩, first slot fastest.
pub fn slate_rho(u: &[Letter], points: &[Scalar], q: &QSpec) -> Matrix {
    u.iter().fold(Matrix::identity(1 << points.len()), |acc, &l| &acc * &letter_rho(l, points, q))
}

fn multi_index(mono: &[GenSymbol]) -> (usize, usize) {
    mono.iter().enumerate().fold((0, 0), |(i, j), (k, g)| {
        (i + ((g.i as usize - 1) << k), j + ((g.j as usize - 1) << k))
    })
}

/// ⟨u, mono⟩ with generator points looked up in `points`.
pub fn pairing(u: &UElement, mono: &[GenSymbol], points: &[Scalar], q: &QSpec) -> Scalar {
    if mono.is_empty() {
        return counit(u);
    }
    let pts: Vec<Scalar> = mono.iter().map(|g| points[g.point].clone()).collect();
    let (i, j) = multi_index(mono);
    u.terms().map(|(w, c)| c * slate_rho(w, &pts, q).get(i, j)).sum()
}

pub fn pairing_element(u: &UElement, e: &Element, points: &[Scalar], q: &QSpec) -> Scalar {
    e.terms().map(|(w, c)| c * &pairing(u, w, points, q)).sum()
}

/// The same pairing computed from the expanded coproduct, leg by leg.
pub fn pairing_symbolic(u: &UElement, mono: &[GenSymbol], points: &[Scalar], q: &QSpec) -> Scalar {
    if mono.is_empty() {
        return counit(u);
    }
    let d = coproduct(u, mono.len());
    d.terms()
        .map(|(legs, c)| {
            legs.iter().zip(mono).fold(c.clone(), |acc, (w, g)| {
                let m = leg_matrix(w, &points[g.point], q);
                &acc * m.get(g.i as usize - 1, g.j as usize - 1)
            })
        })
        .sum()
}

/// det_q(x) = t11(q⁻¹x) t22(qx) − q⁻¹ t12(q⁻¹x) t21(qx), with its two points.
pub fn det_q(x: &Scalar, q: &QSpec) -> (Element, Vec<Scalar>) {
    let mut e = Element::word(&[t(1, 1, 0), t(2, 2, 1)]);
    e.add_term(vec![t(1, 2, 0), t(2, 1, 1)], &-q.pow(-1));
    (e, vec![x * &q.pow(-1), x * &q.pow(1)])
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingFailure {
    pub word: String,
    pub target: String,
    pub value: Scalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct WellDefinedReport {
    pub max_degree: usize,
    pub letter_cap: Option<usize>,
    pub words: usize,
    pub relations: usize,
    pub pairings: usize,
    /// First few nonzero pairings with a relation (or det_q − 1).
    pub failures: Vec<PairingFailure>,
    pub failure_count: usize,
    pub pass: bool,
}

fn rho_table(words: &[UWord], points: &[Scalar], q: &QSpec) -> HashMap<UWord, Matrix> {
    let letters: HashMap<Letter, Matrix> = Letter::ALL.iter().map(|&l| (l, letter_rho(l, points, q))).collect();
    let mut table: HashMap<UWord, Matrix> = HashMap::new();
    for w in words {
        let m = match w.split_last() {
            None => Matrix::identity(1 << points.len()),
            Some((l, head)) => &table[head] * &letters[l],
        };
        table.insert(w.clone(), m);
    }
    table
}

/// ⟨u, t⟩ = 0 for every quadratic relation t over the slate and every word
/// u up to `max_degree` (letters capped at `cap` occurrences), and
/// ⟨u, det_q(x)⟩ = ε(u) at every slate point.
pub fn pairing_well_defined(
    points: &[Scalar],
    max_degree: usize,
    cap: Option<usize>,
    q: &QSpec,
) -> Result<WellDefinedReport, FrtError> {
    let fam = AffineSl2 { q: q.clone() };
    let table = RTable::new(&fam, points)?;
    let rels = generate_relations(&table);
    let words = words_up_to(max_degree, cap);
    let mut failures = Vec::new();
    let mut failure_count = 0;
    let mut pairings = 0;
    let mut record = |w: &UWord, target: String, value: Scalar| {
        if !value.is_zero() {
            failure_count += 1;
            if failures.len() < 10 {
                failures.push(PairingFailure { word: word_name(w), target, value });
            }
        }
    };
    let n = points.len();
    for x in 0..n {
        for y in 0..n {
            let xy = rho_table(&words, &[points[x].clone(), points[y].clone()], q);
            let yx = rho_table(&words, &[points[y].clone(), points[x].clone()], q);
            for rel in rels.relations.iter().filter(|r| r.x == x && r.y == y) {
                for w in &words {
                    pairings += 1;
                    let mut v = Scalar::zero();
                    for (mono, c) in rel.element.terms() {
                        let (i, j) = multi_index(mono);
                        let m = if mono[0].point == x { &xy[w] } else { &yx[w] };
                        v += &(c * m.get(i, j));
                    }
                    record(w, format!("relation {:?} at ({x}, {y})", rel.indices), v);
                }
            }
        }
        let (_, pts) = det_q(&points[x], q);
        let dt = rho_table(&words, &pts, q);
        let qi = q.pow(-1);
        for w in &words {
            pairings += 1;
            let m = &dt[w];
            let v = &(m.get(2, 2) - &(&qi * m.get(2, 1))) - &counit(&UElement::word(w));
            record(w, format!("det_q at point {x}"), v);
        }
    }
    Ok(WellDefinedReport {
        max_degree,
        letter_cap: cap,
        words: words.len(),
        relations: rels.relations.len(),
        pairings,
        pass: failure_count == 0,
        failures,
        failure_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    #[test]
    fn generator_table() {
        let q = QSpec::new(s("2")).unwrap();
        let x = s("5/3");
        let e0 = UElement::letter(Letter::E0);
        assert_eq!(pairing(&e0, &[t(2, 1, 0)], std::slice::from_ref(&x), &q), &q.pow(-1) * &x);
        let f0 = UElement::letter(Letter::F0);
        assert_eq!(pairing(&f0, &[t(1, 2, 0)], std::slice::from_ref(&x), &q), &q.pow(1) * &x.inv().unwrap());
        assert!(pairing(&e0, &[], &[x], &q).is_zero());
    }

    #[test]
    fn sample_relation_from_the_proof() {
        let q = QSpec::new(s("3")).unwrap();
        let (x, y) = (s("2"), s("7/5"));
        let r = &y / &x;
        let qi = q.pow(-1);
        let mut tt = Element::monomial(vec![t(2, 1, 0), t(1, 1, 1)], q.q() - &(&r * &qi));
        tt.add_term(vec![t(1, 1, 1), t(2, 1, 0)], &-(Scalar::one() - &r));
        tt.add_term(vec![t(2, 1, 1), t(1, 1, 0)], &-(q.q() - &qi));
        let pts = [x, y];
        for l in Letter::ALL {
            assert!(pairing_element(&UElement::letter(l), &tt, &pts, &q).is_zero(), "{l}");
        }
    }
}
