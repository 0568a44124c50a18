use affine_frt::frt::{t, Element};
use affine_frt::linalg::Matrix;
use affine_frt::scalar::{QSpec, Scalar};
use affine_frt::uq::{
    antipode, check_uq_relations, coproduct, counit, det_q, element_matrix, eval_rep, letter_matrix, pairing,
    pairing_element, pairing_symbolic, pairing_well_defined, printed_serre_residuals, tensor_rep, Letter, UElement,
};
use proptest::prelude::*;

fn s(v: &str) -> Scalar {
    v.parse().unwrap()
}

fn q3() -> QSpec {
    QSpec::new(s("3")).unwrap()
}

fn word(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=max)
}

#[test]
fn generator_pairings() {
    let q = q3();
    let x = s("5/7");
    let e0 = letter_matrix(Letter::E0, &x, &q);
    assert_eq!(e0.get(1, 0), &(&x / &s("3")));
    let f0 = letter_matrix(Letter::F0, &x, &q);
    assert_eq!(f0.get(0, 1), &s("21/5"));
    assert_eq!(letter_matrix(Letter::K1, &x, &q), Matrix::from_rows(vec![vec![s("3"), s("0")], vec![s("0"), s("1/3")]]).unwrap());
    // K0 pairs like K1⁻¹ on the vector representation
    assert_eq!(letter_matrix(Letter::K0, &x, &q), letter_matrix(Letter::K1Inv, &x, &q));
    assert!(letter_matrix(Letter::E1, &x, &q).get(0, 1).is_one());
}

#[test]
fn grouplike_pairing_on_a_product() {
    let q = q3();
    let pts = [s("2"), s("5")];
    let k = UElement::letter(Letter::K1);
    // ⟨K1, t11(x) t22(y)⟩ = q · q⁻¹
    assert!(pairing(&k, &[t(1, 1, 0), t(2, 2, 1)], &pts, &q).is_one());
    assert!(pairing(&k, &[t(1, 2, 0), t(2, 2, 1)], &pts, &q).is_zero());
    assert_eq!(pairing(&k, &[t(1, 1, 0), t(1, 1, 1)], &pts, &q), s("9"));
    // empty monomial pairs through the counit
    assert!(pairing(&UElement::letter(Letter::E0), &[], &pts, &q).is_zero());
}

#[test]
fn e0_on_two_points_through_the_coproduct() {
    // Δ(e0) = 1 ⊗ e0 + e0 ⊗ K0, so ⟨e0, t21(x) t11(y)⟩ = q⁻¹x · ⟨K0, t11(y)⟩ = q⁻²x
    let q = q3();
    let (x, y) = (s("4"), s("7"));
    let v = pairing(&UElement::letter(Letter::E0), &[t(2, 1, 0), t(1, 1, 1)], &[x.clone(), y], &q);
    assert_eq!(v, &x / &s("9"));
}

#[test]
fn det_q_pairs_like_the_unit() {
    let q = q3();
    let (d, pts) = det_q(&s("2/3"), &q);
    for w in [vec![], vec![Letter::K1], vec![Letter::E0, Letter::F0], vec![Letter::E1, Letter::F1, Letter::K0]] {
        let u = UElement::word(&w);
        assert_eq!(pairing_element(&u, &d, &pts, &q), counit(&u), "{w:?}");
    }
}

#[test]
fn pairing_kills_relations_on_a_small_slate() {
    let q = QSpec::new(s("2")).unwrap();
    let rep = pairing_well_defined(&[s("3"), s("5/2")], 2, None, &q).unwrap();
    assert!(rep.pass, "{:?}", rep.failures);
    assert_eq!(rep.failure_count, 0);
    assert_eq!(rep.words, 1 + 8 + 64);
}

#[test]
fn a_non_relation_does_not_pair_to_zero() {
    let q = q3();
    let pts = [s("3"), s("5")];
    // Δ(e1) = 1 ⊗ e1 + e1 ⊗ K1 gives 1 on t11 t12 and q on t12 t11
    let e = Element::word(&[t(1, 1, 0), t(1, 2, 1)]).sub(&Element::word(&[t(1, 2, 1), t(1, 1, 0)]));
    let u = UElement::letter(Letter::E1);
    assert_eq!(pairing_element(&u, &e, &pts, &q), s("-2"));
}

#[test]
fn evaluation_module_at_r_one() {
    let q = q3();
    let a = s("5");
    let rep = eval_rep(&a, 1, &q).unwrap();
    assert_eq!(rep.dim(), 2);
    assert_eq!(rep.letter(Letter::K1), &Matrix::from_rows(vec![vec![s("3"), s("0")], vec![s("0"), s("1/3")]]).unwrap());
    // e0 v0 = q⁻¹a v1, f0 v1 = qa⁻¹ v0
    assert_eq!(rep.letter(Letter::E0).get(1, 0), &s("5/3"));
    assert_eq!(rep.letter(Letter::F0).get(0, 1), &s("3/5"));
    for l in Letter::ALL {
        assert_eq!(rep.letter(l), &letter_matrix(l, &a, &q), "{l}");
    }
}

#[test]
fn evaluation_modules_satisfy_every_relation() {
    let q = QSpec::new(s("2/5")).unwrap();
    for r in 1..=4 {
        let rep = eval_rep(&s("7/3"), r, &q).unwrap();
        let rel = check_uq_relations(&rep.matrices, &q);
        assert!(rel.pass, "r = {r}: {:?}", rel.failed());
        assert!(rel.type_one);
    }
}

#[test]
fn tensor_products_stay_representations() {
    let q = q3();
    let a = eval_rep(&s("2"), 1, &q).unwrap();
    let b = eval_rep(&s("-5"), 2, &q).unwrap();
    let rel = check_uq_relations(&tensor_rep(&a.matrices, &b.matrices), &q);
    assert!(rel.pass, "{:?}", rel.failed());
}

#[test]
fn relation_check_notices_a_broken_module() {
    let q = q3();
    let mut rep = eval_rep(&s("2"), 2, &q).unwrap().matrices;
    let e1 = rep[&Letter::E1].scale(&s("2"));
    rep.insert(Letter::E1, e1);
    let rel = check_uq_relations(&rep, &q);
    assert!(!rel.pass);
    assert!(rel.failed().contains(&"e1 f1 - f1 e1"));
}

#[test]
fn unsigned_serre_sums_are_not_relations() {
    let q = q3();
    let rep = eval_rep(&s("2"), 3, &q).unwrap();
    let printed = printed_serre_residuals(&rep.matrices, &q);
    assert_eq!(printed.len(), 2);
    assert!(printed.iter().any(|(_, ok)| !ok), "{printed:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coproduct_is_coassociative(w in word(3)) {
        let d = coproduct(&UElement::word(&w), 2);
        prop_assert_eq!(d.coproduct_at(0), d.coproduct_at(1));
        prop_assert_eq!(d.coproduct_at(0), coproduct(&UElement::word(&w), 3));
    }

    #[test]
    fn antipode_axiom_in_a_module(w in word(3)) {
        // m(S ⊗ id)Δ(u) = ε(u) acting on V_a(2)
        let q = q3();
        let rep = eval_rep(&s("3/2"), 2, &q).unwrap();
        let u = UElement::word(&w);
        let mut acc = UElement::zero();
        for (legs, c) in coproduct(&u, 2).terms() {
            acc = acc.add(&antipode(&UElement::word(&legs[0])).mul(&UElement::word(&legs[1])).scale(c));
        }
        let m = element_matrix(&rep.matrices, &acc, 3);
        prop_assert_eq!(m, Matrix::identity(3).scale(&counit(&u)));
    }

    #[test]
    fn matrix_and_symbolic_pairings_agree(w in word(3), idx in prop::collection::vec((1u8..3, 1u8..3, 0usize..2), 1..4)) {
        let q = QSpec::new(s("5/2")).unwrap();
        let pts = [s("2"), s("-3/7")];
        let mono: Vec<_> = idx.iter().map(|&(i, j, p)| t(i, j, p)).collect();
        let u = UElement::word(&w);
        prop_assert_eq!(pairing(&u, &mono, &pts, &q), pairing_symbolic(&u, &mono, &pts, &q));
    }

    #[test]
    fn pairing_is_multiplicative_in_the_algebra(w1 in word(2), w2 in word(2), i in 1u8..3, j in 1u8..3) {
        // ⟨uv, t⟩ = Σ ⟨u, t_ik⟩⟨v, t_kj⟩ on a single generator
        let q = q3();
        let pts = [s("4")];
        let (u, v) = (UElement::word(&w1), UElement::word(&w2));
        let lhs = pairing(&u.mul(&v), &[t(i, j, 0)], &pts, &q);
        let rhs: Scalar = (1..3u8).map(|k| &pairing(&u, &[t(i, k, 0)], &pts, &q) * &pairing(&v, &[t(k, j, 0)], &pts, &q)).sum();
        prop_assert_eq!(lhs, rhs);
    }
}
