use affine_frt::scalar::{QSpec, Scalar};
use affine_frt::slqhat::{
    antipode_check, build_w, cg_dims, detq_grouplike_check, dual_action_check, dual_comodule_check, g_exponent, g_weight,
    k1k0_acts_trivially, predicted_ratios, reducibility_scan, reducibility_verdict, staggered_points, verify_w, Reducibility,
};
use proptest::prelude::*;

fn s(v: &str) -> Scalar {
    v.parse().unwrap()
}

fn q3() -> QSpec {
    QSpec::new(s("3")).unwrap()
}

/// Σ t^{inv} over arrangements of k twos among n slots.
fn gaussian_binomial(n: usize, k: usize, t: &Scalar) -> Scalar {
    if k == 0 || k == n {
        return Scalar::one();
    }
    if k > n {
        return Scalar::zero();
    }
    &gaussian_binomial(n - 1, k - 1, t) + &(&t.pow(k as i64).unwrap() * &gaussian_binomial(n - 1, k, t))
}

#[test]
fn weights_of_small_sequences() {
    let q = q3();
    assert_eq!(g_weight(&[2, 1], &q).unwrap(), s("3"));
    assert_eq!(g_weight(&[2, 2, 1], &q).unwrap(), s("9"));
    assert_eq!(g_weight(&[1, 2, 2], &q).unwrap(), s("1"));
    assert!(g_exponent(&[1, 3]).is_err());
}

#[test]
fn staggered_points_step_by_q_squared() {
    let q = q3();
    assert_eq!(staggered_points(&s("2"), 3, &q), [s("2/9"), s("2"), s("18")]);
    assert_eq!(staggered_points(&s("2"), 2, &q), [s("2/3"), s("6")]);
    assert!(staggered_points(&s("2"), 0, &q).is_empty());
}

#[test]
fn w_at_r_two() {
    let q = q3();
    let w = build_w(&s("5"), 2, &q).unwrap();
    assert_eq!(w.dim(), 3);
    // coordinates over w11, w21, w12, w22: u1 = w12 + q w21
    let (z, o) = (Scalar::zero(), Scalar::one());
    assert_eq!(w.basis[0], [o.clone(), z.clone(), z.clone(), z.clone()]);
    assert_eq!(w.basis[1], [z.clone(), s("3"), o.clone(), z.clone()]);
    assert_eq!(w.basis[2], [z.clone(), z, Scalar::zero(), o]);
}

#[test]
fn w_is_a_subcomodule_generated_by_its_top_vector() {
    let q = QSpec::new(s("2")).unwrap();
    for r in 0..=3 {
        let rep = verify_w(&build_w(&s("3/5"), r, &q).unwrap()).unwrap();
        assert!(rep.closed && rep.coefficients_match && rep.highest_weight_generated, "r = {r}: {rep:?}");
    }
}

#[test]
fn basis_weights_sum_to_gaussian_binomials() {
    let q = QSpec::new(s("2")).unwrap();
    for r in 1..=5 {
        let w = build_w(&s("1"), r, &q).unwrap();
        for (j, u) in w.basis.iter().enumerate() {
            let total: Scalar = u.iter().cloned().sum();
            assert_eq!(total, gaussian_binomial(r, j, q.q()), "r = {r}, j = {j}");
        }
    }
}

#[test]
fn dual_action_is_the_evaluation_module() {
    let q = QSpec::new(s("2")).unwrap();
    for r in 1..=3 {
        let rep = dual_action_check(&build_w(&s("7"), r, &q).unwrap()).unwrap();
        assert!(rep.pass, "r = {r}: {rep:?}");
        assert!(rep.eval_mismatches.is_empty());
        assert!(rep.k1k0_identity);
    }
}

#[test]
fn antipode_and_quantum_determinant() {
    let q = q3();
    let x = s("2/7");
    let a = antipode_check(&x, &q, 2).unwrap();
    assert!(a.pass, "{:?}", a.pairing_failures);
    assert!(a.engine_pass);
    assert_eq!(a.probes, 2 * 4 * (1 + 8 + 64));
    let d = detq_grouplike_check(&x, &q, 2).unwrap();
    assert!(d.pass && d.counit_pass && d.engine_pass, "{:?}", d.multiplicative_failures);
}

#[test]
fn type_one_on_a_slate() {
    assert!(k1k0_acts_trivially(&[s("2"), s("-3")], 3, &q3()));
}

#[test]
fn predicted_ratios_and_summands() {
    let q = q3();
    assert_eq!(predicted_ratios(1, 1, &q), [s("9"), s("1/9")]);
    assert_eq!(predicted_ratios(2, 1, &q), [s("27"), s("1/27")]);
    assert_eq!(predicted_ratios(2, 2, &q).len(), 4);
    assert_eq!(cg_dims(2, 1), [4, 2]);
    assert_eq!(cg_dims(2, 2), [5, 3, 1]);
}

#[test]
fn two_vector_modules_split_at_q_plus_minus_two() {
    let q = q3();
    for ratio in [s("9"), s("1/9")] {
        let (v, _) = reducibility_verdict(1, 1, &ratio, &q).unwrap();
        let Reducibility::Reducible { witness } = v else { panic!("{ratio}: {v:?}") };
        assert!([1, 3].contains(&witness.dim()));
    }
    let (v, span) = reducibility_verdict(1, 1, &s("5"), &q).unwrap();
    assert_eq!(v, Reducibility::Irreducible);
    assert_eq!(span, 16);
}

#[test]
fn scan_agrees_with_prediction() {
    let q = QSpec::new(s("2")).unwrap();
    let mut ratios = predicted_ratios(2, 2, &q);
    ratios.extend([s("3"), s("-2"), s("1"), s("64")]);
    let rep = reducibility_scan(2, 2, &ratios, &q).unwrap();
    assert!(rep.pass, "{:?}", rep.rows);
    // m = n = 2 predicts q^±4 and q^±2, so q⁶ is generic
    assert_eq!(ratios[..4], [s("16"), s("1/16"), s("4"), s("1/4")]);
    assert!(!rep.rows.iter().find(|r| r.ratio == s("64")).unwrap().predicted_reducible);
}

#[test]
fn dual_comodule_snakes() {
    let q = q3();
    let one = dual_comodule_check(&s("5"), 1, &q).unwrap();
    assert!(one.pass && one.snake_left && one.snake_right);
    assert_eq!(one.braiding_factors, Some(true));
    assert_eq!((one.ev_solutions, one.coev_solutions), (1, 1));
    let two = dual_comodule_check(&s("5"), 2, &q).unwrap();
    assert!(two.pass, "{two:?}");
    assert_eq!(two.braiding_factors, None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exponent_counts_inversions(seq in prop::collection::vec(1u8..3, 0..10)) {
        let brute = (0..seq.len())
            .flat_map(|m| (m + 1..seq.len()).map(move |k| (m, k)))
            .filter(|&(m, k)| seq[m] == 2 && seq[k] == 1)
            .count() as i64;
        prop_assert_eq!(g_exponent(&seq).unwrap(), brute);
    }

    #[test]
    fn reducibility_is_symmetric_in_the_factors(m in 1usize..3, n in 1usize..3, pick in 0usize..6) {
        let q = QSpec::new(s("2")).unwrap();
        let mut ratios = predicted_ratios(m, n, &q);
        ratios.extend([s("3"), s("5/7")]);
        let ratio = ratios[pick % ratios.len()].clone();
        let kind = |v: Reducibility| matches!(v, Reducibility::Reducible { .. });
        let a = kind(reducibility_verdict(m, n, &ratio, &q).unwrap().0);
        let b = kind(reducibility_verdict(n, m, &ratio, &q).unwrap().0);
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, predicted_ratios(m, n, &q).contains(&ratio));
    }
}
