use affine_frt::aff::{braiding_det, gamma_generic};
use affine_frt::linalg::{flip, Matrix};
use affine_frt::rmatrix::{
    check_pybe_family, free_fermion_matrix, gamma_from_spectral, gamma_ice_element, r_affine_sl2, r_perk_schultz, AffineSl2, FreeFermion,
    GammaElement, PerkSchultz, SpectralFamily,
};
use affine_frt::scalar::{QSpec, Sampler, Scalar};
use proptest::prelude::*;

fn s(v: &str) -> Scalar {
    v.parse().unwrap()
}

fn point() -> impl Strategy<Value = Scalar> {
    (1i64..40, 1i64..15, any::<bool>()).prop_map(|(n, d, neg)| Scalar::from_ratio(if neg { -n } else { n }, d))
}

fn qspec() -> impl Strategy<Value = QSpec> {
    (2i64..9, 1i64..5).prop_filter_map("degenerate", |(n, d)| QSpec::new(Scalar::from_ratio(n, d)).ok())
}

fn gamma() -> impl Strategy<Value = GammaElement> {
    any::<u64>().prop_map(|seed| gamma_generic(&mut Sampler::new(seed)))
}

/// R₁₂ R₁₃ R₂₃ built from Kronecker products and one conjugation.
fn ybe_sides(a: &Matrix, ab: &Matrix, b: &Matrix) -> (Matrix, Matrix) {
    let i2 = Matrix::identity(2);
    let t23 = Matrix::tensor(&i2, &flip(2));
    let r12 = |m: &Matrix| Matrix::tensor(m, &i2);
    let r23 = |m: &Matrix| Matrix::tensor(&i2, m);
    let r13 = |m: &Matrix| &(&t23 * &r12(m)) * &t23;
    (&(&r12(a) * &r13(ab)) * &r23(b), &(&r23(b) * &r13(ab)) * &r12(a))
}

#[test]
fn affine_matrix_matches_the_display() {
    let q = QSpec::new(s("3")).unwrap();
    let x = s("5/2");
    let (qq, qi) = (s("3"), s("1/3"));
    let a = &qq - &(&x * &qi);
    let b = &Scalar::one() - &x;
    let c = &qq - &qi;
    let z = Scalar::zero;
    let shown = Matrix::from_rows(vec![
        vec![a.clone(), z(), z(), z()],
        vec![z(), b.clone(), &x * &c, z()],
        vec![z(), c.clone(), b, z()],
        vec![z(), z(), z(), a],
    ])
    .unwrap();
    assert_eq!(r_affine_sl2(&q, &x).unwrap().matrix, shown);
}

#[test]
fn rank_at_q_squared_and_its_inverse() {
    let q = QSpec::new(s("3")).unwrap();
    let r = r_affine_sl2(&q, &s("9")).unwrap().matrix;
    assert_eq!(r.rank(), 1);
    assert_eq!(r.kernel().dim(), 3);
    assert_eq!(r_affine_sl2(&q, &s("1/9")).unwrap().matrix.rank(), 3);
    assert_eq!(r_affine_sl2(&q, &s("2")).unwrap().matrix.rank(), 4);
}

#[test]
fn both_zero_braiding_has_the_stated_kernel() {
    // z with a1 = a2 = 0: b1 b2 = c1 c2
    let z = GammaElement::new(s("0"), s("0"), s("2"), s("3"), s("3"), s("2")).unwrap();
    let braid = &flip(2) * &free_fermion_matrix(&z);
    let k = braid.kernel();
    assert_eq!(k.dim(), 3);
    // v11, c1 v12 - b1 v21, v22 with v12 = w12 at index 2 and v21 at index 1
    let (z0, o) = (Scalar::zero(), Scalar::one());
    assert!(k.contains(&[o.clone(), z0.clone(), z0.clone(), z0.clone()]));
    assert!(k.contains(&[z0.clone(), -s("2"), s("3"), z0.clone()]));
    assert!(k.contains(&[z0.clone(), z0.clone(), z0, o]));
}

#[test]
fn flip_is_the_identity_of_gamma() {
    assert_eq!(free_fermion_matrix(&GammaElement::identity()), flip(2));
}

#[test]
fn ice_family_is_free_fermionic() {
    let mut sm = Sampler::new(17);
    for _ in 0..20 {
        let (t, z) = (sm.nonzero(), sm.nonzero());
        if (&Scalar::one() + &t).is_zero() {
            continue;
        }
        assert!(gamma_ice_element(&t, &z).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn affine_ybe_by_kronecker(q in qspec(), x in point(), y in point()) {
        let f = AffineSl2 { q: q.clone() };
        let (l, r) = ybe_sides(&f.r_matrix(&x), &f.r_matrix(&(&x * &y)), &f.r_matrix(&y));
        prop_assert_eq!(l, r);
        prop_assert!(check_pybe_family(&f, &[(x, y)]).pass);
    }

    #[test]
    fn perk_schultz_ybe_and_identity(q in qspec(), x in point(), y in point()) {
        let f = PerkSchultz { q: q.clone() };
        prop_assert!(check_pybe_family(&f, &[(x.clone(), y)]).pass);
        let (qq, qi) = (q.q().clone(), q.pow(-1));
        let lhs = &(&(&qq - &(&x * &qi)) * &(&(&x * &qq) - &qi)) + &(&(&Scalar::one() - &x) * &(&Scalar::one() - &x));
        let d = &qq - &qi;
        prop_assert_eq!(lhs, &x * &(&d * &d));
    }

    #[test]
    fn at_q_equal_i_the_affine_weights_are_free_fermionic(x in point(), minus in any::<bool>()) {
        let i = if minus { -Scalar::i() } else { Scalar::i() };
        let qi = i.inv().unwrap();
        let a = &i - &(&x * &qi);
        let b = &Scalar::one() - &x;
        let d = &i - &qi;
        prop_assert_eq!(&(&a * &a) + &(&b * &b), &x * &(&d * &d));
        let q = QSpec::new(i).unwrap();
        let r = r_affine_sl2(&q, &x).unwrap();
        if !a.is_zero() {
            prop_assert!(gamma_from_spectral(&r).is_ok());
        }
        prop_assert!(gamma_from_spectral(&r_perk_schultz(&q, &x).unwrap()).is_ok() || a.is_zero());
    }

    #[test]
    fn free_fermion_ybe_by_kronecker(x in gamma(), y in gamma()) {
        let (l, r) = ybe_sides(&free_fermion_matrix(&x), &free_fermion_matrix(&x.compose(&y)), &free_fermion_matrix(&y));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn gamma_group_axioms(x in gamma(), y in gamma(), w in gamma()) {
        let xy = x.compose(&y);
        // closure: the composite is again free fermionic
        prop_assert_eq!(&(xy.a1() * xy.a2()) + &(xy.b1() * xy.b2()), xy.c1() * xy.c2());
        prop_assert_eq!(xy.compose(&w), x.compose(&y.compose(&w)));
        let inv = x.inverse().unwrap();
        prop_assert_eq!(x.compose(&inv), GammaElement::identity());
        prop_assert_eq!(inv.compose(&x), GammaElement::identity());
    }

    #[test]
    fn braiding_determinant(x in gamma()) {
        let det = (&flip(2) * &free_fermion_matrix(&x)).det().unwrap();
        let a = x.a1() * x.a2();
        prop_assert_eq!(&det, &(&a * &a));
        let (d, want) = braiding_det(&x).unwrap();
        prop_assert_eq!(d, want);
    }
}

#[test]
fn inverse_from_the_two_by_two_block() {
    // the block realization is faithful, so inverting the element is
    // inverting its matrix
    let mut sm = Sampler::new(5);
    for _ in 0..100 {
        let x = gamma_generic(&mut sm);
        assert_eq!(x.inverse().unwrap().block_matrix(), x.block_matrix().inverse().unwrap());
        assert_eq!(GammaElement::identity().block_matrix(), Matrix::identity(4));
    }
}

#[test]
fn families_report_their_failures() {
    let f = FreeFermion;
    let x = gamma_generic(&mut Sampler::new(1));
    let mut m = f.r_matrix(&x);
    m.set(0, 0, &m.get(0, 0).clone() + &Scalar::one());
    let (l, r) = ybe_sides(&m, &f.r_matrix(&x.compose(&x)), &f.r_matrix(&x));
    assert_ne!(l, r);
}
