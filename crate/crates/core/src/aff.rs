//! The free-fermionic bialgebra A_ff over Γ: tensor products of standard
//! comodules, the comodules U_{x,y} and W_{x,y}, their braiding with V_w,
//! and the irreducibility criterion for V_{x_1} ⊗ … ⊗ V_{x_n}.
//!
//! Conventions: V_x ⊗ V_y uses the internal order {v11, v21, v12, v22}, and
//! the parameter governing τR: V_x ⊗ V_y → V_y ⊗ V_x is z = x⁻¹∘y. The
//! four cases below are decided by that z.
//!
//! A_ff has no antipode, so nothing here needs one.

use serde::Serialize;
use thiserror::Error;

use crate::frt::{
    coaction_matrices, comodule_hom_check, subcomodule_solve, t, CoactionMatrixSet, Element, FrtError,
    GradedComponent, Quotient, RTable, TensorComodule, Word,
};
use crate::linalg::{
    algebra_span_dim, composition_dims, embed_pair, proper_invariant_subspace, LinalgError, Matrix, Subspace,
};
use crate::rmatrix::{FreeFermion, GammaElement, RMatrixError, SpectralFamily};
use crate::scalar::{Sampler, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffError {
    #[error("expected case {expected:?}, found {found:?}")]
    WrongCase { expected: CaseLabel, found: CaseLabel },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Frt(#[from] FrtError),
    #[error(transparent)]
    Gamma(#[from] RMatrixError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    Invertible,
    BothZero,
    A1Zero,
    A2Zero,
}

impl CaseLabel {
    pub fn of(z: &GammaElement) -> CaseLabel {
        match (z.a1().is_zero(), z.a2().is_zero()) {
            (false, false) => CaseLabel::Invertible,
            (true, true) => CaseLabel::BothZero,
            (true, false) => CaseLabel::A1Zero,
            (false, true) => CaseLabel::A2Zero,
        }
    }
}

/// A random element of Γ with a1 = 0 and/or a2 = 0 as requested (b2 is
/// solved from the free-fermion condition).
pub fn gamma_with_pattern(sm: &mut Sampler, a1_zero: bool, a2_zero: bool) -> GammaElement {
    loop {
        let a1 = if a1_zero { Scalar::zero() } else { sm.nonzero() };
        let a2 = if a2_zero { Scalar::zero() } else { sm.nonzero() };
        let (b1, c1, c2) = (sm.nonzero(), sm.nonzero(), sm.nonzero());
        let b2 = &(&(&c1 * &c2) - &(&a1 * &a2)) / &b1;
        if let Ok(g) = GammaElement::new(a1, a2, b1, b2, c1, c2) {
            return g;
        }
    }
}

pub fn gamma_generic(sm: &mut Sampler) -> GammaElement {
    loop {
        let g = gamma_with_pattern(sm, false, false);
        if !g.b2().is_zero() {
            return g;
        }
    }
}

/// A random element of the requested case.
pub fn gamma_in_case(sm: &mut Sampler, case: CaseLabel) -> GammaElement {
    match case {
        CaseLabel::Invertible => gamma_generic(sm),
        CaseLabel::BothZero => gamma_with_pattern(sm, true, true),
        CaseLabel::A1Zero => gamma_with_pattern(sm, true, false),
        CaseLabel::A2Zero => gamma_with_pattern(sm, false, true),
    }
}

/// The pair (x, x∘z): its engine parameter is z.
pub fn pair_with_ratio(x: &GammaElement, z: &GammaElement) -> (GammaElement, GammaElement) {
    (x.clone(), x.compose(z))
}

pub fn ratio(x: &GammaElement, y: &GammaElement) -> Result<GammaElement, AffError> {
    Ok(FreeFermion.ratio(x, y)?)
}

fn unit(i: usize, n: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// c1(z) v1⊗v2 − b1(z) v2⊗v1 in internal coordinates.
pub fn line_vector(z: &GammaElement) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); 4];
    v[2] = z.c1().clone();
    v[1] = -z.b1();
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct Statement {
    pub claim: String,
    pub holds: bool,
}

fn stmt(claim: &str, holds: bool) -> Statement {
    Statement { claim: claim.to_string(), holds }
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub x: GammaElement,
    pub y: GammaElement,
    /// x⁻¹∘y, the parameter of τR: V_x ⊗ V_y → V_y ⊗ V_x.
    pub z: GammaElement,
    pub label: CaseLabel,
    /// The case of y∘x⁻¹, the parameter as written for this theorem.
    pub label_of_y_xinv: CaseLabel,
    /// Every subcomodule, by increasing dimension.
    pub lattice: Vec<Subspace>,
    pub dims: Vec<usize>,
    /// Dimensions of the composition factors along a maximal chain.
    pub composition_factors: Vec<usize>,
    pub kernel: Subspace,
    /// Image of τR(y, x): V_y ⊗ V_x → V_x ⊗ V_y.
    pub image_back: Subspace,
    pub statements: Vec<Statement>,
    pub pass: bool,
}

pub fn lattice_of(points: &[GammaElement]) -> Result<Vec<Subspace>, AffError> {
    let table = RTable::new(&FreeFermion, points)?;
    let idx: Vec<usize> = (0..points.len()).collect();
    let full = GradedComponent::build(&table, &idx, Quotient::Full)?;
    let torus = GradedComponent::build(&table, &idx, Quotient::Torus)?;
    let cm = TensorComodule::standard(&idx);
    let a = coaction_matrices(&cm, &full)?;
    let d = coaction_matrices(&cm, &torus)?;
    let mut lat = subcomodule_solve(&a, &d)?;
    lat.sort_by_key(|s| s.sort_key());
    Ok(lat)
}

/// The coaction operators of V_{x1} ⊗ … ⊗ V_{xn} in its top component.
pub fn coaction_operators(points: &[GammaElement]) -> Result<Vec<Matrix>, AffError> {
    let table = RTable::new(&FreeFermion, points)?;
    let idx: Vec<usize> = (0..points.len()).collect();
    let full = GradedComponent::build(&table, &idx, Quotient::Full)?;
    Ok(coaction_matrices(&TensorComodule::standard(&idx), &full)?.operators())
}

#[derive(Debug, Clone, Serialize)]
pub struct Structure {
    /// Dimensions of every subcomodule, when the lattice solver applies.
    pub lattice_dims: Option<Vec<usize>>,
    pub composition_factors: Vec<usize>,
    pub irreducible: bool,
    /// A proper subcomodule, when reducible.
    pub witness: Option<Subspace>,
}

/// The full lattice when the weight solver reaches it, otherwise a
/// composition series from radical and center certificates.
pub fn structure_of(points: &[GammaElement]) -> Result<Structure, AffError> {
    let size = 1usize << points.len();
    match lattice_of(points) {
        Ok(lat) => {
            let witness = lat.iter().find(|s| s.dim() > 0 && s.dim() < size).cloned();
            Ok(Structure {
                lattice_dims: Some(lat.iter().map(Subspace::dim).collect()),
                composition_factors: composition_factors(&lat),
                irreducible: lat.len() == 2,
                witness,
            })
        }
        Err(AffError::Frt(FrtError::Linalg(_))) => {
            let ops = coaction_operators(points)?;
            let witness = proper_invariant_subspace(&ops, size)?;
            Ok(Structure {
                lattice_dims: None,
                composition_factors: composition_dims(&ops, size)?,
                irreducible: witness.is_none(),
                witness,
            })
        }
        Err(e) => Err(e),
    }
}

/// Dimension steps along a maximal chain of a complete lattice.
pub fn composition_factors(lattice: &[Subspace]) -> Vec<usize> {
    let Some(top) = lattice.iter().map(Subspace::ambient_dim).next() else {
        return Vec::new();
    };
    let mut cur = Subspace::zero(top);
    let mut out = Vec::new();
    while cur.dim() < top {
        let next = lattice
            .iter()
            .filter(|s| s.dim() > cur.dim() && s.contains_subspace(&cur))
            .min_by_key(|s| s.dim())
            .cloned()
            .unwrap_or_else(|| Subspace::full(top));
        out.push(next.dim() - cur.dim());
        cur = next;
    }
    out
}

pub fn classify_vxvy(x: &GammaElement, y: &GammaElement) -> Result<Classification, AffError> {
    let z = ratio(x, y)?;
    let label = CaseLabel::of(&z);
    let label_of_y_xinv = CaseLabel::of(&y.compose(&x.inverse()?));
    let lattice = lattice_of(&[x.clone(), y.clone()])?;
    let dims: Vec<usize> = lattice.iter().map(Subspace::dim).collect();
    let kernel = FreeFermion.braiding(x, y)?.kernel();
    let image_back = FreeFermion.braiding(y, x)?.image();
    let span = |vs: Vec<Vec<Scalar>>| Subspace::from_vectors(4, &vs);
    let line = line_vector(&z);
    let (v11, v22) = (unit(0, 4), unit(3, 4));
    let has = |s: &Subspace| lattice.contains(s);
    let mut statements = Vec::new();
    match label {
        CaseLabel::Invertible => {
            statements.push(stmt("τR(z) is invertible", kernel.dim() == 0));
            statements.push(stmt("V_x ⊗ V_y is irreducible", dims == [0, 4]));
        }
        CaseLabel::BothZero => {
            let ker = span(vec![v11.clone(), line.clone(), v22.clone()]);
            let u = span(vec![line.clone()]);
            let w = span(vec![v11.clone(), v22.clone()]);
            statements.push(stmt("ker τR(z) = span{v11, c1 v12 − b1 v21, v22}", kernel == ker));
            statements.push(stmt("Im τR(z⁻¹) = span{c1 v12 − b1 v21}", image_back == u));
            statements.push(stmt("span{c1 v12 − b1 v21} is a subcomodule", has(&u)));
            statements.push(stmt("span{v11, v22} is a subcomodule (kernel splits as a direct sum)", has(&w)));
            statements.push(stmt("the subcomodules are 0, U, W, U ⊕ W, V_x ⊗ V_y", lattice.len() == 5 && has(&u) && has(&w) && has(&ker)));
        }
        CaseLabel::A1Zero | CaseLabel::A2Zero => {
            let v = if label == CaseLabel::A1Zero { v11 } else { v22 };
            let sub = span(vec![v, line.clone()]);
            statements.push(stmt("ker τR(z) = Im τR(z⁻¹)", kernel == image_back));
            statements.push(stmt("the only proper subcomodule is the stated 2-dim one", dims == [0, 2, 4] && has(&sub)));
            statements.push(stmt("it equals ker τR(z)", kernel == sub));
        }
    }
    let pass = statements.iter().all(|s| s.holds);
    let composition_factors = composition_factors(&lattice);
    Ok(Classification {
        x: x.clone(),
        y: y.clone(),
        z,
        label,
        label_of_y_xinv,
        lattice,
        dims,
        composition_factors,
        kernel,
        image_back,
        statements,
        pass,
    })
}

fn require_both_zero(z: &GammaElement) -> Result<(), AffError> {
    match CaseLabel::of(z) {
        CaseLabel::BothZero => Ok(()),
        found => Err(AffError::WrongCase { expected: CaseLabel::BothZero, found }),
    }
}

fn degree_two(x: &GammaElement, y: &GammaElement) -> Result<GradedComponent, AffError> {
    let table = RTable::new(&FreeFermion, &[x.clone(), y.clone()])?;
    Ok(GradedComponent::build(&table, &[0, 1], Quotient::Full)?)
}

fn word2(a: (u8, u8), b: (u8, u8)) -> Word {
    vec![t(a.0, a.1, 0), t(b.0, b.1, 1)]
}

#[derive(Debug, Clone, Serialize)]
pub struct WxyReport {
    /// span{v11, v22} modulo the line is closed under the coaction.
    pub closed_as_quotient: bool,
    /// span{v11, v22} itself is closed (a subcomodule).
    pub closed_as_sub: bool,
    /// The four coefficients t_{ij}(x) t_{ij}(y) as written.
    pub coaction_matches: bool,
    /// The coefficient matrices span all 2×2 matrices.
    pub irreducible: bool,
    pub diagonal_weights: [Element; 2],
}

/// W_{x,y}: the visible basis {v11, v22} of ker τR(z) / span{line}.
pub fn build_wxy(x: &GammaElement, y: &GammaElement) -> Result<WxyReport, AffError> {
    let z = ratio(x, y)?;
    require_both_zero(&z)?;
    let gc = degree_two(x, y)?;
    let reps = vec![unit(0, 4), unit(3, 4)];
    let labels = vec!["v11".to_string(), "v22".to_string()];
    let q = TensorComodule::subquotient(&[0, 1], vec![line_vector(&z)], reps.clone(), labels.clone())?;
    let (closed_as_quotient, coaction_matches, irreducible) = match coaction_matrices(&q, &gc) {
        Ok(co) => {
            let mut ok = true;
            let idx = [1u8, 2u8];
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    let want = Element::word(&word2((i, j), (i, j)));
                    ok &= gc.in_ideal(&co.coefficient(&gc, a, b).sub(&want))?;
                }
            }
            (true, ok, algebra_span_dim(&co.operators(), 2)? == 4)
        }
        Err(FrtError::NotClosed(_)) => (false, false, false),
        Err(e) => return Err(e.into()),
    };
    let closed_as_sub = match coaction_matrices(&TensorComodule::span(&[0, 1], reps, labels)?, &gc) {
        Ok(_) => true,
        Err(FrtError::NotClosed(_)) => false,
        Err(e) => return Err(e.into()),
    };
    let diagonal_weights = [Element::word(&word2((1, 1), (1, 1))), Element::word(&word2((2, 2), (2, 2)))];
    Ok(WxyReport { closed_as_quotient, closed_as_sub, coaction_matches, irreducible, diagonal_weights })
}

#[derive(Debug, Clone, Serialize)]
pub struct UxyReport {
    pub z: GammaElement,
    /// The coefficient of the coaction on the line, in normal form.
    pub coefficient: Element,
    /// λ with coefficient = t11(x)t22(y) + λ t21(x)t12(y).
    pub lambda: Option<Scalar>,
    /// b2(z)/c2(z), the written value of λ.
    pub printed_lambda: Scalar,
    pub printed_matches: bool,
    /// λ = −c2(z)/b2(z) (= −b1(z)/c1(z) on this locus).
    pub derived_matches: bool,
    pub counit_one: bool,
    /// The same comparison with z replaced by y∘x⁻¹.
    pub printed_matches_with_y_xinv: bool,
}

pub fn one_dim_coaction_coefficient(x: &GammaElement, y: &GammaElement) -> Result<UxyReport, AffError> {
    let z = ratio(x, y)?;
    require_both_zero(&z)?;
    let gc = degree_two(x, y)?;
    let cm = TensorComodule::span(&[0, 1], vec![line_vector(&z)], vec!["u".into()])?;
    let co = coaction_matrices(&cm, &gc)?;
    let coefficient = co.coefficient(&gc, 0, 0);
    let m1 = Element::word(&word2((1, 1), (2, 2)));
    let m2 = Element::word(&word2((2, 1), (1, 2)));
    let matches = |lam: &Scalar| -> Result<bool, AffError> {
        Ok(gc.in_ideal(&coefficient.sub(&m1.add(&m2.scale(lam))))?)
    };
    let n2 = gc.normal_form(&m2)?;
    let resid = gc.normal_form(&coefficient.sub(&m1))?;
    let lambda = n2
        .iter()
        .position(|c| !c.is_zero())
        .map(|k| &resid[k] / &n2[k])
        .filter(|lam| matches(lam).unwrap_or(false));
    let printed_lambda = z.b2() / z.c2();
    let printed_matches = matches(&printed_lambda)?;
    let derived_matches = matches(&-(z.c2() / z.b2()))?;
    let zp = y.compose(&x.inverse()?);
    let printed_matches_with_y_xinv = match zp.c2().is_zero() {
        true => false,
        false => matches(&(zp.b2() / zp.c2()))?,
    };
    let counit_one = coefficient.counit().is_one();
    Ok(UxyReport {
        z,
        coefficient,
        lambda,
        printed_lambda,
        printed_matches,
        derived_matches,
        counit_one,
        printed_matches_with_y_xinv,
    })
}

/// The written braiding W_{x,y} ⊗ V_w → V_w ⊗ W_{x,y} at parameters p (for
/// x) and r (for y), in the lexicographic orders (u1v1, u1v2, u2v1, u2v2)
/// and (v1u1, v1u2, v2u1, v2u2).
pub fn braiding_display(p: &GammaElement, r: &GammaElement) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    m.set(0, 0, p.a1() * r.a1());
    m.set(1, 2, p.b2() * r.b2());
    m.set(2, 1, p.b1() * r.b1());
    m.set(3, 3, p.a2() * r.a2());
    m
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidingReport {
    /// τR restricted to W_{x,y} ⊗ V_w, lexicographic display.
    pub restricted: Matrix,
    /// The display at (x∘w⁻¹, y∘w⁻¹).
    pub printed: Matrix,
    /// The display at (x⁻¹∘w, y⁻¹∘w).
    pub derived: Matrix,
    pub printed_equals_restricted: bool,
    pub derived_equals_restricted: bool,
    pub printed_is_hom: bool,
    pub derived_is_hom: bool,
    /// The braiding maps U_{x,y} ⊗ V_w into V_w ⊗ U_{x,y}.
    pub preserves_line: bool,
}

fn solve_coords(rows: &[Vec<Scalar>], v: &[Scalar]) -> Result<Vec<Scalar>, AffError> {
    let n = rows.len();
    let m = Matrix::from_fn(v.len(), n + 1, |i, j| if j < n { rows[j][i].clone() } else { -v[i].clone() });
    let ker = m.kernel();
    let sol = ker
        .basis()
        .iter()
        .find(|k| !k[n].is_zero())
        .ok_or_else(|| AffError::Unsupported("vector outside the span".into()))?;
    let s = sol[n].inv().map_err(|_| AffError::Unsupported("degenerate solve".into()))?;
    Ok(sol[..n].iter().map(|c| c * &s).collect())
}

pub fn braiding_uxy_vw(x: &GammaElement, y: &GammaElement, w: &GammaElement) -> Result<BraidingReport, AffError> {
    let z = ratio(x, y)?;
    require_both_zero(&z)?;
    let fam = FreeFermion;
    let comp = &embed_pair(&fam.braiding(x, w)?, (1, 2), 3)? * &embed_pair(&fam.braiding(y, w)?, (2, 3), 3)?;
    let line = line_vector(&z);
    // source on slots (x, y, w); target on slots (w, x, y)
    let src_vec = |pair: &[Scalar], k: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); 8];
        for (i, c) in pair.iter().enumerate() {
            v[i + 4 * k] = c.clone();
        }
        v
    };
    let dst_vec = |pair: &[Scalar], k: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); 8];
        for (i, c) in pair.iter().enumerate() {
            v[k + 2 * i] = c.clone();
        }
        v
    };
    let (u1, u2) = (unit(0, 4), unit(3, 4));
    let order = [(0usize, 0usize), (0, 1), (1, 0), (1, 1)];
    let pick = |a: usize| if a == 0 { &u1 } else { &u2 };
    let src_sub: Vec<Vec<Scalar>> = (0..2).map(|k| src_vec(&line, k)).collect();
    let src_reps: Vec<Vec<Scalar>> = order.iter().map(|&(a, k)| src_vec(pick(a), k)).collect();
    let dst_sub: Vec<Vec<Scalar>> = (0..2).map(|k| dst_vec(&line, k)).collect();
    let dst_reps: Vec<Vec<Scalar>> = order.iter().map(|&(k, a)| dst_vec(pick(a), k)).collect();
    let dst_all: Vec<Vec<Scalar>> = dst_sub.iter().chain(&dst_reps).cloned().collect();

    let mut restricted = Matrix::zeros(4, 4);
    for (col, v) in src_reps.iter().enumerate() {
        let c = solve_coords(&dst_all, &comp.mul_vec(v))?;
        for row in 0..4 {
            restricted.set(row, col, c[2 + row].clone());
        }
    }
    let dst_sub_space = Subspace::from_vectors(8, &dst_sub);
    let preserves_line = src_sub.iter().all(|v| dst_sub_space.contains(&comp.mul_vec(v)));

    let wi = w.inverse()?;
    let printed = braiding_display(&x.compose(&wi), &y.compose(&wi));
    let derived = braiding_display(&x.inverse()?.compose(w), &y.inverse()?.compose(w));

    let table = RTable::new(&fam, &[x.clone(), y.clone(), w.clone()])?;
    let gc = GradedComponent::build(&table, &[0, 1, 2], Quotient::Full)?;
    let labels = |p: &str| order.iter().map(|&(a, k)| format!("{p}{a}{k}")).collect::<Vec<_>>();
    let src = TensorComodule::subquotient(&[0, 1, 2], src_sub, src_reps, labels("s"))?;
    let dst = TensorComodule::subquotient(&[2, 0, 1], dst_sub, dst_reps, labels("d"))?;
    let (cs, cd): (CoactionMatrixSet, CoactionMatrixSet) = (coaction_matrices(&src, &gc)?, coaction_matrices(&dst, &gc)?);
    let printed_is_hom = comodule_hom_check(&printed, &cs, &cd)?.pass;
    let derived_is_hom = comodule_hom_check(&derived, &cs, &cd)?.pass;
    Ok(BraidingReport {
        printed_equals_restricted: printed == restricted,
        derived_equals_restricted: derived == restricted,
        restricted,
        printed,
        derived,
        printed_is_hom,
        derived_is_hom,
        preserves_line,
    })
}

/// det τR(z) and a1(z)² a2(z)².
pub fn braiding_det(z: &GammaElement) -> Result<(Scalar, Scalar), AffError> {
    let tr = FreeFermion.braiding(&GammaElement::identity(), z)?;
    let a = z.a1() * z.a2();
    Ok((tr.det()?, &a * &a))
}

#[derive(Debug, Clone, Serialize)]
pub struct PairInvertibility {
    pub i: usize,
    pub j: usize,
    pub case: CaseLabel,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrreducibilityReport {
    pub n: usize,
    pub pairs: Vec<PairInvertibility>,
    /// Every τR between two tensor slots is invertible.
    pub criterion_irreducible: bool,
    /// From the subcomodule structure of the tensor product (n ≤ 3).
    pub brute_irreducible: Option<bool>,
    pub lattice_dims: Option<Vec<usize>>,
    pub witness_dim: Option<usize>,
    pub agrees: Option<bool>,
}

pub fn tensor_irreducibility(points: &[GammaElement]) -> Result<IrreducibilityReport, AffError> {
    let n = points.len();
    if n == 0 || n > 8 {
        return Err(AffError::Unsupported(format!("{n} points (1 to 8 supported)")));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push(PairInvertibility { i, j, case: CaseLabel::of(&ratio(&points[i], &points[j])?) });
        }
    }
    let criterion_irreducible = pairs.iter().all(|p| p.case == CaseLabel::Invertible);
    let (brute_irreducible, lattice_dims, witness_dim) = if n <= 3 {
        let st = structure_of(points)?;
        (Some(st.irreducible), st.lattice_dims, st.witness.map(|w| w.dim()))
    } else {
        (None, None, None)
    };
    let agrees = brute_irreducible.map(|b| b == criterion_irreducible);
    Ok(IrreducibilityReport { n, pairs, criterion_irreducible, brute_irreducible, lattice_dims, witness_dim, agrees })
}

#[derive(Debug, Clone, Serialize)]
pub struct IndependenceReport {
    pub n: usize,
    pub diagonal_only: bool,
    pub family_size: usize,
    pub rank: usize,
    pub component_dim: usize,
    pub criterion_holds: bool,
    /// Full rank whenever the criterion holds.
    pub pass: bool,
}

/// Rank of t_{i1 j1}(x1)…t_{in jn}(xn) (diagonal ones in 𝒯 when
/// `diagonal_only`) in the degree-n component.
pub fn linear_independence_probe(points: &[GammaElement], diagonal_only: bool) -> Result<IndependenceReport, AffError> {
    let n = points.len();
    if n == 0 || n > 4 || (!diagonal_only && n > 3) {
        return Err(AffError::Unsupported(format!("{n} points")));
    }
    let table = RTable::new(&FreeFermion, points)?;
    let idx: Vec<usize> = (0..n).collect();
    let quotient = if diagonal_only { Quotient::Torus } else { Quotient::Full };
    let gc = GradedComponent::build(&table, &idx, quotient)?;
    let mut rows = Vec::new();
    let per_slot: usize = if diagonal_only { 2 } else { 4 };
    for code in 0..per_slot.pow(n as u32) {
        let mut c = code;
        let mut w = Vec::with_capacity(n);
        for (k, _) in idx.iter().enumerate() {
            let d = c % per_slot;
            c /= per_slot;
            let (i, j) = if diagonal_only { (d as u8 + 1, d as u8 + 1) } else { ((d & 1) as u8 + 1, (d >> 1) as u8 + 1) };
            w.push(t(i, j, k));
        }
        rows.push(gc.normal_form(&Element::word(&w))?);
    }
    let family_size = rows.len();
    let rank = if gc.dim() == 0 { 0 } else { Matrix::from_rows(rows)?.rank() };
    let mut criterion_holds = true;
    for i in 0..n {
        for j in i + 1..n {
            criterion_holds &= CaseLabel::of(&ratio(&points[i], &points[j])?) == CaseLabel::Invertible;
        }
    }
    let pass = !criterion_holds || rank == family_size;
    Ok(IndependenceReport { n, diagonal_only, family_size, rank, component_dim: gc.dim(), criterion_holds, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct SlateSample {
    pub n: usize,
    /// Cases of consecutive ratios x_k⁻¹∘x_{k+1}.
    pub cases: Vec<CaseLabel>,
    pub lattice_dims: Option<Vec<usize>>,
    /// `None` when neither certificate applied.
    pub composition_factors: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerOfTwoReport {
    pub samples: Vec<SlateSample>,
    /// Sorted multiset of all composition factor dimensions seen.
    pub factor_dims: Vec<usize>,
    pub non_power_of_two: Vec<usize>,
    pub undetermined: usize,
}

/// Composition factors of V_{x1} ⊗ … ⊗ V_{xn} over sampled slates, with
/// consecutive ratios drawn from every case. Exploratory.
pub fn power_of_two_probe(seed: u64, max_n: usize) -> Result<PowerOfTwoReport, AffError> {
    if !(2..=3).contains(&max_n) {
        return Err(AffError::Unsupported(format!("n = {max_n}")));
    }
    let cases = [CaseLabel::Invertible, CaseLabel::BothZero, CaseLabel::A1Zero, CaseLabel::A2Zero];
    let mut sm = Sampler::new(seed);
    let mut samples = Vec::new();
    for n in 2..=max_n {
        let combos: Vec<Vec<CaseLabel>> = if n == 2 {
            cases.iter().map(|&c| vec![c]).collect()
        } else {
            cases.iter().flat_map(|&a| cases.iter().map(move |&b| vec![a, b])).collect()
        };
        for combo in combos {
            let mut pts = vec![gamma_generic(&mut sm)];
            for &c in &combo {
                let z = gamma_in_case(&mut sm, c);
                let next = pts.last().expect("nonempty").compose(&z);
                pts.push(next);
            }
            match structure_of(&pts) {
                Ok(st) => samples.push(SlateSample {
                    n,
                    cases: combo,
                    lattice_dims: st.lattice_dims,
                    composition_factors: Some(st.composition_factors),
                }),
                Err(AffError::Linalg(_)) => {
                    samples.push(SlateSample { n, cases: combo, lattice_dims: None, composition_factors: None })
                }
                Err(e) => return Err(e),
            }
        }
    }
    let mut factor_dims: Vec<usize> = samples.iter().flat_map(|s| s.composition_factors.iter().flatten().copied()).collect();
    factor_dims.sort_unstable();
    let mut non_power_of_two: Vec<usize> = factor_dims.iter().copied().filter(|d| !d.is_power_of_two()).collect();
    non_power_of_two.dedup();
    let undetermined = samples.iter().filter(|s| s.composition_factors.is_none()).count();
    Ok(PowerOfTwoReport { samples, factor_dims, non_power_of_two, undetermined })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_labels() {
        let mut sm = Sampler::new(5);
        for c in [CaseLabel::Invertible, CaseLabel::BothZero, CaseLabel::A1Zero, CaseLabel::A2Zero] {
            assert_eq!(CaseLabel::of(&gamma_in_case(&mut sm, c)), c);
        }
    }

    #[test]
    fn composition_of_a_chain() {
        let e = |i: usize| unit(i, 3);
        let lat = vec![
            Subspace::zero(3),
            Subspace::from_vectors(3, &[e(0)]),
            Subspace::from_vectors(3, &[e(0), e(1)]),
            Subspace::full(3),
        ];
        assert_eq!(composition_factors(&lat), vec![1, 1, 1]);
        assert_eq!(composition_factors(&[Subspace::zero(4), Subspace::full(4)]), vec![4]);
    }
}
