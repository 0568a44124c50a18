//! The parameter group Γ, the R-matrix families and the parametrized
//! Yang–Baxter check.
//!
//! All matrices are stored in the internal order {w1⊗w1, w2⊗w1, w1⊗w2, w2⊗w2}
//! (see [`crate::linalg`]). The affine and Perk–Schultz families are written
//! down in that order. The free-fermionic R(x) and the ice weights are
//! tabulated in the lexicographic order {11, 12, 21, 22}; [`from_display`]
//! converts them. With that reading the Γ law below satisfies the YBE.
//! The parameter entering the FRT relations is fixed in one place,
//! [`SpectralFamily::ratio`].

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{embed_pair, flip, slot_permutation, Matrix};
use crate::scalar::{QSpec, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMatrixError {
    #[error("weights violate a1*a2 + b1*b2 = c1*c2 (residual {residual})")]
    NotFreeFermionic { residual: String },
    #[error("group element is singular")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Basis order a 4×4 matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisOrder {
    /// {w1⊗w1, w2⊗w1, w1⊗w2, w2⊗w2}
    Internal,
    /// {w1⊗w1, w1⊗w2, w2⊗w1, w2⊗w2}
    Lexicographic,
}

/// Converts a matrix written in `order` to the internal order.
pub fn from_display(m: &Matrix, order: BasisOrder) -> Matrix {
    match order {
        BasisOrder::Internal => m.clone(),
        BasisOrder::Lexicographic => {
            let p = slot_permutation(&[1, 0], 2);
            &(&p * m) * &p
        }
    }
}

/// Element of Γ: six-vertex weights with a1a2 + b1b2 = c1c2 and c1c2 != 0.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GammaWeights")]
pub struct GammaElement {
    a1: Scalar,
    a2: Scalar,
    b1: Scalar,
    b2: Scalar,
    c1: Scalar,
    c2: Scalar,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaWeights {
    a1: Scalar,
    a2: Scalar,
    b1: Scalar,
    b2: Scalar,
    c1: Scalar,
    c2: Scalar,
}

impl TryFrom<GammaWeights> for GammaElement {
    type Error = RMatrixError;

    fn try_from(w: GammaWeights) -> Result<Self, RMatrixError> {
        GammaElement::new(w.a1, w.a2, w.b1, w.b2, w.c1, w.c2)
    }
}

impl GammaElement {
    /// Validating constructor.
    pub fn new(a1: Scalar, a2: Scalar, b1: Scalar, b2: Scalar, c1: Scalar, c2: Scalar) -> Result<Self, RMatrixError> {
        let residual = &(&a1 * &a2) + &(&b1 * &b2) - &c1 * &c2;
        if !residual.is_zero() {
            return Err(RMatrixError::NotFreeFermionic { residual: residual.to_string() });
        }
        if c1.is_zero() || c2.is_zero() {
            return Err(RMatrixError::Singular);
        }
        Ok(GammaElement { a1, a2, b1, b2, c1, c2 })
    }

    pub fn identity() -> Self {
        let (o, z) = (Scalar::one(), Scalar::zero());
        GammaElement { a1: o.clone(), a2: o.clone(), b1: z.clone(), b2: z, c1: o.clone(), c2: o }
    }

    pub fn a1(&self) -> &Scalar {
        &self.a1
    }
    pub fn a2(&self) -> &Scalar {
        &self.a2
    }
    pub fn b1(&self) -> &Scalar {
        &self.b1
    }
    pub fn b2(&self) -> &Scalar {
        &self.b2
    }
    pub fn c1(&self) -> &Scalar {
        &self.c1
    }
    pub fn c2(&self) -> &Scalar {
        &self.c2
    }

    /// (a1, a2, b1, b2, c1, c2)
    pub fn weights(&self) -> [&Scalar; 6] {
        [&self.a1, &self.a2, &self.b1, &self.b2, &self.c1, &self.c2]
    }

    /// x ∘ y.
    pub fn compose(&self, y: &GammaElement) -> GammaElement {
        let x = self;
        GammaElement {
            a1: &x.a1 * &y.a1 - &x.b2 * &y.b1,
            a2: &x.a2 * &y.a2 - &x.b1 * &y.b2,
            b1: &x.b1 * &y.a1 + &x.a2 * &y.b1,
            b2: &x.a1 * &y.b2 + &x.b2 * &y.a2,
            c1: &x.c1 * &y.c1,
            c2: &x.c2 * &y.c2,
        }
    }

    pub fn inverse(&self) -> Result<GammaElement, RMatrixError> {
        let d = &(&self.a1 * &self.a2) + &(&self.b1 * &self.b2);
        let di = d.inv().map_err(|_| RMatrixError::Singular)?;
        Ok(GammaElement {
            a1: &self.a2 * &di,
            a2: &self.a1 * &di,
            b1: -(&self.b1 * &di),
            b2: -(&self.b2 * &di),
            c1: self.c1.inv().map_err(|_| RMatrixError::Singular)?,
            c2: self.c2.inv().map_err(|_| RMatrixError::Singular)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Result<GammaElement, RMatrixError> {
        let w = self.weights().map(|x| x * s);
        let [a1, a2, b1, b2, c1, c2] = w;
        GammaElement::new(a1, a2, b1, b2, c1, c2)
    }

    /// The 4×4 block matrix diag(c1, [[a1, b2], [-b1, a2]], c2) realizing
    /// Γ ⊂ GL(4); composition is matrix multiplication.
    pub fn block_matrix(&self) -> Matrix {
        let z = Scalar::zero;
        Matrix::from_rows(vec![
            vec![self.c1.clone(), z(), z(), z()],
            vec![z(), self.a1.clone(), self.b2.clone(), z()],
            vec![z(), -&self.b1, self.a2.clone(), z()],
            vec![z(), z(), z(), self.c2.clone()],
        ])
        .expect("4x4 literal")
    }
}

impl fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Γ(a1={}, a2={}, b1={}, b2={}, c1={}, c2={})",
            self.a1, self.a2, self.b1, self.b2, self.c1, self.c2
        )
    }
}

pub fn gamma_from_weights(a1: Scalar, a2: Scalar, b1: Scalar, b2: Scalar, c1: Scalar, c2: Scalar) -> Result<GammaElement, RMatrixError> {
    GammaElement::new(a1, a2, b1, b2, c1, c2)
}

pub fn gamma_mul(x: &GammaElement, y: &GammaElement) -> GammaElement {
    x.compose(y)
}

pub fn gamma_inv(x: &GammaElement) -> Result<GammaElement, RMatrixError> {
    x.inverse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    AffineSl2,
    FreeFermion,
    PerkSchultz,
    GammaIce,
    Flip,
}

impl FamilyKind {
    pub fn parse(name: &str) -> Option<FamilyKind> {
        match name.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "affinesl2" | "affine" | "slqhat" => Some(FamilyKind::AffineSl2),
            "freefermion" | "aff" | "ff" => Some(FamilyKind::FreeFermion),
            "perkschultz" | "ps" => Some(FamilyKind::PerkSchultz),
            "gammaice" | "ice" => Some(FamilyKind::GammaIce),
            "flip" => Some(FamilyKind::Flip),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RParams {
    Spectral { q: Scalar, x: Scalar },
    Gamma(GammaElement),
    Ice { t: Scalar, z: Scalar },
    None,
}

/// A named R-matrix together with the parameters it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    pub family: FamilyKind,
    pub params: RParams,
    pub matrix: Matrix,
}

impl Serialize for RMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RMatrix", 3)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.end()
    }
}

fn spectral_matrix(q: &Scalar, x: &Scalar, last: Scalar) -> Result<Matrix, ScalarError> {
    let qi = q.inv()?;
    let z = Scalar::zero;
    let a = q - &(x * &qi);
    let b = Scalar::one() - x;
    Ok(Matrix::from_rows(vec![
        vec![a, z(), z(), z()],
        vec![z(), b.clone(), x * &(q - &qi), z()],
        vec![z(), q - &qi, b, z()],
        vec![z(), z(), z(), last],
    ])
    .expect("4x4 literal"))
}

pub fn r_affine_sl2(q: &QSpec, x: &Scalar) -> Result<RMatrix, RMatrixError> {
    let qs = q.q();
    let last = qs - &(x * &qs.inv()?);
    Ok(RMatrix {
        family: FamilyKind::AffineSl2,
        params: RParams::Spectral { q: qs.clone(), x: x.clone() },
        matrix: spectral_matrix(qs, x, last)?,
    })
}

pub fn r_perk_schultz(q: &QSpec, x: &Scalar) -> Result<RMatrix, RMatrixError> {
    let qs = q.q();
    let last = &(x * qs) - &qs.inv()?;
    Ok(RMatrix {
        family: FamilyKind::PerkSchultz,
        params: RParams::Spectral { q: qs.clone(), x: x.clone() },
        matrix: spectral_matrix(qs, x, last)?,
    })
}

/// R(x) in the internal order.
pub fn free_fermion_matrix(x: &GammaElement) -> Matrix {
    ice_display(&x.a1, &x.a2, &x.b1, &x.b2, &x.c1, &x.c2)
}

fn ice_display(a1: &Scalar, a2: &Scalar, b1: &Scalar, b2: &Scalar, c1: &Scalar, c2: &Scalar) -> Matrix {
    let z = Scalar::zero;
    let shown = Matrix::from_rows(vec![
        vec![a1.clone(), z(), z(), z()],
        vec![z(), b1.clone(), c1.clone(), z()],
        vec![z(), c2.clone(), b2.clone(), z()],
        vec![z(), z(), z(), a2.clone()],
    ])
    .expect("4x4 literal");
    from_display(&shown, BasisOrder::Lexicographic)
}

pub fn r_free_fermion(x: &GammaElement) -> RMatrix {
    RMatrix { family: FamilyKind::FreeFermion, params: RParams::Gamma(x.clone()), matrix: free_fermion_matrix(x) }
}

/// Ice weights (a1; b1, c1; c2, b2; a2) = (1; t, (1+t)z; 1, z; z).
pub fn gamma_ice_weights(t: &Scalar, z: &Scalar) -> [Scalar; 6] {
    let one = Scalar::one();
    [one.clone(), z.clone(), t.clone(), z.clone(), &(&one + t) * z, one]
}

pub fn r_gamma_ice(t: &Scalar, z: &Scalar) -> RMatrix {
    let [a1, a2, b1, b2, c1, c2] = gamma_ice_weights(t, z);
    RMatrix {
        family: FamilyKind::GammaIce,
        params: RParams::Ice { t: t.clone(), z: z.clone() },
        matrix: ice_display(&a1, &a2, &b1, &b2, &c1, &c2),
    }
}

pub fn gamma_ice_element(t: &Scalar, z: &Scalar) -> Result<GammaElement, RMatrixError> {
    let [a1, a2, b1, b2, c1, c2] = gamma_ice_weights(t, z);
    GammaElement::new(a1, a2, b1, b2, c1, c2)
}

pub fn r_flip() -> RMatrix {
    RMatrix { family: FamilyKind::Flip, params: RParams::None, matrix: flip(2) }
}

/// Reads a spectral R-matrix (internal order) as six-vertex weights and
/// validates them as an element of Γ. For R_q(x) this succeeds exactly when
/// the weights are free fermionic, e.g. at q = ±i.
pub fn gamma_from_spectral(r: &RMatrix) -> Result<GammaElement, RMatrixError> {
    let m = &r.matrix;
    GammaElement::new(
        m.get(0, 0).clone(),
        m.get(3, 3).clone(),
        m.get(2, 2).clone(),
        m.get(1, 1).clone(),
        m.get(2, 1).clone(),
        m.get(1, 2).clone(),
    )
}

/// A parametrized family: the R-matrix map together with the group law on
/// its parameters.
pub trait SpectralFamily {
    type Point: Clone + PartialEq + fmt::Debug + Serialize + Send + Sync;

    fn kind(&self) -> FamilyKind;
    fn r_matrix(&self, z: &Self::Point) -> Matrix;
    fn compose(&self, a: &Self::Point, b: &Self::Point) -> Self::Point;
    fn inverse(&self, a: &Self::Point) -> Result<Self::Point, RMatrixError>;
    fn identity(&self) -> Self::Point;
    fn label(&self, p: &Self::Point) -> String;

    /// x⁻¹ ∘ y: the parameter at which the FRT relations between the
    /// generators at x and at y are read off. For a commutative law this is
    /// y·x⁻¹. For Γ the order matters: with the YBE in the form
    /// R12(α)R13(α∘β)R23(β), only x⁻¹∘y makes the relations on three points
    /// consistent (otherwise the degree-three components collapse).
    fn ratio(&self, x: &Self::Point, y: &Self::Point) -> Result<Self::Point, RMatrixError> {
        Ok(self.compose(&self.inverse(x)?, y))
    }

    /// τR(x⁻¹∘y): V_x ⊗ V_y → V_y ⊗ V_x.
    fn braiding(&self, x: &Self::Point, y: &Self::Point) -> Result<Matrix, RMatrixError> {
        Ok(&flip(2) * &self.r_matrix(&self.ratio(x, y)?))
    }
}

/// R_q(x) with the multiplicative group of nonzero scalars.
#[derive(Debug, Clone)]
pub struct AffineSl2 {
    pub q: QSpec,
}

/// Perk–Schultz solution, also over the multiplicative group.
#[derive(Debug, Clone)]
pub struct PerkSchultz {
    pub q: QSpec,
}

/// R(x) over Γ.
#[derive(Debug, Clone, Default)]
pub struct FreeFermion;

impl SpectralFamily for AffineSl2 {
    type Point = Scalar;

    fn kind(&self) -> FamilyKind {
        FamilyKind::AffineSl2
    }
    fn r_matrix(&self, z: &Scalar) -> Matrix {
        r_affine_sl2(&self.q, z).expect("q is nonzero").matrix
    }
    fn compose(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn inverse(&self, a: &Scalar) -> Result<Scalar, RMatrixError> {
        Ok(a.inv()?)
    }
    fn identity(&self) -> Scalar {
        Scalar::one()
    }
    fn label(&self, p: &Scalar) -> String {
        p.to_string()
    }
}

impl SpectralFamily for PerkSchultz {
    type Point = Scalar;

    fn kind(&self) -> FamilyKind {
        FamilyKind::PerkSchultz
    }
    fn r_matrix(&self, z: &Scalar) -> Matrix {
        r_perk_schultz(&self.q, z).expect("q is nonzero").matrix
    }
    fn compose(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn inverse(&self, a: &Scalar) -> Result<Scalar, RMatrixError> {
        Ok(a.inv()?)
    }
    fn identity(&self) -> Scalar {
        Scalar::one()
    }
    fn label(&self, p: &Scalar) -> String {
        p.to_string()
    }
}

impl SpectralFamily for FreeFermion {
    type Point = GammaElement;

    fn kind(&self) -> FamilyKind {
        FamilyKind::FreeFermion
    }
    fn r_matrix(&self, z: &GammaElement) -> Matrix {
        free_fermion_matrix(z)
    }
    fn compose(&self, a: &GammaElement, b: &GammaElement) -> GammaElement {
        a.compose(b)
    }
    fn inverse(&self, a: &GammaElement) -> Result<GammaElement, RMatrixError> {
        a.inverse()
    }
    fn identity(&self) -> GammaElement {
        GammaElement::identity()
    }
    fn label(&self, p: &GammaElement) -> String {
        format!("{p:?}")
    }
}

/// Outcome of the YBE check on one parameter pair.
#[derive(Debug, Clone, Serialize)]
pub struct PybeSample {
    pub index: usize,
    pub pass: bool,
    pub residual: Matrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct PybeReport {
    pub pass: bool,
    pub samples: Vec<PybeSample>,
}

/// R12(α) R13(α∘β) R23(β) − R23(β) R13(α∘β) R12(α) for every sample pair.
pub fn check_pybe<P>(
    provider: impl Fn(&P) -> Matrix,
    law: impl Fn(&P, &P) -> P,
    samples: &[(P, P)],
) -> PybeReport {
    let samples: Vec<PybeSample> = samples
        .iter()
        .enumerate()
        .map(|(index, (a, b))| {
            let residual = ybe_residual(&provider(a), &provider(&law(a, b)), &provider(b));
            PybeSample { index, pass: residual.is_zero(), residual }
        })
        .collect();
    PybeReport { pass: samples.iter().all(|s| s.pass), samples }
}

pub fn check_pybe_family<F: SpectralFamily>(family: &F, samples: &[(F::Point, F::Point)]) -> PybeReport {
    check_pybe(|p| family.r_matrix(p), |a, b| family.compose(a, b), samples)
}

pub fn ybe_residual(r_a: &Matrix, r_ab: &Matrix, r_b: &Matrix) -> Matrix {
    let e = |m: &Matrix, pos| embed_pair(m, pos, 3).expect("4x4 operator on three slots");
    let (r12, r13, r23) = (e(r_a, (1, 2)), e(r_ab, (1, 3)), e(r_b, (2, 3)));
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Sampler;

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    #[test]
    fn gamma_json_validates() {
        let g = GammaElement::new(s("2"), s("3"), s("1"), s("-1"), s("5"), s("1")).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: GammaElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"a1":"2","a2":"3","b1":"1","b2":"1","c1":"5","c2":"1"}"#;
        assert!(serde_json::from_str::<GammaElement>(bad).is_err());
    }

    #[test]
    fn identity_element_gives_flip() {
        assert_eq!(free_fermion_matrix(&GammaElement::identity()), flip(2));
        let q = QSpec::new(s("3")).unwrap();
        let r = r_affine_sl2(&q, &Scalar::one()).unwrap();
        assert_eq!(r.matrix, flip(2).scale(&s("8/3")));
    }

    #[test]
    fn block_matrix_realizes_the_law() {
        let x = GammaElement::new(s("2"), s("3"), s("1"), s("4"), s("5"), s("2")).unwrap();
        let y = GammaElement::new(s("1"), s("-1"), s("2"), s("3"), s("5"), s("1")).unwrap();
        assert_eq!(x.compose(&y).block_matrix(), &x.block_matrix() * &y.block_matrix());
        assert_eq!(x.compose(&x.inverse().unwrap()), GammaElement::identity());
    }

    #[test]
    fn validation() {
        assert!(matches!(
            GammaElement::new(s("1"), s("1"), s("1"), s("1"), s("1"), s("1")),
            Err(RMatrixError::NotFreeFermionic { .. })
        ));
        assert!(matches!(
            GammaElement::new(s("0"), s("0"), s("0"), s("0"), s("0"), s("1")),
            Err(RMatrixError::Singular)
        ));
    }

    #[test]
    fn rank_drops_at_q_squared() {
        let q = QSpec::new(s("3")).unwrap();
        assert_eq!(r_affine_sl2(&q, &s("9")).unwrap().matrix.rank(), 1);
        assert_eq!(r_affine_sl2(&q, &s("1/9")).unwrap().matrix.rank(), 3);
    }

    #[test]
    fn perturbed_entry_breaks_ybe() {
        let q = QSpec::new(s("2")).unwrap();
        let fam = AffineSl2 { q };
        let bad = |x: &Scalar| {
            let mut m = fam.r_matrix(x);
            let v = m.get(1, 2) + &Scalar::one();
            m.set(1, 2, v);
            m
        };
        let pairs = vec![(s("3"), s("5/7"))];
        assert!(check_pybe_family(&fam, &pairs).pass);
        assert!(!check_pybe(bad, |a, b| a * b, &pairs).pass);
    }

    #[test]
    fn free_fermion_ybe_needs_lexicographic_reading() {
        let mut sm = Sampler::new(3);
        let mut g = || loop {
            let (a1, a2, b1, c1, c2) = (sm.nonzero(), sm.nonzero(), sm.nonzero(), sm.nonzero(), sm.nonzero());
            let b2 = (&(&c1 * &c2) - &(&a1 * &a2)) / &b1;
            if let Ok(x) = GammaElement::new(a1, a2, b1, b2, c1, c2) {
                return x;
            }
        };
        let pairs: Vec<_> = (0..5).map(|_| (g(), g())).collect();
        assert!(check_pybe_family(&FreeFermion, &pairs).pass);
        let internal_reading = |x: &GammaElement| {
            let z = Scalar::zero;
            Matrix::from_rows(vec![
                vec![x.a1.clone(), z(), z(), z()],
                vec![z(), x.b1.clone(), x.c1.clone(), z()],
                vec![z(), x.c2.clone(), x.b2.clone(), z()],
                vec![z(), z(), z(), x.a2.clone()],
            ])
            .unwrap()
        };
        assert!(!check_pybe(internal_reading, |a, b| a.compose(b), &pairs).pass);
    }
}
