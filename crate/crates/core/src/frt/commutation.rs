//! The commutation relations of ŜL_q(2) on the slate (x, q²x), where R_q
//! has rank one, and the four expressions for det_q(qx).

use serde::Serialize;

use super::{t, Element, FrtError, GradedComponent, Quotient, RTable};
use crate::rmatrix::AffineSl2;
use crate::scalar::{QSpec, Scalar};

#[derive(Debug, Clone, Serialize)]
pub struct CommutationLine {
    pub label: String,
    /// lhs − rhs as printed.
    pub element: Element,
    pub in_ideal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutationReport {
    pub q: Scalar,
    pub x: Scalar,
    pub component_dim: usize,
    pub relation_rank: usize,
    pub lines: Vec<CommutationLine>,
    /// Ideal elements supported on the words of the fourth line together
    /// with t21(x)t22(q²x).
    pub line4_derived: Vec<Element>,
    pub detq: Vec<Element>,
    pub detq_equal: bool,
}

impl CommutationReport {
    /// Every line except the fourth holds, and the determinants agree.
    pub fn pattern_holds(&self) -> bool {
        self.lines.iter().take(3).all(|l| l.in_ideal) && self.detq_equal
    }
}

fn binomial(c1: Scalar, w1: [(u8, u8, usize); 2], c2: Scalar, w2: [(u8, u8, usize); 2]) -> Element {
    let word = |w: [(u8, u8, usize); 2]| w.iter().map(|&(i, j, p)| t(i, j, p)).collect();
    let mut e = Element::monomial(word(w1), c1);
    e.add_term(word(w2), &c2);
    e
}

/// The four determinant expressions, indexed by slot 0 = x, 1 = q²x.
pub fn detq_expressions(q: &QSpec) -> [Element; 4] {
    let (q1, qi) = (q.q().clone(), q.pow(-1));
    let one = Scalar::one;
    [
        binomial(one(), [(2, 2, 0), (1, 1, 1)], -&q1, [(2, 1, 0), (1, 2, 1)]),
        binomial(one(), [(1, 1, 1), (2, 2, 0)], -&qi, [(2, 1, 1), (1, 2, 0)]),
        binomial(one(), [(2, 2, 1), (1, 1, 0)], -&q1, [(1, 2, 1), (2, 1, 0)]),
        binomial(one(), [(1, 1, 0), (2, 2, 1)], -&qi, [(1, 2, 0), (2, 1, 1)]),
    ]
}

pub fn verify_commutation_relations(q: &QSpec, x: &Scalar) -> Result<CommutationReport, FrtError> {
    let fam = AffineSl2 { q: q.clone() };
    let x2 = x * &q.pow(2);
    let table = RTable::new(&fam, &[x.clone(), x2])?;
    let gc = GradedComponent::build(&table, &[0, 1], Quotient::Full)?;
    let mq = -q.q();
    let printed = [
        ("t12(x)t11(q²x) = q t11(x)t12(q²x)", binomial(Scalar::one(), [(1, 2, 0), (1, 1, 1)], mq.clone(), [(1, 1, 0), (1, 2, 1)])),
        ("t21(q²x)t11(x) = q t11(q²x)t21(x)", binomial(Scalar::one(), [(2, 1, 1), (1, 1, 0)], mq.clone(), [(1, 1, 1), (2, 1, 0)])),
        ("t22(q²x)t12(x) = q t12(q²x)t22(x)", binomial(Scalar::one(), [(2, 2, 1), (1, 2, 0)], mq.clone(), [(1, 2, 1), (2, 2, 0)])),
        ("t22(x)t21(q²x) = q t22(x)t22(q²x)", binomial(Scalar::one(), [(2, 2, 0), (2, 1, 1)], mq, [(2, 2, 0), (2, 2, 1)])),
    ];
    let mut lines = Vec::new();
    for (label, element) in printed {
        let in_ideal = gc.in_ideal(&element)?;
        lines.push(CommutationLine { label: label.to_string(), element, in_ideal });
    }
    let support = vec![
        vec![t(2, 2, 0), t(2, 1, 1)],
        vec![t(2, 1, 0), t(2, 2, 1)],
        vec![t(2, 2, 0), t(2, 2, 1)],
    ];
    let line4_derived = gc.ideal_elements_supported_on(&support);
    let detq = detq_expressions(q).to_vec();
    let nf0 = gc.normal_form(&detq[0])?;
    let mut detq_equal = true;
    for d in &detq[1..] {
        detq_equal &= gc.normal_form(d)? == nf0;
    }
    Ok(CommutationReport {
        q: q.q().clone(),
        x: x.clone(),
        component_dim: gc.dim(),
        relation_rank: gc.relation_rank(),
        lines,
        line4_derived,
        detq,
        detq_equal,
    })
}
