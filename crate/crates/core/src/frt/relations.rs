use serde::Serialize;

use super::{pair_index, t, Element, RTable};

/// One quadratic relation, labelled by its point pair and indices (i, j, a, b).
#[derive(Debug, Clone, Serialize)]
pub struct Relation {
    pub x: usize,
    pub y: usize,
    pub indices: [u8; 4],
    pub element: Element,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationSet {
    pub labels: Vec<String>,
    pub relations: Vec<Relation>,
}

/// Σ_{k,l} R^{ab}_{kl} t_ik(x) t_jl(y) − Σ_{k,l} R^{lk}_{ij} t_kb(y) t_la(x)
/// with R = R(x⁻¹∘y).
pub fn pair_relation(table: &RTable, x: usize, y: usize, [i, j, a, b]: [u8; 4]) -> Element {
    let r = table.r(x, y);
    let mut e = Element::zero();
    for k in 1..=2u8 {
        for l in 1..=2u8 {
            let c = r.get(pair_index(a, b), pair_index(k, l));
            e.add_term(vec![t(i, k, x), t(j, l, y)], c);
            let c = r.get(pair_index(l, k), pair_index(i, j));
            e.add_term(vec![t(k, b, y), t(l, a, x)], &-c);
        }
    }
    e
}

/// All nonzero relations, sixteen per ordered pair of slate points.
pub fn generate_relations(table: &RTable) -> RelationSet {
    let mut relations = Vec::new();
    for x in 0..table.len() {
        for y in 0..table.len() {
            for idx in all_indices() {
                let element = pair_relation(table, x, y, idx);
                if !element.is_zero() {
                    relations.push(Relation { x, y, indices: idx, element });
                }
            }
        }
    }
    RelationSet { labels: table.labels().to_vec(), relations }
}

pub(crate) fn all_indices() -> impl Iterator<Item = [u8; 4]> {
    (0..16u8).map(|m| [1 + (m >> 3 & 1), 1 + (m >> 2 & 1), 1 + (m >> 1 & 1), 1 + (m & 1)])
}
