use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use super::relations::all_indices;
use super::{pair_relation, t, word_string, Element, FrtError, Quotient, RTable, Word};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub const DEFAULT_DEGREE_CAP: usize = 4;

/// Relations never mix words whose letters carry different index content, so
/// the relation span splits into independent blocks of words.
#[derive(Debug, Clone)]
struct Block {
    cols: Vec<usize>,
    rows: Vec<(usize, Vec<Scalar>)>,
}

/// The part of an FRT algebra (or one of its quotients) spanned by words
/// using each point of a fixed multiset exactly once, in any order.
#[derive(Debug, Clone)]
pub struct GradedComponent {
    multiset: Vec<usize>,
    quotient: Quotient,
    orderings: Vec<Vec<usize>>,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    blocks: Vec<Block>,
    location: Vec<(usize, usize)>,
    basis: Vec<usize>,
    basis_pos: HashMap<usize, usize>,
    relation_rows: usize,
}

fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

impl GradedComponent {
    pub fn build(table: &RTable, multiset: &[usize], quotient: Quotient) -> Result<Self, FrtError> {
        GradedComponent::build_with_cap(table, multiset, quotient, DEFAULT_DEGREE_CAP)
    }

    pub fn build_with_cap(table: &RTable, multiset: &[usize], quotient: Quotient, cap: usize) -> Result<Self, FrtError> {
        let n = multiset.len();
        if n > cap {
            return Err(FrtError::DegreeTooLarge { degree: n, cap });
        }
        if let Some(&p) = multiset.iter().find(|&&p| p >= table.len()) {
            return Err(FrtError::BasisMismatch(format!("point index {p} outside a slate of {}", table.len())));
        }
        let mut ms = multiset.to_vec();
        ms.sort_unstable();
        let orderings = distinct_permutations(&ms);

        let mut words = Vec::new();
        let mut word_ordering = Vec::new();
        let mut index = HashMap::new();
        for (o, ord) in orderings.iter().enumerate() {
            for a in 0..4usize.pow(n as u32) {
                let w: Word = ord
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| {
                        let d = (a >> (2 * k)) & 3;
                        t((d & 1) as u8 + 1, (d >> 1) as u8 + 1, p)
                    })
                    .collect();
                if quotient.allows_word(&w) {
                    index.insert(w.clone(), words.len());
                    words.push(w);
                    word_ordering.push(o);
                }
            }
        }

        let mut rows: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        for ord in &orderings {
            for p in 0..n.saturating_sub(1) {
                let (x, y) = (ord[p], ord[p + 1]);
                for idx in all_indices() {
                    let rel = pair_relation(table, x, y, idx);
                    if rel.is_zero() {
                        continue;
                    }
                    for rest in 0..4usize.pow(n as u32 - 2) {
                        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                        for (w2, c) in rel.terms() {
                            let mut w = Vec::with_capacity(n);
                            let mut r = rest;
                            for (k, &pt) in ord.iter().enumerate() {
                                if k == p || k == p + 1 {
                                    w.push(w2[k - p]);
                                } else {
                                    let d = r & 3;
                                    r >>= 2;
                                    w.push(t((d & 1) as u8 + 1, (d >> 1) as u8 + 1, pt));
                                }
                            }
                            if !quotient.allows_word(&w) {
                                continue;
                            }
                            let id = index[&w];
                            let e = row.entry(id).or_insert_with(Scalar::zero);
                            *e += c;
                        }
                        row.retain(|_, v| !v.is_zero());
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
        }

        let mut parent: Vec<usize> = (0..words.len()).collect();
        for row in &rows {
            let mut it = row.keys();
            let first = *it.next().expect("rows are nonempty");
            for &k in it {
                let (a, b) = (find(&mut parent, first), find(&mut parent, k));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut block_of_root: HashMap<usize, usize> = HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for w in 0..words.len() {
            let r = find(&mut parent, w);
            let b = *block_of_root.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[b].push(w);
        }
        let mut location = vec![(0, 0); words.len()];
        for (b, cols) in members.iter_mut().enumerate() {
            // words in later orderings become pivots, so the surviving basis
            // favours words in sorted point order
            cols.sort_by_key(|&w| (Reverse(word_ordering[w]), w));
            for (l, &w) in cols.iter().enumerate() {
                location[w] = (b, l);
            }
        }
        let mut block_rows: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); members.len()];
        for row in &rows {
            let b = location[*row.keys().next().expect("nonempty")].0;
            let mut dense = vec![Scalar::zero(); members[b].len()];
            for (&w, c) in row {
                dense[location[w].1] = c.clone();
            }
            block_rows[b].push(dense);
        }
        let blocks: Vec<Block> = members
            .into_iter()
            .zip(block_rows)
            .map(|(cols, brows)| {
                if brows.is_empty() {
                    return Block { cols, rows: Vec::new() };
                }
                let r = Matrix::from_rows(brows).expect("rows share the block width").rref();
                let rows = (0..r.rank).map(|i| (r.pivots[i], r.matrix.row(i).to_vec())).collect();
                Block { cols, rows }
            })
            .collect();

        let mut basis: Vec<usize> = Vec::new();
        for b in &blocks {
            let pivots: Vec<usize> = b.rows.iter().map(|(p, _)| *p).collect();
            for (l, &w) in b.cols.iter().enumerate() {
                if !pivots.contains(&l) {
                    basis.push(w);
                }
            }
        }
        basis.sort_unstable();
        let basis_pos = basis.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        Ok(GradedComponent {
            multiset: ms,
            quotient,
            orderings,
            words,
            index,
            blocks,
            location,
            basis,
            basis_pos,
            relation_rows: rows.len(),
        })
    }

    pub fn degree(&self) -> usize {
        self.multiset.len()
    }

    pub fn multiset(&self) -> &[usize] {
        &self.multiset
    }

    pub fn quotient(&self) -> Quotient {
        self.quotient
    }

    pub fn orderings(&self) -> &[Vec<usize>] {
        &self.orderings
    }

    /// Dimension of the quotient in this multidegree.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.words.len()
    }

    pub fn ambient_words(&self) -> &[Word] {
        &self.words
    }

    /// Rank of the relation span.
    pub fn relation_rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rows.len()).sum()
    }

    pub fn relation_row_count(&self) -> usize {
        self.relation_rows
    }

    pub fn basis_word(&self, k: usize) -> &Word {
        &self.words[self.basis[k]]
    }

    pub fn basis_words(&self) -> Vec<Word> {
        self.basis.iter().map(|&w| self.words[w].clone()).collect()
    }

    /// Coordinates of `e` modulo the relations, in the basis of surviving
    /// words. Words containing struck generators count as zero.
    pub fn normal_form(&self, e: &Element) -> Result<Vec<Scalar>, FrtError> {
        let mut dense: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        for (w, c) in e.terms() {
            if !self.quotient.allows_word(w) {
                continue;
            }
            let Some(&id) = self.index.get(w) else {
                return Err(FrtError::BasisMismatch(format!("word {} is not in this component", word_string(w))));
            };
            let (b, l) = self.location[id];
            let v = dense.entry(b).or_insert_with(|| vec![Scalar::zero(); self.blocks[b].cols.len()]);
            v[l] += c;
        }
        let mut coords = vec![Scalar::zero(); self.basis.len()];
        for (b, mut v) in dense {
            let block = &self.blocks[b];
            for (p, row) in &block.rows {
                if v[*p].is_zero() {
                    continue;
                }
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &(&f * r);
                    }
                }
            }
            for (l, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    coords[self.basis_pos[&block.cols[l]]] = x;
                }
            }
        }
        Ok(coords)
    }

    pub fn element(&self, coords: &[Scalar]) -> Element {
        let mut e = Element::zero();
        for (k, c) in coords.iter().enumerate() {
            e.add_term(self.words[self.basis[k]].clone(), c);
        }
        e
    }

    /// The normal form as a combination of basis words.
    pub fn reduce(&self, e: &Element) -> Result<Element, FrtError> {
        Ok(self.element(&self.normal_form(e)?))
    }

    pub fn in_ideal(&self, e: &Element) -> Result<bool, FrtError> {
        Ok(self.normal_form(e)?.iter().all(Scalar::is_zero))
    }

    /// A basis of the elements of the relation span whose support lies in
    /// `words`.
    pub fn ideal_elements_supported_on(&self, words: &[Word]) -> Vec<Element> {
        let allowed: Vec<usize> = words.iter().filter_map(|w| self.index.get(w).copied()).collect();
        let mut out = Vec::new();
        for block in &self.blocks {
            if block.rows.is_empty() || !block.cols.iter().any(|w| allowed.contains(w)) {
                continue;
            }
            let outside: Vec<usize> = (0..block.cols.len()).filter(|&l| !allowed.contains(&block.cols[l])).collect();
            let m = Matrix::from_fn(outside.len(), block.rows.len(), |i, r| block.rows[r].1[outside[i]].clone());
            for c in m.kernel().basis() {
                let mut e = Element::zero();
                for (coef, (_, row)) in c.iter().zip(&block.rows) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (l, x) in row.iter().enumerate() {
                        e.add_term(self.words[block.cols[l]].clone(), &(coef * x));
                    }
                }
                out.push(e);
            }
        }
        out
    }
}
