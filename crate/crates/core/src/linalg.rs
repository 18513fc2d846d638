//! Sparse exact row echelon forms over an ordered key set.
//!
//! Vectors are `BTreeMap<K, S>`; the pivot of a row is its smallest key, so
//! ties are always broken by the canonical key order. Optional provenance
//! tracking records each row as a combination of the inserted inputs, which
//! is how kernels are extracted.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type SparseVec<K, S> = BTreeMap<K, S>;

/// `target += c * source`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone, S: Scalar>(target: &mut SparseVec<K, S>, c: &S, source: &SparseVec<K, S>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in source {
        let delta = c.clone() * x.clone();
        match target.get_mut(k) {
            Some(slot) => {
                *slot = slot.clone() + delta;
                if slot.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                target.insert(k.clone(), delta);
            }
        }
    }
}

fn scaled<K: Ord, S: Scalar>(m: SparseVec<K, S>, c: &S) -> SparseVec<K, S> {
    m.into_iter().map(|(k, x)| (k, x * c.clone())).collect()
}

#[derive(Clone, Debug)]
struct Row<K, S> {
    vec: SparseVec<K, S>,
    combo: SparseVec<usize, S>,
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion<S> {
    /// The vector enlarged the span.
    Independent,
    /// The vector was in the span; the payload is a relation
    /// `sum c_i v_i = 0` among inserted vectors (tracked mode only).
    Dependent(SparseVec<usize, S>),
}

#[derive(Clone, Debug)]
pub struct Echelon<K, S> {
    rows: BTreeMap<K, Row<K, S>>,
    track: bool,
}

impl<K: Ord + Clone, S: Scalar> Default for Echelon<K, S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, S: Scalar> Echelon<K, S> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            track: false,
        }
    }

    /// An echelon form that remembers how each row was built.
    pub fn tracked() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            track: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_with_combo(
        &self,
        mut v: SparseVec<K, S>,
        mut combo: SparseVec<usize, S>,
    ) -> (SparseVec<K, S>, SparseVec<usize, S>) {
        let mut floor: Option<K> = None;
        loop {
            let lead = match &floor {
                None => v.keys().next().cloned(),
                Some(f) => v
                    .range((std::ops::Bound::Excluded(f.clone()), std::ops::Bound::Unbounded))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(lead) = lead else { break };
            match self.rows.get(&lead) {
                Some(row) => {
                    let c = -v[&lead].clone();
                    axpy(&mut v, &c, &row.vec);
                    if self.track {
                        axpy(&mut combo, &c, &row.combo);
                    }
                }
                None => {
                    // entries below this key are pivots of nothing; keep them
                    floor = Some(lead);
                }
            }
        }
        (v, combo)
    }

    /// Remainder of `v` after elimination against the current rows.
    pub fn reduce(&self, v: SparseVec<K, S>) -> SparseVec<K, S> {
        self.reduce_with_combo(v, SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec<K, S>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v` labelled `tag` (the label is only used in tracked mode).
    pub fn insert(&mut self, v: SparseVec<K, S>, tag: usize) -> Insertion<S> {
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(tag, S::one());
        }
        let (rem, combo) = self.reduce_with_combo(v, combo);
        let Some((pivot, lead)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Insertion::Dependent(combo);
        };
        let inv = S::one() / lead;
        self.rows.insert(
            pivot,
            Row {
                vec: scaled(rem, &inv),
                combo: scaled(combo, &inv),
            },
        );
        Insertion::Independent
    }
}

/// Basis of the linear relations among `vectors`: each returned map
/// `{i -> c_i}` satisfies `sum c_i vectors[i] = 0`.
pub fn relations<K: Ord + Clone, S: Scalar>(vectors: Vec<SparseVec<K, S>>) -> Vec<SparseVec<usize, S>> {
    let mut ech = Echelon::tracked();
    let mut out = Vec::new();
    for (i, v) in vectors.into_iter().enumerate() {
        if let Insertion::Dependent(rel) = ech.insert(v, i) {
            out.push(rel);
        }
    }
    out
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone, S: Scalar>(vectors: impl IntoIterator<Item = SparseVec<K, S>>) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v, 0);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32, Q> {
        entries.iter().map(|&(k, c)| (k, Q::from_integer(c))).collect()
    }

    #[test]
    fn rank_of_dependent_family() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, 4), (2, 2)])];
        assert_eq!(rank(vs), 2);
    }

    #[test]
    fn relations_are_exact() {
        let vs = vec![
            v(&[(0, 2), (3, 1)]),
            v(&[(1, 1), (3, -1)]),
            v(&[(0, 4), (1, 3), (3, -1)]),
            v(&[(5, 7)]),
        ];
        let rels = relations(vs.clone());
        assert_eq!(rels.len(), 1);
        let mut acc = SparseVec::new();
        for (i, c) in &rels[0] {
            axpy(&mut acc, c, &vs[*i]);
        }
        assert!(acc.is_empty());
        assert_eq!(rels[0].get(&2), Some(&Q::from_integer(1)));
    }

    #[test]
    fn non_pivot_leading_entries_are_skipped() {
        let mut e = Echelon::<u32, Q>::new();
        e.insert(v(&[(1, 1), (2, 1)]), 0);
        // leading key 0 has no pivot; key 1 still reduces
        let r = e.reduce(v(&[(0, 1), (1, 1)]));
        assert_eq!(r, v(&[(0, 1), (2, -1)]));
        assert!(e.contains(&v(&[(1, 3), (2, 3)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn zero_vector_is_dependent() {
        let mut e = Echelon::<u32, Q>::tracked();
        assert_eq!(e.insert(SparseVec::new(), 4), Insertion::Dependent(v(&[(4, 1)]).into_iter().map(|(k, c)| (k as usize, c)).collect()));
    }
}
