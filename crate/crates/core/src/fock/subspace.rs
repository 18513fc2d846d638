//! Subspaces generated by weight one currents, and Heisenberg commutants.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{Field, FockError, FockSpace, FockState, LatticeVector, StateVector};
use crate::linalg::{relations, Echelon, Insertion, SparseVec};
use crate::scalar::{Exp, Scalar};

/// Exact bases of a graded subspace, keyed by `(depth, charge)` where depth
/// is the weight above the top level and charge an integer eigenvalue.
#[derive(Clone, Debug)]
pub struct GradedBasis<S> {
    top_weight: Exp,
    max_depth: u32,
    levels: BTreeMap<(u32, i64), Vec<StateVector<S>>>,
    truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub depth: u32,
    pub weight: (i64, i64),
    pub dim: usize,
}

impl<S: Scalar> GradedBasis<S> {
    pub fn top_weight(&self) -> Exp {
        self.top_weight
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// True if some computation feeding the basis was cut by the truncation.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn basis(&self, depth: u32, charge: i64) -> &[StateVector<S>] {
        self.levels.get(&(depth, charge)).map_or(&[], |v| v.as_slice())
    }

    pub fn basis_at_depth(&self, depth: u32) -> impl Iterator<Item = &StateVector<S>> {
        self.levels
            .range((depth, i64::MIN)..=(depth, i64::MAX))
            .flat_map(|(_, v)| v.iter())
    }

    pub fn charges(&self, depth: u32) -> Vec<i64> {
        self.levels
            .range((depth, i64::MIN)..=(depth, i64::MAX))
            .map(|((_, c), _)| *c)
            .collect()
    }

    pub fn dim(&self, depth: u32) -> usize {
        self.basis_at_depth(depth).count()
    }

    pub fn dim_charge(&self, depth: u32, charge: i64) -> usize {
        self.basis(depth, charge).len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_depth).map(|d| self.dim(d)).collect()
    }

    pub fn dimension_table(&self) -> Vec<DimensionRow> {
        (0..=self.max_depth)
            .map(|d| {
                let w = self.top_weight + Exp::from_integer(d as i64);
                DimensionRow {
                    depth: d,
                    weight: (*w.numer(), *w.denom()),
                    dim: self.dim(d),
                }
            })
            .collect()
    }
}

/// Echelon forms per `(depth, charge)` cell, keeping the inserted vectors.
struct Builder<S> {
    cells: BTreeMap<(u32, i64), (Echelon<FockState, S>, Vec<StateVector<S>>)>,
    truncated: bool,
}

impl<S: Scalar> Builder<S> {
    fn new() -> Self {
        Builder {
            cells: BTreeMap::new(),
            truncated: false,
        }
    }

    /// Inserts the homogeneous pieces of `v`; returns whether anything new
    /// entered.
    fn insert(&mut self, depth: u32, v: StateVector<S>, charge: &impl Fn(&FockState) -> i64) -> bool {
        if v.truncated() {
            self.truncated = true;
        }
        let mut parts: BTreeMap<i64, SparseVec<FockState, S>> = BTreeMap::new();
        for (s, c) in v.terms() {
            parts.entry(charge(s)).or_default().insert(s.clone(), c.clone());
        }
        let mut grew = false;
        for (ch, part) in parts {
            let cell = self.cells.entry((depth, ch)).or_insert_with(|| (Echelon::new(), Vec::new()));
            if cell.0.insert(part.clone(), 0) == Insertion::Independent {
                cell.1.push(StateVector::from_map(part));
                grew = true;
            }
        }
        grew
    }

    fn level(&self, depth: u32) -> Vec<StateVector<S>> {
        self.cells
            .range((depth, i64::MIN)..=(depth, i64::MAX))
            .flat_map(|(_, (_, v))| v.iter().cloned())
            .collect()
    }

    fn finish(self, top_weight: Exp, max_depth: u32) -> GradedBasis<S> {
        GradedBasis {
            top_weight,
            max_depth,
            levels: self
                .cells
                .into_iter()
                .filter(|(_, (_, v))| !v.is_empty())
                .map(|(key, (_, v))| (key, v))
                .collect(),
            truncated: self.truncated,
        }
    }
}

/// Which negative modes of the currents are used to descend one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Descent {
    /// `X_(-n) u` for `u` at depth `d - n`, every `n >= 1`.
    AllModes,
    /// Only `X_(-1)`; enough when the currents span a perfect Lie algebra,
    /// whose negative part is generated in degree one.
    MinusOne,
}

/// Span of iterated modes `X_(n)` of weight one operators on `seeds`, graded
/// by depth up to `max_depth` and split by the eigenvalue `charge`. Each
/// entry of `ops` maps `(n, v)` to `X_(n) v`.
///
/// Depth zero is the closure of the seeds under zero modes; every other level
/// is spanned by negative modes applied to lower levels.
pub fn generated_subspace<S: Scalar, Op>(
    seeds: &[StateVector<S>],
    ops: &[Op],
    top_weight: Exp,
    max_depth: u32,
    descent: Descent,
    charge: impl Fn(&FockState) -> i64,
) -> Result<GradedBasis<S>, FockError>
where
    Op: Fn(i64, &StateVector<S>) -> Result<StateVector<S>, FockError>,
{
    let mut b = Builder::new();
    let mut frontier = Vec::new();
    for s in seeds {
        if !s.is_zero() && b.insert(0, s.clone(), &charge) {
            frontier.push(s.clone());
        }
    }
    while let Some(u) = frontier.pop() {
        for op in ops {
            let x = op(0, &u)?;
            if !x.is_zero() && b.insert(0, x.clone(), &charge) {
                frontier.push(x);
            }
        }
    }
    for d in 1..=max_depth {
        let steps: Vec<u32> = match descent {
            Descent::AllModes => (1..=d).collect(),
            Descent::MinusOne => vec![1],
        };
        for n in steps {
            for u in b.level(d - n) {
                for op in ops {
                    let x = op(-(n as i64), &u)?;
                    if !x.is_zero() || x.truncated() {
                        b.insert(d, x, &charge);
                    }
                }
            }
        }
    }
    Ok(b.finish(top_weight, max_depth))
}

/// [`generated_subspace`] for currents given as weight one vectors.
pub fn generated_by_currents<S: Scalar>(
    space: &FockSpace<S>,
    currents: &[StateVector<S>],
    seeds: &[StateVector<S>],
    top_weight: Exp,
    max_depth: u32,
    descent: Descent,
    charge: impl Fn(&FockState) -> i64,
) -> Result<GradedBasis<S>, FockError> {
    let fields: Vec<Field<S>> = currents.iter().map(|c| Field::of_vector(space, c)).collect();
    let ops: Vec<_> = fields
        .iter()
        .map(|f| move |n: i64, v: &StateVector<S>| f.mode(space, n, v))
        .collect();
    generated_subspace(seeds, &ops, top_weight, max_depth, descent, charge)
}

/// Vectors `v` of charge `lambda` in `basis` with `beta(m) v = 0` for all
/// `m > 0`, where `annihilator(m, v) = beta(m) v`. The result keeps the
/// depth grading; its top weight is lowered by `shift`.
pub fn commutant_kernel<S: Scalar>(
    basis: &GradedBasis<S>,
    lambda: i64,
    shift: Exp,
    annihilator: impl Fn(i64, &StateVector<S>) -> StateVector<S>,
) -> GradedBasis<S> {
    let mut levels = BTreeMap::new();
    let mut truncated = basis.truncated();
    for d in 0..=basis.max_depth() {
        let vs = basis.basis(d, lambda);
        if vs.is_empty() {
            continue;
        }
        let images: Vec<SparseVec<(u32, FockState), S>> = vs
            .iter()
            .map(|v| {
                let mut img = SparseVec::new();
                for m in 1..=d {
                    let w = annihilator(m as i64, v);
                    truncated |= w.truncated();
                    for (s, c) in w.terms() {
                        img.insert((m, s.clone()), c.clone());
                    }
                }
                img
            })
            .collect();
        let mut kernel = Vec::new();
        for rel in relations(images) {
            let mut k = StateVector::zero();
            for (i, c) in rel {
                k.add_scaled(&c, &vs[i]);
            }
            if !k.is_zero() {
                kernel.push(k);
            }
        }
        if !kernel.is_empty() {
            levels.insert((d, lambda), kernel);
        }
    }
    GradedBasis {
        top_weight: basis.top_weight() - shift,
        max_depth: basis.max_depth(),
        levels,
        truncated,
    }
}

/// Heisenberg commutant for a lattice vector `beta`.
pub fn heisenberg_kernel<S: Scalar>(
    space: &FockSpace<S>,
    basis: &GradedBasis<S>,
    beta: &LatticeVector,
    lambda: i64,
    shift: Exp,
) -> GradedBasis<S> {
    commutant_kernel(basis, lambda, shift, |m, v| space.heisenberg_apply(beta, m, v))
}

/// Dimension of the span of `vectors`.
pub fn span_dim<S: Scalar>(vectors: &[StateVector<S>]) -> usize {
    crate::linalg::rank(vectors.iter().map(|v| v.as_map().clone()))
}

impl<S: Scalar> GradedBasis<S> {
    /// Dimension of the span of all vectors at a depth, recomputed.
    pub fn verify_dim(&self, depth: u32) -> usize {
        let vs: Vec<_> = self.basis_at_depth(depth).cloned().collect();
        span_dim(&vs)
    }

    pub fn is_empty_at(&self, depth: u32) -> bool {
        self.dim(depth).is_zero()
    }

    /// Applies `f` to every stored vector.
    pub fn map_vectors(&self, f: impl Fn(&StateVector<S>) -> StateVector<S>) -> Self {
        GradedBasis {
            top_weight: self.top_weight,
            max_depth: self.max_depth,
            levels: self
                .levels
                .iter()
                .map(|(key, vs)| (*key, vs.iter().map(&f).collect()))
                .collect(),
            truncated: self.truncated,
        }
    }
}
