//! Weight-truncated lattice Fock spaces.
//!
//! A [`Lattice`] fixes a basis `b_1..b_r` of the Cartan space with Gram
//! matrix `G` and a denominator `d`: lattice points are stored as integer
//! coordinates `c` meaning `sum c_p/d b_p`. Heisenberg modes `b_p(-n)` are
//! recorded per direction. For the rank-k lattice `L = Z a_1 + ... + Z a_k`
//! with `<a_p, a_q> = 2 delta_pq` we take `b_p = a_p` and `d = 2`, so the
//! coordinates count halves of `a_p` and cover the dual lattice `L^perp = L/2`.

mod field;
mod sl2;
mod subspace;
pub mod symmetry;
mod vertex;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{exp, Exp, Scalar};

pub use field::Field;
pub use sl2::{ConformalVectors, ModeOp, Named, Sl2Lattice};
pub use subspace::{
    commutant_kernel, generated_by_currents, generated_subspace, heisenberg_kernel, span_dim, Descent, DimensionRow,
    GradedBasis,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("pairing <{beta}, {point}> = {pairing} is not an integer")]
    NonIntegralPairing {
        beta: String,
        point: String,
        pairing: Exp,
    },
    #[error("state {0} is not a vector of the even lattice and has no field")]
    NotInLattice(String),
    #[error("dimension mismatch: expected rank {expected}, got {got}")]
    Rank { expected: usize, got: usize },
    #[error("bad label: {0}")]
    BadLabel(String),
}

/// Integer coordinates of a point of the (dual) lattice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePoint(pub Vec<i32>);

impl LatticePoint {
    pub fn zero(rank: usize) -> Self {
        LatticePoint(vec![0; rank])
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A vector of the Cartan space in the mode basis `b_p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeVector(pub Vec<Exp>);

impl LatticeVector {
    pub fn unit(rank: usize, p: usize) -> Self {
        let mut v = vec![Exp::zero(); rank];
        v[p] = Exp::one();
        LatticeVector(v)
    }

    pub fn scale(&self, c: Exp) -> Self {
        LatticeVector(self.0.iter().map(|x| *x * c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    gram: Vec<Vec<Exp>>,
    denom: i64,
}

impl Lattice {
    pub fn new(gram: Vec<Vec<Exp>>, denom: i64) -> Self {
        assert!(denom > 0);
        assert!(gram.iter().all(|row| row.len() == gram.len()));
        Lattice { gram, denom }
    }

    /// `Z a_1 + ... + Z a_k`, `<a_p, a_q> = 2 delta_pq`, points in half units.
    pub fn orthogonal_roots(k: usize) -> Self {
        let gram = (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| if p == q { Exp::from_integer(2) } else { Exp::zero() })
                    .collect()
            })
            .collect();
        Lattice::new(gram, 2)
    }

    /// `Z gamma` with `<gamma, gamma> = norm`, points in units of `gamma/denom`.
    pub fn rank_one(norm: i64, denom: i64) -> Self {
        Lattice::new(vec![vec![Exp::from_integer(norm)]], denom)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn point_vector(&self, point: &LatticePoint) -> LatticeVector {
        LatticeVector(point.0.iter().map(|c| exp(*c as i64, self.denom)).collect())
    }

    /// `<beta, b_q>`.
    pub fn pair_basis(&self, beta: &LatticeVector, q: usize) -> Exp {
        beta.0
            .iter()
            .zip(&self.gram)
            .map(|(b, row)| *b * row[q])
            .fold(Exp::zero(), |a, x| a + x)
    }

    pub fn pair(&self, a: &LatticeVector, b: &LatticeVector) -> Exp {
        (0..self.rank())
            .map(|q| self.pair_basis(a, q) * b.0[q])
            .fold(Exp::zero(), |acc, x| acc + x)
    }

    pub fn pair_point(&self, beta: &LatticeVector, point: &LatticePoint) -> Exp {
        self.pair(beta, &self.point_vector(point))
    }

    pub fn norm_point(&self, point: &LatticePoint) -> Exp {
        let v = self.point_vector(point);
        self.pair(&v, &v)
    }

    /// Coset of `point` modulo the integral lattice (coordinates mod `d`).
    pub fn sector(&self, point: &LatticePoint) -> Vec<i32> {
        point.0.iter().map(|c| c.rem_euclid(self.denom as i32)).collect()
    }

    pub fn is_integral(&self, point: &LatticePoint) -> bool {
        self.sector(point).iter().all(|c| *c == 0)
    }
}

/// A Heisenberg creation mode `b_dir(-n)`, `n >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mode {
    pub n: u16,
    pub dir: u16,
}

/// Basis vector `prod b_dir(-n) e^point` of a lattice Fock space; the mode
/// list is kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FockState {
    pub point: LatticePoint,
    pub modes: Vec<Mode>,
}

impl FockState {
    pub fn new(point: LatticePoint, mut modes: Vec<Mode>) -> Self {
        modes.sort_unstable();
        FockState { point, modes }
    }

    pub fn vacuum(rank: usize) -> Self {
        FockState {
            point: LatticePoint::zero(rank),
            modes: Vec::new(),
        }
    }

    pub fn exponential(point: LatticePoint) -> Self {
        FockState {
            point,
            modes: Vec::new(),
        }
    }

    pub fn mode_degree(&self) -> i64 {
        self.modes.iter().map(|m| m.n as i64).sum()
    }

    pub fn weight(&self, lattice: &Lattice) -> Exp {
        lattice.norm_point(&self.point) / Exp::from_integer(2) + Exp::from_integer(self.mode_degree())
    }

    pub fn with_mode(&self, m: Mode) -> Self {
        let mut modes = self.modes.clone();
        let at = modes.partition_point(|x| *x < m);
        modes.insert(at, m);
        FockState {
            point: self.point.clone(),
            modes,
        }
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{}", self.point)?;
        for m in self.modes.iter().rev() {
            write!(f, " b{}(-{})", m.dir + 1, m.n)?;
        }
        Ok(())
    }
}

/// Sparse exact combination of Fock states.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StateVector<S> {
    terms: BTreeMap<FockState, S>,
    truncated: bool,
}

impl<S: Scalar> Default for StateVector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> StateVector<S> {
    pub fn zero() -> Self {
        StateVector {
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn basis(state: FockState) -> Self {
        Self::term(state, S::one())
    }

    pub fn term(state: FockState, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(state, c);
        v
    }

    pub fn vacuum(rank: usize) -> Self {
        Self::basis(FockState::vacuum(rank))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (FockState, S)>) -> Self {
        let mut v = Self::zero();
        for (s, c) in terms {
            v.add_term(s, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when some term was dropped for exceeding the weight truncation.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &S)> {
        self.terms.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<FockState, S> {
        &self.terms
    }

    pub fn into_map(self) -> BTreeMap<FockState, S> {
        self.terms
    }

    pub fn from_map(terms: BTreeMap<FockState, S>) -> Self {
        StateVector {
            terms,
            truncated: false,
        }
    }

    pub fn coeff(&self, s: &FockState) -> S {
        self.terms.get(s).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, s: FockState, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(slot) => {
                *slot = slot.clone() + c;
                if slot.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &S, other: &StateVector<S>) {
        if c.is_zero() {
            return;
        }
        for (s, x) in &other.terms {
            self.add_term(s.clone(), c.clone() * x.clone());
        }
        self.truncated |= other.truncated;
    }

    pub fn add(&self, other: &StateVector<S>) -> Self {
        let mut out = self.clone();
        out.add_scaled(&S::one(), other);
        out
    }

    pub fn sub(&self, other: &StateVector<S>) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-S::one(), other);
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            let mut z = Self::zero();
            z.truncated = self.truncated;
            return z;
        }
        StateVector {
            terms: self
                .terms
                .iter()
                .map(|(s, x)| (s.clone(), x.clone() * c.clone()))
                .collect(),
            truncated: self.truncated,
        }
    }

    /// Largest weight among the terms.
    pub fn max_weight(&self, lattice: &Lattice) -> Option<Exp> {
        self.terms.keys().map(|s| s.weight(lattice)).max()
    }

    /// The common weight of all terms, if there is one.
    pub fn homogeneous_weight(&self, lattice: &Lattice) -> Option<Exp> {
        let mut it = self.terms.keys().map(|s| s.weight(lattice));
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// Common coset of the lattice points, if all terms share one.
    pub fn sector(&self, lattice: &Lattice) -> Option<Vec<i32>> {
        let mut it = self.terms.keys().map(|s| lattice.sector(&s.point));
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    /// Canonical text dump: one `sector | point | modes | coefficient` line
    /// per term in state order.
    pub fn dump(&self, lattice: &Lattice) -> String {
        let mut out = String::new();
        for (s, c) in &self.terms {
            let sector = LatticePoint(lattice.sector(&s.point));
            let modes: Vec<String> = s
                .modes
                .iter()
                .map(|m| format!("{}:{}", m.dir + 1, m.n))
                .collect();
            out.push_str(&format!("{sector} | {} | [{}] | {c}\n", s.point, modes.join(" ")));
        }
        out
    }
}

impl<S: Scalar> fmt::Display for StateVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {s}")?;
        }
        Ok(())
    }
}

/// Heisenberg polynomial in creation modes: sorted mode list -> coefficient.
pub(crate) type ModePoly<S> = BTreeMap<Vec<Mode>, S>;

/// A lattice Fock space with a global weight truncation.
pub struct FockSpace<S> {
    lattice: Lattice,
    truncation: Exp,
    creation_cache: Mutex<HashMap<(LatticeVector, usize), Arc<ModePoly<S>>>>,
}

impl<S: Scalar> Clone for FockSpace<S> {
    fn clone(&self) -> Self {
        FockSpace::new(self.lattice.clone(), self.truncation)
    }
}

impl<S: Scalar> fmt::Debug for FockSpace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockSpace")
            .field("lattice", &self.lattice)
            .field("truncation", &self.truncation)
            .finish()
    }
}

pub const DEFAULT_TRUNCATION: i64 = 8;

impl<S: Scalar> FockSpace<S> {
    pub fn new(lattice: Lattice, truncation: Exp) -> Self {
        FockSpace {
            lattice,
            truncation,
            creation_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn truncation(&self) -> Exp {
        self.truncation
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn vacuum(&self) -> StateVector<S> {
        StateVector::vacuum(self.rank())
    }

    /// All Fock states of the coset `point + integral lattice` with weight
    /// `< max_weight`, grouped by weight.
    pub fn enumerate_states(&self, offset: &LatticePoint, max_weight: Exp) -> BTreeMap<Exp, Vec<FockState>> {
        let rank = self.rank();
        let d = self.lattice.denom() as i32;
        let mut out: BTreeMap<Exp, Vec<FockState>> = BTreeMap::new();
        // the Gram matrices used here are positive definite; bound each
        // coordinate by the diagonal entry
        let mut bounds = Vec::with_capacity(rank);
        for p in 0..rank {
            let g = self.lattice.gram[p][p];
            // weight >= g (c/d)^2 / 2 for an orthogonal basis
            let mut c = 0i32;
            while g * exp((c as i64) * (c as i64), 2 * (d as i64) * (d as i64)) < max_weight {
                c += 1;
            }
            bounds.push(c);
        }
        let mut points = vec![Vec::<i32>::new()];
        for p in 0..rank {
            let mut next = Vec::new();
            for partial in &points {
                for c in -bounds[p]..=bounds[p] {
                    if (c - offset.0[p]).rem_euclid(d) == 0 {
                        let mut v = partial.clone();
                        v.push(c);
                        next.push(v);
                    }
                }
            }
            points = next;
        }
        for coords in points {
            let point = LatticePoint(coords);
            let base = FockState::exponential(point.clone()).weight(&self.lattice);
            if base >= max_weight {
                continue;
            }
            let budget = (max_weight - base).ceil().to_integer() - 1;
            for modes in mode_multisets(rank, budget.max(0) as u16) {
                let s = FockState::new(point.clone(), modes);
                let w = s.weight(&self.lattice);
                if w < max_weight {
                    out.entry(w).or_default().push(s);
                }
            }
        }
        out
    }
}

/// Every sorted multiset of modes `b_dir(-n)` with total degree `<= budget`.
fn mode_multisets(rank: usize, budget: u16) -> Vec<Vec<Mode>> {
    let mut all: Vec<Mode> = Vec::new();
    for n in 1..=budget {
        for dir in 0..rank as u16 {
            all.push(Mode { n, dir });
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(all: &[Mode], start: usize, budget: u16, current: &mut Vec<Mode>, out: &mut Vec<Vec<Mode>>) {
        out.push(current.clone());
        for i in start..all.len() {
            let m = all[i];
            if m.n <= budget {
                current.push(m);
                rec(all, i, budget - m.n, current, out);
                current.pop();
            }
        }
    }
    rec(&all, 0, budget, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::lattice_coset_char;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    #[test]
    fn weights_and_norms() {
        let l = Lattice::orthogonal_roots(3);
        let half = FockState::exponential(LatticePoint(vec![1, 0, 0]));
        assert_eq!(half.weight(&l), exp(1, 4));
        let root = FockState::new(LatticePoint(vec![2, 0, 0]), vec![Mode { n: 2, dir: 1 }]);
        assert_eq!(root.weight(&l), Exp::from_integer(3));
        let gamma = LatticeVector(vec![Exp::one(); 3]);
        assert_eq!(l.pair(&gamma, &gamma), Exp::from_integer(6));
        assert!(l.is_integral(&LatticePoint(vec![2, -2, 0])));
        assert!(!l.is_integral(&LatticePoint(vec![1, -2, 0])));
    }

    #[test]
    fn vector_arithmetic_prunes_zeros() {
        let s = FockState::vacuum(2);
        let mut v = StateVector::<Q>::term(s.clone(), Q::from_integer(2));
        v.add_term(s.clone(), Q::from_integer(-2));
        assert!(v.is_zero());
        let a = StateVector::<Q>::basis(s.clone());
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.scale(&Q::from_integer(3)).coeff(&s), Q::from_integer(3));
    }

    #[test]
    fn state_counts_match_lattice_coset_characters() {
        // rank one lattice Z gamma, <gamma,gamma> = 2k, points in units gamma/2k
        for k in 2..5i64 {
            let space = FockSpace::<Q>::new(Lattice::rank_one(2 * k, 2 * k), Exp::from_integer(6));
            let t = Exp::from_integer(6);
            for s in 0..2 * k {
                let states = space.enumerate_states(&LatticePoint(vec![s as i32]), t);
                let ch = lattice_coset_char::<Q>(k, s, t).unwrap();
                let mut total = 0;
                for (w, list) in &states {
                    assert_eq!(ch.coeff(w), Q::from_integer(list.len() as i64), "k={k} s={s} w={w}");
                    total += list.len();
                }
                let ch_total: i64 = ch.terms().map(|(_, c)| c.to_integer()).sum();
                assert_eq!(total as i64, ch_total);
            }
        }
    }

    #[test]
    fn dump_is_canonical() {
        let l = Lattice::orthogonal_roots(2);
        let v = StateVector::<Q>::from_terms([
            (FockState::new(LatticePoint(vec![1, -1]), vec![Mode { n: 1, dir: 0 }]), Q::new(1, 2)),
            (FockState::exponential(LatticePoint(vec![-1, 1])), Q::from_integer(-1)),
        ]);
        assert_eq!(
            v.dump(&l),
            "(1,1) | (-1,1) | [] | -1\n(1,1) | (1,-1) | [1:1] | 1/2\n"
        );
    }
}
