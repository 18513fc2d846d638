//! Vertex operators of composite states, built as expression trees over
//! Heisenberg and exponential fields.
//!
//! Modes use the `a_(n)` indexing: `Y(a, z) = sum a_(n) z^{-n-1}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{FockError, FockSpace, FockState, LatticePoint, LatticeVector, StateVector};
use crate::scalar::{floor_exp, Exp, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field<S> {
    /// The vacuum field: `1_(n) = delta_{n,-1}`.
    Identity,
    /// `beta(-1)1`, with modes `beta(n)`.
    Heisenberg(LatticeVector),
    /// `e^beta`.
    Exponential(LatticePoint),
    /// `(1/r!) d^r a`.
    Derivative(Box<Field<S>>, u32),
    /// `a_(-1) b`.
    NormalOrdered(Box<Field<S>>, Box<Field<S>>),
    Sum(Vec<(S, Field<S>)>),
}

/// Generalized binomial `C(n, r)` for integer `n`.
fn binomial<S: Scalar>(n: i64, r: u32) -> S {
    let mut acc = S::one();
    for i in 0..r as i64 {
        acc = acc * S::from_i64(n - i) / S::from_i64(i + 1);
    }
    acc
}

impl<S: Scalar> Field<S> {
    pub fn derivative(self, r: u32) -> Self {
        if r == 0 {
            self
        } else {
            Field::Derivative(Box::new(self), r)
        }
    }

    pub fn normal_ordered(a: Field<S>, b: Field<S>) -> Self {
        match b {
            Field::Identity => a,
            b => Field::NormalOrdered(Box::new(a), Box::new(b)),
        }
    }

    /// Conformal weight of the underlying state (first summand for sums).
    pub fn weight(&self, space: &FockSpace<S>) -> Exp {
        match self {
            Field::Identity => Exp::zero(),
            Field::Heisenberg(_) => Exp::one(),
            Field::Exponential(p) => space.lattice().norm_point(p) / 2,
            Field::Derivative(a, r) => a.weight(space) + Exp::from_integer(*r as i64),
            Field::NormalOrdered(a, b) => a.weight(space) + b.weight(space),
            Field::Sum(parts) => parts.first().map_or(Exp::zero(), |(_, f)| f.weight(space)),
        }
    }

    /// Field of a single Fock state: `a1(-n1)...ar(-nr) e^mu` becomes
    /// `:(d^{n1-1} a1)/(n1-1)! ... e^mu:`.
    pub fn of_state(space: &FockSpace<S>, state: &FockState) -> Self {
        let rank = space.rank();
        let mut f = if state.point.is_zero() {
            Field::Identity
        } else {
            Field::Exponential(state.point.clone())
        };
        for m in state.modes.iter().rev() {
            let a = Field::Heisenberg(LatticeVector::unit(rank, m.dir as usize)).derivative(m.n as u32 - 1);
            f = Field::normal_ordered(a, f);
        }
        f
    }

    /// Field of a vector, as the corresponding linear combination.
    pub fn of_vector(space: &FockSpace<S>, v: &StateVector<S>) -> Self {
        Field::Sum(
            v.terms()
                .map(|(s, c)| (c.clone(), Field::of_state(space, s)))
                .collect(),
        )
    }

    /// `self_(n) v`.
    pub fn mode(&self, space: &FockSpace<S>, n: i64, v: &StateVector<S>) -> Result<StateVector<S>, FockError> {
        match self {
            Field::Identity => Ok(if n == -1 { v.clone() } else { flagged_zero(v) }),
            Field::Heisenberg(beta) => Ok(space.heisenberg_apply(beta, n, v)),
            Field::Exponential(beta) => space.exp_mode(beta, n, v),
            Field::Derivative(a, r) => {
                let c: S = binomial(n, *r);
                let c = if r % 2 == 1 { -c } else { c };
                if c.is_zero() {
                    return Ok(flagged_zero(v));
                }
                Ok(a.mode(space, n - *r as i64, v)?.scale(&c))
            }
            Field::Sum(parts) => {
                let mut out = flagged_zero(v);
                for (c, f) in parts {
                    out.add_scaled(c, &f.mode(space, n, v)?);
                }
                Ok(out)
            }
            Field::NormalOrdered(a, b) => {
                let wa = a.weight(space);
                let wb = b.weight(space);
                let mut out = flagged_zero(v);
                for (w, part) in split_by_weight(space, v) {
                    // a_(-1-j) b_(n+j) v + b_(n-1-j) a_(j) v, cut where the
                    // inner result would have negative weight
                    let top = floor_exp(&(w + wb - Exp::one())) - n;
                    for j in 0..=top.max(-1) {
                        let inner = b.mode(space, n + j, &part)?;
                        if !inner.is_zero() || inner.truncated() {
                            out.add_scaled(&S::one(), &a.mode(space, -1 - j, &inner)?);
                        }
                    }
                    let top = floor_exp(&(w + wa - Exp::one()));
                    for j in 0..=top.max(-1) {
                        let inner = a.mode(space, j, &part)?;
                        if !inner.is_zero() || inner.truncated() {
                            out.add_scaled(&S::one(), &b.mode(space, n - 1 - j, &inner)?);
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

fn flagged_zero<S: Scalar>(v: &StateVector<S>) -> StateVector<S> {
    let mut out = StateVector::zero();
    if v.truncated() {
        out.mark_truncated();
    }
    out
}

fn split_by_weight<S: Scalar>(space: &FockSpace<S>, v: &StateVector<S>) -> Vec<(Exp, StateVector<S>)> {
    let mut parts: BTreeMap<Exp, StateVector<S>> = BTreeMap::new();
    for (s, c) in v.terms() {
        let part = parts.entry(s.weight(space.lattice())).or_default();
        part.add_term(s.clone(), c.clone());
    }
    if v.truncated() {
        for p in parts.values_mut() {
            p.mark_truncated();
        }
    }
    parts.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Lattice;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn space() -> FockSpace<Q> {
        FockSpace::new(Lattice::orthogonal_roots(2), Exp::from_integer(6))
    }

    #[test]
    fn field_of_state_reproduces_state() {
        let sp = space();
        let a = LatticeVector::unit(2, 0);
        let b = LatticeVector::unit(2, 1);
        let base = StateVector::<Q>::basis(FockState::exponential(LatticePoint(vec![2, -2])));
        let v = sp.heisenberg_apply(&a, -2, &sp.heisenberg_apply(&b, -1, &base));
        for (s, _) in v.terms() {
            let f = Field::of_state(&sp, s);
            assert_eq!(f.mode(&sp, -1, &sp.vacuum()).unwrap(), StateVector::basis(s.clone()));
            assert_eq!(f.weight(&sp), s.weight(sp.lattice()));
        }
    }

    #[test]
    fn derivative_mode_is_translation() {
        // (L(-1) a)_(n) = -n a_(n-1)
        let sp = space();
        let a = Field::<Q>::Heisenberg(LatticeVector::unit(2, 0));
        let da = a.clone().derivative(1);
        let x = sp.heisenberg_apply(&LatticeVector::unit(2, 0), -1, &sp.vacuum());
        let lhs = da.mode(&sp, 2, &x).unwrap();
        let rhs = a.mode(&sp, 1, &x).unwrap().scale(&Q::from_integer(-2));
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn normal_ordered_square_gives_virasoro() {
        // omega = a(-1)^2 1 / 4 for <a,a> = 2; L(0) acts by weight
        let sp = space();
        let a = Field::<Q>::Heisenberg(LatticeVector::unit(2, 0));
        let omega = Field::Sum(vec![(Q::new(1, 4), Field::normal_ordered(a.clone(), a))]);
        let v = StateVector::basis(FockState::exponential(LatticePoint(vec![2, 0])));
        let v = sp.heisenberg_apply(&LatticeVector::unit(2, 0), -2, &v);
        assert_eq!(omega.mode(&sp, 1, &v).unwrap(), v.scale(&Q::from_integer(3)));
    }
}
