//! Vectors invariant under permutations of the lattice directions, stored by
//! their coefficients on canonical orbit representatives.
//!
//! For an invariant vector `v = sum_O c_O sum_{s in O} s` and an invariant
//! operator `X`, the coefficient of the representative `t` in `X v` is
//! `|Stab t| sum_O c_O / |Stab s_O| sum_{u in orbit(t)} (X s_O)_u`, so `X`
//! only ever acts on representatives.

use std::collections::BTreeMap;

use super::{FockError, FockState, LatticePoint, Mode, StateVector};
use crate::scalar::Scalar;

type Profile = (i32, Vec<u16>);

fn profiles(s: &FockState) -> Vec<Profile> {
    let rank = s.point.0.len();
    let mut out: Vec<Profile> = s.point.0.iter().map(|c| (*c, Vec::new())).collect();
    for m in &s.modes {
        out[m.dir as usize].1.push(m.n);
    }
    debug_assert_eq!(out.len(), rank);
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Canonical representative of the orbit of `s` and the order of its
/// stabilizer.
pub fn canonical(s: &FockState) -> (FockState, i64) {
    let mut prof = profiles(s);
    prof.sort();
    let mut stab = 1i64;
    let mut run = 1usize;
    for w in prof.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            stab *= factorial(run);
            run = 1;
        }
    }
    stab *= factorial(run);
    let point = LatticePoint(prof.iter().map(|(c, _)| *c).collect());
    let mut modes = Vec::new();
    for (dir, (_, ns)) in prof.iter().enumerate() {
        for &n in ns {
            modes.push(Mode { n, dir: dir as u16 });
        }
    }
    (FockState::new(point, modes), stab)
}

pub fn is_canonical(s: &FockState) -> bool {
    canonical(s).0 == *s
}

/// Keeps the coefficients of canonical states.
pub fn compress<S: Scalar>(v: &StateVector<S>) -> StateVector<S> {
    let mut out = StateVector::from_map(
        v.terms()
            .filter(|(s, _)| is_canonical(s))
            .map(|(s, c)| (s.clone(), c.clone()))
            .collect(),
    );
    if v.truncated() {
        out.mark_truncated();
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// The invariant vector with the given representative coefficients.
pub fn expand<S: Scalar>(v: &StateVector<S>) -> StateVector<S> {
    let mut out = StateVector::zero();
    if v.truncated() {
        out.mark_truncated();
    }
    for (s, c) in v.terms() {
        let rank = s.point.0.len();
        let mut seen = BTreeMap::new();
        for perm in permutations(rank) {
            let point = LatticePoint(perm.iter().map(|&p| s.point.0[p]).collect());
            let inv: Vec<usize> = {
                let mut inv = vec![0; rank];
                for (new, &old) in perm.iter().enumerate() {
                    inv[old] = new;
                }
                inv
            };
            let modes = s
                .modes
                .iter()
                .map(|m| Mode {
                    n: m.n,
                    dir: inv[m.dir as usize] as u16,
                })
                .collect();
            seen.insert(FockState::new(point, modes), ());
        }
        for (t, _) in seen {
            out.add_term(t, c.clone());
        }
    }
    out
}

/// Applies an operator commuting with direction permutations to an invariant
/// vector given by representatives.
pub fn apply<S: Scalar>(
    v: &StateVector<S>,
    op: impl Fn(&StateVector<S>) -> Result<StateVector<S>, FockError>,
) -> Result<StateVector<S>, FockError> {
    let mut out = StateVector::zero();
    if v.truncated() {
        out.mark_truncated();
    }
    for (s, c) in v.terms() {
        let (_, stab_s) = canonical(s);
        let image = op(&StateVector::basis(s.clone()))?;
        if image.truncated() {
            out.mark_truncated();
        }
        for (u, x) in image.terms() {
            let (t, stab_t) = canonical(u);
            let w = c.clone() * x.clone() * S::from_i64(stab_t) / S::from_i64(stab_s);
            out.add_term(t, w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockSpace, Lattice, LatticeVector};
    use crate::scalar::Exp;
    use num_rational::Ratio;
    use num_traits::One;

    type Q = Ratio<i64>;

    #[test]
    fn canonical_form_and_stabilizer() {
        let s = FockState::new(LatticePoint(vec![1, 0, 1]), vec![Mode { n: 2, dir: 2 }]);
        let (t, stab) = canonical(&s);
        assert_eq!(stab, 1);
        assert!(is_canonical(&t));
        let (_, stab) = canonical(&FockState::exponential(LatticePoint(vec![1, 1, 0])));
        assert_eq!(stab, 2);
    }

    #[test]
    fn expand_then_compress_is_identity() {
        let s = FockState::new(LatticePoint(vec![-2, 0, 2]), vec![Mode { n: 1, dir: 0 }]);
        let v = StateVector::<Q>::term(canonical(&s).0, Q::new(3, 2));
        let full = expand(&v);
        assert_eq!(full.len(), 6);
        assert_eq!(compress(&full), v);
    }

    #[test]
    fn symmetric_action_matches_full_action() {
        let k = 3;
        let space = FockSpace::<Q>::new(Lattice::orthogonal_roots(k), Exp::from_integer(5));
        let e = |v: &StateVector<Q>, n: i64| -> Result<StateVector<Q>, FockError> {
            let mut out = StateVector::zero();
            for p in 0..k {
                let mut c = vec![0; k];
                c[p] = 2;
                out.add_scaled(&Q::one(), &space.exp_mode(&LatticePoint(c), n, v)?);
            }
            Ok(out)
        };
        let gamma = LatticeVector(vec![Exp::one(); k]);
        let top = expand(&StateVector::<Q>::basis(FockState::exponential(LatticePoint(vec![0, 0, 1]))));
        let v = space.heisenberg_apply(&gamma, -2, &e(&space.heisenberg_apply(&gamma, -1, &top), -1).unwrap());
        for n in [-2, -1, 0, 1] {
            let full = e(&v, n).unwrap();
            let sym = apply(&compress(&v), |x| e(x, n)).unwrap();
            assert_eq!(sym, compress(&full));
            assert_eq!(expand(&sym), full);
        }
    }
}
