//! Heisenberg modes and lattice vertex operators with trivial cocycle:
//!
//! `Y(e^beta, z) = E^-(-beta, z) E^+(-beta, z) e^beta z^{beta(0)}`,
//! `E^-(-beta, z) = exp(sum_{n>0} beta(-n) z^n / n)`,
//! `E^+(-beta, z) = exp(-sum_{n>0} beta(n) z^{-n} / n)`.
//!
//! Both exponentials are expanded with the complete homogeneous recursion
//! `s P_s = sum_{n=1}^{s} a_n P_{s-n}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{FockError, FockSpace, FockState, LatticePoint, LatticeVector, Mode, ModePoly, StateVector};
use crate::scalar::{Exp, Scalar};

fn insert_mode(modes: &[Mode], m: Mode) -> Vec<Mode> {
    let mut out = Vec::with_capacity(modes.len() + 1);
    let at = modes.partition_point(|x| *x < m);
    out.extend_from_slice(&modes[..at]);
    out.push(m);
    out.extend_from_slice(&modes[at..]);
    out
}

fn merge_modes(a: &[Mode], b: &[Mode]) -> Vec<Mode> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn poly_add<S: Scalar>(p: &mut ModePoly<S>, key: Vec<Mode>, c: S) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&key) {
        Some(slot) => {
            *slot = slot.clone() + c;
            if slot.is_zero() {
                p.remove(&key);
            }
        }
        None => {
            p.insert(key, c);
        }
    }
}

impl<S: Scalar> FockSpace<S> {
    /// `<beta, b_p>` for every direction `p`, as scalars.
    fn pairings(&self, beta: &LatticeVector) -> Vec<S> {
        (0..self.rank())
            .map(|p| S::from_exp(&self.lattice.pair_basis(beta, p)))
            .collect()
    }

    /// `beta(n)` acting on a Heisenberg polynomial (`n > 0`): contracts each
    /// occurrence of a mode `b_p(-n)` with factor `n <beta, b_p>`.
    fn annihilate_poly(&self, pair: &[S], n: u16, poly: &ModePoly<S>) -> ModePoly<S> {
        let mut out = ModePoly::new();
        let nn = S::from_i64(n as i64);
        for (modes, c) in poly {
            for (i, m) in modes.iter().enumerate() {
                if m.n != n || pair[m.dir as usize].is_zero() {
                    continue;
                }
                let mut rest = modes.clone();
                rest.remove(i);
                poly_add(&mut out, rest, c.clone() * nn.clone() * pair[m.dir as usize].clone());
            }
        }
        out
    }

    /// `beta(-n)` acting on a Heisenberg polynomial (`n > 0`).
    fn create_poly(&self, beta: &LatticeVector, n: u16, poly: &ModePoly<S>) -> ModePoly<S> {
        let mut out = ModePoly::new();
        for (p, b) in beta.0.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let b = S::from_exp(b);
            let m = Mode { n, dir: p as u16 };
            for (modes, c) in poly {
                poly_add(&mut out, insert_mode(modes, m), c.clone() * b.clone());
            }
        }
        out
    }

    /// Coefficient of `z^t` in `E^-(-beta, z)` as a creation polynomial.
    pub(crate) fn creation_poly(&self, beta: &LatticeVector, t: usize) -> Arc<ModePoly<S>> {
        if let Some(p) = self.creation_cache.lock().unwrap().get(&(beta.clone(), t)) {
            return p.clone();
        }
        let poly = if t == 0 {
            let mut p = ModePoly::new();
            p.insert(Vec::new(), S::one());
            p
        } else {
            let mut acc = ModePoly::new();
            for n in 1..=t {
                let prev = self.creation_poly(beta, t - n);
                for (k, c) in self.create_poly(beta, n as u16, &prev) {
                    poly_add(&mut acc, k, c);
                }
            }
            let inv = S::one() / S::from_i64(t as i64);
            acc.into_iter().map(|(k, c)| (k, c * inv.clone())).collect()
        };
        let poly = Arc::new(poly);
        self.creation_cache
            .lock()
            .unwrap()
            .insert((beta.clone(), t), poly.clone());
        poly
    }

    /// Coefficients of `z^{-s}`, `s = 0..=deg`, of `E^+(-beta, z)` applied to
    /// the Heisenberg monomial `modes`.
    fn annihilation_series(&self, beta: &LatticeVector, modes: &[Mode]) -> Vec<ModePoly<S>> {
        let pair = self.pairings(beta);
        let deg: usize = modes.iter().map(|m| m.n as usize).sum();
        let mut start = ModePoly::new();
        start.insert(modes.to_vec(), S::one());
        let mut out = vec![start];
        for s in 1..=deg {
            let mut acc = ModePoly::new();
            for n in 1..=s {
                for (k, c) in self.annihilate_poly(&pair, n as u16, &out[s - n]) {
                    poly_add(&mut acc, k, -c);
                }
            }
            let inv = S::one() / S::from_i64(s as i64);
            out.push(acc.into_iter().map(|(k, c)| (k, c * inv.clone())).collect());
        }
        out
    }

    /// Heisenberg mode `beta(n)` on `v`. Creation results above the
    /// truncation are dropped and flagged.
    pub fn heisenberg_apply(&self, beta: &LatticeVector, n: i64, v: &StateVector<S>) -> StateVector<S> {
        let mut out = StateVector::zero();
        if v.truncated() {
            out.mark_truncated();
        }
        if n == 0 {
            for (s, c) in v.terms() {
                let pairing = S::from_exp(&self.lattice.pair_point(beta, &s.point));
                out.add_term(s.clone(), c.clone() * pairing);
            }
        } else if n > 0 {
            let pair = self.pairings(beta);
            for (s, c) in v.terms() {
                let mut poly = ModePoly::new();
                poly.insert(s.modes.clone(), c.clone());
                for (modes, x) in self.annihilate_poly(&pair, n as u16, &poly) {
                    out.add_term(FockState { point: s.point.clone(), modes }, x);
                }
            }
        } else {
            for (s, c) in v.terms() {
                let w = s.weight(&self.lattice) + Exp::from_integer(-n);
                if w > self.truncation {
                    out.mark_truncated();
                    continue;
                }
                for (p, b) in beta.0.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let st = s.with_mode(Mode {
                        n: (-n) as u16,
                        dir: p as u16,
                    });
                    out.add_term(st, c.clone() * S::from_exp(b));
                }
            }
        }
        out
    }

    /// `Y(e^beta, z)` applied to one Fock state: returns `(z exponent, state)`
    /// pairs for every `(s, t)` with `t - s` in `window` (as integers).
    fn vertex_on_state(
        &self,
        beta: &LatticePoint,
        state: &FockState,
        coeff: &S,
        mut keep: impl FnMut(i64) -> bool,
        out: &mut BTreeMap<Exp, StateVector<S>>,
    ) {
        let bvec = self.lattice.point_vector(beta);
        let pairing = self.lattice.pair_point(&bvec, &state.point);
        let point = state.point.add(beta);
        let base_weight = FockState::exponential(point.clone()).weight(&self.lattice);
        let deg = state.mode_degree();
        let ann = self.annihilation_series(&bvec, &state.modes);
        for (s, polys) in ann.iter().enumerate() {
            if polys.is_empty() {
                continue;
            }
            // result weight = base + deg - s + t
            let max_t = (self.truncation - base_weight - Exp::from_integer(deg - s as i64))
                .floor()
                .to_integer();
            let mut t = 0i64;
            loop {
                let shift = t - s as i64;
                if !keep(shift) {
                    if t > max_t {
                        break;
                    }
                    t += 1;
                    continue;
                }
                let z = pairing + Exp::from_integer(shift);
                let slot = out.entry(z).or_default();
                if t > max_t {
                    slot.mark_truncated();
                    break;
                }
                let cre = self.creation_poly(&bvec, t as usize);
                for (a, ca) in polys {
                    for (b, cb) in cre.iter() {
                        let modes = merge_modes(a, b);
                        slot.add_term(
                            FockState {
                                point: point.clone(),
                                modes,
                            },
                            coeff.clone() * ca.clone() * cb.clone(),
                        );
                    }
                }
                t += 1;
            }
        }
    }

    /// Mode `e^beta_(n)` (coefficient of `z^{-n-1}` in `Y(e^beta, z)`) on `v`.
    pub fn exp_mode(&self, beta: &LatticePoint, n: i64, v: &StateVector<S>) -> Result<StateVector<S>, FockError> {
        let bvec = self.lattice.point_vector(beta);
        let mut out = StateVector::zero();
        if v.truncated() {
            out.mark_truncated();
        }
        for (s, c) in v.terms() {
            let pairing = self.lattice.pair_point(&bvec, &s.point);
            if !pairing.is_integer() {
                return Err(FockError::NonIntegralPairing {
                    beta: beta.to_string(),
                    point: s.point.to_string(),
                    pairing,
                });
            }
            // t - s = -n - 1 - pairing
            let want = -n - 1 - pairing.to_integer();
            let mut parts = BTreeMap::new();
            self.vertex_on_state(beta, s, c, |shift| shift == want, &mut parts);
            for (_, part) in parts {
                out.add_scaled(&S::one(), &part);
            }
        }
        Ok(out)
    }

    /// Expansion of `Y(e^beta, z) v` as `(z exponent, coefficient vector)`
    /// pairs, keeping terms of weight `<= max_weight`. Exponents may be
    /// fractional when `beta` pairs non-integrally with `v`.
    pub fn exp_apply(
        &self,
        beta: &LatticePoint,
        v: &StateVector<S>,
        max_weight: Exp,
    ) -> Vec<(Exp, StateVector<S>)> {
        let mut out: BTreeMap<Exp, StateVector<S>> = BTreeMap::new();
        for (s, c) in v.terms() {
            let point = s.point.add(beta);
            let base = FockState::exponential(point).weight(&self.lattice);
            let deg = s.mode_degree();
            let limit = (max_weight.min(self.truncation) - base).floor().to_integer() - deg;
            self.vertex_on_state(beta, s, c, |shift| shift <= limit, &mut out);
        }
        out.into_iter()
            .map(|(z, mut v)| {
                v.truncated = false;
                (z, v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}
