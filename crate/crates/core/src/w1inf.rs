//! Symbol-level products in the associated graded of `W_{1+inf}`:
//! `J^m_(r) J^n = ([n]_r - (-1)^r [m]_r) J^{m+n-r}` modulo lower filtration,
//! and the set of symbols reachable from given seeds.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum W1infError {
    #[error("mode r = {r} exceeds m + n = {sum}")]
    BadMode { r: u32, sum: u32 },
}

/// `[n]_a = n (n-1) ... (n-a+1)`, with `[n]_0 = 1`.
pub fn falling_factorial(n: i64, a: u32) -> BigInt {
    (0..a as i64).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

/// Finite combination `sum c_m J^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolElement<S> {
    terms: BTreeMap<u32, S>,
}

impl<S: Scalar> SymbolElement<S> {
    pub fn zero() -> Self {
        SymbolElement { terms: BTreeMap::new() }
    }

    pub fn term(m: u32, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SymbolElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: u32) -> S {
        self.terms.get(&m).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &S)> {
        self.terms.iter()
    }
}

/// Integer coefficient of `J^{m+n-r}` in `J^m_(r) J^n`.
pub fn product_coefficient(m: u32, r: u32, n: u32) -> BigInt {
    let sign = if r.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    falling_factorial(n as i64, r) - sign * falling_factorial(m as i64, r)
}

pub fn symbol_product<S: Scalar>(m: u32, r: u32, n: u32) -> Result<SymbolElement<S>, W1infError> {
    if r > m + n {
        return Err(W1infError::BadMode { r, sum: m + n });
    }
    let c: S = product_coefficient(m, r, n)
        .to_string()
        .parse()
        .ok()
        .expect("integers parse as scalars");
    Ok(SymbolElement::term(m + n - r, c))
}

/// How a symbol was first reached: `J^a_(r) J^b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: u32,
    pub r: u32,
    pub b: u32,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Closure {
    pub seeds: BTreeSet<u32>,
    pub bound: u32,
    pub reachable: BTreeSet<u32>,
    pub witnesses: BTreeMap<u32, Witness>,
}

impl Closure {
    /// Derivation of `J^m` as nested products of seeds, e.g.
    /// `(J^1_(0) J^2)`; `None` if `m` was not reached.
    pub fn derivation(&self, m: u32) -> Option<String> {
        if self.seeds.contains(&m) {
            return Some(format!("J^{m}"));
        }
        let w = self.witnesses.get(&m)?;
        Some(format!(
            "({})_({}) ({})",
            self.derivation(w.a)?,
            w.r,
            self.derivation(w.b)?
        ))
    }
}

/// Indices `m <= bound` reachable from `seeds` by products with nonzero
/// coefficient. Rounds are breadth first and scan pairs in increasing order,
/// so witnesses are deterministic and derivations have minimal depth.
pub fn generation_closure(seeds: &[u32], bound: u32) -> Closure {
    let seeds: BTreeSet<u32> = seeds.iter().copied().filter(|m| *m <= bound).collect();
    let mut reachable = seeds.clone();
    let mut witnesses = BTreeMap::new();
    loop {
        let mut found = BTreeMap::new();
        for &a in &reachable {
            for &b in &reachable {
                for r in 0..=a + b {
                    let t = a + b - r;
                    if t > bound || reachable.contains(&t) || found.contains_key(&t) {
                        continue;
                    }
                    let c = product_coefficient(a, r, b);
                    if !c.is_zero() {
                        found.insert(
                            t,
                            Witness {
                                a,
                                r,
                                b,
                                coefficient: c.to_string(),
                            },
                        );
                    }
                }
            }
        }
        if found.is_empty() {
            break;
        }
        for (t, w) in found {
            reachable.insert(t);
            witnesses.insert(t, w);
        }
    }
    Closure {
        seeds,
        bound,
        reachable,
        witnesses,
    }
}
