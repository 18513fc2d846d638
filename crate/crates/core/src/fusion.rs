//! Simple module labels for the parafermion algebra `K(sl2, k)` and the
//! minimal series W-algebra `W_{k+1,k+2}(sl_k)`, their top weights,
//! simple-current and involution actions, and the search that matches the
//! two families.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Top weights are exact rationals with small denominators.
pub type Weight = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("level must be at least {min}, got {k}")]
    Level { k: i64, min: i64 },
    #[error("label index {0} out of range")]
    BadLabel(i64),
    #[error("search left {count} identifications where exactly two exist")]
    AmbiguousIdentification { count: usize },
    #[error("search left no identification")]
    NoIdentification,
}

/// `M^{i,j}` with `0 <= j < i <= k` once normalized.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ParaLabel {
    pub i: i64,
    pub j: i64,
}

/// `M(Lambda_a + Lambda_b)` with `0 <= a <= b <= k-1` once normalized.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct WLabel {
    pub a: i64,
    pub b: i64,
}

impl fmt::Display for ParaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M^{{{},{}}}", self.i, self.j)
    }
}

impl fmt::Display for WLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M(L{}+L{})", self.a, self.b)
    }
}

/// Canonical representative of `M^{i,j}` using `j mod k` and
/// `M^{i,j} = M^{k-i,j-i}`.
pub fn para_normalize(k: i64, i: i64, j: i64) -> ParaLabel {
    assert!((0..=k).contains(&i), "i out of range");
    let j = j.rem_euclid(k);
    if j < i {
        ParaLabel { i, j }
    } else {
        ParaLabel {
            i: k - i,
            j: (j - i).rem_euclid(k),
        }
    }
}

pub fn w_normalize(k: i64, a: i64, b: i64) -> WLabel {
    let (a, b) = (a.rem_euclid(k), b.rem_euclid(k));
    WLabel { a: a.min(b), b: a.max(b) }
}

/// `P(i,j) = k(i-2j) - (i-2j)^2 + 2k(i-j+1)j`.
pub fn p_value(k: i64, i: i64, j: i64) -> i64 {
    let d = i - 2 * j;
    k * d - d * d + 2 * k * (i - j + 1) * j
}

/// Top weight of `M^{i,j}`: `P(i,j)/2k(k+2)` on the canonical representative.
pub fn topweight_para(k: i64, i: i64, j: i64) -> Weight {
    let l = para_normalize(k, i, j);
    Weight::new(p_value(k, l.i, l.j), 2 * k * (k + 2))
}

/// Top weight of `M(Lambda_a + Lambda_b)`, evaluated with `a <= b`.
pub fn topweight_w(k: i64, a: i64, b: i64) -> Weight {
    let WLabel { a: i, b: j } = w_normalize(k, a, b);
    let num = -i * i + i * (k * (2 * k + 3) - 2 * j * (k + 1)) + j * (k - j);
    Weight::new(num, 2 * k * (k + 2))
}

/// Involution induced by `theta` on parafermion labels: `M^{i,j} -> M^{i,i-j}`.
pub fn theta_para(k: i64, l: ParaLabel) -> ParaLabel {
    para_normalize(k, l.i, l.i - l.j)
}

/// Involution on W labels: `M(L_a + L_b) -> M(L_{-a} + L_{-b})`.
pub fn theta_w(k: i64, l: WLabel) -> WLabel {
    w_normalize(k, -l.a, -l.b)
}

/// `M^p x M^{i,j} = M^{i,j+p}`.
pub fn current_para(k: i64, p: i64, l: ParaLabel) -> ParaLabel {
    para_normalize(k, l.i, l.j + p)
}

/// `M(2 L_p) x M(L_a + L_b) = M(L_{a+p} + L_{b+p})`.
pub fn current_w(k: i64, p: i64, l: WLabel) -> WLabel {
    w_normalize(k, l.a + p, l.b + p)
}

/// Canonical parafermion labels, `k(k+1)/2` of them.
pub fn enumerate_simples(k: i64) -> Vec<ParaLabel> {
    let mut out = Vec::new();
    for i in 1..=k {
        for j in 0..i {
            out.push(ParaLabel { i, j });
        }
    }
    out
}

pub fn enumerate_w(k: i64) -> Vec<WLabel> {
    let mut out = Vec::new();
    for a in 0..k {
        for b in a..k {
            out.push(WLabel { a, b });
        }
    }
    out
}

/// `M^{i,j} -> M(L_j + L_{j-i})`.
pub fn form1(k: i64, l: ParaLabel) -> WLabel {
    w_normalize(k, l.j, l.j - l.i)
}

/// `M^{i,j} -> M(L_{-j} + L_{i-j})`.
pub fn form2(k: i64, l: ParaLabel) -> WLabel {
    w_normalize(k, -l.j, l.i - l.j)
}

/// Top weight of the lattice module `V_{Z gamma + s gamma/2k}`.
pub fn lattice_top_weight(k: i64, s: i64) -> Weight {
    let r = s.rem_euclid(2 * k);
    let m = r.min(2 * k - r);
    Weight::new(m * m, 4 * k)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Form1,
    Form2,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Bijection {
    pub form: Option<Form>,
    pub pairs: Vec<(ParaLabel, WLabel)>,
}

impl Bijection {
    pub fn image(&self, l: ParaLabel) -> Option<WLabel> {
        self.pairs.iter().find(|(p, _)| *p == l).map(|(_, w)| *w)
    }

    pub fn as_map(&self) -> BTreeMap<ParaLabel, WLabel> {
        self.pairs.iter().copied().collect()
    }
}

/// One step of the search, kept for reporting.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SearchEvent {
    pub stage: i64,
    pub candidate: String,
    pub outcome: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Identification {
    pub k: i64,
    pub bijections: Vec<Bijection>,
    pub trace: Vec<SearchEvent>,
}

#[derive(Clone, Debug)]
struct Partial {
    map: BTreeMap<ParaLabel, WLabel>,
    shift: i64,
}

impl Partial {
    /// Assigns `l -> w` and its orbit under the simple currents. Fails on a
    /// clash with earlier assignments or on a repeated image.
    fn assign_orbit(&mut self, k: i64, l: ParaLabel, w: WLabel) -> Result<(), String> {
        for p in 0..k {
            let lp = current_para(k, p, l);
            let wp = current_w(k, self.shift * p, w);
            match self.map.get(&lp) {
                Some(old) if *old != wp => return Err(format!("{lp} already sent to {old}, fusion forces {wp}")),
                Some(_) => {}
                None => {
                    if let Some((other, _)) = self.map.iter().find(|(_, x)| **x == wp) {
                        return Err(format!("{wp} is already the image of {other}"));
                    }
                    self.map.insert(lp, wp);
                }
            }
        }
        Ok(())
    }

    /// Summands `V_{Z gamma + (i-2j) gamma/2k} x M^{i,j}` of `L(k,i)` must
    /// have top weights differing by integers.
    fn integral_in_module(&self, k: i64, i: i64) -> Result<(), String> {
        let total = |j: i64| -> Option<Weight> {
            let w = self.map.get(&para_normalize(k, i, j))?;
            Some(lattice_top_weight(k, i - 2 * j) + topweight_w(k, w.a, w.b))
        };
        let Some(base) = total(0) else { return Ok(()) };
        for j in 1..k {
            if let Some(t) = total(j) {
                let diff = t - base;
                if !diff.is_integer() {
                    return Err(format!("top weights in L({k},{i}) differ by {diff} between j=0 and j={j}"));
                }
            }
        }
        Ok(())
    }
}

/// Reconstructs every matching of simple modules that respects top weights of
/// the simple currents, fusion with simple currents, minimal top weights and
/// integrality of weights inside each `L(k,i)`.
pub fn identify(k: i64) -> Result<Identification, FusionError> {
    if k < 3 {
        return Err(FusionError::Level { k, min: 3 });
    }
    let mut trace = Vec::new();
    let current_weight = Weight::new(k - 1, k);
    let mut partials = Vec::new();
    // the generator M^1 goes to a simple current of the same top weight
    for s in 1..k {
        let w = WLabel { a: s, b: s };
        if topweight_w(k, s, s) != current_weight {
            continue;
        }
        let mut part = Partial {
            map: BTreeMap::new(),
            shift: s,
        };
        let res = part.assign_orbit(k, para_normalize(k, 0, 0), WLabel { a: 0, b: 0 });
        let outcome = match res {
            Ok(()) => {
                partials.push(part);
                "accepted".to_string()
            }
            Err(e) => e,
        };
        trace.push(SearchEvent {
            stage: 0,
            candidate: format!("{} -> {w}", para_normalize(k, 0, 1)),
            outcome,
        });
    }
    for i in 1..=k / 2 {
        let mut next = Vec::new();
        for part in partials {
            let used: BTreeSet<WLabel> = part.map.values().copied().collect();
            let free: Vec<WLabel> = enumerate_w(k).into_iter().filter(|w| !used.contains(w)).collect();
            let Some(min) = free.iter().map(|w| topweight_w(k, w.a, w.b)).min() else {
                continue;
            };
            let seed = para_normalize(k, i, 0);
            if topweight_para(k, seed.i, seed.j) != min {
                trace.push(SearchEvent {
                    stage: i,
                    candidate: format!("{seed}"),
                    outcome: format!("minimal free top weight {min} differs from that of {seed}"),
                });
                continue;
            }
            for w in free.iter().filter(|w| topweight_w(k, w.a, w.b) == min) {
                let mut cand = part.clone();
                let res = cand
                    .assign_orbit(k, seed, *w)
                    .and_then(|()| cand.integral_in_module(k, i));
                let outcome = match res {
                    Ok(()) => {
                        next.push(cand);
                        "accepted".to_string()
                    }
                    Err(e) => e,
                };
                trace.push(SearchEvent {
                    stage: i,
                    candidate: format!("{seed} -> {w} (M^{{0,1}} -> M(2L{}))", part.shift),
                    outcome,
                });
            }
        }
        partials = next;
    }
    let total = enumerate_simples(k).len();
    let bijections: Vec<Bijection> = partials
        .into_iter()
        .filter(|p| p.map.len() == total)
        .map(|p| {
            let pairs: Vec<_> = p.map.into_iter().collect();
            let form = if pairs.iter().all(|(l, w)| form1(k, *l) == *w) {
                Some(Form::Form1)
            } else if pairs.iter().all(|(l, w)| form2(k, *l) == *w) {
                Some(Form::Form2)
            } else {
                None
            };
            Bijection { form, pairs }
        })
        .collect();
    match bijections.len() {
        0 => Err(FusionError::NoIdentification),
        2 => Ok(Identification { k, bijections, trace }),
        count => Err(FusionError::AmbiguousIdentification { count }),
    }
}

/// Central charge `c_{p,q}` of `W_{p,q}(sl_k)`.
pub fn w_central_charge(k: i64, p: i64, q: i64) -> Weight {
    Weight::new(-(k - 1) * ((k + 1) * p - k * q) * (k * p - (k + 1) * q), p * q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_examples() {
        assert_eq!(para_normalize(3, 1, 2), ParaLabel { i: 2, j: 1 });
        assert_eq!(para_normalize(3, 2, 1), ParaLabel { i: 2, j: 1 });
        for j in 0..3 {
            assert_eq!(para_normalize(3, 0, j), ParaLabel { i: 3, j });
        }
    }

    #[test]
    fn top_weight_examples() {
        assert_eq!(topweight_para(3, 1, 0), Weight::new(1, 15));
        assert_eq!(topweight_para(5, 5, 0), Weight::new(0, 1));
        assert_eq!(topweight_para(3, 0, 1), Weight::new(2, 3));
        assert_eq!(topweight_w(3, 0, 2), Weight::new(1, 15));
        assert_eq!(topweight_w(7, 0, 0), Weight::new(0, 1));
        for k in 2..12 {
            for p in 0..k {
                assert_eq!(topweight_w(k, p, p), Weight::new(p * (k - p), k));
            }
        }
    }

    #[test]
    fn actions() {
        assert_eq!(theta_para(3, ParaLabel { i: 2, j: 1 }), ParaLabel { i: 2, j: 1 });
        assert_eq!(theta_para(3, para_normalize(3, 0, 1)), para_normalize(3, 0, 2));
        assert_eq!(current_para(3, 1, para_normalize(3, 0, 2)), para_normalize(3, 0, 0));
        assert_eq!(current_w(3, 1, WLabel { a: 2, b: 2 }), WLabel { a: 0, b: 0 });
        let l = ParaLabel { i: 2, j: 1 };
        assert_eq!(current_para(3, 0, l), l);
    }

    #[test]
    fn identify_small_levels() {
        let id = identify(3).unwrap();
        assert_eq!(id.bijections.len(), 2);
        let f1 = id.bijections.iter().find(|b| b.form == Some(Form::Form1)).unwrap();
        assert_eq!(f1.image(ParaLabel { i: 1, j: 0 }), Some(WLabel { a: 0, b: 2 }));
        let id = identify(4).unwrap();
        let f1 = id.bijections.iter().find(|b| b.form == Some(Form::Form1)).unwrap();
        let f2 = id.bijections.iter().find(|b| b.form == Some(Form::Form2)).unwrap();
        for (l, w) in &f1.pairs {
            assert_eq!(f2.image(*l), Some(theta_w(4, *w)));
        }
    }

    #[test]
    fn simple_counts() {
        assert_eq!(enumerate_simples(3).len(), 6);
        assert_eq!(enumerate_simples(4).len(), 10);
        assert_eq!(enumerate_simples(2).len(), 3);
    }

    #[test]
    fn central_charge_at_minimal_pair() {
        for k in 2..=20 {
            assert_eq!(w_central_charge(k, k + 1, k + 2), Weight::new(2 * (k - 1), k + 2));
        }
    }
}
