#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use paraferm::fusion::{current_para, current_w, enumerate_simples, enumerate_w, para_normalize, topweight_para, topweight_w, ParaLabel, WLabel};

/// Every bijection between parafermion and W labels that preserves top
/// weights and intertwines the simple current actions for some
/// automorphism `p -> s p` of `Z_k`, found by exhaustive backtracking.
pub fn brute_force_identifications(k: i64) -> Vec<BTreeMap<ParaLabel, WLabel>> {
    let labels = enumerate_simples(k);
    let ws = enumerate_w(k);
    let mut out = Vec::new();
    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    backtrack(k, &labels, &ws, 0, &mut map, &mut used, &mut out);
    out.retain(|m| {
        let gen = m[&para_normalize(k, 0, 1)];
        gen.a == gen.b
            && labels
                .iter()
                .all(|&l| (0..k).all(|p| m[&current_para(k, p, l)] == current_w(k, gen.a * p, m[&l])))
    });
    out
}

fn backtrack(
    k: i64,
    labels: &[ParaLabel],
    ws: &[WLabel],
    at: usize,
    map: &mut BTreeMap<ParaLabel, WLabel>,
    used: &mut BTreeSet<WLabel>,
    out: &mut Vec<BTreeMap<ParaLabel, WLabel>>,
) {
    let Some(&l) = labels.get(at) else {
        out.push(map.clone());
        return;
    };
    let target = topweight_para(k, l.i, l.j);
    for &w in ws {
        if used.contains(&w) || topweight_w(k, w.a, w.b) != target {
            continue;
        }
        map.insert(l, w);
        used.insert(w);
        backtrack(k, labels, ws, at + 1, map, used, out);
        used.remove(&w);
        map.remove(&l);
    }
}

/// Number of multisets of parts from `parts` (with repetition) summing to `n`.
pub fn count_partitions(n: usize, parts: &[usize]) -> u64 {
    fn rec(n: usize, parts: &[usize]) -> u64 {
        if n == 0 {
            return 1;
        }
        match parts.split_first() {
            None => 0,
            Some((&p, rest)) => (0..=n / p).map(|m| rec(n - m * p, rest)).sum(),
        }
    }
    rec(n, parts)
}
