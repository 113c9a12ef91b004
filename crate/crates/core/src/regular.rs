//! Regular graphs: odd-cut recognition, perfect matchings, exact fractional
//! edge colorings and the symmetric-difference cycle list.

use std::collections::BTreeMap;

use num::{BigInt, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{gcd, lcm, Cycle, CycleList};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::lp::{maximize, LpOutcome, Q};
use crate::witness::PairKey;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("regularity {0} is too small")]
    DegreeTooSmall(usize),
    #[error("odd set {0:?} has a cut smaller than the degree")]
    NotKGraph(Vec<Vertex>),
    #[error("no fractional {0}-edge-coloring exists over the perfect matchings")]
    NoColoring(usize),
    #[error("multiplicity overflow")]
    Overflow,
    #[error("counted {what} usage {found} differs from {expected}")]
    CountMismatch { what: &'static str, expected: u64, found: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGraphVerdict {
    pub k: usize,
    /// First odd vertex set (by bitmask order) with a small cut.
    pub violating: Option<Vec<Vertex>>,
}

impl KGraphVerdict {
    pub fn is_k_graph(&self) -> bool {
        self.violating.is_none()
    }
}

pub fn is_k_graph(g: &Multigraph) -> Result<KGraphVerdict, RegularError> {
    let k = g.regular_degree().ok_or(RegularError::NotRegular)?;
    let n = g.vertex_count();
    assert!(n < 31, "exhaustive odd-cut check is for small graphs");
    for mask in 1u32..(1 << n) {
        if mask.count_ones() % 2 == 0 {
            continue;
        }
        let side: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if g.cut_size(&side) < k {
            let set = (0..n).filter(|&v| side[v]).collect();
            return Ok(KGraphVerdict { k, violating: Some(set) });
        }
    }
    Ok(KGraphVerdict { k, violating: None })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<EdgeId>,
}

impl Matching {
    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_perfect(&self, g: &Multigraph) -> bool {
        let mut hit = vec![0usize; g.vertex_count()];
        for &e in &self.edges {
            for v in g.ends(e) {
                hit[v] += 1;
            }
        }
        hit.iter().all(|&h| h == 1)
    }
}

/// Every perfect matching, parallel edges kept apart, in lexicographic order.
pub fn enumerate_perfect_matchings(g: &Multigraph) -> Vec<Matching> {
    fn go(adj: &[Vec<(EdgeId, Vertex)>], used: &mut [bool], chosen: &mut Vec<EdgeId>, out: &mut Vec<Matching>) {
        let Some(v) = used.iter().position(|&u| !u) else {
            let mut edges = chosen.clone();
            edges.sort_unstable();
            out.push(Matching { edges });
            return;
        };
        used[v] = true;
        for &(e, w) in &adj[v] {
            if !used[w] {
                used[w] = true;
                chosen.push(e);
                go(adj, used, chosen, out);
                chosen.pop();
                used[w] = false;
            }
        }
        used[v] = false;
    }
    let adj = g.adjacency();
    let mut out = Vec::new();
    go(&adj, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedMatching {
    pub edges: Vec<EdgeId>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub k: usize,
    pub ell: u64,
    pub matchings: Vec<WeightedMatching>,
}

impl FractionalColoring {
    /// Number of matchings, with multiplicity, containing each edge.
    pub fn coverage(&self) -> BTreeMap<EdgeId, u64> {
        let mut cov = BTreeMap::new();
        for m in &self.matchings {
            for &e in &m.edges {
                *cov.entry(e).or_insert(0) += m.multiplicity;
            }
        }
        cov
    }
}

/// Exact weights `y_M ≥ 0` with `Σ y_M = 1` and `Σ_{M∋e} y_M = 1/k`, scaled to
/// the least integral multiplicities.
pub fn fractional_edge_coloring(g: &Multigraph, k: usize) -> Result<FractionalColoring, RegularError> {
    if k <= 1 {
        return Err(RegularError::DegreeTooSmall(k));
    }
    let ms = enumerate_perfect_matchings(g);
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let one = Q::from_integer(BigInt::from(1));
    let mut a = vec![vec![one.clone(); ms.len()]];
    let mut b = vec![one.clone()];
    for &e in &edges {
        a.push(
            ms.iter()
                .map(|m| if m.contains(e) { one.clone() } else { Q::zero() })
                .collect(),
        );
        b.push(Q::new(BigInt::from(1), BigInt::from(k)));
    }
    let c = vec![Q::zero(); ms.len()];
    let LpOutcome::Optimal(sol) = maximize(&a, &b, &c) else {
        return Err(RegularError::NoColoring(k));
    };
    let den = sol
        .x
        .iter()
        .try_fold(k as u64, |acc, v| v.denom().to_u64().map(|d| lcm(acc, d)))
        .ok_or(RegularError::Overflow)?;
    let scale = Q::from_integer(BigInt::from(den));
    let mut weights = Vec::new();
    for (m, y) in ms.iter().zip(&sol.x) {
        let n = (y * &scale).to_integer().to_u64().ok_or(RegularError::Overflow)?;
        if n > 0 {
            weights.push((m, n));
        }
    }
    let g_all = weights.iter().fold(0, |acc, &(_, n)| gcd(acc, n));
    Ok(FractionalColoring {
        k,
        ell: den / g_all,
        matchings: weights
            .into_iter()
            .map(|(m, n)| WeightedMatching {
                edges: m.edges.clone(),
                multiplicity: n / g_all,
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularWitness {
    pub cycles: CycleList,
    pub m1: u64,
    pub m2: u64,
    pub coloring: FractionalColoring,
}

/// Components of `M_i Δ M_j`, each a cycle since both matchings are perfect.
pub fn symmetric_difference_cycles(g: &Multigraph, a: &[EdgeId], b: &[EdgeId]) -> Vec<Cycle> {
    let mut diff: Vec<EdgeId> = a.iter().filter(|e| !b.contains(e)).copied().collect();
    diff.extend(b.iter().filter(|e| !a.contains(e)));
    diff.sort_unstable();
    let mut sub = Multigraph::new(g.vertex_count());
    let mut original = Vec::new();
    for &e in &diff {
        let [u, v] = g.ends(e);
        sub.add_edge(u, v).expect("edges of a loopless graph");
        original.push(e);
    }
    let comp = sub.components();
    let mut groups: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    for (i, &e) in original.iter().enumerate() {
        groups.entry(comp[sub.ends(i)[0]]).or_default().push(e);
    }
    groups
        .into_values()
        .map(|es| Cycle::from_edges(g, &es).expect("symmetric difference of perfect matchings"))
        .collect()
}

/// Per-edge usage and per-pair usage (pairs of distinct edges consecutive at a vertex).
pub fn usage_counts(g: &Multigraph, list: &CycleList) -> (BTreeMap<EdgeId, u64>, BTreeMap<PairKey, u64>) {
    let mut edges: BTreeMap<EdgeId, u64> = g.edge_ids().map(|e| (e, 0)).collect();
    for (e, n) in list.edge_usage() {
        edges.insert(e, n);
    }
    let mut pairs = BTreeMap::new();
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                pairs.insert((v, inc[i], inc[j]), 0);
            }
        }
    }
    for (c, m) in list.iter() {
        for v in c.vertices(g) {
            let (e, f) = c.pair_at(g, v).unwrap();
            *pairs.get_mut(&(v, e, f)).unwrap() += m;
        }
    }
    (edges, pairs)
}

pub fn regular_witness(g: &Multigraph) -> Result<RegularWitness, RegularError> {
    let verdict = is_k_graph(g)?;
    let k = verdict.k;
    if k <= 1 {
        return Err(RegularError::DegreeTooSmall(k));
    }
    if let Some(x) = verdict.violating {
        return Err(RegularError::NotKGraph(x));
    }
    let coloring = fractional_edge_coloring(g, k)?;
    let mut cycles = CycleList::new();
    for (i, a) in coloring.matchings.iter().enumerate() {
        for b in &coloring.matchings[i + 1..] {
            for c in symmetric_difference_cycles(g, &a.edges, &b.edges) {
                cycles.add(c, a.multiplicity * b.multiplicity);
            }
        }
    }
    let l = coloring.ell;
    let per = l / k as u64;
    let m1 = per * (l - per);
    let m2 = per * per;
    let (edges, pairs) = usage_counts(g, &cycles);
    for &n in edges.values() {
        if n != m1 {
            return Err(RegularError::CountMismatch { what: "edge", expected: m1, found: n });
        }
    }
    for &n in pairs.values() {
        if n != m2 {
            return Err(RegularError::CountMismatch { what: "pair", expected: m2, found: n });
        }
    }
    Ok(RegularWitness { cycles, m1, m2, coloring })
}
