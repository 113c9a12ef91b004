//! Cycle-list witnesses: the σ-balanced pair condition, an exact LP search
//! that either produces a witness or a dual refutation, and subdivision.

use std::collections::BTreeMap;

use num::{BigInt, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{enumerate_cycles, Cycle, CycleError, CycleList};
use crate::graph::{EdgeId, GraphError, Multigraph, Vertex};
use crate::lp::{clear_denominators, maximize, q, LpOutcome, Q};
use crate::whitehead::{is_positive, mu, parse_vertex_name, vertex_name, WhiteheadError, WhiteheadGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("empty cycle list")]
    Empty,
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Whitehead(#[from] WhiteheadError),
    #[error("witness was made for graph {found}, not {expected}")]
    GraphMismatch { expected: String, found: String },
    #[error("multiplicity {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("subdivision length {m} differs from the edge count {edges}; the involution needs equality")]
    SubdivisionLength { m: usize, edges: usize },
    #[error("subdivision length must be positive")]
    ZeroSubdivision,
    #[error("subdivided involution is not a fixed-point-free involution at vertex {0}")]
    BadInvolution(Vertex),
    #[error("refutation check failed: {0}")]
    Certificate(String),
    #[error("malformed witness json: {0}")]
    Json(String),
}

/// `(v, e, f)` with `e < f`, both edges at `v`.
pub type PairKey = (Vertex, EdgeId, EdgeId);

fn ordered(v: Vertex, e: EdgeId, f: EdgeId) -> PairKey {
    (v, e.min(f), e.max(f))
}

/// Multiplicity of cycles containing both edges of each pair, over pairs that occur.
pub fn pair_counts(g: &Multigraph, list: &CycleList) -> BTreeMap<PairKey, u64> {
    let mut counts = BTreeMap::new();
    for (c, m) in list.iter() {
        for v in c.vertices(g) {
            let (e, f) = c.pair_at(g, v).expect("cycle vertex has two cycle edges");
            *counts.entry((v, e, f)).or_insert(0) += m;
        }
    }
    counts
}

/// All pairs of distinct edges at `v`, in lexicographic order.
pub fn pairs_at(g: &Multigraph, v: Vertex) -> Vec<(EdgeId, EdgeId)> {
    let inc = g.incident(v);
    let mut out = Vec::new();
    for i in 0..inc.len() {
        for j in i + 1..inc.len() {
            out.push((inc[i], inc[j]));
        }
    }
    out
}

/// σ_v applied to a pair at `v`, as a pair key at μ(v).
pub fn sigma_pair(wg: &WhiteheadGraph, (v, e, f): PairKey) -> PairKey {
    ordered(mu(v), wg.sigma_edge(v, e), wg.sigma_edge(v, f))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub vertex: String,
    pub pair: (EdgeId, EdgeId),
    pub count: u64,
    pub image_vertex: String,
    pub image_pair: (EdgeId, EdgeId),
    pub image_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessVerdict {
    pub pass: bool,
    pub failures: Vec<PairFailure>,
    /// Edges whose usage differs from the usage of their σ-images (strict mode only).
    pub edge_failures: Vec<(String, EdgeId)>,
    pub long_cycle_present: bool,
    pub per_edge_usage: BTreeMap<EdgeId, u64>,
}

/// Checks that every cycle belongs to the graph, then the pair balance at
/// every vertex. `strict` additionally requires usage(e) = usage(σ_v(e)).
pub fn verify_witness(
    wg: &WhiteheadGraph,
    list: &CycleList,
    require_long: bool,
    strict: bool,
) -> Result<WitnessVerdict, WitnessError> {
    if list.is_empty() {
        return Err(WitnessError::Empty);
    }
    let g = wg.graph();
    for (c, _) in list.iter() {
        let again = Cycle::from_edges(g, c.edges())?;
        if &again != c {
            return Err(CycleError::NotACycle(c.edges().to_vec()).into());
        }
    }
    let counts = pair_counts(g, list);
    let mut failures = Vec::new();
    for v in 0..wg.vertex_count() {
        for (e, f) in pairs_at(g, v) {
            let key = (v, e, f);
            let image = sigma_pair(wg, key);
            let a = counts.get(&key).copied().unwrap_or(0);
            let b = counts.get(&image).copied().unwrap_or(0);
            if a != b {
                failures.push(PairFailure {
                    vertex: vertex_name(v),
                    pair: (e, f),
                    count: a,
                    image_vertex: vertex_name(image.0),
                    image_pair: (image.1, image.2),
                    image_count: b,
                });
            }
        }
    }
    let per_edge_usage = {
        let mut u = list.edge_usage();
        for e in g.edge_ids() {
            u.entry(e).or_insert(0);
        }
        u
    };
    let mut edge_failures = Vec::new();
    if strict {
        for v in 0..wg.vertex_count() {
            for e in g.incident(v) {
                if per_edge_usage[&e] != per_edge_usage[&wg.sigma_edge(v, e)] {
                    edge_failures.push((vertex_name(v), e));
                }
            }
        }
    }
    let long_cycle_present = list.has_long();
    Ok(WitnessVerdict {
        pass: failures.is_empty() && edge_failures.is_empty() && (long_cycle_present || !require_long),
        failures,
        edge_failures,
        long_cycle_present,
        per_edge_usage,
    })
}

/// One balance row per pair at a positive vertex; rows with no support are dropped.
struct BalanceSystem {
    keys: Vec<PairKey>,
    /// `rows[r][i]` is the coefficient of cycle `i`.
    rows: Vec<Vec<i64>>,
}

fn balance_system(wg: &WhiteheadGraph, cycles: &[Cycle]) -> BalanceSystem {
    let g = wg.graph();
    let cycle_pairs: Vec<Vec<PairKey>> = cycles
        .iter()
        .map(|c| {
            c.vertices(g)
                .into_iter()
                .map(|v| {
                    let (e, f) = c.pair_at(g, v).unwrap();
                    (v, e, f)
                })
                .collect()
        })
        .collect();
    let mut keys = Vec::new();
    let mut rows = Vec::new();
    for v in (0..wg.vertex_count()).filter(|&v| is_positive(v)) {
        for (e, f) in pairs_at(g, v) {
            let key = (v, e, f);
            let image = sigma_pair(wg, key);
            let row: Vec<i64> = cycle_pairs
                .iter()
                .map(|ps| i64::from(ps.contains(&key)) - i64::from(ps.contains(&image)))
                .collect();
            if row.iter().any(|&x| x != 0) {
                keys.push(key);
                rows.push(row);
            }
        }
    }
    BalanceSystem { keys, rows }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Feasible(CycleList),
    Infeasible(Refutation),
}

/// Dual vector `y` with `Σ_r y_r · A_{r,C} ≥ 1` for every cycle `C` in the
/// objective (every long cycle, or every cycle), and `≥ 0` for the rest.
/// Summing over any nonnegative balanced combination gives `0 ≥ positive`.
#[derive(Clone, Debug, PartialEq)]
pub struct Refutation {
    pub require_long: bool,
    pub entries: Vec<(PairKey, Q)>,
}

/// Exact LP over all simple cycles: maximise the weight on long cycles (or
/// all cycles) subject to the balance rows and `Σ x ≤ 1`.
pub fn search_witness_lp(wg: &WhiteheadGraph, require_long: bool) -> Result<LpResult, WitnessError> {
    let cycles = enumerate_cycles(wg.graph());
    let sys = balance_system(wg, &cycles);
    let n = cycles.len();
    let mut a: Vec<Vec<Q>> = sys
        .rows
        .iter()
        .map(|r| {
            let mut row: Vec<Q> = r.iter().map(|&x| q(x)).collect();
            row.push(q(0));
            row
        })
        .collect();
    let mut norm = vec![q(1); n];
    norm.push(q(1));
    a.push(norm);
    let mut b = vec![q(0); sys.rows.len()];
    b.push(q(1));
    let mut c: Vec<Q> = cycles
        .iter()
        .map(|cy| q(i64::from(cy.is_long() || !require_long)))
        .collect();
    c.push(q(0));

    let solution = match maximize(&a, &b, &c) {
        LpOutcome::Optimal(s) => s,
        other => unreachable!("bounded feasible program, got {other:?}"),
    };
    if solution.value.is_positive() {
        let ints = clear_denominators(&solution.x[..n]);
        let mut list = CycleList::new();
        for (cy, m) in cycles.iter().zip(ints) {
            if m.is_zero() {
                continue;
            }
            let m = m.to_u64().ok_or_else(|| WitnessError::Overflow(m.to_string()))?;
            list.add(cy.clone(), m);
        }
        return Ok(LpResult::Feasible(list));
    }
    let entries = sys
        .keys
        .iter()
        .zip(&solution.duals)
        .filter(|(_, y)| !y.is_zero())
        .map(|(k, y)| (*k, y.clone()))
        .collect();
    Ok(LpResult::Infeasible(Refutation { require_long, entries }))
}

impl Refutation {
    /// Recomputes every cycle's row combination from scratch.
    pub fn check(&self, wg: &WhiteheadGraph) -> Result<(), WitnessError> {
        let g = wg.graph();
        let y: BTreeMap<PairKey, &Q> = self.entries.iter().map(|(k, v)| (*k, v)).collect();
        for (key, _) in &self.entries {
            let (v, e, f) = *key;
            if !is_positive(v) || !g.is_incident(e, v) || !g.is_incident(f, v) || e >= f {
                return Err(WitnessError::Certificate(format!(
                    "{} is not a pair at a positive vertex",
                    describe(*key)
                )));
            }
        }
        for c in enumerate_cycles(g) {
            let mut total = Q::zero();
            for v in c.vertices(g) {
                let (e, f) = c.pair_at(g, v).unwrap();
                if is_positive(v) {
                    if let Some(val) = y.get(&(v, e, f)) {
                        total += *val;
                    }
                } else {
                    // The pair at μ(v) whose σ-image is {e, f}.
                    let pre = (mu(v), wg.sigma_edge(v, e), wg.sigma_edge(v, f));
                    let pre = ordered(pre.0, pre.1, pre.2);
                    if let Some(val) = y.get(&pre) {
                        total -= *val;
                    }
                }
            }
            let need = if c.is_long() || !self.require_long { q(1) } else { q(0) };
            if total < need {
                return Err(WitnessError::Certificate(format!(
                    "cycle {:?} has combination {} < {}",
                    c.edges(),
                    total,
                    need
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, wg: &WhiteheadGraph) -> RefutationJson {
        RefutationJson {
            graph_hash: wg.hash(),
            infeasible: true,
            require_long: self.require_long,
            certificate: self
                .entries
                .iter()
                .map(|(k, v)| DualEntry {
                    vertex: vertex_name(k.0),
                    pair: (k.1, k.2),
                    value: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &RefutationJson, rank: usize) -> Result<Self, WitnessError> {
        let mut entries = Vec::new();
        for d in &j.certificate {
            let v = parse_vertex_name(&d.vertex, rank)?;
            let value: Q = d
                .value
                .parse()
                .map_err(|_| WitnessError::Json(format!("bad rational {:?}", d.value)))?;
            entries.push((ordered(v, d.pair.0, d.pair.1), value));
        }
        Ok(Refutation {
            require_long: j.require_long,
            entries,
        })
    }
}

fn describe((v, e, f): PairKey) -> String {
    format!("({}, {{{}, {}}})", vertex_name(v), e, f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleJson {
    pub edges: Vec<EdgeId>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub removed_edge: Option<EdgeId>,
    pub c1: u64,
    pub c2: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub graph_hash: String,
    pub cycles: Vec<CycleJson>,
    pub long_cycle_present: bool,
    pub per_edge_usage: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants_per_level: Option<Vec<LevelJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualEntry {
    pub vertex: String,
    pub pair: (EdgeId, EdgeId),
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationJson {
    pub graph_hash: String,
    pub infeasible: bool,
    pub require_long: bool,
    pub certificate: Vec<DualEntry>,
}

pub fn witness_json(wg: &WhiteheadGraph, list: &CycleList) -> WitnessJson {
    let mut usage: BTreeMap<String, u64> = wg.graph().edge_ids().map(|e| (e.to_string(), 0)).collect();
    for (e, n) in list.edge_usage() {
        usage.insert(e.to_string(), n);
    }
    WitnessJson {
        graph_hash: wg.hash(),
        cycles: list
            .iter()
            .map(|(c, m)| CycleJson {
                edges: c.edges().to_vec(),
                multiplicity: m,
            })
            .collect(),
        long_cycle_present: list.has_long(),
        per_edge_usage: usage,
        method: None,
        c1: None,
        c2: None,
        constants_per_level: None,
    }
}

/// Rebuilds the cycle list, checking that it was made for this graph.
pub fn parse_witness(wg: &WhiteheadGraph, j: &WitnessJson) -> Result<CycleList, WitnessError> {
    let expected = wg.hash();
    if j.graph_hash != expected {
        return Err(WitnessError::GraphMismatch {
            expected,
            found: j.graph_hash.clone(),
        });
    }
    let mut list = CycleList::new();
    for c in &j.cycles {
        list.add(Cycle::from_edges(wg.graph(), &c.edges)?, c.multiplicity);
    }
    Ok(list)
}

pub fn witness_hash(j: &WitnessJson) -> String {
    crate::canonical_hash(j)
}

/// Every edge replaced by a path of length `m`. Internal vertex `(i, j)` is
/// the `j`-th (1-based) vertex on the path of edge `i` (0-based), counted
/// from the edge's first endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: Multigraph,
    pub m: usize,
    /// Extended involution, present when `m` equals the original edge count.
    pub mu: Option<Vec<Vertex>>,
    pub internal: BTreeMap<(usize, usize), Vertex>,
    /// `paths[i]` lists the new edge ids replacing edge `i`, first endpoint first.
    pub paths: Vec<Vec<EdgeId>>,
}

/// With `extend_mu`, internal vertices are paired by `(i, j) ↔ (j, i - 1)`
/// for `1 ≤ j < i ≤ m` (edges numbered from 1), which needs `m = |E|`.
pub fn subdivide(g: &Multigraph, mu_of: &[Vertex], m: usize, extend_mu: bool) -> Result<Subdivision, WitnessError> {
    if m == 0 {
        return Err(WitnessError::ZeroSubdivision);
    }
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    if extend_mu && m != ids.len() {
        return Err(WitnessError::SubdivisionLength { m, edges: ids.len() });
    }
    let n0 = g.vertex_count();
    let mut out = Multigraph::new(n0 + ids.len() * (m - 1));
    let mut internal = BTreeMap::new();
    let mut next = n0;
    for i in 0..ids.len() {
        for j in 1..m {
            internal.insert((i, j), next);
            next += 1;
        }
    }
    let mut paths = Vec::new();
    for (i, &e) in ids.iter().enumerate() {
        let [a, b] = g.ends(e);
        let chain: Vec<Vertex> = std::iter::once(a)
            .chain((1..m).map(|j| internal[&(i, j)]))
            .chain(std::iter::once(b))
            .collect();
        let mut path = Vec::new();
        for w in chain.windows(2) {
            path.push(out.add_edge(w[0], w[1])?);
        }
        paths.push(path);
    }
    let mu = if extend_mu {
        let mut mu2: Vec<Vertex> = mu_of.to_vec();
        mu2.resize(out.vertex_count(), usize::MAX);
        // One-based (i, j) ↔ (j, i - 1) becomes zero-based edge index i-1, j-1 on the left.
        for i in 2..=m {
            for j in 1..i {
                let x = internal[&(i - 1, j)];
                let y = internal[&(j - 1, i - 1)];
                mu2[x] = y;
                mu2[y] = x;
            }
        }
        for (v, &w) in mu2.iter().enumerate() {
            if w == usize::MAX || w == v || mu2[w] != v {
                return Err(WitnessError::BadInvolution(v));
            }
        }
        Some(mu2)
    } else {
        None
    };
    Ok(Subdivision {
        graph: out,
        m,
        mu,
        internal,
        paths,
    })
}

impl Subdivision {
    /// Relabels vertices so that μ′ becomes `v ^ 1` and keeps σ on the
    /// original vertices; a degree-2 internal vertex maps its smaller edge
    /// id to the smaller one at its partner.
    pub fn to_whitehead(&self, original: &WhiteheadGraph) -> Result<WhiteheadGraph, WitnessError> {
        let mu2 = self.mu.as_ref().ok_or(WitnessError::SubdivisionLength {
            m: self.m,
            edges: original.graph().edge_count(),
        })?;
        let n0 = original.vertex_count();
        let mut label = vec![usize::MAX; self.graph.vertex_count()];
        for (v, l) in label.iter_mut().enumerate().take(n0) {
            *l = v;
        }
        let mut next = n0;
        for v in n0..self.graph.vertex_count() {
            if label[v] == usize::MAX {
                label[v] = next;
                label[mu2[v]] = next + 1;
                next += 2;
            }
        }
        let mut unlabel = vec![0; label.len()];
        for (v, &l) in label.iter().enumerate() {
            unlabel[l] = v;
        }
        let edges: Vec<(Vertex, Vertex)> = self
            .graph
            .edge_ids()
            .map(|e| {
                let [a, b] = self.graph.ends(e);
                (label[a], label[b])
            })
            .collect();
        let ids: Vec<EdgeId> = original.graph().edge_ids().collect();
        let index_of: BTreeMap<EdgeId, usize> = ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut sigma_at: BTreeMap<Vertex, BTreeMap<EdgeId, EdgeId>> = BTreeMap::new();
        for nv in 0..self.graph.vertex_count() {
            let v = unlabel[nv];
            let mut map = BTreeMap::new();
            if v < n0 {
                for e in original.graph().incident(v) {
                    let image = original.sigma_edge(v, e);
                    map.insert(self.end_segment(index_of[&e], original, v), self.end_segment(index_of[&image], original, mu(v)));
                }
            } else {
                let here = self.graph.incident(v);
                let there = self.graph.incident(mu2[v]);
                for (x, y) in here.into_iter().zip(there) {
                    map.insert(x, y);
                }
            }
            sigma_at.insert(nv, map);
        }
        Ok(WhiteheadGraph::from_parts(label.len() / 2, &edges, &sigma_at)?)
    }

    /// The segment of original edge index `i` that touches original vertex `v`.
    fn end_segment(&self, i: usize, original: &WhiteheadGraph, v: Vertex) -> EdgeId {
        let e = original.graph().edge_ids().nth(i).unwrap();
        if original.graph().ends(e)[0] == v {
            self.paths[i][0]
        } else {
            *self.paths[i].last().unwrap()
        }
    }
}

/// Reference value from the brute-force cross-check: multiplicity vectors
/// with entries in `0..=BRUTE_FORCE_BOUND`.
pub const BRUTE_FORCE_BOUND: u64 = 2;

/// Searches all multiplicity vectors with entries `≤ bound` for a witness.
pub fn brute_force_witness(wg: &WhiteheadGraph, require_long: bool, bound: u64) -> Option<CycleList> {
    let cycles = enumerate_cycles(wg.graph());
    let sys = balance_system(wg, &cycles);
    let n = cycles.len();
    let mut x = vec![0u64; n];
    loop {
        let mut i = 0;
        while i < n && x[i] == bound {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            return None;
        }
        x[i] += 1;
        let ok_rows = sys
            .rows
            .iter()
            .all(|r| r.iter().zip(&x).map(|(&a, &m)| a * m as i64).sum::<i64>() == 0);
        let ok_long = !require_long || cycles.iter().zip(&x).any(|(c, &m)| m > 0 && c.is_long());
        if ok_rows && ok_long {
            let mut list = CycleList::new();
            for (c, &m) in cycles.iter().zip(&x) {
                list.add(c.clone(), m);
            }
            return Some(list);
        }
    }
}

/// Integer part helper for callers that hold rational multiplicities.
pub fn big_to_u64(v: &BigInt) -> Result<u64, WitnessError> {
    v.to_u64().ok_or_else(|| WitnessError::Overflow(v.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::WordList;

    fn wg(rank: usize, texts: &[&str]) -> WhiteheadGraph {
        WhiteheadGraph::build(&WordList::from_texts(rank, texts).unwrap()).unwrap()
    }

    fn all_bigons(g: &WhiteheadGraph, u: Vertex, v: Vertex) -> Vec<Cycle> {
        enumerate_cycles(g.graph())
            .into_iter()
            .filter(|c| c.len() == 2 && c.vertices(g.graph()).contains(&u) && c.vertices(g.graph()).contains(&v))
            .collect()
    }

    /// Phase 1 leaves a redundant row whose stuck artificial sits in another
    /// row's position; the dual solve must drop the right original row.
    #[test]
    fn lp_with_moved_artificial() {
        let wg = WhiteheadGraph::from_json(r#"{"edges":[{"id":0,"u":"a1-","v":"a2-"},{"id":1,"u":"a1","v":"a2"},{"id":2,"u":"a1-","v":"a2"},{"id":3,"u":"a1","v":"a2-"},{"id":4,"u":"a1-","v":"a2"},{"id":5,"u":"a1","v":"a2"},{"id":6,"u":"a1","v":"a2-"},{"id":7,"u":"a1-","v":"a2-"}],"rank":2,"sigma":{"a1":{"1":"4","3":"0","5":"2","6":"7"},"a1-":{"0":"3","2":"5","4":"1","7":"6"},"a2":{"1":"6","2":"0","4":"3","5":"7"},"a2-":{"0":"2","3":"4","6":"1","7":"5"}}}"#).unwrap();
        for require_long in [true, false] {
            match search_witness_lp(&wg, require_long).unwrap() {
                LpResult::Feasible(l) => assert!(verify_witness(&wg, &l, require_long, false).unwrap().pass),
                LpResult::Infeasible(_) => panic!("instance has a witness"),
            }
        }
    }

    #[test]
    fn commutator_square_passes() {
        let g = wg(2, &["abAB"]);
        let cycles = enumerate_cycles(g.graph());
        assert_eq!(cycles.len(), 1);
        let list = CycleList::single(cycles[0].clone(), 1);
        let v = verify_witness(&g, &list, true, false).unwrap();
        assert!(v.pass && v.long_cycle_present);
        assert!(v.per_edge_usage.values().all(|&u| u == 1));
        assert_eq!(verify_witness(&g, &CycleList::new(), false, false), Err(WitnessError::Empty));
    }

    #[test]
    fn lone_bigon_is_unbalanced() {
        let g = wg(2, &["a(aB)^3B^2"]);
        let b = all_bigons(&g, 2, 3);
        assert_eq!(b.len(), 1);
        let v = verify_witness(&g, &CycleList::single(b[0].clone(), 1), false, false).unwrap();
        assert!(!v.pass);
        assert!(!v.failures.is_empty());
        for f in &v.failures {
            assert_ne!(f.count, f.image_count);
        }
    }

    #[test]
    fn foreign_cycle_rejected() {
        let g = wg(2, &["abAB"]);
        let other = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]).unwrap();
        let c = Cycle::from_edges(&other, &[3, 4]).unwrap();
        assert!(verify_witness(&g, &CycleList::single(c, 1), false, false).is_err());
    }

    #[test]
    fn lp_on_small_words() {
        for (text, long) in [("abAB", true), ("aBaab", true)] {
            let g = wg(2, &[text]);
            match search_witness_lp(&g, long).unwrap() {
                LpResult::Feasible(list) => {
                    let v = verify_witness(&g, &list, long, false).unwrap();
                    assert!(v.pass, "{text}");
                }
                LpResult::Infeasible(_) => panic!("{text} should be feasible"),
            }
        }
    }

    #[test]
    fn example_refuted_with_checked_certificate() {
        let g = wg(2, &["a(aB)^3B^2"]);
        let LpResult::Infeasible(cert) = search_witness_lp(&g, true).unwrap() else {
            panic!("expected a refutation")
        };
        cert.check(&g).unwrap();
        let j = cert.to_json(&g);
        let back = Refutation::from_json(&j, 2).unwrap();
        back.check(&g).unwrap();

        let mut broken = cert.clone();
        broken.entries.iter_mut().for_each(|(_, v)| *v = -v.clone());
        assert!(broken.check(&g).is_err());
    }

    #[test]
    fn scaling_keeps_verdict() {
        let g = wg(2, &["aBaab"]);
        let LpResult::Feasible(list) = search_witness_lp(&g, true).unwrap() else {
            panic!()
        };
        for k in [2, 3, 7] {
            let a = verify_witness(&g, &list, true, false).unwrap();
            let b = verify_witness(&g, &list.scaled(k), true, false).unwrap();
            assert_eq!(a.pass, b.pass);
        }
    }

    #[test]
    fn subdivision_shapes() {
        let bigon = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let s = subdivide(&bigon, &[1, 0], 1, false).unwrap();
        assert_eq!(s.graph, bigon);
        let s = subdivide(&bigon, &[1, 0], 2, true).unwrap();
        assert_eq!(s.graph.edge_count(), 4);
        assert_eq!(s.graph.vertex_count(), 4);
        let mu2 = s.mu.unwrap();
        assert_eq!(mu2[s.internal[&(1, 1)]], s.internal[&(0, 1)]);
        assert_eq!(enumerate_cycles(&s.graph).len(), 1);
        assert!(matches!(
            subdivide(&bigon, &[1, 0], 3, true),
            Err(WitnessError::SubdivisionLength { m: 3, edges: 2 })
        ));
        let s = subdivide(&bigon, &[1, 0], 3, false).unwrap();
        assert_eq!(s.graph.edge_count(), 6);
    }

    #[test]
    fn subdivided_witness_uses_edges_uniformly() {
        let g = wg(2, &["aBaab"]);
        let m = g.graph().edge_count();
        let mu0: Vec<Vertex> = (0..4).map(mu).collect();
        let s = subdivide(g.graph(), &mu0, m, true).unwrap();
        let big = s.to_whitehead(&g).unwrap();
        assert_eq!(big.graph().edge_count(), m * m);
        let LpResult::Feasible(list) = search_witness_lp(&big, true).unwrap() else {
            panic!("subdivision should stay feasible")
        };
        assert!(verify_witness(&big, &list, true, false).unwrap().pass);
        let usage = list.edge_usage();
        let first = usage.values().next().copied().unwrap();
        assert!(big.graph().edge_ids().all(|e| usage.get(&e).copied().unwrap_or(0) == first));
    }
}
