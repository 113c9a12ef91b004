//! Simple cycles as edge subsets, and multisets of them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{EdgeId, Multigraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("edge {0} is not in the graph")]
    MissingEdge(EdgeId),
    #[error("edge {0} repeated")]
    RepeatedEdge(EdgeId),
    #[error("edges {0:?} do not form a simple cycle")]
    NotACycle(Vec<EdgeId>),
}

/// A simple cycle stored as its canonical edge sequence: the
/// lexicographically least rotation or reflection of the cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn from_edges(g: &Multigraph, edges: &[EdgeId]) -> Result<Self, CycleError> {
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(CycleError::RepeatedEdge(w[0]));
            }
        }
        for &e in &sorted {
            if !g.has_edge(e) {
                return Err(CycleError::MissingEdge(e));
            }
        }
        let not_cycle = || CycleError::NotACycle(sorted.clone());
        if sorted.len() < 2 {
            return Err(not_cycle());
        }
        let mut at: BTreeMap<Vertex, Vec<EdgeId>> = BTreeMap::new();
        for &e in &sorted {
            for v in g.ends(e) {
                at.entry(v).or_default().push(e);
            }
        }
        if at.values().any(|es| es.len() != 2) {
            return Err(not_cycle());
        }
        let mut order = vec![sorted[0]];
        let mut v = g.ends(sorted[0])[1];
        while order.len() < sorted.len() {
            let last = *order.last().unwrap();
            let es = &at[&v];
            let next = if es[0] == last { es[1] } else { es[0] };
            if next == order[0] {
                return Err(not_cycle());
            }
            order.push(next);
            v = g.other_end(next, v).unwrap();
        }
        if v != g.ends(sorted[0])[0] {
            return Err(not_cycle());
        }
        Ok(Cycle {
            edges: canonical_rotation(&order),
        })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_long(&self) -> bool {
        self.edges.len() >= 3
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// Vertices in cyclic order; `vertices[i]` sits between `edges[i]` and `edges[i + 1]`.
    pub fn vertices(&self, g: &Multigraph) -> Vec<Vertex> {
        let n = self.edges.len();
        let [a, b] = g.ends(self.edges[0]);
        let mut p = if n > 2 && !g.is_incident(self.edges[n - 1], a) {
            b
        } else {
            a
        };
        (0..n)
            .map(|i| {
                p = g.other_end(self.edges[i], p).expect("consecutive cycle edges share a vertex");
                p
            })
            .collect()
    }

    /// The two cycle edges at `v`, smaller id first.
    pub fn pair_at(&self, g: &Multigraph, v: Vertex) -> Option<(EdgeId, EdgeId)> {
        let mut found = self.edges.iter().copied().filter(|&e| g.is_incident(e, v));
        let x = found.next()?;
        let y = found.next()?;
        Some((x.min(y), x.max(y)))
    }
}

fn canonical_rotation(order: &[EdgeId]) -> Vec<EdgeId> {
    let n = order.len();
    let mut best: Option<Vec<EdgeId>> = None;
    let reversed: Vec<EdgeId> = order.iter().rev().copied().collect();
    for seq in [order, reversed.as_slice()] {
        for s in 0..n {
            let cand: Vec<EdgeId> = (0..n).map(|i| seq[(s + i) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// All simple cycles, bigons included, sorted by canonical key.
pub fn enumerate_cycles(g: &Multigraph) -> Vec<Cycle> {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path: Vec<EdgeId> = Vec::new();
    for s in 0..n {
        on_path[s] = true;
        extend(g, &adj, s, s, &mut on_path, &mut path, &mut out);
        on_path[s] = false;
    }
    out.sort();
    out
}

fn extend(
    g: &Multigraph,
    adj: &[Vec<(EdgeId, Vertex)>],
    s: Vertex,
    x: Vertex,
    on_path: &mut [bool],
    path: &mut Vec<EdgeId>,
    out: &mut Vec<Cycle>,
) {
    for &(e, y) in &adj[x] {
        if y == s {
            if let Some(&first) = path.first() {
                if e > first {
                    path.push(e);
                    out.push(Cycle::from_edges(g, path).expect("closed simple path"));
                    path.pop();
                }
            }
        } else if y > s && !on_path[y] {
            on_path[y] = true;
            path.push(e);
            extend(g, adj, s, y, on_path, path, out);
            path.pop();
            on_path[y] = false;
        }
    }
}

/// Multiset of cycles with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleList {
    entries: BTreeMap<Cycle, u64>,
}

impl CycleList {
    pub fn new() -> Self {
        CycleList::default()
    }

    pub fn single(c: Cycle, mult: u64) -> Self {
        let mut l = CycleList::new();
        l.add(c, mult);
        l
    }

    pub fn add(&mut self, c: Cycle, mult: u64) {
        if mult == 0 {
            return;
        }
        let slot = self.entries.entry(c).or_insert(0);
        *slot = slot.checked_add(mult).expect("cycle multiplicity overflow");
    }

    /// Adds `factor` copies of every entry of `other`.
    pub fn extend_scaled(&mut self, other: &CycleList, factor: u64) {
        for (c, &m) in &other.entries {
            self.add(c.clone(), m.checked_mul(factor).expect("cycle multiplicity overflow"));
        }
    }

    pub fn scaled(&self, factor: u64) -> CycleList {
        let mut l = CycleList::new();
        l.extend_scaled(self, factor);
        l
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cycle, u64)> {
        self.entries.iter().map(|(c, &m)| (c, m))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct cycles.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Number of cycles counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn has_long(&self) -> bool {
        self.entries.keys().any(Cycle::is_long)
    }

    pub fn multiplicity(&self, c: &Cycle) -> u64 {
        self.entries.get(c).copied().unwrap_or(0)
    }

    /// Divides all multiplicities by their gcd.
    pub fn reduced(&self) -> CycleList {
        let g = self.entries.values().fold(0u64, |a, &b| gcd(a, b));
        if g <= 1 {
            return self.clone();
        }
        CycleList {
            entries: self.entries.iter().map(|(c, &m)| (c.clone(), m / g)).collect(),
        }
    }

    pub fn edge_usage(&self) -> BTreeMap<EdgeId, u64> {
        let mut usage = BTreeMap::new();
        for (c, m) in self.iter() {
            for &e in c.edges() {
                *usage.entry(e).or_insert(0) += m;
            }
        }
        usage
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
