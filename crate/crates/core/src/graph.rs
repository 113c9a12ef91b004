//! Loopless multigraphs with stable edge ids and dart-level incidence.

use std::collections::VecDeque;

use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: EdgeId, vertex: Vertex },
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: Vertex, count: usize },
    #[error("edge {0} does not exist")]
    MissingEdge(EdgeId),
}

/// One end of an edge. `end` is 0 or 1 and selects `endpoints(edge)[end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: usize,
}

impl Dart {
    pub fn new(edge: EdgeId, end: usize) -> Self {
        debug_assert!(end < 2);
        Dart { edge, end }
    }

    pub fn index(self) -> usize {
        2 * self.edge + self.end
    }

    pub fn from_index(i: usize) -> Self {
        Dart::new(i / 2, i % 2)
    }

    pub fn opposite(self) -> Self {
        Dart::new(self.edge, 1 - self.end)
    }
}

/// Edge ids are never reused: removing an edge leaves a hole so that ids
/// held elsewhere (cycle lists, σ tables) stay meaningful.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Option<[Vertex; 2]>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Multigraph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId, GraphError> {
        for x in [u, v] {
            if x >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    count: self.vertex_count,
                });
            }
        }
        let edge = self.edges.len();
        if u == v {
            return Err(GraphError::Loop { edge, vertex: u });
        }
        self.edges.push(Some([u, v]));
        Ok(edge)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<[Vertex; 2], GraphError> {
        self.edges
            .get_mut(e)
            .and_then(Option::take)
            .ok_or(GraphError::MissingEdge(e))
    }

    pub fn without_edge(&self, e: EdgeId) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.remove_edge(e)?;
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of live edges.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    /// One past the largest edge id ever issued.
    pub fn edge_slots(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|_| i))
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e), Some(Some(_)))
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<[Vertex; 2]> {
        self.edges.get(e).copied().flatten()
    }

    /// Panics on a missing edge; for internal use with ids known to be live.
    pub fn ends(&self, e: EdgeId) -> [Vertex; 2] {
        self.endpoints(e).expect("live edge id")
    }

    pub fn vertex_of(&self, d: Dart) -> Vertex {
        self.ends(d.edge)[d.end]
    }

    pub fn is_incident(&self, e: EdgeId, v: Vertex) -> bool {
        self.endpoints(e).is_some_and(|[a, b]| a == v || b == v)
    }

    pub fn dart_at(&self, e: EdgeId, v: Vertex) -> Option<Dart> {
        let [a, b] = self.endpoints(e)?;
        if a == v {
            Some(Dart::new(e, 0))
        } else if b == v {
            Some(Dart::new(e, 1))
        } else {
            None
        }
    }

    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Option<Vertex> {
        let [a, b] = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// Edges at `v` in increasing id order.
    pub fn incident(&self, v: Vertex) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.is_incident(e, v)).collect()
    }

    /// `adjacency()[v]` lists `(edge, neighbour)` in increasing edge id.
    pub fn adjacency(&self) -> Vec<Vec<(EdgeId, Vertex)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in self.edge_ids() {
            let [a, b] = self.ends(e);
            adj[a].push((e, b));
            adj[b].push((e, a));
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edge_ids().filter(|&e| self.is_incident(e, v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in self.edge_ids() {
            let [a, b] = self.ends(e);
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        let k = *d.first()?;
        d.iter().all(|&x| x == k).then_some(k)
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.edge_ids()
            .filter(|&e| {
                let [a, b] = self.ends(e);
                (a, b) == (u, v) || (a, b) == (v, u)
            })
            .count()
    }

    /// Component label per vertex, numbered in order of first appearance.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for s in 0..self.vertex_count {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(_, y) in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Connected on the full vertex set (isolated vertices count).
    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// `|δ(X)|` for the vertex set marked in `side`.
    pub fn cut_size(&self, side: &[bool]) -> usize {
        self.edge_ids()
            .filter(|&e| {
                let [a, b] = self.ends(e);
                side[a] != side[b]
            })
            .count()
    }

    /// Maximum number of edge-disjoint x–y paths, by unit-capacity
    /// augmenting paths found with BFS in edge-id order.
    pub fn local_edge_connectivity(&self, x: Vertex, y: Vertex) -> usize {
        assert!(x != y, "local edge connectivity needs distinct vertices");
        let adj = self.adjacency();
        // flow[e] is the net flow from ends(e)[0] to ends(e)[1], in {-1, 0, 1}.
        let mut flow = vec![0i8; self.edges.len()];
        let mut total = 0;
        loop {
            let mut parent: Vec<Option<(EdgeId, Vertex)>> = vec![None; self.vertex_count];
            let mut seen = vec![false; self.vertex_count];
            seen[x] = true;
            let mut queue = VecDeque::from([x]);
            while let Some(a) = queue.pop_front() {
                if a == y {
                    break;
                }
                for &(e, b) in &adj[a] {
                    if seen[b] {
                        continue;
                    }
                    let forward = self.ends(e)[0] == a;
                    let residual = if forward { 1 - flow[e] } else { 1 + flow[e] };
                    if residual > 0 {
                        seen[b] = true;
                        parent[b] = Some((e, a));
                        queue.push_back(b);
                    }
                }
            }
            if !seen[y] {
                return total;
            }
            let mut b = y;
            while let Some((e, a)) = parent[b] {
                if self.ends(e)[0] == a {
                    flow[e] += 1;
                } else {
                    flow[e] -= 1;
                }
                b = a;
            }
            total += 1;
        }
    }
}
