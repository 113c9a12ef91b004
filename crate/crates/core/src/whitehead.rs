//! Whitehead graphs with dart-level connecting maps.
//!
//! Vertex `2i` is the generator `a_{i+1}` and `2i + 1` its inverse, so the
//! involution μ is `v ^ 1`. The edge of the cyclic subword `x_i x_{i+1}` has
//! end 0 at `x_i` and end 1 at `x_{i+1}^{-1}`; σ sends end 1 of position `i`
//! to end 0 of position `i + 1`. Stored as a single involution on darts, σ_v
//! and σ_{μ(v)} are automatically inverse to each other.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Dart, EdgeId, GraphError, Multigraph, Vertex};
use crate::words::{length2_cyclic_subwords, power_of_conjugate, Letter, Word, WordError, WordList};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WhiteheadError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("bad vertex name {0:?}")]
    BadVertex(String),
    #[error("edge ids must be 0..{count} in order; found {found} at slot {slot}")]
    EdgeIds { slot: usize, found: usize, count: usize },
    #[error("edge {edge} is not incident with {vertex}")]
    NotIncident { edge: EdgeId, vertex: String },
    #[error("connecting map undefined for edge {edge} at {vertex}")]
    SigmaMissing { edge: EdgeId, vertex: String },
    #[error("connecting map at {vertex} sends edge {edge} to edge {image}, which is not incident with {target}")]
    SigmaTarget {
        vertex: String,
        edge: EdgeId,
        image: EdgeId,
        target: String,
    },
    #[error("connecting maps at {vertex} and its inverse are not mutually inverse on edge {edge}")]
    SigmaNotInverse { vertex: String, edge: EdgeId },
    #[error("trace step {step}: letter {letter} cancels its predecessor")]
    TraceBacktrack { step: usize, letter: String },
    #[error("trace step {step}: edge {edge} is not incident with {vertex}")]
    TraceUndefined { step: usize, edge: EdgeId, vertex: String },
    #[error("empty trace")]
    EmptyTrace,
    #[error("connecting maps do not split into consistent readings (edge {0})")]
    Reading(EdgeId),
    #[error("malformed graph json: {0}")]
    Json(String),
}

pub fn mu(v: Vertex) -> Vertex {
    v ^ 1
}

pub fn is_positive(v: Vertex) -> bool {
    v.is_multiple_of(2)
}

pub fn vertex_letter(v: Vertex) -> Letter {
    Letter::new(v / 2, v % 2 == 1)
}

pub fn letter_vertex(l: Letter) -> Vertex {
    2 * l.generator + usize::from(l.inverse)
}

/// `a3` for the third generator, `a3-` for its inverse.
pub fn vertex_name(v: Vertex) -> String {
    if is_positive(v) {
        format!("a{}", v / 2 + 1)
    } else {
        format!("a{}-", v / 2 + 1)
    }
}

pub fn parse_vertex_name(name: &str, rank: usize) -> Result<Vertex, WhiteheadError> {
    let bad = || WhiteheadError::BadVertex(name.to_string());
    let body = name.strip_prefix('a').ok_or_else(bad)?;
    let (digits, negative) = match body.strip_suffix('-') {
        Some(d) => (d, true),
        None => (body, false),
    };
    let index: usize = digits.parse().map_err(|_| bad())?;
    if index == 0 || index > rank {
        return Err(bad());
    }
    Ok(2 * (index - 1) + usize::from(negative))
}

/// Where an edge came from: cyclic subword `position` of word `word`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub word: usize,
    pub position: usize,
}

impl Provenance {
    pub fn label(&self) -> String {
        format!("w{}:p{}", self.word, self.position)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteheadGraph {
    rank: usize,
    graph: Multigraph,
    sigma: Vec<Dart>,
    provenance: Vec<Provenance>,
    words: WordList,
    word_built: bool,
}

impl WhiteheadGraph {
    pub fn build(list: &WordList) -> Result<Self, WhiteheadError> {
        let rank = list.rank();
        let mut graph = Multigraph::new(2 * rank);
        let mut sigma = Vec::new();
        let mut provenance = Vec::new();
        for (j, word) in list.words().iter().enumerate() {
            if !word.is_cyclically_reduced() {
                return Err(WordError::NotCyclicallyReduced { index: j }.into());
            }
            let base = graph.edge_slots();
            let len = word.len();
            for sub in length2_cyclic_subwords(word) {
                graph.add_edge(letter_vertex(sub.first), letter_vertex(sub.second.inv()))?;
                provenance.push(Provenance {
                    word: j,
                    position: sub.position,
                });
            }
            sigma.resize(2 * graph.edge_slots(), Dart::new(0, 0));
            for i in 0..len {
                let here = Dart::new(base + i, 1);
                let next = Dart::new(base + (i + 1) % len, 0);
                sigma[here.index()] = next;
                sigma[next.index()] = here;
            }
        }
        Ok(WhiteheadGraph {
            rank,
            graph,
            sigma,
            provenance,
            words: list.clone(),
            word_built: true,
        })
    }

    /// Standalone graph with explicit σ. Words are recovered from σ so the
    /// surface construction has something to read.
    pub fn from_parts(
        rank: usize,
        edges: &[(Vertex, Vertex)],
        sigma_at: &BTreeMap<Vertex, BTreeMap<EdgeId, EdgeId>>,
    ) -> Result<Self, WhiteheadError> {
        if rank == 0 {
            return Err(WordError::ZeroRank.into());
        }
        let graph = Multigraph::from_edges(2 * rank, edges)?;
        let mut sigma = vec![None; 2 * graph.edge_slots()];
        for e in graph.edge_ids() {
            for (end, v) in graph.ends(e).into_iter().enumerate() {
                let image = sigma_at
                    .get(&v)
                    .and_then(|m| m.get(&e))
                    .copied()
                    .ok_or_else(|| WhiteheadError::SigmaMissing {
                        edge: e,
                        vertex: vertex_name(v),
                    })?;
                let target = graph.dart_at(image, mu(v)).ok_or_else(|| WhiteheadError::SigmaTarget {
                    vertex: vertex_name(v),
                    edge: e,
                    image,
                    target: vertex_name(mu(v)),
                })?;
                sigma[Dart::new(e, end).index()] = Some(target);
            }
        }
        for (v, map) in sigma_at {
            for e in map.keys() {
                if !graph.is_incident(*e, *v) {
                    return Err(WhiteheadError::NotIncident {
                        edge: *e,
                        vertex: vertex_name(*v),
                    });
                }
            }
        }
        let sigma: Vec<Dart> = sigma.into_iter().map(|d| d.unwrap_or(Dart::new(0, 0))).collect();
        for e in graph.edge_ids() {
            for end in 0..2 {
                let d = Dart::new(e, end);
                if sigma[sigma[d.index()].index()] != d {
                    return Err(WhiteheadError::SigmaNotInverse {
                        vertex: vertex_name(graph.vertex_of(d)),
                        edge: e,
                    });
                }
            }
        }
        let mut g = WhiteheadGraph {
            rank,
            graph,
            sigma,
            provenance: Vec::new(),
            words: WordList::new(rank, Vec::new())?,
            word_built: false,
        };
        let readings = g.read_words()?;
        let mut provenance = vec![
            Provenance {
                word: 0,
                position: 0
            };
            g.graph.edge_slots()
        ];
        let mut words = Vec::new();
        for (j, r) in readings.iter().enumerate() {
            for (i, &e) in r.edges.iter().enumerate() {
                provenance[e] = Provenance { word: j, position: i };
            }
            words.push(Word::new(r.letters.clone()));
        }
        g.provenance = provenance;
        g.words = WordList::new(rank, words)?;
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self, WhiteheadError> {
        let parsed: GraphJson = serde_json::from_str(text).map_err(|e| WhiteheadError::Json(e.to_string()))?;
        Self::from_graph_json(&parsed)
    }

    pub fn from_graph_json(parsed: &GraphJson) -> Result<Self, WhiteheadError> {
        let rank = parsed.rank;
        let mut edges = Vec::new();
        for (slot, e) in parsed.edges.iter().enumerate() {
            if e.id != slot {
                return Err(WhiteheadError::EdgeIds {
                    slot,
                    found: e.id,
                    count: parsed.edges.len(),
                });
            }
            edges.push((parse_vertex_name(&e.u, rank)?, parse_vertex_name(&e.v, rank)?));
        }
        let mut sigma_at = BTreeMap::new();
        for (name, map) in &parsed.sigma {
            let v = parse_vertex_name(name, rank)?;
            let mut m = BTreeMap::new();
            for (from, to) in map {
                let from: EdgeId = from
                    .parse()
                    .map_err(|_| WhiteheadError::Json(format!("bad edge id {from:?}")))?;
                let to: EdgeId = to
                    .parse()
                    .map_err(|_| WhiteheadError::Json(format!("bad edge id {to:?}")))?;
                m.insert(from, to);
            }
            sigma_at.insert(v, m);
        }
        Self::from_parts(rank, &edges, &sigma_at)
    }

    pub fn to_graph_json(&self) -> GraphJson {
        let edges = self
            .graph
            .edge_ids()
            .map(|e| {
                let [u, v] = self.graph.ends(e);
                EdgeJson {
                    id: e,
                    u: vertex_name(u),
                    v: vertex_name(v),
                }
            })
            .collect();
        let mut sigma: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for v in 0..2 * self.rank {
            let mut m = BTreeMap::new();
            for e in self.graph.incident(v) {
                m.insert(e.to_string(), self.sigma_edge(v, e).to_string());
            }
            sigma.insert(vertex_name(v), m);
        }
        GraphJson {
            rank: self.rank,
            edges,
            sigma,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_graph_json()).expect("graph json serializes")
    }

    /// sha256 of the canonical graph JSON.
    pub fn hash(&self) -> String {
        crate::canonical_hash(&self.to_graph_json())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn words(&self) -> &WordList {
        &self.words
    }

    pub fn is_word_built(&self) -> bool {
        self.word_built
    }

    pub fn provenance(&self, e: EdgeId) -> Provenance {
        self.provenance[e]
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.rank
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d.index()]
    }

    /// σ_v(e) as an edge of δ(μ(v)); `e` must be incident with `v`.
    pub fn sigma_edge(&self, v: Vertex, e: EdgeId) -> EdgeId {
        let d = self.graph.dart_at(e, v).expect("edge incident with vertex");
        self.sigma(d).edge
    }

    pub fn connecting_map(&self, v: Vertex, d: Dart) -> Result<Dart, WhiteheadError> {
        if !self.graph.has_edge(d.edge) || self.graph.vertex_of(d) != v {
            return Err(WhiteheadError::NotIncident {
                edge: d.edge,
                vertex: vertex_name(v),
            });
        }
        Ok(self.sigma(d))
    }

    pub fn local_edge_connectivity(&self, x: Vertex, y: Vertex) -> usize {
        self.graph.local_edge_connectivity(x, y)
    }

    pub fn analyze(&self) -> AnalysisReport {
        let degrees = self.graph.degrees();
        let mut vertices = Vec::new();
        for v in 0..self.vertex_count() {
            let lambda = if is_positive(v) {
                self.local_edge_connectivity(v, mu(v))
            } else {
                vertices
                    .last()
                    .map(|r: &VertexReport| r.lambda)
                    .unwrap_or_default()
            };
            vertices.push(VertexReport {
                vertex: vertex_name(v),
                degree: degrees[v],
                lambda,
            });
        }
        let minimal = vertices.iter().all(|r| r.lambda == r.degree);
        let connected = self.graph.is_connected();
        AnalysisReport {
            rank: self.rank,
            edge_count: self.graph.edge_count(),
            vertices,
            minimal,
            connected,
            diskbusting: minimal && connected,
            regular: self.graph.regular_degree(),
        }
    }

    /// Apply σ_{x_1^{-1}}, …, σ_{x_l^{-1}} starting from edge `f0`.
    pub fn trace_word(&self, f0: EdgeId, xs: &[Vertex]) -> Result<Trace, WhiteheadError> {
        if xs.is_empty() {
            return Err(WhiteheadError::EmptyTrace);
        }
        let mut current = f0;
        let mut edges = vec![f0];
        for (step, &x) in xs.iter().enumerate() {
            if step > 0 && xs[step - 1] == mu(x) {
                return Err(WhiteheadError::TraceBacktrack {
                    step,
                    letter: vertex_name(x),
                });
            }
            let d = self
                .graph
                .dart_at(current, mu(x))
                .ok_or_else(|| WhiteheadError::TraceUndefined {
                    step,
                    edge: current,
                    vertex: vertex_name(mu(x)),
                })?;
            current = self.sigma(d).edge;
            edges.push(current);
        }
        let letters: Vec<Letter> = xs.iter().map(|&x| vertex_letter(x)).collect();
        let closed = current == f0;
        let matched = if closed { self.match_word(&letters) } else { None };
        Ok(Trace {
            letters,
            edges,
            closed,
            matched,
        })
    }

    /// Finds `j` and `p != 0` with `letters` a cyclic conjugate of `u_j^p`.
    pub fn match_word(&self, letters: &[Letter]) -> Option<(usize, i64)> {
        for (j, w) in self.words.words().iter().enumerate() {
            if let Some(p) = power_of_conjugate(letters, w.letters()) {
                return Some((j, p as i64));
            }
            if let Some(p) = power_of_conjugate(letters, w.inverse().letters()) {
                return Some((j, -(p as i64)));
            }
        }
        None
    }

    /// Recovers the words encoded by σ: following the exit dart `d` to
    /// `other_end(σ(d))` walks along one word. Edges are grouped into
    /// readings in order of their smallest id.
    pub fn read_words(&self) -> Result<Vec<Reading>, WhiteheadError> {
        let mut assigned = vec![false; self.graph.edge_slots()];
        let mut out = Vec::new();
        for e in self.graph.edge_ids() {
            if assigned[e] {
                continue;
            }
            let start = Dart::new(e, 1);
            let mut darts = vec![start];
            let mut d = start;
            loop {
                d = self.sigma(d).opposite();
                if d == start {
                    break;
                }
                if darts.len() > 2 * self.graph.edge_slots() {
                    return Err(WhiteheadError::Reading(e));
                }
                darts.push(d);
            }
            let edges: Vec<EdgeId> = darts.iter().map(|d| d.edge).collect();
            for &f in &edges {
                if assigned[f] {
                    return Err(WhiteheadError::Reading(f));
                }
                assigned[f] = true;
            }
            let l = darts.len();
            let letters = (0..l)
                .map(|k| vertex_letter(mu(self.graph.vertex_of(darts[(k + l - 1) % l]))))
                .collect();
            out.push(Reading { letters, edges });
        }
        Ok(out)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph W {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(s, "  \"{}\";", vertex_name(v));
        }
        for e in self.graph.edge_ids() {
            let [a, b] = self.graph.ends(e);
            let _ = writeln!(
                s,
                "  \"{}\" -- \"{}\" [id=\"e{}\", label=\"{}\"];",
                vertex_name(a),
                vertex_name(b),
                e,
                self.provenance[e].label()
            );
        }
        s.push_str("}\n");
        s
    }

    /// σ keyed by `"<edge>@<vertex>"`, valued the same way.
    pub fn sigma_table(&self) -> BTreeMap<String, String> {
        let mut table = BTreeMap::new();
        for e in self.graph.edge_ids() {
            for end in 0..2 {
                let d = Dart::new(e, end);
                let t = self.sigma(d);
                table.insert(
                    format!("{}@{}", e, vertex_name(self.graph.vertex_of(d))),
                    format!("{}@{}", t.edge, vertex_name(self.graph.vertex_of(t))),
                );
            }
        }
        table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub letters: Vec<Letter>,
    /// f_0, f_1, …, f_l.
    pub edges: Vec<EdgeId>,
    pub closed: bool,
    pub matched: Option<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reading {
    pub letters: Vec<Letter>,
    /// `edges[i]` is the edge of the cyclic subword at position `i`.
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub vertex: String,
    pub degree: usize,
    pub lambda: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub rank: usize,
    pub edge_count: usize,
    pub vertices: Vec<VertexReport>,
    pub minimal: bool,
    pub connected: bool,
    pub diskbusting: bool,
    pub regular: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: EdgeId,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub rank: usize,
    pub edges: Vec<EdgeJson>,
    pub sigma: BTreeMap<String, BTreeMap<String, String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wg(rank: usize, texts: &[&str]) -> WhiteheadGraph {
        WhiteheadGraph::build(&WordList::from_texts(rank, texts).unwrap()).unwrap()
    }

    fn v(name: &str) -> Vertex {
        parse_vertex_name(name, 3).unwrap()
    }

    fn edge_multiset(g: &WhiteheadGraph) -> BTreeMap<(String, String), usize> {
        let mut m = BTreeMap::new();
        for e in g.graph().edge_ids() {
            let [a, b] = g.graph().ends(e);
            let (a, b) = (a.min(b), a.max(b));
            *m.entry((vertex_name(a), vertex_name(b))).or_default() += 1;
        }
        m
    }

    fn key(a: &str, b: &str) -> (String, String) {
        (a.to_string(), b.to_string())
    }

    #[test]
    fn names() {
        assert_eq!(vertex_name(0), "a1");
        assert_eq!(vertex_name(3), "a2-");
        assert_eq!(parse_vertex_name("a2-", 2), Ok(3));
        assert!(parse_vertex_name("a3", 2).is_err());
        assert!(parse_vertex_name("b1", 2).is_err());
    }

    #[test]
    fn commutator_is_four_cycle() {
        let g = wg(2, &["abAB"]);
        let m = edge_multiset(&g);
        assert_eq!(m.len(), 4);
        assert!(m.values().all(|&c| c == 1));
        assert!(m.contains_key(&key("a1", "a2-")));
        assert!(m.contains_key(&key("a1-", "a2-")));
        assert!(m.contains_key(&key("a1-", "a2")));
        assert!(m.contains_key(&key("a1", "a2")));
        assert_eq!(g.graph().degrees(), [2, 2, 2, 2]);
    }

    #[test]
    fn example_graph_multiplicities() {
        let g = wg(2, &["a(aB)^3B^2"]);
        let m = edge_multiset(&g);
        assert_eq!(m[&key("a1", "a1-")], 1);
        assert_eq!(m[&key("a1", "a2")], 3);
        assert_eq!(m[&key("a1-", "a2-")], 3);
        assert_eq!(m[&key("a2", "a2-")], 2);
        assert_eq!(m.len(), 4);
        let d = g.graph().degrees();
        assert_eq!((d[0], d[2]), (4, 5));
        let r = g.analyze();
        assert_eq!(r.vertices[0].lambda, 3);
        assert!(!r.minimal);
    }

    #[test]
    fn non_minimal_word() {
        let g = wg(2, &["abab^2ab^3"]);
        let m = edge_multiset(&g);
        assert_eq!(m[&key("a1", "a2-")], 3);
        assert_eq!(m[&key("a1-", "a2")], 3);
        assert_eq!(m[&key("a2", "a2-")], 3);
        assert_eq!(g.local_edge_connectivity(2, 3), 3);
        assert_eq!(g.graph().degree(2), 6);
        let r = g.analyze();
        assert!(!r.minimal);
        assert!(!r.diskbusting);
    }

    #[test]
    fn polygonal_word_is_diskbusting() {
        let r = wg(2, &["aBaab"]).analyze();
        assert!(r.minimal && r.connected && r.diskbusting);
        let r = wg(2, &["abAB"]).analyze();
        assert!(r.minimal && r.diskbusting);
        assert_eq!(r.regular, Some(2));
        assert_eq!(r.vertices[0].lambda, 2);
    }

    #[test]
    fn sigma_follows_positions() {
        let g = wg(2, &["abAB"]);
        // The position-0 edge ends at a2-; σ takes it to the position-1 edge at a2.
        let d = g.graph().dart_at(0, v("a2-")).unwrap();
        assert_eq!(g.connecting_map(v("a2-"), d).unwrap(), Dart::new(1, 0));
        assert_eq!(g.graph().vertex_of(Dart::new(1, 0)), v("a2"));
        assert!(g.connecting_map(v("a1-"), d).is_err());
    }

    #[test]
    fn corner_successor_example() {
        // Position 3 (subword aa) joins a and a^-1, position 4 (aB) joins a and b.
        let g = wg(2, &["Babaa"]);
        assert_eq!(g.graph().ends(3), [v("a1"), v("a1-")]);
        assert_eq!(g.sigma_edge(v("a1-"), 3), 4);
        assert_eq!(g.sigma_edge(v("a1"), 4), 3);
    }

    #[test]
    fn sigma_is_involution_between_mu_pairs() {
        let g = wg(3, &["abcABC", "aCb", "cc"]);
        for e in g.graph().edge_ids() {
            for end in 0..2 {
                let d = Dart::new(e, end);
                let t = g.sigma(d);
                assert_eq!(g.graph().vertex_of(t), mu(g.graph().vertex_of(d)));
                assert_eq!(g.sigma(t), d);
            }
        }
    }

    #[test]
    fn traces() {
        let g = wg(2, &["abAB"]);
        let t = g.trace_word(3, &[0, 2, 1, 3]).unwrap();
        assert!(t.closed);
        assert_eq!(t.matched, Some((0, 1)));
        assert_eq!(t.edges, [3, 0, 1, 2, 3]);
        assert!(matches!(
            g.trace_word(3, &[0, 1]),
            Err(WhiteheadError::TraceBacktrack { step: 1, .. })
        ));

        let g = wg(3, &["Acb"]);
        let t = g.trace_word(2, &[v("a1-"), v("a3"), v("a2")]).unwrap();
        assert_eq!(t.edges, [2, 0, 1, 2]);
        assert!(t.closed);
        assert_eq!(t.matched, Some((0, 1)));
    }

    #[test]
    fn traces_reproduce_every_word() {
        let list = WordList::from_texts(3, &["abcABC", "aCb", "cc", "aBaab"]).unwrap();
        let g = WhiteheadGraph::build(&list).unwrap();
        let mut base = 0;
        for (j, w) in list.words().iter().enumerate() {
            let l = w.len();
            for start in 0..l {
                let xs: Vec<Vertex> = (1..=l)
                    .map(|k| letter_vertex(w.letters()[(start + k) % l]))
                    .collect();
                let t = g.trace_word(base + start, &xs).unwrap();
                assert!(t.closed);
                let (found, p) = t.matched.unwrap();
                assert_eq!(p, 1);
                assert_eq!(list.words()[found], list.words()[j].clone().with_index(found));
            }
            base += l;
        }
    }

    #[test]
    fn read_words_recovers_input() {
        let list = WordList::from_texts(3, &["abcABC", "aCb", "cc"]).unwrap();
        let g = WhiteheadGraph::build(&list).unwrap();
        let readings = g.read_words().unwrap();
        assert_eq!(readings.len(), 3);
        for (r, w) in readings.iter().zip(list.words()) {
            assert_eq!(r.letters, w.letters());
        }
        assert_eq!(readings[1].edges, [6, 7, 8]);
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let g = wg(2, &["aBaab"]);
        let back = WhiteheadGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.graph(), g.graph());
        assert_eq!(back.hash(), g.hash());
        assert_eq!(back.words().words()[0].render(), "aBaab");
        assert!(!back.is_word_built());

        let mut j = g.to_graph_json();
        let m = j.sigma.get_mut("a1").unwrap();
        let first = m.keys().next().unwrap().clone();
        m.remove(&first);
        assert!(matches!(
            WhiteheadGraph::from_graph_json(&j),
            Err(WhiteheadError::SigmaMissing { .. })
        ));

        let mut j = g.to_graph_json();
        j.edges[1].id = 7;
        assert!(matches!(
            WhiteheadGraph::from_graph_json(&j),
            Err(WhiteheadError::EdgeIds { .. })
        ));
    }

    #[test]
    fn standalone_sigma_must_be_inverse() {
        // Two parallel a1–a1- edges; σ at a1 swaps them but σ at a1- does not.
        let edges = [(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)];
        let mut s: BTreeMap<Vertex, BTreeMap<EdgeId, EdgeId>> = BTreeMap::new();
        s.insert(0, BTreeMap::from([(0, 1), (1, 0), (4, 5)]));
        s.insert(1, BTreeMap::from([(0, 0), (1, 1), (5, 4)]));
        s.insert(2, BTreeMap::from([(2, 2), (3, 3), (4, 5)]));
        s.insert(3, BTreeMap::from([(2, 2), (3, 3), (5, 4)]));
        assert!(matches!(
            WhiteheadGraph::from_parts(2, &edges, &s),
            Err(WhiteheadError::SigmaNotInverse { .. })
        ));
        s.insert(1, BTreeMap::from([(0, 1), (1, 0), (5, 4)]));
        let g = WhiteheadGraph::from_parts(2, &edges, &s).unwrap();
        assert_eq!(g.words().words().len(), 4);
    }

    #[test]
    fn loops_are_distinct_error() {
        let s = BTreeMap::new();
        assert!(matches!(
            WhiteheadGraph::from_parts(1, &[(0, 0)], &s),
            Err(WhiteheadError::Graph(GraphError::Loop { .. }))
        ));
    }

    #[test]
    fn degree_sum_matches_length() {
        let list = WordList::from_texts(3, &["abcABC", "aCb", "ccab"]).unwrap();
        let g = WhiteheadGraph::build(&list).unwrap();
        assert_eq!(g.graph().edge_count(), list.total_length());
        let d = g.graph().degrees();
        for i in 0..3 {
            assert_eq!(d[2 * i], d[2 * i + 1]);
        }
        assert_eq!(d.iter().sum::<usize>(), 2 * list.total_length());
    }

    #[test]
    fn dot_labels() {
        let dot = wg(2, &["abAB"]).to_dot();
        assert!(dot.contains("\"a1\" -- \"a2-\" [id=\"e0\", label=\"w0:p0\"]"));
    }
}
