//! Seeded random instances that satisfy the λ condition.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::whitehead::{mu, WhiteheadGraph};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// λ(v, μ(v)) = deg(v) at every vertex.
pub fn lambda_holds(g: &Multigraph) -> bool {
    (0..g.vertex_count())
        .step_by(2)
        .all(|v| {
            let l = g.local_edge_connectivity(v, mu(v));
            l >= g.degree(v) && l >= g.degree(mu(v))
        })
}

/// Uniformly random σ: each `δ(v)` for even `v` is matched to a shuffled `δ(μ(v))`.
/// Needs `deg(v) = deg(μ(v))`.
pub fn random_sigma<R: Rng>(rng: &mut R, g: &Multigraph) -> Option<BTreeMap<Vertex, BTreeMap<EdgeId, EdgeId>>> {
    let mut sigma: BTreeMap<Vertex, BTreeMap<EdgeId, EdgeId>> = BTreeMap::new();
    for v in (0..g.vertex_count()).step_by(2) {
        let here = g.incident(v);
        let mut there = g.incident(mu(v));
        if here.len() != there.len() {
            return None;
        }
        there.shuffle(rng);
        let fwd = sigma.entry(v).or_default();
        for (&a, &b) in here.iter().zip(&there) {
            fwd.insert(a, b);
        }
        let back = sigma.entry(mu(v)).or_default();
        for (&a, &b) in here.iter().zip(&there) {
            back.insert(b, a);
        }
    }
    Some(sigma)
}

fn with_sigma<R: Rng>(rng: &mut R, g: &Multigraph) -> WhiteheadGraph {
    let edges: Vec<(Vertex, Vertex)> = g
        .edge_ids()
        .map(|e| {
            let [a, b] = g.ends(e);
            (a, b)
        })
        .collect();
    let sigma = random_sigma(rng, g).expect("paired degrees agree");
    WhiteheadGraph::from_parts(g.vertex_count() / 2, &edges, &sigma).expect("random sigma is consistent")
}

/// Connected four-vertex instance with all degrees at most `max_degree`.
/// Degrees of partners agree exactly when the edge counts are
/// `p` (a1–a1⁻), `q` (a2–a2⁻), `x` (a1–a2 and a1⁻–a2⁻) and `y` (a1–a2⁻ and a1⁻–a2).
pub fn random_four_vertex<R: Rng>(rng: &mut R, max_degree: usize) -> WhiteheadGraph {
    loop {
        let p = rng.gen_range(0..=max_degree);
        let q = rng.gen_range(0..=max_degree);
        let x = rng.gen_range(0..=max_degree);
        let y = rng.gen_range(0..=max_degree);
        if p + x + y > max_degree || q + x + y > max_degree || x + y == 0 {
            continue;
        }
        let mut edges = Vec::new();
        edges.extend(std::iter::repeat_n((0, 1), p));
        edges.extend(std::iter::repeat_n((2, 3), q));
        edges.extend(std::iter::repeat_n((0, 2), x));
        edges.extend(std::iter::repeat_n((1, 3), x));
        edges.extend(std::iter::repeat_n((0, 3), y));
        edges.extend(std::iter::repeat_n((1, 2), y));
        edges.shuffle(rng);
        let g = Multigraph::from_edges(4, &edges).expect("no loops");
        if g.is_connected() && lambda_holds(&g) {
            return with_sigma(rng, &g);
        }
    }
}

/// `k`-regular loopless multigraph on `n` vertices from a random pairing of
/// half-edges; `None` when the pairing makes a loop.
pub fn random_regular_attempt<R: Rng>(rng: &mut R, n: usize, k: usize) -> Option<Multigraph> {
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    stubs.shuffle(rng);
    let mut g = Multigraph::new(n);
    for pair in stubs.chunks(2) {
        if pair.len() != 2 {
            return None;
        }
        g.add_edge(pair[0], pair[1]).ok()?;
    }
    Some(g)
}

/// Random `k`-regular instance on an even number of vertices (at most
/// `max_vertices`) satisfying the λ condition, with random σ.
pub fn random_regular_instance<R: Rng>(rng: &mut R, k: usize, max_vertices: usize) -> WhiteheadGraph {
    loop {
        let n = 2 * rng.gen_range(1..=max_vertices / 2);
        if let Some(g) = random_regular_attempt(rng, n, k) {
            if lambda_holds(&g) {
                return with_sigma(rng, &g);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let a = random_four_vertex(&mut seeded(7), 6);
        let b = random_four_vertex(&mut seeded(7), 6);
        assert_eq!(a.hash(), b.hash());
        assert!(lambda_holds(a.graph()));
        assert!(a.graph().degrees().iter().all(|&d| d <= 6));
        let r = random_regular_instance(&mut seeded(3), 3, 8);
        assert_eq!(r.graph().regular_degree(), Some(3));
        assert!(lambda_holds(r.graph()));
    }
}
