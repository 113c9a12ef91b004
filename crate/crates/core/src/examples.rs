//! Built-in instances, addressable by name from the command line.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{EdgeId, Vertex};
use crate::whitehead::{WhiteheadError, WhiteheadGraph};
use crate::words::WordList;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExampleError {
    #[error("unknown example {name:?}; available: {}", NAMES.join(", "))]
    Unknown { name: String },
    #[error("{name:?} names two lists; use remark-2.4-before or remark-2.4-after")]
    Ambiguous { name: String },
    #[error(transparent)]
    Whitehead(#[from] WhiteheadError),
}

pub const NAMES: &[&str] = &["commutator", "remark-2.4-before", "remark-2.4-after", "example-6.1", "figure-7"];

/// Word lists behind the word-built examples.
pub fn words(name: &str) -> Result<Option<WordList>, ExampleError> {
    let text = match name {
        "commutator" => "abAB",
        "remark-2.4-before" => "abab^2ab^3",
        "remark-2.4-after" => "aBa^2b",
        "example-6.1" => "a(aB)^3B^2",
        "figure-7" => return Ok(None),
        "remark-2.4" => return Err(ExampleError::Ambiguous { name: name.into() }),
        _ => return Err(ExampleError::Unknown { name: name.into() }),
    };
    Ok(Some(WordList::from_texts(2, &[text]).expect("built-in words parse")))
}

pub fn load(name: &str) -> Result<WhiteheadGraph, ExampleError> {
    match words(name)? {
        Some(list) => Ok(WhiteheadGraph::build(&list)?),
        None => Ok(star_instance()),
    }
}

/// The seven-edge-star instance: `w = a1` with degree 7, `u = a2` with
/// degree 8. Edges 0..7 are `e1..e7` at `w`; `σ_w(e_i) = f_i` where
/// `f3 = e2` and `f4 = e3` are the two edges between `w` and its partner.
pub fn star_instance() -> WhiteheadGraph {
    let (w, mw, u, mu_) = (0, 1, 2, 3);
    let edges: Vec<(Vertex, Vertex)> = vec![
        (w, u),    // 0 e1
        (w, mw),   // 1 e2 = f3
        (w, mw),   // 2 e3 = f4
        (w, mu_),  // 3 e4
        (w, mu_),  // 4 e5
        (w, u),    // 5 e6
        (w, u),    // 6 e7
        (mw, u),   // 7 f1
        (mw, mu_), // 8 f2
        (mw, u),   // 9 f5
        (mw, mu_), // 10 f6
        (mw, mu_), // 11 f7
        (u, mu_),  // 12
        (u, mu_),  // 13
        (u, mu_),  // 14
    ];
    let sigma_w: Vec<(EdgeId, EdgeId)> = vec![(0, 7), (1, 8), (2, 1), (3, 2), (4, 9), (5, 10), (6, 11)];
    let mut sigma: BTreeMap<Vertex, BTreeMap<EdgeId, EdgeId>> = BTreeMap::new();
    for &(a, b) in &sigma_w {
        sigma.entry(w).or_default().insert(a, b);
        sigma.entry(mw).or_default().insert(b, a);
    }
    let at = |v: Vertex| -> Vec<EdgeId> { (0..edges.len()).filter(|&e| edges[e].0 == v || edges[e].1 == v).collect() };
    for (a, b) in at(u).into_iter().zip(at(mu_)) {
        sigma.entry(u).or_default().insert(a, b);
        sigma.entry(mu_).or_default().insert(b, a);
    }
    WhiteheadGraph::from_parts(2, &edges, &sigma).expect("figure-7 data is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_names_load() {
        for n in NAMES {
            load(n).unwrap();
        }
        assert!(matches!(load("remark-2.4"), Err(ExampleError::Ambiguous { .. })));
        assert!(matches!(load("nope"), Err(ExampleError::Unknown { .. })));
    }

    #[test]
    fn star_instance_degrees() {
        let g = star_instance();
        assert_eq!(g.graph().degrees(), vec![7, 7, 8, 8]);
        assert_eq!(g.local_edge_connectivity(0, 1), 7);
        assert_eq!(g.local_edge_connectivity(2, 3), 8);
    }
}
