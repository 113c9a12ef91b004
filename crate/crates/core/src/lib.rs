//! Whitehead graphs, cycle-list witnesses and the polygonal surfaces they
//! assemble into.

pub mod cycles;
pub mod examples;
pub mod fourvertex;
pub mod generate;
pub mod graph;
pub mod lp;
pub mod regular;
pub mod surface;
pub mod whitehead;
pub mod witness;
pub mod words;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Hex sha256 of the compact JSON encoding of `value`.
pub fn canonical_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("value serializes");
    hex::encode(Sha256::digest(&bytes))
}
