//! Gluing a closed surface from a verified cycle-list witness.
//!
//! Each cycle copy becomes a polygon whose sides are dual to the cycle's
//! vertices and whose corners are dual to its edges. Sides are paired across
//! σ, corners are glued into vertices, and the link of every glued vertex is
//! read off as a word.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::CycleList;
use crate::graph::{EdgeId, Vertex};
use crate::whitehead::{is_positive, mu, vertex_letter, vertex_name, WhiteheadGraph};
use crate::witness::{sigma_pair, verify_witness, witness_hash, witness_json, PairKey, WitnessError};
use crate::words::{power_of_conjugate, render_letters, Letter};

/// Refuse to expand witnesses with more sides than this.
pub const MAX_SIDES: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("empty witness")]
    Empty,
    #[error("witness does not verify: {0}")]
    NotVerified(String),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error("witness expands to {0} polygon sides, above the limit")]
    TooLarge(u64),
    #[error("no side pairing at {vertex} {pair:?}: {incoming} incoming, {outgoing} outgoing")]
    Pairing {
        vertex: String,
        pair: (EdgeId, EdgeId),
        incoming: usize,
        outgoing: usize,
    },
    #[error("inconsistent gluing: {0}")]
    Gluing(String),
    #[error("inconsistent vertex link: {0}")]
    Link(String),
    #[error("chi(S) - m = {0} is not negative; every polygon is a bigon")]
    NotNegative(i64),
    #[error("bad partition: {0}")]
    Partition(String),
}

/// σ-compatible total orders on the edges at each vertex.
///
/// Positive vertices use edge-id order; the order at `μ(v)` is transported
/// through σ_v.
#[derive(Clone, Debug)]
pub struct LinearOrders {
    keys: BTreeMap<(Vertex, EdgeId), EdgeId>,
}

impl LinearOrders {
    pub fn canonical(wg: &WhiteheadGraph) -> Self {
        let g = wg.graph();
        let mut keys = BTreeMap::new();
        for v in 0..g.vertex_count() {
            for e in g.incident(v) {
                let key = if is_positive(v) { e } else { wg.sigma_edge(v, e) };
                keys.insert((v, e), key);
            }
        }
        LinearOrders { keys }
    }

    pub fn key(&self, v: Vertex, e: EdgeId) -> EdgeId {
        self.keys[&(v, e)]
    }

    pub fn precedes(&self, v: Vertex, e: EdgeId, f: EdgeId) -> bool {
        self.key(v, e) < self.key(v, f)
    }

    /// `(v,e) ≺ (v,e')` iff `(μv, σe) ≺ (μv, σe')`, checked everywhere.
    pub fn is_compatible(&self, wg: &WhiteheadGraph) -> bool {
        let g = wg.graph();
        (0..g.vertex_count()).all(|v| {
            let inc = g.incident(v);
            inc.iter().all(|&e| {
                inc.iter().all(|&f| {
                    self.precedes(v, e, f) == self.precedes(mu(v), wg.sigma_edge(v, e), wg.sigma_edge(v, f))
                })
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Side {
    /// Whitehead vertex dual to this side; its generator is the label.
    pub vertex: Vertex,
    /// `(e, f)` with `(v,e) ≺ (v,f)`.
    pub pair: (EdgeId, EdgeId),
    /// Transverse orientation points into the polygon.
    pub incoming: bool,
    /// Corner indices; the side runs from `w_f` (tail) to `w_e` (head).
    pub tail: usize,
    pub head: usize,
}

impl Side {
    pub fn label(&self) -> String {
        format!(
            "({}, {{{}, {}}})",
            render_letters(&[Letter::pos(vertex_letter(self.vertex).generator)]),
            self.pair.0,
            self.pair.1
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPolygon {
    pub id: usize,
    /// Index into the witness iteration order, and which copy.
    pub cycle: usize,
    pub copy: u64,
    /// Corner `j` is dual to `corners[j]`.
    pub corners: Vec<EdgeId>,
    /// Side `i` joins corners `i` and `i+1`.
    pub sides: Vec<Side>,
}

pub type SideRef = (usize, usize);
pub type CornerRef = (usize, usize);

/// Link of one glued vertex `q`: the corners met in order, the letters
/// recorded when crossing sides, and the oriented reading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Link {
    pub corners: Vec<CornerRef>,
    /// `x_1 … x_l` with `f_k = σ_{x_k^{-1}}(f_{k-1})`.
    pub letters: Vec<Letter>,
    /// `f_0 … f_{l-1}`.
    pub edges: Vec<EdgeId>,
    pub base_word_index: usize,
    pub exponent: usize,
    /// The reading oriented so that it is a positive power of the base word.
    pub word: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl SquareCounts {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    pub polygons: Vec<DualPolygon>,
    /// Each pair lists the incoming side first.
    pub pairing: Vec<(SideRef, SideRef)>,
    /// Glued vertex of every corner.
    pub corner_class: Vec<Vec<usize>>,
    pub nu: usize,
    pub eta: usize,
    pub zeta: usize,
    pub links: Vec<Link>,
    pub orientable: bool,
    /// Cell counts of the doubled punctured square complex.
    pub doubled: SquareCounts,
    witness_hash: String,
}

impl SurfaceComplex {
    pub fn chi_s0(&self) -> i64 {
        self.nu as i64 - self.eta as i64 + self.zeta as i64
    }

    /// χ(S) − m, where S has one polygon per glued vertex.
    pub fn chi_s_minus_m(&self) -> i64 {
        self.zeta as i64 - self.eta as i64
    }

    pub fn witness_hash(&self) -> &str {
        &self.witness_hash
    }
}

fn dual_polygons(wg: &WhiteheadGraph, list: &CycleList, orders: &LinearOrders) -> Vec<DualPolygon> {
    let g = wg.graph();
    let mut out = Vec::new();
    for (ci, (c, mult)) in list.iter().enumerate() {
        let corners = c.edges().to_vec();
        let verts = c.vertices(g);
        let n = corners.len();
        let sides: Vec<Side> = (0..n)
            .map(|i| {
                let v = verts[i];
                let (x, y) = (corners[i], corners[(i + 1) % n]);
                let (e, f, head, tail) = if orders.precedes(v, x, y) {
                    (x, y, i, (i + 1) % n)
                } else {
                    (y, x, (i + 1) % n, i)
                };
                Side {
                    vertex: v,
                    pair: (e, f),
                    incoming: is_positive(v),
                    tail,
                    head,
                }
            })
            .collect();
        for copy in 0..mult {
            out.push(DualPolygon {
                id: out.len(),
                cycle: ci,
                copy,
                corners: corners.clone(),
                sides: sides.clone(),
            });
        }
    }
    out
}

fn key_of(side: &Side) -> PairKey {
    let (e, f) = side.pair;
    (side.vertex, e.min(f), e.max(f))
}

/// Greedy pairing: incoming sides at `(a,{e,f})` against outgoing sides at
/// `(μa, {σe, σf})`, both taken in polygon order.
fn pair_sides(wg: &WhiteheadGraph, polygons: &[DualPolygon]) -> Result<Vec<(SideRef, SideRef)>, SurfaceError> {
    let mut incoming: BTreeMap<PairKey, Vec<SideRef>> = BTreeMap::new();
    let mut outgoing: BTreeMap<PairKey, Vec<SideRef>> = BTreeMap::new();
    for p in polygons {
        for (i, s) in p.sides.iter().enumerate() {
            if s.incoming {
                incoming.entry(sigma_pair(wg, key_of(s))).or_default().push((p.id, i));
            } else {
                outgoing.entry(key_of(s)).or_default().push((p.id, i));
            }
        }
    }
    let keys: BTreeSet<PairKey> = incoming.keys().chain(outgoing.keys()).copied().collect();
    let mut pairs = Vec::new();
    for k in keys {
        let ins = incoming.get(&k).map(Vec::as_slice).unwrap_or(&[]);
        let outs = outgoing.get(&k).map(Vec::as_slice).unwrap_or(&[]);
        if ins.len() != outs.len() {
            return Err(SurfaceError::Pairing {
                vertex: vertex_name(k.0),
                pair: (k.1, k.2),
                incoming: ins.len(),
                outgoing: outs.len(),
            });
        }
        pairs.extend(ins.iter().copied().zip(outs.iter().copied()));
    }
    Ok(pairs)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Glues polygons along `pairing` and reads every vertex link.
fn glue(
    wg: &WhiteheadGraph,
    polygons: Vec<DualPolygon>,
    pairing: Vec<(SideRef, SideRef)>,
    hash: String,
) -> Result<SurfaceComplex, SurfaceError> {
    let side = |r: SideRef| -> &Side { &polygons[r.0].sides[r.1] };

    let mut partner: Vec<Vec<Option<SideRef>>> = polygons.iter().map(|p| vec![None; p.sides.len()]).collect();
    for &(s, t) in &pairing {
        for (x, y) in [(s, t), (t, s)] {
            if partner[x.0][x.1].replace(y).is_some() {
                return Err(SurfaceError::Gluing(format!("side {:?} is paired twice", x)));
            }
        }
        let (a, b) = (side(s), side(t));
        if !a.incoming || b.incoming || b.vertex != mu(a.vertex) {
            return Err(SurfaceError::Gluing(format!(
                "sides {} and {} do not have opposite transverse orientations on one generator",
                a.label(),
                b.label()
            )));
        }
        let (pa, pb) = (&polygons[s.0], &polygons[t.0]);
        for (ca, cb) in [(a.tail, b.tail), (a.head, b.head)] {
            if wg.sigma_edge(a.vertex, pa.corners[ca]) != pb.corners[cb] {
                return Err(SurfaceError::Gluing(format!(
                    "corner {} of polygon {} is glued to corner {} of polygon {}, which is not its σ-image",
                    pa.corners[ca], s.0, pb.corners[cb], t.0
                )));
            }
        }
    }
    let mut partner_of: Vec<Vec<SideRef>> = Vec::with_capacity(polygons.len());
    for (pid, row) in partner.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (i, p) in row.iter().enumerate() {
            out.push(p.ok_or_else(|| SurfaceError::Gluing(format!("side ({pid}, {i}) is unpaired")))?);
        }
        partner_of.push(out);
    }

    let offsets: Vec<usize> = polygons
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.corners.len();
            Some(o)
        })
        .collect();
    let total_corners: usize = polygons.iter().map(|p| p.corners.len()).sum();
    let cid = |c: CornerRef| offsets[c.0] + c.1;
    let mut uf = UnionFind((0..total_corners).collect());
    for &(s, t) in &pairing {
        let (a, b) = (side(s), side(t));
        uf.union(cid((s.0, a.tail)), cid((t.0, b.tail)));
        uf.union(cid((s.0, a.head)), cid((t.0, b.head)));
    }
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut corner_class: Vec<Vec<usize>> = Vec::with_capacity(polygons.len());
    for (pid, p) in polygons.iter().enumerate() {
        let row = (0..p.corners.len())
            .map(|j| {
                let r = uf.find(cid((pid, j)));
                let next = class_of_root.len();
                *class_of_root.entry(r).or_insert(next)
            })
            .collect();
        corner_class.push(row);
    }
    let nu = class_of_root.len();

    let mut visited = vec![false; total_corners];
    let mut links = Vec::with_capacity(nu);
    for pid in 0..polygons.len() {
        for j in 0..polygons[pid].corners.len() {
            if visited[cid((pid, j))] {
                continue;
            }
            let link = walk_link(wg, &polygons, &partner_of, (pid, j), &mut visited, &cid)?;
            let class = corner_class[pid][j];
            let members = corner_class
                .iter()
                .enumerate()
                .flat_map(|(p, row)| row.iter().enumerate().filter(|&(_, &c)| c == class).map(move |(k, _)| (p, k)))
                .collect::<BTreeSet<CornerRef>>();
            let seen: BTreeSet<CornerRef> = link.corners.iter().copied().collect();
            if members != seen {
                return Err(SurfaceError::Link(format!(
                    "the walk from corner {:?} meets {} corners but its glued vertex has {}",
                    (pid, j),
                    seen.len(),
                    members.len()
                )));
            }
            links.push(link);
        }
    }
    if links.len() != nu {
        return Err(SurfaceError::Link(format!("{} links for {} vertices", links.len(), nu)));
    }
    links.sort_by_key(|l| corner_class[l.corners[0].0][l.corners[0].1]);

    let zeta = polygons.len();
    let eta = pairing.len();
    let link_total: usize = links.iter().map(|l| l.letters.len()).sum();
    let doubled = SquareCounts {
        vertices: 2 * zeta + link_total,
        edges: 2 * eta + 3 * link_total,
        faces: 2 * link_total,
    };
    let orientable = orientable(&polygons, &pairing);
    Ok(SurfaceComplex {
        polygons,
        pairing,
        corner_class,
        nu,
        eta,
        zeta,
        links,
        orientable,
        doubled,
        witness_hash: hash,
    })
}

/// Walks around a glued vertex. At corner `(P, f)` entered through endpoint
/// `p` of `f`, leave through the side at `q = other_end(f, p)` and arrive at
/// the glued corner of the partner polygon, entering through `μ(q)`.
fn walk_link(
    wg: &WhiteheadGraph,
    polygons: &[DualPolygon],
    partner: &[Vec<SideRef>],
    start: CornerRef,
    visited: &mut [bool],
    cid: &dyn Fn(CornerRef) -> usize,
) -> Result<Link, SurfaceError> {
    let g = wg.graph();
    let first_edge = polygons[start.0].corners[start.1];
    let start_entry = g.ends(first_edge)[0];
    let (mut corner, mut entry) = (start, start_entry);
    let mut corners = Vec::new();
    let mut letters = Vec::new();
    let mut edges = Vec::new();
    loop {
        if visited[cid(corner)] {
            return Err(SurfaceError::Link(format!("corner {:?} is met twice around one vertex", corner)));
        }
        visited[cid(corner)] = true;
        let p = &polygons[corner.0];
        let f = p.corners[corner.1];
        let q = g
            .other_end(f, entry)
            .ok_or_else(|| SurfaceError::Link(format!("edge {f} is not incident with the entry vertex")))?;
        let n = p.sides.len();
        let candidates = [(corner.1 + n - 1) % n, corner.1];
        let si = candidates
            .into_iter()
            .find(|&i| p.sides[i].vertex == q)
            .ok_or_else(|| SurfaceError::Link(format!("no side at {} next to corner {:?}", vertex_name(q), corner)))?;
        let s = &p.sides[si];
        let gen = vertex_letter(q).generator;
        letters.push(Letter::new(gen, s.incoming));
        edges.push(f);
        corners.push(corner);

        let (tp, ti) = partner[corner.0][si];
        let t = &polygons[tp].sides[ti];
        let next_corner = if corner.1 == s.tail { t.tail } else { t.head };
        let next = (tp, next_corner);
        let g_next = polygons[tp].corners[next_corner];
        if g_next != wg.sigma_edge(q, f) {
            return Err(SurfaceError::Link(format!(
                "crossing {} from edge {f} lands on edge {g_next}, not on σ_{}({f})",
                s.label(),
                vertex_name(q)
            )));
        }
        corner = next;
        entry = t.vertex;
        if corner == start {
            if entry != start_entry {
                return Err(SurfaceError::Link(format!(
                    "the walk returns to corner {:?} from the other side",
                    start
                )));
            }
            break;
        }
    }
    let (base_word_index, exponent, word) = orient_reading(wg, &letters, edges[0])?;
    Ok(Link {
        corners,
        letters,
        edges,
        base_word_index,
        exponent,
        word,
    })
}

fn invert(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

/// Matches a reading against the word the edge `f0` came from.
fn orient_reading(wg: &WhiteheadGraph, letters: &[Letter], f0: EdgeId) -> Result<(usize, usize, Vec<Letter>), SurfaceError> {
    let j = wg.provenance(f0).word;
    let base = wg.words().words()[j].letters();
    if let Some(p) = power_of_conjugate(letters, base) {
        return Ok((j, p, letters.to_vec()));
    }
    let inv = invert(letters);
    if let Some(p) = power_of_conjugate(&inv, base) {
        return Ok((j, p, inv));
    }
    Err(SurfaceError::Link(format!(
        "reading {} is not a power of a conjugate of word {j} = {} or its inverse",
        render_letters(letters),
        render_letters(base)
    )))
}

/// Propagates polygon orientations across every pair of glued sides.
fn orientable(polygons: &[DualPolygon], pairing: &[(SideRef, SideRef)]) -> bool {
    let along = |r: SideRef| -> i8 {
        let s = &polygons[r.0].sides[r.1];
        if s.tail == r.1 {
            1
        } else {
            -1
        }
    };
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); polygons.len()];
    for &(s, t) in pairing {
        // ε_s·δ_s = −ε_t·δ_t, so ε_t = −δ_s·δ_t·ε_s.
        let rel = -along(s) * along(t);
        adj[s.0].push((t.0, rel));
        adj[t.0].push((s.0, rel));
    }
    let mut sign = vec![0i8; polygons.len()];
    for root in 0..polygons.len() {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut stack = vec![root];
        while let Some(p) = stack.pop() {
            for &(q, rel) in &adj[p] {
                let want = sign[p] * rel;
                if sign[q] == 0 {
                    sign[q] = want;
                    stack.push(q);
                } else if sign[q] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// Builds the glued surface for a witness that passes the pair-balance check.
pub fn build_surface(wg: &WhiteheadGraph, list: &CycleList) -> Result<SurfaceComplex, SurfaceError> {
    if list.is_empty() {
        return Err(SurfaceError::Empty);
    }
    let verdict = verify_witness(wg, list, false, false)?;
    if !verdict.pass {
        let f = &verdict.failures[0];
        return Err(SurfaceError::NotVerified(format!(
            "{} pairs unbalanced, first at {} {:?}: {} vs {}",
            verdict.failures.len(),
            f.vertex,
            f.pair,
            f.count,
            f.image_count
        )));
    }
    let sides: u64 = list
        .iter()
        .map(|(c, m)| (c.len() as u64).saturating_mul(m))
        .fold(0u64, u64::saturating_add);
    if sides > MAX_SIDES {
        return Err(SurfaceError::TooLarge(sides));
    }
    let orders = LinearOrders::canonical(wg);
    debug_assert!(orders.is_compatible(wg));
    let polygons = dual_polygons(wg, list, &orders);
    let pairing = pair_sides(wg, &polygons)?;
    let hash = witness_hash(&witness_json(wg, list));
    glue(wg, polygons, pairing, hash)
}

/// Which word each glued vertex's polygon is charged to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Partition {
    /// The word the link reading came from.
    Auto,
    /// One word index per link, in link order.
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryWordJson {
    pub vertex: String,
    pub word: String,
    pub base_word_index: usize,
    pub exponent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct CertificateJson {
    pub witness_hash: String,
    pub m: usize,
    pub chi_S_minus_m: i64,
    pub chi_S_doubleprime: i64,
    pub orientable: bool,
    pub boundary_words: Vec<BoundaryWordJson>,
    pub positive_degrees: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub m: usize,
    pub chi_s_minus_m: i64,
    pub chi_s_doubleprime: i64,
    pub orientable: bool,
    /// Genus of S″ when orientable.
    pub genus: Option<i64>,
    pub boundary_words: Vec<BoundaryWordJson>,
    /// Every word index of the list, including words with no polygon.
    pub positive_degrees: BTreeMap<usize, u64>,
}

impl SurfaceReport {
    pub fn degrees_positive(&self) -> bool {
        self.positive_degrees.values().all(|&d| d > 0)
    }

    pub fn degrees_equal(&self) -> bool {
        let mut it = self.positive_degrees.values();
        match it.next() {
            Some(first) => it.all(|d| d == first),
            None => true,
        }
    }
}

pub fn boundary_words(complex: &SurfaceComplex) -> Vec<BoundaryWordJson> {
    complex
        .links
        .iter()
        .enumerate()
        .map(|(q, l)| BoundaryWordJson {
            vertex: format!("q{q}"),
            word: render_letters(&l.word),
            base_word_index: l.base_word_index,
            exponent: l.exponent,
        })
        .collect()
}

pub fn surface_report(
    wg: &WhiteheadGraph,
    complex: &SurfaceComplex,
    partition: &Partition,
) -> Result<SurfaceReport, SurfaceError> {
    let chi = complex.chi_s_minus_m();
    let doubled = complex.doubled.euler();
    if doubled != 2 * chi {
        return Err(SurfaceError::Gluing(format!(
            "doubled complex has Euler characteristic {doubled}, expected {}",
            2 * chi
        )));
    }
    if chi >= 0 {
        return Err(SurfaceError::NotNegative(chi));
    }
    let words = wg.words().words();
    let mut degrees: BTreeMap<usize, u64> = (0..words.len()).map(|j| (j, 0)).collect();
    match partition {
        Partition::Auto => {
            for l in &complex.links {
                *degrees.entry(l.base_word_index).or_insert(0) += l.exponent as u64;
            }
        }
        Partition::Explicit(assign) => {
            if assign.len() != complex.links.len() {
                return Err(SurfaceError::Partition(format!(
                    "{} assignments for {} polygons",
                    assign.len(),
                    complex.links.len()
                )));
            }
            for (q, (&j, l)) in assign.iter().zip(&complex.links).enumerate() {
                let base = words
                    .get(j)
                    .ok_or_else(|| SurfaceError::Partition(format!("word index {j} out of range")))?;
                let p = power_of_conjugate(&l.word, base.letters())
                    .or_else(|| power_of_conjugate(&invert(&l.word), base.letters()))
                    .ok_or_else(|| {
                        SurfaceError::Partition(format!(
                            "polygon q{q} reads {}, not a power of word {j}",
                            render_letters(&l.word)
                        ))
                    })?;
                *degrees.entry(j).or_insert(0) += p as u64;
            }
        }
    }
    Ok(SurfaceReport {
        m: complex.nu,
        chi_s_minus_m: chi,
        chi_s_doubleprime: doubled,
        orientable: complex.orientable,
        genus: complex.orientable.then(|| 1 - doubled / 2),
        boundary_words: boundary_words(complex),
        positive_degrees: degrees,
    })
}

pub fn certificate(complex: &SurfaceComplex, report: &SurfaceReport) -> CertificateJson {
    CertificateJson {
        witness_hash: complex.witness_hash.clone(),
        m: report.m,
        chi_S_minus_m: report.chi_s_minus_m,
        chi_S_doubleprime: report.chi_s_doubleprime,
        orientable: report.orientable,
        boundary_words: report.boundary_words.clone(),
        positive_degrees: report.positive_degrees.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}
