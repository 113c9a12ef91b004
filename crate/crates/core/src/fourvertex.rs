//! Connected graphs on four vertices: the auxiliary digraph at a vertex of
//! minimum degree, its partition into good parts, a uniform completion, and
//! the edge-removal induction that turns it into a witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{lcm, Cycle, CycleError, CycleList};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::regular::{regular_witness, RegularError};
use crate::whitehead::{mu, vertex_name, WhiteheadGraph};
use crate::witness::{search_witness_lp, verify_witness, witness_json, LevelJson, LpResult, WitnessError, WitnessJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FourVertexError {
    #[error("graph has {0} vertices; this construction needs exactly 4")]
    NotFourVertex(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("lambda({vertex}, mu({vertex})) = {lambda} < {degree} = deg({vertex})")]
    Lambda { vertex: String, lambda: usize, degree: usize },
    #[error("malformed auxiliary digraph: {0}")]
    Aux(String),
    #[error("auxiliary digraph violates the partition preconditions: {0}")]
    Precondition(String),
    #[error("no orbit recipe for a type (2) part with two short cycles and a path with {0} edges at w")]
    NoRecipe(usize),
    #[error("uniformity check failed: {0}")]
    Uniformity(String),
    #[error("deg({u}) = {deg_u} > {deg_w} = deg(w) but no edge joins {u} and its partner")]
    MissingPartnerEdge { u: String, deg_u: usize, deg_w: usize },
    #[error("level check failed: {0}")]
    Level(String),
    #[error("constant overflow")]
    Overflow,
    #[error(transparent)]
    Regular(#[from] RegularError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Path { start: Color, end: Color },
    Cycle,
}

/// A component in walk order. Paths run from their in-degree-0 node;
/// cycles start at their smallest node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub nodes: Vec<usize>,
    pub kind: ComponentKind,
}

impl Component {
    pub fn is_short(&self) -> bool {
        self.nodes.len() == 2
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == ComponentKind::Cycle
    }

    pub fn path_colors(&self) -> Option<(Color, Color)> {
        match self.kind {
            ComponentKind::Path { start, end } => Some((start, end)),
            ComponentKind::Cycle => None,
        }
    }

    /// Color of a path whose ends agree.
    pub fn mono_color(&self) -> Option<Color> {
        self.path_colors().filter(|(s, e)| s == e).map(|(s, _)| s)
    }

    pub fn start(&self) -> usize {
        self.nodes[0]
    }

    pub fn end(&self) -> usize {
        *self.nodes.last().unwrap()
    }

    fn describe(&self) -> String {
        match self.kind {
            ComponentKind::Cycle => format!("cycle/{}", self.nodes.len()),
            ComponentKind::Path { start, end } => format!("{}-{} path/{}", start.letter(), end.letter(), self.nodes.len() - 1),
        }
    }
}

/// Shape of a component for building abstract digraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentSpec {
    /// Number of `e` nodes; the component has twice as many nodes.
    pub e_count: usize,
    /// `None` for a cycle.
    pub ends: Option<(Color, Color)>,
}

/// Nodes `0..m` are `e_1..e_m` (the edges at `w` in id order) and `m..2m`
/// are `f_1..f_m` with `f_i = σ_w(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxDigraph {
    pub m: usize,
    pub succ: Vec<Option<usize>>,
    pub color: Vec<Option<Color>>,
    pub components: Vec<Component>,
}

impl AuxDigraph {
    pub fn e(&self, i: usize) -> usize {
        i
    }

    pub fn f(&self, i: usize) -> usize {
        self.m + i
    }

    pub fn is_e(&self, node: usize) -> bool {
        node < self.m
    }

    pub fn index(&self, node: usize) -> usize {
        node % self.m
    }

    pub fn node_name(&self, node: usize) -> String {
        format!("{}{}", if self.is_e(node) { 'e' } else { 'f' }, self.index(node) + 1)
    }

    pub fn node_count(&self) -> usize {
        2 * self.m
    }

    fn new(m: usize, succ: Vec<Option<usize>>, color: Vec<Option<Color>>) -> Result<Self, FourVertexError> {
        let bad = |s: String| Err(FourVertexError::Aux(s));
        let n = 2 * m;
        let mut pred = vec![None; n];
        for (v, s) in succ.iter().enumerate() {
            if let Some(t) = *s {
                if pred[t].is_some() {
                    return bad(format!("node {t} has in-degree 2"));
                }
                pred[t] = Some(v);
            }
        }
        for i in 0..m {
            if pred[i].is_none_or(|p| p != m + i) {
                return bad(format!("e{} must be entered from f{} only", i + 1, i + 1));
            }
            if succ[m + i] != Some(i) {
                return bad(format!("f{} must leave towards e{}", i + 1, i + 1));
            }
        }
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in (0..n).filter(|&v| pred[v].is_none()) {
            let mut nodes = vec![start];
            seen[start] = true;
            let mut v = start;
            while let Some(t) = succ[v] {
                nodes.push(t);
                seen[t] = true;
                v = t;
            }
            if nodes.len() % 2 != 0 {
                return bad(format!("path from node {start} has even length"));
            }
            let (Some(a), Some(b)) = (color[start], color[v]) else {
                return bad(format!("path ends at nodes {start}, {v} must be colored"));
            };
            components.push(Component {
                nodes,
                kind: ComponentKind::Path { start: a, end: b },
            });
        }
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut nodes = vec![start];
            seen[start] = true;
            let mut v = succ[start].expect("node on a cycle");
            while v != start {
                nodes.push(v);
                seen[v] = true;
                v = succ[v].expect("node on a cycle");
            }
            if nodes.len() % 2 != 0 {
                return bad(format!("cycle through node {start} has odd length"));
            }
            components.push(Component {
                nodes,
                kind: ComponentKind::Cycle,
            });
        }
        components.sort_by_key(|c| c.start());
        for c in &components {
            for (k, &v) in c.nodes.iter().enumerate() {
                let endpoint = !c.is_cycle() && (k == 0 || k + 1 == c.nodes.len());
                if endpoint != color[v].is_some() {
                    return bad(format!("node {v} colored iff it is a path end"));
                }
            }
        }
        let d = AuxDigraph { m, succ, color, components };
        let starts = d.components.iter().filter(|c| c.path_colors().is_some_and(|p| p.0 == Color::Red)).count();
        let ends = d.components.iter().filter(|c| c.path_colors().is_some_and(|p| p.1 == Color::Red)).count();
        if starts != ends {
            return bad(format!("{starts} red sources but {ends} red sinks"));
        }
        Ok(d)
    }

    /// Concrete digraph at `w`, colored with respect to `u`.
    pub fn from_graph(g: &Multigraph, w: Vertex, u: Vertex, sigma_w: &BTreeMap<EdgeId, EdgeId>) -> Result<Self, FourVertexError> {
        let es = g.incident(w);
        let m = es.len();
        let fs: Vec<EdgeId> = es.iter().map(|e| sigma_w[e]).collect();
        let mut succ = vec![None; 2 * m];
        let mut color = vec![None; 2 * m];
        for i in 0..m {
            succ[m + i] = Some(i);
            if let Some(j) = fs.iter().position(|&f| f == es[i]) {
                succ[i] = Some(m + j);
            }
            color[i] = if g.is_incident(es[i], u) {
                Some(Color::Red)
            } else if g.is_incident(es[i], mu(u)) {
                Some(Color::Blue)
            } else {
                None
            };
            color[m + i] = if g.is_incident(fs[i], u) {
                Some(Color::Blue)
            } else if g.is_incident(fs[i], mu(u)) {
                Some(Color::Red)
            } else {
                None
            };
        }
        let d = Self::new(m, succ, color)?;
        let red_e = (0..m).filter(|&i| d.color[i] == Some(Color::Red)).count();
        let red_f = (m..2 * m).filter(|&i| d.color[i] == Some(Color::Red)).count();
        let blue_e = (0..m).filter(|&i| d.color[i] == Some(Color::Blue)).count();
        let blue_f = (m..2 * m).filter(|&i| d.color[i] == Some(Color::Blue)).count();
        if red_e != red_f || blue_e != blue_f {
            return Err(FourVertexError::Aux(format!(
                "r = {red_e}, r' = {red_f}, b = {blue_e}, b' = {blue_f}"
            )));
        }
        Ok(d)
    }

    /// Abstract digraph with the given components, numbered consecutively.
    pub fn from_specs(specs: &[ComponentSpec]) -> Result<Self, FourVertexError> {
        let m: usize = specs.iter().map(|s| s.e_count).sum();
        let mut succ = vec![None; 2 * m];
        let mut color = vec![None; 2 * m];
        let mut a = 0;
        for s in specs {
            if s.e_count == 0 {
                return Err(FourVertexError::Aux("empty component".into()));
            }
            for j in 0..s.e_count {
                succ[m + a + j] = Some(a + j);
                if j + 1 < s.e_count {
                    succ[a + j] = Some(m + a + j + 1);
                }
            }
            match s.ends {
                None => succ[a + s.e_count - 1] = Some(m + a),
                Some((x, y)) => {
                    color[m + a] = Some(x);
                    color[a + s.e_count - 1] = Some(y);
                }
            }
            a += s.e_count;
        }
        Self::new(m, succ, color)
    }

    pub fn count(&self, ids: &[usize], c: Color) -> usize {
        ids.iter()
            .flat_map(|&i| self.components[i].nodes.iter())
            .filter(|&&v| self.color[v] == Some(c))
            .count()
    }

    pub fn nodes_in(&self, ids: &[usize]) -> usize {
        ids.iter().map(|&i| self.components[i].nodes.len()).sum()
    }

    /// At most half the nodes red and at most half blue.
    pub fn is_good_subset(&self, ids: &[usize]) -> bool {
        let n = self.nodes_in(ids);
        2 * self.count(ids, Color::Red) <= n && 2 * self.count(ids, Color::Blue) <= n
    }

    pub fn is_good(&self) -> bool {
        self.is_good_subset(&(0..self.components.len()).collect::<Vec<_>>())
    }

    pub fn to_dot(&self, completion: Option<&Completion>) -> String {
        let mut s = String::from("digraph D {\n");
        for v in 0..self.node_count() {
            let fill = match self.color[v] {
                Some(Color::Red) => "red",
                Some(Color::Blue) => "lightblue",
                None => "white",
            };
            let _ = writeln!(s, "  \"{}\" [style=filled, fillcolor={fill}];", self.node_name(v));
        }
        for v in 0..self.node_count() {
            if let Some(t) = self.succ[v] {
                let _ = writeln!(s, "  \"{}\" -> \"{}\";", self.node_name(v), self.node_name(t));
            }
        }
        if let Some(c) = completion {
            for &(a, b) in &c.added {
                let _ = writeln!(s, "  \"{}\" -> \"{}\" [style=dashed];", self.node_name(a), self.node_name(b));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodPart {
    /// One of the eight shapes, numbered 1 to 8.
    pub kind: u8,
    pub components: Vec<usize>,
}

/// Checks that the components form a good part of the given shape.
pub fn validate_part(d: &AuxDigraph, kind: u8, ids: &[usize]) -> Result<(), String> {
    let comps: Vec<&Component> = ids.iter().map(|&i| &d.components[i]).collect();
    let short_cycles = comps.iter().filter(|c| c.is_cycle() && c.is_short()).count();
    let long_cycles = comps.iter().filter(|c| c.is_cycle() && !c.is_short()).count();
    let paths: Vec<&&Component> = comps.iter().filter(|c| !c.is_cycle()).collect();
    let is = |c: &Component, s: Color, e: Color| c.path_colors() == Some((s, e));
    // All short mono paths other than `skip` share one color.
    let shorts_ok = |rest: &[&&Component]| {
        let colors: BTreeSet<Option<Color>> = rest.iter().map(|c| if c.is_short() { c.mono_color() } else { None }).collect();
        colors.len() <= 1 && !colors.contains(&None)
    };
    let ok = match kind {
        1 => {
            paths.len() == 2
                && long_cycles == 0
                && short_cycles <= 1
                && paths.iter().all(|p| p.is_short())
                && paths.iter().any(|p| is(p, Color::Red, Color::Red))
                && paths.iter().any(|p| is(p, Color::Blue, Color::Blue))
        }
        2 => paths.len() == 1 && paths[0].mono_color().is_some() && long_cycles == 0 && (1..=2).contains(&short_cycles),
        3 => {
            paths.len() == 2
                && short_cycles == 1
                && long_cycles == 0
                && paths.iter().any(|p| is(p, Color::Blue, Color::Red))
                && paths.iter().any(|p| is(p, Color::Red, Color::Blue))
        }
        4 => paths.is_empty() && long_cycles == 0 && short_cycles >= 2,
        5 => {
            let long: Vec<_> = paths.iter().filter(|p| !p.is_short()).collect();
            let rest: Vec<_> = paths.iter().filter(|p| p.is_short()).copied().collect();
            comps.len() == paths.len() && long.len() == 1 && long[0].mono_color().is_some() && shorts_ok(&rest)
        }
        6 => {
            let br = paths.iter().position(|p| is(p, Color::Blue, Color::Red));
            let rb = paths.iter().position(|p| is(p, Color::Red, Color::Blue));
            match (br, rb) {
                (Some(x), Some(y)) => {
                    let rest: Vec<_> = paths.iter().enumerate().filter(|&(i, _)| i != x && i != y).map(|(_, p)| *p).collect();
                    comps.len() == paths.len() && shorts_ok(&rest)
                }
                _ => false,
            }
        }
        7 => long_cycles == 1 && short_cycles == 0 && shorts_ok(&paths),
        8 => comps.len() == 2 && long_cycles == 1 && short_cycles == 1,
        _ => false,
    };
    if !ok {
        let shape: Vec<String> = comps.iter().map(|c| c.describe()).collect();
        return Err(format!("components {:?} do not have shape ({kind})", shape));
    }
    if !d.is_good_subset(ids) {
        return Err(format!("part {ids:?} of shape ({kind}) is not good"));
    }
    Ok(())
}

/// Partition into good parts of the eight shapes.
pub fn decompose_good(d: &AuxDigraph) -> Result<Vec<GoodPart>, FourVertexError> {
    if d.node_count() < 4 {
        return Err(FourVertexError::Precondition(format!("{} nodes, need at least 4", d.node_count())));
    }
    if !d.is_good() {
        return Err(FourVertexError::Precondition("more than half the nodes share a color".into()));
    }
    let parts = decompose_ids(d, (0..d.components.len()).collect())?;
    let mut covered: Vec<usize> = parts.iter().flat_map(|p| p.components.iter().copied()).collect();
    covered.sort_unstable();
    if covered != (0..d.components.len()).collect::<Vec<_>>() {
        return Err(FourVertexError::Uniformity("parts do not partition the components".into()));
    }
    for p in &parts {
        validate_part(d, p.kind, &p.components).map_err(FourVertexError::Uniformity)?;
    }
    Ok(parts)
}

fn part(kind: u8, mut components: Vec<usize>) -> GoodPart {
    components.sort_unstable();
    GoodPart { kind, components }
}

fn without(ids: &[usize], drop: &[usize]) -> Vec<usize> {
    ids.iter().copied().filter(|i| !drop.contains(i)).collect()
}

fn decompose_ids(d: &AuxDigraph, ids: Vec<usize>) -> Result<Vec<GoodPart>, FourVertexError> {
    let c = |i: usize| &d.components[i];
    let short_mono = |col: Color| ids.iter().copied().find(|&i| c(i).is_short() && c(i).mono_color() == Some(col));
    let fail = |s: &str| Err(FourVertexError::Precondition(s.to_string()));

    if let (Some(rr), Some(bb)) = (short_mono(Color::Red), short_mono(Color::Blue)) {
        let rest = without(&ids, &[rr, bb]);
        if rest.is_empty() {
            return Ok(vec![part(1, vec![rr, bb])]);
        }
        if d.nodes_in(&rest) == 2 {
            if c(rest[0]).is_cycle() {
                return Ok(vec![part(1, vec![rr, bb, rest[0]])]);
            }
            return fail("two leftover nodes that are not a short cycle");
        }
        let mut out = vec![part(1, vec![rr, bb])];
        out.extend(decompose_ids(d, rest)?);
        return Ok(out);
    }

    // From here one color, `y`, owns every short monochromatic path.
    let y = if short_mono(Color::Red).is_some() { Color::Red } else { Color::Blue };
    let short_cycles: Vec<usize> = ids.iter().copied().filter(|&i| c(i).is_cycle() && c(i).is_short()).collect();

    if let (Some(&sc), Some(yy)) = (short_cycles.first(), short_mono(y)) {
        let paths: Vec<usize> = ids.iter().copied().filter(|&i| !c(i).is_cycle()).collect();
        let is_type2 = paths.len() == 1
            && c(paths[0]).mono_color().is_some()
            && short_cycles.len() + 1 == ids.len()
            && short_cycles.len() <= 2;
        if is_type2 {
            return Ok(vec![part(2, ids)]);
        }
        let rest = without(&ids, &[sc, yy]);
        if d.nodes_in(&rest) < 4 {
            return fail("too few nodes after removing a short cycle and a short path");
        }
        let mut out = vec![part(2, vec![yy, sc])];
        out.extend(decompose_ids(d, rest)?);
        return Ok(out);
    }

    if short_cycles.is_empty() {
        let shorts: Vec<usize> = ids.iter().copied().filter(|&i| c(i).is_short() && c(i).mono_color().is_some()).collect();
        let mut parts = pack_long(d, &without(&ids, &shorts))?;
        if parts.is_empty() {
            return fail("only short monochromatic paths");
        }
        let mut queue = shorts.into_iter();
        for p in &mut parts {
            let n = d.nodes_in(&p.components) / 2;
            let taken = d.count(&p.components, y);
            let room = n.saturating_sub(taken);
            for s in queue.by_ref().take(room) {
                p.components.push(s);
            }
            p.components.sort_unstable();
        }
        if queue.next().is_some() {
            return fail("short monochromatic paths exceed the room in the other parts");
        }
        return Ok(parts);
    }

    if short_cycles.len() >= 2 {
        let mut out = vec![part(4, short_cycles.clone())];
        out.extend(pack_long(d, &without(&ids, &short_cycles))?);
        return Ok(out);
    }
    let sc = short_cycles[0];
    let rest = without(&ids, &[sc]);
    let pick = |pred: &dyn Fn(&Component) -> bool| rest.iter().copied().find(|&i| pred(c(i)));
    let taken: Vec<usize>;
    let first = if let Some(p) = pick(&|x| x.mono_color().is_some()) {
        taken = vec![p];
        part(2, vec![p, sc])
    } else if let Some(p) = pick(&|x| x.is_cycle()) {
        taken = vec![p];
        part(8, vec![p, sc])
    } else if let (Some(a), Some(b)) = (
        pick(&|x| x.path_colors() == Some((Color::Blue, Color::Red))),
        pick(&|x| x.path_colors() == Some((Color::Red, Color::Blue))),
    ) {
        taken = vec![a, b];
        part(3, vec![sc, a, b])
    } else {
        return fail("a lone short cycle");
    };
    let mut out = vec![first];
    out.extend(pack_long(d, &without(&rest, &taken))?);
    Ok(out)
}

/// Long cycles become shape (7), monochromatic paths shape (5), and R-B paths
/// pair with B-R paths as shape (6).
fn pack_long(d: &AuxDigraph, ids: &[usize]) -> Result<Vec<GoodPart>, FourVertexError> {
    let mut out = Vec::new();
    let mut rb = Vec::new();
    let mut br = Vec::new();
    for &i in ids {
        let c = &d.components[i];
        match c.kind {
            ComponentKind::Cycle if !c.is_short() => out.push(part(7, vec![i])),
            ComponentKind::Cycle => return Err(FourVertexError::Precondition("stray short cycle".into())),
            ComponentKind::Path { start, end } if start == end => {
                if c.is_short() {
                    return Err(FourVertexError::Precondition("stray short monochromatic path".into()));
                }
                out.push(part(5, vec![i]));
            }
            ComponentKind::Path { start: Color::Red, .. } => rb.push(i),
            ComponentKind::Path { .. } => br.push(i),
        }
    }
    if rb.len() != br.len() {
        return Err(FourVertexError::Precondition("unequal numbers of R-B and B-R paths".into()));
    }
    for (a, b) in br.into_iter().zip(rb) {
        out.push(part(6, vec![a, b]));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Pairs of `e` indices, smaller first, in generation order.
    pub pairs: Vec<(usize, usize)>,
    pub copies: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Completion {
    pub parts: Vec<GoodPart>,
    /// Added arcs `(sink, source)`.
    pub added: Vec<(usize, usize)>,
    /// `pi[i] = j` when `e_i` reaches `e_j` by a walk of length two.
    pub pi: Vec<usize>,
    pub orbits: Vec<Orbit>,
    pub c: u64,
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// The orbit of `{a, b}` under the induced pair permutation.
pub fn pair_orbit(pi: &[usize], a: usize, b: usize) -> Vec<(usize, usize)> {
    let start = norm(a, b);
    let mut out = vec![start];
    let mut cur = norm(pi[a], pi[b]);
    while cur != start {
        out.push(cur);
        cur = norm(pi[cur.0], pi[cur.1]);
    }
    out
}

struct PartRecipe {
    added: Vec<(usize, usize)>,
    orbits: Vec<(Vec<(usize, usize)>, u64)>,
}

fn partial_pi(d: &AuxDigraph, added: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    let extra: BTreeMap<usize, usize> = added.iter().copied().collect();
    let mut pi = BTreeMap::new();
    for i in 0..d.m {
        if let Some(&t) = d.succ[i].as_ref().or(extra.get(&i)) {
            pi.insert(i, d.index(t));
        }
    }
    pi
}

fn pi_cycle(pi: &BTreeMap<usize, usize>, start: usize) -> Vec<usize> {
    let mut xs = vec![start];
    let mut x = pi[&start];
    while x != start {
        xs.push(x);
        x = pi[&x];
    }
    xs
}

fn first_e(d: &AuxDigraph, comp: usize) -> usize {
    *d.components[comp].nodes.iter().find(|&&v| d.is_e(v)).expect("component has an e node")
}

fn recipe(d: &AuxDigraph, p: &GoodPart) -> Result<PartRecipe, FourVertexError> {
    let comp = |i: usize| &d.components[i];
    let close = |ids: &[usize]| -> Vec<(usize, usize)> { ids.iter().map(|&i| (comp(i).end(), comp(i).start())).collect() };
    let chain = |ids: &[usize]| -> Vec<(usize, usize)> {
        (0..ids.len()).map(|k| (comp(ids[k]).end(), comp(ids[(k + 1) % ids.len()]).start())).collect()
    };
    let paths: Vec<usize> = p.components.iter().copied().filter(|&i| !comp(i).is_cycle()).collect();
    let short_cycles: Vec<usize> = p.components.iter().copied().filter(|&i| comp(i).is_cycle() && comp(i).is_short()).collect();
    let mut orbits = Vec::new();

    // Copies of orbits of {x_1, y_j} and {x_1, x_2} built around one long π-cycle.
    let with_long = |xs: &[usize], ys: &[usize], pi: &Vec<usize>, o_copies: u64, p_copies: u64, out: &mut Vec<(Vec<(usize, usize)>, u64)>| {
        for &y in ys {
            out.push((pair_orbit(pi, xs[0], y), o_copies));
        }
        if p_copies > 0 {
            out.push((pair_orbit(pi, xs[0], xs[1]), p_copies));
        }
    };
    let dense = |pi: &BTreeMap<usize, usize>| -> Vec<usize> {
        let mut v: Vec<usize> = (0..d.m).collect();
        for (&a, &b) in pi {
            v[a] = b;
        }
        v
    };

    let added = match p.kind {
        1 | 4 => {
            let added = close(&paths);
            let es: Vec<usize> = p.components.iter().map(|&i| first_e(d, i)).collect();
            for a in 0..es.len() {
                for b in a + 1..es.len() {
                    orbits.push((vec![norm(es[a], es[b])], 1));
                }
            }
            added
        }
        2 => {
            let added = close(&paths);
            let pi = partial_pi(d, &added);
            let xs = pi_cycle(&pi, first_e(d, paths[0]));
            let ys: Vec<usize> = short_cycles.iter().map(|&i| first_e(d, i)).collect();
            let pi = dense(&pi);
            let m = xs.len() as u64;
            match (ys.len(), m) {
                (1, 1) => with_long(&xs, &ys, &pi, 1, 0, &mut orbits),
                (1, 2) => with_long(&xs, &ys, &pi, 1, 1, &mut orbits),
                (1, _) => with_long(&xs, &ys, &pi, 2, m - 1, &mut orbits),
                (_, 1) => {
                    with_long(&xs, &ys, &pi, 1, 0, &mut orbits);
                    orbits.push((vec![norm(ys[0], ys[1])], 1));
                }
                (_, 2) => with_long(&xs, &ys, &pi, 1, 0, &mut orbits),
                (_, 3) => return Err(FourVertexError::NoRecipe(3)),
                (_, _) => with_long(&xs, &ys, &pi, 2, m - 2, &mut orbits),
            }
            added
        }
        3 => {
            let br = *paths.iter().find(|&&i| comp(i).path_colors() == Some((Color::Blue, Color::Red))).unwrap();
            let rb = *paths.iter().find(|&&i| comp(i).path_colors() == Some((Color::Red, Color::Blue))).unwrap();
            let added = chain(&[br, rb]);
            let pi = partial_pi(d, &added);
            let xs = pi_cycle(&pi, first_e(d, br));
            let ys = vec![first_e(d, short_cycles[0])];
            let m = xs.len() as u64;
            let pi = dense(&pi);
            if m == 2 {
                with_long(&xs, &ys, &pi, 1, 1, &mut orbits);
            } else {
                with_long(&xs, &ys, &pi, 2, m - 1, &mut orbits);
            }
            added
        }
        5..=8 => {
            let long_path = paths.iter().copied().find(|&i| !comp(i).is_short());
            let shorts: Vec<usize> = paths.iter().copied().filter(|&i| comp(i).is_short() && comp(i).mono_color().is_some()).collect();
            let shorts: Vec<usize> = if p.kind == 6 {
                // The short B-R or R-B path, if any, is one of the two main paths.
                let main: Vec<usize> = paths.iter().copied().filter(|&i| comp(i).mono_color().is_none()).collect();
                shorts.into_iter().filter(|i| !main.contains(i)).collect()
            } else {
                shorts
            };
            let both_colors = p.kind == 5 && {
                let lc = comp(long_path.unwrap()).mono_color();
                shorts.iter().any(|&s| comp(s).mono_color() != lc)
            };
            if p.kind == 7 || p.kind == 8 || both_colors {
                // Every path closes on itself around one long π-cycle.
                let added = close(&paths);
                let pi = partial_pi(d, &added);
                let long = if p.kind == 5 {
                    long_path.unwrap()
                } else {
                    *p.components.iter().find(|&&i| comp(i).is_cycle() && !comp(i).is_short()).unwrap()
                };
                let xs = pi_cycle(&pi, first_e(d, long));
                let ys: Vec<usize> = p.components.iter().copied().filter(|&i| i != long).map(|i| first_e(d, i)).collect();
                let (m, k) = (xs.len() as u64, ys.len() as u64);
                let beta = if m > 2 { m.checked_sub(k) } else { 4u64.checked_sub(2 * k) }
                    .ok_or_else(|| FourVertexError::Uniformity(format!("{k} short components against a long cycle of {m}")))?;
                let pi = dense(&pi);
                with_long(&xs, &ys, &pi, 2, beta, &mut orbits);
                added
            } else {
                // One π-cycle in which equal colors sit next to each other.
                let order: Vec<usize> = if p.kind == 5 {
                    std::iter::once(long_path.unwrap()).chain(shorts.iter().copied()).collect()
                } else {
                    let main: Vec<usize> = paths.iter().copied().filter(|i| !shorts.contains(i)).collect();
                    let (a, b) = (main[0], main[1]);
                    let (_, c2) = comp(a).path_colors().unwrap();
                    match shorts.first().and_then(|&s| comp(s).mono_color()) {
                        Some(s) if s == c2 => std::iter::once(a).chain(shorts.iter().copied()).chain([b]).collect(),
                        _ => [a, b].into_iter().chain(shorts.iter().copied()).collect(),
                    }
                };
                let added = chain(&order);
                let pi = partial_pi(d, &added);
                let xs = pi_cycle(&pi, first_e(d, order[0]));
                let h = xs.len() / 2;
                let pi = dense(&pi);
                orbits.push((pair_orbit(&pi, xs[0], xs[h]), 1));
                added
            }
        }
        k => return Err(FourVertexError::Uniformity(format!("unknown shape ({k})"))),
    };
    Ok(PartRecipe { added, orbits })
}

/// Per-part completions and orbit lists, rescaled to a common constant.
pub fn uniform_permutation(d: &AuxDigraph) -> Result<Completion, FourVertexError> {
    let parts = decompose_good(d)?;
    uniform_from_parts(d, parts)
}

pub fn uniform_from_parts(d: &AuxDigraph, parts: Vec<GoodPart>) -> Result<Completion, FourVertexError> {
    let mut added = Vec::new();
    let mut per_part = Vec::new();
    for p in &parts {
        let r = recipe(d, p)?;
        added.extend(r.added.iter().copied());
        let es: Vec<usize> = p.components.iter().flat_map(|&i| d.components[i].nodes.iter().copied()).filter(|&v| d.is_e(v)).collect();
        let ci = constant(&es, &r.orbits)?;
        per_part.push((r.orbits, ci));
    }
    let c = per_part.iter().fold(1, |acc, (_, ci)| lcm(acc, *ci));
    let mut orbits = Vec::new();
    for (list, ci) in per_part {
        for (pairs, copies) in list {
            orbits.push(Orbit {
                pairs,
                copies: copies.checked_mul(c / ci).ok_or(FourVertexError::Overflow)?,
            });
        }
    }
    added.sort_unstable();
    let pi = dense_pi(d, &added);
    let completion = Completion { parts, added, pi, orbits, c };
    validate_completion(d, &completion)?;
    Ok(completion)
}

fn dense_pi(d: &AuxDigraph, added: &[(usize, usize)]) -> Vec<usize> {
    let map = partial_pi(d, added);
    (0..d.m).map(|i| map.get(&i).copied().unwrap_or(i)).collect()
}

/// The common occurrence count of every `e` in `es`.
fn constant(es: &[usize], orbits: &[(Vec<(usize, usize)>, u64)]) -> Result<u64, FourVertexError> {
    let mut count: BTreeMap<usize, u64> = es.iter().map(|&e| (e, 0)).collect();
    for (pairs, copies) in orbits {
        for &(a, b) in pairs {
            for x in [a, b] {
                *count.get_mut(&x).ok_or_else(|| FourVertexError::Uniformity(format!("e{} outside its part", x + 1)))? += copies;
            }
        }
    }
    let vals: BTreeSet<u64> = count.values().copied().collect();
    match vals.iter().next() {
        Some(&c) if vals.len() == 1 && c > 0 => Ok(c),
        _ => Err(FourVertexError::Uniformity(format!("occurrence counts {count:?}"))),
    }
}

/// Completion arcs join equal colors and give a permutation; each listed
/// orbit is a true orbit; no pair repeats a color; every `e` occurs `c` times.
pub fn validate_completion(d: &AuxDigraph, comp: &Completion) -> Result<(), FourVertexError> {
    let bad = |s: String| Err(FourVertexError::Uniformity(s));
    let mut succ = d.succ.clone();
    let mut has_pred = vec![false; d.node_count()];
    for t in d.succ.iter().flatten() {
        has_pred[*t] = true;
    }
    for &(a, b) in &comp.added {
        if succ[a].is_some() || has_pred[b] {
            return bad(format!("added arc {} -> {} does not join a sink to a source", d.node_name(a), d.node_name(b)));
        }
        if d.color[a] != d.color[b] {
            return bad(format!("added arc {} -> {} changes color", d.node_name(a), d.node_name(b)));
        }
        succ[a] = Some(b);
        has_pred[b] = true;
    }
    if succ.iter().any(|s| s.is_none()) || has_pred.iter().any(|p| !p) {
        return bad("completion is not a permutation".into());
    }
    for o in &comp.orbits {
        let Some(&(a, b)) = o.pairs.first() else {
            return bad("empty orbit".into());
        };
        let want: BTreeSet<(usize, usize)> = pair_orbit(&comp.pi, a, b).into_iter().collect();
        let have: BTreeSet<(usize, usize)> = o.pairs.iter().copied().collect();
        if want != have || have.len() != o.pairs.len() {
            return bad(format!("listed orbit of {{e{}, e{}}} is not an orbit", a + 1, b + 1));
        }
        for &(x, y) in &o.pairs {
            if x == y {
                return bad("degenerate pair".into());
            }
            if d.color[x].is_some() && d.color[x] == d.color[y] {
                return bad(format!("pair {{e{}, e{}}} shares a color", x + 1, y + 1));
            }
        }
    }
    let list: Vec<(Vec<(usize, usize)>, u64)> = comp.orbits.iter().map(|o| (o.pairs.clone(), o.copies)).collect();
    let c = constant(&(0..d.m).collect::<Vec<_>>(), &list)?;
    if c != comp.c {
        return bad(format!("constant {c} differs from the recorded {}", comp.c));
    }
    Ok(())
}

/// `{e, σ_w(π(e))}` is a matching of `g` for every `e ∈ δ(w)`.
pub fn is_w_good(g: &Multigraph, es: &[EdgeId], sigma_w: &BTreeMap<EdgeId, EdgeId>, pi: &[usize]) -> bool {
    es.iter().enumerate().all(|(i, &e)| {
        let f = sigma_w[&es[pi[i]]];
        e == f || g.ends(e).iter().all(|&v| !g.is_incident(f, v))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodList {
    pub cycles: CycleList,
    pub c1: u64,
    pub c2: u64,
    /// Top level first; the last entry is the regular base case.
    pub levels: Vec<LevelJson>,
}

/// Instance data that stays fixed down the induction.
pub struct Setup<'a> {
    pub w: Vertex,
    pub u: Vertex,
    pub es: &'a [EdgeId],
    pub sigma_w: &'a BTreeMap<EdgeId, EdgeId>,
    pub completion: &'a Completion,
}

/// Edge-removal induction. Every level checks the pair balance at `w`,
/// constant edge usage `c1`, constant pair usage `c2` at `u` and `μ(u)`, and
/// the presence of a long cycle.
pub fn inductive_witness(g: &Multigraph, s: &Setup) -> Result<GoodList, FourVertexError> {
    check_lambda(g)?;
    if !is_w_good(g, s.es, s.sigma_w, &s.completion.pi) {
        return Err(FourVertexError::Level("permutation is not w-good".into()));
    }
    let (w, u) = (s.w, s.u);
    let (deg_w, deg_u) = (g.degree(w), g.degree(u));
    if deg_u < deg_w {
        return Err(FourVertexError::Level("w does not have minimum degree".into()));
    }
    let result = if deg_u == deg_w {
        let r = regular_witness(g)?;
        GoodList {
            cycles: r.cycles,
            c1: r.m1,
            c2: r.m2,
            levels: vec![LevelJson { removed_edge: None, c1: r.m1, c2: r.m2 }],
        }
    } else {
        let partner: Vec<EdgeId> = g.incident(u).into_iter().filter(|&e| g.is_incident(e, mu(u))).collect();
        let Some(&e) = partner.first() else {
            return Err(FourVertexError::MissingPartnerEdge {
                u: vertex_name(u),
                deg_u,
                deg_w,
            });
        };
        let smaller = g.without_edge(e).expect("edge present");
        if !smaller.is_connected() {
            return Err(FourVertexError::Level(format!("removing edge {e} disconnects the graph")));
        }
        let sub = inductive_witness(&smaller, s)?;
        let a = g.incident(u).into_iter().filter(|&f| g.is_incident(f, w) || g.is_incident(f, mu(w))).count() as u64;
        let b = partner.len() as u64;
        if sub.c1 != sub.c2 * (a + b - 2) {
            return Err(FourVertexError::Level(format!("c1' = {} but c2'(a+b-2) = {}", sub.c1, sub.c2 * (a + b - 2))));
        }
        let c = s.completion.c;
        let mut clist = CycleList::new();
        for o in &s.completion.orbits {
            for &(x, y) in &o.pairs {
                for cyc in cxy(g, s, e, x, y)? {
                    clist.add(cyc, o.copies);
                }
            }
        }
        let cc2 = c.checked_mul(sub.c2).ok_or(FourVertexError::Overflow)?;
        let mut cycles = clist.scaled(sub.c2);
        cycles.extend_scaled(&sub.cycles, c);
        for &f in &partner[1..] {
            cycles.add(Cycle::from_edges(g, &[e, f])?, cc2);
        }
        let c1 = cc2.checked_mul(a + b - 1).ok_or(FourVertexError::Overflow)?;
        let mut levels = vec![LevelJson { removed_edge: Some(e), c1, c2: cc2 }];
        levels.extend(sub.levels);
        GoodList { cycles, c1, c2: cc2, levels }
    };
    check_level(g, s, &result)?;
    Ok(result)
}

/// The cycles contributed by an orbit member `{x, y}`.
fn cxy(g: &Multigraph, s: &Setup, e: EdgeId, x: usize, y: usize) -> Result<Vec<Cycle>, FourVertexError> {
    let mw = mu(s.w);
    let (ex, ey) = (s.es[x], s.es[y]);
    let image = |i: usize| s.sigma_w[&s.es[s.completion.pi[i]]];
    let (xm, ym) = (g.is_incident(ex, mw), g.is_incident(ey, mw));
    Ok(match (xm, ym) {
        (true, true) => vec![Cycle::from_edges(g, &[ex, ey])?],
        (false, false) => vec![Cycle::from_edges(g, &[e, ex, ey])?, Cycle::from_edges(g, &[e, image(x), image(y)])?],
        (false, true) => vec![Cycle::from_edges(g, &[e, ex, ey, image(x)])?],
        (true, false) => vec![Cycle::from_edges(g, &[e, ey, ex, image(y)])?],
    })
}

fn check_level(g: &Multigraph, s: &Setup, list: &GoodList) -> Result<(), FourVertexError> {
    let bad = |m: String| Err(FourVertexError::Level(m));
    let containing = |a: EdgeId, b: EdgeId| -> u64 { list.cycles.iter().filter(|(c, _)| c.contains(a) && c.contains(b)).map(|(_, m)| m).sum() };
    let es = g.incident(s.w);
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            let (x, y) = (es[i], es[j]);
            let (fx, fy) = (s.sigma_w[&x], s.sigma_w[&y]);
            if containing(x, y) != containing(fx, fy) {
                return bad(format!("pair {{{x}, {y}}} at w is unbalanced"));
            }
        }
    }
    let usage = list.cycles.edge_usage();
    for e in g.edge_ids() {
        let n = usage.get(&e).copied().unwrap_or(0);
        if n != list.c1 {
            return bad(format!("edge {e} used {n} times, expected {}", list.c1));
        }
    }
    if list.c1 == 0 || list.c2 == 0 {
        return bad("zero constant".into());
    }
    for v in [s.u, mu(s.u)] {
        let inc = g.incident(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                let n = containing(inc[i], inc[j]);
                if n != list.c2 {
                    return bad(format!("pair {{{}, {}}} at {} used {n} times, expected {}", inc[i], inc[j], vertex_name(v), list.c2));
                }
            }
        }
    }
    if !list.cycles.has_long() {
        return bad("no cycle of length three or more".into());
    }
    Ok(())
}

/// λ(v, μ(v)) = deg(v) at every vertex.
pub fn check_lambda(g: &Multigraph) -> Result<(), FourVertexError> {
    for v in (0..g.vertex_count()).step_by(2) {
        let lambda = g.local_edge_connectivity(v, mu(v));
        for x in [v, mu(v)] {
            if lambda < g.degree(x) {
                return Err(FourVertexError::Lambda {
                    vertex: vertex_name(x),
                    lambda,
                    degree: g.degree(x),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Constructive,
    /// A part had no orbit recipe, so the exact LP produced the list instead.
    LpFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourVertexWitness {
    pub cycles: CycleList,
    pub method: Method,
    pub w: Vertex,
    pub u: Vertex,
    pub aux: AuxDigraph,
    pub completion: Option<Completion>,
    pub good: Option<GoodList>,
}

impl FourVertexWitness {
    pub fn to_json(&self, wg: &WhiteheadGraph) -> WitnessJson {
        let mut j = witness_json(wg, &self.cycles);
        j.method = Some(
            match self.method {
                Method::Constructive => "fourvertex",
                Method::LpFallback => "fourvertex-lp-fallback",
            }
            .into(),
        );
        if let Some(g) = &self.good {
            j.c1 = Some(g.c1);
            j.c2 = Some(g.c2);
            j.constants_per_level = Some(g.levels.clone());
        }
        j
    }
}

/// `w` of minimum degree (lowest id on ties) and `u` the lower of the other pair.
pub fn choose_vertices(g: &Multigraph) -> (Vertex, Vertex) {
    let w = (0..4).min_by_key(|&v| (g.degree(v), v)).unwrap();
    let u = (0..4).find(|&v| v != w && v != mu(w)).unwrap();
    (w, u)
}

pub fn four_vertex_witness(wg: &WhiteheadGraph) -> Result<FourVertexWitness, FourVertexError> {
    let g = wg.graph();
    if g.vertex_count() != 4 {
        return Err(FourVertexError::NotFourVertex(g.vertex_count()));
    }
    if !g.is_connected() {
        return Err(FourVertexError::Disconnected);
    }
    check_lambda(g)?;
    let (w, u) = choose_vertices(g);
    let es = g.incident(w);
    let sigma_w: BTreeMap<EdgeId, EdgeId> = es.iter().map(|&e| (e, wg.sigma_edge(w, e))).collect();
    let aux = AuxDigraph::from_graph(g, w, u, &sigma_w)?;
    let completion = match uniform_permutation(&aux) {
        Ok(c) => c,
        Err(FourVertexError::NoRecipe(_)) => {
            return match search_witness_lp(wg, true)? {
                LpResult::Feasible(cycles) => {
                    finish(wg, &cycles)?;
                    Ok(FourVertexWitness {
                        cycles,
                        method: Method::LpFallback,
                        w,
                        u,
                        aux,
                        completion: None,
                        good: None,
                    })
                }
                LpResult::Infeasible(_) => Err(FourVertexError::Level("fallback program is infeasible".into())),
            };
        }
        Err(e) => return Err(e),
    };
    if !is_w_good(g, &es, &sigma_w, &completion.pi) {
        return Err(FourVertexError::Uniformity("induced permutation is not w-good".into()));
    }
    let setup = Setup {
        w,
        u,
        es: &es,
        sigma_w: &sigma_w,
        completion: &completion,
    };
    let good = inductive_witness(g, &setup)?;
    finish(wg, &good.cycles)?;
    Ok(FourVertexWitness {
        cycles: good.cycles.clone(),
        method: Method::Constructive,
        w,
        u,
        aux,
        completion: Some(completion),
        good: Some(good),
    })
}

fn finish(wg: &WhiteheadGraph, cycles: &CycleList) -> Result<(), FourVertexError> {
    let verdict = verify_witness(wg, cycles, true, false)?;
    if !verdict.pass {
        return Err(FourVertexError::Level(format!("final list fails the witness check: {:?}", verdict.failures)));
    }
    let usage: BTreeSet<u64> = verdict.per_edge_usage.values().copied().collect();
    if usage.len() != 1 {
        return Err(FourVertexError::Level(format!("edge usage is not constant: {usage:?}")));
    }
    Ok(())
}

fn matches_some_shape(d: &AuxDigraph, ids: &[usize]) -> bool {
    (1..=8).any(|k| validate_part(d, k, ids).is_ok())
}

/// Exhaustive search for any partition of `rest` into valid parts.
pub fn brute_partition_exists(d: &AuxDigraph, rest: &[usize]) -> bool {
    let Some((&first, others)) = rest.split_first() else {
        return true;
    };
    for mask in 0u32..(1 << others.len()) {
        let mut block = vec![first];
        let mut left = Vec::new();
        for (k, &o) in others.iter().enumerate() {
            if mask >> k & 1 == 1 {
                block.push(o);
            } else {
                left.push(o);
            }
        }
        if matches_some_shape(d, &block) && brute_partition_exists(d, &left) {
            return true;
        }
    }
    false
}

/// Every good digraph with at most `max_nodes` nodes, one per multiset of
/// component shapes.
pub fn good_digraphs(max_nodes: usize) -> Vec<AuxDigraph> {
    fn go(kinds: &[ComponentSpec], from: usize, left: usize, cur: &mut Vec<ComponentSpec>, out: &mut Vec<Vec<ComponentSpec>>) {
        let size: usize = cur.iter().map(|s| s.e_count).sum();
        if size >= 2 {
            out.push(cur.clone());
        }
        for k in from..kinds.len() {
            if kinds[k].e_count <= left {
                cur.push(kinds[k]);
                go(kinds, k, left - kinds[k].e_count, cur, out);
                cur.pop();
            }
        }
    }
    let max_e = max_nodes / 2;
    let mut kinds = Vec::new();
    for t in 1..=max_e {
        kinds.push(ComponentSpec { e_count: t, ends: None });
        for a in [Color::Red, Color::Blue] {
            for b in [Color::Red, Color::Blue] {
                kinds.push(ComponentSpec { e_count: t, ends: Some((a, b)) });
            }
        }
    }
    let mut raw = Vec::new();
    go(&kinds, 0, max_e, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .filter_map(|s| AuxDigraph::from_specs(&s).ok())
        .filter(|d| d.is_good())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::words::WordList;
    use Color::{Blue as B, Red as R};

    fn path(e_count: usize, a: Color, b: Color) -> ComponentSpec {
        ComponentSpec { e_count, ends: Some((a, b)) }
    }

    fn cyc(e_count: usize) -> ComponentSpec {
        ComponentSpec { e_count, ends: None }
    }

    #[test]
    fn exhaustive_small_digraphs() {
        let ds = good_digraphs(8);
        assert_eq!(ds.len(), 85);
        for d in &ds {
            let parts = decompose_good(d).unwrap_or_else(|e| panic!("{:?}: {e}", d.components));
            let mut seen = BTreeSet::new();
            for p in &parts {
                validate_part(d, p.kind, &p.components).unwrap();
                for &c in &p.components {
                    assert!(seen.insert(c));
                }
            }
            assert_eq!(seen.len(), d.components.len());
            let all: Vec<usize> = (0..d.components.len()).collect();
            assert!(brute_partition_exists(d, &all));
            let comp = uniform_from_parts(d, parts).unwrap_or_else(|e| panic!("{:?}: {e}", d.components));
            validate_completion(d, &comp).unwrap();
        }
    }

    #[test]
    fn rejects_bad_digraphs() {
        let d = AuxDigraph::from_specs(&[path(1, B, B), path(1, B, B)]).unwrap();
        assert!(matches!(decompose_good(&d), Err(FourVertexError::Precondition(_))));
        let d = AuxDigraph::from_specs(&[cyc(1)]).unwrap();
        assert!(decompose_good(&d).is_err());
        assert!(AuxDigraph::from_specs(&[path(1, R, B)]).is_err());
    }

    #[test]
    fn named_shapes() {
        let d = AuxDigraph::from_specs(&[path(1, R, R), path(1, B, B)]).unwrap();
        assert_eq!(decompose_good(&d).unwrap(), vec![part(1, vec![0, 1])]);
        let d = AuxDigraph::from_specs(&[cyc(1), cyc(1)]).unwrap();
        let parts = decompose_good(&d).unwrap();
        assert_eq!(parts, vec![part(4, vec![0, 1])]);
        let comp = uniform_from_parts(&d, parts).unwrap();
        assert_eq!(comp.c, 1);
        let d = AuxDigraph::from_specs(&[cyc(1), cyc(1), cyc(1), cyc(1)]).unwrap();
        assert_eq!(uniform_permutation(&d).unwrap().c, 3);
        let d = AuxDigraph::from_specs(&[path(1, B, B), cyc(1)]).unwrap();
        let comp = uniform_permutation(&d).unwrap();
        assert_eq!((comp.parts[0].kind, comp.c), (2, 1));
    }

    #[test]
    fn shape_six_uses_half_offset() {
        let d = AuxDigraph::from_specs(&[path(1, B, R), path(3, R, B), path(1, R, R)]).unwrap();
        let comp = uniform_permutation(&d).unwrap();
        assert_eq!(comp.parts, vec![part(6, vec![0, 1, 2])]);
        assert_eq!(comp.orbits.len(), 1);
        assert_eq!(comp.c, 2);
        for &(a, b) in &comp.orbits[0].pairs {
            assert!(d.color[a].is_none() || d.color[a] != d.color[b]);
        }
    }

    #[test]
    fn two_cycle_middle_length_has_no_recipe() {
        let d = AuxDigraph::from_specs(&[path(3, B, B), cyc(1), cyc(1)]).unwrap();
        let p = vec![part(2, vec![0, 1, 2])];
        validate_part(&d, 2, &p[0].components).unwrap();
        assert_eq!(uniform_from_parts(&d, p), Err(FourVertexError::NoRecipe(3)));
    }

    #[test]
    fn commutator_graph() {
        let wg = WhiteheadGraph::build(&WordList::from_texts(2, &["abAB"]).unwrap()).unwrap();
        let (w, u) = choose_vertices(wg.graph());
        let es = wg.graph().incident(w);
        let sw: BTreeMap<EdgeId, EdgeId> = es.iter().map(|&e| (e, wg.sigma_edge(w, e))).collect();
        let d = AuxDigraph::from_graph(wg.graph(), w, u, &sw).unwrap();
        assert_eq!(d.components.len(), 2);
        assert!(d.components.iter().all(|c| c.is_short() && !c.is_cycle()));
        let out = four_vertex_witness(&wg).unwrap();
        assert_eq!(out.method, Method::Constructive);
        assert_eq!(out.good.unwrap().levels.len(), 1);
    }

    #[test]
    fn star_instance_partition() {
        let wg = examples::star_instance();
        let g = wg.graph();
        let (w, u) = choose_vertices(g);
        assert_eq!((g.degree(w), g.degree(u)), (7, 8));
        let es = g.incident(w);
        let sw: BTreeMap<EdgeId, EdgeId> = es.iter().map(|&e| (e, wg.sigma_edge(w, e))).collect();
        let d = AuxDigraph::from_graph(g, w, u, &sw).unwrap();
        let shapes: Vec<String> = d.components.iter().map(|c| c.describe()).collect();
        assert_eq!(shapes, ["B-R path/1", "R-B path/5", "B-B path/1", "R-R path/1", "R-R path/1"]);
        let red = (0..7).filter(|&i| d.color[i] == Some(R)).count();
        let blue = (0..7).filter(|&i| d.color[i] == Some(B)).count();
        assert_eq!((red, blue), (3, 2));
        let parts = decompose_good(&d).unwrap();
        assert_eq!(parts, vec![part(1, vec![2, 3]), part(6, vec![0, 1, 4])]);
        let out = four_vertex_witness(&wg).unwrap();
        let good = out.good.unwrap();
        assert_eq!(good.levels.len(), 2);
        assert!(verify_witness(&wg, &good.cycles, true, false).unwrap().pass);
        assert!(d.to_dot(out.completion.as_ref()).contains("style=dashed"));
    }

    #[test]
    fn lambda_failure_reported() {
        let wg = WhiteheadGraph::build(&WordList::from_texts(2, &["a(aB)^3B^2"]).unwrap()).unwrap();
        match four_vertex_witness(&wg) {
            Err(FourVertexError::Lambda { lambda: 3, degree: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn basis_changed_word() {
        let wg = WhiteheadGraph::build(&WordList::from_texts(2, &["aBaab"]).unwrap()).unwrap();
        let out = four_vertex_witness(&wg).unwrap();
        assert!(out.cycles.has_long());
        let good = out.good.unwrap();
        let usage = out.cycles.edge_usage();
        assert!(usage.values().all(|&n| n == good.c1));
    }
}
