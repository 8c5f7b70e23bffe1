//! Defining graphs, vertex-group kinds and the signed-letter alphabet.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Maximum number of vertices; vertex sets are stored as 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// Vertex group attached to a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// The infinite cyclic group.
    InfiniteCyclic,
    /// The group of order two; its generator is an involution.
    OrderTwo,
}

/// Index of a vertex in its graph's listing order.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("at most {MAX_VERTICES} vertices are supported")]
    TooManyVertices,
    #[error("invalid letter order: {0}")]
    BadLetterOrder(String),
}

/// A set of vertices of some graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1 << v);
    }

    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Vertices in increasing (listing) order.
    pub fn iter(self) -> impl Iterator<Item = Vertex> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A signed generator.
///
/// The code of a letter is its rank in the graph's letter order, so the
/// derived `Ord` on letters is the order used for shortlex comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Letter(i as u16)
    }
}

/// Which neighbourhood [`DefiningGraph::neighborhood`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neighborhood {
    Link,
    Star,
}

/// A finite simple graph with a vertex group at each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefiningGraph {
    names: Vec<String>,
    kinds: Vec<VertexKind>,
    adj: Vec<u64>,
    // Indexed by letter code.
    letter_vertex: Vec<u16>,
    letter_inverted: Vec<bool>,
    inverse: Vec<u16>,
    // Indexed by vertex: codes of v and v^-1 (equal for order-two vertices).
    codes: Vec<[u16; 2]>,
}

impl DefiningGraph {
    /// Builds a graph from vertices in listing order and edges given by name.
    pub fn new<S: AsRef<str>>(
        vertices: &[(S, VertexKind)],
        edges: &[(S, S)],
    ) -> Result<Self, GraphError> {
        if vertices.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices);
        }
        let mut names: Vec<String> = Vec::with_capacity(vertices.len());
        for (n, _) in vertices {
            let n = n.as_ref();
            if names.iter().any(|m| m == n) {
                return Err(GraphError::DuplicateVertex(n.to_string()));
            }
            names.push(n.to_string());
        }
        let kinds: Vec<VertexKind> = vertices.iter().map(|(_, k)| *k).collect();
        let find = |n: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| GraphError::UnknownVertex(n.to_string()))
        };
        let mut adj = alloc::vec![0u64; names.len()];
        for (u, v) in edges {
            let (iu, iv) = (find(u.as_ref())?, find(v.as_ref())?);
            if iu == iv {
                return Err(GraphError::LoopEdge(u.as_ref().to_string()));
            }
            adj[iu] |= 1 << iv;
            adj[iv] |= 1 << iu;
        }
        Ok(Self::from_parts(names, kinds, adj))
    }

    fn from_parts(names: Vec<String>, kinds: Vec<VertexKind>, adj: Vec<u64>) -> Self {
        let order: Vec<(Vertex, bool)> = kinds
            .iter()
            .enumerate()
            .flat_map(|(v, k)| {
                let inv = (*k == VertexKind::InfiniteCyclic).then_some((v, true));
                core::iter::once((v, false)).chain(inv)
            })
            .collect();
        let mut g = DefiningGraph {
            names,
            kinds,
            adj,
            letter_vertex: Vec::new(),
            letter_inverted: Vec::new(),
            inverse: Vec::new(),
            codes: Vec::new(),
        };
        g.install_letter_order(&order);
        g
    }

    fn install_letter_order(&mut self, order: &[(Vertex, bool)]) {
        let n = self.names.len();
        self.codes = alloc::vec![[0u16; 2]; n];
        self.letter_vertex = order.iter().map(|&(v, _)| v as u16).collect();
        self.letter_inverted = order.iter().map(|&(_, i)| i).collect();
        for (code, &(v, inv)) in order.iter().enumerate() {
            self.codes[v][inv as usize] = code as u16;
            if self.kinds[v] == VertexKind::OrderTwo {
                self.codes[v][1] = code as u16;
            }
        }
        self.inverse = order
            .iter()
            .map(|&(v, inv)| self.codes[v][!inv as usize])
            .collect();
    }

    /// Returns a copy with a different letter order.
    ///
    /// `order` lists every letter exactly once as (vertex, inverted); order-two
    /// vertices contribute a single non-inverted entry.
    pub fn with_letter_order(&self, order: &[(Vertex, bool)]) -> Result<Self, GraphError> {
        let mut seen = alloc::vec![[false; 2]; self.rank()];
        for &(v, inv) in order {
            if v >= self.rank() {
                return Err(GraphError::BadLetterOrder(alloc::format!("no vertex {v}")));
            }
            if inv && self.kinds[v] == VertexKind::OrderTwo {
                return Err(GraphError::BadLetterOrder(alloc::format!(
                    "`{}` is an involution",
                    self.names[v]
                )));
            }
            if core::mem::replace(&mut seen[v][inv as usize], true) {
                return Err(GraphError::BadLetterOrder(alloc::format!(
                    "letter of `{}` listed twice",
                    self.names[v]
                )));
            }
        }
        if order.len() != self.alphabet_size() {
            return Err(GraphError::BadLetterOrder("not every letter is listed".into()));
        }
        let mut g = self.clone();
        g.install_letter_order(order);
        Ok(g)
    }

    /// Letter order in which each vertex `v` is followed by `v^-1`, vertices
    /// taken in the given order.
    pub fn with_vertex_order(&self, vertices: &[Vertex]) -> Result<Self, GraphError> {
        let order: Vec<(Vertex, bool)> = vertices
            .iter()
            .flat_map(|&v| {
                let inv = (v < self.rank() && self.kinds[v] == VertexKind::InfiniteCyclic)
                    .then_some((v, true));
                core::iter::once((v, false)).chain(inv)
            })
            .collect();
        self.with_letter_order(&order)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, v: Vertex) -> VertexKind {
        self.kinds[v]
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet(if self.rank() == 64 { u64::MAX } else { (1u64 << self.rank()) - 1 })
    }

    /// Adjacent and distinct.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.rank() {
            for v in u + 1..self.rank() {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn link(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn star(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v] | 1 << v)
    }

    pub fn neighborhood(&self, v: Vertex, which: Neighborhood) -> VertexSet {
        match which {
            Neighborhood::Link => self.link(v),
            Neighborhood::Star => self.star(v),
        }
    }

    /// Induced subgraph; vertex order and relative letter order are inherited.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Self, GraphError> {
        if !s.is_subset(self.vertices()) {
            let bad = s.difference(self.vertices()).iter().next().unwrap_or(0);
            return Err(GraphError::UnknownVertex(alloc::format!("#{bad}")));
        }
        let keep: Vec<Vertex> = s.iter().collect();
        let new_index = |v: Vertex| keep.iter().position(|&w| w == v);
        let names = keep.iter().map(|&v| self.names[v].clone()).collect();
        let kinds = keep.iter().map(|&v| self.kinds[v]).collect();
        let adj = keep
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v])
                    .intersection(s)
                    .iter()
                    .map(|w| 1u64 << new_index(w).unwrap())
                    .fold(0, |a, b| a | b)
            })
            .collect();
        let mut g = Self::from_parts(names, kinds, adj);
        let order: Vec<(Vertex, bool)> = (0..self.alphabet_size())
            .filter_map(|c| {
                let v = self.letter_vertex[c] as usize;
                new_index(v).map(|nv| (nv, self.letter_inverted[c]))
            })
            .collect();
        g.install_letter_order(&order);
        Ok(g)
    }

    /// Connected components of the subgraph induced on `V \ St(x)`, each
    /// listed in vertex order, components ordered by least vertex.
    pub fn partial_conj_components(&self, x: Vertex) -> Vec<VertexSet> {
        let mut rest = self.vertices().difference(self.star(x));
        let mut out = Vec::new();
        while let Some(seed) = rest.iter().next() {
            let mut comp = VertexSet::singleton(seed);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.link(v));
                }
                frontier = next.intersection(rest).difference(comp);
                comp = comp.union(frontier);
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Number of letters in the alphabet.
    pub fn alphabet_size(&self) -> usize {
        self.letter_vertex.len()
    }

    /// All letters in letter order.
    pub fn alphabet(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.alphabet_size()).map(Letter::from_index)
    }

    /// The letter `v` (or `v^-1` when `inverted`).
    pub fn letter(&self, v: Vertex, inverted: bool) -> Letter {
        Letter(self.codes[v][inverted as usize])
    }

    pub fn letter_vertex(&self, l: Letter) -> Vertex {
        self.letter_vertex[l.index()] as usize
    }

    pub fn is_inverted(&self, l: Letter) -> bool {
        self.letter_inverted[l.index()]
    }

    pub fn inverse(&self, l: Letter) -> Letter {
        Letter(self.inverse[l.index()])
    }

    /// Two letters commute iff their vertices are adjacent and distinct.
    pub fn commute(&self, a: Letter, b: Letter) -> bool {
        self.adjacent(self.letter_vertex(a), self.letter_vertex(b))
    }

    /// Letter order as (vertex, inverted) pairs.
    pub fn letter_order(&self) -> Vec<(Vertex, bool)> {
        self.alphabet()
            .map(|l| (self.letter_vertex(l), self.is_inverted(l)))
            .collect()
    }

    /// True when the letter order is the default one (`v < v^-1 < w < ...`).
    pub fn has_default_letter_order(&self) -> bool {
        Self::from_parts(self.names.clone(), self.kinds.clone(), self.adj.clone()) == *self
    }

    /// Renders one letter, e.g. `a` or `a⁻¹`.
    pub fn letter_name(&self, l: Letter) -> String {
        let mut s = self.names[self.letter_vertex(l)].clone();
        if self.is_inverted(l) {
            s.push_str("⁻¹");
        }
        s
    }

    /// Renders a word with `·` separators; the empty word is `ε`.
    pub fn render(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        let parts: Vec<String> = w.iter().map(|&l| self.letter_name(l)).collect();
        parts.join("·")
    }

    /// Renders a vertex set as `{a, b}`.
    pub fn render_set(&self, s: VertexSet) -> String {
        let parts: Vec<&str> = s.iter().map(|v| self.name(v)).collect();
        alloc::format!("{{{}}}", parts.join(", "))
    }

    /// FNV-1a hash of a canonical description; stable across runs.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::default();
        for (n, k) in self.names.iter().zip(&self.kinds) {
            h.write(n.as_bytes());
            h.write(&[0, *k as u8]);
        }
        for (u, v) in self.edges() {
            h.write(&(u as u32).to_le_bytes());
            h.write(&(v as u32).to_le_bytes());
        }
        for (v, i) in self.letter_order() {
            h.write(&(v as u32).to_le_bytes());
            h.write(&[i as u8]);
        }
        h.finish()
    }
}

/// 64-bit FNV-1a.
#[derive(Clone, Copy)]
pub(crate) struct Fnv(u64);

impl Default for Fnv {
    fn default() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
}

impl Fnv {
    pub(crate) fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }

    pub(crate) fn finish(self) -> u64 {
        self.0
    }
}

/// Small graphs used throughout the examples and tests.
pub mod examples {
    use super::*;

    fn all_z(names: &[&str], edges: &[(&str, &str)]) -> DefiningGraph {
        let vs: Vec<(&str, VertexKind)> =
            names.iter().map(|n| (*n, VertexKind::InfiniteCyclic)).collect();
        DefiningGraph::new(&vs, edges).expect("built-in graph is valid")
    }

    /// The 4-cycle a-b-c-d-a; its RAAG is F2 x F2.
    pub fn square() -> DefiningGraph {
        all_z(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    }

    /// The path a-b-c-d.
    pub fn path4() -> DefiningGraph {
        all_z(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])
    }

    /// The path x-z-y; its RAAG is F2 x Z.
    pub fn f2_times_z() -> DefiningGraph {
        all_z(&["x", "z", "y"], &[("x", "z"), ("z", "y")])
    }

    /// Two vertices a, b and no edges.
    pub fn free2() -> DefiningGraph {
        all_z(&["a", "b"], &[])
    }

    /// Two vertices x, y and no edges.
    pub fn edgeless_xy() -> DefiningGraph {
        all_z(&["x", "y"], &[])
    }
}
