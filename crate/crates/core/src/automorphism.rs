//! Automorphisms given by generator images.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{DefiningGraph, Fnv, Letter, Vertex, VertexKind, VertexSet};
use crate::word::{formal_inverse, normal_form, spheres, NormalWord};

/// Order cap used when an automorphism's inverse is sought as a power.
pub const DEFAULT_ORDER_CAP: usize = 64;

/// Powers whose images grow past this total length are treated as having
/// no small order; this stops runaway growth for maps like a ↦ a².
const POWER_LENGTH_GUARD: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("automorphisms are defined on different graphs")]
    GraphMismatch,
    #[error("unknown vertex #{0}")]
    UnknownVertex(Vertex),
    #[error("vertex map is not an adjacency-preserving bijection")]
    NotAGraphAutomorphism,
    #[error("set is not a union of components of the complement of the star")]
    NotComponentUnion,
    #[error("transvection requires Lk(x) ⊆ St(y) and x ≠ y")]
    LinkNotInStar,
    #[error("cannot invert an order-two generator")]
    InversionOfInvolution,
    #[error("images violate the relation {0}")]
    RelationViolated(String),
    #[error("no inverse found; the map is probably not bijective")]
    NotInvertible,
    #[error("order exceeds cap {0}")]
    OrderExceedsCap(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// x ↦ x·y^±1
    Right,
    /// x ↦ y^±1·x
    Left,
}

/// The four generator families of the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Inversion(Vertex),
    /// `sigma[v]` is the image of `v`.
    Graph(Vec<Vertex>),
    /// p ↦ x p x⁻¹ for p in `part`.
    PartialConj { x: Vertex, part: VertexSet },
    Transvection { x: Vertex, y: Vertex, side: Side, inverse: bool },
}

/// An automorphism of a graph product, stored as the images of the
/// positive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    graph: Arc<DefiningGraph>,
    images: Vec<NormalWord>,
}

impl Automorphism {
    pub fn identity(graph: Arc<DefiningGraph>) -> Self {
        let images = (0..graph.rank())
            .map(|v| NormalWord::trusted(alloc::vec![graph.letter(v, false)]))
            .collect();
        Automorphism { graph, images }
    }

    /// Builds and validates an automorphism from images; unlisted vertices
    /// are fixed.
    pub fn from_images(
        graph: Arc<DefiningGraph>,
        images: &[(Vertex, Vec<Letter>)],
    ) -> Result<Self, AutError> {
        let mut f = Self::identity(graph);
        for (v, w) in images {
            if *v >= f.graph.rank() {
                return Err(AutError::UnknownVertex(*v));
            }
            f.images[*v] = normal_form(&f.graph, w);
        }
        f.check_relations()?;
        f.inverse()?;
        Ok(f)
    }

    fn from_images_unchecked(graph: Arc<DefiningGraph>, images: Vec<NormalWord>) -> Self {
        Automorphism { graph, images }
    }

    fn check_relations(&self) -> Result<(), AutError> {
        let g = &*self.graph;
        for (u, v) in g.edges() {
            let (a, b) = (&self.images[u], &self.images[v]);
            let mut c: Vec<Letter> = a.to_vec();
            c.extend_from_slice(b);
            c.extend(formal_inverse(g, a));
            c.extend(formal_inverse(g, b));
            if !normal_form(g, &c).is_empty() {
                return Err(AutError::RelationViolated(alloc::format!(
                    "[{}, {}]",
                    g.name(u),
                    g.name(v)
                )));
            }
        }
        for v in 0..g.rank() {
            if g.kind(v) == VertexKind::OrderTwo {
                let a = &self.images[v];
                let mut sq = a.to_vec();
                sq.extend_from_slice(a);
                if !normal_form(g, &sq).is_empty() {
                    return Err(AutError::RelationViolated(alloc::format!("{}²", g.name(v))));
                }
            }
            if self.images[v].is_empty() {
                return Err(AutError::NotInvertible);
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Arc<DefiningGraph> {
        &self.graph
    }

    /// Image of the positive generator `v`.
    pub fn image(&self, v: Vertex) -> &NormalWord {
        &self.images[v]
    }

    pub fn images(&self) -> &[NormalWord] {
        &self.images
    }

    fn letter_image(&self, l: Letter, out: &mut Vec<Letter>) {
        let g = &*self.graph;
        let img = &self.images[g.letter_vertex(l)];
        if g.is_inverted(l) {
            out.extend(formal_inverse(g, img));
        } else {
            out.extend_from_slice(img);
        }
    }

    /// Letterwise image, concatenated but not normalized.
    pub fn apply_raw(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len());
        for &l in w {
            self.letter_image(l, &mut out);
        }
        out
    }

    pub fn apply(&self, w: &[Letter]) -> NormalWord {
        normal_form(&self.graph, &self.apply_raw(w))
    }

    fn same_graph(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || self.graph == other.graph
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &Automorphism) -> Result<Automorphism, AutError> {
        if !self.same_graph(g) {
            return Err(AutError::GraphMismatch);
        }
        let images = g.images.iter().map(|w| self.apply(w)).collect();
        Ok(Self::from_images_unchecked(self.graph.clone(), images))
    }

    /// `self^k` for `k ≥ 0`.
    pub fn power(&self, k: usize) -> Automorphism {
        let mut acc = Self::identity(self.graph.clone());
        for _ in 0..k {
            acc = self.compose(&acc).expect("same graph");
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(v, w)| w.len() == 1 && w[0] == self.graph.letter(v, false))
    }

    /// Least `k ≤ cap` with `self^k` the identity.
    pub fn order_of(&self, cap: usize) -> Result<usize, AutError> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Ok(k);
            }
            if acc.images.iter().map(|w| w.len()).sum::<usize>() > POWER_LENGTH_GUARD {
                break;
            }
            acc = self.compose(&acc)?;
        }
        Err(AutError::OrderExceedsCap(cap))
    }

    /// Every generator image has length one.
    pub fn is_length_preserving(&self) -> bool {
        self.images.iter().all(|w| w.len() == 1)
    }

    /// Every generator is sent to itself or its inverse.
    pub fn is_composition_of_inversions(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(v, w)| w.len() == 1 && self.graph.letter_vertex(w[0]) == v)
    }

    /// For length-preserving automorphisms: the induced permutation of the
    /// alphabet, indexed by letter code.
    pub fn letter_permutation(&self) -> Option<Vec<Letter>> {
        if !self.is_length_preserving() {
            return None;
        }
        Some(
            self.graph
                .alphabet()
                .map(|l| {
                    let mut out = Vec::with_capacity(1);
                    self.letter_image(l, &mut out);
                    out[0]
                })
                .collect(),
        )
    }

    /// Two-sided inverse, verified on generators.
    pub fn inverse(&self) -> Result<Automorphism, AutError> {
        if let Ok(k) = self.order_of(DEFAULT_ORDER_CAP) {
            return Ok(self.power(k - 1));
        }
        let g = &*self.graph;
        let radius = self.images.iter().map(|w| w.len()).max().unwrap_or(1).max(1);
        let mut found: Vec<Option<NormalWord>> = alloc::vec![None; g.rank()];
        'search: for sphere in spheres(g, radius) {
            for w in sphere {
                let img = self.apply(&w);
                if img.len() == 1 && !g.is_inverted(img[0]) {
                    let v = g.letter_vertex(img[0]);
                    if found[v].is_none() {
                        found[v] = Some(w);
                        if found.iter().all(Option::is_some) {
                            break 'search;
                        }
                    }
                }
            }
        }
        let images: Option<Vec<NormalWord>> = found.into_iter().collect();
        let inv = Self::from_images_unchecked(self.graph.clone(), images.ok_or(AutError::NotInvertible)?);
        inv.check_relations()?;
        if self.compose(&inv)?.is_identity() && inv.compose(self)?.is_identity() {
            Ok(inv)
        } else {
            Err(AutError::NotInvertible)
        }
    }

    /// Stable hash of the graph and images.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::default();
        h.write(&self.graph.fingerprint().to_le_bytes());
        for w in &self.images {
            h.write(&(w.len() as u32).to_le_bytes());
            for l in w.iter() {
                h.write(&(l.index() as u16).to_le_bytes());
            }
        }
        h.finish()
    }

    /// One `v ↦ word` line per non-fixed generator.
    pub fn describe(&self) -> Vec<String> {
        let g = &*self.graph;
        (0..g.rank())
            .filter(|&v| !(self.images[v].len() == 1 && self.images[v][0] == g.letter(v, false)))
            .map(|v| alloc::format!("{} ↦ {}", g.name(v), g.render(&self.images[v])))
            .collect()
    }
}

/// Builds one of the standard generators, checking its side conditions.
pub fn make_generator(graph: Arc<DefiningGraph>, gen: &Generator) -> Result<Automorphism, AutError> {
    let g = &*graph;
    let n = g.rank();
    let check = |v: Vertex| if v < n { Ok(()) } else { Err(AutError::UnknownVertex(v)) };
    let lt = |v: Vertex, inv: bool| g.letter(v, inv);
    let images: Vec<(Vertex, Vec<Letter>)> = match gen {
        Generator::Inversion(x) => {
            check(*x)?;
            if g.kind(*x) == VertexKind::OrderTwo {
                return Err(AutError::InversionOfInvolution);
            }
            alloc::vec![(*x, alloc::vec![lt(*x, true)])]
        }
        Generator::Graph(sigma) => {
            if sigma.len() != n || sigma.iter().any(|&v| v >= n) {
                return Err(AutError::NotAGraphAutomorphism);
            }
            let hit: VertexSet = sigma.iter().copied().collect();
            if hit.len() != n {
                return Err(AutError::NotAGraphAutomorphism);
            }
            for u in 0..n {
                if g.kind(u) != g.kind(sigma[u]) {
                    return Err(AutError::NotAGraphAutomorphism);
                }
                for v in 0..n {
                    if g.adjacent(u, v) != g.adjacent(sigma[u], sigma[v]) {
                        return Err(AutError::NotAGraphAutomorphism);
                    }
                }
            }
            (0..n).map(|v| (v, alloc::vec![lt(sigma[v], false)])).collect()
        }
        Generator::PartialConj { x, part } => {
            check(*x)?;
            let rest = g.vertices().difference(g.star(*x));
            if !part.is_subset(rest) {
                return Err(AutError::NotComponentUnion);
            }
            for c in g.partial_conj_components(*x) {
                let meet = c.intersection(*part);
                if !meet.is_empty() && meet != c {
                    return Err(AutError::NotComponentUnion);
                }
            }
            part.iter()
                .map(|p| (p, alloc::vec![lt(*x, false), lt(p, false), lt(*x, true)]))
                .collect()
        }
        Generator::Transvection { x, y, side, inverse } => {
            check(*x)?;
            check(*y)?;
            if x == y || !g.link(*x).is_subset(g.star(*y)) {
                return Err(AutError::LinkNotInStar);
            }
            let (a, b) = (lt(*x, false), lt(*y, *inverse));
            let img = match side {
                Side::Right => alloc::vec![a, b],
                Side::Left => alloc::vec![b, a],
            };
            alloc::vec![(*x, img)]
        }
    };
    Automorphism::from_images(graph, &images)
}

/// All graph automorphisms, as vertex maps (feasible for small ranks).
pub fn graph_symmetries(g: &DefiningGraph) -> Vec<Vec<Vertex>> {
    fn extend(g: &DefiningGraph, sigma: &mut Vec<Vertex>, used: &mut VertexSet, out: &mut Vec<Vec<Vertex>>) {
        let u = sigma.len();
        if u == g.rank() {
            out.push(sigma.clone());
            return;
        }
        for c in 0..g.rank() {
            if used.contains(c) || g.kind(c) != g.kind(u) {
                continue;
            }
            if (0..u).all(|p| g.adjacent(p, u) == g.adjacent(sigma[p], c)) {
                sigma.push(c);
                used.insert(c);
                extend(g, sigma, used, out);
                used.remove(c);
                sigma.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut used = VertexSet::EMPTY;
    extend(g, &mut Vec::new(), &mut used, &mut out);
    out
}

/// The standard generating automorphisms of a small graph: inversions,
/// graph symmetries, partial conjugations by single components and
/// dominating transvections.
pub fn catalog(graph: &Arc<DefiningGraph>) -> Vec<(String, Automorphism)> {
    let g = &**graph;
    let mut out = Vec::new();
    let mut push = |label: String, gen: Generator| {
        if let Ok(f) = make_generator(graph.clone(), &gen) {
            out.push((label, f));
        }
    };
    for x in 0..g.rank() {
        push(alloc::format!("inv({})", g.name(x)), Generator::Inversion(x));
    }
    for sigma in graph_symmetries(g) {
        let label = alloc::format!("sym{:?}", sigma);
        push(label, Generator::Graph(sigma));
    }
    for x in 0..g.rank() {
        for part in g.partial_conj_components(x) {
            push(
                alloc::format!("pc({}, {})", g.name(x), g.render_set(part)),
                Generator::PartialConj { x, part },
            );
        }
    }
    for x in 0..g.rank() {
        for y in 0..g.rank() {
            for side in [Side::Right, Side::Left] {
                push(
                    alloc::format!("tr({}, {}, {:?})", g.name(x), g.name(y), side),
                    Generator::Transvection { x, y, side, inverse: false },
                );
            }
        }
    }
    out
}

/// Named automorphisms of the example graphs.
pub mod examples {
    use super::*;
    use crate::graph::examples::*;

    fn named(g: DefiningGraph, maps: &[(&str, &str)]) -> Automorphism {
        let g = Arc::new(g);
        let images: Vec<(Vertex, Vec<Letter>)> = maps
            .iter()
            .map(|(v, w)| {
                let word = crate::word::parse_word(&g, w).expect("built-in word parses");
                (g.vertex(v).expect("built-in vertex"), word.into_letters())
            })
            .collect();
        Automorphism::from_images(g, &images).expect("built-in automorphism is valid")
    }

    /// a → b → c → d → a on the square.
    pub fn rot() -> Automorphism {
        named(square(), &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    }

    /// a ↔ c, b ↔ d on the square.
    pub fn refl() -> Automorphism {
        named(square(), &[("a", "c"), ("b", "d"), ("c", "a"), ("d", "b")])
    }

    /// a ↔ d, b ↔ c on the path a-b-c-d.
    pub fn line_refl() -> Automorphism {
        named(path4(), &[("a", "d"), ("b", "c"), ("c", "b"), ("d", "a")])
    }

    /// x ↦ x·y, y ↦ y⁻¹ on the path x-z-y.
    pub fn trv() -> Automorphism {
        named(f2_times_z(), &[("x", "x y"), ("y", "y'")])
    }

    /// y ↦ x·y·x⁻¹, x ↦ x⁻¹ on two isolated vertices.
    pub fn pc() -> Automorphism {
        named(edgeless_xy(), &[("x", "x'"), ("y", "x y x'")])
    }

    /// Inversion of `a` on the square.
    pub fn invert_a() -> Automorphism {
        named(square(), &[("a", "a'")])
    }
}
