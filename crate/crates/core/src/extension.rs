//! Finite cyclic extensions `G ⋊_φ ⟨t⟩` with `t^m = 1` and
//! `t⁻¹·s·t = φ(s)`.
//!
//! Elements are pairs `(a, u)` standing for `t^a·u`, multiplied by
//! `(a, u)·(b, v) = (a + b, φ^b(u)·v)`. Words over the extended alphabet
//! use symbol codes with the stable letter first, so `t` is least in
//! shortlex order: `t` is 0, `t⁻¹` is 1 when `m > 2`, and the group
//! letters follow in letter order.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::automata::{conjgeo_automaton_inversions, Automaton, AutomatonError, Symbol};
use crate::automorphism::Automorphism;
use crate::graph::{DefiningGraph, Letter, Vertex, VertexKind, VertexSet};
use crate::twisted::{class_key, enumerate_language, twisted_conjugate, LanguageKind, SearchBudget, TriState, TwistedContext, TwistedError};
use crate::word::{invert, normal_form, spheres, tokenize, NormalWord, WordParseError};

/// Name of the stable letter in word syntax.
pub const STABLE_LETTER: &str = "t";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("t-order {0} is not a positive multiple of the order of φ")]
    OrderMismatch(usize),
    #[error("vertex name `t` is reserved for the stable letter")]
    ReservedName,
    #[error("no word of length at most {0} represents the element")]
    NotFoundWithinCap(usize),
    #[error("φ is not an inversion of x composed with a partial conjugation by x, with m = 2")]
    PhiWrongShape,
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Parse(#[from] WordParseError),
}

/// `t^t_exp · base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub t_exp: usize,
    pub base: NormalWord,
}

/// What an extended-alphabet symbol stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtSymbol {
    T,
    TInv,
    Letter(Letter),
}

/// Languages enumerated over the extended alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtLanguageKind {
    Geo,
    ConjGeo,
    ConjSl,
}

pub struct VirtualGP {
    graph: Arc<DefiningGraph>,
    phi: Automorphism,
    m: usize,
    // φ^k for 0 ≤ k < order(φ).
    powers: Vec<Automorphism>,
    // Twisted contexts for φ^k, same indexing.
    contexts: Vec<TwistedContext>,
    t_symbols: usize,
}

impl VirtualGP {
    pub fn new(phi: Automorphism, m: usize) -> Result<Self, ExtError> {
        let graph = phi.graph().clone();
        if graph.vertex(STABLE_LETTER).is_some() {
            return Err(ExtError::ReservedName);
        }
        if m == 0 {
            return Err(ExtError::OrderMismatch(m));
        }
        let order = phi.order_of(m).map_err(|_| ExtError::OrderMismatch(m))?;
        if !m.is_multiple_of(order) {
            return Err(ExtError::OrderMismatch(m));
        }
        let powers: Vec<Automorphism> = (0..order).map(|k| phi.power(k)).collect();
        let contexts = powers
            .iter()
            .map(|p| TwistedContext::new(p.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VirtualGP { graph, phi, m, powers, contexts, t_symbols: if m > 2 { 2 } else { 1 } })
    }

    pub fn graph(&self) -> &Arc<DefiningGraph> {
        &self.graph
    }

    pub fn phi(&self) -> &Automorphism {
        &self.phi
    }

    /// Order of the stable letter.
    pub fn m(&self) -> usize {
        self.m
    }

    /// φ^k for any integer `k`.
    pub fn phi_power(&self, k: i64) -> &Automorphism {
        &self.powers[k.rem_euclid(self.powers.len() as i64) as usize]
    }

    /// Twisted context for φ^k.
    pub fn context(&self, k: i64) -> &TwistedContext {
        &self.contexts[k.rem_euclid(self.contexts.len() as i64) as usize]
    }

    pub fn num_symbols(&self) -> usize {
        self.t_symbols + self.graph.alphabet_size()
    }

    /// Symbol names in symbol order.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = vec![String::from(STABLE_LETTER)];
        if self.t_symbols == 2 {
            out.push(alloc::format!("{STABLE_LETTER}⁻¹"));
        }
        out.extend(self.graph.alphabet().map(|l| self.graph.letter_name(l)));
        out
    }

    pub fn t_symbol(&self) -> Symbol {
        0
    }

    /// Symbol of `t⁻¹`; equals `t` when `m ≤ 2`.
    pub fn t_inv_symbol(&self) -> Symbol {
        (self.t_symbols - 1) as Symbol
    }

    pub fn letter_symbol(&self, l: Letter) -> Symbol {
        (l.index() + self.t_symbols) as Symbol
    }

    pub fn classify(&self, s: Symbol) -> ExtSymbol {
        match s as usize {
            0 => ExtSymbol::T,
            1 if self.t_symbols == 2 => ExtSymbol::TInv,
            i => ExtSymbol::Letter(Letter::from_index(i - self.t_symbols)),
        }
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        let names = self.symbols();
        let parts: Vec<&str> = w.iter().map(|&s| names[s as usize].as_str()).collect();
        parts.join("·")
    }

    pub fn render_element(&self, g: &ExtElement) -> String {
        alloc::format!("({}, {})", g.t_exp, self.graph.render(&g.base))
    }

    /// Parses word syntax where `t` is the stable letter.
    pub fn parse_word(&self, s: &str) -> Result<Vec<Symbol>, ExtError> {
        let mut out = Vec::new();
        for tok in tokenize(s)? {
            if tok.name == STABLE_LETTER {
                let sym = if tok.exponent > 0 { self.t_symbol() } else { self.t_inv_symbol() };
                out.extend(core::iter::repeat_n(sym, tok.exponent.unsigned_abs() as usize));
            } else {
                out.extend(tok.letters(&self.graph)?.into_iter().map(|l| self.letter_symbol(l)));
            }
        }
        Ok(out)
    }

    /// Lifts a group word into the extended alphabet.
    pub fn lift(&self, w: &[Letter]) -> Vec<Symbol> {
        w.iter().map(|&l| self.letter_symbol(l)).collect()
    }

    pub fn identity(&self) -> ExtElement {
        ExtElement { t_exp: 0, base: NormalWord::empty() }
    }

    pub fn element(&self, t_exp: i64, base: &[Letter]) -> ExtElement {
        ExtElement { t_exp: t_exp.rem_euclid(self.m as i64) as usize, base: normal_form(&self.graph, base) }
    }

    pub fn generator(&self, s: Symbol) -> ExtElement {
        match self.classify(s) {
            ExtSymbol::T => self.element(1, &[]),
            ExtSymbol::TInv => self.element(-1, &[]),
            ExtSymbol::Letter(l) => self.element(0, &[l]),
        }
    }

    pub fn multiply(&self, g: &ExtElement, h: &ExtElement) -> ExtElement {
        let mut w = self.phi_power(h.t_exp as i64).apply_raw(&g.base);
        w.extend_from_slice(&h.base);
        ExtElement { t_exp: (g.t_exp + h.t_exp) % self.m, base: normal_form(&self.graph, &w) }
    }

    pub fn invert(&self, g: &ExtElement) -> ExtElement {
        let inv = invert(&self.graph, &g.base);
        ExtElement {
            t_exp: (self.m - g.t_exp) % self.m,
            base: self.phi_power(-(g.t_exp as i64)).apply(&inv),
        }
    }

    /// The element a word over the extended alphabet represents.
    pub fn normal_form(&self, w: &[Symbol]) -> ExtElement {
        w.iter().fold(self.identity(), |acc, &s| self.multiply(&acc, &self.generator(s)))
    }

    /// Conjugacy: `t^a·u` and `t^b·v` are conjugate iff `a = b` and `v` is
    /// φ^a-twisted conjugate to some `φ^k(u)`.
    pub fn conjugate(&self, g: &ExtElement, h: &ExtElement, budget: &SearchBudget) -> TriState {
        if g.t_exp != h.t_exp {
            return TriState::No;
        }
        let ctx = self.context(g.t_exp as i64);
        let mut unknown = false;
        for k in 0..self.m as i64 {
            let u = self.phi_power(k).apply(&g.base);
            match twisted_conjugate(ctx, &u, &h.base, budget) {
                TriState::Yes => return TriState::Yes,
                TriState::UnknownBudget => unknown = true,
                TriState::No => {}
            }
        }
        if unknown {
            TriState::UnknownBudget
        } else {
            TriState::No
        }
    }

    /// Canonical key of the conjugacy class of `g`.
    pub fn class_key(&self, g: &ExtElement, budget: &SearchBudget) -> Result<(usize, NormalWord), ExtError> {
        let ctx = self.context(g.t_exp as i64);
        let mut best: Option<NormalWord> = None;
        for k in 0..self.m as i64 {
            let u = self.phi_power(k).apply(&g.base);
            let key = class_key(ctx, &u, budget)?;
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        Ok((g.t_exp, best.expect("m ≥ 1")))
    }

    /// Distances from the identity for every element within `radius`.
    pub fn ball(&self, radius: usize) -> BTreeMap<ExtElement, usize> {
        let gens: Vec<ExtElement> = (0..self.num_symbols() as Symbol).map(|s| self.generator(s)).collect();
        bfs_ball(self, &gens, radius)
    }

    /// Word length of `g` over the extended alphabet, searched up to `cap`.
    pub fn geodesic_length(&self, g: &ExtElement, cap: usize) -> Result<usize, ExtError> {
        let gens: Vec<ExtElement> = (0..self.num_symbols() as Symbol).map(|s| self.generator(s)).collect();
        let mut seen: BTreeSet<ExtElement> = BTreeSet::new();
        let mut layer = vec![self.identity()];
        seen.insert(self.identity());
        for r in 0..=cap {
            if layer.contains(g) {
                return Ok(r);
            }
            let mut next = Vec::new();
            for e in &layer {
                for x in &gens {
                    let f = self.multiply(e, x);
                    if seen.insert(f.clone()) {
                        next.push(f);
                    }
                }
            }
            layer = next;
        }
        Err(ExtError::NotFoundWithinCap(cap))
    }

    /// Words of length at most `n` in the named language, shortlex order.
    pub fn enumerate_language(
        &self,
        kind: ExtLanguageKind,
        n: usize,
        budget: &SearchBudget,
    ) -> Result<Vec<Vec<Symbol>>, ExtError> {
        let ball = self.ball(n);
        let mut min_len: BTreeMap<(usize, NormalWord), usize> = BTreeMap::new();
        let mut keys: BTreeMap<&ExtElement, (usize, NormalWord)> = BTreeMap::new();
        if kind != ExtLanguageKind::Geo {
            for (e, &d) in &ball {
                let key = self.class_key(e, budget)?;
                let slot = min_len.entry(key.clone()).or_insert(d);
                *slot = (*slot).min(d);
                keys.insert(e, key);
            }
        }
        let mut taken: BTreeSet<&(usize, NormalWord)> = BTreeSet::new();
        let mut out = Vec::new();
        for len in 0..=n {
            let mut words = Vec::new();
            geodesic_words_of_length(self, &ball, &self.identity(), len, &mut Vec::new(), &mut words);
            for (w, e) in words {
                match kind {
                    ExtLanguageKind::Geo => out.push(w),
                    ExtLanguageKind::ConjGeo => {
                        if min_len[&keys[&e]] == len {
                            out.push(w);
                        }
                    }
                    ExtLanguageKind::ConjSl => {
                        let key = &keys[&e];
                        if min_len[key] == len && taken.insert(key) {
                            out.push(w);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Shortest words over `t`, `t⁻¹` representing `t^l`.
    pub fn t_power_words(&self, l: usize) -> Vec<Vec<Symbol>> {
        let l = l % self.m;
        let back = (self.m - l) % self.m;
        let mut out = Vec::new();
        if l <= back {
            out.push(vec![self.t_symbol(); l]);
        }
        if back <= l {
            out.push(vec![self.t_inv_symbol(); back]);
        }
        out.sort();
        out.dedup();
        out
    }

    /// True when every stable letter of `w` precedes every group letter.
    pub fn is_t_prefix_shaped(&self, w: &[Symbol]) -> bool {
        let first_letter = w
            .iter()
            .position(|&s| matches!(self.classify(s), ExtSymbol::Letter(_)))
            .unwrap_or(w.len());
        w[first_letter..].iter().all(|&s| matches!(self.classify(s), ExtSymbol::Letter(_)))
    }

    /// The union `⋃_l t^l·ConjGeo_{φ^l}` cut at length `n`, shortlex order.
    pub fn union_formula_words(&self, n: usize, budget: &SearchBudget) -> Result<Vec<Vec<Symbol>>, ExtError> {
        let mut out = Vec::new();
        for l in 0..self.m {
            for prefix in self.t_power_words(l) {
                if prefix.len() > n {
                    continue;
                }
                let ctx = self.context(l as i64);
                for u in enumerate_language(ctx, LanguageKind::ConjGeo, n - prefix.len(), budget)? {
                    let mut w = prefix.clone();
                    w.extend(self.lift(&u));
                    out.push(w);
                }
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(out)
    }

    /// Automaton for `⋃_l t^l·ConjGeo_{φ^l}` when φ is a composition of
    /// inversions.
    pub fn conjgeo_automaton(&self) -> Result<Automaton, ExtError> {
        if !self.phi.is_composition_of_inversions() {
            return Err(AutomatonError::PsiNotInversions.into());
        }
        let names = self.symbols();
        let lift: Vec<Vec<Symbol>> = self.graph.alphabet().map(|l| vec![self.letter_symbol(l)]).collect();
        let mut acc = Automaton::empty(names.clone());
        for l in 0..self.m {
            let inner = conjgeo_automaton_inversions(self.context(l as i64))?.hom_image(names.clone(), &lift)?;
            let prefix = Automaton::from_words(names.clone(), &self.t_power_words(l))?;
            acc = acc.union(&prefix.concat(&inner)?)?;
        }
        Ok(acc)
    }

    /// Checks that the extension is the graph product obtained by the
    /// substitution `u = t·x`, for φ sending `x ↦ x⁻¹` and `y ↦ x·y·x⁻¹`
    /// on a set `D` of vertices outside the star of `x`.
    pub fn tietze_graph_product_check(&self) -> Result<TietzeReport, ExtError> {
        let (x, d) = self.pc_inversion_shape().ok_or(ExtError::PhiWrongShape)?;
        let g = &*self.graph;
        let u_name = ["u", "u_", "u__"]
            .into_iter()
            .find(|n| g.vertex(n).is_none())
            .expect("one of three names is free");
        let mut names: Vec<(String, VertexKind)> =
            (0..g.rank()).filter(|&v| v != x).map(|v| (g.name(v).into(), g.kind(v))).collect();
        names.push((STABLE_LETTER.into(), VertexKind::OrderTwo));
        names.push((u_name.into(), VertexKind::OrderTwo));
        let mut edges: Vec<(String, String)> = Vec::new();
        for (a, b) in g.edges() {
            if a != x && b != x {
                edges.push((g.name(a).into(), g.name(b).into()));
            }
        }
        for a in g.link(x).iter() {
            edges.push((u_name.into(), g.name(a).into()));
        }
        for y in d.iter() {
            edges.push((u_name.into(), g.name(y).into()));
        }
        for s in g.vertices().difference(d).iter().filter(|&s| s != x) {
            edges.push((STABLE_LETTER.into(), g.name(s).into()));
        }
        let vs: Vec<(&str, VertexKind)> = names.iter().map(|(n, k)| (n.as_str(), *k)).collect();
        let es: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let target = DefiningGraph::new(&vs, &es).expect("target presentation is a simple graph");

        // Images of target letters in the extension.
        let image_of = |l: Letter| -> ExtElement {
            let name = target.name(target.letter_vertex(l));
            
            if name == STABLE_LETTER {
                self.element(1, &[])
            } else if name == u_name {
                self.element(1, &[g.letter(x, false)])
            } else {
                let v = g.vertex(name).expect("kept vertex");
                self.element(0, &[g.letter(v, target.is_inverted(l))])
            }
        };
        let eval = |w: &[Letter]| w.iter().fold(self.identity(), |acc, &l| self.multiply(&acc, &image_of(l)));

        let mut relators = Vec::new();
        for v in 0..target.rank() {
            if target.kind(v) == VertexKind::OrderTwo {
                let a = target.letter(v, false);
                relators.push(vec![a, a]);
            }
        }
        for (p, q) in target.edges() {
            let (a, b) = (target.letter(p, false), target.letter(q, false));
            relators.push(vec![a, b, target.inverse(a), target.inverse(b)]);
        }
        let relators: Vec<(String, bool)> =
            relators.iter().map(|r| (target.render(r), eval(r) == self.identity())).collect();

        let t = target.letter(target.vertex(STABLE_LETTER).expect("t"), false);
        let u = target.letter(target.vertex(u_name).expect("u"), false);
        let generation = eval(&[t, u]) == self.element(0, &[g.letter(x, false)]);

        let radius = 4;
        let target_growth: Vec<usize> = spheres(&target, radius).iter().map(Vec::len).collect();
        let gens: Vec<ExtElement> = target.alphabet().map(image_of).collect();
        let ball = bfs_ball(self, &gens, radius);
        let mut extension_growth = vec![0; radius + 1];
        for &r in ball.values() {
            extension_growth[r] += 1;
        }
        Ok(TietzeReport { x, d, target, relators, generation, target_growth, extension_growth })
    }

    fn pc_inversion_shape(&self) -> Option<(Vertex, VertexSet)> {
        if self.m != 2 {
            return None;
        }
        let g = &*self.graph;
        let inverted: Vec<Vertex> = (0..g.rank())
            .filter(|&v| {
                g.kind(v) == VertexKind::InfiniteCyclic && self.phi.image(v).letters() == [g.letter(v, true)]
            })
            .collect();
        let [x] = inverted[..] else { return None };
        let xl = g.letter(x, false);
        let mut d = VertexSet::EMPTY;
        for y in (0..g.rank()).filter(|&y| y != x) {
            let yl = g.letter(y, false);
            let img = self.phi.image(y);
            if img.letters() == [yl] {
                continue;
            }
            if *img == normal_form(g, &[xl, yl, g.inverse(xl)]) && !g.star(x).contains(y) {
                d.insert(y);
            } else {
                return None;
            }
        }
        (!d.is_empty()).then_some((x, d))
    }
}

/// Outcome of [`VirtualGP::tietze_graph_product_check`].
#[derive(Clone, Debug)]
pub struct TietzeReport {
    pub x: Vertex,
    pub d: VertexSet,
    /// Graph of the claimed graph product: the vertices other than `x`,
    /// plus involutions `t` and `u`.
    pub target: DefiningGraph,
    /// Each relator of the target, with whether it maps to the identity.
    pub relators: Vec<(String, bool)>,
    /// `x` is recovered as `t·u`.
    pub generation: bool,
    pub target_growth: Vec<usize>,
    pub extension_growth: Vec<usize>,
}

impl TietzeReport {
    pub fn passed(&self) -> bool {
        self.relators.iter().all(|r| r.1) && self.generation && self.target_growth == self.extension_growth
    }
}

fn bfs_ball(vg: &VirtualGP, gens: &[ExtElement], radius: usize) -> BTreeMap<ExtElement, usize> {
    let mut dist = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(vg.identity(), 0);
    queue.push_back(vg.identity());
    while let Some(e) = queue.pop_front() {
        let d = dist[&e];
        if d == radius {
            continue;
        }
        for x in gens {
            let f = vg.multiply(&e, x);
            if !dist.contains_key(&f) {
                dist.insert(f.clone(), d + 1);
                queue.push_back(f);
            }
        }
    }
    dist
}

/// Geodesic words of exactly `rem` more letters from `cur`, in
/// lexicographic order, with the elements they reach.
fn geodesic_words_of_length(
    vg: &VirtualGP,
    ball: &BTreeMap<ExtElement, usize>,
    cur: &ExtElement,
    rem: usize,
    buf: &mut Vec<Symbol>,
    out: &mut Vec<(Vec<Symbol>, ExtElement)>,
) {
    if rem == 0 {
        out.push((buf.clone(), cur.clone()));
        return;
    }
    for s in 0..vg.num_symbols() as Symbol {
        let next = vg.multiply(cur, &vg.generator(s));
        if ball.get(&next) == Some(&(buf.len() + 1)) {
            buf.push(s);
            geodesic_words_of_length(vg, ball, &next, rem - 1, buf, out);
            buf.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::examples::*;
    use crate::automorphism::{make_generator, Generator};
    use crate::graph::examples::*;
    use crate::word::tests::w;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn refl2() -> VirtualGP {
        VirtualGP::new(refl(), 2).unwrap()
    }

    fn e(vg: &VirtualGP, s: &str) -> ExtElement {
        vg.normal_form(&vg.parse_word(s).unwrap())
    }

    #[test]
    fn normal_form_examples() {
        let vg = refl2();
        let g = vg.graph().clone();
        assert_eq!(e(&vg, "t a t"), vg.element(0, &w(&g, "c")));
        assert_eq!(e(&vg, "t t"), vg.identity());
        assert_eq!(e(&vg, "a"), vg.element(0, &w(&g, "a")));
        assert_eq!(vg.render(&vg.parse_word("t a t").unwrap()), "t·a·t");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(VirtualGP::new(rot(), 2).err(), Some(ExtError::OrderMismatch(2)));
        assert_eq!(VirtualGP::new(rot(), 0).err(), Some(ExtError::OrderMismatch(0)));
        assert!(VirtualGP::new(rot(), 8).is_ok());
        let tg = Arc::new(DefiningGraph::new(&[("t", VertexKind::InfiniteCyclic)], &[]).unwrap());
        assert_eq!(VirtualGP::new(Automorphism::identity(tg), 1).err(), Some(ExtError::ReservedName));
    }

    #[test]
    fn multiplication_examples() {
        let vg = refl2();
        let g = vg.graph().clone();
        let ta = vg.element(1, &w(&g, "a"));
        assert_eq!(vg.multiply(&ta, &vg.element(1, &[])), vg.element(0, &w(&g, "c")));
        assert_eq!(vg.multiply(&ta, &vg.element(1, &[])), e(&vg, "t a t"));
        let u = vg.element(0, &w(&g, "a b"));
        let v = vg.element(0, &w(&g, "c' d"));
        assert_eq!(vg.multiply(&u, &v), vg.element(0, &w(&g, "a b c' d")));
    }

    fn random_word(rng: &mut ChaCha8Rng, vg: &VirtualGP, len: usize) -> Vec<Symbol> {
        (0..len).map(|_| rng.gen_range(0..vg.num_symbols()) as Symbol).collect()
    }

    #[test]
    fn group_axioms_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for vg in [refl2(), VirtualGP::new(rot(), 4).unwrap(), VirtualGP::new(trv(), 2).unwrap()] {
            for _ in 0..100 {
                let g = vg.normal_form(&random_word(&mut rng, &vg, 6));
                let h = vg.normal_form(&random_word(&mut rng, &vg, 6));
                let k = vg.normal_form(&random_word(&mut rng, &vg, 4));
                assert_eq!(vg.multiply(&g, &vg.invert(&g)), vg.identity());
                assert_eq!(vg.multiply(&vg.invert(&g), &g), vg.identity());
                assert_eq!(vg.multiply(&vg.multiply(&g, &h), &k), vg.multiply(&g, &vg.multiply(&h, &k)));
            }
        }
    }

    #[test]
    fn normal_form_is_invariant_under_relator_insertion() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let vg = VirtualGP::new(rot(), 4).unwrap();
        let g = vg.graph().clone();
        let t = vg.t_symbol();
        let ti = vg.t_inv_symbol();
        let mut relators: Vec<Vec<Symbol>> = vec![vec![t; 4], vec![t, ti], vec![ti, t]];
        // t⁻¹·s·t·φ(s)⁻¹ for each letter s.
        for l in g.alphabet() {
            let mut r = vec![ti, vg.letter_symbol(l), t];
            let img = crate::word::formal_inverse(&g, &vg.phi().apply(&[l]));
            r.extend(vg.lift(&img));
            relators.push(r);
            relators.push(vec![vg.letter_symbol(l), vg.letter_symbol(g.inverse(l))]);
        }
        for _ in 0..200 {
            let base = random_word(&mut rng, &vg, 7);
            let mut scrambled = base.clone();
            for _ in 0..3 {
                let r = &relators[rng.gen_range(0..relators.len())];
                let at = rng.gen_range(0..=scrambled.len());
                scrambled.splice(at..at, r.iter().copied());
            }
            assert_eq!(vg.normal_form(&scrambled), vg.normal_form(&base));
        }
    }

    #[test]
    fn conjugacy_examples() {
        let vg = refl2();
        let g = vg.graph().clone();
        let b = SearchBudget::default();
        let u = vg.element(1, &w(&g, "a"));
        assert_eq!(vg.conjugate(&u, &vg.element(0, &w(&g, "a")), &b), TriState::No);
        assert_eq!(vg.conjugate(&u, &vg.element(1, &w(&g, "c")), &b), TriState::Yes);
        assert_eq!(vg.conjugate(&u, &u, &b), TriState::Yes);
    }

    /// Conjugator search over a ball of conjugators.
    fn brute_conjugate(vg: &VirtualGP, g: &ExtElement, h: &ExtElement, conjugators: &[ExtElement]) -> bool {
        conjugators.iter().any(|c| vg.multiply(&vg.multiply(&vg.invert(c), g), c) == *h)
    }

    #[test]
    fn conjugacy_agrees_with_conjugator_search() {
        let b = SearchBudget::default();
        for vg in [refl2(), VirtualGP::new(invert_a(), 2).unwrap()] {
            let ball: Vec<ExtElement> = vg.ball(3).into_keys().collect();
            let small: Vec<ExtElement> = vg.ball(2).into_keys().collect();
            for (i, g) in small.iter().enumerate() {
                for h in &small[i..] {
                    let fast = vg.conjugate(g, h, &b);
                    assert_ne!(fast, TriState::UnknownBudget);
                    let brute = brute_conjugate(&vg, g, h, &ball);
                    assert_eq!(fast == TriState::Yes, brute, "{} {}", vg.render_element(g), vg.render_element(h));
                }
            }
        }
    }

    #[test]
    fn geodesic_length_examples() {
        let vg = refl2();
        let g = vg.graph().clone();
        assert_eq!(vg.geodesic_length(&vg.element(0, &w(&g, "a")), 5), Ok(1));
        assert_eq!(vg.geodesic_length(&vg.element(1, &[]), 5), Ok(1));
        assert_eq!(vg.geodesic_length(&vg.element(1, &w(&g, "c")), 5), Ok(2));
        assert_eq!(
            vg.geodesic_length(&vg.element(0, &w(&g, "a a a")), 2),
            Err(ExtError::NotFoundWithinCap(2))
        );
    }

    #[test]
    fn t_power_words_are_shortest() {
        let vg = VirtualGP::new(rot(), 4).unwrap();
        let r = |l| -> Vec<String> { vg.t_power_words(l).iter().map(|w| vg.render(w)).collect() };
        assert_eq!(r(0), ["ε"]);
        assert_eq!(r(1), ["t"]);
        assert_eq!(r(2), ["t·t", "t⁻¹·t⁻¹"]);
        assert_eq!(r(3), ["t⁻¹"]);
        let vg2 = refl2();
        assert_eq!(vg2.t_power_words(1), [vec![0]]);
        assert_eq!(vg2.t_power_words(0), [Vec::<Symbol>::new()]);
    }

    #[test]
    fn enumeration_basics() {
        let vg = VirtualGP::new(invert_a(), 2).unwrap();
        let b = SearchBudget::default();
        for kind in [ExtLanguageKind::Geo, ExtLanguageKind::ConjGeo, ExtLanguageKind::ConjSl] {
            assert_eq!(vg.enumerate_language(kind, 0, &b).unwrap(), [Vec::<Symbol>::new()]);
        }
        let sl = vg.enumerate_language(ExtLanguageKind::ConjSl, 2, &b).unwrap();
        // t is least, so the class of t is represented by t itself.
        assert!(sl.contains(&vec![vg.t_symbol()]));
        let geo = vg.enumerate_language(ExtLanguageKind::Geo, 3, &b).unwrap();
        for w in &geo {
            assert_eq!(vg.geodesic_length(&vg.normal_form(w), 3), Ok(w.len()));
        }
    }

    #[test]
    fn union_formula_matches_definition_for_inversions() {
        let b = SearchBudget::default();
        let vg = VirtualGP::new(invert_a(), 2).unwrap();
        let n = 4;
        let conjgeo = vg.enumerate_language(ExtLanguageKind::ConjGeo, n, &b).unwrap();
        let shaped: Vec<Vec<Symbol>> = conjgeo.iter().filter(|w| vg.is_t_prefix_shaped(w)).cloned().collect();
        assert_eq!(shaped, vg.union_formula_words(n, &b).unwrap());
        let a = vg.conjgeo_automaton().unwrap();
        assert_eq!(a.enumerate_accepted(n), shaped);
    }

    #[test]
    fn union_automaton_for_identity_is_untwisted() {
        let g1 = Arc::new(square());
        let vg = VirtualGP::new(Automorphism::identity(g1.clone()), 1).unwrap();
        let b = SearchBudget::default();
        let a = vg.conjgeo_automaton().unwrap();
        let plain = enumerate_language(&TwistedContext::identity(g1), LanguageKind::ConjGeo, 4, &b).unwrap();
        let lifted: Vec<Vec<Symbol>> = plain.iter().map(|u| vg.lift(u)).collect();
        assert_eq!(a.enumerate_accepted(4), lifted);
        let lr = VirtualGP::new(line_refl(), 2).unwrap();
        assert_eq!(lr.conjgeo_automaton().unwrap_err(), ExtError::Automaton(AutomatonError::PsiNotInversions));
    }

    #[test]
    fn conjsl_representatives_are_a_transversal() {
        let vg = VirtualGP::new(rot(), 4).unwrap();
        let b = SearchBudget::default();
        let sl: Vec<ExtElement> =
            vg.enumerate_language(ExtLanguageKind::ConjSl, 2, &b).unwrap().iter().map(|w| vg.normal_form(w)).collect();
        for (i, x) in sl.iter().enumerate() {
            for y in &sl[i + 1..] {
                assert_eq!(vg.conjugate(x, y, &b), TriState::No);
            }
        }
        for (g, d) in vg.ball(2) {
            let hits = sl.iter().filter(|x| vg.conjugate(x, &g, &b) == TriState::Yes).count();
            assert_eq!(hits, 1, "{} at distance {d}", vg.render_element(&g));
        }
    }

    #[test]
    fn tietze_check_on_two_vertex_example() {
        let vg = VirtualGP::new(pc(), 2).unwrap();
        let r = vg.tietze_graph_product_check().unwrap();
        assert!(r.passed(), "{r:?}");
        let tg = &r.target;
        assert_eq!(tg.names(), ["y", "t", "u"]);
        assert_eq!(tg.edges().len(), 1);
        assert!(tg.adjacent(tg.vertex("u").unwrap(), tg.vertex("y").unwrap()));
    }

    #[test]
    fn tietze_check_on_path() {
        let g2 = Arc::new(path4());
        let b = g2.vertex("b").unwrap();
        let d = g2.vertex("d").unwrap();
        let pc = make_generator(g2.clone(), &Generator::PartialConj { x: b, part: VertexSet::singleton(d) }).unwrap();
        let inv = make_generator(g2.clone(), &Generator::Inversion(b)).unwrap();
        let vg = VirtualGP::new(pc.compose(&inv).unwrap(), 2).unwrap();
        let r = vg.tietze_graph_product_check().unwrap();
        assert!(r.passed(), "{r:?}");
        let rot4 = VirtualGP::new(rot(), 4).unwrap();
        assert_eq!(rot4.tietze_graph_product_check().unwrap_err(), ExtError::PhiWrongShape);
    }
}
