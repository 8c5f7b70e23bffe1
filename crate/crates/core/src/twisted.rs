//! Twisted conjugacy: ψ-cyclic shifts and permutations, ψ-cyclic reduction,
//! the decision procedure, and enumeration of the twisted language families.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::sync::Arc;
use alloc::vec::Vec;

use thiserror::Error;

use crate::automorphism::{AutError, Automorphism, DEFAULT_ORDER_CAP};
use crate::graph::{DefiningGraph, Letter};
use crate::word::{geodesic_words, heap_ideals, is_geodesic, normal_form, spheres, split_by_mask, NormalWord, Word};

/// Default cap on the number of distinct elements one closure search may hold.
pub const DEFAULT_MAX_STATES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistedError {
    #[error("automorphism has no finite order up to {0}")]
    InfiniteOrder(usize),
    #[error("search budget exhausted before the answer was certified")]
    BudgetExhausted,
    #[error(transparent)]
    Automorphism(#[from] AutError),
}

/// Three-valued answer of a budgeted decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriState {
    Yes,
    No,
    UnknownBudget,
}

/// Termination control for closure searches.
///
/// `max_length: None` means `max(2·l, l + m·L)` for an input of length `l`,
/// where `L` is the longest generator image. Length-preserving automorphisms
/// never need a budget: their closures are finite at fixed length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_length: Option<usize>,
    pub max_states: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_length: None, max_states: DEFAULT_MAX_STATES }
    }
}

impl SearchBudget {
    pub fn with_max_length(max_length: usize) -> Self {
        SearchBudget { max_length: Some(max_length), ..Self::default() }
    }
}

/// An automorphism of finite order together with its powers.
#[derive(Clone, Debug)]
pub struct TwistedContext {
    graph: Arc<DefiningGraph>,
    psi: Automorphism,
    powers: Vec<Automorphism>,
    letter_maps: Option<Vec<Vec<Letter>>>,
    max_image_len: usize,
}

impl TwistedContext {
    pub fn new(psi: Automorphism) -> Result<Self, TwistedError> {
        let m = psi
            .order_of(DEFAULT_ORDER_CAP)
            .map_err(|_| TwistedError::InfiniteOrder(DEFAULT_ORDER_CAP))?;
        let powers: Vec<Automorphism> = (0..m).map(|k| psi.power(k)).collect();
        let letter_maps = powers.iter().map(Automorphism::letter_permutation).collect();
        let max_image_len = psi.images().iter().map(|w| w.len()).max().unwrap_or(1);
        Ok(TwistedContext { graph: psi.graph().clone(), psi, powers, letter_maps, max_image_len })
    }

    pub fn identity(graph: Arc<DefiningGraph>) -> Self {
        Self::new(Automorphism::identity(graph)).expect("identity has order one")
    }

    pub fn graph(&self) -> &Arc<DefiningGraph> {
        &self.graph
    }

    pub fn psi(&self) -> &Automorphism {
        &self.psi
    }

    /// The order `m` of ψ.
    pub fn order(&self) -> usize {
        self.powers.len()
    }

    pub fn is_length_preserving(&self) -> bool {
        self.letter_maps.is_some()
    }

    /// ψ^k for any integer `k`.
    pub fn power(&self, k: i64) -> &Automorphism {
        &self.powers[k.rem_euclid(self.order() as i64) as usize]
    }

    /// Appends the letterwise image of `w` under ψ^k (not normalized).
    pub fn push_image(&self, k: i64, w: &[Letter], out: &mut Vec<Letter>) {
        let k = k.rem_euclid(self.order() as i64) as usize;
        match &self.letter_maps {
            Some(maps) => out.extend(w.iter().map(|l| maps[k][l.index()])),
            None => out.extend(self.powers[k].apply_raw(w)),
        }
    }

    fn default_max_length(&self, l: usize) -> usize {
        (2 * l).max(l + self.order() * self.max_image_len)
    }
}

/// Raw ψ-cyclic shifts of the letter sequence `v`: for every proper split
/// `v = x·y`, the words `y·ψ⁻¹(x)` and `ψ(y)·x`, plus the whole-word
/// images `ψ(v)` and `ψ⁻¹(v)`.
pub fn psi_cyclic_shift_words(ctx: &TwistedContext, v: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::with_capacity(2 * v.len() + 2);
    for j in 0..=v.len() {
        let (x, y) = v.split_at(j);
        let proper = j > 0 && j < v.len();
        if proper || j == v.len() {
            let mut buf = y.to_vec();
            ctx.push_image(-1, x, &mut buf);
            out.push(buf);
        }
        if proper || j == 0 {
            let mut buf = Vec::with_capacity(v.len());
            ctx.push_image(1, y, &mut buf);
            buf.extend_from_slice(x);
            out.push(buf);
        }
    }
    out
}

/// ψ-cyclic shifts of `v`, normalized.
pub fn psi_cyclic_shifts(ctx: &TwistedContext, v: &[Letter]) -> BTreeSet<NormalWord> {
    psi_cyclic_shift_words(ctx, v)
        .into_iter()
        .map(|p| normal_form(&ctx.graph, &p))
        .collect()
}

/// Raw ψ-cyclic permutations `ψ^k(x_{i+1}…x_n)·ψ^{k−1}(x_1…x_i)` of the
/// letter sequence `w`, for `0 ≤ i ≤ n` and `0 ≤ k < m`.
pub fn psi_cyclic_permutation_words(ctx: &TwistedContext, w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::with_capacity((w.len() + 1) * ctx.order());
    for i in 0..=w.len() {
        let (x, y) = w.split_at(i);
        for k in 0..ctx.order() as i64 {
            let mut buf = Vec::with_capacity(w.len());
            ctx.push_image(k, y, &mut buf);
            ctx.push_image(k - 1, x, &mut buf);
            out.push(buf);
        }
    }
    out
}

/// ψ-cyclic permutations of the letter sequence `w`, normalized.
pub fn psi_cyclic_permutations(ctx: &TwistedContext, w: &[Letter]) -> BTreeSet<NormalWord> {
    psi_cyclic_permutation_words(ctx, w)
        .into_iter()
        .map(|p| normal_form(&ctx.graph, &p))
        .collect()
}

/// True when every raw ψ-cyclic permutation of `w` is geodesic.
pub fn is_psi_cyclic_geodesic(ctx: &TwistedContext, w: &[Letter]) -> bool {
    is_geodesic(&ctx.graph, w)
        && psi_cyclic_permutation_words(ctx, w)
            .iter()
            .all(|p| is_geodesic(&ctx.graph, p))
}

/// ψ-cyclic permutations of a group element: the permutations of every
/// geodesic representative, i.e. of every split of the heap into an order
/// ideal and its complement.
fn element_permutations(ctx: &TwistedContext, w: &NormalWord, mut visit: impl FnMut(NormalWord) -> bool) {
    let g = &*ctx.graph;
    let mut buf = Vec::with_capacity(w.len());
    for mask in heap_ideals(g, w) {
        let (x, y) = split_by_mask(w, mask);
        for k in 0..ctx.order() as i64 {
            buf.clear();
            ctx.push_image(k, &y, &mut buf);
            ctx.push_image(k - 1, &x, &mut buf);
            if !visit(normal_form(g, &buf)) {
                return;
            }
        }
    }
}

/// Outcome of one breadth-first pass from a fixed start.
struct Pass {
    seen: BTreeSet<NormalWord>,
    shorter: Option<NormalWord>,
    smaller: bool,
    truncated: bool,
}

/// Breadth-first closure from `start`. Stops at the first word shorter than
/// `start`, and also at the first same-length word shortlex-below `start`
/// when `stop_if_smaller` is set.
fn pass(ctx: &TwistedContext, start: &NormalWord, max_len: usize, max_states: usize, stop_if_smaller: bool) -> Pass {
    let lp = ctx.is_length_preserving();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    let mut out = Pass { seen: BTreeSet::new(), shorter: None, smaller: false, truncated: false };
    while let Some(u) = queue.pop_front() {
        let mut halt = false;
        element_permutations(ctx, &u, |v| {
            if v.len() < start.len() {
                out.shorter = Some(v);
                halt = true;
                return false;
            }
            if stop_if_smaller && v.len() == start.len() && v < *start {
                out.smaller = true;
                halt = true;
                return false;
            }
            if v.len() > max_len {
                out.truncated = true;
                return true;
            }
            if seen.contains(&v) {
                return true;
            }
            if !lp && seen.len() >= max_states {
                out.truncated = true;
                return true;
            }
            seen.insert(v.clone());
            queue.push_back(v);
            true
        });
        if halt {
            break;
        }
    }
    out.seen = seen;
    out
}

/// Minimal-length words reachable from an input, with certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    /// Twisted length found (exact when certified).
    pub length: usize,
    /// All reachable elements of that length.
    pub members: BTreeSet<NormalWord>,
    /// The search ran to exhaustion without pruning.
    pub certified: bool,
}

impl Closure {
    pub fn least(&self) -> &NormalWord {
        self.members.iter().next().expect("closure is nonempty")
    }
}

/// Explores the closure of `w` under ψ-cyclic permutations, restarting from
/// every strictly shorter word found.
pub fn twisted_closure(ctx: &TwistedContext, w: &[Letter], budget: &SearchBudget) -> Closure {
    let mut cur = normal_form(&ctx.graph, w);
    let max_len = budget.max_length.unwrap_or_else(|| ctx.default_max_length(w.len())).max(cur.len());
    loop {
        let p = pass(ctx, &cur, max_len, budget.max_states, false);
        match p.shorter {
            Some(s) => cur = s,
            None => {
                let members = p.seen.into_iter().filter(|u| u.len() == cur.len()).collect();
                return Closure { length: cur.len(), members, certified: !p.truncated };
            }
        }
    }
}

/// Shortlex-least minimal-length word of the closure, and whether the
/// closure was exhausted.
pub fn psi_reduce(ctx: &TwistedContext, w: &[Letter], budget: &SearchBudget) -> (NormalWord, bool) {
    let c = twisted_closure(ctx, w, budget);
    (c.least().clone(), c.certified)
}

/// Whether the geodesic `w` is ψ-cyclically reduced.
///
/// For compositions of inversions this uses the equivalent test that every
/// ψ-cyclic permutation of `w` is geodesic.
pub fn is_psi_cr(ctx: &TwistedContext, w: &[Letter], budget: &SearchBudget) -> TriState {
    if ctx.psi.is_composition_of_inversions() {
        return if is_psi_cyclic_geodesic(ctx, w) { TriState::Yes } else { TriState::No };
    }
    is_psi_cr_by_closure(ctx, w, budget)
}

/// Closure-based ψ-CR test, valid for every finite-order ψ.
pub fn is_psi_cr_by_closure(ctx: &TwistedContext, w: &[Letter], budget: &SearchBudget) -> TriState {
    let start = normal_form(&ctx.graph, w);
    if start.len() < w.len() {
        return TriState::No;
    }
    let max_len = budget.max_length.unwrap_or_else(|| ctx.default_max_length(w.len())).max(w.len());
    let p = pass(ctx, &start, max_len, budget.max_states, false);
    match (p.shorter.is_some(), p.truncated) {
        (true, _) => TriState::No,
        (false, false) => TriState::Yes,
        (false, true) => TriState::UnknownBudget,
    }
}

/// Decides `u ∼_ψ v`.
pub fn twisted_conjugate(ctx: &TwistedContext, u: &[Letter], v: &[Letter], budget: &SearchBudget) -> TriState {
    let cu = twisted_closure(ctx, u, budget);
    let cv = twisted_closure(ctx, v, budget);
    let both = cu.certified && cv.certified;
    if cu.length != cv.length {
        return if both { TriState::No } else { TriState::UnknownBudget };
    }
    if cu.members.intersection(&cv.members).next().is_some() {
        TriState::Yes
    } else if both {
        TriState::No
    } else {
        TriState::UnknownBudget
    }
}

/// Minimal-length members of the twisted class of `w`, with certification.
pub fn twisted_class(ctx: &TwistedContext, w: &[Letter], budget: &SearchBudget) -> Closure {
    twisted_closure(ctx, w, budget)
}

/// Canonical key of the twisted class: its shortlex-least minimal-length
/// member.
pub fn class_key(ctx: &TwistedContext, w: &[Letter], budget: &SearchBudget) -> Result<NormalWord, TwistedError> {
    let c = twisted_closure(ctx, w, budget);
    if c.certified {
        Ok(c.least().clone())
    } else {
        Err(TwistedError::BudgetExhausted)
    }
}

/// The language families enumerated by [`enumerate_language`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LanguageKind {
    Geo,
    CycGeo,
    ConjGeo,
    ConjSl,
}

impl LanguageKind {
    pub fn name(self) -> &'static str {
        match self {
            LanguageKind::Geo => "geo",
            LanguageKind::CycGeo => "cycgeo",
            LanguageKind::ConjGeo => "conjgeo",
            LanguageKind::ConjSl => "conjsl",
        }
    }
}

/// Memoized ψ-CR status of group elements.
struct CrCache<'a> {
    ctx: &'a TwistedContext,
    budget: SearchBudget,
    known: BTreeMap<NormalWord, bool>,
}

impl<'a> CrCache<'a> {
    fn new(ctx: &'a TwistedContext, budget: &SearchBudget) -> Self {
        CrCache { ctx, budget: *budget, known: BTreeMap::new() }
    }

    fn is_cr(&mut self, e: &NormalWord) -> Result<bool, TwistedError> {
        if let Some(&b) = self.known.get(e) {
            return Ok(b);
        }
        let ctx = self.ctx;
        let max_len = self.budget.max_length.unwrap_or_else(|| ctx.default_max_length(e.len())).max(e.len());
        let p = pass(ctx, e, max_len, self.budget.max_states, false);
        if p.shorter.is_some() {
            self.known.insert(e.clone(), false);
            return Ok(false);
        }
        if p.truncated {
            return Err(TwistedError::BudgetExhausted);
        }
        for m in p.seen.into_iter().filter(|m| m.len() == e.len()) {
            self.known.insert(m, true);
        }
        Ok(true)
    }
}

/// All words of length at most `n` in the named language, in shortlex order.
pub fn enumerate_language(
    ctx: &TwistedContext,
    kind: LanguageKind,
    n: usize,
    budget: &SearchBudget,
) -> Result<Vec<Word>, TwistedError> {
    let g = &*ctx.graph;
    match kind {
        LanguageKind::Geo => Ok(geodesic_words(g, n)),
        LanguageKind::CycGeo => Ok(geodesic_words(g, n)
            .into_iter()
            .filter(|w| is_psi_cyclic_geodesic(ctx, w))
            .collect()),
        LanguageKind::ConjGeo => {
            let mut cache = CrCache::new(ctx, budget);
            let mut out = Vec::new();
            for w in geodesic_words(g, n) {
                let e = normal_form(g, &w);
                if cache.is_cr(&e)? {
                    out.push(w);
                }
            }
            Ok(out)
        }
        LanguageKind::ConjSl => Ok(conj_sl_elements(ctx, n, budget)?.into_iter().map(Word::from).collect()),
    }
}

/// Elements of length at most `n` that are the shortlex-least
/// minimal-length member of their twisted class.
fn conj_sl_elements(ctx: &TwistedContext, n: usize, budget: &SearchBudget) -> Result<Vec<NormalWord>, TwistedError> {
    let mut decided: BTreeSet<NormalWord> = BTreeSet::new();
    let mut out = Vec::new();
    for e in spheres(&ctx.graph, n).into_iter().flatten() {
        if decided.contains(&e) {
            continue;
        }
        let max_len = budget.max_length.unwrap_or_else(|| ctx.default_max_length(e.len())).max(e.len());
        let p = pass(ctx, &e, max_len, budget.max_states, true);
        if p.shorter.is_some() || p.smaller {
            continue;
        }
        if p.truncated {
            return Err(TwistedError::BudgetExhausted);
        }
        decided.extend(p.seen.into_iter().filter(|m| m.len() == e.len()));
        out.push(e);
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::automorphism::examples::*;
    use crate::graph::examples::*;
    use crate::word::tests::w;
    use crate::word::{cyclically_reduce, formal_inverse};

    fn ctx(f: Automorphism) -> TwistedContext {
        TwistedContext::new(f).unwrap()
    }

    fn render_set(g: &DefiningGraph, s: &BTreeSet<NormalWord>) -> Vec<alloc::string::String> {
        s.iter().map(|u| g.render(u)).collect()
    }

    /// Conjugator search: is there `c` with `|c| ≤ radius` and
    /// `u = ψ(c)⁻¹·v·c`?
    pub(crate) fn brute_twisted_conjugate(ctx: &TwistedContext, u: &[Letter], v: &[Letter], radius: usize) -> bool {
        let g = &*ctx.graph;
        let target = normal_form(g, u);
        spheres(g, radius).into_iter().flatten().any(|c| {
            let mut x = formal_inverse(g, &ctx.psi.apply(&c));
            x.extend_from_slice(v);
            x.extend_from_slice(&c);
            normal_form(g, &x) == target
        })
    }

    #[test]
    fn shift_examples() {
        let c = ctx(rot());
        let g = c.graph().clone();
        let s = render_set(&g, &psi_cyclic_shifts(&c, &w(&g, "a c' d")));
        assert!(s.contains(&"a·a·c⁻¹".into()) && s.contains(&"c⁻¹·d·d".into()), "{s:?}");
        // The shift of a·d·c⁻¹ moving c⁻¹ to the front is d⁻¹·a·d as a word,
        // which is the element a since a and d commute.
        let raw = psi_cyclic_shift_words(&c, &w(&g, "a d c'"));
        assert!(raw.contains(&w(&g, "d' a d")), "{raw:?}");
        assert!(psi_cyclic_shifts(&c, &w(&g, "a d c'")).contains(&normal_form(&g, &w(&g, "a"))));
        let id = TwistedContext::identity(Arc::new(square()));
        let s = render_set(&g, &psi_cyclic_shifts(&id, &w(&g, "a c")));
        assert_eq!(s, ["a·c", "c·a"]);
        let s = render_set(&g, &psi_cyclic_shifts(&c, &w(&g, "b")));
        assert_eq!(s, ["a", "c"]);
    }

    #[test]
    fn permutation_examples() {
        let c = ctx(rot());
        let g = c.graph().clone();
        assert_eq!(render_set(&g, &psi_cyclic_permutations(&c, &w(&g, "b"))), ["a", "b", "c", "d"]);
        let id = TwistedContext::identity(Arc::new(square()));
        assert_eq!(render_set(&g, &psi_cyclic_permutations(&id, &w(&g, "a c"))), ["a·c", "c·a"]);
        let c2 = ctx(line_refl());
        let g2 = c2.graph().clone();
        let s = render_set(&g2, &psi_cyclic_permutations(&c2, &w(&g2, "c' a a c")));
        assert!(s.contains(&g2.render(&normal_form(&g2, &w(&g2, "a a c b'")))), "{s:?}");
    }

    #[test]
    fn reduce_examples() {
        let c = ctx(line_refl());
        let g = c.graph().clone();
        let (r, cert) = psi_reduce(&c, &w(&g, "c' a a c"), &SearchBudget::default());
        assert_eq!((g.render(&r).as_str(), cert), ("a·a", true));
        let (r, cert) = psi_reduce(&c, &[], &SearchBudget::default());
        assert!(r.is_empty() && cert);
    }

    #[test]
    fn reduce_trv_example_keeps_length_four() {
        // x·(x·y)·x is already minimal in its class: p = q = r = 1.
        let c = ctx(trv());
        let g = c.graph().clone();
        let input = w(&g, "x x y x");
        let (r, cert) = psi_reduce(&c, &input, &SearchBudget::with_max_length(8));
        assert!(cert);
        assert_eq!(r.len(), 4);
        assert!(twisted_conjugate(&c, &input, &r, &SearchBudget::default()) == TriState::Yes);
        // No conjugator of length at most 5 produces a shorter word.
        for len in 0..4 {
            for e in &spheres(&g, len)[len] {
                assert!(!brute_twisted_conjugate(&c, e, &input, 5), "{}", g.render(e));
            }
        }
    }

    #[test]
    fn psi_cr_examples() {
        let c = ctx(line_refl());
        let g = c.graph().clone();
        let b = SearchBudget::default();
        assert_eq!(is_psi_cr(&c, &w(&g, "c' a a c"), &b), TriState::No);
        assert_eq!(is_psi_cr(&c, &w(&g, "a a"), &b), TriState::Yes);
        let id = TwistedContext::identity(Arc::new(square()));
        assert_eq!(is_psi_cr(&id, &w(&g, "a b a'"), &b), TriState::No);
    }

    #[test]
    fn conjugacy_examples() {
        let c = ctx(rot());
        let g = c.graph().clone();
        let b = SearchBudget::default();
        assert_eq!(twisted_conjugate(&c, &w(&g, "a c' d"), &w(&g, "a a c'"), &b), TriState::Yes);
        assert_eq!(twisted_conjugate(&c, &w(&g, "a"), &w(&g, "b"), &b), TriState::Yes);
        assert_eq!(twisted_conjugate(&c, &w(&g, "a"), &w(&g, "a c"), &b), TriState::No);
    }

    #[test]
    fn class_examples() {
        let c = ctx(rot());
        let g = c.graph().clone();
        let b = SearchBudget::default();
        assert_eq!(render_set(&g, &twisted_class(&c, &w(&g, "a"), &b).members), ["a", "b", "c", "d"]);
        assert_eq!(render_set(&g, &twisted_class(&c, &[], &b).members), ["ε"]);
        let c2 = ctx(line_refl());
        let g2 = c2.graph().clone();
        let cl = twisted_class(&c2, &w(&g2, "c' a a c"), &b);
        assert_eq!(cl.length, 2);
        assert!(cl.members.contains(&normal_form(&g2, &w(&g2, "a a"))));
    }

    fn names(g: &DefiningGraph, ws: &[Word]) -> Vec<alloc::string::String> {
        ws.iter().map(|u| g.render(u)).collect()
    }

    #[test]
    fn enumeration_examples() {
        let c = ctx(rot());
        let g = c.graph().clone();
        let b = SearchBudget::default();
        let sl = enumerate_language(&c, LanguageKind::ConjSl, 3, &b).unwrap();
        // a·b·c is not twisted-conjugate to any power of a: the classes of
        // length-3 representatives are pairwise separated by conjugator search.
        assert_eq!(
            names(&g, &sl),
            [
                "ε", "a", "a⁻¹", "a·a", "a⁻¹·a⁻¹", "a·a·a", "a·b·c", "a·b·c⁻¹", "a·b⁻¹·c⁻¹",
                "a⁻¹·a⁻¹·a⁻¹", "a⁻¹·b⁻¹·c⁻¹"
            ]
        );
        let long: Vec<&Word> = sl.iter().filter(|u| u.len() == 3).collect();
        for (i, u) in long.iter().enumerate() {
            for v in &long[i + 1..] {
                assert!(!brute_twisted_conjugate(&c, u, v, 4), "{} ~ {}", g.render(u), g.render(v));
            }
        }
        let c2 = ctx(line_refl());
        let g2 = c2.graph().clone();
        let word = Word::new(w(&g2, "c' a a c"));
        assert!(enumerate_language(&c2, LanguageKind::CycGeo, 4, &b).unwrap().contains(&word));
        assert!(!enumerate_language(&c2, LanguageKind::ConjGeo, 4, &b).unwrap().contains(&word));
        for kind in [LanguageKind::Geo, LanguageKind::CycGeo, LanguageKind::ConjGeo, LanguageKind::ConjSl] {
            assert_eq!(enumerate_language(&c, kind, 0, &b).unwrap(), [Word::default()]);
        }
    }

    fn is_sublist(a: &[Word], b: &[Word]) -> bool {
        let set: BTreeSet<&Word> = b.iter().collect();
        a.iter().all(|x| set.contains(x))
    }

    #[test]
    fn language_chain() {
        let b = SearchBudget::default();
        for f in [rot(), line_refl(), invert_a(), refl()] {
            let c = ctx(f);
            let n = 4;
            let langs: Vec<Vec<Word>> = [LanguageKind::ConjSl, LanguageKind::ConjGeo, LanguageKind::CycGeo, LanguageKind::Geo]
                .iter()
                .map(|&k| enumerate_language(&c, k, n, &b).unwrap())
                .collect();
            for pair in langs.windows(2) {
                assert!(is_sublist(&pair[0], &pair[1]));
            }
            for l in &langs {
                assert!(l.windows(2).all(|p| p[0] < p[1]), "not shortlex sorted");
            }
        }
    }

    #[test]
    fn shifts_are_twisted_conjugate() {
        let b = SearchBudget::default();
        for f in [rot(), line_refl(), trv()] {
            let c = ctx(f);
            let g = c.graph().clone();
            for v in geodesic_words(&g, 3) {
                for s in psi_cyclic_shifts(&c, &v) {
                    assert_eq!(twisted_conjugate(&c, &v, &s, &b), TriState::Yes);
                }
            }
        }
    }

    #[test]
    fn identity_specialization() {
        let g = Arc::new(path4());
        let id = TwistedContext::identity(g.clone());
        let b = SearchBudget::default();
        let conj = enumerate_language(&id, LanguageKind::ConjGeo, 5, &b).unwrap();
        let expected: Vec<Word> = geodesic_words(&g, 5)
            .into_iter()
            .filter(|u| cyclically_reduce(&g, u).len() == u.len())
            .collect();
        assert_eq!(conj, expected);
        for u in geodesic_words(&g, 4) {
            let cyc: BTreeSet<NormalWord> = (0..=u.len())
                .map(|i| {
                    let mut r = u[i..].to_vec();
                    r.extend_from_slice(&u[..i]);
                    normal_form(&g, &r)
                })
                .collect();
            assert_eq!(psi_cyclic_permutations(&id, &u), cyc);
            assert_eq!(psi_reduce(&id, &u, &b).0, cyclically_reduce(&g, &u));
        }
    }

    #[test]
    fn inversions_conjgeo_equals_cycgeo() {
        let b = SearchBudget::default();
        let g2 = Arc::new(path4());
        let inv_bc = Automorphism::from_images(g2.clone(), &[(1, w(&g2, "b'")), (2, w(&g2, "c'"))]).unwrap();
        for f in [invert_a(), inv_bc, Automorphism::identity(Arc::new(square()))] {
            let c = ctx(f);
            let conj = enumerate_language(&c, LanguageKind::ConjGeo, 6, &b).unwrap();
            let cyc = enumerate_language(&c, LanguageKind::CycGeo, 6, &b).unwrap();
            assert_eq!(conj, cyc);
        }
    }

    #[test]
    fn fast_and_closure_psi_cr_agree_for_inversions() {
        let b = SearchBudget::default();
        let c = ctx(invert_a());
        let g = c.graph().clone();
        for u in geodesic_words(&g, 5) {
            assert_eq!(is_psi_cr(&c, &u, &b), is_psi_cr_by_closure(&c, &u, &b), "{}", g.render(&u));
        }
    }

    #[test]
    fn cyclic_geodesity_is_element_level_for_inversions() {
        let c = ctx(invert_a());
        let g = c.graph().clone();
        let mut by_element: BTreeMap<NormalWord, bool> = BTreeMap::new();
        for u in geodesic_words(&g, 5) {
            let e = normal_form(&g, &u);
            let cg = is_psi_cyclic_geodesic(&c, &u);
            assert_eq!(*by_element.entry(e).or_insert(cg), cg, "{}", g.render(&u));
        }
    }

    #[test]
    fn length_preserving_conjgeo_is_geodesic_psi_cr() {
        let b = SearchBudget::default();
        for f in [rot(), line_refl()] {
            let c = ctx(f);
            let g = c.graph().clone();
            let conj = enumerate_language(&c, LanguageKind::ConjGeo, 4, &b).unwrap();
            let expected: Vec<Word> = geodesic_words(&g, 4)
                .into_iter()
                .filter(|u| is_psi_cr_by_closure(&c, u, &b) == TriState::Yes)
                .collect();
            assert_eq!(conj, expected);
        }
    }

    #[test]
    fn agrees_with_conjugator_search_on_small_words() {
        let b = SearchBudget::default();
        for f in [rot(), line_refl()] {
            let c = ctx(f);
            let g = c.graph().clone();
            let elems: Vec<NormalWord> = spheres(&g, 2).into_iter().flatten().collect();
            for u in &elems {
                for v in &elems {
                    let expected = brute_twisted_conjugate(&c, u, v, 4);
                    assert_eq!(twisted_conjugate(&c, u, v, &b) == TriState::Yes, expected);
                }
            }
        }
    }

    #[test]
    fn tiny_budget_gives_unknown_for_non_length_preserving() {
        let c = ctx(trv());
        let g = c.graph().clone();
        let tiny = SearchBudget { max_length: Some(1), max_states: 2 };
        let u = w(&g, "x x x y x y x x");
        let v = w(&g, "x x y x y x x x");
        assert_eq!(twisted_conjugate(&c, &u, &v, &tiny), TriState::UnknownBudget);
        assert!(!psi_reduce(&c, &u, &tiny).1);
    }
}
