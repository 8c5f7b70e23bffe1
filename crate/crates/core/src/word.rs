//! Words over the signed alphabet, heap normal forms and Cayley balls.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Deref;

use thiserror::Error;

use crate::graph::{DefiningGraph, Letter, VertexKind, VertexSet};

/// A finite sequence of letters; not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

/// The shortlex-least geodesic representative of a group element.
///
/// Only produced by [`normal_form`] and friends, so equality of normal
/// words is equality of group elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalWord(Vec<Letter>);

fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

macro_rules! word_impls {
    ($t:ty) => {
        impl Deref for $t {
            type Target = [Letter];
            fn deref(&self) -> &[Letter] {
                &self.0
            }
        }
        impl Ord for $t {
            fn cmp(&self, other: &Self) -> Ordering {
                shortlex(&self.0, &other.0)
            }
        }
        impl PartialOrd for $t {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
    };
}
word_impls!(Word);
word_impls!(NormalWord);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<NormalWord> for Word {
    fn from(w: NormalWord) -> Self {
        Word(w.0)
    }
}

impl NormalWord {
    pub fn empty() -> Self {
        NormalWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    /// Wraps letters already known to be in normal form.
    pub(crate) fn trusted(letters: Vec<Letter>) -> Self {
        NormalWord(letters)
    }
}

/// Freely reduces modulo commutations; the result is geodesic but not yet
/// shortlex-least.
pub fn reduce(g: &DefiningGraph, w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &x in w {
        let vx = g.letter_vertex(x);
        let mut cancel = None;
        for j in (0..out.len()).rev() {
            let y = out[j];
            let vy = g.letter_vertex(y);
            if vy == vx {
                if y == g.inverse(x) {
                    cancel = Some(j);
                }
                break;
            }
            if !g.adjacent(vx, vy) {
                break;
            }
        }
        match cancel {
            Some(j) => {
                out.remove(j);
            }
            None => out.push(x),
        }
    }
    out
}

/// Immediate-predecessor masks of the heap of `w`: bit `j` of entry `i` is
/// set when `j < i` and the letters at `j` and `i` do not commute.
pub fn heap_predecessors(g: &DefiningGraph, w: &[Letter]) -> Vec<u64> {
    assert!(w.len() <= 64, "heap computations support words of length at most 64");
    (0..w.len())
        .map(|i| {
            (0..i)
                .filter(|&j| !g.commute(w[j], w[i]))
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect()
}

/// Greedy linearization of the heap: always emit the least minimal letter.
fn linearize(g: &DefiningGraph, w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    let mut pending: Vec<usize> = alloc::vec![0; n];
    let mut succ: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..i {
            if !g.commute(w[j], w[i]) {
                pending[i] += 1;
                succ[j].push(i);
            }
        }
    }
    let mut ready: BTreeSet<(Letter, usize)> =
        (0..n).filter(|&i| pending[i] == 0).map(|i| (w[i], i)).collect();
    let mut out = Vec::with_capacity(n);
    while let Some((l, i)) = ready.pop_first() {
        out.push(l);
        for &s in &succ[i] {
            pending[s] -= 1;
            if pending[s] == 0 {
                ready.insert((w[s], s));
            }
        }
    }
    out
}

/// Canonical form: heap reduction followed by least-first linearization.
pub fn normal_form(g: &DefiningGraph, w: &[Letter]) -> NormalWord {
    NormalWord(linearize(g, &reduce(g, w)))
}

pub fn is_geodesic(g: &DefiningGraph, w: &[Letter]) -> bool {
    reduce(g, w).len() == w.len()
}

pub fn multiply(g: &DefiningGraph, u: &[Letter], v: &[Letter]) -> NormalWord {
    let mut w = Vec::with_capacity(u.len() + v.len());
    w.extend_from_slice(u);
    w.extend_from_slice(v);
    normal_form(g, &w)
}

/// Reverse and invert each letter, without normalizing.
pub fn formal_inverse(g: &DefiningGraph, u: &[Letter]) -> Vec<Letter> {
    u.iter().rev().map(|&l| g.inverse(l)).collect()
}

pub fn invert(g: &DefiningGraph, u: &[Letter]) -> NormalWord {
    normal_form(g, &formal_inverse(g, u))
}

/// Vertices occurring in the normal form.
pub fn support(g: &DefiningGraph, w: &[Letter]) -> VertexSet {
    reduce(g, w).iter().map(|&l| g.letter_vertex(l)).collect()
}

/// Shortest element of the (untwisted) conjugacy class reachable by cyclic
/// permutations, commutations and free reductions; shortlex-least among
/// the minimal-length words of that cyclic class.
pub fn cyclically_reduce(g: &DefiningGraph, w: &[Letter]) -> NormalWord {
    // Strip pairs x ... x^-1 where x is heap-minimal and x^-1 heap-maximal.
    let mut cur = reduce(g, w);
    'outer: loop {
        let n = cur.len();
        for i in 0..n {
            let first_ok = (0..i).all(|k| g.commute(cur[k], cur[i]));
            if !first_ok {
                continue;
            }
            for j in i + 1..n {
                if cur[j] == g.inverse(cur[i]) && (j + 1..n).all(|k| g.commute(cur[k], cur[j])) {
                    cur.remove(j);
                    cur.remove(i);
                    cur = reduce(g, &cur);
                    continue 'outer;
                }
            }
        }
        break;
    }
    // Breadth-first closure under moving a heap-minimal letter to the end.
    let start = normal_form(g, &cur);
    let mut seen: BTreeSet<NormalWord> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        let preds = heap_predecessors(g, &u);
        for i in 0..u.len() {
            if preds[i] != 0 {
                continue;
            }
            let mut rot: Vec<Letter> = u.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &l)| l).collect();
            rot.push(u[i]);
            let v = normal_form(g, &rot);
            debug_assert_eq!(v.len(), u.len());
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().next().unwrap_or_default()
}

/// All order ideals of the heap of `w`, as bitmasks of positions.
pub fn heap_ideals(g: &DefiningGraph, w: &[Letter]) -> Vec<u64> {
    let preds = heap_predecessors(g, w);
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut stack = alloc::vec![0u64];
    seen.insert(0);
    while let Some(ideal) = stack.pop() {
        for (i, &p) in preds.iter().enumerate() {
            if ideal >> i & 1 == 0 && p & !ideal == 0 {
                let next = ideal | 1 << i;
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Splits `w` by an ideal mask into (letters in the ideal, the rest), both
/// in their original relative order.
pub fn split_by_mask(w: &[Letter], mask: u64) -> (Vec<Letter>, Vec<Letter>) {
    let mut pre = Vec::new();
    let mut post = Vec::new();
    for (i, &l) in w.iter().enumerate() {
        if mask >> i & 1 == 1 {
            pre.push(l);
        } else {
            post.push(l);
        }
    }
    (pre, post)
}

/// Spheres of the Cayley graph: entry `r` holds all elements of length `r`,
/// in shortlex order.
pub fn spheres(g: &DefiningGraph, radius: usize) -> Vec<Vec<NormalWord>> {
    let mut out: Vec<Vec<NormalWord>> = alloc::vec![alloc::vec![NormalWord::empty()]];
    for r in 0..radius {
        let mut next: BTreeSet<NormalWord> = BTreeSet::new();
        for w in &out[r] {
            for a in g.alphabet() {
                let mut v = w.0.clone();
                v.push(a);
                if is_geodesic(g, &v) {
                    next.insert(normal_form(g, &v));
                }
            }
        }
        out.push(next.into_iter().collect());
    }
    out
}

/// All geodesic words of length at most `n`, in shortlex order.
pub fn geodesic_words(g: &DefiningGraph, n: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::default()];
    let mut layer = alloc::vec![Vec::<Letter>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for a in g.alphabet() {
                let mut v = w.clone();
                v.push(a);
                if is_geodesic(g, &v) {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned().map(Word));
        layer = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordParseError {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("`{0}` is an involution and takes no inverse marker")]
    InverseOfInvolution(String),
    #[error("malformed token `{0}`")]
    Malformed(String),
}

/// One parsed token: a generator name raised to a nonzero power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub name: String,
    pub exponent: i64,
    /// True when the token carried `'`, `^-1`, `⁻¹` or a negative exponent.
    pub marked_inverse: bool,
}

/// Splits word syntax into tokens.
///
/// Letters are separated by `·` or whitespace; a letter may be followed by
/// `'`, `^-1`, `⁻¹` or `^k`. `ε` stands for the empty word.
pub fn tokenize(s: &str) -> Result<Vec<Token>, WordParseError> {
    let mut out = Vec::new();
    for raw in s.split(|c: char| c.is_whitespace() || c == '·') {
        if raw.is_empty() || raw == "ε" {
            continue;
        }
        let bad = || WordParseError::Malformed(raw.to_string());
        let name_end = raw
            .find(['\'', '^', '⁻'])
            .unwrap_or(raw.len());
        let (name, suffix) = raw.split_at(name_end);
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(bad());
        }
        let exponent: i64 = match suffix {
            "" => 1,
            "'" | "⁻¹" | "^-1" => -1,
            s if s.starts_with('^') => s[1..].parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        if exponent == 0 {
            continue;
        }
        out.push(Token { name: name.to_string(), exponent, marked_inverse: exponent < 0 });
    }
    Ok(out)
}

impl Token {
    /// Expands the token into letters of `g`.
    pub fn letters(&self, g: &DefiningGraph) -> Result<Vec<Letter>, WordParseError> {
        let v = g
            .vertex(&self.name)
            .ok_or_else(|| WordParseError::UnknownLetter(self.name.clone()))?;
        if self.marked_inverse && g.kind(v) == VertexKind::OrderTwo {
            return Err(WordParseError::InverseOfInvolution(self.name.clone()));
        }
        let l = g.letter(v, self.exponent < 0);
        Ok(alloc::vec![l; self.exponent.unsigned_abs() as usize])
    }
}

/// Parses word syntax over the letters of `g`.
pub fn parse_word(g: &DefiningGraph, s: &str) -> Result<Word, WordParseError> {
    let mut out = Vec::new();
    for t in tokenize(s)? {
        out.extend(t.letters(g)?);
    }
    Ok(Word(out))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::examples::*;
    use alloc::collections::BTreeMap;
    use proptest::prelude::*;

    pub(crate) fn w(g: &DefiningGraph, s: &str) -> Vec<Letter> {
        parse_word(g, s).unwrap().0
    }

    /// Independent identity test: repeatedly delete a pair x ... x^-1 whose
    /// interior commutes with x. Empty result iff the word is trivial.
    pub(crate) fn pinch(g: &DefiningGraph, w: &[Letter]) -> Vec<Letter> {
        let mut w = w.to_vec();
        'again: loop {
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    if w[j] == g.inverse(w[i])
                        && (i + 1..j).all(|k| g.commute(w[k], w[i])) {
                            w.remove(j);
                            w.remove(i);
                            continue 'again;
                        }
                    if !g.commute(w[j], w[i]) {
                        break;
                    }
                }
            }
            return w;
        }
    }

    pub(crate) fn equal_by_pinch(g: &DefiningGraph, u: &[Letter], v: &[Letter]) -> bool {
        let mut x = u.to_vec();
        x.extend(formal_inverse(g, v));
        pinch(g, &x).is_empty()
    }

    /// Cayley-graph distances of all elements within `radius`, computed by
    /// breadth-first search with pinch-based equality.
    pub(crate) fn brute_ball(g: &DefiningGraph, radius: usize) -> Vec<Vec<Vec<Letter>>> {
        let mut spheres: Vec<Vec<Vec<Letter>>> = alloc::vec![alloc::vec![Vec::new()]];
        for r in 0..radius {
            let mut next: Vec<Vec<Letter>> = Vec::new();
            for u in &spheres[r] {
                for a in g.alphabet() {
                    let mut v = u.clone();
                    v.push(a);
                    let near = spheres[r].iter().chain(r.checked_sub(1).map(|p| &spheres[p]).into_iter().flatten());
                    let known = near.chain(next.iter()).any(|x| equal_by_pinch(g, x, &v));
                    if !known {
                        next.push(v);
                    }
                }
            }
            spheres.push(next);
        }
        spheres
    }

    fn all_words(g: &DefiningGraph, len: usize) -> Vec<Vec<Letter>> {
        let mut out = alloc::vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|u: Vec<Letter>| {
                    g.alphabet().map(move |a| {
                        let mut v = u.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn normal_form_examples() {
        let g1 = square();
        let nf = |s: &str| g1.render(&normal_form(&g1, &w(&g1, s)));
        assert_eq!(nf("b a"), "a·b");
        assert_eq!(nf("a a'"), "ε");
        assert_eq!(nf("a d c'"), "a·c⁻¹·d");
    }

    #[test]
    fn normal_form_a_d_cinv_is_least_rewriting() {
        // All words of length 3 equal to a·d·c⁻¹.
        let g1 = square();
        let target = w(&g1, "a d c'");
        let best = all_words(&g1, 3)
            .into_iter()
            .filter(|u| equal_by_pinch(&g1, u, &target))
            .min()
            .unwrap();
        assert_eq!(normal_form(&g1, &target).letters(), &best[..]);
    }

    #[test]
    fn geodesic_examples() {
        let g1 = square();
        assert!(!is_geodesic(&g1, &w(&g1, "a b a'")));
        assert_eq!(g1.render(&normal_form(&g1, &w(&g1, "a b a'"))), "b");
        assert!(is_geodesic(&g1, &w(&g1, "a c a'")));
        assert!(is_geodesic(&g1, &[]));
        // No shorter word equals a·c·a⁻¹.
        let target = w(&g1, "a c a'");
        for len in 0..3 {
            assert!(all_words(&g1, len).iter().all(|u| !equal_by_pinch(&g1, u, &target)));
        }
    }

    #[test]
    fn multiply_invert_examples() {
        let g1 = square();
        assert!(multiply(&g1, &w(&g1, "a"), &w(&g1, "a'")).is_empty());
        assert_eq!(g1.render(&invert(&g1, &w(&g1, "a c"))), "c⁻¹·a⁻¹");
        let racg = DefiningGraph::new(
            &[("s", VertexKind::OrderTwo), ("t", VertexKind::OrderTwo)],
            &[],
        )
        .unwrap();
        assert_eq!(racg.render(&invert(&racg, &w(&racg, "s t"))), "t·s");
        assert!(normal_form(&racg, &w(&racg, "s s")).is_empty());
    }

    #[test]
    fn support_examples() {
        let g1 = square();
        assert_eq!(g1.render_set(support(&g1, &w(&g1, "a b a'"))), "{b}");
        assert!(support(&g1, &[]).is_empty());
        assert_eq!(g1.render_set(support(&g1, &w(&g1, "a c' d"))), "{a, c, d}");
    }

    #[test]
    fn cyclic_reduction_examples() {
        let g1 = square();
        let cr = |s: &str| g1.render(&cyclically_reduce(&g1, &w(&g1, s)));
        assert_eq!(cr("a b a'"), "b");
        assert_eq!(cr("c' a c"), "a");
        assert_eq!(cr("a c"), "a·c");
    }

    #[test]
    fn cyclic_reduction_matches_brute_force_on_short_words() {
        // Minimal length over conjugates by elements of length <= 3.
        let g = path4();
        let conj = brute_ball(&g, 3).concat();
        for len in 0..=3 {
            for u in all_words(&g, len) {
                let red = cyclically_reduce(&g, &u);
                let best = conj
                    .iter()
                    .map(|c| {
                        let mut x = formal_inverse(&g, c);
                        x.extend_from_slice(&u);
                        x.extend_from_slice(c);
                        reduce(&g, &x).len()
                    })
                    .min()
                    .unwrap();
                assert_eq!(red.len(), best, "{}", g.render(&u));
            }
        }
    }

    #[test]
    fn parse_syntax() {
        let g1 = square();
        assert_eq!(w(&g1, "a·c⁻¹·d"), w(&g1, "a c' d"));
        assert_eq!(w(&g1, "a^-1"), w(&g1, "a'"));
        assert_eq!(w(&g1, "a^3 b^-2").len(), 5);
        assert!(w(&g1, "ε").is_empty());
        assert!(matches!(parse_word(&g1, "q"), Err(WordParseError::UnknownLetter(_))));
        assert!(matches!(parse_word(&g1, "a^x"), Err(WordParseError::Malformed(_))));
        let racg = DefiningGraph::new(&[("s", VertexKind::OrderTwo)], &[]).unwrap();
        assert!(matches!(parse_word(&racg, "s'"), Err(WordParseError::InverseOfInvolution(_))));
        assert_eq!(w(&racg, "s^2").len(), 2);
    }

    fn check_ball_against_oracle(g: &DefiningGraph, radius: usize) {
        let oracle = brute_ball(g, radius);
        let ours = spheres(g, radius);
        for r in 0..=radius {
            assert_eq!(ours[r].len(), oracle[r].len(), "sphere {r}");
            for u in &oracle[r] {
                assert_eq!(normal_form(g, u).len(), r);
            }
        }
    }

    #[test]
    fn geodesic_length_matches_cayley_ball() {
        check_ball_against_oracle(&f2_times_z(), 5);
        check_ball_against_oracle(&free2(), 5);
        let racg = DefiningGraph::new(
            &[("r", VertexKind::OrderTwo), ("s", VertexKind::OrderTwo), ("u", VertexKind::InfiniteCyclic)],
            &[("r", "s")],
        )
        .unwrap();
        check_ball_against_oracle(&racg, 5);
    }

    #[test]
    fn every_word_up_to_length_5_has_oracle_length() {
        let g = f2_times_z();
        let oracle = brute_ball(&g, 5);
        let mut dist: BTreeMap<NormalWord, usize> = BTreeMap::new();
        for (r, s) in oracle.iter().enumerate() {
            for u in s {
                dist.insert(normal_form(&g, u), r);
            }
        }
        for len in 0..=5 {
            for u in all_words(&g, len) {
                let nf = normal_form(&g, &u);
                assert_eq!(dist.get(&nf), Some(&nf.len()));
                assert_eq!(reduce(&g, &u).len(), pinch(&g, &u).len());
            }
        }
    }

    #[test]
    fn normal_form_is_shortlex_least_geodesic() {
        let g = square();
        for len in 0..=3 {
            for u in all_words(&g, len) {
                let nf = normal_form(&g, &u);
                let least = all_words(&g, nf.len())
                    .into_iter()
                    .find(|v| equal_by_pinch(&g, v, &u))
                    .unwrap();
                assert_eq!(nf.letters(), &least[..]);
            }
        }
    }

    #[test]
    fn ideals_of_commuting_chains() {
        let g1 = square();
        // a·b: a and b commute, so every subset is an ideal.
        assert_eq!(heap_ideals(&g1, &w(&g1, "a b")).len(), 4);
        // a·c: a chain.
        assert_eq!(heap_ideals(&g1, &w(&g1, "a c")).len(), 3);
    }

    pub(crate) fn arb_graph() -> impl Strategy<Value = DefiningGraph> {
        (1usize..5).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * n),
                proptest::collection::vec(any::<bool>(), n),
            )
                .prop_map(move |(bits, invol)| {
                    let names: Vec<String> = (0..n).map(|i| alloc::format!("v{i}")).collect();
                    let vs: Vec<(&str, VertexKind)> = names
                        .iter()
                        .zip(&invol)
                        .map(|(s, &i)| {
                            (s.as_str(), if i { VertexKind::OrderTwo } else { VertexKind::InfiniteCyclic })
                        })
                        .collect();
                    let mut es = Vec::new();
                    for i in 0..n {
                        for j in i + 1..n {
                            if bits[i * n + j] {
                                es.push((names[i].as_str(), names[j].as_str()));
                            }
                        }
                    }
                    DefiningGraph::new(&vs, &es).unwrap()
                })
        })
    }

    pub(crate) fn arb_graph_and_words(k: usize) -> impl Strategy<Value = (DefiningGraph, Vec<Vec<Letter>>)> {
        arb_graph().prop_flat_map(move |g| {
            let a = g.alphabet_size();
            let words = proptest::collection::vec(
                proptest::collection::vec((0..a).prop_map(Letter::from_index), 0..10),
                k,
            );
            (Just(g), words)
        })
    }

    /// Inserts trivial subwords and swaps commuting neighbours.
    fn scramble(g: &DefiningGraph, u: &[Letter], ops: &[(usize, usize, usize)]) -> Vec<Letter> {
        let mut v = u.to_vec();
        let alpha: Vec<Letter> = g.alphabet().collect();
        for &(kind, pos, pick) in ops {
            let pos = pos % (v.len() + 1);
            let x = alpha[pick % alpha.len()];
            match kind % 3 {
                0 => {
                    v.insert(pos, g.inverse(x));
                    v.insert(pos, x);
                }
                1 => {
                    let y = alpha[(pick / 7) % alpha.len()];
                    if g.commute(x, y) {
                        let rel = [x, y, g.inverse(x), g.inverse(y)];
                        for (k, &l) in rel.iter().enumerate() {
                            v.insert(pos + k, l);
                        }
                    }
                }
                _ => {
                    if pos + 1 < v.len() && g.commute(v[pos], v[pos + 1]) {
                        v.swap(pos, pos + 1);
                    }
                }
            }
        }
        v
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn canonical_under_relator_insertion(
            (g, ws) in arb_graph_and_words(1),
            ops in proptest::collection::vec((0usize..3, 0usize..32, 0usize..64), 0..12),
        ) {
            let u = &ws[0];
            let v = scramble(&g, u, &ops);
            prop_assert_eq!(normal_form(&g, u), normal_form(&g, &v));
        }

        #[test]
        fn normal_form_agrees_with_pinch((g, ws) in arb_graph_and_words(1)) {
            let u = &ws[0];
            let nf = normal_form(&g, u);
            prop_assert_eq!(nf.len(), pinch(&g, u).len());
            prop_assert!(equal_by_pinch(&g, &nf, u));
            prop_assert_eq!(normal_form(&g, &nf), nf);
        }

        #[test]
        fn group_axioms((g, ws) in arb_graph_and_words(3)) {
            let (a, b, c) = (normal_form(&g, &ws[0]), normal_form(&g, &ws[1]), normal_form(&g, &ws[2]));
            let ab_c = multiply(&g, &multiply(&g, &a, &b), &c);
            let a_bc = multiply(&g, &a, &multiply(&g, &b, &c));
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(invert(&g, &invert(&g, &a)), a.clone());
            prop_assert!(multiply(&g, &a, &invert(&g, &a)).is_empty());
        }

        #[test]
        fn conjugate_cyclic_reductions_share_support(
            (g, ws) in arb_graph_and_words(2),
        ) {
            let u = cyclically_reduce(&g, &ws[0]);
            let c = &ws[1];
            let mut x = formal_inverse(&g, c);
            x.extend_from_slice(&u);
            x.extend_from_slice(c);
            let v = cyclically_reduce(&g, &x);
            prop_assert_eq!(support(&g, &u), support(&g, &v));
            prop_assert_eq!(u, v);
        }
    }
}
