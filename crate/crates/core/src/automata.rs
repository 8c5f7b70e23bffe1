//! Finite state automata over a numbered alphabet, with the boolean and
//! closure operations needed for geodesic and twisted conjugacy languages.
//!
//! Symbols are `u16` codes. For automata built from a defining graph the
//! symbol of a letter is its letter code, so shortlex order on symbol
//! strings is shortlex order on words.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{DefiningGraph, Letter};
use crate::twisted::TwistedContext;
use crate::word::Word;

pub type Symbol = u16;
pub type State = usize;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("symbol {0} is outside the alphabet")]
    SymbolOutOfRange(usize),
    #[error("state {0} is not declared")]
    StateOutOfRange(usize),
    #[error("the twisting automorphism does not permute letters")]
    NotLengthPreserving,
    #[error("the twisting automorphism is not a composition of inversions")]
    PsiNotInversions,
}

/// An automaton with ε-moves and a set of start states. Deterministic
/// automata have one start state, no ε-moves and at most one move per
/// symbol; missing moves go to an implicit dead state.
#[derive(Clone, Debug)]
pub struct Automaton {
    symbols: Vec<String>,
    edges: Vec<Vec<(Option<Symbol>, State)>>,
    start: Vec<State>,
    accept: Vec<bool>,
    deterministic: bool,
}

/// Which construction [`cyc_psi_closure`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClosureMode {
    /// One machine per `(k, q')` and per `(k, q, q')`, joined by fresh
    /// start and end states.
    #[default]
    Literal,
    /// The same machines with the `q'` copies merged.
    Product,
}

impl Automaton {
    /// No states: accepts nothing.
    pub fn empty(symbols: Vec<String>) -> Self {
        Automaton { symbols, edges: Vec::new(), start: Vec::new(), accept: Vec::new(), deterministic: true }
    }

    /// Accepts every word.
    pub fn universal(symbols: Vec<String>) -> Self {
        let n = symbols.len();
        let mut a = Self::empty(symbols);
        let q = a.add_state(true);
        a.start = vec![q];
        for s in 0..n {
            a.add_edge(q, Some(s as Symbol), q);
        }
        a.deterministic = true;
        a
    }

    /// Accepts exactly the given words.
    pub fn from_words(symbols: Vec<String>, words: &[Vec<Symbol>]) -> Result<Self, AutomatonError> {
        let mut a = Self::empty(symbols);
        let root = a.add_state(false);
        a.start = vec![root];
        let mut trie: BTreeMap<(State, Symbol), State> = BTreeMap::new();
        for w in words {
            let mut q = root;
            for &s in w {
                a.check_symbol(s)?;
                q = match trie.get(&(q, s)) {
                    Some(&t) => t,
                    None => {
                        let t = a.add_state(false);
                        a.edges[q].push((Some(s), t));
                        trie.insert((q, s), t);
                        t
                    }
                };
            }
            a.accept[q] = true;
        }
        a.deterministic = true;
        Ok(a)
    }

    /// Builds an automaton from explicit parts, checking every endpoint and
    /// symbol. Determinism is inferred.
    pub fn from_parts(
        symbols: Vec<String>,
        num_states: usize,
        transitions: &[(State, Option<Symbol>, State)],
        start: &[State],
        accept: &[State],
    ) -> Result<Self, AutomatonError> {
        let mut a = Self::empty(symbols);
        for _ in 0..num_states {
            a.add_state(false);
        }
        for &(p, s, q) in transitions {
            for x in [p, q] {
                if x >= num_states {
                    return Err(AutomatonError::StateOutOfRange(x));
                }
            }
            if let Some(s) = s {
                a.check_symbol(s)?;
            }
            a.edges[p].push((s, q));
        }
        for &q in start.iter().chain(accept) {
            if q >= num_states {
                return Err(AutomatonError::StateOutOfRange(q));
            }
        }
        a.start = start.to_vec();
        a.start.sort_unstable();
        a.start.dedup();
        for &q in accept {
            a.accept[q] = true;
        }
        a.deterministic = a.infer_deterministic();
        Ok(a)
    }

    fn infer_deterministic(&self) -> bool {
        self.start.len() == 1
            && self.edges.iter().all(|es| {
                let mut seen: Vec<Symbol> = Vec::with_capacity(es.len());
                es.iter().all(|&(s, _)| match s {
                    None => false,
                    Some(s) if seen.contains(&s) => false,
                    Some(s) => {
                        seen.push(s);
                        true
                    }
                })
            })
    }

    fn add_state(&mut self, accepting: bool) -> State {
        self.edges.push(Vec::new());
        self.accept.push(accepting);
        self.edges.len() - 1
    }

    fn add_edge(&mut self, p: State, s: Option<Symbol>, q: State) {
        self.edges[p].push((s, q));
    }

    fn check_symbol(&self, s: Symbol) -> Result<(), AutomatonError> {
        if (s as usize) < self.symbols.len() {
            Ok(())
        } else {
            Err(AutomatonError::SymbolOutOfRange(s as usize))
        }
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn starts(&self) -> &[State] {
        &self.start
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accept[q]
    }

    pub fn accepting(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.num_states()).filter(|&q| self.accept[q])
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// All transitions as `(from, symbol or ε, to)`.
    pub fn transitions(&self) -> impl Iterator<Item = (State, Option<Symbol>, State)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(p, es)| es.iter().map(move |&(s, q)| (p, s, q)))
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    fn same_alphabet(&self, other: &Automaton) -> Result<(), AutomatonError> {
        if self.symbols == other.symbols {
            Ok(())
        } else {
            Err(AutomatonError::AlphabetMismatch)
        }
    }

    /// Sorted ε-closure of a set of states.
    fn closure(&self, set: &mut Vec<State>) {
        let mut mark = vec![false; self.num_states()];
        let mut stack: Vec<State> = Vec::new();
        for &q in set.iter() {
            if !mark[q] {
                mark[q] = true;
                stack.push(q);
            }
        }
        while let Some(p) = stack.pop() {
            for &(s, q) in &self.edges[p] {
                if s.is_none() && !mark[q] {
                    mark[q] = true;
                    stack.push(q);
                }
            }
        }
        set.clear();
        set.extend((0..self.num_states()).filter(|&q| mark[q]));
    }

    fn step(&self, set: &[State], sym: Symbol) -> Vec<State> {
        let mut next: Vec<State> = set
            .iter()
            .flat_map(|&p| self.edges[p].iter().filter(|e| e.0 == Some(sym)).map(|e| e.1))
            .collect();
        self.closure(&mut next);
        next
    }

    pub fn accepts(&self, w: &[Symbol]) -> Result<bool, AutomatonError> {
        let mut cur = self.start.clone();
        self.closure(&mut cur);
        for &s in w {
            self.check_symbol(s)?;
            cur = self.step(&cur, s);
            if cur.is_empty() {
                return Ok(false);
            }
        }
        Ok(cur.iter().any(|&q| self.accept[q]))
    }

    /// Accepts a group word; letter codes are the symbols.
    pub fn accepts_word(&self, w: &[Letter]) -> Result<bool, AutomatonError> {
        self.accepts(&letters_to_symbols(w))
    }

    /// Subset construction restricted to reachable subsets. The empty
    /// subset is left implicit.
    pub fn determinize(&self) -> Automaton {
        if self.deterministic {
            return self.clone();
        }
        let mut init = self.start.clone();
        self.closure(&mut init);
        let mut out = Self::empty(self.symbols.clone());
        let mut index: BTreeMap<Vec<State>, State> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let q0 = out.add_state(init.iter().any(|&q| self.accept[q]));
        out.start = vec![q0];
        index.insert(init.clone(), q0);
        queue.push_back(init);
        while let Some(set) = queue.pop_front() {
            let p = index[&set];
            for s in 0..self.num_symbols() as Symbol {
                let next = self.step(&set, s);
                if next.is_empty() {
                    continue;
                }
                let q = match index.get(&next) {
                    Some(&q) => q,
                    None => {
                        let q = out.add_state(next.iter().any(|&x| self.accept[x]));
                        index.insert(next.clone(), q);
                        queue.push_back(next);
                        q
                    }
                };
                out.edges[p].push((Some(s), q));
            }
        }
        out.deterministic = true;
        out
    }

    /// Dense transition table of a deterministic automaton.
    fn table(&self) -> Vec<u32> {
        debug_assert!(self.deterministic);
        let k = self.num_symbols();
        let mut t = vec![NONE; self.num_states() * k];
        for (p, es) in self.edges.iter().enumerate() {
            for &(s, q) in es {
                t[p * k + s.expect("deterministic") as usize] = q as u32;
            }
        }
        t
    }

    /// Deterministic and total: adds a dead state when some move is missing.
    pub fn complete(&self) -> Automaton {
        let mut d = self.determinize();
        if d.start.is_empty() {
            let q = d.add_state(false);
            d.start = vec![q];
        }
        let k = d.num_symbols();
        let total = d.edges.iter().all(|es| es.len() == k);
        if total {
            return d;
        }
        let dead = d.add_state(false);
        for p in 0..d.num_states() {
            let mut have = vec![false; k];
            for &(s, _) in &d.edges[p] {
                have[s.unwrap() as usize] = true;
            }
            for (s, h) in have.iter().enumerate() {
                if !h {
                    d.edges[p].push((Some(s as Symbol), dead));
                }
            }
        }
        d
    }

    pub fn complement(&self) -> Automaton {
        let mut d = self.complete();
        for a in d.accept.iter_mut() {
            *a = !*a;
        }
        d
    }

    pub fn union(&self, other: &Automaton) -> Result<Automaton, AutomatonError> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        let off = out.num_states();
        for (p, es) in other.edges.iter().enumerate() {
            out.add_state(other.accept[p]);
            out.edges[off + p] = es.iter().map(|&(s, q)| (s, q + off)).collect();
        }
        out.start.extend(other.start.iter().map(|q| q + off));
        out.deterministic = out.infer_deterministic();
        Ok(out)
    }

    /// Product of the determinized automata, reachable pairs only.
    pub fn intersect(&self, other: &Automaton) -> Result<Automaton, AutomatonError> {
        self.same_alphabet(other)?;
        let (a, b) = (self.determinize(), other.determinize());
        let mut out = Self::empty(self.symbols.clone());
        let (Some(&sa), Some(&sb)) = (a.start.first(), b.start.first()) else {
            return Ok(out);
        };
        let (ta, tb) = (a.table(), b.table());
        let k = self.num_symbols();
        let mut index: BTreeMap<(State, State), State> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let q0 = out.add_state(a.accept[sa] && b.accept[sb]);
        out.start = vec![q0];
        index.insert((sa, sb), q0);
        queue.push_back((sa, sb));
        while let Some((x, y)) = queue.pop_front() {
            let p = index[&(x, y)];
            for s in 0..k {
                let (nx, ny) = (ta[x * k + s], tb[y * k + s]);
                if nx == NONE || ny == NONE {
                    continue;
                }
                let key = (nx as State, ny as State);
                let q = match index.get(&key) {
                    Some(&q) => q,
                    None => {
                        let q = out.add_state(a.accept[key.0] && b.accept[key.1]);
                        index.insert(key, q);
                        queue.push_back(key);
                        q
                    }
                };
                out.edges[p].push((Some(s as Symbol), q));
            }
        }
        Ok(out)
    }

    pub fn concat(&self, other: &Automaton) -> Result<Automaton, AutomatonError> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        let off = out.num_states();
        for (p, es) in other.edges.iter().enumerate() {
            out.add_state(other.accept[p]);
            out.edges[off + p] = es.iter().map(|&(s, q)| (s, q + off)).collect();
        }
        for p in 0..off {
            if out.accept[p] {
                out.accept[p] = false;
                for &s in &other.start {
                    out.edges[p].push((None, s + off));
                }
            }
        }
        out.deterministic = false;
        Ok(out)
    }

    pub fn star(&self) -> Automaton {
        let mut out = self.clone();
        let s = out.add_state(true);
        for &q in &self.start {
            out.add_edge(s, None, q);
        }
        for p in 0..self.num_states() {
            if out.accept[p] {
                out.add_edge(p, None, s);
            }
        }
        out.start = vec![s];
        out.deterministic = false;
        out
    }

    /// Image under the monoid homomorphism sending symbol `s` to `h[s]`, a
    /// word over `target`. Multi-symbol images pass through fresh states.
    pub fn hom_image(&self, target: Vec<String>, h: &[Vec<Symbol>]) -> Result<Automaton, AutomatonError> {
        if h.len() != self.num_symbols() {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let mut out = Self::empty(target);
        for &q in &self.accept {
            out.add_state(q);
        }
        for img in h {
            for &s in img {
                out.check_symbol(s)?;
            }
        }
        for (p, es) in self.edges.iter().enumerate() {
            for &(s, q) in es {
                let img: &[Symbol] = match s {
                    None => &[],
                    Some(s) => &h[s as usize],
                };
                match img {
                    [] => out.add_edge(p, None, q),
                    [x] => out.add_edge(p, Some(*x), q),
                    [init @ .., last] => {
                        let mut cur = p;
                        for &x in init {
                            let nxt = out.add_state(false);
                            out.add_edge(cur, Some(x), nxt);
                            cur = nxt;
                        }
                        out.add_edge(cur, Some(*last), q);
                    }
                }
            }
        }
        out.start = self.start.clone();
        out.deterministic = out.infer_deterministic();
        Ok(out)
    }

    /// Relabels every symbol by a permutation-like map; ε stays ε.
    fn relabel(&self, map: &[Symbol]) -> Automaton {
        let mut out = self.clone();
        for es in out.edges.iter_mut() {
            for e in es.iter_mut() {
                e.0 = e.0.map(|s| map[s as usize]);
            }
        }
        out.deterministic = out.infer_deterministic();
        out
    }

    /// Suffixes of accepted words: start anywhere reachable from a start.
    pub fn suffix_closure(&self) -> Automaton {
        let mut out = self.clone();
        out.start = self.reachable().into_iter().enumerate().filter(|p| p.1).map(|p| p.0).collect();
        out.deterministic = out.infer_deterministic();
        out
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = self.start.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(p) = stack.pop() {
            for &(_, q) in &self.edges[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let mut rev: Vec<Vec<State>> = vec![Vec::new(); self.num_states()];
        for (p, _, q) in self.transitions() {
            rev[q].push(p);
        }
        let mut seen = self.accept.clone();
        let mut stack: Vec<State> = self.accepting().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Drops states that are unreachable or cannot reach acceptance.
    pub fn trim(&self) -> Automaton {
        let (r, c) = (self.reachable(), self.coreachable());
        let keep: Vec<bool> = r.iter().zip(&c).map(|(a, b)| *a && *b).collect();
        let mut map = vec![usize::MAX; self.num_states()];
        let mut out = Self::empty(self.symbols.clone());
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = out.add_state(self.accept[q]);
            }
        }
        for (p, s, q) in self.transitions() {
            if keep[p] && keep[q] {
                out.edges[map[p]].push((s, map[q]));
            }
        }
        out.start = self.start.iter().filter(|&&q| keep[q]).map(|&q| map[q]).collect();
        out.deterministic = self.deterministic || out.infer_deterministic();
        out
    }

    /// Minimal deterministic automaton (Moore refinement), trimmed.
    pub fn minimize(&self) -> Automaton {
        let d = self.complete();
        let n = d.num_states();
        let k = d.num_symbols();
        let t = d.table();
        let mut class: Vec<usize> = d.accept.iter().map(|&a| a as usize).collect();
        let mut count = 0;
        loop {
            let mut sigs: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|s| class[t[q * k + s] as usize]));
                let len = sigs.len();
                next[q] = *sigs.entry(sig).or_insert(len);
            }
            let c = sigs.len();
            class = next;
            if c == count {
                break;
            }
            count = c;
        }
        let mut out = Self::empty(self.symbols.clone());
        let mut rep = vec![usize::MAX; count];
        for q in 0..n {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        for &r in &rep {
            out.add_state(d.accept[r]);
        }
        for (c, &r) in rep.iter().enumerate() {
            for s in 0..k {
                out.edges[c].push((Some(s as Symbol), class[t[r * k + s] as usize]));
            }
        }
        out.start = vec![class[d.start[0]]];
        out.deterministic = true;
        out.trim()
    }

    /// Accepted words of length at most `n`, in shortlex order. Walks
    /// subsets on the fly, pruned by exact-length reachability.
    pub fn enumerate_accepted(&self, n: usize) -> Vec<Vec<Symbol>> {
        let a = self.trim();
        let closures: Vec<Vec<State>> = (0..a.num_states())
            .map(|q| {
                let mut c = vec![q];
                a.closure(&mut c);
                c
            })
            .collect();
        // live[r][q]: some word of length exactly r leads from q to acceptance.
        let mut live: Vec<Vec<bool>> =
            vec![closures.iter().map(|c| c.iter().any(|&x| a.accept[x])).collect()];
        for r in 1..=n {
            let prev = &live[r - 1];
            let row = closures
                .iter()
                .map(|c| c.iter().any(|&x| a.edges[x].iter().any(|&(s, y)| s.is_some() && prev[y])))
                .collect();
            live.push(row);
        }
        let mut init = a.start.clone();
        a.closure(&mut init);
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for len in 0..=n {
            if init.iter().any(|&q| live[len][q]) {
                a.words_of_length(&live, &init, len, &mut buf, &mut out);
            }
        }
        out
    }

    fn words_of_length(
        &self,
        live: &[Vec<bool>],
        set: &[State],
        rem: usize,
        buf: &mut Vec<Symbol>,
        out: &mut Vec<Vec<Symbol>>,
    ) {
        if rem == 0 {
            out.push(buf.clone());
            return;
        }
        for s in 0..self.num_symbols() as Symbol {
            let next = self.step(set, s);
            if next.iter().any(|&q| live[rem - 1][q]) {
                buf.push(s);
                self.words_of_length(live, &next, rem - 1, buf, out);
                buf.pop();
            }
        }
    }

    /// Accepted group words of length at most `n`, in shortlex order.
    pub fn enumerate_words(&self, n: usize) -> Vec<Word> {
        self.enumerate_accepted(n).iter().map(|w| Word::new(symbols_to_letters(w))).collect()
    }

    /// Number of accepted words of each length `0..=n`.
    pub fn count_by_length(&self, n: usize) -> Vec<u128> {
        let d = self.determinize().trim();
        let mut out = vec![0u128; n + 1];
        let Some(&s0) = d.start.first() else {
            return out;
        };
        let mut cur = vec![0u128; d.num_states()];
        cur[s0] = 1;
        for slot in out.iter_mut() {
            *slot = d.accepting().map(|q| cur[q]).fold(0u128, |a, b| a.saturating_add(b));
            let mut next = vec![0u128; d.num_states()];
            for (p, s, q) in d.transitions() {
                debug_assert!(s.is_some());
                next[q] = next[q].saturating_add(cur[p]);
            }
            cur = next;
        }
        out
    }
}

/// Symbol names for a graph's letters, in letter order.
pub fn letter_symbols(g: &DefiningGraph) -> Vec<String> {
    g.alphabet().map(|l| g.letter_name(l)).collect()
}

pub fn letters_to_symbols(w: &[Letter]) -> Vec<Symbol> {
    w.iter().map(|l| l.index() as Symbol).collect()
}

pub fn symbols_to_letters(w: &[Symbol]) -> Vec<Letter> {
    w.iter().map(|&s| Letter::from_index(s as usize)).collect()
}

/// Deterministic automaton of geodesic words. A state is the set of live
/// letters: letters read so far that commute with everything read after
/// them. Reading `a` while `a⁻¹` is live would cancel, so there is no move.
pub fn geo_automaton(g: &DefiningGraph) -> Automaton {
    let k = g.alphabet_size();
    assert!(k <= 128, "alphabet too large for live-letter sets");
    let mut out = Automaton::empty(letter_symbols(g));
    let mut index: BTreeMap<u128, State> = BTreeMap::new();
    let mut queue = VecDeque::new();
    out.add_state(true);
    out.start = vec![0];
    index.insert(0, 0);
    queue.push_back(0u128);
    while let Some(live) = queue.pop_front() {
        let p = index[&live];
        for a in g.alphabet() {
            if live >> g.inverse(a).index() & 1 == 1 {
                continue;
            }
            let mut next = 1u128 << a.index();
            for b in g.alphabet() {
                if live >> b.index() & 1 == 1 && g.commute(a, b) {
                    next |= 1 << b.index();
                }
            }
            let q = *index.entry(next).or_insert_with(|| {
                queue.push_back(next);
                out.edges.push(Vec::new());
                out.accept.push(true);
                out.edges.len() - 1
            });
            out.edges[p].push((Some(a.index() as Symbol), q));
        }
    }
    out.deterministic = true;
    out
}

/// Letter map of ψ^k as symbols; requires a letter-permuting ψ.
fn symbol_map(ctx: &TwistedContext, k: i64) -> Vec<Symbol> {
    let g = ctx.graph();
    let mut buf = Vec::with_capacity(1);
    g.alphabet()
        .map(|l| {
            buf.clear();
            ctx.push_image(k, &[l], &mut buf);
            buf[0].index() as Symbol
        })
        .collect()
}

/// Automaton for all ψ-cyclic permutations of words accepted by `a`.
///
/// A word `w = x·y` lies in the closure when `ψ^k(y)·ψ^{k-1}(x)` is
/// accepted, i.e. some run of `a` goes `q0 → q` on `ψ^k(y)` and `q → q'` on
/// `ψ^{k-1}(x)` with `q'` accepting. The machine for `(k, q, q')` reads
/// `x` in a copy relabeled by `ψ^{-(k-1)}` from `q` to `q'`, jumps by ε to
/// the start of a copy relabeled by `ψ^{-k}`, and reads `y` back to `q`.
pub fn cyc_psi_closure(a: &Automaton, ctx: &TwistedContext, mode: ClosureMode) -> Result<Automaton, AutomatonError> {
    let g = ctx.graph();
    if a.num_symbols() != g.alphabet_size() {
        return Err(AutomatonError::AlphabetMismatch);
    }
    if !ctx.is_length_preserving() {
        return Err(AutomatonError::NotLengthPreserving);
    }
    let m = ctx.order() as i64;
    let copies: Vec<Automaton> = (0..m).map(|k| a.relabel(&symbol_map(ctx, -k))).collect();
    let copy = |k: i64| &copies[k.rem_euclid(m) as usize];
    let accepts: Vec<State> = a.accepting().collect();
    let nq = a.num_states();

    let mut out = Automaton::empty(a.symbols.clone());
    let s = out.add_state(false);
    out.start = vec![s];
    let embed = |out: &mut Automaton, c: &Automaton| -> usize {
        let off = out.num_states();
        for p in 0..nq {
            out.add_state(false);
            out.edges[off + p] = c.edges[p].iter().map(|&(x, q)| (x, q + off)).collect();
        }
        off
    };
    match mode {
        ClosureMode::Literal => {
            let e = out.add_state(true);
            for k in 0..m {
                for &qp in &accepts {
                    let off = embed(&mut out, copy(k));
                    for &st in &a.start {
                        out.add_edge(s, None, st + off);
                    }
                    out.add_edge(qp + off, None, e);
                }
                for q in 0..nq {
                    for &qp in &accepts {
                        let first = embed(&mut out, copy(k - 1));
                        let second = embed(&mut out, copy(k));
                        for &st in &a.start {
                            out.add_edge(qp + first, None, st + second);
                        }
                        out.add_edge(s, None, q + first);
                        out.add_edge(q + second, None, e);
                    }
                }
            }
        }
        ClosureMode::Product => {
            for k in 0..m {
                for q in 0..nq {
                    let first = embed(&mut out, copy(k - 1));
                    let second = embed(&mut out, copy(k));
                    out.add_edge(s, None, q + first);
                    for &qp in &accepts {
                        for &st in &a.start {
                            out.add_edge(qp + first, None, st + second);
                        }
                    }
                    out.accept[q + second] = true;
                }
            }
        }
    }
    out.deterministic = false;
    Ok(out)
}

/// ψ-cyclic geodesics: words none of whose ψ-cyclic permutations is
/// non-geodesic.
pub fn cycgeo_automaton(ctx: &TwistedContext) -> Result<Automaton, AutomatonError> {
    cycgeo_automaton_with(ctx, ClosureMode::Literal)
}

pub fn cycgeo_automaton_with(ctx: &TwistedContext, mode: ClosureMode) -> Result<Automaton, AutomatonError> {
    let bad = geo_automaton(ctx.graph()).complement().minimize();
    Ok(cyc_psi_closure(&bad, ctx, mode)?.complement().minimize())
}

/// Twisted conjugacy geodesics when ψ is a composition of inversions,
/// where they coincide with the ψ-cyclic geodesics.
pub fn conjgeo_automaton_inversions(ctx: &TwistedContext) -> Result<Automaton, AutomatonError> {
    if !ctx.psi().is_composition_of_inversions() {
        return Err(AutomatonError::PsiNotInversions);
    }
    cycgeo_automaton(ctx)
}
