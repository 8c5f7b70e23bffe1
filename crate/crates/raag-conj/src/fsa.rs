//! Automaton serialization: the line-based `fsa v1` text format and DOT.
//!
//! ```text
//! fsa v1
//! symbol a
//! symbol a⁻¹
//! state 0
//! state 1
//! start 0
//! accept 1
//! trans 0 a 1
//! trans 1 ε 0
//! ```
//!
//! Symbols are listed in alphabet order; `ε` marks an empty move.

use std::fmt::Write;

use raag_conj_core::automata::{State, Symbol};
use raag_conj_core::{Automaton, AutomatonError};
use thiserror::Error;

pub const EPSILON: &str = "ε";

#[derive(Debug, Error)]
pub enum FsaError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

fn label(a: &Automaton, s: Option<Symbol>) -> &str {
    s.map_or(EPSILON, |s| a.symbols()[s as usize].as_str())
}

/// Transitions sorted by source, label, target.
fn sorted_transitions(a: &Automaton) -> Vec<(State, Option<Symbol>, State)> {
    let mut t: Vec<_> = a.transitions().collect();
    t.sort_unstable();
    t
}

pub fn to_fsa(a: &Automaton) -> String {
    let mut out = String::from("fsa v1\n");
    for s in a.symbols() {
        writeln!(out, "symbol {s}").unwrap();
    }
    for q in 0..a.num_states() {
        writeln!(out, "state {q}").unwrap();
    }
    for q in a.starts() {
        writeln!(out, "start {q}").unwrap();
    }
    for q in a.accepting() {
        writeln!(out, "accept {q}").unwrap();
    }
    for (p, s, q) in sorted_transitions(a) {
        writeln!(out, "trans {p} {} {q}", label(a, s)).unwrap();
    }
    out
}

pub fn parse_fsa(text: &str) -> Result<Automaton, FsaError> {
    let mut symbols: Vec<String> = Vec::new();
    let mut states = 0usize;
    let mut start = Vec::new();
    let mut accept = Vec::new();
    let mut raw_trans: Vec<(usize, State, String, State)> = Vec::new();
    let mut seen_header = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        let err = |msg: String| FsaError::Syntax { line: i + 1, msg };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            if line != "fsa v1" {
                return Err(err("expected header `fsa v1`".into()));
            }
            seen_header = true;
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("`{s}` is not a state number")));
        match parts[..] {
            ["symbol", name] => {
                if name == EPSILON || symbols.iter().any(|s| s == name) {
                    return Err(err(format!("bad or repeated symbol `{name}`")));
                }
                symbols.push(name.to_string());
            }
            ["state", q] => {
                if num(q)? != states {
                    return Err(err(format!("states must be numbered 0, 1, … in order; expected {states}")));
                }
                states += 1;
            }
            ["start", q] => start.push(num(q)?),
            ["accept", q] => accept.push(num(q)?),
            ["trans", p, s, q] => raw_trans.push((i + 1, num(p)?, s.to_string(), num(q)?)),
            _ => return Err(err(format!("unrecognized line `{line}`"))),
        }
    }
    if !seen_header {
        return Err(FsaError::Syntax { line: 1, msg: "missing header `fsa v1`".into() });
    }
    let mut trans = Vec::with_capacity(raw_trans.len());
    for (line, p, s, q) in raw_trans {
        let sym = if s == EPSILON {
            None
        } else {
            let k = symbols
                .iter()
                .position(|x| *x == s)
                .ok_or_else(|| FsaError::Syntax { line, msg: format!("unknown symbol `{s}`") })?;
            Some(k as Symbol)
        };
        trans.push((p, sym, q));
    }
    Ok(Automaton::from_parts(symbols, states, &trans, &start, &accept)?)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT rendering with accepting states drawn as double circles. Parallel
/// edges between the same states are merged into one comma-separated label.
pub fn to_dot(a: &Automaton, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=LR;\n  node [shape=circle];\n", dot_escape(name));
    out.push_str("  __start [shape=point];\n");
    for q in 0..a.num_states() {
        let shape = if a.is_accepting(q) { "doublecircle" } else { "circle" };
        writeln!(out, "  q{q} [label=\"{q}\", shape={shape}];").unwrap();
    }
    for q in a.starts() {
        writeln!(out, "  __start -> q{q};").unwrap();
    }
    let trans = sorted_transitions(a);
    let mut i = 0;
    while i < trans.len() {
        let (p, _, q) = trans[i];
        let mut labels = Vec::new();
        while i < trans.len() && trans[i].0 == p && trans[i].2 == q {
            labels.push(dot_escape(label(a, trans[i].1)));
            i += 1;
        }
        writeln!(out, "  q{p} -> q{q} [label=\"{}\"];", labels.join(",")).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use raag_conj_core::automata::geo_automaton;
    use raag_conj_core::graph::examples::free2;

    fn sample() -> Automaton {
        let syms = vec!["a".to_string(), "b".to_string()];
        Automaton::from_parts(syms, 3, &[(0, Some(0), 1), (1, None, 2), (2, Some(1), 0), (0, Some(1), 1)], &[0], &[2])
            .unwrap()
    }

    #[test]
    fn text_round_trip() {
        for a in [sample(), geo_automaton(&free2()), Automaton::empty(vec!["x".into()])] {
            let text = to_fsa(&a);
            let b = parse_fsa(&text).unwrap();
            assert_eq!(to_fsa(&b), text);
            assert_eq!(a.enumerate_accepted(5), b.enumerate_accepted(5));
        }
    }

    #[test]
    fn text_layout() {
        let text = to_fsa(&sample());
        assert!(text.starts_with("fsa v1\nsymbol a\nsymbol b\nstate 0\n"));
        assert!(text.contains("trans 1 ε 2\n"));
        assert!(text.contains("accept 2\n"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_fsa("symbol a"), Err(FsaError::Syntax { line: 1, .. })));
        assert!(matches!(parse_fsa("fsa v1\nstate 1"), Err(FsaError::Syntax { line: 2, .. })));
        assert!(matches!(parse_fsa("fsa v1\nsymbol a\nstate 0\ntrans 0 b 0"), Err(FsaError::Syntax { line: 4, .. })));
        assert!(matches!(parse_fsa("fsa v1\nstate 0\nstart 3"), Err(FsaError::Automaton(_))));
        assert!(matches!(parse_fsa(""), Err(FsaError::Syntax { .. })));
    }

    #[test]
    fn dot_marks_accepting_and_epsilon() {
        let d = to_dot(&sample(), "m");
        assert!(d.contains("q2 [label=\"2\", shape=doublecircle];"));
        assert!(d.contains("q0 [label=\"0\", shape=circle];"));
        assert!(d.contains("q1 -> q2 [label=\"ε\"];"));
        assert!(d.contains("q0 -> q1 [label=\"a,b\"];"));
        assert_eq!(d, to_dot(&sample(), "m"));
    }
}
