//! Exact computation in right-angled Artin and Coxeter groups and their
//! finite cyclic extensions: normal forms, twisted conjugacy, conjugacy
//! languages, automata and growth series.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod automata;
pub mod automorphism;
pub mod extension;
pub mod graph;
pub mod series;
pub mod twisted;
pub mod word;

pub use automata::{Automaton, AutomatonError, ClosureMode};
pub use automorphism::{Automorphism, Generator, Side};
pub use extension::{ExtElement, ExtLanguageKind, VirtualGP};
pub use graph::{DefiningGraph, Letter, Neighborhood, Vertex, VertexKind, VertexSet};
pub use twisted::{LanguageKind, SearchBudget, TriState, TwistedContext};
pub use word::{normal_form, NormalWord, Word};
