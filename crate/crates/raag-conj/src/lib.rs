//! File formats, presets, automaton serialization, the verification suite
//! and the command-line front end for `raag-conj-core`.

pub mod cli;
pub mod format;
pub mod fsa;
pub mod verify;

pub use raag_conj_core as core;
