//! Finite automata for the multiples `m·T` of the Thue-Morse set in bases
//! `2^p`.
//!
//! The crate builds the chain of automata leading from the Thue-Morse
//! automaton to the minimal automaton of `val⁻¹(mT)`, computes the closed-form
//! state complexity `2k + ⌈z/p⌉` (with `m = k·2^z`, `k` odd), decides whether
//! a given automaton recognizes some `mT`, and checks every formula against an
//! independent Hopcroft minimization and brute-force integer arithmetic.
//!
//! Modules, bottom-up:
//!
//! - [`numeration`]: base-`b` digit words, padded pairs, Thue-Morse membership.
//! - [`automata`]: generic DFA/NFA engine (product, projection, subset
//!   construction, Hopcroft, Hopcroft–Karp, canonical forms).
//! - [`constructions`]: the specific automata, the class partition of the
//!   projected product, the direct minimal automaton and the formulas.
//! - [`decision`]: recognizing whether an automaton accepts some `val⁻¹(mT)`.
//! - [`oracle`]: brute-force membership and cross-check reports.

pub mod automata;
pub mod constructions;
pub mod decision;
mod error;
pub mod numeration;
pub mod oracle;

pub use error::{Error, Result};
