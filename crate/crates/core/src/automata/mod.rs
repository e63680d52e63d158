//! A small deterministic/nondeterministic automaton engine over integer
//! alphabets: products, projections, subset construction, trimming,
//! minimization, equivalence and structural predicates.

mod dfa;
mod minimize;
mod nfa;
mod ops;

pub use dfa::{Dfa, Letter, State};
pub use minimize::{distinguishing_word, equivalent, minimize, state_partition};
pub use nfa::{determinize, project, Component, Nfa, PairAlphabetCodec};
pub use ops::{
    accessible_part, canonical, complete, disjoint_states, isomorphic, product, states_disjoint, trim,
};

/// Free-function forms of the predicates and runs on [`Dfa`].
pub fn accepts(a: &Dfa, word: &[Letter]) -> crate::Result<bool> {
    a.accepts(word)
}

pub fn accepts_from(a: &Dfa, state: State, word: &[Letter]) -> crate::Result<bool> {
    a.accepts_from(state, word)
}

pub fn is_accessible(a: &Dfa) -> bool {
    a.is_accessible()
}

pub fn is_coaccessible(a: &Dfa) -> bool {
    a.is_coaccessible()
}

pub fn is_complete(a: &Dfa) -> bool {
    a.is_complete()
}

pub fn enumerate_accepted(a: &Dfa, max_len: usize) -> Vec<Vec<Letter>> {
    a.enumerate_accepted(max_len)
}
