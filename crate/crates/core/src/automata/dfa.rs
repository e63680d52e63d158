use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub type State = usize;
pub type Letter = u32;

/// A deterministic, possibly partial, finite automaton over the alphabet
/// `[0, alphabet_size)`.
///
/// Transitions live in a dense `state_count × alphabet_size` table where
/// `None` marks an undefined transition. Labels are annotations only and
/// never take part in comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    state_count: usize,
    alphabet_size: usize,
    initial: State,
    finals: Vec<bool>,
    delta: Vec<Option<State>>,
    labels: Option<Vec<String>>,
}

impl Dfa {
    /// An automaton with no transitions and no final states.
    pub fn new(state_count: usize, alphabet_size: usize, initial: State) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::InvalidAutomaton("an automaton needs at least one state".into()));
        }
        if alphabet_size == 0 {
            return Err(Error::InvalidAutomaton("alphabet must be non-empty".into()));
        }
        if initial >= state_count {
            return Err(Error::InvalidState { state: initial, state_count });
        }
        let cells = state_count
            .checked_mul(alphabet_size)
            .ok_or_else(|| Error::Capacity("transition table size overflows".into()))?;
        Ok(Dfa {
            state_count,
            alphabet_size,
            initial,
            finals: vec![false; state_count],
            delta: vec![None; cells],
            labels: None,
        })
    }

    /// Builds an automaton from explicit parts, rejecting duplicate
    /// `(source, letter)` entries.
    pub fn from_parts(
        state_count: usize,
        alphabet_size: usize,
        initial: State,
        finals: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, Letter, State)>,
    ) -> Result<Self> {
        let mut dfa = Dfa::new(state_count, alphabet_size, initial)?;
        for q in finals {
            dfa.set_final(q, true)?;
        }
        for (from, letter, to) in transitions {
            if dfa.next_checked(from, letter)?.is_some() {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate transition from state {from} on letter {letter}"
                )));
            }
            dfa.set_transition(from, letter, to)?;
        }
        Ok(dfa)
    }

    /// The convention for the empty language: one non-final state, no transitions.
    pub fn empty_language(alphabet_size: usize) -> Result<Self> {
        Dfa::new(1, alphabet_size, 0)
    }

    /// The one-state complete automaton accepting every word.
    pub fn universal(alphabet_size: usize) -> Result<Self> {
        let mut dfa = Dfa::new(1, alphabet_size, 0)?;
        dfa.finals[0] = true;
        dfa.delta.fill(Some(0));
        Ok(dfa)
    }

    pub fn set_transition(&mut self, from: State, letter: Letter, to: State) -> Result<()> {
        self.check_state(to)?;
        let idx = self.index(from, letter)?;
        self.delta[idx] = Some(to);
        Ok(())
    }

    pub fn clear_transition(&mut self, from: State, letter: Letter) -> Result<()> {
        let idx = self.index(from, letter)?;
        self.delta[idx] = None;
        Ok(())
    }

    pub fn set_final(&mut self, state: State, is_final: bool) -> Result<()> {
        self.check_state(state)?;
        self.finals[state] = is_final;
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.state_count {
            return Err(Error::InvalidAutomaton(format!(
                "{} labels given for {} states",
                labels.len(),
                self.state_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_final(&self, state: State) -> bool {
        self.finals[state]
    }

    pub fn finals(&self) -> impl Iterator<Item = State> + '_ {
        self.finals.iter().enumerate().filter_map(|(q, &f)| f.then_some(q))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, state: State) -> Option<&str> {
        self.labels.as_ref().map(|l| l[state].as_str())
    }

    /// Successor of `state` on `letter`. Panics on out-of-range arguments.
    #[inline]
    pub fn next(&self, state: State, letter: Letter) -> Option<State> {
        self.delta[state * self.alphabet_size + letter as usize]
    }

    pub fn next_checked(&self, state: State, letter: Letter) -> Result<Option<State>> {
        let idx = self.index(state, letter)?;
        Ok(self.delta[idx])
    }

    /// All defined transitions, ordered by source then letter.
    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State)> + '_ {
        let k = self.alphabet_size;
        self.delta
            .iter()
            .enumerate()
            .filter_map(move |(idx, t)| t.map(|to| (idx / k, (idx % k) as Letter, to)))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().filter(|t| t.is_some()).count()
    }

    /// State reached from `state` after reading `word`, or `None` if the run
    /// falls off a partial transition.
    pub fn run_from(&self, state: State, word: &[Letter]) -> Result<Option<State>> {
        self.check_state(state)?;
        let mut q = state;
        for &letter in word {
            self.check_letter(letter)?;
            match self.next(q, letter) {
                Some(t) => q = t,
                None => return Ok(None),
            }
        }
        Ok(Some(q))
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        self.accepts_from(self.initial, word)
    }

    pub fn accepts_from(&self, state: State, word: &[Letter]) -> Result<bool> {
        Ok(self.run_from(state, word)?.is_some_and(|q| self.finals[q]))
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    pub fn is_accessible(&self) -> bool {
        self.accessible_states().into_iter().all(|x| x)
    }

    pub fn is_coaccessible(&self) -> bool {
        self.coaccessible_states().into_iter().all(|x| x)
    }

    /// Forward reachability from the initial state.
    pub fn accessible_states(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet_size as Letter {
                if let Some(t) = self.next(q, a) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn coaccessible_states(&self) -> Vec<bool> {
        let preds = self.predecessors();
        let mut seen = self.finals.clone();
        let mut queue: VecDeque<State> = self.finals().collect();
        while let Some(q) = queue.pop_front() {
            for &s in &preds[q] {
                if !seen[s] {
                    seen[s] = true;
                    queue.push_back(s);
                }
            }
        }
        seen
    }

    /// Predecessor lists, letters merged.
    pub(crate) fn predecessors(&self) -> Vec<Vec<State>> {
        let mut preds = vec![Vec::new(); self.state_count];
        for (from, _, to) in self.transitions() {
            preds[to].push(from);
        }
        preds
    }

    /// Predecessor lists per letter: `result[letter][state]`.
    pub(crate) fn predecessors_by_letter(&self) -> Vec<Vec<Vec<State>>> {
        let mut preds = vec![vec![Vec::new(); self.state_count]; self.alphabet_size];
        for (from, letter, to) in self.transitions() {
            preds[letter as usize][to].push(from);
        }
        preds
    }

    /// All accepted words of length at most `max_len`, in length-lexicographic order.
    pub fn enumerate_accepted(&self, max_len: usize) -> Vec<Vec<Letter>> {
        let live = self.coaccessible_states();
        let mut out = Vec::new();
        if !live[self.initial] {
            return out;
        }
        let mut frontier: Vec<(Vec<Letter>, State)> = vec![(Vec::new(), self.initial)];
        for len in 0..=max_len {
            out.extend(frontier.iter().filter(|(_, q)| self.finals[*q]).map(|(w, _)| w.clone()));
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &frontier {
                for a in 0..self.alphabet_size as Letter {
                    if let Some(t) = self.next(*q, a) {
                        if live[t] {
                            let mut w2 = w.clone();
                            w2.push(a);
                            next.push((w2, t));
                        }
                    }
                }
            }
            frontier = next;
        }
        out
    }

    fn check_state(&self, state: State) -> Result<()> {
        if state < self.state_count {
            Ok(())
        } else {
            Err(Error::InvalidState { state, state_count: self.state_count })
        }
    }

    fn check_letter(&self, letter: Letter) -> Result<()> {
        if (letter as usize) < self.alphabet_size {
            Ok(())
        } else {
            Err(Error::InvalidLetter { letter, alphabet_size: self.alphabet_size })
        }
    }

    fn index(&self, state: State, letter: Letter) -> Result<usize> {
        self.check_state(state)?;
        self.check_letter(letter)?;
        Ok(state * self.alphabet_size + letter as usize)
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dfa: {} states, {} letters, initial {}",
            self.state_count, self.alphabet_size, self.initial
        )?;
        for q in 0..self.state_count {
            let name = self.label(q).map(str::to_owned).unwrap_or_else(|| q.to_string());
            let mark = if self.finals[q] { "*" } else { " " };
            write!(f, "{mark}{name}:")?;
            for a in 0..self.alphabet_size as Letter {
                match self.next(q, a) {
                    Some(t) => write!(f, " {t}")?,
                    None => write!(f, " -")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity() -> Dfa {
        // binary words with an even number of ones
        Dfa::from_parts(2, 2, 0, [0], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]).unwrap()
    }

    #[test]
    fn accepts_basics() {
        let a = parity();
        assert!(a.accepts(&[]).unwrap());
        assert!(a.accepts(&[1, 1]).unwrap());
        assert!(!a.accepts(&[1, 0]).unwrap());
        assert!(a.accepts_from(1, &[1]).unwrap());
        assert_eq!(
            a.accepts(&[2]).unwrap_err(),
            Error::InvalidLetter { letter: 2, alphabet_size: 2 }
        );
    }

    #[test]
    fn from_parts_rejects_duplicates_and_bad_targets() {
        assert!(Dfa::from_parts(2, 2, 0, [0], [(0, 0, 0), (0, 0, 1)]).is_err());
        assert!(Dfa::from_parts(2, 2, 0, [0], [(0, 0, 2)]).is_err());
        assert!(Dfa::from_parts(2, 2, 2, [0], []).is_err());
        assert!(Dfa::from_parts(2, 2, 0, [5], []).is_err());
    }

    #[test]
    fn predicates() {
        let a = parity();
        assert!(a.is_complete() && a.is_accessible() && a.is_coaccessible());
        let b = Dfa::from_parts(3, 1, 0, [0], [(0, 0, 0)]).unwrap();
        assert!(!b.is_accessible());
        assert!(!b.is_complete());
        assert!(!b.is_coaccessible());
    }

    #[test]
    fn enumeration_order() {
        let a = parity();
        let words = a.enumerate_accepted(2);
        assert_eq!(words, vec![vec![], vec![0], vec![0, 0], vec![1, 1]]);
        assert!(Dfa::empty_language(3).unwrap().enumerate_accepted(4).is_empty());
        assert_eq!(Dfa::universal(2).unwrap().enumerate_accepted(3).len(), 15);
    }
}
