use std::collections::{HashMap, VecDeque};

use super::dfa::{Dfa, Letter, State};
use crate::error::{Error, Result};

/// Encodes pairs of digits `(d, e) ∈ [0,b)²` as single letters `d·b + e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairAlphabetCodec {
    base: u32,
}

impl PairAlphabetCodec {
    pub fn new(base: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::Domain(format!("pair base must be at least 2, got {base}")));
        }
        base.checked_mul(base)
            .ok_or_else(|| Error::Capacity(format!("pair alphabet for base {base} overflows")))?;
        Ok(PairAlphabetCodec { base })
    }

    pub fn base(self) -> u32 {
        self.base
    }

    pub fn size(self) -> usize {
        (self.base as usize) * (self.base as usize)
    }

    pub fn encode(self, d: u32, e: u32) -> Letter {
        debug_assert!(d < self.base && e < self.base);
        d * self.base + e
    }

    pub fn decode(self, letter: Letter) -> (u32, u32) {
        (letter / self.base, letter % self.base)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    First,
    Second,
}

/// A nondeterministic automaton with a single initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    state_count: usize,
    alphabet_size: usize,
    initial: State,
    finals: Vec<bool>,
    // sorted, deduplicated targets per (state, letter)
    delta: Vec<Vec<State>>,
    labels: Option<Vec<String>>,
}

impl Nfa {
    pub fn new(state_count: usize, alphabet_size: usize, initial: State) -> Result<Self> {
        if state_count == 0 || alphabet_size == 0 {
            return Err(Error::InvalidAutomaton("empty state set or alphabet".into()));
        }
        if initial >= state_count {
            return Err(Error::InvalidState { state: initial, state_count });
        }
        Ok(Nfa {
            state_count,
            alphabet_size,
            initial,
            finals: vec![false; state_count],
            delta: vec![Vec::new(); state_count * alphabet_size],
            labels: None,
        })
    }

    pub fn add_transition(&mut self, from: State, letter: Letter, to: State) -> Result<()> {
        for s in [from, to] {
            if s >= self.state_count {
                return Err(Error::InvalidState { state: s, state_count: self.state_count });
            }
        }
        if letter as usize >= self.alphabet_size {
            return Err(Error::InvalidLetter { letter, alphabet_size: self.alphabet_size });
        }
        let targets = &mut self.delta[from * self.alphabet_size + letter as usize];
        if let Err(pos) = targets.binary_search(&to) {
            targets.insert(pos, to);
        }
        Ok(())
    }

    pub fn set_final(&mut self, state: State, is_final: bool) -> Result<()> {
        if state >= self.state_count {
            return Err(Error::InvalidState { state, state_count: self.state_count });
        }
        self.finals[state] = is_final;
        Ok(())
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

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn targets(&self, state: State, letter: Letter) -> &[State] {
        &self.delta[state * self.alphabet_size + letter as usize]
    }

    /// At most one successor per `(state, letter)`.
    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().all(|t| t.len() <= 1)
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        let mut current = vec![self.initial];
        let mut mark = vec![false; self.state_count];
        for &a in word {
            if a as usize >= self.alphabet_size {
                return Err(Error::InvalidLetter { letter: a, alphabet_size: self.alphabet_size });
            }
            let mut next = Vec::new();
            for &q in &current {
                for &t in self.targets(q, a) {
                    if !mark[t] {
                        mark[t] = true;
                        next.push(t);
                    }
                }
            }
            for &t in &next {
                mark[t] = false;
            }
            current = next;
        }
        Ok(current.iter().any(|&q| self.finals[q]))
    }
}

/// Keeps one component of each pair letter. The result is over `[0, b)`.
pub fn project(a: &Dfa, component: Component, codec: PairAlphabetCodec) -> Result<Nfa> {
    if a.alphabet_size() != codec.size() {
        return Err(Error::AlphabetMismatch { left: a.alphabet_size(), right: codec.size() });
    }
    let mut nfa = Nfa::new(a.state_count(), codec.base() as usize, a.initial())?;
    for q in a.finals() {
        nfa.finals[q] = true;
    }
    for (from, letter, to) in a.transitions() {
        let (d, e) = codec.decode(letter);
        let kept = match component {
            Component::First => d,
            Component::Second => e,
        };
        nfa.add_transition(from, kept, to)?;
    }
    nfa.labels = a.labels().map(<[String]>::to_vec);
    Ok(nfa)
}

/// Subset construction over reachable subsets, numbered in BFS order with
/// letters in increasing order. The empty subset is never materialized, so
/// the result may be partial.
pub fn determinize(nfa: &Nfa) -> Result<Dfa> {
    let k = nfa.alphabet_size;
    let start = vec![nfa.initial];
    let mut index: HashMap<Vec<State>, State> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut mark = vec![false; nfa.state_count];
    while let Some(s) = queue.pop_front() {
        for a in 0..k as Letter {
            let mut target = Vec::new();
            for &q in &subsets[s] {
                for &t in nfa.targets(q, a) {
                    if !mark[t] {
                        mark[t] = true;
                        target.push(t);
                    }
                }
            }
            if target.is_empty() {
                continue;
            }
            for &t in &target {
                mark[t] = false;
            }
            target.sort_unstable();
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(target.clone(), id);
                    subsets.push(target);
                    queue.push_back(id);
                    id
                }
            };
            transitions.push((s, a, id));
        }
    }
    let finals: Vec<State> = subsets
        .iter()
        .enumerate()
        .filter(|(_, set)| set.iter().any(|&q| nfa.finals[q]))
        .map(|(i, _)| i)
        .collect();
    let labels = subsets
        .iter()
        .map(|set| {
            let names: Vec<String> = set
                .iter()
                .map(|&q| nfa.labels.as_ref().map_or_else(|| q.to_string(), |l| l[q].clone()))
                .collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    Dfa::from_parts(subsets.len(), k, 0, finals, transitions)?.with_labels(labels)
}
