use std::collections::{HashMap, VecDeque};

use super::dfa::{Dfa, Letter, State};
use crate::error::{Error, Result};

fn state_name(a: &Dfa, q: State) -> String {
    a.label(q).map_or_else(|| q.to_string(), str::to_owned)
}

/// Synchronized product over the reachable pairs, BFS-numbered.
///
/// A pair is final iff both components are; a transition is defined iff it
/// is defined in both factors.
pub fn product(a1: &Dfa, a2: &Dfa) -> Result<Dfa> {
    if a1.alphabet_size() != a2.alphabet_size() {
        return Err(Error::AlphabetMismatch { left: a1.alphabet_size(), right: a2.alphabet_size() });
    }
    let k = a1.alphabet_size();
    let start = (a1.initial(), a2.initial());
    let mut index = HashMap::from([(start, 0usize)]);
    let mut pairs = vec![start];
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let (p, q) = pairs[s];
        for a in 0..k as Letter {
            let (Some(p2), Some(q2)) = (a1.next(p, a), a2.next(q, a)) else {
                continue;
            };
            let id = *index.entry((p2, q2)).or_insert_with(|| {
                pairs.push((p2, q2));
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            transitions.push((s, a, id));
        }
    }
    let finals: Vec<State> = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(p, q))| a1.is_final(p) && a2.is_final(q))
        .map(|(i, _)| i)
        .collect();
    let labels = pairs
        .iter()
        .map(|&(p, q)| format!("({},{})", state_name(a1, p), state_name(a2, q)))
        .collect();
    Dfa::from_parts(pairs.len(), k, 0, finals, transitions)?.with_labels(labels)
}

/// Adds one non-final sink if the automaton is partial.
pub fn complete(a: &Dfa) -> Dfa {
    if a.is_complete() {
        return a.clone();
    }
    let n = a.state_count();
    let k = a.alphabet_size();
    let mut out = Dfa::new(n + 1, k, a.initial()).expect("valid dimensions");
    for q in 0..n {
        out.set_final(q, a.is_final(q)).expect("state in range");
        for l in 0..k as Letter {
            out.set_transition(q, l, a.next(q, l).unwrap_or(n)).expect("in range");
        }
    }
    for l in 0..k as Letter {
        out.set_transition(n, l, n).expect("in range");
    }
    match a.labels() {
        Some(labels) => {
            let mut labels = labels.to_vec();
            labels.push("sink".into());
            out.with_labels(labels).expect("label count matches")
        }
        None => out,
    }
}

/// Restricts to the states kept by `keep`, preserving their relative order.
/// The initial state must be kept.
fn restrict(a: &Dfa, keep: &[bool]) -> Dfa {
    let mut remap = vec![None; a.state_count()];
    let mut kept = Vec::new();
    for q in 0..a.state_count() {
        if keep[q] {
            remap[q] = Some(kept.len());
            kept.push(q);
        }
    }
    let initial = remap[a.initial()].expect("initial state kept");
    let finals: Vec<State> = kept.iter().filter(|&&q| a.is_final(q)).map(|&q| remap[q].unwrap()).collect();
    let transitions: Vec<_> = a
        .transitions()
        .filter_map(|(p, l, q)| Some((remap[p]?, l, remap[q]?)))
        .collect();
    let out = Dfa::from_parts(kept.len(), a.alphabet_size(), initial, finals, transitions)
        .expect("restriction of a valid automaton is valid");
    match a.labels() {
        Some(labels) => out
            .with_labels(kept.iter().map(|&q| labels[q].clone()).collect())
            .expect("label count matches"),
        None => out,
    }
}

pub fn accessible_part(a: &Dfa) -> Dfa {
    restrict(a, &a.accessible_states())
}

/// Keeps the states that are both accessible and co-accessible.
///
/// The empty language yields a single non-final state without transitions.
pub fn trim(a: &Dfa) -> Dfa {
    let acc = a.accessible_states();
    let coacc = a.coaccessible_states();
    let keep: Vec<bool> = acc.iter().zip(&coacc).map(|(x, y)| *x && *y).collect();
    if !keep[a.initial()] {
        return Dfa::empty_language(a.alphabet_size()).expect("non-empty alphabet");
    }
    restrict(a, &keep)
}

/// Renumbers the accessible states in BFS order from the initial state,
/// letters taken in increasing order. Unreachable states are dropped.
pub fn canonical(a: &Dfa) -> Dfa {
    let n = a.state_count();
    let k = a.alphabet_size();
    let mut order = vec![a.initial()];
    let mut remap = vec![None; n];
    remap[a.initial()] = Some(0);
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for l in 0..k as Letter {
            if let Some(t) = a.next(q, l) {
                if remap[t].is_none() {
                    remap[t] = Some(order.len());
                    order.push(t);
                }
            }
        }
    }
    let finals: Vec<State> = order.iter().enumerate().filter(|(_, &q)| a.is_final(q)).map(|(i, _)| i).collect();
    let transitions: Vec<_> = order
        .iter()
        .enumerate()
        .flat_map(|(i, &q)| (0..k as Letter).filter_map(move |l| a.next(q, l).map(|t| (i, l, t))))
        .map(|(i, l, t)| (i, l, remap[t].unwrap()))
        .collect();
    let out = Dfa::from_parts(order.len(), k, 0, finals, transitions).expect("valid renumbering");
    match a.labels() {
        Some(labels) => out
            .with_labels(order.iter().map(|&q| labels[q].clone()).collect())
            .expect("label count matches"),
        None => out,
    }
}

/// Structural equality of the canonical forms, labels ignored.
pub fn isomorphic(a1: &Dfa, a2: &Dfa) -> bool {
    if a1.alphabet_size() != a2.alphabet_size() {
        return false;
    }
    canonical(a1).without_labels() == canonical(a2).without_labels()
}

/// Whether distinct states always accept disjoint languages.
///
/// Walks the self-product backwards from the (final, final) pairs; the
/// automaton has disjoint states iff no off-diagonal pair is reached.
pub fn disjoint_states(a: &Dfa) -> bool {
    let n = a.state_count();
    let preds = a.predecessors_by_letter();
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::new();
    let finals: Vec<State> = a.finals().collect();
    for &p in &finals {
        for &q in &finals {
            if p != q {
                return false;
            }
            seen[p * n + q] = true;
            queue.push_back((p, q));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        for by_state in &preds {
            for &p2 in &by_state[p] {
                for &q2 in &by_state[q] {
                    if p2 != q2 {
                        return false;
                    }
                    if !seen[p2 * n + q2] {
                        seen[p2 * n + q2] = true;
                        queue.push_back((p2, q2));
                    }
                }
            }
        }
    }
    true
}

/// Whether the two given states accept disjoint languages.
pub fn states_disjoint(a: &Dfa, p: State, q: State) -> bool {
    let n = a.state_count();
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::from([(p, q)]);
    seen[p * n + q] = true;
    while let Some((x, y)) = queue.pop_front() {
        if a.is_final(x) && a.is_final(y) {
            return false;
        }
        for l in 0..a.alphabet_size() as Letter {
            if let (Some(x2), Some(y2)) = (a.next(x, l), a.next(y, l)) {
                if !seen[x2 * n + y2] {
                    seen[x2 * n + y2] = true;
                    queue.push_back((x2, y2));
                }
            }
        }
    }
    true
}
