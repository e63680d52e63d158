//! Hopcroft partition refinement and language equivalence.

use std::collections::VecDeque;

use super::dfa::{Dfa, Letter, State};
use super::ops::{accessible_part, canonical, complete};
use crate::error::{Error, Result};

/// Coarsest partition of the states of a complete automaton compatible with
/// finality and transitions (Hopcroft's algorithm).
///
/// Returns a block index per state. Blocks are numbered by the order of
/// their smallest state, so the result does not depend on splitter order.
fn hopcroft_blocks(a: &Dfa) -> Vec<usize> {
    debug_assert!(a.is_complete());
    let n = a.state_count();
    let k = a.alphabet_size();
    let preds = a.predecessors_by_letter();

    let (finals, others): (Vec<State>, Vec<State>) = (0..n).partition(|&q| a.is_final(q));
    let mut blocks: Vec<Vec<State>> = [finals, others].into_iter().filter(|b| !b.is_empty()).collect();
    let mut block_of = vec![0usize; n];
    for (id, block) in blocks.iter().enumerate() {
        for &q in block {
            block_of[q] = id;
        }
    }

    // (block, letter) splitters; at most n blocks ever exist
    let mut pending = vec![false; n * k];
    let mut work: Vec<(usize, Letter)> = Vec::new();
    if blocks.len() == 2 {
        let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
        for c in 0..k {
            pending[smaller * k + c] = true;
            work.push((smaller, c as Letter));
        }
    }

    let mut hits: Vec<Vec<State>> = vec![Vec::new(); blocks.len()];
    let mut in_hit = vec![false; n];
    let mut touched = Vec::new();
    while let Some((splitter, c)) = work.pop() {
        pending[splitter * k + c as usize] = false;
        for &t in &blocks[splitter] {
            for &q in &preds[c as usize][t] {
                let b = block_of[q];
                if hits[b].is_empty() {
                    touched.push(b);
                }
                hits[b].push(q);
            }
        }
        for y in touched.drain(..) {
            let hit = std::mem::take(&mut hits[y]);
            if hit.len() == blocks[y].len() {
                continue;
            }
            let fresh = blocks.len();
            for &q in &hit {
                in_hit[q] = true;
                block_of[q] = fresh;
            }
            blocks[y].retain(|&q| !in_hit[q]);
            for &q in &hit {
                in_hit[q] = false;
            }
            blocks.push(hit);
            hits.push(Vec::new());
            for d in 0..k {
                if pending[y * k + d] {
                    pending[fresh * k + d] = true;
                    work.push((fresh, d as Letter));
                } else {
                    let smaller = if blocks[y].len() <= blocks[fresh].len() { y } else { fresh };
                    pending[smaller * k + d] = true;
                    work.push((smaller, d as Letter));
                }
            }
        }
    }
    normalize_blocks(&block_of)
}

fn normalize_blocks(raw: &[usize]) -> Vec<usize> {
    let mut rename = vec![usize::MAX; raw.len().max(1)];
    let mut next = 0;
    raw.iter()
        .map(|&b| {
            if rename[b] == usize::MAX {
                rename[b] = next;
                next += 1;
            }
            rename[b]
        })
        .collect()
}

/// Nerode equivalence on the states of `complete(a)`.
///
/// Entry `q` is the block of state `q`; if `a` is partial, index
/// `a.state_count()` refers to the added sink. Unreachable states are
/// classified too.
pub fn state_partition(a: &Dfa) -> Vec<usize> {
    hopcroft_blocks(&complete(a))
}

/// The minimal complete automaton of the language, canonically numbered.
pub fn minimize(a: &Dfa) -> Dfa {
    let reachable = accessible_part(&complete(a));
    let blocks = hopcroft_blocks(&reachable);
    let count = blocks.iter().max().map_or(0, |m| m + 1);
    let k = reachable.alphabet_size();
    let mut representative = vec![usize::MAX; count];
    for (q, &b) in blocks.iter().enumerate() {
        if representative[b] == usize::MAX {
            representative[b] = q;
        }
    }
    let finals = (0..count).filter(|&b| reachable.is_final(representative[b]));
    let transitions: Vec<_> = (0..count)
        .flat_map(|b| {
            let rep = representative[b];
            let reachable = &reachable;
            let blocks = &blocks;
            (0..k as Letter).map(move |l| (b, l, blocks[reachable.next(rep, l).expect("complete")]))
        })
        .collect();
    let quotient = Dfa::from_parts(count, k, blocks[reachable.initial()], finals, transitions)
        .expect("quotient of a valid automaton is valid");
    let quotient = match reachable.labels() {
        Some(labels) => quotient
            .with_labels(representative.iter().map(|&q| labels[q].clone()).collect())
            .expect("one label per block"),
        None => quotient,
    };
    canonical(&quotient)
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Language equality via Hopcroft–Karp union-find on the completed automata.
pub fn equivalent(a1: &Dfa, a2: &Dfa) -> Result<bool> {
    if a1.alphabet_size() != a2.alphabet_size() {
        return Err(Error::AlphabetMismatch { left: a1.alphabet_size(), right: a2.alphabet_size() });
    }
    let (c1, c2) = (complete(a1), complete(a2));
    let offset = c1.state_count();
    let mut uf = UnionFind::new(offset + c2.state_count());
    let mut stack = vec![(c1.initial(), c2.initial())];
    uf.union(c1.initial(), offset + c2.initial());
    while let Some((p, q)) = stack.pop() {
        if c1.is_final(p) != c2.is_final(q) {
            return Ok(false);
        }
        for l in 0..c1.alphabet_size() as Letter {
            let p2 = c1.next(p, l).expect("complete");
            let q2 = c2.next(q, l).expect("complete");
            if uf.union(p2, offset + q2) {
                stack.push((p2, q2));
            }
        }
    }
    Ok(true)
}

/// A shortest word accepted by exactly one of the automata, if any.
pub fn distinguishing_word(a1: &Dfa, a2: &Dfa) -> Result<Option<Vec<Letter>>> {
    if a1.alphabet_size() != a2.alphabet_size() {
        return Err(Error::AlphabetMismatch { left: a1.alphabet_size(), right: a2.alphabet_size() });
    }
    let (c1, c2) = (complete(a1), complete(a2));
    let n2 = c2.state_count();
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; c1.state_count() * n2];
    let mut seen = vec![false; c1.state_count() * n2];
    let start = c1.initial() * n2 + c2.initial();
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(cell) = queue.pop_front() {
        let (p, q) = (cell / n2, cell % n2);
        if c1.is_final(p) != c2.is_final(q) {
            let mut word = Vec::new();
            let mut cur = cell;
            while let Some((prev, l)) = parent[cur] {
                word.push(l);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for l in 0..c1.alphabet_size() as Letter {
            let next = c1.next(p, l).unwrap() * n2 + c2.next(q, l).unwrap();
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((cell, l));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}
