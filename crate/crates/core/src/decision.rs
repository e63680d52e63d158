//! Deciding whether an automaton over `A_{2^p}` accepts `val⁻¹(mT)` for
//! some `m`.
//!
//! The state complexity `M` of the input pins down the finitely many
//! `(k, z)` with `2k + ⌈z/p⌉ = M`; each candidate is compared against the
//! directly built minimal automaton, which stays small even when
//! `m = k·2^z` is enormous.

use std::fmt;

use num_bigint::BigUint;

use crate::automata::{equivalent, minimize, Dfa};
use crate::constructions::build_minimal_mt_direct;
use crate::error::{Error, Result};
use crate::numeration::Base;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionResult {
    /// The language is `val⁻¹(mT)` for this (unique) `m`. `m = 0` stands for `0*`.
    Multiple(BigUint),
    NotAMultiple,
}

impl fmt::Display for DecisionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionResult::Multiple(m) => write!(f, "m={m}"),
            DecisionResult::NotAMultiple => write!(f, "not-a-multiple"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionOutcome {
    pub result: DecisionResult,
    /// `(k, z)` pairs compared, in order.
    pub candidates_tested: Vec<(u64, u64)>,
    pub minimized_state_count: usize,
}

/// All `(k, z)` with `k` odd and `2k + ⌈z/p⌉ = state_count`, by increasing
/// `k` then `z`.
pub fn candidates_for_complexity(state_count: u64, p: u32) -> Vec<(u64, u64)> {
    let p = u64::from(p.max(1));
    let mut out = Vec::new();
    for k in (1..).step_by(2).take_while(|k| 2 * k <= state_count) {
        let r = state_count - 2 * k;
        if r == 0 {
            out.push((k, 0));
        } else {
            out.extend(((r - 1) * p + 1..=r * p).map(|z| (k, z)));
        }
    }
    out
}

/// The minimal complete automaton of `0*`, i.e. of `val⁻¹({0})`.
fn zero_star(alphabet_size: usize) -> Result<Dfa> {
    let transitions = (0..alphabet_size as u32).map(|a| (0, a, if a == 0 { 0 } else { 1 }));
    let sink = (0..alphabet_size as u32).map(|a| (1, a, 1));
    Dfa::from_parts(2, alphabet_size, 0, [0], transitions.chain(sink))
}

pub fn decide_multiple_of_thue(a: &Dfa, p: u32) -> Result<DecisionOutcome> {
    let base = Base::power_of_two(p)?;
    let b = base.radix() as usize;
    if a.alphabet_size() != b {
        return Err(Error::AlphabetMismatch { left: a.alphabet_size(), right: b });
    }
    let minimal = minimize(a);
    let count = minimal.state_count();
    if equivalent(&minimal, &zero_star(b)?)? {
        return Ok(DecisionOutcome {
            result: DecisionResult::Multiple(BigUint::from(0u32)),
            candidates_tested: Vec::new(),
            minimized_state_count: count,
        });
    }
    let mut tested = Vec::new();
    for (k, z) in candidates_for_complexity(count as u64, p) {
        tested.push((k, z));
        let m = BigUint::from(k) << z;
        let candidate = build_minimal_mt_direct(&m, p)?;
        if equivalent(&minimal, &candidate)? {
            return Ok(DecisionOutcome {
                result: DecisionResult::Multiple(m),
                candidates_tested: tested,
                minimized_state_count: count,
            });
        }
    }
    Ok(DecisionOutcome { result: DecisionResult::NotAMultiple, candidates_tested: tested, minimized_state_count: count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_divisibility_dfa, build_thue_dfa};

    #[test]
    fn candidates_examples() {
        assert_eq!(candidates_for_complexity(7, 2), vec![(1, 9), (1, 10), (3, 1), (3, 2)]);
        assert_eq!(candidates_for_complexity(2, 1), vec![(1, 0)]);
        assert!(candidates_for_complexity(1, 3).is_empty());
    }

    #[test]
    fn candidates_are_complete_and_sound() {
        for p in 1..=3u32 {
            for count in 1..=30u64 {
                let fast = candidates_for_complexity(count, p);
                let mut brute = Vec::new();
                for k in (1..=count).step_by(2) {
                    for z in 0..=count * u64::from(p) {
                        if 2 * k + z.div_ceil(u64::from(p)) == count {
                            brute.push((k, z));
                        }
                    }
                }
                assert_eq!(fast, brute, "M={count} p={p}");
            }
        }
    }

    #[test]
    fn decides_examples() {
        let six = build_minimal_mt_direct(&BigUint::from(6u32), 2).unwrap();
        let out = decide_multiple_of_thue(&six, 2).unwrap();
        assert_eq!(out.result, DecisionResult::Multiple(BigUint::from(6u32)));
        assert_eq!(out.minimized_state_count, 7);
        assert_eq!(out.result.to_string(), "m=6");

        let t = build_thue_dfa(2).unwrap();
        assert_eq!(decide_multiple_of_thue(&t, 2).unwrap().result, DecisionResult::Multiple(BigUint::from(1u32)));

        let div = build_divisibility_dfa(6, 4).unwrap();
        let out = decide_multiple_of_thue(&div, 2).unwrap();
        assert_eq!(out.result, DecisionResult::NotAMultiple);
        assert_eq!(out.result.to_string(), "not-a-multiple");
    }

    #[test]
    fn zero_multiple() {
        let z = zero_star(4).unwrap();
        let out = decide_multiple_of_thue(&z, 2).unwrap();
        assert_eq!(out.result, DecisionResult::Multiple(BigUint::from(0u32)));
    }

    #[test]
    fn alphabet_mismatch() {
        let t = build_thue_dfa(1).unwrap();
        assert!(matches!(decide_multiple_of_thue(&t, 2), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn huge_multiple_round_trip() {
        let m = BigUint::from(5u32) << 70u32;
        let a = build_minimal_mt_direct(&m, 2).unwrap();
        assert_eq!(decide_multiple_of_thue(&a, 2).unwrap().result, DecisionResult::Multiple(m));
    }
}
