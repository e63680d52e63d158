//! The Nerode classes of the projected product `Π(A_{m,2^p} × A_{T,2^p})`
//! and the minimal automaton obtained by gluing them.
//!
//! Residue classes `[(j, X)]` gather `(j + kℓ, X_ℓ)` for `ℓ < 2^z`; the
//! states `(kℓ, T_ℓ)` with `ℓ > 0` are split into tail classes `Γ_β`
//! according to the 2-adic valuation of `ℓ`, grouped `p` at a time.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::basic::MAX_TABLE_CELLS;
use crate::automata::{canonical, Dfa, Letter};
use crate::error::{Error, Result};
use crate::numeration::{decompose, Base, MultipleDecomposition, ParityLetter};

/// A state `(i, X)` of the explicit product automata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductState {
    pub residue: u64,
    pub parity: ParityLetter,
}

impl ProductState {
    pub fn new(residue: u64, parity: ParityLetter) -> Self {
        ProductState { residue, parity }
    }
}

impl fmt::Display for ProductState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.residue, self.parity)
    }
}

/// Identifies a class: `[(j, X)]` with `j < k`, or `Γ_β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    Residue { j: u64, parity: ParityLetter },
    Tail(u64),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Residue { j, parity } => write!(f, "[({j},{parity})]"),
            ClassId::Tail(beta) => write!(f, "Γ_{beta}"),
        }
    }
}

/// Class order used everywhere: `[(0,T)]`, `[(0,B)]`, `[(1,T)]`, `[(1,B)]`,
/// …, `[(k-1,B)]`, then `Γ_0`, `Γ_1`, ….
fn class_ids(k: u64, tails: u64) -> impl Iterator<Item = ClassId> {
    (0..k)
        .flat_map(|j| [ParityLetter::T, ParityLetter::B].map(|parity| ClassId::Residue { j, parity }))
        .chain((0..tails).map(ClassId::Tail))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateClassPartition {
    m: u64,
    p: u32,
    k: u64,
    z: u64,
    classes: Vec<(ClassId, BTreeSet<ProductState>)>,
}

impl StateClassPartition {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn classes(&self) -> &[(ClassId, BTreeSet<ProductState>)] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> Option<&BTreeSet<ProductState>> {
        self.classes.iter().find(|(c, _)| *c == id).map(|(_, s)| s)
    }

    pub fn class_of(&self, state: ProductState) -> Option<ClassId> {
        self.classes.iter().find(|(_, s)| s.contains(&state)).map(|(c, _)| *c)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn u64_k(d: &MultipleDecomposition) -> Result<u64> {
    d.k_u64().ok_or_else(|| Error::Capacity(format!("odd part of {} does not fit in 64 bits", d.m)))
}

/// Builds the classes straight from their defining formulas and checks that
/// they are non-empty, pairwise disjoint and cover all `2m` states.
pub fn build_class_partition(m: u64, p: u32) -> Result<StateClassPartition> {
    Base::power_of_two(p)?;
    let d = decompose(m)?;
    let k = u64_k(&d)?;
    let z = d.z;
    let p64 = u64::from(p);
    let span = 1u64 << z;
    let tails = d.tail_count(p);

    let mut classes = Vec::new();
    for id in class_ids(k, tails) {
        let members: BTreeSet<ProductState> = match id {
            ClassId::Residue { j: 0, parity: ParityLetter::T } => {
                BTreeSet::from([ProductState::new(0, ParityLetter::T)])
            }
            ClassId::Residue { j, parity } => {
                (0..span).map(|l| ProductState::new(j + k * l, parity.apply(l))).collect()
            }
            ClassId::Tail(beta) => {
                let last = (beta * p64 + p64 - 1).min(z - 1);
                (beta * p64..=last)
                    .flat_map(|alpha| {
                        let offset = k << (z - alpha - 1);
                        let stride = k << (z - alpha);
                        (0..1u64 << alpha)
                            .map(move |l| ProductState::new(offset + stride * l, ParityLetter::B.apply(l)))
                    })
                    .collect()
            }
        };
        classes.push((id, members));
    }

    let mut seen = BTreeSet::new();
    for (id, members) in &classes {
        if members.is_empty() {
            return Err(Error::Invariant(format!("class {id} is empty for m={m}, p={p}")));
        }
        for s in members {
            if s.residue >= m {
                return Err(Error::Invariant(format!("class {id} contains out-of-range state {s}")));
            }
            if !seen.insert(*s) {
                return Err(Error::Invariant(format!("state {s} lies in two classes for m={m}, p={p}")));
            }
        }
    }
    if seen.len() as u64 != 2 * m {
        return Err(Error::Invariant(format!(
            "classes cover {} of the {} states for m={m}, p={p}",
            seen.len(),
            2 * m
        )));
    }
    Ok(StateClassPartition { m, p, k, z, classes })
}

/// Classifies `(i, X)` for arbitrary-precision `i < m` in constant many
/// big-integer operations.
///
/// Writes `i = j + kℓ`, normalizes to `X₀ = X_ℓ`; anything other than
/// `(0, T)` lands in `[(j, X₀)]`; otherwise `ℓ = 0` is `[(0,T)]` and `ℓ > 0`
/// is `Γ_β` with `β = ⌊(z − 1 − v₂(ℓ))/p⌋`.
pub fn classify_residue(
    residue: &BigUint,
    parity: ParityLetter,
    decomposition: &MultipleDecomposition,
    p: u32,
) -> Result<ClassId> {
    if residue >= &decomposition.m {
        return Err(Error::Domain(format!("residue {residue} is not below m = {}", decomposition.m)));
    }
    let k = u64_k(decomposition)?;
    let (l, j) = residue.div_rem(&BigUint::from(k));
    let j = j.to_u64().expect("remainder below k");
    let normalized = parity.apply_big(&l);
    if j != 0 || normalized != ParityLetter::T {
        return Ok(ClassId::Residue { j, parity: normalized });
    }
    match l.trailing_zeros() {
        None => Ok(ClassId::Residue { j: 0, parity: ParityLetter::T }),
        Some(v) => {
            let alpha = decomposition.z - 1 - v;
            Ok(ClassId::Tail(alpha / u64::from(p)))
        }
    }
}

pub fn classify_state(state: &ProductState, decomposition: &MultipleDecomposition, p: u32) -> Result<ClassId> {
    classify_residue(&BigUint::from(state.residue), state.parity, decomposition, p)
}

/// The minimal automaton of `val_{2^p}⁻¹(mT)` for arbitrary-precision `m`,
/// built on one representative per class without materializing the `2m`
/// states of the projected product.
///
/// Representatives are `(j, X)` for `[(j, X)]` and `(k·2^{z−βp−1}, B)` for
/// `Γ_β`. The result is canonically numbered and has `2k + ⌈z/p⌉` states.
pub fn build_minimal_mt_direct(m: &BigUint, p: u32) -> Result<Dfa> {
    let base = Base::power_of_two(p)?;
    let d = decompose(m.clone())?;
    let k = u64_k(&d)?;
    let tails = d.tail_count(p);
    let count = k
        .checked_mul(2)
        .and_then(|x| x.checked_add(tails))
        .filter(|&c| c.saturating_mul(u64::from(base.radix())) <= MAX_TABLE_CELLS)
        .ok_or_else(|| Error::Capacity(format!("minimal automaton for m = {m} is too large to build")))?;

    let ids: Vec<ClassId> = class_ids(k, tails).collect();
    let index: HashMap<ClassId, usize> = ids.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let radix = BigUint::from(base.radix());
    let mut dfa = Dfa::new(count as usize, base.radix() as usize, 0)?;
    dfa.set_final(0, true)?;
    for (from, id) in ids.iter().enumerate() {
        let (residue, parity) = match *id {
            ClassId::Residue { j, parity } => (BigUint::from(j), parity),
            ClassId::Tail(beta) => {
                let shift = d.z - beta * u64::from(p) - 1;
                (BigUint::from(k) << shift, ParityLetter::B)
            }
        };
        let scaled = &residue * &radix;
        for e in 0..base.radix() {
            let (digit, next) = (&scaled + e).div_rem(m);
            let digit = digit.to_u64().expect("quotient below the base");
            let target = classify_residue(&next, parity.apply(digit), &d, p)?;
            dfa.set_transition(from, e as Letter, index[&target])?;
        }
    }
    let dfa = canonical(&dfa.with_labels(ids.iter().map(ClassId::to_string).collect())?);
    if dfa.state_count() as u64 != count {
        return Err(Error::Invariant(format!(
            "direct minimal automaton for m = {m} has unreachable classes"
        )));
    }
    Ok(dfa)
}
