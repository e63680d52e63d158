//! Shared checkers for the integration tests and the acceptance harness.
//!
//! Everything here recomputes expected values with plain integer arithmetic
//! or brute force, independently of the construction code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use thuemult::automata::{
    disjoint_states, minimize, state_partition, states_disjoint, Dfa, Letter, PairAlphabetCodec,
};
use thuemult::constructions::{
    build_class_partition, build_divisibility_dfa, build_mult_pair_dfa, build_product, build_projected_product,
    build_thue_pair_dfa, product_state_index, sigma_witness, ClassId, ProductState,
};
use thuemult::numeration::{rep_pair, rep_u64, Base, ParityLetter};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

/// `(k, z)` with `m = k·2^z`, by repeated halving.
pub fn odd_part(mut m: u64) -> (u64, u64) {
    let mut z = 0;
    while m.is_multiple_of(2) {
        m /= 2;
        z += 1;
    }
    (m, z)
}

pub fn expected_complexity(m: u64, p: u32) -> u64 {
    let (k, z) = odd_part(m);
    2 * k + z.div_ceil(u64::from(p))
}

pub fn popcount_even(n: u64) -> bool {
    n.count_ones().is_multiple_of(2)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn value(digits: &[u32], b: u64) -> u128 {
    digits.iter().fold(0u128, |acc, &d| acc * u128::from(b) + u128::from(d))
}

fn random_word(rng: &mut impl Rng, b: u32, max_len: usize) -> Vec<u32> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..b)).collect()
}

/// Reading `(u, v)` from `X` in `A_{T,2^p}` ends in `X_{val(u)}`.
pub fn check_pair_parity(p: u32, rng: &mut impl Rng, samples: usize) -> Check {
    let a = build_thue_pair_dfa(p).map_err(|e| e.to_string())?;
    let b = 1u32 << p;
    let codec = PairAlphabetCodec::new(b).unwrap();
    for _ in 0..samples {
        let u = random_word(rng, b, 60 / p as usize);
        let v: Vec<u32> = u.iter().map(|_| rng.gen_range(0..b)).collect();
        let word: Vec<Letter> = u.iter().zip(&v).map(|(&d, &e)| codec.encode(d, e)).collect();
        for x in [ParityLetter::T, ParityLetter::B] {
            let end = a.run_from(x.index(), &word).unwrap().unwrap();
            let val_u = value(&u, u64::from(b)) as u64;
            ensure!(end == x.apply(val_u).index(), "pair parity fails for p={p}, u={u:?}");
        }
    }
    Ok(())
}

/// Exactly one pair letter `(d, e)` is defined per state of `A_{m,b}` and
/// digit `e`, and every defined path satisfies `b^n·i + val(v) = m·val(u) + j`.
pub fn check_mult_pair(m: u64, b: u32, rng: &mut impl Rng, samples: usize) -> Check {
    let a = build_mult_pair_dfa(m, b).map_err(|e| e.to_string())?;
    let codec = PairAlphabetCodec::new(b).unwrap();
    for i in 0..m as usize {
        for e in 0..b {
            let defined = (0..b).filter(|&d| a.next(i, codec.encode(d, e)).is_some()).count();
            ensure!(defined == 1, "state {i} digit {e}: {defined} letters defined (m={m}, b={b})");
        }
    }
    for _ in 0..samples {
        let i = rng.gen_range(0..m) as usize;
        let v = random_word(rng, b, 6);
        let mut q = i;
        let mut u = Vec::new();
        for &e in &v {
            let d = (0..b).find(|&d| a.next(q, codec.encode(d, e)).is_some()).unwrap();
            q = a.next(q, codec.encode(d, e)).unwrap();
            u.push(d);
        }
        let lhs = u128::from(b).pow(v.len() as u32) * i as u128 + value(&v, u64::from(b));
        let rhs = u128::from(m) * value(&u, u64::from(b)) + q as u128;
        ensure!(lhs == rhs, "path arithmetic fails for m={m}, b={b}, i={i}, v={v:?}");
        // any other first component falls off the automaton or breaks the identity
        if !u.is_empty() {
            let mut other = u.clone();
            other[0] = (other[0] + 1) % b;
            let word: Vec<Letter> = other.iter().zip(&v).map(|(&d, &e)| codec.encode(d, e)).collect();
            ensure!(a.run_from(i, &word).unwrap().is_none(), "second completion of v from {i} for m={m}");
        }
    }
    Ok(())
}

/// Accessibility, co-accessibility and disjointness of `A_{m,b}`, the
/// residue automaton and the product; determinism/completeness of the projection.
pub fn check_structure(m: u64, p: u32) -> Check {
    let b = 1u32 << p;
    let amb = build_mult_pair_dfa(m, b).map_err(|e| e.to_string())?;
    ensure!(amb.is_accessible() && amb.is_coaccessible() && disjoint_states(&amb), "A_(m,b) structure, m={m} p={p}");

    let div = build_divisibility_dfa(m, b).map_err(|e| e.to_string())?;
    ensure!(div.is_complete() && div.is_accessible() && div.is_coaccessible(), "residue automaton structure, m={m}");
    if gcd(m, u64::from(b)) == 1 {
        ensure!(disjoint_states(&div), "coprime residue automaton not disjoint, m={m} b={b}");
        ensure!(minimize(&div).state_count() as u64 == m, "coprime residue automaton not minimal, m={m} b={b}");
    }

    let prod = build_product(m, p).map_err(|e| e.to_string())?;
    ensure!(
        prod.is_accessible() && prod.is_coaccessible() && disjoint_states(&prod),
        "product structure, m={m} p={p}"
    );
    let from_0b = product_state_index(m, 0, ParityLetter::B);
    let one_m = rep_pair(1u64, m, Base::power_of_two(p).unwrap()).encoded();
    ensure!(prod.accepts_from(from_0b, &one_m).unwrap(), "rep(1, m) not accepted from (0,B), m={m} p={p}");

    let proj = build_projected_product(m, p).map_err(|e| e.to_string())?;
    ensure!(
        proj.is_complete() && proj.is_accessible() && proj.is_coaccessible(),
        "projected product structure, m={m} p={p}"
    );
    for i in 0..m {
        let t = product_state_index(m, i, ParityLetter::T);
        let bb = product_state_index(m, i, ParityLetter::B);
        ensure!(states_disjoint(&proj, t, bb), "({i},T) and ({i},B) overlap, m={m} p={p}");
    }
    if m % 2 == 1 {
        ensure!(disjoint_states(&proj), "odd m={m} projected product not disjoint");
    }
    Ok(())
}

/// The words `w_j` (and `w_j·rep(m)`) are accepted from residue `j'` of the
/// residue automaton iff `j = j'`; also `p·n ≥ z`.
pub fn check_sigma_witness(m: u64, p: u32) -> Check {
    let (k, z) = odd_part(m);
    if k == 1 {
        ensure!(sigma_witness(m, p).is_err(), "power of two m={m} should have no witness");
        return Ok(());
    }
    let w = sigma_witness(m, p).map_err(|e| e.to_string())?;
    ensure!(u64::from(p) * w.n as u64 >= z, "p·n < z for m={m} p={p}");
    let perm: BTreeSet<u64> = w.sigma.iter().copied().collect();
    ensure!(perm.len() as u64 == k && perm.iter().all(|&s| s < k), "sigma is not a permutation, m={m}");
    let base = Base::power_of_two(p).unwrap();
    let div = build_divisibility_dfa(m, base.radix()).unwrap();
    let rep_m = rep_u64(m, base);
    for j in 0..k as usize {
        let wj = &w.words[j];
        ensure!(wj.len() == w.n, "w_{j} has wrong length");
        ensure!(value(wj.digits(), u64::from(base.radix())) == u128::from(w.sigma[j] << z), "w_{j} has wrong value");
        let extended = wj.concat(&rep_m).unwrap();
        for j2 in 0..k as usize {
            let plain = div.accepts_from(j2, wj.digits()).unwrap();
            let ext = div.accepts_from(j2, extended.digits()).unwrap();
            ensure!(plain == (j == j2), "w_{j} from {j2}: accepted={plain}, m={m} p={p}");
            ensure!(ext == (j == j2), "w_{j}·rep(m) from {j2}: accepted={ext}, m={m} p={p}");
        }
    }
    Ok(())
}

/// `0^{β+1}` is accepted from all of `Γ_β`, from none of `Γ_γ` (`γ > β`)
/// and from no residue class other than `[(0,T)]`.
pub fn check_zero_witnesses(m: u64, p: u32) -> Check {
    let part = build_class_partition(m, p).map_err(|e| e.to_string())?;
    let proj = build_projected_product(m, p).unwrap();
    let tails: Vec<u64> = part
        .classes()
        .iter()
        .filter_map(|(id, _)| if let ClassId::Tail(b) = id { Some(*b) } else { None })
        .collect();
    for &beta in &tails {
        let word = vec![0u32; beta as usize + 1];
        for (id, members) in part.classes() {
            let expected = match id {
                ClassId::Tail(g) if *g == beta => Some(true),
                ClassId::Tail(g) if *g > beta => Some(false),
                ClassId::Tail(_) => None,
                ClassId::Residue { j: 0, parity: ParityLetter::T } => None,
                ClassId::Residue { .. } => Some(false),
            };
            let Some(expected) = expected else { continue };
            for s in members {
                let q = product_state_index(m, s.residue, s.parity);
                let got = proj.accepts_from(q, &word).unwrap();
                ensure!(got == expected, "0^{} from {s} in {id}: {got}, m={m} p={p}", beta + 1);
            }
        }
    }
    Ok(())
}

/// The Hopcroft blocks of the projected product as sets of product states.
pub fn hopcroft_classes(m: u64, p: u32) -> BTreeSet<BTreeSet<ProductState>> {
    let proj = build_projected_product(m, p).unwrap();
    let blocks = state_partition(&proj);
    let mut grouped: Vec<BTreeSet<ProductState>> = vec![BTreeSet::new(); blocks.iter().max().unwrap() + 1];
    for x in [ParityLetter::T, ParityLetter::B] {
        for i in 0..m {
            grouped[blocks[product_state_index(m, i, x)]].insert(ProductState::new(i, x));
        }
    }
    grouped.into_iter().collect()
}

pub fn defined_classes(m: u64, p: u32) -> BTreeSet<BTreeSet<ProductState>> {
    build_class_partition(m, p).unwrap().classes().iter().map(|(_, s)| s.clone()).collect()
}

/// Number of distinct residual languages of a complete automaton's states,
/// each state signed by its acceptance vector over all words of length
/// `≤ depth`. Exact once `depth ≥ state_count - 2`.
pub fn residual_count(a: &Dfa, depth: usize) -> usize {
    let k = a.alphabet_size() as u32;
    let mut words: Vec<Vec<u32>> = vec![vec![]];
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..k {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let reachable = a.accessible_states();
    let signatures: BTreeSet<Vec<bool>> = (0..a.state_count())
        .filter(|&q| reachable[q])
        .map(|q| words.iter().map(|w| a.accepts_from(q, w).unwrap()).collect())
        .collect();
    signatures.len()
}

/// All words over `[0, k)` of length at most `max_len`.
pub fn all_words(k: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..k {
                let mut w2: Vec<u32> = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Minimal complete automaton of `val_2⁻¹({2^n})` = `0*10*`.
pub fn powers_of_two_dfa() -> Dfa {
    // 0: leading zeros, 1: seen the one, 2: sink
    Dfa::from_parts(3, 2, 0, [1], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 2), (2, 0, 2), (2, 1, 2)]).unwrap()
}
