//! Ground truth that does not depend on the constructions: integer
//! arithmetic membership, exhaustive acceptance checks, and reports that put
//! each closed-form state complexity next to a Hopcroft-minimized count.

use std::fmt;
use std::io::Write;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::automata::{complete, isomorphic, minimize, state_partition, Dfa, Letter};
use crate::constructions::{
    build_divisibility_dfa, build_letter_count_dfa, build_minimal_mt_direct, build_multiple_of_set_dfa,
    build_projected_product, conjecture_formula, state_complexity_mn, state_complexity_mt,
};
use crate::error::{Error, Result};
use crate::numeration::{rep_u64, thue_member, Base};

/// `n ∈ mT` by integer arithmetic. With `m = 0` the set is `{0}`.
pub fn brute_membership_mt(n: u64, m: u64) -> bool {
    if m == 0 {
        return n == 0;
    }
    n.is_multiple_of(m) && thue_member(n / m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub value: u64,
    pub padding: usize,
    pub word: Vec<Letter>,
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "ok: {} words checked", self.checked),
            Some(c) => write!(
                f,
                "counterexample: value {} with {} leading zeros, word {:?}, expected {}",
                c.value,
                c.padding,
                c.word,
                if c.expected { "accept" } else { "reject" }
            ),
        }
    }
}

/// Checks `accepts(0^j·rep_b(n)) ⟺ membership(n)` for all `n ≤ max_value`,
/// `j ∈ {0, 1, 2}`; stops at the first disagreement.
pub fn verify_dfa_against_set(
    a: &Dfa,
    membership: impl Fn(u64) -> bool,
    base: Base,
    max_value: u64,
) -> Result<VerificationReport> {
    if a.alphabet_size() != base.radix() as usize {
        return Err(Error::AlphabetMismatch { left: a.alphabet_size(), right: base.radix() as usize });
    }
    let mut checked = 0;
    for value in 0..=max_value {
        let expected = membership(value);
        let digits = rep_u64(value, base);
        for padding in 0..=2 {
            let word = digits.padded(digits.len() + padding).into_digits();
            checked += 1;
            if a.accepts(&word)? != expected {
                return Ok(VerificationReport {
                    checked,
                    counterexample: Some(Counterexample { value, padding, word, expected }),
                });
            }
        }
    }
    Ok(VerificationReport { checked, counterexample: None })
}

/// Reading a leading 0 from the initial state leads to an equivalent state,
/// so every accepted language is closed under zero padding.
pub fn padding_invariant(a: &Dfa) -> bool {
    let c = complete(a);
    let blocks = state_partition(&c);
    let after_zero = c.next(c.initial(), 0).expect("complete");
    blocks[after_zero] == blocks[c.initial()]
}

/// One row of a formula-versus-oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub m: u64,
    pub base: u32,
    pub p: Option<u32>,
    #[serde(rename = "formula")]
    pub formula_value: u64,
    #[serde(rename = "oracle")]
    pub oracle_value: u64,
    #[serde(rename = "direct")]
    pub direct_value: Option<u64>,
    pub isomorphic: Option<bool>,
    pub pass: bool,
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} base={}", self.m, self.base)?;
        if let Some(p) = self.p {
            write!(f, " p={p}")?;
        }
        write!(f, ": formula={} oracle={}", self.formula_value, self.oracle_value)?;
        if let Some(d) = self.direct_value {
            write!(f, " direct={d}")?;
        }
        if let Some(i) = self.isomorphic {
            write!(f, " isomorphic={i}")?;
        }
        write!(f, " {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn small(value: BigUint) -> Result<u64> {
    value.to_u64().ok_or_else(|| Error::Capacity(format!("{value} does not fit in 64 bits")))
}

/// Compares `2k + ⌈z/p⌉`, the minimized projected product and the direct
/// minimal automaton.
pub fn cross_check_mt(m: u64, p: u32) -> Result<CrossCheckReport> {
    cross_check_mt_with(m, p, |m, p| small(state_complexity_mt(m, p)?))
}

/// [`cross_check_mt`] with a substitute formula.
pub fn cross_check_mt_with(m: u64, p: u32, formula: impl Fn(u64, u32) -> Result<u64>) -> Result<CrossCheckReport> {
    let formula_value = formula(m, p)?;
    let oracle = minimize(&build_projected_product(m, p)?);
    let direct = build_minimal_mt_direct(&BigUint::from(m), p)?;
    let iso = isomorphic(&oracle, &direct);
    let oracle_value = oracle.state_count() as u64;
    let direct_value = direct.state_count() as u64;
    Ok(CrossCheckReport {
        m,
        base: 1 << p,
        p: Some(p),
        formula_value,
        oracle_value,
        direct_value: Some(direct_value),
        isomorphic: Some(iso),
        pass: iso && formula_value == oracle_value && oracle_value == direct_value,
    })
}

/// Compares the state complexity formula for `mℕ` with the minimized
/// completed divisibility automaton.
pub fn cross_check_mn(m: u64, b: u32) -> Result<CrossCheckReport> {
    cross_check_mn_with(m, b, state_complexity_mn)
}

pub fn cross_check_mn_with(m: u64, b: u32, formula: impl Fn(u64, u32) -> Result<u64>) -> Result<CrossCheckReport> {
    let formula_value = formula(m, b)?;
    let oracle_value = minimize(&complete(&build_divisibility_dfa(m, b)?)).state_count() as u64;
    Ok(CrossCheckReport {
        m,
        base: b,
        p: None,
        formula_value,
        oracle_value,
        direct_value: None,
        isomorphic: None,
        pass: formula_value == oracle_value,
    })
}

pub fn run_mt_suite(m_max: u64, p_max: u32) -> Result<Vec<CrossCheckReport>> {
    let mut rows = Vec::new();
    for m in 1..=m_max {
        for p in 1..=p_max {
            rows.push(cross_check_mt(m, p)?);
        }
    }
    Ok(rows)
}

pub fn run_mn_suite(m_max: u64, bases: &[u32]) -> Result<Vec<CrossCheckReport>> {
    let mut rows = Vec::new();
    for m in 1..=m_max {
        for &b in bases {
            rows.push(cross_check_mn(m, b)?);
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub m: u64,
    pub measured: u64,
    pub conjectured: u64,
    pub agree: bool,
}

/// Measures the state complexity of `m·X_{q^p,c,M,R}` for `m ≤ m_max` and
/// sets it beside `M·k + ⌈z/p⌉`. Never fails on disagreement.
pub fn conjecture_scan(q: u64, p: u32, c: u32, modulus: u64, remainder: u64, m_max: u64) -> Result<Vec<ConjectureRow>> {
    // validates primality before anything is built
    conjecture_formula(1, q, p, modulus)?;
    let b = u32::try_from(q)
        .ok()
        .and_then(|q| q.checked_pow(p))
        .ok_or_else(|| Error::Capacity(format!("base {q}^{p} is too large")))?;
    let set = build_letter_count_dfa(b, c, modulus, remainder)?;
    (1..=m_max)
        .map(|m| {
            let measured = build_multiple_of_set_dfa(&set, m, b)?.state_count() as u64;
            let conjectured = conjecture_formula(m, q, p, modulus)?;
            Ok(ConjectureRow { m, measured, conjectured, agree: measured == conjectured })
        })
        .collect()
}

/// Writes rows as CSV with a header line.
pub fn write_csv<T: Serialize>(rows: &[T], out: impl Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::Io(e.to_string()))
}
