//! Positional numeration in an integer base: MSD-first digit words,
//! padded pairs of expansions, Thue-Morse membership and the `m = k·2^z`
//! decomposition.
//!
//! Words are always read most significant digit first. Values go through
//! [`BigUint`] because the decision procedure produces multiples far beyond
//! 64 bits; `*_u64` variants exist for the exhaustive small-range loops.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Digit = u32;

/// A numeration base `b ≥ 2`, remembering `p` when `b = 2^p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Base {
    radix: u32,
    power_of_two: Option<u32>,
}

impl Base {
    pub fn new(radix: u32) -> Result<Self> {
        if radix < 2 {
            return Err(Error::Domain(format!("base must be at least 2, got {radix}")));
        }
        let power_of_two = radix.is_power_of_two().then(|| radix.trailing_zeros());
        Ok(Base { radix, power_of_two })
    }

    /// The base `2^p`.
    pub fn power_of_two(p: u32) -> Result<Self> {
        if p == 0 || p > 16 {
            return Err(Error::Domain(format!("exponent p must lie in [1, 16], got {p}")));
        }
        Ok(Base { radix: 1 << p, power_of_two: Some(p) })
    }

    pub fn radix(self) -> u32 {
        self.radix
    }

    /// `Some(p)` when the base is `2^p`.
    pub fn exponent(self) -> Option<u32> {
        self.power_of_two
    }

    pub fn check_digit(self, digit: Digit) -> Result<()> {
        if digit < self.radix {
            Ok(())
        } else {
            Err(Error::InvalidDigit { digit, base: self.radix })
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.radix)
    }
}

/// A word over `[0, b-1]`, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    digits: Vec<Digit>,
    base: Base,
}

impl DigitWord {
    pub fn new(digits: Vec<Digit>, base: Base) -> Result<Self> {
        for &d in &digits {
            base.check_digit(d)?;
        }
        Ok(DigitWord { digits, base })
    }

    pub fn empty(base: Base) -> Self {
        DigitWord { digits: Vec::new(), base }
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.digits
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self) -> BigUint {
        horner(&self.digits, self.base)
    }

    /// Left-pads with zeros up to `len`; longer words are returned unchanged.
    pub fn padded(&self, len: usize) -> DigitWord {
        let pad = len.saturating_sub(self.digits.len());
        let mut digits = vec![0; pad];
        digits.extend_from_slice(&self.digits);
        DigitWord { digits, base: self.base }
    }

    /// Drops leading zeros, yielding the canonical expansion of the value.
    pub fn stripped(&self) -> DigitWord {
        let start = self.digits.iter().position(|&d| d != 0).unwrap_or(self.digits.len());
        DigitWord { digits: self.digits[start..].to_vec(), base: self.base }
    }

    pub fn concat(&self, other: &DigitWord) -> Result<DigitWord> {
        if self.base != other.base {
            return Err(Error::Domain(format!(
                "cannot concatenate words over bases {} and {}",
                self.base, other.base
            )));
        }
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Ok(DigitWord { digits, base: self.base })
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return write!(f, "ε");
        }
        let sep = if self.base.radix > 10 { "." } else { "" };
        let parts: Vec<String> = self.digits.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// A word over `A_b × A_b`; both components have equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairWord {
    letters: Vec<(Digit, Digit)>,
    base: Base,
}

impl PairWord {
    pub fn new(letters: Vec<(Digit, Digit)>, base: Base) -> Result<Self> {
        for &(d, e) in &letters {
            base.check_digit(d)?;
            base.check_digit(e)?;
        }
        Ok(PairWord { letters, base })
    }

    /// Zips two words of equal length.
    pub fn zip(first: &DigitWord, second: &DigitWord) -> Result<Self> {
        if first.base != second.base || first.len() != second.len() {
            return Err(Error::Domain("pair components must share base and length".into()));
        }
        let letters = first.digits.iter().copied().zip(second.digits.iter().copied()).collect();
        Ok(PairWord { letters, base: first.base })
    }

    pub fn letters(&self) -> &[(Digit, Digit)] {
        &self.letters
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> DigitWord {
        DigitWord { digits: self.letters.iter().map(|l| l.0).collect(), base: self.base }
    }

    pub fn second(&self) -> DigitWord {
        DigitWord { digits: self.letters.iter().map(|l| l.1).collect(), base: self.base }
    }

    /// Letters as pair-alphabet indices `d·b + e`.
    pub fn encoded(&self) -> Vec<Digit> {
        let b = self.base.radix;
        self.letters.iter().map(|&(d, e)| d * b + e).collect()
    }
}

fn horner(digits: &[Digit], base: Base) -> BigUint {
    digits.iter().fold(BigUint::zero(), |acc, &d| acc * base.radix + d)
}

/// Canonical expansion of `n`; `rep(0)` is the empty word.
pub fn rep(n: impl Into<BigUint>, base: Base) -> DigitWord {
    let mut n: BigUint = n.into();
    let radix = BigUint::from(base.radix);
    let mut digits = Vec::new();
    while !n.is_zero() {
        let (q, r) = n.div_rem(&radix);
        digits.push(r.to_u32().expect("remainder below radix"));
        n = q;
    }
    digits.reverse();
    DigitWord { digits, base }
}

pub fn rep_u64(mut n: u64, base: Base) -> DigitWord {
    let radix = u64::from(base.radix);
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % radix) as Digit);
        n /= radix;
    }
    digits.reverse();
    DigitWord { digits, base }
}

pub fn val(digits: &[Digit], base: Base) -> Result<BigUint> {
    for &d in digits {
        base.check_digit(d)?;
    }
    Ok(horner(digits, base))
}

pub fn val_u64(digits: &[Digit], base: Base) -> Result<u64> {
    let mut acc: u64 = 0;
    for &d in digits {
        base.check_digit(d)?;
        acc = acc
            .checked_mul(u64::from(base.radix))
            .and_then(|x| x.checked_add(u64::from(d)))
            .ok_or_else(|| Error::Capacity("value does not fit in 64 bits".into()))?;
    }
    Ok(acc)
}

/// Expansions of `a` and `n`, both zero-padded to the longer length.
pub fn rep_pair(a: impl Into<BigUint>, n: impl Into<BigUint>, base: Base) -> PairWord {
    let first = rep(a, base);
    let second = rep(n, base);
    let len = first.len().max(second.len());
    PairWord::zip(&first.padded(len), &second.padded(len)).expect("padded to equal length")
}

/// Membership in the Thue-Morse set: even number of ones in binary.
pub fn thue_member(n: u64) -> bool {
    n.count_ones().is_multiple_of(2)
}

pub fn thue_member_big(n: &BigUint) -> bool {
    n.count_ones().is_multiple_of(2)
}

/// The two states of the Thue-Morse automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityLetter {
    T,
    B,
}

impl ParityLetter {
    pub fn flip(self) -> Self {
        match self {
            ParityLetter::T => ParityLetter::B,
            ParityLetter::B => ParityLetter::T,
        }
    }

    /// `X_n`: unchanged when `n` is in the Thue-Morse set, flipped otherwise.
    pub fn apply(self, n: u64) -> Self {
        if thue_member(n) {
            self
        } else {
            self.flip()
        }
    }

    pub fn apply_big(self, n: &BigUint) -> Self {
        if thue_member_big(n) {
            self
        } else {
            self.flip()
        }
    }

    /// T is 0, B is 1.
    pub fn index(self) -> usize {
        match self {
            ParityLetter::T => 0,
            ParityLetter::B => 1,
        }
    }

    pub fn from_index(index: usize) -> Option<Self> {
        match index {
            0 => Some(ParityLetter::T),
            1 => Some(ParityLetter::B),
            _ => None,
        }
    }
}

impl fmt::Display for ParityLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParityLetter::T => write!(f, "T"),
            ParityLetter::B => write!(f, "B"),
        }
    }
}

pub fn apply_parity(x: ParityLetter, n: u64) -> ParityLetter {
    x.apply(n)
}

/// `m = k·2^z` with `k` odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultipleDecomposition {
    pub m: BigUint,
    pub k: BigUint,
    pub z: u64,
}

impl MultipleDecomposition {
    /// The odd part, when it fits in 64 bits.
    pub fn k_u64(&self) -> Option<u64> {
        self.k.to_u64()
    }

    /// `⌈z/p⌉`, the number of tail classes in base `2^p`.
    pub fn tail_count(&self, p: u32) -> u64 {
        self.z.div_ceil(u64::from(p))
    }
}

pub fn decompose(m: impl Into<BigUint>) -> Result<MultipleDecomposition> {
    let m: BigUint = m.into();
    let Some(z) = m.trailing_zeros() else {
        return Err(Error::Domain("cannot decompose m = 0".into()));
    };
    let k = &m >> z;
    Ok(MultipleDecomposition { m, k, z })
}

/// Membership in `{n : |rep_b(n)|_c ≡ R (mod M)}`.
pub fn letter_count_member(n: u64, base: Base, c: Digit, modulus: u64, remainder: u64) -> Result<bool> {
    base.check_digit(c)?;
    if modulus < 2 {
        return Err(Error::Domain(format!("modulus must be at least 2, got {modulus}")));
    }
    if remainder >= modulus {
        return Err(Error::Domain(format!("remainder {remainder} must be below modulus {modulus}")));
    }
    let count = rep_u64(n, base).digits().iter().filter(|&&d| d == c).count() as u64;
    Ok(count % modulus == remainder)
}
