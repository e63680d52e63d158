use crate::automata::{determinize, minimize, product, project, trim, Component, Dfa, Letter, PairAlphabetCodec};
use crate::error::{Error, Result};
use crate::numeration::{Base, ParityLetter};

/// Upper bound on `states × letters` for explicitly materialized automata.
pub const MAX_TABLE_CELLS: u64 = 1 << 26;

fn check_cells(states: u64, letters: u64) -> Result<()> {
    match states.checked_mul(letters) {
        Some(cells) if cells <= MAX_TABLE_CELLS => Ok(()),
        _ => Err(Error::Capacity(format!(
            "{states} states over {letters} letters exceeds the explicit-construction bound of {MAX_TABLE_CELLS} cells"
        ))),
    }
}

fn positive_multiple(m: u64) -> Result<()> {
    if m == 0 {
        Err(Error::Domain("the multiple m must be positive".into()))
    } else {
        Ok(())
    }
}

/// Index of the product state `(i, X)` in the explicit `2m`-state automata.
pub fn product_state_index(m: u64, residue: u64, parity: ParityLetter) -> usize {
    (residue + m * parity.index() as u64) as usize
}

fn product_labels(m: u64) -> Vec<String> {
    [ParityLetter::T, ParityLetter::B]
        .into_iter()
        .flat_map(|x| (0..m).map(move |i| format!("({i},{x})")))
        .collect()
}

/// The Thue-Morse automaton over `A_{2^p}`: states T (0, initial and final)
/// and B (1), with `δ(X, a) = X_a`.
pub fn build_thue_dfa(p: u32) -> Result<Dfa> {
    let base = Base::power_of_two(p)?;
    let b = base.radix();
    check_cells(2, u64::from(b))?;
    let mut dfa = Dfa::new(2, b as usize, 0)?;
    dfa.set_final(0, true)?;
    for x in [ParityLetter::T, ParityLetter::B] {
        for a in 0..b {
            dfa.set_transition(x.index(), a, x.apply(u64::from(a)).index())?;
        }
    }
    dfa.with_labels(vec!["T".into(), "B".into()])
}

/// `A_{T,2^p}`: the Thue-Morse automaton reading the first component of
/// pair letters and ignoring the second.
pub fn build_thue_pair_dfa(p: u32) -> Result<Dfa> {
    let base = Base::power_of_two(p)?;
    let codec = PairAlphabetCodec::new(base.radix())?;
    check_cells(2, codec.size() as u64)?;
    let mut dfa = Dfa::new(2, codec.size(), 0)?;
    dfa.set_final(0, true)?;
    for x in [ParityLetter::T, ParityLetter::B] {
        for a in 0..base.radix() {
            let target = x.apply(u64::from(a)).index();
            for e in 0..base.radix() {
                dfa.set_transition(x.index(), codec.encode(a, e), target)?;
            }
        }
    }
    dfa.with_labels(vec!["T".into(), "B".into()])
}

/// `A_{m,b}` over `A_b × A_b`: `δ(i, (d, e)) = j ⟺ b·i + e = m·d + j`.
///
/// Partial: exactly one letter `(d, e)` is defined per state and digit `e`.
pub fn build_mult_pair_dfa(m: u64, b: u32) -> Result<Dfa> {
    positive_multiple(m)?;
    let base = Base::new(b)?;
    let codec = PairAlphabetCodec::new(base.radix())?;
    check_cells(m, codec.size() as u64)?;
    let mut dfa = Dfa::new(m as usize, codec.size(), 0)?;
    dfa.set_final(0, true)?;
    let b = u64::from(b);
    for i in 0..m {
        for e in 0..b {
            let t = b * i + e;
            let (d, j) = (t / m, t % m);
            debug_assert!(d < b);
            dfa.set_transition(i as usize, codec.encode(d as u32, e as u32), j as usize)?;
        }
    }
    dfa.with_labels((0..m).map(|i| i.to_string()).collect())
}

/// `Π(A_{m,b})`: the residue automaton `i --e--> (b·i + e) mod m`, accepting
/// the padded expansions of multiples of `m`.
pub fn build_divisibility_dfa(m: u64, b: u32) -> Result<Dfa> {
    positive_multiple(m)?;
    let base = Base::new(b)?;
    check_cells(m, u64::from(base.radix()))?;
    let mut dfa = Dfa::new(m as usize, b as usize, 0)?;
    dfa.set_final(0, true)?;
    let b64 = u64::from(b);
    for i in 0..m {
        for e in 0..b64 {
            dfa.set_transition(i as usize, e as Letter, ((b64 * i + e) % m) as usize)?;
        }
    }
    dfa.with_labels((0..m).map(|i| i.to_string()).collect())
}

/// `A_{m,2^p} × A_{T,2^p}` with states `(i, X)` laid out as
/// [`product_state_index`]. Only `(0, T)` is final.
pub fn build_product(m: u64, p: u32) -> Result<Dfa> {
    positive_multiple(m)?;
    let base = Base::power_of_two(p)?;
    let codec = PairAlphabetCodec::new(base.radix())?;
    check_cells(2 * m, codec.size() as u64)?;
    let b = u64::from(base.radix());
    let mut dfa = Dfa::new(2 * m as usize, codec.size(), 0)?;
    dfa.set_final(0, true)?;
    for x in [ParityLetter::T, ParityLetter::B] {
        for i in 0..m {
            for e in 0..b {
                let t = b * i + e;
                let (d, j) = (t / m, t % m);
                dfa.set_transition(
                    product_state_index(m, i, x),
                    codec.encode(d as u32, e as u32),
                    product_state_index(m, j, x.apply(d)),
                )?;
            }
        }
    }
    dfa.with_labels(product_labels(m))
}

/// `Π(A_{m,2^p} × A_{T,2^p})`: the projected product over `A_{2^p}`, with
/// states laid out as [`product_state_index`].
///
/// Every transition is derived by searching all `d` with
/// `2^p·i + e = m·d + j`, `0 ≤ j < m`; more than one solution would make the
/// projection nondeterministic and is reported as an invariant violation.
pub fn build_projected_product(m: u64, p: u32) -> Result<Dfa> {
    positive_multiple(m)?;
    let base = Base::power_of_two(p)?;
    check_cells(2 * m, u64::from(base.radix()))?;
    let b = u64::from(base.radix());
    let mut dfa = Dfa::new(2 * m as usize, b as usize, 0)?;
    dfa.set_final(0, true)?;
    for x in [ParityLetter::T, ParityLetter::B] {
        for i in 0..m {
            let from = product_state_index(m, i, x);
            for e in 0..b {
                let total = b * i + e;
                let mut found = None;
                for d in 0..b {
                    let Some(j) = total.checked_sub(m * d).filter(|&j| j < m) else {
                        continue;
                    };
                    let to = product_state_index(m, j, x.apply(d));
                    if found.replace(to).is_some() {
                        return Err(Error::Invariant(format!(
                            "projected product is nondeterministic at ({i},{x}) on letter {e}"
                        )));
                    }
                }
                let to = found.ok_or_else(|| {
                    Error::Invariant(format!("projected product is incomplete at ({i},{x}) on letter {e}"))
                })?;
                dfa.set_transition(from, e as Letter, to)?;
            }
        }
    }
    dfa.with_labels(product_labels(m))
}

/// Counter automaton for `{n : |rep_b(n)|_c ≡ R (mod M)}`.
///
/// Only `c ≠ 0` is supported: leading zeros would otherwise change the
/// count of padded words, and the automaton would not accept `val⁻¹` of the set.
pub fn build_letter_count_dfa(b: u32, c: u32, modulus: u64, remainder: u64) -> Result<Dfa> {
    let base = Base::new(b)?;
    base.check_digit(c)?;
    if c == 0 {
        return Err(Error::Unsupported(
            "digit c = 0 is not supported: zero padding changes the number of occurrences".into(),
        ));
    }
    if modulus < 2 {
        return Err(Error::Domain(format!("modulus must be at least 2, got {modulus}")));
    }
    if remainder >= modulus {
        return Err(Error::Domain(format!("remainder {remainder} must be below modulus {modulus}")));
    }
    check_cells(modulus, u64::from(b))?;
    let mut dfa = Dfa::new(modulus as usize, b as usize, 0)?;
    dfa.set_final(remainder as usize, true)?;
    for s in 0..modulus as usize {
        for a in 0..b {
            let t = if a == c { (s + 1) % modulus as usize } else { s };
            dfa.set_transition(s, a, t)?;
        }
    }
    dfa.with_labels((0..modulus).map(|s| s.to_string()).collect())
}

/// Lifts an automaton over `A_b` to `A_b × A_b`, reading first components.
pub fn lift_to_pairs(set_dfa: &Dfa, b: u32) -> Result<Dfa> {
    let codec = PairAlphabetCodec::new(b)?;
    if set_dfa.alphabet_size() != b as usize {
        return Err(Error::AlphabetMismatch { left: set_dfa.alphabet_size(), right: b as usize });
    }
    check_cells(set_dfa.state_count() as u64, codec.size() as u64)?;
    let transitions = set_dfa
        .transitions()
        .flat_map(|(q, d, t)| (0..b).map(move |e| (q, codec.encode(d, e), t)));
    let lifted = Dfa::from_parts(
        set_dfa.state_count(),
        codec.size(),
        set_dfa.initial(),
        set_dfa.finals(),
        transitions,
    )?;
    match set_dfa.labels() {
        Some(labels) => lifted.with_labels(labels.to_vec()),
        None => Ok(lifted),
    }
}

/// `A_{m,b} × A_{X,b}` for the set recognized by `set_dfa`, taken trim.
pub fn build_multiple_of_set_product(set_dfa: &Dfa, m: u64, b: u32) -> Result<Dfa> {
    let lifted = lift_to_pairs(&trim(set_dfa), b)?;
    product(&build_mult_pair_dfa(m, b)?, &lifted)
}

/// Minimal complete automaton of `val_b⁻¹(m·X)`: product with `A_{m,b}`,
/// projection onto the second component, subset construction, minimization.
pub fn build_multiple_of_set_dfa(set_dfa: &Dfa, m: u64, b: u32) -> Result<Dfa> {
    let prod = build_multiple_of_set_product(set_dfa, m, b)?;
    let projected = project(&prod, Component::Second, PairAlphabetCodec::new(b)?)?;
    Ok(minimize(&determinize(&projected)?))
}
