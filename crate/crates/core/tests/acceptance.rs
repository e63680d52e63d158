//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod support;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thuemult::automata::{complete, isomorphic, minimize, product, trim, Dfa};
use thuemult::constructions::{
    build_class_partition, build_minimal_mt_direct, build_multiple_of_set_dfa, build_mult_pair_dfa,
    build_projected_product, lift_to_pairs, state_complexity_mn, ClassId, ProductState,
};
use thuemult::decision::{decide_multiple_of_thue, DecisionResult};
use thuemult::numeration::{Base, ParityLetter};
use thuemult::oracle::{conjecture_scan, verify_dfa_against_set};

use support::*;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn minimal_count_sweep() -> Outcome {
    let mut checked = 0;
    for m in 1..=64u64 {
        for p in 1..=3u32 {
            let got = minimize(&build_projected_product(m, p).map_err(|e| e.to_string())?).state_count() as u64;
            let want = expected_complexity(m, p);
            if got != want {
                return Err(format!("m={m} p={p}: minimized {got}, expected {want}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (m, p) pairs"))
}

fn example_partition() -> Outcome {
    use ParityLetter::{B, T};
    let set = |xs: &[(u64, ParityLetter)]| xs.iter().map(|&(i, x)| ProductState::new(i, x)).collect::<BTreeSet<_>>();
    let residue = |j, parity| ClassId::Residue { j, parity };
    let expected = vec![
        (residue(0, T), set(&[(0, T)])),
        (residue(1, T), set(&[(1, T), (4, B), (7, B), (10, T), (13, B), (16, T), (19, T), (22, B)])),
        (residue(2, T), set(&[(2, T), (5, B), (8, B), (11, T), (14, B), (17, T), (20, T), (23, B)])),
        (residue(0, B), set(&[(0, B), (3, T), (6, T), (9, B), (12, T), (15, B), (18, B), (21, T)])),
        (residue(1, B), set(&[(1, B), (4, T), (7, T), (10, B), (13, T), (16, B), (19, B), (22, T)])),
        (residue(2, B), set(&[(2, B), (5, T), (8, T), (11, B), (14, T), (17, B), (20, B), (23, T)])),
        (ClassId::Tail(0), set(&[(6, B), (12, B), (18, T)])),
        (ClassId::Tail(1), set(&[(3, B), (9, T), (15, T), (21, B)])),
    ];
    let part = build_class_partition(24, 2).map_err(|e| e.to_string())?;
    if part.len() != expected.len() {
        return Err(format!("{} classes, expected {}", part.len(), expected.len()));
    }
    for (id, members) in &expected {
        match part.class(*id) {
            Some(got) if got == members => {}
            other => return Err(format!("{id}: got {other:?}")),
        }
    }
    Ok("8 classes match".into())
}

fn odd_multiples() -> Outcome {
    let mut checked = 0;
    for m in (1..=99u64).step_by(2) {
        for p in 1..=2u32 {
            let got = minimize(&build_projected_product(m, p).map_err(|e| e.to_string())?).state_count() as u64;
            if got != 2 * m {
                return Err(format!("m={m} p={p}: {got} states"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (m, p) pairs"))
}

fn direct_matches_minimized() -> Outcome {
    for m in 1..=64u64 {
        for p in 1..=3u32 {
            let direct = build_minimal_mt_direct(&BigUint::from(m), p).map_err(|e| e.to_string())?;
            let minimized = minimize(&build_projected_product(m, p).map_err(|e| e.to_string())?);
            if !isomorphic(&direct, &minimized) {
                return Err(format!("m={m} p={p}: not isomorphic"));
            }
        }
    }
    Ok("192 isomorphisms".into())
}

fn partition_is_nerode() -> Outcome {
    for m in 1..=64u64 {
        for p in 1..=3u32 {
            let hopcroft = hopcroft_classes(m, p);
            let defined = defined_classes(m, p);
            if hopcroft != defined {
                return Err(format!("m={m} p={p}: {} Hopcroft blocks vs {} classes", hopcroft.len(), defined.len()));
            }
            check_zero_witnesses(m, p)?;
        }
    }
    Ok("192 partitions equal".into())
}

fn mn_formula_sweep() -> Outcome {
    let mut mismatches = Vec::new();
    for m in 1..=50u64 {
        for b in [2u32, 3, 4, 5, 8, 10] {
            let formula = state_complexity_mn(m, b).map_err(|e| e.to_string())?;
            let div = thuemult::constructions::build_divisibility_dfa(m, b).map_err(|e| e.to_string())?;
            let oracle = minimize(&complete(&div)).state_count() as u64;
            if formula != oracle {
                mismatches.push(format!("m={m} b={b}: formula {formula}, oracle {oracle}"));
            }
        }
    }
    if mismatches.is_empty() {
        Ok("300 (m, b) pairs".into())
    } else {
        Err(format!("transcription flag, {} mismatches: {}", mismatches.len(), mismatches.join("; ")))
    }
}

fn mutate(a: &Dfa, rng: &mut ChaCha8Rng) -> (Dfa, String) {
    let mut out = a.clone();
    let q = rng.gen_range(0..a.state_count());
    if rng.gen_bool(0.5) {
        out.set_final(q, !a.is_final(q)).unwrap();
        (out, format!("flip final {q}"))
    } else {
        let letter = rng.gen_range(0..a.alphabet_size() as u32);
        let old = a.next(q, letter).unwrap();
        let mut target = rng.gen_range(0..a.state_count() - 1);
        if target >= old {
            target += 1;
        }
        out.set_transition(q, letter, target).unwrap();
        (out, format!("redirect {q} --{letter}--> {target} (was {old})"))
    }
}

fn decision_round_trip() -> Outcome {
    for m in 1..=64u64 {
        for p in 1..=2u32 {
            let a = build_minimal_mt_direct(&BigUint::from(m), p).map_err(|e| e.to_string())?;
            let got = decide_multiple_of_thue(&a, p).map_err(|e| e.to_string())?.result;
            if got != DecisionResult::Multiple(BigUint::from(m)) {
                return Err(format!("m={m} p={p}: decided {got}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7475_6e65);
    let mut rejected = 0;
    for _ in 0..50 {
        let m = rng.gen_range(1..=64u64);
        let p = rng.gen_range(1..=2u32);
        let a = build_minimal_mt_direct(&BigUint::from(m), p).map_err(|e| e.to_string())?;
        let (mutant, how) = mutate(&a, &mut rng);
        let got = decide_multiple_of_thue(&mutant, p).map_err(|e| e.to_string())?.result;
        if got == DecisionResult::Multiple(BigUint::from(m)) {
            return Err(format!("mutant of m={m} p={p} ({how}) still decided as m={m}"));
        }
        if got == DecisionResult::NotAMultiple {
            rejected += 1;
        }
    }
    Ok(format!("128 round trips, 50 mutants ({rejected} not-a-multiple)"))
}

fn brute_force_language() -> Outcome {
    let mut words = 0;
    for m in [1u64, 3, 6, 12, 24] {
        for p in 1..=2u32 {
            let a = build_minimal_mt_direct(&BigUint::from(m), p).map_err(|e| e.to_string())?;
            let base = Base::power_of_two(p).unwrap();
            let member = |n: u64| n.is_multiple_of(m) && popcount_even(n / m);
            let report = verify_dfa_against_set(&a, member, base, 1 << 14).map_err(|e| e.to_string())?;
            if !report.passed() {
                return Err(format!("m={m} p={p}: {report}"));
            }
            words += report.checked;
        }
    }
    Ok(format!("{words} words"))
}

fn lemma_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in 1..=3u32 {
        check_pair_parity(p, &mut rng, 300)?;
    }
    for m in 1..=64u64 {
        for p in 1..=3u32 {
            check_mult_pair(m, 1 << p, &mut rng, 20)?;
            check_structure(m, p)?;
            check_sigma_witness(m, p)?;
        }
    }
    Ok("192 (m, p) pairs, zero violations".into())
}

fn powers_of_two_product() -> Outcome {
    let set = powers_of_two_dfa();
    let prod = product(&build_mult_pair_dfa(3, 2).unwrap(), &lift_to_pairs(&trim(&set), 2).unwrap())
        .map_err(|e| e.to_string())?;
    let minimized = build_multiple_of_set_dfa(&set, 3, 2).map_err(|e| e.to_string())?;
    let report = verify_dfa_against_set(
        &minimized,
        |n| n % 3 == 0 && (n / 3).is_power_of_two(),
        Base::new(2).unwrap(),
        1 << 14,
    )
    .map_err(|e| e.to_string())?;
    if !report.passed() {
        return Err(format!("minimized automaton is wrong: {report}"));
    }
    let detail = format!("product {} states, minimized {}", prod.state_count(), minimized.state_count());
    if prod.state_count() == 6 && minimized.state_count() < 6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn conjecture() -> Outcome {
    let rows = conjecture_scan(2, 1, 1, 2, 0, 32).map_err(|e| e.to_string())?;
    if let Some(r) = rows.iter().find(|r| !r.agree) {
        return Err(format!("m={}: measured {}, conjectured {}", r.m, r.measured, r.conjectured));
    }
    let mut notes = Vec::new();
    for (q, p, c, modulus, m_max) in [(3u64, 1u32, 1u32, 2u64, 24u64), (3, 1, 2, 3, 18), (5, 1, 1, 2, 15), (2, 2, 1, 3, 16)] {
        let rows = conjecture_scan(q, p, c, modulus, 0, m_max).map_err(|e| e.to_string())?;
        let agree = rows.iter().filter(|r| r.agree).count();
        notes.push(format!("q={q} p={p} c={c} M={modulus}: {agree}/{} agree", rows.len()));
    }
    Ok(format!("32/32 agree; report only: {}", notes.join(", ")))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "minimal state count 2k + ceil(z/p)", budget: secs(10), run: minimal_count_sweep },
        Criterion { name: "class partition for m=24, p=2", budget: None, run: example_partition },
        Criterion { name: "odd m has 2m states", budget: secs(10), run: odd_multiples },
        Criterion { name: "direct minimal automaton is isomorphic", budget: secs(10), run: direct_matches_minimized },
        Criterion { name: "Hopcroft partition equals the classes", budget: None, run: partition_is_nerode },
        Criterion { name: "state complexity of mN in base b", budget: secs(5), run: mn_formula_sweep },
        Criterion { name: "decision round trip and mutants", budget: secs(30), run: decision_round_trip },
        Criterion { name: "brute-force language check", budget: secs(30), run: brute_force_language },
        Criterion { name: "lemma and proposition suite", budget: None, run: lemma_suite },
        Criterion { name: "multiples of powers of two", budget: None, run: powers_of_two_product },
        Criterion { name: "conjecture scan", budget: None, run: conjecture },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(budget)) = (&outcome, c.budget) {
            if elapsed > budget {
                outcome = Err(format!("{detail}, but took {elapsed:.2?} (budget {budget:?})"));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!("{tag} {:>2} {}: {detail} [{elapsed:.2?}]", i + 1, c.name);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
