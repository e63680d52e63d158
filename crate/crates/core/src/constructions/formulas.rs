use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::numeration::{decompose, rep_u64, Base, DigitWord};

/// `2k + ⌈z/p⌉` where `m = k·2^z`, `k` odd: the state complexity of `mT` in
/// base `2^p`.
pub fn state_complexity_mt(m: impl Into<BigUint>, p: u32) -> Result<BigUint> {
    Base::power_of_two(p)?;
    let d = decompose(m)?;
    let tails = d.tail_count(p);
    Ok(d.k * 2u32 + tails)
}

fn pow_checked(b: u128, e: u32) -> Result<u128> {
    b.checked_pow(e).ok_or_else(|| Error::Capacity(format!("{b}^{e} overflows")))
}

/// The smallest `α` with `(m − b^α)/gcd(m, b^α) < m/gcd(m, b^{α+1})`.
pub fn mn_threshold(m: u64, b: u32) -> Result<u32> {
    if m == 0 {
        return Err(Error::Domain("the multiple m must be positive".into()));
    }
    Base::new(b)?;
    let (m, b128) = (u128::from(m), u128::from(b));
    // once b^α ≥ m the left side is ≤ 0 and the inequality holds
    for alpha in 0..=128u32 {
        let pa = pow_checked(b128, alpha)?;
        let pa1 = pow_checked(b128, alpha + 1)?;
        let (ga, ga1) = (m.gcd(&pa) as i128, m.gcd(&pa1) as i128);
        let lhs = (m as i128 - pa as i128) * ga1;
        let rhs = m as i128 * ga;
        if lhs < rhs {
            return Ok(alpha);
        }
        if pa > m {
            break;
        }
    }
    Err(Error::Invariant(format!("no threshold found for m = {m}, b = {b}")))
}

/// State complexity of `mℕ` in base `b`:
/// `m/gcd(m, b^N) + Σ_{t<N} b^t/gcd(m, b^t)`.
pub fn state_complexity_mn(m: u64, b: u32) -> Result<u64> {
    let n = mn_threshold(m, b)?;
    let (m128, b128) = (u128::from(m), u128::from(b));
    let mut total = m128 / m128.gcd(&pow_checked(b128, n)?);
    for t in 0..n {
        let bt = pow_checked(b128, t)?;
        total += bt / m128.gcd(&bt);
    }
    u64::try_from(total).map_err(|_| Error::Capacity("state complexity overflows 64 bits".into()))
}

/// The permutation `σ(j) = −j·2^{pn−z} mod k` and the length-`n` words
/// `w_j` representing `σ(j)·2^z` in base `2^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaWitness {
    pub k: u64,
    pub z: u64,
    pub p: u32,
    pub n: usize,
    pub sigma: Vec<u64>,
    pub words: Vec<DigitWord>,
}

pub fn sigma_witness(m: u64, p: u32) -> Result<SigmaWitness> {
    let base = Base::power_of_two(p)?;
    let d = decompose(m)?;
    let k = d.k_u64().expect("odd part of a u64 fits");
    let z = d.z;
    if k == 1 {
        return Err(Error::Domain(format!(
            "m = {m} is a power of two: there are no residue classes with j ≥ 1"
        )));
    }
    let n = rep_u64((k - 1) << z, base).len();
    let bits = u64::from(p) * n as u64;
    if bits < z {
        return Err(Error::Invariant(format!("p·n = {bits} < z = {z} for m = {m}, p = {p}")));
    }
    let shift = BigUint::from(2u32).modpow(&BigUint::from(bits - z), &BigUint::from(k));
    let shift = u64::try_from(shift).expect("reduced modulo k");
    let sigma: Vec<u64> = (0..k)
        .map(|j| {
            let prod = (u128::from(j) * u128::from(shift) % u128::from(k)) as u64;
            (k - prod) % k
        })
        .collect();
    let words = sigma.iter().map(|&s| rep_u64(s << z, base).padded(n)).collect();
    Ok(SigmaWitness { k, z, p, n, sigma, words })
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// `M·k + ⌈z/p⌉` with `m = k·q^z`, `gcd(k, q) = 1`. Exploratory only.
pub fn conjecture_formula(m: u64, q: u64, p: u32, modulus: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::Domain(format!("q = {q} is not prime")));
    }
    if m == 0 || p == 0 {
        return Err(Error::Domain("m and p must be positive".into()));
    }
    let (k, z) = split_prime_power(m, q);
    modulus
        .checked_mul(k)
        .and_then(|x| x.checked_add(z.div_ceil(u64::from(p))))
        .ok_or_else(|| Error::Capacity("conjectured value overflows".into()))
}

/// `(k, z)` with `m = k·q^z` and `q ∤ k`.
pub fn split_prime_power(mut m: u64, q: u64) -> (u64, u64) {
    let mut z = 0;
    while m.is_multiple_of(q) {
        m /= q;
        z += 1;
    }
    (m, z)
}
