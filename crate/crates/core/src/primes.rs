//! Small-prime utilities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// All primes `≤ n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut limit = 64u64;
    loop {
        let ps = primes_up_to(limit);
        if ps.len() >= count {
            return ps[..count].to_vec();
        }
        limit *= 2;
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest trial-division bound accepted by [`squareful_primes`].
pub const TRIAL_DIVISION_CEILING: u64 = 5_000_000;

/// Primes `p` with `p² | n`, ascending.
///
/// Trial division up to `⌊∛|n|⌋`; what remains has at most two prime factors
/// and is squareful only when it is a perfect square.
pub fn squareful_primes(n: &BigInt) -> Result<Vec<u64>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(Error::InvalidInput("zero has no prime factorisation".into()));
    }
    let cbrt = m.cbrt().to_u64().unwrap_or(u64::MAX);
    if cbrt > TRIAL_DIVISION_CEILING {
        return Err(Error::Capacity {
            what: "trial division bound for the discriminant",
            needed: cbrt,
            ceiling: TRIAL_DIVISION_CEILING,
        });
    }
    let mut out = Vec::new();
    for p in primes_up_to(cbrt + 1) {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e >= 2 {
            out.push(p);
        }
        if m.is_one() {
            break;
        }
    }
    if m > BigInt::one() {
        let r = m.sqrt();
        if &r * &r == m {
            let r = r.to_u64().ok_or(Error::Capacity {
                what: "prime factor size",
                needed: u64::MAX,
                ceiling: u64::MAX,
            })?;
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Distinct prime divisors of `n` (which must fully factor by trial division
/// up to [`TRIAL_DIVISION_CEILING`] plus one large cofactor prime).
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(Error::InvalidInput("zero has no prime factorisation".into()));
    }
    let mut out = Vec::new();
    let limit = m.sqrt().to_u64().unwrap_or(u64::MAX).min(TRIAL_DIVISION_CEILING);
    for p in primes_up_to(limit + 1) {
        let bp = BigInt::from(p);
        if (&m % &bp).is_zero() {
            out.push(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        if m.is_one() {
            return Ok(out);
        }
    }
    if m > BigInt::one() {
        match m.to_u64() {
            Some(q) if is_prime(q) => out.push(q),
            _ => {
                return Err(Error::Capacity {
                    what: "factorisation of the discriminant",
                    needed: m.bits(),
                    ceiling: 64,
                })
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_primality_agree() {
        let ps = primes_up_to(2000);
        for n in 0..2000u64 {
            assert_eq!(ps.binary_search(&n).is_ok(), is_prime(n), "n = {n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert_eq!(first_primes(25).last(), Some(&97));
    }

    #[test]
    fn squareful_examples() {
        assert_eq!(squareful_primes(&BigInt::from(-2012)).unwrap(), vec![2]);
        assert_eq!(squareful_primes(&BigInt::from(-108)).unwrap(), vec![2, 3]);
        assert_eq!(squareful_primes(&BigInt::from(-23)).unwrap(), Vec::<u64>::new());
        // large square cofactor
        let n = BigInt::from(7919u64 * 7919 * 3);
        assert_eq!(squareful_primes(&n).unwrap(), vec![7919]);
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(prime_divisors(&BigInt::from(-108)).unwrap(), vec![2, 3]);
        assert_eq!(prime_divisors(&BigInt::from(-503)).unwrap(), vec![503]);
    }
}
