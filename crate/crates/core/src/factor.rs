//! Integer primality and factorization helpers.
//!
//! Used to enumerate the maximal ideals relevant to generation questions:
//! the prime divisors of a modulus `m` and of resultant gcds. Miller-Rabin
//! with the standard deterministic witness set, Pollard rho for splitting.
//! Inputs here stay small (resultants of small polynomials).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if n == &two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    // small trial division first
    let mut p = 3u64;
    while p * p <= 1_000_000 {
        let pb = BigUint::from(p);
        if &pb * &pb > *n {
            return true;
        }
        if (n % &pb).is_zero() {
            return n == &pb;
        }
        p += 2;
    }
    miller_rabin(n)
}

/// Deterministic for n < 3.3e24 with this witness set; for larger inputs the
/// set still gives an error probability far below anything reachable here.
fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let ab = BigUint::from(a) % n;
        if ab.is_zero() {
            continue;
        }
        let mut x = ab.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    // Floyd cycle detection, retrying with a new polynomial offset when a
    // cycle closes without exposing a factor.
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Prime factorization `n = prod p^e` as a sorted map; `n >= 1`, and the
/// empty map for `n = 1`.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    assert!(!n.is_zero(), "factorize(0)");
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let pb = BigUint::from(p);
        while (&n % &pb).is_zero() {
            *out.entry(pb.clone()).or_insert(0) += 1;
            n = &n / &pb;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u128) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn primality_small() {
        let primes = [2u128, 3, 5, 7, 11, 97, 101, 65537];
        let composites = [1u128, 4, 6, 9, 91, 561, 65536];
        for p in primes {
            assert!(is_prime(&b(p)), "{p} is prime");
        }
        for c in composites {
            assert!(!is_prime(&b(c)), "{c} is composite");
        }
    }

    #[test]
    fn factors_rebuild_input() {
        for n in [2u128, 12, 360, 1009, 1 << 20, 600851475143, 10_000_000_019] {
            let f = factorize(&b(n));
            let mut prod = BigUint::one();
            for (p, e) in &f {
                assert!(is_prime(p));
                prod *= p.pow(*e);
            }
            assert_eq!(prod, b(n));
        }
    }

    #[test]
    fn factor_large_semiprime() {
        // 1000003 * 1000033
        let n = b(1000003) * b(1000033);
        let f = factorize(&n);
        assert_eq!(f.len(), 2);
        assert!(f.contains_key(&b(1000003)));
        assert!(f.contains_key(&b(1000033)));
    }
}
