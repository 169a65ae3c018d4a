//! Exact integer helpers shared by the graph algorithms.
//!
//! All divisibility questions are asked of absolute values; gcds are always
//! positive.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `|n|` in increasing order, by trial division.
///
/// Panics if `|n|` has a prime factor that does not fit in 64 bits; trial
/// division could not reach such a factor in reasonable time anyway.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut rest = n.magnitude().clone();
    let mut out = Vec::new();
    if rest.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while BigUint::from(d) * BigUint::from(d) <= rest {
        if (&rest % d).is_zero() {
            out.push(d);
            while (&rest % d).is_zero() {
                rest /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let p = rest
            .to_u64()
            .expect("label has a prime factor beyond 64 bits");
        out.push(p);
    }
    out
}

pub fn divides(p: u64, n: &BigInt) -> bool {
    (n.magnitude() % p).is_zero()
}

/// `|a| ∧ |b|`, always positive unless both are zero.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigUint {
    a.magnitude().gcd(b.magnitude())
}

/// `m ∧ |label|` for a multiplicity `m`.
pub fn gcd_mult(m: u64, label: &BigInt) -> u64 {
    let r = (label.magnitude() % m).to_u64().expect("remainder below m");
    m.gcd(&r)
}

/// Exponent of `p` in `n` (n > 0).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

/// Smallest prime factor of `n > 1`.
pub fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n > 1);
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_enumeration() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn factorization_ignores_sign() {
        assert_eq!(prime_factors(&BigInt::from(-60)), vec![2, 3, 5]);
        assert_eq!(prime_factors(&BigInt::from(1)), Vec::<u64>::new());
        assert_eq!(prime_factors(&BigInt::from(97)), vec![97]);
        assert_eq!(prime_factors(&BigInt::from(2 * 2 * 49)), vec![2, 7]);
    }

    #[test]
    fn gcd_is_positive() {
        assert_eq!(gcd(&BigInt::from(-4), &BigInt::from(6)), BigUint::from(2u8));
        assert_eq!(gcd_mult(4, &BigInt::from(-6)), 2);
        assert_eq!(gcd_mult(3, &BigInt::from(5)), 1);
        assert_eq!(valuation(24, 2), 3);
    }
}
