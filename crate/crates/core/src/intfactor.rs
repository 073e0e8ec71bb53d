//! Integer utilities backing square-class canonicalization: deterministic
//! Miller-Rabin for `u64`, a probable-prime test for `BigInt`, and squarefree
//! parts by bounded trial division.

use num_bigint::BigInt;

use num_traits::{One, Signed, Zero};

use crate::field::FieldError;

/// Trial-division bound for squarefree parts. Cofactors below `BOUND^2` that
/// survive trial division are necessarily prime; larger ones are handled by
/// perfect-square and probable-prime checks, and anything still ambiguous is
/// reported as [`FieldError::FactorBound`] rather than guessed.
const TRIAL_BOUND: u64 = 1_000_000;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64` (the listed bases decide primality
/// for all inputs below 3.3 * 10^24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
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

/// Miller-Rabin on positive `BigInt` with the same fixed witness set;
/// deterministic below 3.3 * 10^24 and overwhelmingly reliable above.
fn is_probable_prime(n: &BigInt) -> bool {
    if let Ok(small) = u64::try_from(n) {
        return is_prime_u64(small);
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    if (n % &two).is_zero() {
        return false;
    }
    let n1 = n - &one;
    let mut d = n1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Squarefree part of a nonzero integer: the product of the sign and the
/// primes dividing `n` to an odd power. Uses trial division up to
/// [`TRIAL_BOUND`]; a surviving cofactor is accepted if it is provably prime
/// or a perfect square, otherwise the computation refuses to guess.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt, FieldError> {
    assert!(!n.is_zero(), "squarefree part of zero is undefined");
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut out = BigInt::one();

    let mut d = 2u64;
    while d <= TRIAL_BOUND {
        let db = BigInt::from(d);
        if (&db * &db) > m {
            break;
        }
        if (&m % &db).is_zero() {
            let mut e = 0u32;
            while (&m % &db).is_zero() {
                m /= &db;
                e += 1;
            }
            if e % 2 == 1 {
                out *= db;
            }
        }
        d = if d == 2 { 3 } else { d + 2 };
    }

    if !m.is_one() {
        let bound_sq = BigInt::from(TRIAL_BOUND) * BigInt::from(TRIAL_BOUND);
        if m < bound_sq || is_probable_prime(&m) {
            // No factor up to the bound, so below bound^2 the cofactor is prime.
            out *= &m;
        } else {
            let r = m.sqrt();
            if &r * &r == m {
                // A perfect square contributes nothing to the squarefree part.
            } else {
                return Err(FieldError::FactorBound(TRIAL_BOUND));
            }
        }
    }

    Ok(if negative { -out } else { out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_carmichael() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(5));
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael number
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
    }

    #[test]
    fn squarefree_parts() {
        let sf = |n: i64| squarefree_part(&BigInt::from(n)).unwrap();
        assert_eq!(sf(18), BigInt::from(2));
        assert_eq!(sf(-108), BigInt::from(-3));
        assert_eq!(sf(1), BigInt::from(1));
        assert_eq!(sf(49), BigInt::from(1));
        assert_eq!(sf(-1), BigInt::from(-1));
        assert_eq!(sf(360), BigInt::from(10)); // 2^3 * 3^2 * 5
                                               // Large prime cofactor below bound^2 is accepted.
        let p = BigInt::from(999_999_999_989u64); // prime near 10^12
        assert_eq!(squarefree_part(&(&p * 4)).unwrap(), p);
        // Large perfect-square cofactor is stripped.
        let q = BigInt::from(1_000_033u64);
        assert_eq!(squarefree_part(&(&q * &q * 3)).unwrap(), BigInt::from(3));
    }
}
