//! Deterministic Miller-Rabin for 64-bit inputs.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

// This witness set is deterministic for all n < 3.3 * 10^24, in particular
// for every u64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

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
    'witness: for &a in WITNESSES.iter() {
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

pub(crate) fn is_prime_bigint(n: &BigInt) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        // Inputs this large do not occur in the embedded dataset; treat as
        // unfactored rather than guessing.
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn matches_trial_division_small() {
        for n in 0..2000 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {}", n);
        }
    }

    #[test]
    fn known_values() {
        assert!(is_prime_u64(13));
        assert!(!is_prime_u64(4));
        assert!(is_prime_u64(7919));
        assert!(trial_division(7919));
        assert!(is_prime_u64(2147483647));
        assert!(!is_prime_u64(2147483647u64 * 3));
    }
}
