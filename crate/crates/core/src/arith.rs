//! Exact integer arithmetic helpers shared by the solver modules.
//!
//! Everything here is integer-only. Perfect-square testing uses quadratic
//! residue masks modulo 64, 63, 65 and 11 to reject most non-squares before
//! paying for a big-integer square root (H. Cohen, "A Course in Computational
//! Algebraic Number Theory", alg. 1.7.3).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Bitmask of quadratic residues modulo `m` (bit i set iff i is a square mod m).
const fn residue_mask(m: u32) -> u128 {
    let mut mask = 0u128;
    let mut i = 0u32;
    while i < m {
        mask |= 1u128 << ((i as u64 * i as u64) % m as u64);
        i += 1;
    }
    mask
}

const MASK_64: u128 = residue_mask(64);
const MASK_63: u128 = residue_mask(63);
const MASK_65: u128 = residue_mask(65);
const MASK_11: u128 = residue_mask(11);

/// 64·63·65·11, the combined modulus for the residue prefilter.
pub const RESIDUE_FILTER_MODULUS: u64 = 64 * 63 * 65 * 11;

/// Returns true iff `r`, taken modulo [`RESIDUE_FILTER_MODULUS`], can be a square.
///
/// A `false` answer is definitive; `true` means "run the exact test".
#[inline]
pub fn square_residue_possible(r: u64) -> bool {
    debug_assert!(r < RESIDUE_FILTER_MODULUS);
    (MASK_64 >> (r % 64)) & 1 == 1
        && (MASK_63 >> (r % 63)) & 1 == 1
        && (MASK_65 >> (r % 65)) & 1 == 1
        && (MASK_11 >> (r % 11)) & 1 == 1
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative value");
    n.sqrt()
}

/// Exact square root: `Some(r)` with r ≥ 0 and r² = n, or `None`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let r = n
        .mod_floor(&BigInt::from(RESIDUE_FILTER_MODULUS))
        .to_u64()
        .expect("residue fits u64");
    if !square_residue_possible(r) {
        return None;
    }
    let root = n.sqrt();
    if &root * &root == *n {
        Some(root)
    } else {
        None
    }
}

/// True iff `n` is a perfect square (negative values are not).
pub fn is_perfect_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// `n mod m` in the range `[0, m)` as a machine word.
pub fn mod_u64(n: &BigInt, m: u64) -> u64 {
    debug_assert!(m > 0);
    n.mod_floor(&BigInt::from(m)).to_u64().expect("reduced value fits u64")
}

/// All primes up to and including `limit`, by trial sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Serde adapter rendering big integers as decimal strings.
///
/// Every big integer that crosses a serialization boundary goes through this
/// module so values never get truncated to 64-bit JSON numbers.
pub mod big_dec {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(deserializer)?;
        BigInt::from_str(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exact_sqrt_small_values() {
        for n in 0i64..=2000 {
            let big = BigInt::from(n);
            let expected = (0..=n).find(|r| r * r == n).map(BigInt::from);
            assert_eq!(exact_sqrt(&big), expected, "n = {n}");
        }
    }

    #[test]
    fn exact_sqrt_rejects_negative() {
        assert_eq!(exact_sqrt(&BigInt::from(-4)), None);
        assert!(!is_perfect_square(&BigInt::from(-1)));
    }

    #[test]
    fn exact_sqrt_large_square_and_neighbours() {
        let r = BigInt::parse_bytes(b"123456789012345678901234567890123456789", 10).unwrap();
        let square = &r * &r;
        assert_eq!(exact_sqrt(&square), Some(r.clone()));
        assert_eq!(exact_sqrt(&(&square + 1)), None);
        assert_eq!(exact_sqrt(&(&square - 1)), None);
    }

    #[test]
    fn residue_filter_never_rejects_squares() {
        for i in 0u64..RESIDUE_FILTER_MODULUS.min(20_000) {
            let sq = (i * i) % RESIDUE_FILTER_MODULUS;
            assert!(square_residue_possible(sq), "square residue {sq} rejected");
        }
    }

    #[test]
    fn primes_up_to_25() {
        assert_eq!(primes_up_to(25), vec![2, 3, 5, 7, 11, 13, 17, 19, 23]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(2), vec![2]);
    }

    #[test]
    fn mod_u64_handles_negative() {
        assert_eq!(mod_u64(&BigInt::from(-5), 15), 10);
        assert_eq!(mod_u64(&BigInt::from(-19), 323), 304);
        assert_eq!(mod_u64(&BigInt::from(29), 15), 14);
    }
}
