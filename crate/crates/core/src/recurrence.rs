//! Binary recurrences over arbitrary-precision integers.
//!
//! A binary recurrence G(r, s, G₀, G₁) is the sequence with
//! Gₙ = r·Gₙ₋₁ + s·Gₙ₋₂. Its associate sequence H shares (r, s) and starts
//! from H₀ = 2G₁ − rG₀, H₁ = rG₁ + 2sG₀; the two are tied together by the
//! norm-form identity Hₙ² − D·Gₙ² = 4·C_G·(−s)ⁿ with D = r² + 4s and
//! C_G = G₁² − r·G₀·G₁ − s·G₀².
//!
//! Terms are produced by forward iteration only; all arithmetic is exact.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::big_dec;

/// A binary recurrence G(r, s, G₀, G₁).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryRecurrence {
    #[serde(with = "big_dec")]
    pub r: BigInt,
    #[serde(with = "big_dec")]
    pub s: BigInt,
    #[serde(with = "big_dec")]
    pub g0: BigInt,
    #[serde(with = "big_dec")]
    pub g1: BigInt,
}

impl BinaryRecurrence {
    pub fn new(
        r: impl Into<BigInt>,
        s: impl Into<BigInt>,
        g0: impl Into<BigInt>,
        g1: impl Into<BigInt>,
    ) -> Self {
        Self { r: r.into(), s: s.into(), g0: g0.into(), g1: g1.into() }
    }

    /// Discriminant D = r² + 4s.
    pub fn discriminant(&self) -> BigInt {
        &self.r * &self.r + 4 * &self.s
    }

    /// The invariant constant C_G = G₁² − r·G₀·G₁ − s·G₀².
    pub fn constant(&self) -> BigInt {
        &self.g1 * &self.g1 - &self.r * &self.g0 * &self.g1 - &self.s * &self.g0 * &self.g0
    }

    /// The n-th term, by forward iteration from (G₀, G₁).
    pub fn term(&self, n: u64) -> BigInt {
        let mut cursor = self.cursor();
        cursor.seek(n);
        cursor.value().clone()
    }

    /// The associate sequence H(r, s, 2G₁ − rG₀, rG₁ + 2sG₀).
    pub fn associate(&self) -> BinaryRecurrence {
        let h0 = 2 * &self.g1 - &self.r * &self.g0;
        let h1 = &self.r * &self.g1 + 2 * &self.s * &self.g0;
        BinaryRecurrence { r: self.r.clone(), s: self.s.clone(), g0: h0, g1: h1 }
    }

    /// Cursor positioned at index 0.
    pub fn cursor(&self) -> SequenceCursor<'_> {
        SequenceCursor { owner: self, index: 0, prev: None, curr: self.g0.clone() }
    }

    /// Cursor positioned at index 1 (the first term with geometric meaning
    /// for mosaic-derived sequences).
    pub fn cursor_from_first(&self) -> SequenceCursor<'_> {
        let mut c = self.cursor();
        c.advance();
        c
    }
}

/// Single-owner walker over a recurrence; holds the sliding state pair.
#[derive(Clone, Debug)]
pub struct SequenceCursor<'a> {
    owner: &'a BinaryRecurrence,
    index: u64,
    prev: Option<BigInt>,
    curr: BigInt,
}

impl SequenceCursor<'_> {
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn value(&self) -> &BigInt {
        &self.curr
    }

    /// One step: (prev, curr) ← (curr, r·curr + s·prev), index += 1.
    pub fn advance(&mut self) {
        let next = match &self.prev {
            Some(prev) => &self.owner.r * &self.curr + &self.owner.s * prev,
            // Index 0 has no predecessor; the successor is G₁ by definition.
            None => self.owner.g1.clone(),
        };
        self.prev = Some(std::mem::replace(&mut self.curr, next));
        self.index += 1;
    }

    /// Advance until the cursor sits at index `n` (which must not be behind).
    pub fn seek(&mut self, n: u64) {
        assert!(n >= self.index, "cursor cannot move backwards");
        while self.index < n {
            self.advance();
        }
    }
}

/// The residual Hₙ² − D·Gₙ² − 4·C_G·(−s)ⁿ; identically zero for every
/// recurrence and every n ≥ 0.
pub fn identity_residual(rec: &BinaryRecurrence, n: u64) -> BigInt {
    let g_n = rec.term(n);
    let h_n = rec.associate().term(n);
    let d = rec.discriminant();
    let c = rec.constant();
    let minus_s_pow = (-&rec.s).pow(u32::try_from(n).expect("index fits u32"));
    &h_n * &h_n - d * &g_n * &g_n - 4 * c * minus_s_pow
}

/// True when every step from index 1 on strictly increases, checked on the
/// first `steps` terms.
pub fn strictly_increasing_from_first(rec: &BinaryRecurrence, steps: u64) -> bool {
    let mut cursor = rec.cursor_from_first();
    let mut last = cursor.value().clone();
    for _ in 0..steps {
        cursor.advance();
        if cursor.value() <= &last {
            return false;
        }
        last = cursor.value().clone();
    }
    true
}

impl BinaryRecurrence {
    /// Whether (−s) is a unit, i.e. the sequence is purely periodic modulo
    /// every modulus coprime to s.
    pub fn step_determinant_is_unit(&self) -> bool {
        (-&self.s).magnitude().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn reference_a() -> BinaryRecurrence {
        BinaryRecurrence::new(4, -1, -5, 5)
    }

    fn reference_b() -> BinaryRecurrence {
        BinaryRecurrence::new(4, -1, 5, 5)
    }

    #[test]
    fn reference_terms_match_known_row() {
        let a = reference_a();
        let expected = [5i64, 25, 95, 355, 1325, 4945, 18455, 68875, 257045, 959305];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(a.term(i as u64 + 1), BigInt::from(*want), "a term {}", i + 1);
        }
        assert_eq!(a.term(0), BigInt::from(-5));
        assert_eq!(a.term(10), BigInt::from(959305));
        assert_eq!(a.term(12), BigInt::from(13361395));
    }

    #[test]
    fn reference_b_terms() {
        let b = reference_b();
        let expected = [5i64, 15, 55, 205, 765, 2855, 10655, 39765, 148405, 553855];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(b.term(i as u64 + 1), BigInt::from(*want), "b term {}", i + 1);
        }
    }

    #[test]
    fn associate_of_reference_sequences() {
        let a_assoc = reference_a().associate();
        assert_eq!(a_assoc.g0, BigInt::from(30));
        assert_eq!(a_assoc.term(1), BigInt::from(30));
        assert_eq!(a_assoc.term(2), BigInt::from(90));
        // H₂ = r·H₁ + s·H₀ closes the loop on the initial pair.
        assert_eq!(4 * a_assoc.term(1) - a_assoc.term(0), a_assoc.term(2));

        let b_assoc = reference_b().associate();
        assert_eq!(b_assoc.term(1), BigInt::from(10));
        assert_eq!(b_assoc.term(2), BigInt::from(50));
    }

    #[test]
    fn constants_of_reference_sequences() {
        assert_eq!(reference_a().constant(), BigInt::from(150));
        assert_eq!(reference_b().constant(), BigInt::from(-50));
        assert_eq!(reference_a().discriminant(), BigInt::from(12));
    }

    #[test]
    fn identity_residual_reference_n1() {
        // 30² − 12·5² = 600 and 10² − 12·5² = −200.
        assert!(identity_residual(&reference_a(), 1).is_zero());
        assert!(identity_residual(&reference_b(), 1).is_zero());
    }

    #[test]
    fn identity_residual_random_small_recurrences() {
        // Deterministic xorshift so the sweep is reproducible.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..1000 {
            let pick = |v: u64| (v % 41) as i64 - 20;
            let rec = BinaryRecurrence::new(pick(next()), pick(next()), pick(next()), pick(next()));
            let n = next() % 31;
            assert!(
                identity_residual(&rec, n).is_zero(),
                "trial {trial}: residual nonzero for {rec:?} at n={n}"
            );
        }
    }

    #[test]
    fn cursor_walk_matches_term() {
        let rec = BinaryRecurrence::new(3, 2, 1, 7);
        let mut cursor = rec.cursor();
        for n in 0..20 {
            assert_eq!(cursor.index(), n);
            assert_eq!(*cursor.value(), rec.term(n), "index {n}");
            cursor.advance();
        }
    }

    #[test]
    fn term_zero_is_initial_value() {
        let rec = BinaryRecurrence::new(9, -4, 11, -3);
        assert_eq!(rec.term(0), BigInt::from(11));
        assert_eq!(rec.term(1), BigInt::from(-3));
    }
}
