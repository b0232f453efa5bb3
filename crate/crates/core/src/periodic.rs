//! Periods of the reference sequences modulo m and arithmetic-progression
//! index families.
//!
//! Both belt recurrences have step determinant −s = 1, so they are purely
//! periodic modulo every m ≥ 2: the residue table of one period describes the
//! whole sequence. Solubility of a₂ = ã_ℓ at fixed q reduces to the
//! congruence ã_ℓ ≡ −q (mod q(q−2)); of b₁ = b̃_ℓ to b̃_ℓ ≡ 0 (mod q).
//! Each residue index that hits the target yields a family ℓ = c + π·t, and
//! each family member back-solves the remaining mosaic parameter p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{big_dec, mod_u64};
use crate::error::{Error, Result};
use crate::mosaic::{BeltKind, SchlafliMosaic};
use crate::recurrence::BinaryRecurrence;

/// One full period of a recurrence modulo m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodProfile {
    pub modulus: u64,
    pub period: u64,
    /// Residues of terms 0..period−1; term(n) ≡ residues[n mod period].
    pub residues: Vec<u64>,
}

impl PeriodProfile {
    /// Residue of term(n).
    pub fn residue_at(&self, n: u64) -> u64 {
        self.residues[(n % self.period) as usize]
    }

    /// All indices i in [0, period) with `residues[i]` ≡ target (mod m).
    pub fn residue_hits(&self, target: &BigInt) -> Vec<u64> {
        let t = mod_u64(target, self.modulus);
        self.residues
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == t)
            .map(|(i, _)| i as u64)
            .collect()
    }

    /// Whether any term of the sequence (any index ≥ 1, equivalently any
    /// residue slot) is divisible by the modulus.
    pub fn hits_zero(&self) -> bool {
        self.residues.contains(&0)
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Largest modulus the direct period computation accepts.
pub const MAX_PERIOD_MODULUS: u64 = 10_000_000;

/// Minimal period of `rec` modulo `m`, with the residue table.
///
/// Requires gcd(−s, m) = 1 so the sequence is purely periodic; the state
/// pair must recur within m² steps by pigeonhole.
pub fn period_profile(rec: &BinaryRecurrence, m: u64) -> Result<PeriodProfile> {
    if m < 2 {
        return Err(Error::InvalidModulus { modulus: m, reason: "modulus must be at least 2".into() });
    }
    if m > MAX_PERIOD_MODULUS {
        return Err(Error::InvalidModulus {
            modulus: m,
            reason: format!("periods are computed directly; moduli above {MAX_PERIOD_MODULUS} are not supported"),
        });
    }
    let s_m = mod_u64(&rec.s, m);
    let minus_s = (m - s_m) % m;
    if minus_s.gcd(&m) != 1 {
        return Err(Error::InvalidModulus {
            modulus: m,
            reason: format!("-s = {} is not a unit modulo {m}", -&rec.s),
        });
    }
    let r_m = mod_u64(&rec.r, m);
    let start = (mod_u64(&rec.g0, m), mod_u64(&rec.g1, m));

    let mut residues = Vec::new();
    let (mut a, mut b) = start;
    let limit = m.saturating_mul(m).saturating_add(1);
    for _ in 0..limit {
        residues.push(a);
        let next = (mul_mod(r_m, b, m) + mul_mod(s_m, a, m)) % m;
        a = b;
        b = next;
        if (a, b) == start {
            return Ok(PeriodProfile { modulus: m, period: residues.len() as u64, residues });
        }
    }
    Err(Error::Internal(format!("state pair modulo {m} did not recur within {limit} steps")))
}

/// Which linear-in-p equation a family solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyCase {
    /// a₂ = ã_ℓ at fixed q: modulus q(q−2), target −q.
    A2,
    /// b₁ = b̃_ℓ at fixed q: modulus q, target 0.
    B1,
}

impl FamilyCase {
    pub fn reference_kind(&self) -> BeltKind {
        match self {
            FamilyCase::A2 => BeltKind::A,
            FamilyCase::B1 => BeltKind::B,
        }
    }

    pub fn congruence_modulus(&self, q: i64) -> u64 {
        debug_assert!(q >= 4);
        match self {
            FamilyCase::A2 => q as u64 * (q as u64 - 2),
            FamilyCase::B1 => q as u64,
        }
    }

    pub fn target(&self, q: i64) -> BigInt {
        match self {
            FamilyCase::A2 => BigInt::from(-q),
            FamilyCase::B1 => BigInt::zero(),
        }
    }
}

impl std::fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyCase::A2 => write!(f, "a2"),
            FamilyCase::B1 => write!(f, "b1"),
        }
    }
}

/// Arithmetic progression ℓ = offset + modulus·t (t ≥ 0) of solution indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexFamily {
    pub case: FamilyCase,
    pub q: i64,
    /// Least member ≥ 1.
    pub offset: u64,
    /// The period of the reference sequence modulo the congruence modulus.
    pub modulus: u64,
}

impl IndexFamily {
    pub fn member(&self, t: u64) -> u64 {
        self.offset + self.modulus * t
    }
}

impl std::fmt::Display for IndexFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}+{}t", self.offset, self.modulus)
    }
}

/// All index families for the case at a fixed q ≥ 4, sorted by offset.
/// An empty list means the equation is insoluble for that q.
pub fn index_families(case: FamilyCase, q: i64) -> Result<Vec<IndexFamily>> {
    if q < 4 {
        return Err(Error::InvalidModulus {
            modulus: q.max(0) as u64,
            reason: "q must be at least 4".into(),
        });
    }
    let m_wide = match case {
        FamilyCase::A2 => q as i128 * (q as i128 - 2),
        FamilyCase::B1 => q as i128,
    };
    if m_wide > MAX_PERIOD_MODULUS as i128 {
        return Err(Error::InvalidModulus {
            modulus: MAX_PERIOD_MODULUS,
            reason: format!("q = {q} needs a period modulus of {m_wide}, beyond the supported range"),
        });
    }
    let m = case.congruence_modulus(q);
    let reference = SchlafliMosaic::reference_sequence(case.reference_kind());
    let profile = period_profile(&reference, m)?;
    let mut families: Vec<IndexFamily> = profile
        .residue_hits(&case.target(q))
        .into_iter()
        .map(|hit| IndexFamily {
            case,
            q,
            offset: if hit == 0 { profile.period } else { hit },
            modulus: profile.period,
        })
        .collect();
    families.sort_by_key(|f| f.offset);
    Ok(families)
}

/// Recover the mosaic parameter p from a reference-sequence value:
/// p = (value + q)/(q(q−2)) + 2 for A2, p = value/q + 3 for B1.
/// `None` when the division is inexact or the mosaic {p,q} is not valid.
pub fn back_solve_p(value: &BigInt, q: i64, case: FamilyCase) -> Option<BigInt> {
    let (numerator, denominator, shift) = match case {
        FamilyCase::A2 => (value + q, BigInt::from(q * (q - 2)), 2i64),
        FamilyCase::B1 => (value.clone(), BigInt::from(q), 3i64),
    };
    let (quot, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() {
        return None;
    }
    let p = quot + shift;
    SchlafliMosaic::new(p.clone(), q).ok().map(|_| p)
}

/// One materialized family member with its back-solved p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub ell: u64,
    #[serde(with = "big_dec")]
    pub value: BigInt,
    #[serde(with = "big_dec")]
    pub p: BigInt,
    /// Set when {p,q} is the reference mosaic itself: the equation holds but
    /// the two sequences coincide.
    pub reference_mosaic: bool,
}

/// First `count` members of a family, each back-solved and checked against
/// the defining congruence. Panics on internal inconsistency: every family
/// member must satisfy the congruence and back-solve to a valid mosaic.
pub fn family_verify(family: &IndexFamily, count: usize) -> Vec<FamilyMember> {
    assert!(count >= 1);
    let q = family.q;
    let m = BigInt::from(family.case.congruence_modulus(q));
    let target = family.case.target(q);
    let reference = SchlafliMosaic::reference_sequence(family.case.reference_kind());

    let mut members = Vec::with_capacity(count);
    let mut cursor = reference.cursor();
    for t in 0..count as u64 {
        let ell = family.member(t);
        cursor.seek(ell);
        let value = cursor.value().clone();
        assert!(
            (&value - &target).mod_floor(&m).is_zero(),
            "family {family} member {ell} violates its congruence"
        );
        let p = back_solve_p(&value, q, family.case)
            .unwrap_or_else(|| panic!("family {family} member {ell} does not back-solve"));
        let reference_mosaic = SchlafliMosaic::new(p.clone(), q)
            .map(|mos| mos.is_reference())
            .unwrap_or(false);
        members.push(FamilyMember { ell, value, p, reference_mosaic });
    }
    members
}
