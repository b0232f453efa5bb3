//! Quartic reductions of the fixed-index equations a₂ = ã_ℓ, a₃ = ã_ℓ and
//! b₂ = b̃_ℓ.
//!
//! Fixing one mosaic parameter leaves the relevant belt term a quadratic
//! polynomial f of the free parameter, and the norm-form identity of the
//! reference sequence turns the coincidence condition into
//! y² = 12·f²(v) + c with c = 600 (a-kind) or c = −200 (b-kind) — a quartic
//! hyperelliptic equation in v.
//!
//! Two independent routes solve it:
//! * `solve_via_pell` enumerates all reference-side values x ≤ x_max with
//!   z² − 12x² = c and inverts f(v) = x exactly by the quadratic formula;
//!   complete for values up to x_max.
//! * `scan` walks every v in an interval and tests 12·f²(v) + c for a
//!   square directly, mirroring the way such equations get seeded by hand.
//!
//! Candidates that invert to something other than a valid, non-reference
//! mosaic are reported in a rejected list instead of being dropped.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{big_dec, exact_sqrt, mod_u64, square_residue_possible, RESIDUE_FILTER_MODULUS};
use crate::error::{Error, Result};
use crate::mosaic::{BeltKind, SchlafliMosaic};
use crate::recurrence::BinaryRecurrence;

/// Default interval scanned for a seed solution when nothing tighter is
/// requested.
pub const DEFAULT_SCAN_LO: i64 = -10_000;
pub const DEFAULT_SCAN_HI: i64 = 10_000;

/// Which fixed-index equation is being reduced, and which parameter stays
/// free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuarticCaseKind {
    /// a₂ = ã_ℓ with p fixed; free variable is q, c = 600.
    A2FixedP,
    /// a₃ = ã_ℓ with q fixed; free variable is p, c = 600.
    A3FixedQ,
    /// b₂ = b̃_ℓ with p fixed; free variable is q, c = −200.
    B2FixedP,
    /// b₂ = b̃_ℓ with q fixed; free variable is p, c = −200.
    B2FixedQ,
}

impl QuarticCaseKind {
    pub const ALL: [QuarticCaseKind; 4] = [
        QuarticCaseKind::A2FixedP,
        QuarticCaseKind::A3FixedQ,
        QuarticCaseKind::B2FixedP,
        QuarticCaseKind::B2FixedQ,
    ];

    /// Constant of the hyperelliptic right-hand side.
    pub fn constant_term(&self) -> i64 {
        match self {
            QuarticCaseKind::A2FixedP | QuarticCaseKind::A3FixedQ => 600,
            QuarticCaseKind::B2FixedP | QuarticCaseKind::B2FixedQ => -200,
        }
    }

    /// Which reference sequence the values must come from.
    pub fn reference_kind(&self) -> BeltKind {
        match self {
            QuarticCaseKind::A2FixedP | QuarticCaseKind::A3FixedQ => BeltKind::A,
            QuarticCaseKind::B2FixedP | QuarticCaseKind::B2FixedQ => BeltKind::B,
        }
    }

    /// Whether the fixed parameter is p (the free one then being q).
    pub fn fixes_p(&self) -> bool {
        matches!(self, QuarticCaseKind::A2FixedP | QuarticCaseKind::B2FixedP)
    }
}

impl std::fmt::Display for QuarticCaseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            QuarticCaseKind::A2FixedP => "a2-fixed-p",
            QuarticCaseKind::A3FixedQ => "a3-fixed-q",
            QuarticCaseKind::B2FixedP => "b2-fixed-p",
            QuarticCaseKind::B2FixedQ => "b2-fixed-q",
        };
        write!(f, "{s}")
    }
}

/// A case instantiated at a fixed parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticCase {
    pub kind: QuarticCaseKind,
    pub fixed: i64,
}

impl QuarticCase {
    pub fn new(kind: QuarticCaseKind, fixed: i64) -> Result<Self> {
        if fixed < 4 {
            return Err(Error::InvalidQuarticCase(format!(
                "fixed parameter must be at least 4, got {fixed}"
            )));
        }
        Ok(Self { kind, fixed })
    }

    /// The belt term as an exact quadratic in the free variable.
    pub fn polynomial(&self) -> QuadraticPoly {
        let w = BigInt::from(self.fixed);
        match self.kind {
            // a₂ = (κ+1)q with κ = (p−2)(q−2)−2: (p−2)q² − (2p−3)q
            QuarticCaseKind::A2FixedP => QuadraticPoly {
                c2: &w - 2,
                c1: BigInt::from(3) - (&w + &w),
                c0: BigInt::zero(),
            },
            // a₃ = (κ²+κ−1)q with κ = (q−2)p − (2q−2)
            QuarticCaseKind::A3FixedQ => {
                let alpha = &w - 2;
                let beta = 2 - 2 * &w;
                QuadraticPoly {
                    c2: &w * &alpha * &alpha,
                    c1: &w * (2 * &alpha * &beta + &alpha),
                    c0: &w * (&beta * &beta + &beta - 1),
                }
            }
            // b₂ = (κ(p−3)−1)q with κ = (p−2)(q−2)−2
            QuarticCaseKind::B2FixedP => {
                let c1: BigInt = (&w - 3) * (&w + &w - 2) + 1;
                QuadraticPoly { c2: (&w - 3) * (&w - 2), c1: -c1, c0: BigInt::zero() }
            }
            QuarticCaseKind::B2FixedQ => {
                let c1: BigInt = &w * (5 * &w - 8);
                QuadraticPoly { c2: &w * (&w - 2), c1: -c1, c0: &w * (6 * &w - 7) }
            }
        }
    }

    /// The mosaic obtained by pairing the fixed parameter with a candidate
    /// free value.
    pub fn mosaic_for(&self, free: &BigInt) -> Result<SchlafliMosaic> {
        if self.kind.fixes_p() {
            SchlafliMosaic::new(self.fixed, free.clone())
        } else {
            SchlafliMosaic::new(free.clone(), self.fixed)
        }
    }

    /// Largest |f| over the default scan interval: the value bound at which
    /// the Pell route covers everything an interval scan could see.
    pub fn default_x_max(&self) -> BigInt {
        let poly = self.polynomial();
        let mut probes = vec![BigInt::from(DEFAULT_SCAN_LO), BigInt::from(DEFAULT_SCAN_HI)];
        // the vertex can dominate |f| when the parabola dips below zero
        if !poly.c2.is_zero() {
            let vertex = (-&poly.c1).div_floor(&(2 * &poly.c2));
            probes.push(vertex.clone());
            probes.push(vertex + 1);
        }
        probes
            .into_iter()
            .filter(|v| *v >= BigInt::from(DEFAULT_SCAN_LO) && *v <= BigInt::from(DEFAULT_SCAN_HI))
            .map(|v| poly.eval(&v).abs())
            .max()
            .expect("probe set is nonempty")
    }
}

/// Exact integer quadratic c2·v² + c1·v + c0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticPoly {
    #[serde(with = "big_dec")]
    pub c2: BigInt,
    #[serde(with = "big_dec")]
    pub c1: BigInt,
    #[serde(with = "big_dec")]
    pub c0: BigInt,
}

impl QuadraticPoly {
    pub fn eval(&self, v: &BigInt) -> BigInt {
        (&self.c2 * v + &self.c1) * v + &self.c0
    }

    /// Integer solutions v of c2·v² + c1·v + c0 = value, by exact
    /// discriminant square test; ascending order.
    pub fn integer_roots_of(&self, value: &BigInt) -> Vec<BigInt> {
        if self.c2.is_zero() {
            if self.c1.is_zero() {
                return Vec::new();
            }
            let (quot, rem) = (value - &self.c0).div_rem(&self.c1);
            return if rem.is_zero() { vec![quot] } else { Vec::new() };
        }
        let disc = &self.c1 * &self.c1 - 4 * &self.c2 * (&self.c0 - value);
        let Some(root) = exact_sqrt(&disc) else {
            return Vec::new();
        };
        let denom = 2 * &self.c2;
        let mut out = Vec::new();
        for numer in [-&self.c1 - &root, -&self.c1 + &root] {
            let (quot, rem) = numer.div_rem(&denom);
            if rem.is_zero() {
                out.push(quot);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// An accepted solution: a valid non-reference mosaic whose belt term equals
/// reference term ell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticSolution {
    #[serde(with = "big_dec")]
    pub free_variable: BigInt,
    #[serde(with = "big_dec")]
    pub value: BigInt,
    pub ell: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    /// The recovered parameter does not give a hyperbolic mosaic.
    InvalidMosaic,
    /// The recovered mosaic is the reference {4,5} itself.
    ReferenceMosaic,
    /// The matched value solves the Pell side but is no reference term.
    NotAReferenceTerm,
}

/// A candidate that passed the square test but failed validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    #[serde(with = "big_dec")]
    pub free_variable: BigInt,
    #[serde(with = "big_dec")]
    pub value: BigInt,
    pub reason: RejectReason,
}

/// Solutions plus the audit trail of rejected candidates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticOutcome {
    pub solutions: Vec<QuarticSolution>,
    pub rejected: Vec<RejectedCandidate>,
}

impl QuarticOutcome {
    fn classify(
        &mut self,
        case: &QuarticCase,
        reference: &BinaryRecurrence,
        free: BigInt,
        value: BigInt,
    ) {
        let mut reject = |free: BigInt, value: BigInt, reason: RejectReason| {
            self.rejected.push(RejectedCandidate { free_variable: free, value, reason });
        };
        let Some(ell) = locate_index(&value, reference) else {
            return reject(free, value, RejectReason::NotAReferenceTerm);
        };
        match case.mosaic_for(&free) {
            Err(_) => reject(free, value, RejectReason::InvalidMosaic),
            Ok(mosaic) if mosaic.is_reference() => {
                reject(free, value, RejectReason::ReferenceMosaic)
            }
            Ok(_) => self.solutions.push(QuarticSolution { free_variable: free, value, ell }),
        }
    }

    fn sort(&mut self) {
        self.solutions.sort_by(|a, b| (&a.value, &a.free_variable).cmp(&(&b.value, &b.free_variable)));
        self.rejected.sort_by(|a, b| (&a.value, &a.free_variable).cmp(&(&b.value, &b.free_variable)));
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty() && self.rejected.is_empty()
    }
}

/// Index ell with reference term(ell) = value, walking the monotone sequence
/// from index 1; `None` once the sequence passes the value.
pub fn locate_index(value: &BigInt, reference: &BinaryRecurrence) -> Option<u64> {
    let mut cursor = reference.cursor_from_first();
    while cursor.value() < value {
        cursor.advance();
    }
    (cursor.value() == value).then(|| cursor.index())
}

/// Pell-route solution of y² = 12·f²(v) + c: enumerate reference-side values
/// x ≤ x_max with z² − 12x² = c, then invert f(v) = x exactly.
pub fn solve_via_pell(case: &QuarticCase, x_max: &BigInt) -> Result<QuarticOutcome> {
    assert!(x_max.is_positive(), "x_max must be at least 1");
    let c = case.kind.constant_term();
    let eq = crate::pell::PellEquation::new(12, c)?;
    // x ≤ x_max corresponds to z ≤ √(12·x_max² + max(c,0)) on the stream side.
    let z_bound = crate::arith::isqrt(&(12 * x_max * x_max + c.max(0))) + 1;

    let poly = case.polynomial();
    let reference = SchlafliMosaic::reference_sequence(case.kind.reference_kind());
    let mut outcome = QuarticOutcome::default();
    for (_z, x) in crate::pell::enumerate_solutions(&eq, z_bound)? {
        if x.is_zero() || &x > x_max {
            continue;
        }
        for root in poly.integer_roots_of(&x) {
            outcome.classify(case, &reference, root, x.clone());
        }
    }
    outcome.sort();
    Ok(outcome)
}

/// Interval-scan solution: test 12·f²(v) + c for a perfect square at every
/// v in [j_lo, j_hi] and look the value up in the reference sequence.
///
/// A residue prefilter modulo 64·63·65·11 rejects non-squares cheaply; only
/// survivors pay for exact big-integer evaluation.
pub fn scan(case: &QuarticCase, j_lo: i64, j_hi: i64) -> QuarticOutcome {
    assert!(j_lo <= j_hi, "empty scan interval");
    let poly = case.polynomial();
    let c = case.kind.constant_term();
    let reference = SchlafliMosaic::reference_sequence(case.kind.reference_kind());

    let modulus = RESIDUE_FILTER_MODULUS;
    let c2m = mod_u64(&poly.c2, modulus);
    let c1m = mod_u64(&poly.c1, modulus);
    let c0m = mod_u64(&poly.c0, modulus);
    let cm = c.rem_euclid(modulus as i64) as u64;

    let mut outcome = QuarticOutcome::default();
    for v in j_lo..=j_hi {
        let vm = v.rem_euclid(modulus as i64) as u64;
        let fm = ((c2m * vm % modulus + c1m) % modulus * vm + c0m) % modulus;
        let tm = (12 * (fm * fm % modulus) + cm) % modulus;
        if !square_residue_possible(tm) {
            continue;
        }
        let value = poly.eval(&BigInt::from(v));
        if exact_sqrt(&(12 * &value * &value + c)).is_some() {
            outcome.classify(case, &reference, BigInt::from(v), value);
        }
    }
    outcome.sort();
    outcome
}

/// Run the Pell route over a range of fixed parameter values; entries with
/// nothing to report are omitted. `x_max = None` uses the per-case default.
pub fn sweep_via_pell(
    kind: QuarticCaseKind,
    fixed_range: RangeInclusive<i64>,
    x_max: Option<&BigInt>,
) -> Result<Vec<(i64, QuarticOutcome)>> {
    let mut entries: Vec<(i64, QuarticOutcome)> = fixed_range
        .into_par_iter()
        .map(|fixed| -> Result<(i64, QuarticOutcome)> {
            let case = QuarticCase::new(kind, fixed)?;
            let bound = match x_max {
                Some(b) => b.clone(),
                None => case.default_x_max(),
            };
            Ok((fixed, solve_via_pell(&case, &bound)?))
        })
        .collect::<Result<_>>()?;
    entries.retain(|(_, outcome)| !outcome.is_empty());
    entries.sort_by_key(|(fixed, _)| *fixed);
    Ok(entries)
}

/// Run the interval scan over a range of fixed parameter values; entries
/// with nothing to report are omitted.
pub fn sweep_scan(
    kind: QuarticCaseKind,
    fixed_range: RangeInclusive<i64>,
    j_lo: i64,
    j_hi: i64,
) -> Result<Vec<(i64, QuarticOutcome)>> {
    let mut entries: Vec<(i64, QuarticOutcome)> = fixed_range
        .into_par_iter()
        .map(|fixed| -> Result<(i64, QuarticOutcome)> {
            let case = QuarticCase::new(kind, fixed)?;
            Ok((fixed, scan(&case, j_lo, j_hi)))
        })
        .collect::<Result<_>>()?;
    entries.retain(|(_, outcome)| !outcome.is_empty());
    entries.sort_by_key(|(fixed, _)| *fixed);
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(kind: QuarticCaseKind, fixed: i64) -> QuarticCase {
        QuarticCase::new(kind, fixed).unwrap()
    }

    #[test]
    fn polynomial_known_evaluations() {
        let poly = case(QuarticCaseKind::A2FixedP, 4).polynomial();
        assert_eq!(poly, QuadraticPoly {
            c2: BigInt::from(2),
            c1: BigInt::from(-5),
            c0: BigInt::zero(),
        });
        assert_eq!(poly.eval(&BigInt::from(5)), BigInt::from(25));

        let poly = case(QuarticCaseKind::A2FixedP, 26).polynomial();
        assert_eq!(poly.eval(&BigInt::from(5)), BigInt::from(355));

        let poly = case(QuarticCaseKind::B2FixedQ, 5).polynomial();
        assert_eq!(poly.eval(&BigInt::from(10)), BigInt::from(765));
    }

    #[test]
    fn polynomial_matches_recurrence_term_on_grid() {
        for fixed in [4i64, 5, 10, 26, 90] {
            for free in [4i64, 5, 7, 12, 29] {
                for kind in QuarticCaseKind::ALL {
                    let case = case(kind, fixed);
                    let Ok(mosaic) = case.mosaic_for(&BigInt::from(free)) else { continue };
                    let index = match kind {
                        QuarticCaseKind::A3FixedQ => 3,
                        _ => 2,
                    };
                    let term = mosaic.recurrence(kind.reference_kind()).term(index);
                    assert_eq!(
                        case.polynomial().eval(&BigInt::from(free)),
                        term,
                        "{kind} fixed={fixed} free={free}"
                    );
                }
            }
        }
    }

    #[test]
    fn integer_roots_exact() {
        let poly = case(QuarticCaseKind::A2FixedP, 90).polynomial();
        // 88q² − 177q = 68875 at q = 29
        assert_eq!(poly.integer_roots_of(&BigInt::from(68875)), vec![BigInt::from(29)]);
        assert!(poly.integer_roots_of(&BigInt::from(68876)).is_empty());
    }

    #[test]
    fn locate_index_in_reference() {
        let a = SchlafliMosaic::reference_sequence(BeltKind::A);
        assert_eq!(locate_index(&BigInt::from(4945), &a), Some(6));
        assert_eq!(locate_index(&BigInt::from(5), &a), Some(1));
        assert_eq!(locate_index(&BigInt::from(6), &a), None);
        assert_eq!(locate_index(&BigInt::from(-3), &a), None);
    }

    #[test]
    fn pell_route_result_cases() {
        let outcome =
            solve_via_pell(&case(QuarticCaseKind::A2FixedP, 26), &BigInt::from(1_000_000))
                .unwrap();
        assert_eq!(outcome.solutions.len(), 1);
        let sol = &outcome.solutions[0];
        assert_eq!((sol.free_variable.clone(), sol.value.clone(), sol.ell),
            (BigInt::from(5), BigInt::from(355), 4));

        let outcome =
            solve_via_pell(&case(QuarticCaseKind::A2FixedP, 90), &BigInt::from(1_000_000))
                .unwrap();
        assert_eq!(outcome.solutions.len(), 1);
        let sol = &outcome.solutions[0];
        assert_eq!((sol.free_variable.clone(), sol.value.clone(), sol.ell),
            (BigInt::from(29), BigInt::from(68875), 8));
    }

    #[test]
    fn pell_route_empty_case_vs_direct_scan() {
        let case = case(QuarticCaseKind::A2FixedP, 5);
        let outcome = solve_via_pell(&case, &BigInt::from(1000)).unwrap();
        assert!(outcome.solutions.is_empty());
        // independent oracle: try every q in [4, 1000] directly
        let poly = case.polynomial();
        let reference = SchlafliMosaic::reference_sequence(BeltKind::A);
        for q in 4i64..=1000 {
            let value = poly.eval(&BigInt::from(q));
            if value >= BigInt::from(1) && value <= BigInt::from(1000) {
                assert_eq!(locate_index(&value, &reference), None, "q={q}");
            }
        }
    }

    #[test]
    fn scan_result_cases() {
        let outcome = scan(&case(QuarticCaseKind::A2FixedP, 332), 4, 10_000);
        assert_eq!(outcome.solutions.len(), 1);
        let sol = &outcome.solutions[0];
        assert_eq!((sol.free_variable.clone(), sol.value.clone(), sol.ell),
            (BigInt::from(5), BigInt::from(4945), 6));

        let outcome = scan(&case(QuarticCaseKind::B2FixedP, 10), 4, 10_000);
        assert_eq!(outcome.solutions.len(), 1);
        let sol = &outcome.solutions[0];
        assert_eq!((sol.free_variable.clone(), sol.value.clone(), sol.ell),
            (BigInt::from(5), BigInt::from(765), 5));
    }

    #[test]
    fn scan_rejects_reference_mosaic() {
        // p = 4 recovers q = 5, the reference {4,5}: reported, not accepted
        let outcome = scan(&case(QuarticCaseKind::A2FixedP, 4), 4, 100);
        assert!(outcome.solutions.is_empty());
        assert!(outcome
            .rejected
            .iter()
            .any(|r| r.reason == RejectReason::ReferenceMosaic && r.value == BigInt::from(25)));
    }

    #[test]
    fn both_routes_agree_on_result_cases() {
        for (kind, fixed) in [
            (QuarticCaseKind::A2FixedP, 26i64),
            (QuarticCaseKind::A2FixedP, 90),
            (QuarticCaseKind::A2FixedP, 332),
            (QuarticCaseKind::B2FixedP, 10),
            (QuarticCaseKind::B2FixedQ, 5),
            (QuarticCaseKind::A3FixedQ, 5),
        ] {
            let case = case(kind, fixed);
            let scanned = scan(&case, DEFAULT_SCAN_LO, DEFAULT_SCAN_HI);
            let pell = solve_via_pell(&case, &case.default_x_max()).unwrap();
            assert_eq!(scanned.solutions, pell.solutions, "{kind} fixed={fixed}");
        }
    }

    #[test]
    fn solutions_satisfy_the_hyperelliptic_identity() {
        let outcome = scan(&case(QuarticCaseKind::B2FixedP, 10), 4, 10_000);
        let reference = SchlafliMosaic::reference_sequence(BeltKind::B);
        for sol in &outcome.solutions {
            let t = 12 * &sol.value * &sol.value - 200;
            assert!(exact_sqrt(&t).is_some());
            assert_eq!(reference.term(sol.ell), sol.value);
        }
    }

    #[test]
    fn case_requires_fixed_at_least_4() {
        assert!(QuarticCase::new(QuarticCaseKind::A2FixedP, 3).is_err());
        assert!(QuarticCase::new(QuarticCaseKind::A2FixedP, 4).is_ok());
    }
}
