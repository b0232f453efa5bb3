//! Regular mosaics {p,q} of the hyperbolic plane and their belt sequences.
//!
//! Around a fixed vertex the cells organize into concentric belts. Counting
//! the tree roots (aₙ) and the remaining vertices (bₙ) on the outer boundary
//! of belt n gives two integer sequences driven by one coupled linear system;
//! both separate into the same second-order recurrence
//! xₙ = κ·xₙ₋₁ − xₙ₋₂ with κ = (p−2)(q−2) − 2.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::big_dec;
use crate::error::{Error, Result};
use crate::recurrence::BinaryRecurrence;

/// Which of the two belt counts a sequence tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BeltKind {
    /// aₙ: tree roots on level n.
    A,
    /// bₙ: non-root vertices on level n.
    B,
}

impl std::fmt::Display for BeltKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BeltKind::A => write!(f, "a"),
            BeltKind::B => write!(f, "b"),
        }
    }
}

/// A regular mosaic {p,q}: p-gonal cells, q around each vertex.
///
/// Only hyperbolic mosaics with p ≥ 4 and q ≥ 4 are representable; q = 3
/// yields no trees, p = 3 yields no roots, and (p−2)(q−2) = 4 is the
/// Euclidean square lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SchlafliMosaic {
    #[serde(with = "big_dec")]
    p: BigInt,
    #[serde(with = "big_dec")]
    q: BigInt,
}

impl SchlafliMosaic {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        let q = q.into();
        let reject = |reason: &str| Error::InvalidMosaic {
            p: p.to_string(),
            q: q.to_string(),
            reason: reason.to_string(),
        };
        if p < BigInt::from(4) {
            return Err(reject("p must be at least 4 (p = 3 produces no roots)"));
        }
        if q < BigInt::from(4) {
            return Err(reject("q must be at least 4 (q = 3 produces no trees)"));
        }
        if (&p - 2) * (&q - 2) <= BigInt::from(4) {
            return Err(reject("(p-2)(q-2) must exceed 4 (Euclidean lattice excluded)"));
        }
        Ok(Self { p, q })
    }

    /// The reference mosaic {4,5}.
    pub fn reference() -> Self {
        Self::new(4, 5).expect("{4,5} is hyperbolic")
    }

    pub fn is_reference(&self) -> bool {
        self.p == BigInt::from(4) && self.q == BigInt::from(5)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// κ = (p−2)(q−2) − 2, the common recurrence coefficient; always ≥ 4.
    pub fn kappa(&self) -> BigInt {
        (&self.p - 2) * (&self.q - 2) - 2
    }

    /// The separated belt recurrence of the requested kind:
    /// a(κ, −1, −q, q) or b(κ, −1, q, (p−3)q).
    pub fn recurrence(&self, kind: BeltKind) -> BinaryRecurrence {
        let kappa = self.kappa();
        let rec = match kind {
            BeltKind::A => BinaryRecurrence::new(kappa, -1, -&self.q, self.q.clone()),
            BeltKind::B => {
                BinaryRecurrence::new(kappa, -1, self.q.clone(), (&self.p - 3) * &self.q)
            }
        };
        // The invariant constant must agree with its closed form; a mismatch
        // would mean the initial values are wrong.
        let closed_form = match kind {
            BeltKind::A => (self.kappa() + 2) * &self.q * &self.q,
            BeltKind::B => {
                let t = &self.p - 3;
                (&t * &t - self.kappa() * &t + 1) * &self.q * &self.q
            }
        };
        assert_eq!(
            rec.constant(),
            closed_form,
            "recurrence constant disagrees with closed form for {self:?} kind {kind}"
        );
        rec
    }

    /// Both belt recurrences, a-kind first.
    pub fn recurrences(&self) -> (BinaryRecurrence, BinaryRecurrence) {
        (self.recurrence(BeltKind::A), self.recurrence(BeltKind::B))
    }

    /// The reference sequence ã or b̃ of {4,5}.
    pub fn reference_sequence(kind: BeltKind) -> BinaryRecurrence {
        Self::reference().recurrence(kind)
    }

    /// (aₙ, bₙ) obtained by iterating the coupled level system; n ≥ 1.
    pub fn system_terms(&self, n: u64) -> (BigInt, BigInt) {
        assert!(n >= 1, "the coupled system starts at level 1");
        let mut state = BeltState::first(self);
        while state.level < n {
            state.advance();
        }
        (state.roots, state.others)
    }
}

impl std::fmt::Display for SchlafliMosaic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

/// Per-level counters of the coupled belt system.
#[derive(Clone, Debug)]
pub struct BeltState {
    /// (q−3), (q−2), (q−3)(p−3)−1, (q−2)(p−3)−1: the level-step matrix.
    coeffs: [BigInt; 4],
    pub level: u64,
    /// Roots on this level (aₙ).
    pub roots: BigInt,
    /// Non-root vertices on this level (bₙ).
    pub others: BigInt,
}

impl BeltState {
    /// Level 1: a₁ = q, b₁ = (p−3)q.
    pub fn first(mosaic: &SchlafliMosaic) -> Self {
        let p = mosaic.p();
        let q = mosaic.q();
        let c00 = q - 3;
        let c01 = q - 2;
        let c10 = (q - 3) * (p - 3) - 1;
        let c11 = (q - 2) * (p - 3) - 1;
        let state = Self {
            coeffs: [c00, c01, c10, c11],
            level: 1,
            roots: q.clone(),
            others: (p - 3) * q,
        };
        debug_assert!(!state.roots.is_negative() && !state.others.is_negative());
        state
    }

    /// Step to the next level by the coupled system.
    pub fn advance(&mut self) {
        let [c00, c01, c10, c11] = &self.coeffs;
        let roots = c00 * &self.roots + c01 * &self.others;
        let others = c10 * &self.roots + c11 * &self.others;
        self.roots = roots;
        self.others = others;
        self.level += 1;
    }
}
