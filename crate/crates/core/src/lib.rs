//! Exact-arithmetic toolkit for belt-counting sequences of regular
//! hyperbolic mosaics {p,q}.
//!
//! Around any vertex of such a mosaic the cells form concentric belts whose
//! root and non-root vertex counts obey binary linear recurrences. This
//! crate generates those sequences exactly, solves the generalized Pell
//! equations their norm-form identities induce, searches for terms common to
//! a mosaic and the reference mosaic {4,5}, inverts the quartic reductions
//! of the fixed-index equations, and derives the arithmetic-progression
//! index families that classify solutions modulo the sequence period.
//!
//! Everything is arbitrary-precision integer arithmetic; searches are
//! complete up to explicit bounds that travel with the results.

pub mod arith;
pub mod error;
pub mod intersect;
pub mod mosaic;
pub mod pell;
pub mod periodic;
pub mod quartic;
pub mod recurrence;

pub use error::{Error, Result};
pub use intersect::{Coincidence, MatchRecord, PellSystem};
pub use mosaic::{BeltKind, BeltState, SchlafliMosaic};
pub use pell::{FundamentalUnit, PellEquation, PellSolutionStream, SolutionClass};
pub use periodic::{FamilyCase, FamilyMember, IndexFamily, PeriodProfile};
pub use quartic::{QuarticCase, QuarticCaseKind, QuarticOutcome, QuarticSolution};
pub use recurrence::{BinaryRecurrence, SequenceCursor};
