//! Report rendering and the bundled verification suite behind the
//! `mosaic-belts` binary; exposed as a library so the acceptance tests can
//! drive the claims directly.

pub mod output;
pub mod repro;
