//! Exact verification of homotopy operators for cyclic groups acting on rings.
//!
//! Two backends share one interface ([`CyclicRing`]):
//!
//! * [`free_ring`] — the free noncommutative ring over the integers on
//!   shift-indexed generators, with the cyclic shift automorphism. An operator
//!   identity that reduces to the zero polynomial there holds in every ring
//!   with a `Z/n`-action, since any instance is a specialization.
//! * [`rings`] — a zoo of concrete finite rings with order-`n` automorphisms
//!   for brute-force checks, norm-one searches, and periodic-complex
//!   (Tate quotient) computations in [`cohomology`].

pub mod cli;
pub mod cohomology;
pub mod cyclic;
pub mod error;
pub mod free_ring;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod rings;

pub use cyclic::CyclicRing;
pub use error::{Error, Result};
