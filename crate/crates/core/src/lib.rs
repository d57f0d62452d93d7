//! Exact combinatorial algebra for multiplicity-level ("decategorified")
//! finitary 2-categories.
//!
//! Everything here is exact integer arithmetic over small, explicitly
//! presented data: non-negative integer matrices and their Flor normal form,
//! 2-category presentations with formal direct sums of 1-morphisms,
//! split/multiplicity-free decomposition of idempotent endomorphisms,
//! classification of projective retracts, projective-functor 2-categories of
//! finite-dimensional quiver algebras with a Morita-style equivalence
//! decision, and Kazhdan-Lusztig combinatorics for crystallographic Coxeter
//! systems.
//!
//! The crate is `no_std` (it requires `alloc`); all IO, file formats and the
//! command-line interface live in the companion `decat` crate.
//!
//! # Conventions
//!
//! * `compose(left, right)` always means "apply `right` first, then `left`",
//!   and requires `src(left) == tgt(right)`.
//! * All collections iterate in a deterministic order (`BTreeMap`/sorted
//!   vectors); repeated runs over the same input produce identical results.
//! * Arithmetic is checked: overflow is reported as an error, never wrapped.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coxeter;
pub mod endodecomp;
pub mod laurent;
pub mod nnimat;
pub mod projclass;
pub mod projfun;
pub mod samples;
pub mod soergel;
pub mod twocat;

pub use nnimat::{FlorBlockForm, NniMatrix};
pub use twocat::{MorId, MorSum, ObjectId, Presentation};
