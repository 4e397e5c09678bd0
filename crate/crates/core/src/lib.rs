//! Algebraic geometry over finite algebras.
//!
//! The crate works with algebras of an arbitrary algebraic signature given by
//! finite operation tables. Over such an algebra `B` it solves systems of
//! equations with coefficients, decides membership in radicals and generated
//! ideals, builds coordinate algebras and Zariski closures, enumerates
//! congruences, constructs relatively free algebras of the pre-variety
//! generated by a finite family, and runs both directions of the
//! noetherian / equationally-noetherian correspondence on concrete inputs.
//!
//! Module map:
//!
//! - [`signature`]: languages and their coefficient extensions.
//! - [`terms`]: terms, parsing, printing, evaluation, enumeration.
//! - [`algebra`]: finite algebras, products, quotients, homomorphisms.
//! - [`congruence`]: congruence generation, lattices, chains.
//! - [`equations`]: equations, systems, ideal membership by congruence closure.
//! - [`geometry`]: algebraic sets, radicals, coordinate algebras, closures.
//! - [`freealg`]: relatively free algebras and the theorem harness.
//! - [`cli`]: the batch command-line front end.

pub mod algebra;
pub mod cli;
pub mod closure;
pub mod congruence;
mod dsu;
pub mod equations;
mod error;
pub mod freealg;
pub mod geometry;
pub mod io;
pub mod signature;
pub mod terms;

pub use algebra::{AEmbedding, FiniteAlgebra, Homomorphism};
pub use congruence::Congruence;
pub use equations::{EqSystem, Equation};
pub use error::{Error, Result};
pub use freealg::{Family, FreeAlgebra};
pub use geometry::{AlgebraicSet, ClosedSet, CoordinateAlgebra};
pub use signature::Signature;
pub use terms::Term;

/// Resource guards shared by every exhaustive computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of points scanned in `Bⁿ`, and maximum table entries.
    pub scan_cap: u64,
    /// Maximum carrier size of products and generated function algebras.
    pub product_cap: u64,
    /// Maximum term height accepted by enumeration.
    pub depth_cap: usize,
    /// Maximum number of terms produced by enumeration.
    pub term_cap: u64,
    /// Maximum carrier size for congruence-lattice enumeration.
    pub lattice_cap: usize,
    /// Worker threads for point scans.
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            scan_cap: 10_000_000,
            product_cap: 1_000_000,
            depth_cap: 6,
            term_cap: 1_000_000,
            lattice_cap: 8,
            jobs: 1,
        }
    }
}

/// `base^exp` saturating at `u64::MAX`.
pub(crate) fn checked_pow(base: usize, exp: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u64);
    }
    acc
}
