//! Algebraic geometry over finite S-acts.
//!
//! The crate computes the Galois correspondence between congruences on free
//! acts `F_X` and sets of points `F_X → G`, enumerates closed-congruence and
//! variety lattices at a fixed arity, and decides geometric equivalence of
//! finite acts over finite groups through normalized orbit data, falling back
//! to a bounded lattice-comparison oracle.
//!
//! Module map:
//! - [`algebra`]: Cayley-table monoids and groups, subgroups, conjugacy.
//! - [`act`]: finite acts, homomorphisms, orbits, coset acts, (co)products, powers.
//! - [`congruence`]: free acts, relations, congruences, kernels and quotients.
//! - [`galois`]: closure operators, lattices, stability, `Cl` comparison.
//! - [`equivalence`]: canonical forms, the equivalence verdict, classification.

pub mod act;
pub mod algebra;
pub mod congruence;
pub mod equivalence;
pub mod error;
pub mod galois;

pub use act::{coproduct, Act, ActHom, Orbit, OrbitDecomposition};
pub use algebra::{as_group, ConjugacyClassTable, FiniteGroup, FiniteMonoid, Subgroup};
pub use congruence::{Congruence, FreeAct, Relation};
pub use equivalence::{CanonicalForm, Verdict};
pub use error::{Error, Result};
pub use galois::{AffineSpace, ClosedCongruenceLattice, PointSet, VarietyLattice};

/// Environment variable overriding [`Limits::size_cap`].
pub const SIZE_CAP_ENV: &str = "ACTGEO_SIZE_CAP";

/// Caps on exhaustive enumerations (act powers, hom searches, affine spaces).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub size_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { size_cap: 1_000_000 }
    }
}

impl Limits {
    /// Default limits, with the cap taken from `ACTGEO_SIZE_CAP` when it parses.
    pub fn from_env() -> Self {
        std::env::var(SIZE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|size_cap| Limits { size_cap })
            .unwrap_or_default()
    }

    pub(crate) fn check_size(&self, size: u128) -> Result<()> {
        if size > self.size_cap as u128 {
            Err(Error::SizeBoundExceeded { size, cap: self.size_cap })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` without overflow.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
