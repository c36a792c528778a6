//! Finite categories with daggers, anti-involutions, Hermitian completion
//! and positivity notions, verified exhaustively.
//!
//! The crate is organized bottom-up:
//!
//! - [`cat`]: plain finite categories, functors, natural transformations,
//!   enumeration and equivalence machinery;
//! - [`dagger`]: dagger structures, morphism classification, dagger
//!   equivalences, indefiniteness, unitary π₀, canonical positivity;
//! - [`involutive`]: anti-involutive categories (C, d, η), involutive
//!   functors/transformations, the functor-category involution;
//! - [`herm`]: Hermitian fixed points, the completion, transfer, positivity
//!   notions, unit/counit, triangle identities, biequivalence checks;
//! - [`dsl`]: the `.fincat` text format (parser and canonical printer);
//! - [`gens`]: deterministic fixture generators (deloopings, discrete
//!   involutions, matrix categories over F_{q²}, antitone posets, products);
//! - [`fixtures`]: the named test-fixture suite used throughout.
//!
//! Everything is pure and immutable after validation. With the default
//! `parallel` feature the heavy exhaustive scans use rayon; output order is
//! identical either way.

pub mod cat;
pub mod dagger;
pub mod dsl;
pub mod fixtures;
pub mod gens;
pub mod herm;
pub mod involutive;

pub use cat::{
    compose_functors, enumerate_functors, enumerate_nat_transformations, is_equivalence,
    promote_to_adjoint_equivalence, AdjointEquivalence, CatError, CategoryViolation,
    FiniteCategory, FunctorData, Morphism, NatTransData, Partition, ValidationReport,
};

/// Default cap for enumeration search spaces, overridable via `FINCAT_CAP`.
pub fn default_cap() -> u128 {
    std::env::var("FINCAT_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000)
}
