//! Spherical submodule codes over finite commutative chain rings.
//!
//! The ambient space is `V_r = R^d` for a chain ring `R` with residue field
//! `F_q` and `pi^r = 0`. Submodules are kept in Howell normal form, so
//! equality and hashing are structural. Homothety classes are represented by
//! their saturation, and the distance between classes is
//! `n(U1, U2) + n(U2, U1)` with `n(U1, U2) = min { m : pi^m U1 ⊆ U2 }`.
//!
//! Modules:
//! - [`ring`]: `Z/p^r Z` and `F_{p^s}[t]/(t^r)`.
//! - [`submodule`], [`enumerate`]: canonical submodules, saturation, enumeration.
//! - [`metric`]: distances, balls, spheres, distance matrices.
//! - [`codes`]: Sperner, permutation, free and star codes.
//! - [`counting`], [`polynomial`]: Gaussian binomials and ball-counting polynomials.
//! - [`search`]: exact optimal codes by maximum-clique search.

pub mod codes;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod howell;
pub mod metric;
pub mod polynomial;
pub mod ring;
pub mod search;
pub mod submodule;

pub use error::{Error, Result};
pub use ring::{ChainRing, ChainRingSpec, Elem, RingKind};
pub use submodule::{diagonal_module, HomothetyClass, Submodule};

/// Default cap on enumerated objects.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// The enumeration budget, overridable through `SUBMODCODES_BUDGET`.
pub fn enumeration_budget() -> u64 {
    std::env::var("SUBMODCODES_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
