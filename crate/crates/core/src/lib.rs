//! Exact arithmetic core for maximal exceptional collections of line bundles
//! on the smooth toric Fano threefolds and fourfolds of Picard rank two.
//!
//! Everything here is integer or rational arithmetic on the lattice
//! `Pic(X) = ZH + ZD`. The crate is `no_std` and only needs `alloc`.
//!
//! Module map:
//! - [`variety`]: the registry of the eleven varieties.
//! - [`chow`]: intersection numbers and polynomial evaluation in `H`, `D`.
//! - [`cohomology`]: the dimension oracle, Serre duality, CZ classification.
//! - [`hrr`]: Euler characteristic by Hirzebruch-Riemann-Roch and closed forms.
//! - [`collection`]: exceptionality checks and the pruned enumeration.
//! - [`template`]: parametric collection types and template matching.
//! - [`pairs`]: exceptional-pair tables over one-member families.
//! - [`mutation`]: moves, Orlov seeds, BFS certificates and replay.
#![no_std]

extern crate alloc;

pub mod chow;
pub mod cohomology;
pub mod collection;
pub mod divisor;
pub mod error;
pub mod hrr;
pub mod linear;
pub mod mutation;
pub mod pairs;
pub mod template;
pub mod variety;

pub use cohomology::{cohomology, is_cohomologically_zero, CzTable};
pub use divisor::{Collection, Divisor};
pub use error::Error;
pub use variety::{registry, Realization, VarietyDescriptor};

/// Exact rationals used for every Euler characteristic computation.
pub type Rational = num_rational::Ratio<i128>;
