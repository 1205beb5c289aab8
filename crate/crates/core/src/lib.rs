//! Exact multiplicities of irreducible representations of a finite quotient
//! `Gamma / Gamma_1` in spaces of modular forms and cusp forms, and an exact
//! check of their linear growth rate.

pub mod arith;
pub mod characters;
pub mod dims;
pub mod error;
pub mod group;
pub mod groupspec;
pub mod harness;
pub mod multiplicity;
pub mod pair;
pub mod signature;

pub use error::{Error, Result};
