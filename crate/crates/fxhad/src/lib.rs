//! Exact-arithmetic toolkit for skew Hadamard difference sets from unions
//! of cyclotomic classes, their triple intersection number invariants, and
//! inequivalence-to-Paley certification.

pub mod cli;
pub mod characters_gauss;
pub mod config;
pub mod cyclotomic_ring;
pub mod diffsets;
pub mod error;
pub mod finite_field;
pub mod invariants;
pub mod table1;

pub use error::{Error, Result};
