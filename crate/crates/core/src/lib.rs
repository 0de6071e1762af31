//! Exact algebra for hyperplane multiarrangements: Gröbner bases and
//! resolutions over graded free modules, logarithmic forms and derivations,
//! intersection lattices, and theorem-based tameness certificates.
#![no_std]

extern crate alloc;

pub mod arrangement;
pub mod budget;
pub mod certify;
pub mod error;
pub mod field;
pub mod graded;
pub mod groebner;
pub mod hilbert;
pub mod lattice;
pub mod linalg;
pub mod local;
pub mod logmod;
pub mod multi;
pub mod poly;
pub mod resolution;
pub mod sequences;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{Field, FieldTag, PrimeField, Rat, Rationals};
