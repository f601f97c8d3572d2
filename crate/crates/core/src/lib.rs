//! Exact counting of length-3 pattern occurrences over permutation classes
//! that avoid two or three length-3 patterns.

pub mod classes;
pub mod compositions;
pub mod error;
pub mod formulas;
pub mod genfunc;
pub mod oracle;
pub mod perm;
pub mod trees;

pub use error::{Error, Result};
pub use perm::{Occurrence, Pattern, Permutation, Symmetry, SymmetryWord};
