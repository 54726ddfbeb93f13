//! Palindromic automorphisms of free groups and their images in the integer
//! parity subgroup: words and maps, abelianization with palindromic lifts,
//! reducible-matrix conjugacy, commutant lattices and z-class audits.

pub mod abelianization;
pub mod centralizer;
pub mod error;
pub mod freegroup;
pub mod intmat;
pub mod lattice;
pub mod reducible;
pub mod zclass;

pub use error::{Error, Result};
pub use freegroup::{EndoMap, Permutation, Word};
pub use intmat::IntMatrix;
