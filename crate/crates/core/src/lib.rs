//! Finite permutation groups, their conjugacy classes, and the class graphs
//! built from element orders and class sizes.

pub mod catalog;
pub mod classes;
pub mod constructors;
pub mod error;
pub mod galois;
pub mod graphs;
pub mod linear;
pub mod numbers;
pub mod perm;
pub mod verifier;

pub use classes::{decompose, ClassDecomposition, ConjugacyClass, Fingerprint};
pub use error::{GroupError, Result};
pub use perm::{compose, element_order, Group, Permutation, DEFAULT_CAP};
