//! Exact computations with Hadamard products of lines and plane conics in P³.

pub mod error;
pub mod fiber;
pub mod groebner;
pub mod identify;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod product;
pub mod projgeom;
pub mod quadric;
pub mod surface;
pub mod verify;
