//! Exact computations on simplicial toric varieties: class groups, graded
//! pieces of the Cox ring, Jacobian syzygies, freeness certificates for
//! divisors and foliation checks for polynomial tuples.

pub mod cox;
pub mod error;
pub mod foliation;
pub mod jacobian;
pub mod lattice;
pub mod poly_matrix;
pub mod saito;
pub mod toric;

pub use error::{Error, Result};
