//! Exact computations around the Hecke algebra of the braid group:
//! Ocneanu's trace and Homfly polynomials of braid closures, the left and
//! right inner products with their orthonormal permutation-braid bases,
//! Legendrian fronts with oriented-ruling enumeration, and an independent
//! skein-relation Homfly oracle.

pub mod braid;
pub mod error;
pub mod front;
pub mod hecke;
pub mod inner;
pub mod poly;
pub mod selfcheck;
pub mod skein;
pub mod trace;

pub use braid::{BraidWord, Permutation};
pub use error::{Error, Result};
pub use hecke::HeckeElement;
pub use poly::{LaurentPoly2, Var};
pub use trace::Side;
