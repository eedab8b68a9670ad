//! Catalan numbers, Catalan triangles and the Catalan generating function,
//! from exact integer tables up to the operator calculus `C(T)` for matrices.

pub mod combinatorics;
pub mod error;
pub mod genfun;
pub mod numeric;
pub mod oeis;
pub mod operator_calculus;
pub mod report;
pub mod seq_algebra;
pub mod verify;

pub use error::{Error, Result};
