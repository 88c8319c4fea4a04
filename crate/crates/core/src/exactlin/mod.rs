//! Exact linear algebra over prime fields and the rationals.

mod field;
mod mat;

pub use field::{is_prime, squarefree_part, Field, Scalar};
pub use mat::{Echelon, Mat};
