//! Exact field and polynomial arithmetic, derivations, and the linear
//! algebra kernel used by every rewriting pass.

pub mod coeff;
pub mod field;
pub mod matrix;
pub mod poly;

pub use coeff::Coeff;
pub use field::{parse_element, FieldDescriptor, FieldElement};
pub use matrix::{constants_linear_dependent, wronskian, wronskian_matrix, Matrix};
pub use poly::{FPoly, Mono};
