//! Exact scalars, dense linear algebra and the invertible-element search.

mod detpoly;
mod matrix;
mod scalar;

pub use detpoly::{generic_invertible_element, invertible_combination, GenericDetPoly, MAX_PENCIL_SIZE};
pub use matrix::{dot, is_zero_vec, short, unit_vector, vec_add, vec_scale, vec_sub, Matrix, Rref, Span};
pub use scalar::{Field, Scalar};
