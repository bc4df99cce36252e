//! Exact scalars, dense matrices and the tensor-index convention shared by
//! every other module.

mod field;
mod linalg;
mod matrix;
mod parse;
mod scalar;
mod tensor;

pub use field::FieldSpec;
pub use linalg::{coordinates, inverse, kernel, rank, rref, solve_affine, AffineSolution, LinalgError, Rref};
pub use matrix::Matrix;
pub use parse::ScalarParseError;
pub use scalar::{cyclotomic_polynomial, cyclotomic_root, NotCyclotomic, Scalar};
pub use tensor::{basis_tuples, tensor_coords, tensor_index, IndexOutOfRange, Tensor, TensorMap};
