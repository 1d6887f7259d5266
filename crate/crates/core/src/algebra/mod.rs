//! Scalar and operator algebra shared by every other module.

pub mod diffop;
pub mod indicial;
pub mod kernel;
pub mod matrix;
pub mod mpoly;
pub mod numeric;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod scalar;
pub mod wronskian;

pub use diffop::{rdet, DiffOp, MatDiffOp};
pub use indicial::{indicial_at_infinity, indicial_at_point, integer_roots, IndicialPolynomial, Location};
pub use kernel::polynomial_kernel;
pub use matrix::DenseMat;
pub use mpoly::MPoly;
pub use poly::{Degree, Poly};
pub use ratfunc::RatFunc;
pub use scalar::{Complex, Field, Rational, Ring, Tolerance};
pub use wronskian::{wronskian, wronskian_monic};
