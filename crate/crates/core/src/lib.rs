//! Finite Euler products, the model functions built from them, and the
//! reference evaluators used to check them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod error;
pub mod eulerprod;
pub mod lcombo;
pub mod refzeta;
pub mod specfun;
pub mod sum;
pub mod zetax;

pub use error::{Error, Result};
pub use num_complex::Complex64;
