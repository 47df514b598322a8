//! Exact scalar, polynomial and rational-function arithmetic.

mod field;
mod poly;
mod ratfunc;

pub use field::{field_arith, is_squarefree, FieldElem, FieldOp};
pub use poly::{poly_gcd, Poly};
pub use ratfunc::{eval_at_zero, ord_at_zero, RatFunc};
