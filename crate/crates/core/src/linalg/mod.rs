//! Dense matrices over the coefficient rings, Smith normal form and adjugates.

mod matrix;
mod snf;

pub use matrix::Matrix;
pub use snf::{p_valuations, smith_normal_form, SnfResult};
