//! Seifert forms, the covering functor to linking forms over `Q[z, z^-1]`,
//! near-projections and the doubly-slice report.

mod form;
mod lagrangian;
mod report;
mod split;

pub use form::{
    alexander_polynomial, covering, e_endomorphism, presentation_matrix, Covering, QMatrix, SeifertForm, SeifertModule,
};
pub use lagrangian::{cover_lagrangian, CoverLagrangian};
pub use report::{doubly_slice_report, doubly_slice_report_with_precision, PrimeRow, Report, Verdict};
pub use split::{hyperbolic_split, near_projection_test, HyperbolicSplit};
