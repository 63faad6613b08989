//! Linking forms over `Z_(p)` and `Q[z, z^-1]`: data model, checks,
//! primary decomposition, block splitting and auxiliary forms.

mod coeff;
mod decompose;
mod form;
mod frac;
pub mod oracle;
mod residue;

pub use coeff::{LinkRing, PrimeData};
pub use decompose::{
    auxiliary_form, auxiliary_pairing, block_split, primary_decompose, PrimaryDecomposition, PrimaryPart,
};
pub use form::{IntLinkingForm, LaurentLinkingForm, LinkingForm, RingTag};
pub use frac::FracMod;
pub use residue::{ResidueForm, SymmetryUnit};
