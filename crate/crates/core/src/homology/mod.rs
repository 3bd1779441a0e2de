//! Integer homology, Euler characteristics and fundamental-group bookkeeping
//! for triangulations and their subcomplexes.

mod chain;
mod pi1;
mod snf;

pub use chain::{ChainComplex, HomologyGroup, HomologyProfile};
pub use pi1::{
    pi1_presentation, pi1_presentation_with_budget, Complex2, GroupPresentation, Pi1Result, Pi1Status,
    DEFAULT_REWRITE_BUDGET,
};
pub use snf::{smith_normal_form, smith_normal_form_with, IntMatrix, SmithForm, SnfOptions};

use crate::error::Result;

/// Homology of a chain complex with default Smith normal form options.
pub fn homology(c: &ChainComplex) -> Result<HomologyProfile> {
    c.homology()
}

pub fn euler_characteristic(c: &ChainComplex) -> i64 {
    c.euler_characteristic()
}
