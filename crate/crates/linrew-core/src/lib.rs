//! Rewriting engine for linear (2,2)-categories presented by left-monomial
//! linear (3,2)-polygraphs: diagrams as slice stacks modulo exchange, linear
//! combinations over exact rationals, rewriting, critical branchings,
//! confluence and decreasingness checks, and basis comparison.

pub mod basis;
pub mod confluence;
pub mod diagram;
pub mod error;
pub mod io;
pub mod lincomb;
pub mod polygraph;
pub mod render;
pub mod presets;
pub mod rewrite;
pub mod wiring;
pub mod word;

pub use diagram::{Context, Gen2, Monomial, Slice};
pub use error::{LinrewError, Result};
pub use lincomb::LinComb;
pub use word::{StrandLabel, Word};
