//! Exact sparse polynomial arithmetic.

mod int;
mod monomial;
mod multi;
mod parse;
mod uni;

pub use int::Int;
pub use monomial::{Monomial, MAX_VARS};
pub use multi::{default_names, MultiPoly};
pub use parse::parse_poly;
pub use uni::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division left a nonzero remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
