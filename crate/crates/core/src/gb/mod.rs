//! Gröbner bases, tangent cones and Hilbert series.

mod buchberger;
mod hilbert;
mod order;
mod tangent;

pub use buchberger::{Budget, GbStats, GroebnerBasis};
pub use hilbert::{
    hilbert_numerator, minimalize, postulation_number, regularity_from_k, HilbertData, Postulation,
};
pub use order::MonomialOrder;
pub use tangent::{is_homogeneous_ideal, lowest_degree_forms_ideal, TangentCone};

use crate::ideal::{kl_generators, GeneratorMode, IdealError};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GbError {
    #[error("budget exhausted after {pairs} S-pairs and {elapsed_ms} ms")]
    Budget { pairs: usize, elapsed_ms: u64 },
    #[error("{0} variables needed, at most {max} supported", max = crate::poly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("the ideal is the whole ring")]
    UnitIdeal,
    #[error("inconsistent Hilbert data: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Everything the Gröbner route knows about the pair `(v, w)`.
#[derive(Debug, Clone)]
pub struct PairHilbert {
    pub data: HilbertData,
    pub tangent: TangentCone,
    /// Reduced grevlex basis of the tangent cone ideal.
    pub basis: GroebnerBasis,
}

/// `I_{v,w}` → tangent cone → grevlex initial ideal → `K`, `H`, dimension.
/// Checks `dim = ℓ(w) - ℓ(v)` and `height = ℓ(w0 w)`.
pub fn hilbert_data(
    v: &Permutation,
    w: &Permutation,
    mode: GeneratorMode,
    budget: Budget,
) -> Result<PairHilbert, GbError> {
    let ideal = kl_generators(v, w, mode)?;
    let tangent = lowest_degree_forms_ideal(&ideal, budget)?;
    let gb = GroebnerBasis::compute(
        &tangent.ideal.generators,
        ideal.nvars(),
        &MonomialOrder::Grevlex,
        budget,
    )?;
    let initial = minimalize(gb.leading_monomials());
    if initial != tangent.initial {
        return Err(GbError::Inconsistent(format!(
            "initial ideal of the tangent cone of ({v}, {w}) differs from the standard basis leading ideal"
        )));
    }
    let data = HilbertData::from_initial_ideal(&initial, ideal.nvars())?;
    let n = w.n();
    let expected_dim = w.length() - v.length();
    let expected_height = n * (n - 1) / 2 - w.length();
    if data.dim != expected_dim || data.height != expected_height {
        return Err(GbError::Inconsistent(format!(
            "dim {} height {} for ({v}, {w}); expected dim {expected_dim} height {expected_height}",
            data.dim, data.height
        )));
    }
    Ok(PairHilbert {
        data,
        tangent,
        basis: gb,
    })
}
