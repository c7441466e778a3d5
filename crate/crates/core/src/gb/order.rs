use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::poly::Monomial;

/// Global monomial orders. Variable 0 is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Total degree, then the weight vector (larger wins), then grevlex.
    GradedWeight(Vec<u32>),
}

impl MonomialOrder {
    /// The order used for homogenized tangent-cone computations with
    /// homogenizing variable `t`: ties in total degree go to the larger
    /// power of `t`, then grevlex on the rest.
    pub fn lazard(t: usize, nvars: usize) -> Self {
        let mut w = vec![0; nvars];
        w[t] = 1;
        MonomialOrder::GradedWeight(w)
    }

    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for i in 0..crate::poly::MAX_VARS {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| revlex_tail(a, b)),
            MonomialOrder::GradedWeight(w) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| weight(w, a).cmp(&weight(w, b)))
                .then_with(|| revlex_tail(a, b)),
        }
    }
}

fn weight(w: &[u32], m: &Monomial) -> u64 {
    m.support()
        .map(|(i, e)| w.get(i).copied().unwrap_or(0) as u64 * e as u64)
        .sum()
}

/// Among monomials of equal degree: the one with the smaller exponent in the
/// last differing variable is larger.
fn revlex_tail(a: &Monomial, b: &Monomial) -> Ordering {
    let (ra, rb) = (a.raw(), b.raw());
    for i in (0..crate::poly::MAX_VARS).rev() {
        if ra[i] != rb[i] {
            return rb[i].cmp(&ra[i]);
        }
    }
    Ordering::Equal
}
