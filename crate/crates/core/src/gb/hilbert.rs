use serde::{Deserialize, Serialize};

use super::GbError;
use crate::poly::{Int, Monomial, UniPoly};

/// Drops generators divisible by another generator; sorted by degree.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), *m));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// `K(q)` with `HS(S/M) = K(q) / (1 - q)^N`. The numerator does not depend on
/// the number of ambient variables.
pub fn hilbert_numerator(gens: &[Monomial]) -> UniPoly {
    numerator_rec(minimalize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Monomial>) -> UniPoly {
    if gens.is_empty() {
        return UniPoly::one();
    }
    if gens[0].is_one() {
        return UniPoly::zero();
    }
    // Pairwise coprime generators form a regular sequence.
    let mut seen = 0u64;
    let mut coprime = true;
    for g in &gens {
        if seen & g.mask() != 0 {
            coprime = false;
            break;
        }
        seen |= g.mask();
    }
    if coprime {
        return gens.iter().fold(UniPoly::one(), |acc, g| {
            acc.mul(&UniPoly::one().sub(&UniPoly::q_pow(g.degree() as usize)))
        });
    }
    // Pivot on the most frequent variable, to its smallest positive exponent.
    let mut counts = [0usize; 64];
    for g in &gens {
        for (i, _) in g.support() {
            counts[i] += 1;
        }
    }
    let x = (0..64).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let e = gens
        .iter()
        .map(|g| g.exp(x))
        .filter(|&e| e > 0)
        .min()
        .unwrap();
    let pivot = Monomial::var_pow(x, e as u8);
    // HN(I) = HN(I + p) + q^e HN(I : p)
    let mut with_pivot: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).copied().collect();
    with_pivot.push(pivot);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.exact_div(&g.gcd(&pivot))).collect();
    let a = numerator_rec(minimalize(with_pivot));
    let b = numerator_rec(minimalize(colon));
    a.add(&b.shift(e as usize))
}

/// Hilbert series data of `S/J` for a monomial ideal `J` in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Numerator over `(1 - q)^N`.
    pub k: UniPoly,
    pub n_vars: usize,
    pub dim: usize,
    pub height: usize,
    /// Numerator over `(1 - q)^dim`.
    pub h: UniPoly,
}

impl HilbertData {
    pub fn from_initial_ideal(gens: &[Monomial], n_vars: usize) -> Result<Self, GbError> {
        let k = hilbert_numerator(gens);
        let (height, h) = k.split_one_minus_q().map_err(|_| GbError::UnitIdeal)?;
        if height > n_vars {
            return Err(GbError::Inconsistent(format!(
                "(1-q)^{height} divides K but there are only {n_vars} variables"
            )));
        }
        Ok(HilbertData {
            k,
            n_vars,
            dim: n_vars - height,
            height,
            h,
        })
    }

    /// Hilbert function values `h(0), …, h(len - 1)`.
    pub fn hilbert_function(&self, len: usize) -> Vec<Int> {
        self.h.series_over_one_minus_q(self.dim, len)
    }

    /// `H(1)`, the multiplicity.
    pub fn multiplicity(&self) -> Int {
        self.h.eval(&Int::ONE)
    }
}

/// `deg K - height`, the regularity of a Cohen–Macaulay quotient.
pub fn regularity_from_k(k: &UniPoly, height: usize) -> Result<usize, GbError> {
    let d = k.degree().ok_or(GbError::UnitIdeal)?;
    d.checked_sub(height).ok_or_else(|| {
        GbError::Inconsistent(format!("deg K = {d} is smaller than the height {height}"))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Postulation {
    /// Largest `m ≥ 0` with `h(m) ≠ p(m)`; `None` if they always agree.
    pub post: Option<usize>,
    pub deg_k_minus_dim: i64,
    /// `deg H - dim` with `H` the numerator over `(1 - q)^dim`.
    pub deg_h_minus_dim: i64,
}

/// Generalized binomial `C(x, k)` for any integer `x`.
fn binomial_poly(x: i64, k: usize) -> Int {
    let mut num = Int::ONE;
    let mut den = Int::ONE;
    for i in 0..k {
        num = &num * &Int::from(x - i as i64);
        den = &den * &Int::from(i as i64 + 1);
    }
    num.div_exact(&den)
}

/// Compares the Hilbert function with the Hilbert polynomial term by term.
pub fn postulation_number(k: &UniPoly, n_vars: usize) -> Result<Postulation, GbError> {
    let deg_k = k.degree().ok_or(GbError::UnitIdeal)? as i64;
    let (mult, h) = k.split_one_minus_q().map_err(|_| GbError::UnitIdeal)?;
    let dim = n_vars.checked_sub(mult).ok_or_else(|| {
        GbError::Inconsistent(format!("(1-q)^{mult} divides K in {n_vars} variables"))
    })?;
    let deg_h = h.degree().unwrap_or(0);
    let hf = h.series_over_one_minus_q(dim, deg_h + 1);
    let mut post = None;
    for m in 0..=deg_h {
        let p = if dim == 0 {
            Int::ZERO
        } else {
            (0..=deg_h).fold(Int::ZERO, |acc, i| {
                let x = m as i64 - i as i64 + dim as i64 - 1;
                &acc + &(&h.coeff(i) * &binomial_poly(x, dim - 1))
            })
        };
        if p != hf[m] {
            post = Some(m);
        }
    }
    Ok(Postulation {
        post,
        deg_k_minus_dim: deg_k - dim as i64,
        deg_h_minus_dim: deg_h as i64 - dim as i64,
    })
}
