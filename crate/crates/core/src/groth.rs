//! Grothendieck polynomials by isobaric divided differences.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::perm::Permutation;
use crate::poly::{Monomial, MultiPoly, PolyError, UniPoly};
use crate::shapes::{rank_filling, ShapeError};

/// `𝔊_{w0} = x_1^{n-1} x_2^{n-2} ⋯ x_{n-1}` in `n` variables.
pub fn staircase_monomial(n: usize) -> MultiPoly {
    let exps: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
    MultiPoly::monomial(Monomial::from_exponents(&exps), 1, n)
}

fn ascents(u: &Permutation) -> Vec<usize> {
    (1..u.n()).filter(|&i| u.at(i) < u.at(i + 1)).collect()
}

/// `𝔊_u`, climbing to `w0` by the ascent `rule` picks and applying
/// `π_i` on the way back down. No caching.
pub fn grothendieck_with_rule(
    u: &Permutation,
    rule: impl Fn(&[usize]) -> usize,
) -> Result<MultiPoly, PolyError> {
    let mut chain = Vec::new();
    let mut cur = u.clone();
    loop {
        let asc = ascents(&cur);
        if asc.is_empty() {
            break;
        }
        let i = rule(&asc);
        debug_assert!(asc.contains(&i));
        chain.push(i);
        cur = cur.mul_simple(i);
    }
    let mut g = staircase_monomial(u.n());
    for &i in chain.iter().rev() {
        g = g.divided_difference_pi(i - 1)?;
    }
    Ok(g)
}

/// Memo table for `𝔊_u`, keyed by permutation.
#[derive(Debug, Default)]
pub struct GrothCache {
    table: RwLock<HashMap<Permutation, MultiPoly>>,
}

impl GrothCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `𝔊_u` via the first ascent at each step, memoizing every intermediate.
    pub fn get(&self, u: &Permutation) -> Result<MultiPoly, PolyError> {
        if let Some(g) = self.table.read().unwrap().get(u) {
            return Ok(g.clone());
        }
        let g = match ascents(u).first() {
            None => staircase_monomial(u.n()),
            Some(&i) => self.get(&u.mul_simple(i))?.divided_difference_pi(i - 1)?,
        };
        self.table.write().unwrap().insert(u.clone(), g.clone());
        Ok(g)
    }
}

pub fn grothendieck(u: &Permutation) -> Result<MultiPoly, PolyError> {
    grothendieck_with_rule(u, |asc| asc[0])
}

/// Total degree of `𝔊_u`.
pub fn groth_degree(u: &Permutation) -> Result<usize, PolyError> {
    Ok(grothendieck(u)?.try_degree()? as usize)
}

/// `𝔊_u(1 - q, …, 1 - q)`.
pub fn groth_spec_1mq(u: &Permutation) -> Result<UniPoly, PolyError> {
    Ok(grothendieck(u)?.substitute_all_1mq())
}

/// `ℓ(u)` plus the level-set diagonal sum of the rank filling of `λ(w0 u)`,
/// which equals `deg 𝔊_u` for vexillary `u`.
pub fn vexillary_degree_formula(u: &Permutation) -> Result<usize, ShapeError> {
    if !u.is_vexillary() {
        return Err(ShapeError::NotVexillary(u.to_string()));
    }
    Ok(u.length() + rank_filling(&u.w0_compose())?.level_sum())
}
