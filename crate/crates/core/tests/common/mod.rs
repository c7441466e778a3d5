//! Oracles shared by the kernel tests and the acceptance gate.
#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use schubreg::gb::{hilbert_numerator, lowest_degree_forms_ideal, Budget, HilbertData};
use schubreg::ideal::Ideal;
use schubreg::poly::{Monomial, MultiPoly};
use schubreg::Int;

pub fn monomials_up_to(nv: usize, d: u32) -> Vec<Monomial> {
    fn rec(nv: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == nv {
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(nv, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(nv, 0, d, &mut vec![0; nv], &mut out);
    out.sort_by_key(|m| (m.degree(), *m));
    out
}

pub fn random_poly(rng: &mut ChaCha8Rng, nv: usize, max_deg: u32, homogeneous: Option<u32>) -> MultiPoly {
    let pool: Vec<Monomial> = monomials_up_to(nv, max_deg)
        .into_iter()
        .filter(|m| !m.is_one() && homogeneous.is_none_or(|d| m.degree() == d))
        .collect();
    let nterms = rng.gen_range(1..=3);
    let terms = (0..nterms).map(|_| {
        let m = pool[rng.gen_range(0..pool.len())];
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        (m, Int::from(c))
    });
    MultiPoly::from_terms(nv, terms)
}

pub fn random_ideal(rng: &mut ChaCha8Rng, homogeneous: bool) -> (usize, Vec<MultiPoly>) {
    let nv = rng.gen_range(1..=4);
    let ngens = rng.gen_range(1..=3);
    let gens = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            random_poly(rng, nv, 3, homogeneous.then_some(d))
        })
        .filter(|g| !g.is_zero())
        .collect();
    (nv, gens)
}

pub fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Row-echelon form over ℚ, pivoting on the leftmost nonzero column.
pub fn echelon(mut rows: Vec<Vec<BigRational>>) -> Vec<(usize, Vec<BigRational>)> {
    let mut out: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let ncols = rows.first().map_or(0, Vec::len);
    for col in 0..ncols {
        let Some(pos) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let pivot = rows.swap_remove(pos);
        for r in rows.iter_mut() {
            if !r[col].is_zero() {
                let f = &r[col] / &pivot[col];
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        out.push((col, pivot));
    }
    out
}

pub fn to_row(f: &MultiPoly, index: &HashMap<Monomial, usize>, width: usize) -> Vec<BigRational> {
    let mut row = vec![BigRational::zero(); width];
    for (m, c) in f.terms() {
        if let Some(&i) = index.get(m) {
            row[i] = BigRational::from_integer(c.to_big());
        }
    }
    row
}

/// `dim LD(I)_d` for `d ≤ trunc`, from the span of `m·g` modulo `𝔪^{trunc+1}`.
/// Echelon rows of one degree, keyed by pivot column.
pub type Span = Vec<(usize, Vec<BigRational>)>;

pub fn macaulay_tangent_dims(gens: &[MultiPoly], nv: usize, trunc: u32) -> (Vec<usize>, Vec<Span>) {
    let monos = monomials_up_to(nv, trunc);
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for m in &monos {
            let prod = g.mul_monomial(m, &Int::ONE).truncate(trunc);
            if !prod.is_zero() {
                rows.push(to_row(&prod, &index, monos.len()));
            }
        }
    }
    let ech = echelon(rows);
    let mut dims = vec![0; trunc as usize + 1];
    let mut by_degree: Vec<Span> = vec![Vec::new(); trunc as usize + 1];
    for (col, row) in ech {
        let d = monos[col].degree() as usize;
        dims[d] += 1;
        let low: Vec<BigRational> = row
            .iter()
            .enumerate()
            .map(|(i, x)| if monos[i].degree() as usize == d { x.clone() } else { BigRational::zero() })
            .collect();
        by_degree[d].push((col, low));
    }
    (dims, by_degree)
}

pub fn in_span(space: &[(usize, Vec<BigRational>)], v: Vec<BigRational>) -> bool {
    let base = echelon(space.iter().map(|(_, r)| r.clone()).collect()).len();
    let mut rows: Vec<Vec<BigRational>> = space.iter().map(|(_, r)| r.clone()).collect();
    rows.push(v);
    echelon(rows).len() == base
}

pub fn count_standard(gens: &[Monomial], nv: usize, d: u32) -> usize {
    monomials_up_to(nv, d)
        .into_iter()
        .filter(|m| m.degree() == d && !gens.iter().any(|g| g.divides(m)))
        .count()
}

/// Compares the tangent cone's Hilbert function and generators with the
/// truncated Macaulay matrix of `gens` up to degree `trunc`.
pub fn tangent_cone_against_oracle(nv: usize, gens: &[MultiPoly], trunc: u32) -> Result<(), String> {
    let ideal = Ideal::adhoc(gens.to_vec(), nv);
    let tc = lowest_degree_forms_ideal(&ideal, Budget::UNLIMITED).map_err(|e| e.to_string())?;
    let data = HilbertData::from_initial_ideal(&tc.initial, nv).map_err(|e| e.to_string())?;
    let hf = data.hilbert_function(trunc as usize + 1);
    let (dims, spaces) = macaulay_tangent_dims(gens, nv, trunc);
    for d in 0..=trunc as usize {
        let expected = binom(d + nv - 1, nv - 1) - dims[d];
        if hf[d] != Int::from(expected as i64) {
            return Err(format!("{gens:?}: h({d}) = {} but the oracle gives {expected}", hf[d]));
        }
    }
    let monos = monomials_up_to(nv, trunc);
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    for h in &tc.ideal.generators {
        let d = h.degree().unwrap_or(0);
        if !h.is_homogeneous() {
            return Err(format!("{h:?} is not homogeneous"));
        }
        if d <= trunc && !in_span(&spaces[d as usize], to_row(h, &index, monos.len())) {
            return Err(format!("{h:?} is not a lowest form of {gens:?}"));
        }
    }
    Ok(())
}

pub fn random_monomial_ideal(rng: &mut ChaCha8Rng) -> (usize, Vec<Monomial>) {
    let nv = rng.gen_range(1..=4);
    let ngens = rng.gen_range(0..=4);
    let gens = (0..ngens)
        .map(|_| {
            let e: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..=3)).collect();
            Monomial::from_exponents(&e)
        })
        .filter(|m| !m.is_one())
        .collect();
    (nv, gens)
}

/// Compares `K(q)/(1-q)^N` with standard monomial counts up to degree `top`.
pub fn numerator_against_counts(nv: usize, gens: &[Monomial], top: u32) -> Result<(), String> {
    let series = hilbert_numerator(gens).series_over_one_minus_q(nv, top as usize + 1);
    for d in 0..=top {
        let brute = count_standard(gens, nv, d);
        if series[d as usize] != Int::from(brute as i64) {
            return Err(format!("{gens:?}: degree {d} has {brute} standard monomials, series says {}", series[d as usize]));
        }
    }
    Ok(())
}
