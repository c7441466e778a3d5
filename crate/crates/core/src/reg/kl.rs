//! Kazhdan–Lusztig polynomials of the symmetric group by the classical recursion.

use std::collections::HashMap;

use crate::perm::{bruhat_interval, PermError, Permutation};
use crate::poly::{Int, UniPoly};

#[derive(Debug, Default)]
pub struct KlCache {
    memo: HashMap<(Permutation, Permutation), UniPoly>,
}

impl KlCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `P_{x,w}(q)`.
    pub fn polynomial(&mut self, x: &Permutation, w: &Permutation) -> Result<UniPoly, PermError> {
        Permutation::require_below(x, w)?;
        Ok(self.p(x, w))
    }

    /// `μ(z, v)`: the coefficient of `q^{(ℓ(v) - ℓ(z) - 1)/2}` in `P_{z,v}`.
    pub fn mu(&mut self, z: &Permutation, v: &Permutation) -> Int {
        let d = v.length() - z.length();
        if d % 2 == 0 {
            return Int::ZERO;
        }
        self.p(z, v).coeff((d - 1) / 2)
    }

    fn p(&mut self, x: &Permutation, w: &Permutation) -> UniPoly {
        if x == w {
            return UniPoly::one();
        }
        if !x.bruhat_leq_unchecked(w) {
            return UniPoly::zero();
        }
        if let Some(p) = self.memo.get(&(x.clone(), w.clone())) {
            return p.clone();
        }
        let n = w.n();
        let descents: Vec<usize> = (1..n).filter(|&i| w.has_left_descent(i)).collect();
        // P_{x,w} = P_{sx,w} whenever sw < w and sx > x.
        let result = if let Some(&i) = descents.iter().find(|&&i| !x.has_left_descent(i)) {
            self.p(&x.left_mul_simple(i), w)
        } else {
            // Every left descent of w is a left descent of x: c = 1.
            let i = descents[0];
            let v = w.left_mul_simple(i);
            let sx = x.left_mul_simple(i);
            let mut acc = self.p(&sx, &v).add(&self.p(x, &v).shift(1));
            let interval = bruhat_interval(x, &v).unwrap_or_default();
            for z in interval.iter().filter(|z| *z != &v && z.has_left_descent(i)) {
                let mu = self.mu(z, &v);
                if mu.is_zero() {
                    continue;
                }
                let k = (w.length() - z.length()) / 2;
                acc = acc.sub(&self.p(x, z).shift(k).scalar_mul(&mu));
            }
            acc
        };
        self.memo.insert((x.clone(), w.clone()), result.clone());
        result
    }
}

pub fn kl_polynomial(v: &Permutation, w: &Permutation) -> Result<UniPoly, PermError> {
    KlCache::new().polynomial(v, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_cases() {
        let w = p("2413");
        assert_eq!(kl_polynomial(&w, &w).unwrap(), UniPoly::one());
        let mut cache = KlCache::new();
        for w in all_permutations(3) {
            for x in all_permutations(3) {
                if x.bruhat_leq(&w).unwrap() {
                    assert_eq!(cache.polynomial(&x, &w).unwrap(), UniPoly::one());
                }
            }
        }
        assert!(kl_polynomial(&p("21"), &p("12")).is_err());
    }

    #[test]
    fn singular_s4_cases() {
        let id = Permutation::identity(4);
        assert_eq!(kl_polynomial(&id, &p("3412")).unwrap(), UniPoly::from_i64(&[1, 1]));
        assert_eq!(kl_polynomial(&id, &p("4231")).unwrap(), UniPoly::from_i64(&[1, 1]));
        assert_eq!(kl_polynomial(&p("1324"), &p("3412")).unwrap(), UniPoly::from_i64(&[1, 1]));
        assert_eq!(kl_polynomial(&p("2143"), &p("4231")).unwrap(), UniPoly::from_i64(&[1, 1]));
        assert_eq!(kl_polynomial(&id, &p("4321")).unwrap(), UniPoly::one());
    }
}
