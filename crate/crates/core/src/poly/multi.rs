use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{Int, Monomial, PolyError, UniPoly, MAX_VARS};

/// Sparse multivariate polynomial with exact integer coefficients.
///
/// Terms are kept sorted by the structural monomial order with no zero
/// coefficients, so two equal polynomials have identical term vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, Int)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: impl Into<Int>, nvars: usize) -> Self {
        Self::monomial(Monomial::ONE, c, nvars)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(1, nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(Monomial::var(i), 1, nvars)
    }

    pub fn monomial(m: Monomial, c: impl Into<Int>, nvars: usize) -> Self {
        let c = c.into();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Int)>) -> Self {
        let mut acc: BTreeMap<Monomial, Int> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(m.support().all(|(i, _)| i < nvars), "variable out of range");
            let e = acc.entry(m).or_insert(Int::ZERO);
            *e = &*e + &c;
        }
        MultiPoly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Int)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> Int {
        match self.terms.binary_search_by(|(t, _)| t.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    /// Re-embeds into a larger (or equal) variable universe.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars || self.terms.iter().all(|(m, _)| m.support().all(|(i, _)| i < nvars)));
        MultiPoly {
            nvars,
            terms: self.terms.clone(),
        }
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.check_ring(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        MultiPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // Multiplying by a monomial preserves the lex order of the exponent arrays.
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: BTreeMap<Monomial, Int> = BTreeMap::new();
        for (m, c) in &small.terms {
            for (n, d) in &large.terms {
                let e = acc.entry(m.mul(n)).or_insert(Int::ZERO);
                *e = &*e + &(c * d);
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Highest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn try_degree(&self) -> Result<u32, PolyError> {
        self.degree().ok_or(PolyError::ZeroPolynomial)
    }

    pub fn try_min_degree(&self) -> Result<u32, PolyError> {
        self.min_degree().ok_or(PolyError::ZeroPolynomial)
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// The lowest-degree homogeneous component (zero stays zero).
    pub fn lowest_form(&self) -> Self {
        match self.min_degree() {
            Some(d) => self.homogeneous_component(d),
            None => self.clone(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.min_degree(), self.degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// Truncation to terms of degree at most `d`.
    pub fn truncate(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .cloned()
                .collect(),
        }
    }

    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content; the sign is left untouched.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.div_exact(&g))).collect(),
        }
    }

    /// Primitive part with a positive coefficient on the structurally largest
    /// monomial; a canonical representative of the line `Q·f`.
    pub fn normalized(&self) -> Self {
        let p = self.primitive_part();
        match p.terms.last() {
            Some((_, c)) if c.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.swap(i, j), c.clone())),
        )
    }

    /// Exact division by `x_i - x_j`, by synthetic division in `x_i`.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<Self, PolyError> {
        assert!(i != j && i < self.nvars && j < self.nvars);
        // Group terms by the exponent of x_i; coefficients live in the other variables.
        let mut by_pow: BTreeMap<u32, Vec<(Monomial, Int)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_pow
                .entry(m.exp(i))
                .or_default()
                .push((m.with_exp(i, 0), c.clone()));
        }
        let Some(&top) = by_pow.keys().next_back() else {
            return Ok(self.clone());
        };
        let xj = MultiPoly::var(j, self.nvars);
        let coeff = |k: u32| -> MultiPoly {
            by_pow
                .get(&k)
                .map(|ts| MultiPoly::from_terms(self.nvars, ts.iter().cloned()))
                .unwrap_or_else(|| MultiPoly::zero(self.nvars))
        };
        // f = sum c_k x_i^k; q_{k-1} = c_k + x_j q_k, remainder = c_0 + x_j q_0.
        let mut quotient = MultiPoly::zero(self.nvars);
        let mut carry = MultiPoly::zero(self.nvars);
        for k in (1..=top).rev() {
            carry = coeff(k).add(&xj.mul(&carry));
            quotient = quotient.add(&carry.mul_monomial(&Monomial::var_pow(i, (k - 1) as u8), &Int::ONE));
        }
        let remainder = coeff(0).add(&xj.mul(&carry));
        if !remainder.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        Ok(quotient)
    }

    /// The isobaric divided difference
    /// `pi_i(f) = ((1 - x_{i+1}) f - (1 - x_i) s_i f) / (x_i - x_{i+1})`,
    /// with `i` zero-based (acts on variables `i` and `i + 1`).
    pub fn divided_difference_pi(&self, i: usize) -> Result<Self, PolyError> {
        assert!(i + 1 < self.nvars, "pi_{i} needs variables {i} and {}", i + 1);
        let one = MultiPoly::one(self.nvars);
        let a = one.sub(&MultiPoly::var(i + 1, self.nvars)).mul(self);
        let b = one
            .sub(&MultiPoly::var(i, self.nvars))
            .mul(&self.swap_vars(i, i + 1));
        a.sub(&b).div_by_difference(i, i + 1)
    }

    /// Replaces every variable by `1 - q`.
    pub fn substitute_all_1mq(&self) -> UniPoly {
        let max_deg = self.degree().unwrap_or(0) as usize;
        let one_minus_q = UniPoly::from_coeffs(vec![Int::ONE, Int::from(-1)]);
        let mut powers = vec![UniPoly::one()];
        for k in 1..=max_deg {
            let next = powers[k - 1].mul(&one_minus_q);
            powers.push(next);
        }
        let mut acc = UniPoly::zero();
        for (m, c) in &self.terms {
            acc = acc.add(&powers[m.degree() as usize].scalar_mul(c));
        }
        acc
    }

    pub fn evaluate(&self, point: &[Int]) -> Int {
        assert!(point.len() >= self.nvars);
        let mut acc = Int::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.support() {
                t = &t * &point[i].pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Homogenizes with variable `t` (which must not occur in `self`).
    pub fn homogenize(&self, t: usize) -> Self {
        let d = self.degree().unwrap_or(0);
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                debug_assert_eq!(m.exp(t), 0);
                (m.with_exp(t, d - m.degree()), c.clone())
            }),
        )
    }

    /// Sets variable `t` to 1.
    pub fn dehomogenize(&self, t: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.with_exp(t, 0), c.clone())),
        )
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Print highest degree first, then structurally largest first.
        let mut order: Vec<&(Monomial, Int)> = self.terms.iter().collect();
        order.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(&a.0)));
        for (k, (m, c)) in order.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .support()
                .map(|(i, e)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x_{}", i + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", abs, mono.join("*")));
            }
        }
        out
    }
}

/// Default names `x_1, …, x_n`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x_{i}")).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
