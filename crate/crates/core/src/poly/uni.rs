use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Int, PolyError};

/// Dense univariate polynomial in `q` with exact integer coefficients.
/// Index `i` holds the coefficient of `q^i`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly {
    coeffs: Vec<Int>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Int::ONE],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// `q^k`
    pub fn q_pow(k: usize) -> Self {
        let mut coeffs = vec![Int::ZERO; k + 1];
        coeffs[k] = Int::ONE;
        UniPoly { coeffs }
    }

    /// `(1 - q)^k`
    pub fn one_minus_q_pow(k: usize) -> Self {
        let base = UniPoly::from_i64(&[1, -1]);
        base.pow(k)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or(Int::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Int) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|d| d * c).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Int::ZERO; k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Int::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Long division; the divisor's leading coefficient must divide every
    /// intermediate leading coefficient, otherwise the division is inexact.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self), PolyError> {
        let dd = den.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = &den.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Int::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&q * d);
            }
            quot[k] = q;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn exact_div(&self, den: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Largest `k` with `(1 - q)^k | self`, together with the cofactor.
    /// The zero polynomial is rejected.
    pub fn split_one_minus_q(&self) -> Result<(usize, Self), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let base = UniPoly::from_i64(&[1, -1]);
        let mut k = 0;
        let mut cur = self.clone();
        while cur.eval(&Int::ONE).is_zero() {
            cur = cur.exact_div(&base)?;
            k += 1;
        }
        Ok((k, cur))
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// First `len` coefficients of the power series `self / (1 - q)^d`.
    pub fn series_over_one_minus_q(&self, d: usize, len: usize) -> Vec<Int> {
        let mut s: Vec<Int> = (0..len).map(|i| self.coeff(i)).collect();
        // Each division by (1 - q) is a prefix sum.
        for _ in 0..d {
            for i in 1..len {
                s[i] = &s[i] + &s[i - 1];
            }
        }
        s
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(Int::to_i64).collect()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{abs}*q^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
