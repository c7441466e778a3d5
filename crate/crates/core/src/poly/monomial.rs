use std::fmt;
use std::hash::{Hash, Hasher};

/// Maximum number of variables a monomial can carry. A Kazhdan–Lusztig chart
/// for n = 9 has 36 free variables; the homogenizing variable makes 37.
pub const MAX_VARS: usize = 40;

/// A power product over a fixed variable universe.
///
/// Stored densely for speed; `support()` iterates the sparse view (only the
/// nonzero exponents). `mask` has bit `i` set iff variable `i` occurs, which
/// gives a cheap divisibility prefilter.
#[derive(Clone, Copy)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
    mask: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
        mask: 0,
    };

    pub fn var(i: usize) -> Monomial {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u8) -> Monomial {
        assert!(i < MAX_VARS, "variable index {i} exceeds MAX_VARS");
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m.deg = e as u16;
        if e > 0 {
            m.mask = 1 << i;
        }
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            let e = u8::try_from(e).expect("exponent overflow");
            m.exps[i] = e;
            m.deg += e as u16;
            if e > 0 {
                m.mask |= 1 << i;
            }
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Nonzero `(variable, exponent)` pairs in increasing variable order.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e as u32))
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        let e = u8::try_from(e).expect("exponent overflow");
        m.deg = m.deg - m.exps[i] as u16 + e as u16;
        m.exps[i] = e;
        if e > 0 {
            m.mask |= 1 << i;
        } else {
            m.mask &= !(1 << i);
        }
        m
    }

    /// Exchange the exponents of variables `i` and `j`.
    pub fn swap(&self, i: usize, j: usize) -> Monomial {
        let mut m = *self;
        m.exps.swap(i, j);
        let bi = (m.mask >> i) & 1;
        let bj = (m.mask >> j) & 1;
        if bi != bj {
            m.mask ^= (1 << i) | (1 << j);
        }
        m
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        m.deg = self.deg + other.deg;
        m.mask = self.mask | other.mask;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other | self`.
    #[inline]
    pub fn exact_div(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        let mut mask = 0u64;
        for i in 0..MAX_VARS {
            let e = self.exps[i] - other.exps[i];
            m.exps[i] = e;
            if e > 0 {
                mask |= 1 << i;
            }
        }
        m.deg = self.deg - other.deg;
        m.mask = mask;
        m
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.exact_div(other))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            let e = self.exps[i].max(other.exps[i]);
            m.exps[i] = e;
            deg += e as u16;
        }
        m.deg = deg;
        m.mask = self.mask | other.mask;
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        let mut deg = 0u16;
        let mut mask = 0u64;
        for i in 0..MAX_VARS {
            let e = self.exps[i].min(other.exps[i]);
            m.exps[i] = e;
            deg += e as u16;
            if e > 0 {
                mask |= 1 << i;
            }
        }
        m.deg = deg;
        m.mask = mask;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    /// Raw exponent array; ordering code compares these directly.
    #[inline]
    pub(crate) fn raw(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }
}

impl PartialEq for Monomial {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

// Structural order (lex on the exponent array, variable 0 most significant).
// Used for canonical storage; term orders for Groebner bases live in `gb`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .support()
            .map(|(i, e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[2, 1, 0]);
        let b = Monomial::from_exponents(&[3, 1, 4]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), Some(Monomial::from_exponents(&[1, 0, 4])));
        assert_eq!(a.lcm(&Monomial::var(2)), Monomial::from_exponents(&[2, 1, 1]));
        assert_eq!(a.gcd(&b), a);
        assert_eq!(a.mul(&b).degree(), 11);
        assert!(Monomial::var(0).is_coprime(&Monomial::var(1)));
    }

    #[test]
    fn swap_and_set() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        let s = a.swap(0, 1);
        assert_eq!(s, Monomial::from_exponents(&[0, 2, 1]));
        assert_eq!(s.mask(), 0b110);
        let z = a.with_exp(2, 0);
        assert_eq!(z, Monomial::from_exponents(&[2]));
        assert_eq!(z.degree(), 2);
        let support: Vec<_> = a.support().collect();
        assert_eq!(support, vec![(0, 2), (2, 1)]);
    }
}
