//! Permutations and their diagram combinatorics.
//!
//! Coordinates: a [`Cell`] is `(row, col)` with rows counted from the top of
//! the `n × n` grid. The graph of `w` has a dot at `(w(i), i)`, so the row
//! axis is the value axis and the column axis is the position axis.
//!
//! The southwest rank `R_w(a, j) = #{h ≤ j : w(h) ≥ a}` counts dots weakly
//! southwest of `(a, j)`. In the bottom-up indexing used for the matrix
//! `Z^(v)` this is `r^w_{n-a+1, j}`.
//!
//! Note that [`Permutation::diagram`] uses the hooks-right-and-up convention,
//! so `|D(w)| = n(n-1)/2 - ℓ(w)` (the co-inversion count) rather than `ℓ(w)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("not a permutation of 1..{n}: {word:?}")]
    NotBijection { n: usize, word: Vec<usize> },
    #[error("cannot parse permutation '{0}'")]
    Parse(String),
    #[error("permutations have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("index ({0}, {1}) outside the {2}x{2} grid")]
    OutOfRange(usize, usize, usize),
    #[error("{v} and {w} are not Bruhat-comparable in the required direction (need v <= w)")]
    NotBelow { v: String, w: String },
    #[error("invalid code {0:?}")]
    InvalidCode(Vec<usize>),
}

/// A permutation of `[n]` in one-line notation; `w(i) = word[i - 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

/// A box of the `n × n` grid, rows from the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Index of the antidiagonal through this box.
    pub fn antidiagonal(&self) -> usize {
        self.row + self.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A set of boxes in the `n × n` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub n: usize,
    pub boxes: BTreeSet<Cell>,
}

impl Diagram {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.boxes.contains(&Cell { row, col })
    }

    /// ASCII grid, `#` for a box and `.` otherwise, top row first.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        for r in 1..=self.n {
            for c in 1..=self.n {
                s.push(if self.contains(r, c) { '#' } else { '.' });
            }
            s.push('\n');
        }
        s
    }
}

/// A partition with zero parts dropped, weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        let ok = n > 0
            && n < 256
            && word.iter().all(|&x| {
                if x == 0 || x > n || seen[x] {
                    false
                } else {
                    seen[x] = true;
                    true
                }
            });
        if !ok {
            return Err(PermError::NotBijection { n, word });
        }
        Ok(Permutation {
            word: word.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// The longest element `w0 = n (n-1) … 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&x| x as usize).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Permutation { word: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `R_w(a, j) = #{h ≤ j : w(h) ≥ a}`.
    pub fn sw_rank(&self, a: usize, j: usize) -> Result<usize, PermError> {
        let n = self.n();
        if a == 0 || j == 0 || a > n || j > n {
            return Err(PermError::OutOfRange(a, j, n));
        }
        Ok(self.sw_rank_unchecked(a, j))
    }

    #[inline]
    pub(crate) fn sw_rank_unchecked(&self, a: usize, j: usize) -> usize {
        self.word[..j].iter().filter(|&&x| x as usize >= a).count()
    }

    /// All southwest ranks; `m[a-1][j-1] = R_w(a, j)`.
    pub fn rank_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut m = vec![vec![0; n]; n];
        for a in 1..=n {
            let mut count = 0;
            for j in 1..=n {
                if self.at(j) >= a {
                    count += 1;
                }
                m[a - 1][j - 1] = count;
            }
        }
        m
    }

    fn check_same_n(&self, other: &Self) -> Result<(), PermError> {
        if self.n() != other.n() {
            return Err(PermError::SizeMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// Bruhat order: `self ≤ other` iff every southwest rank of `self` is at
    /// most the corresponding rank of `other`.
    pub fn bruhat_leq(&self, other: &Self) -> Result<bool, PermError> {
        self.check_same_n(other)?;
        Ok(self.bruhat_leq_unchecked(other))
    }

    pub(crate) fn bruhat_leq_unchecked(&self, other: &Self) -> bool {
        let n = self.n();
        for a in 2..=n {
            let (mut rv, mut rw) = (0usize, 0usize);
            for j in 1..=n {
                if self.at(j) >= a {
                    rv += 1;
                }
                if other.at(j) >= a {
                    rw += 1;
                }
                if rv > rw {
                    return false;
                }
            }
        }
        true
    }

    /// Errors unless `v ≤ w`.
    pub fn require_below(v: &Self, w: &Self) -> Result<(), PermError> {
        if !v.bruhat_leq(w)? {
            return Err(PermError::NotBelow {
                v: v.to_string(),
                w: w.to_string(),
            });
        }
        Ok(())
    }

    /// Right multiplication by the transposition of positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Permutation { word }
    }

    /// `w · s_i` for `1 ≤ i < n`.
    pub fn mul_simple(&self, i: usize) -> Self {
        self.swap_positions(i, i + 1)
    }

    /// `s_i · w`: exchanges the values `i` and `i + 1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let word = self
            .word
            .iter()
            .map(|&x| match x as usize {
                v if v == i => (i + 1) as u8,
                v if v == i + 1 => i as u8,
                _ => x,
            })
            .collect();
        Permutation { word }
    }

    /// Is `s_i · w < w`, i.e. does `i + 1` appear before `i`?
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.word.iter().position(|&x| x as usize == v).unwrap();
        pos(i + 1) < pos(i)
    }

    /// `w0 · w`, i.e. `i ↦ n + 1 - w(i)`.
    pub fn w0_compose(&self) -> Self {
        let n = self.n() as u8;
        Permutation {
            word: self.word.iter().map(|&x| n + 1 - x).collect(),
        }
    }

    /// Elements covering `self` in Bruhat order (length goes up by one).
    pub fn bruhat_covers_up(&self) -> Vec<Self> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let (a, b) = (self.at(i), self.at(j));
                if a < b && (i + 1..j).all(|k| {
                    let c = self.at(k);
                    c < a || c > b
                }) {
                    out.push(self.swap_positions(i, j));
                }
            }
        }
        out
    }

    /// Elements covered by `self` in Bruhat order.
    pub fn bruhat_covers_down(&self) -> Vec<Self> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let (a, b) = (self.at(i), self.at(j));
                if a > b && (i + 1..j).all(|k| {
                    let c = self.at(k);
                    c > a || c < b
                }) {
                    out.push(self.swap_positions(i, j));
                }
            }
        }
        out
    }

    /// Does some subsequence of `self` have the same relative order as `pattern`?
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let k = pattern.n();
        if k > self.n() {
            return false;
        }
        let mut chosen = Vec::with_capacity(k);
        self.pattern_search(pattern, 0, &mut chosen)
    }

    fn pattern_search(&self, pattern: &Permutation, start: usize, chosen: &mut Vec<u8>) -> bool {
        let k = chosen.len();
        if k == pattern.n() {
            return true;
        }
        if self.n() - start < pattern.n() - k {
            return false;
        }
        let target = pattern.word[k];
        for pos in start..self.n() {
            let x = self.word[pos];
            // x must sit relative to earlier picks exactly as target does.
            let consistent = chosen
                .iter()
                .zip(pattern.word.iter())
                .all(|(&c, &p)| (c < x) == (p < target));
            if consistent {
                chosen.push(x);
                if self.pattern_search(pattern, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// 3412-avoiding.
    pub fn is_covexillary(&self) -> bool {
        !self.contains_pattern(&Permutation {
            word: vec![3, 4, 1, 2],
        })
    }

    /// 2143-avoiding.
    pub fn is_vexillary(&self) -> bool {
        !self.contains_pattern(&Permutation {
            word: vec![2, 1, 4, 3],
        })
    }

    /// `D(w) = {(i, j) : i > w(j), j < w^{-1}(i)}`.
    pub fn diagram(&self) -> Diagram {
        let n = self.n();
        let inv = self.inverse();
        let mut boxes = BTreeSet::new();
        for j in 1..=n {
            for i in self.at(j) + 1..=n {
                if j < inv.at(i) {
                    boxes.insert(Cell::new(i, j));
                }
            }
        }
        Diagram { n, boxes }
    }

    /// Boxes of `D(w)` with neither the box above nor the box to the right in `D(w)`.
    pub fn essential_set(&self) -> BTreeSet<Cell> {
        essential_of(&self.diagram())
    }

    /// Row counts of `D(w)` listed as `(c_n, …, c_1)`.
    pub fn code(&self) -> Vec<usize> {
        let d = self.diagram();
        let n = self.n();
        let mut rows = vec![0; n + 1];
        for b in &d.boxes {
            rows[b.row] += 1;
        }
        (1..=n).rev().map(|i| rows[i]).collect()
    }

    /// `λ(w)`: the code sorted decreasingly with zeros dropped.
    pub fn lambda(&self) -> Partition {
        Partition::from_unsorted(self.code())
    }

    /// Inverse of [`Permutation::code`]: `code` is `(c_n, …, c_1)` where `c_i`
    /// counts the values smaller than `i` placed to the left of `i`.
    pub fn from_code(code: &[usize]) -> Result<Self, PermError> {
        let n = code.len();
        let mut order: Vec<u8> = Vec::with_capacity(n);
        for i in 1..=n {
            let c = code[n - i];
            if c > order.len() {
                return Err(PermError::InvalidCode(code.to_vec()));
            }
            order.insert(c, i as u8);
        }
        Ok(Permutation { word: order })
    }

    /// Lexicographic successor, or `None` after the last permutation.
    pub fn next_lex(&self) -> Option<Self> {
        let mut w = self.word.clone();
        let n = w.len();
        if n < 2 {
            return None;
        }
        let mut i = n - 1;
        while i > 0 && w[i - 1] >= w[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = n - 1;
        while w[j] <= w[i - 1] {
            j -= 1;
        }
        w.swap(i - 1, j);
        w[i..].reverse();
        Some(Permutation { word: w })
    }
}

/// The essential set of an arbitrary diagram.
pub fn essential_of(d: &Diagram) -> BTreeSet<Cell> {
    d.boxes
        .iter()
        .filter(|b| !d.contains(b.row.wrapping_sub(1), b.col) && !d.contains(b.row, b.col + 1))
        .copied()
        .collect()
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next = Some(Permutation::identity(n));
    std::iter::from_fn(move || {
        let cur = next.take()?;
        next = cur.next_lex();
        Some(cur)
    })
}

/// `{u : v ≤ u ≤ w}`, grown upward from `v` along Bruhat covers.
/// Sorted by length, then lexicographically.
pub fn bruhat_interval(v: &Permutation, w: &Permutation) -> Result<Vec<Permutation>, PermError> {
    Permutation::require_below(v, w)?;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::from([v.clone()]);
    seen.insert(v.clone());
    while let Some(u) = queue.pop_front() {
        for up in u.bruhat_covers_up() {
            if !seen.contains(&up) && up.bruhat_leq_unchecked(w) {
                seen.insert(up.clone());
                queue.push_back(up);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort_by_key(|p| (p.length(), p.clone()));
    Ok(out)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &x in &self.word {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts a digit string (`7314562`) or comma-separated values
    /// (`7,11,6,10,5,9,4,8,3,2,1`).
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        let word: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            Some(s.bytes().map(|b| (b - b'0') as usize).collect())
        } else {
            None
        };
        let word = word.ok_or_else(|| PermError::Parse(s.to_string()))?;
        Permutation::new(word).map_err(|_| PermError::Parse(s.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
