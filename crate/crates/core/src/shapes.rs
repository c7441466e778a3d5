//! Antidiagonal pushing, `κ(v, w)`, RRW fillings and the covexillary
//! regularity rule.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::{all_permutations, Cell, Diagram, Partition, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{0} is not covexillary (contains 3412); the formula does not apply")]
    NotCovexillary(String),
    #[error("{0} is not vexillary (contains 2143)")]
    NotVexillary(String),
    #[error("pushed diagram is not a Young diagram at {0}")]
    NotYoungDiagram(Cell),
    #[error("essential box {from} moved by {by} leaves the grid")]
    OffGrid { from: Cell, by: usize },
    #[error("no permutation satisfies the moved-box rank conditions for ({v}, {w})")]
    KappaNotFound { v: String, w: String },
    #[error("{count} permutations satisfy the moved-box rank conditions for ({v}, {w})")]
    KappaNotUnique { v: String, w: String, count: usize },
}

/// A set of grid cells; level sets of fillings and their components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CellSet {
    pub cells: BTreeSet<Cell>,
}

impl CellSet {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Longest run along a NW–SE diagonal (`row - col` constant).
    pub fn maxdiag(&self) -> usize {
        maxdiag(self.cells.iter())
    }

    /// Side-adjacency components, each sorted; the list is ordered by smallest cell.
    pub fn components(&self) -> Vec<CellSet> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.cells {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                let nbrs = [
                    (c.row.wrapping_sub(1), c.col),
                    (c.row + 1, c.col),
                    (c.row, c.col.wrapping_sub(1)),
                    (c.row, c.col + 1),
                ];
                for (r, k) in nbrs {
                    let nb = Cell::new(r, k);
                    if self.cells.contains(&nb) && seen.insert(nb) {
                        comp.insert(nb);
                        queue.push_back(nb);
                    }
                }
            }
            out.push(CellSet { cells: comp });
        }
        out
    }
}

impl FromIterator<Cell> for CellSet {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        CellSet {
            cells: iter.into_iter().collect(),
        }
    }
}

pub fn maxdiag<'a>(cells: impl Iterator<Item = &'a Cell>) -> usize {
    let mut counts: BTreeMap<isize, usize> = BTreeMap::new();
    for c in cells {
        *counts.entry(c.row as isize - c.col as isize).or_default() += 1;
    }
    counts.values().copied().max().unwrap_or(0)
}

/// A diagram pushed southwest along antidiagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushed {
    pub n: usize,
    pub shape: Partition,
    /// Pushed cell → source box (`φ`).
    pub phi: BTreeMap<Cell, Cell>,
}

/// Slide the boxes on each antidiagonal to the lowest available positions,
/// keeping their southwest-to-northeast order, and read off the shape.
pub fn push_to_partition(d: &Diagram) -> Result<Pushed, ShapeError> {
    let n = d.n;
    let mut by_anti: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
    for &b in &d.boxes {
        by_anti.entry(b.antidiagonal()).or_default().push(b);
    }
    let mut phi = BTreeMap::new();
    for (s, mut boxes) in by_anti {
        // Southwest first: larger row first.
        boxes.sort_by_key(|b| std::cmp::Reverse(b.row));
        let bottom = (s - 1).min(n);
        for (k, src) in boxes.into_iter().enumerate() {
            let row = bottom - k;
            phi.insert(Cell::new(row, s - row), src);
        }
    }
    let mut row_len = vec![0usize; n + 1];
    for b in phi.keys() {
        row_len[b.row] += 1;
    }
    if let Some(b) = phi.keys().find(|b| b.col > row_len[b.row]) {
        return Err(ShapeError::NotYoungDiagram(*b));
    }
    let mut lengths: Vec<usize> = Vec::new();
    for r in (1..=n).rev() {
        let len = row_len[r];
        if len == 0 {
            break;
        }
        if lengths.last().is_some_and(|&prev| len > prev) {
            return Err(ShapeError::NotYoungDiagram(Cell::new(r, len)));
        }
        lengths.push(len);
    }
    if lengths.iter().sum::<usize>() != phi.len() {
        let stray = phi.keys().next().copied().unwrap_or(Cell::new(0, 0));
        return Err(ShapeError::NotYoungDiagram(stray));
    }
    Ok(Pushed {
        n,
        shape: Partition(lengths),
        phi,
    })
}

/// A filling of a French Young diagram anchored at the bottom-left of the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filling {
    pub n: usize,
    pub shape: Partition,
    pub entries: BTreeMap<Cell, usize>,
    pub phi: BTreeMap<Cell, Cell>,
}

impl Filling {
    /// Rows from the bottom of the grid upward.
    pub fn rows_bottom_up(&self) -> Vec<Vec<usize>> {
        self.shape
            .parts()
            .iter()
            .enumerate()
            .map(|(k, &len)| (1..=len).map(|c| self.entries[&Cell::new(self.n - k, c)]).collect())
            .collect()
    }

    pub fn max_entry(&self) -> usize {
        self.entries.values().copied().max().unwrap_or(0)
    }

    pub fn level_set(&self, k: usize) -> CellSet {
        self.entries
            .iter()
            .filter(|(_, &e)| e >= k)
            .map(|(&c, _)| c)
            .collect()
    }

    pub fn level_components(&self, k: usize) -> Vec<CellSet> {
        self.level_set(k).components()
    }

    /// `Σ_{k ≥ 1} Σ_α maxdiag(α)` over the components `α` of each level set.
    pub fn level_sum(&self) -> usize {
        (1..=self.max_entry())
            .map(|k| self.level_components(k).iter().map(CellSet::maxdiag).sum::<usize>())
            .sum()
    }
}

impl fmt::Display for Filling {
    /// Shortest row on top.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows_bottom_up().iter().rev() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The filling of `λ(u)` whose entry at a pushed cell `b` is `R_u(φ(b))`.
pub fn rank_filling(u: &Permutation) -> Result<Filling, ShapeError> {
    let pushed = push_to_partition(&u.diagram())?;
    let entries = pushed
        .phi
        .iter()
        .map(|(&b, src)| (b, u.sw_rank_unchecked(src.row, src.col)))
        .collect();
    Ok(Filling {
        n: pushed.n,
        shape: pushed.shape,
        entries,
        phi: pushed.phi,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovedBox {
    pub from: Cell,
    pub to: Cell,
    pub imposed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaData {
    pub moved: Vec<MovedBox>,
    pub kappa: Permutation,
}

fn require_covexillary(w: &Permutation) -> Result<(), ShapeError> {
    if w.is_covexillary() {
        Ok(())
    } else {
        Err(ShapeError::NotCovexillary(w.to_string()))
    }
}

/// Move each essential box `(i, j)` of `w` southwest by `ρ = R_v(i, j)` and
/// impose `R_w(i, j) - ρ` there.
pub fn moved_boxes(v: &Permutation, w: &Permutation) -> Result<Vec<MovedBox>, ShapeError> {
    Permutation::require_below(v, w)?;
    let n = w.n();
    let mut out = Vec::new();
    for e in w.essential_set() {
        let rho = v.sw_rank_unchecked(e.row, e.col);
        if e.row + rho > n || e.col <= rho {
            return Err(ShapeError::OffGrid { from: e, by: rho });
        }
        out.push(MovedBox {
            from: e,
            to: Cell::new(e.row + rho, e.col - rho),
            imposed: w.sw_rank_unchecked(e.row, e.col) - rho,
        });
    }
    Ok(out)
}

/// The largest rank function compatible with `R(to) ≤ imposed` at every
/// moved box, if it is the rank function of a permutation.
fn rank_bound_permutation(n: usize, moved: &[MovedBox]) -> Option<Permutation> {
    let bound = |a: usize, j: usize| -> usize {
        let mut b = j.min(n + 1 - a);
        for m in moved {
            let extra = m.to.row.saturating_sub(a) + j.saturating_sub(m.to.col);
            b = b.min(m.imposed + extra);
        }
        b
    };
    let r = |a: usize, j: usize| -> isize {
        if a > n || j == 0 {
            0
        } else {
            bound(a, j) as isize
        }
    };
    let mut word = vec![0usize; n];
    for j in 1..=n {
        for a in 1..=n {
            let dot = r(a, j) - r(a + 1, j) - r(a, j - 1) + r(a + 1, j - 1);
            match dot {
                0 => {}
                1 if word[j - 1] == 0 => word[j - 1] = a,
                _ => return None,
            }
        }
    }
    let u = Permutation::new(word).ok()?;
    (u.rank_matrix()
        .iter()
        .enumerate()
        .all(|(a, row)| row.iter().enumerate().all(|(j, &x)| x == bound(a + 1, j + 1))))
    .then_some(u)
}

fn satisfies(u: &Permutation, w: &Permutation, moved: &[MovedBox]) -> bool {
    moved.iter().all(|m| u.sw_rank_unchecked(m.to.row, m.to.col) == m.imposed)
        && u.length() == w.length()
        && u.is_covexillary()
        && u.lambda() == w.lambda()
}

/// `κ(v, w)`.
///
/// The candidate is the Bruhat-largest permutation obeying the upper bounds
/// at the moved boxes. Every other permutation obeying those bounds lies
/// strictly below it, hence is shorter, so a candidate of length `ℓ(w)`
/// meeting all conditions is the only solution.
pub fn kappa(v: &Permutation, w: &Permutation) -> Result<KappaData, ShapeError> {
    require_covexillary(w)?;
    let moved = moved_boxes(v, w)?;
    if let Some(k) = rank_bound_permutation(w.n(), &moved) {
        if satisfies(&k, w, &moved) {
            return Ok(KappaData { moved, kappa: k });
        }
    }
    if w.n() <= 9 {
        let kappa = kappa_by_search(v, w)?;
        return Ok(KappaData { moved, kappa });
    }
    Err(ShapeError::KappaNotFound {
        v: v.to_string(),
        w: w.to_string(),
    })
}

/// Exhaustive search over `S_n` for `κ(v, w)` with a uniqueness check.
pub fn kappa_by_search(v: &Permutation, w: &Permutation) -> Result<Permutation, ShapeError> {
    require_covexillary(w)?;
    let moved = moved_boxes(v, w)?;
    let found: Vec<Permutation> = all_permutations(w.n())
        .filter(|u| satisfies(u, w, &moved))
        .collect();
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(ShapeError::KappaNotFound {
            v: v.to_string(),
            w: w.to_string(),
        }),
        count => Err(ShapeError::KappaNotUnique {
            v: v.to_string(),
            w: w.to_string(),
            count,
        }),
    }
}

/// `RRW(v, w)`: the rank filling of `κ(v, w)`.
pub fn rrw_filling(v: &Permutation, w: &Permutation) -> Result<Filling, ShapeError> {
    rank_filling(&kappa(v, w)?.kappa)
}

/// The covexillary regularity rule.
pub fn regularity_formula(v: &Permutation, w: &Permutation) -> Result<usize, ShapeError> {
    Ok(rrw_filling(v, w)?.level_sum())
}
