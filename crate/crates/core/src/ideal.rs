//! The patterned matrix `Z^(v)` and ideals of minors.
//!
//! Cells are addressed top-down like everywhere else, but variables are
//! named bottom-up: the free entry in top-down row `a`, column `j` is
//! `z_{n-a+1}_{j}`. Variables are ordered by that bottom-up `(i, j)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::{Cell, PermError, Permutation};
use crate::poly::{Int, MultiPoly, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{0} variables needed, at most {MAX_VARS} supported")]
    TooManyVariables(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    One,
    Var(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericMatrix {
    pub n: usize,
    /// `cells[a - 1][j - 1]`, top-down.
    pub cells: Vec<Vec<Entry>>,
    /// Free cells in variable order.
    pub free_vars: Vec<Cell>,
}

impl GenericMatrix {
    pub fn entry(&self, a: usize, j: usize) -> Entry {
        self.cells[a - 1][j - 1]
    }

    pub fn nvars(&self) -> usize {
        self.free_vars.len()
    }

    pub fn var_names(&self) -> Vec<String> {
        self.free_vars.iter().map(|c| var_name(self.n, *c)).collect()
    }
}

impl fmt::Display for GenericMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.var_names();
        let width = names.iter().map(String::len).max().unwrap_or(1);
        for row in &self.cells {
            let shown: Vec<String> = row
                .iter()
                .map(|e| {
                    let s = match e {
                        Entry::Zero => "0".to_string(),
                        Entry::One => "1".to_string(),
                        Entry::Var(k) => names[*k].clone(),
                    };
                    format!("{s:>width$}")
                })
                .collect();
            writeln!(f, "{}", shown.join(" "))?;
        }
        Ok(())
    }
}

/// `z_i_j` with `i` counted from the bottom.
pub fn var_name(n: usize, c: Cell) -> String {
    format!("z_{}_{}", n - c.row + 1, c.col)
}

fn bottom_up_key(n: usize, c: &Cell) -> (usize, usize) {
    (n - c.row + 1, c.col)
}

/// `Z^(v)`: ones at `(v(i), i)`, zeros right of each one in its row and above
/// each one in its column, variables elsewhere.
pub fn generic_matrix(v: &Permutation) -> GenericMatrix {
    let n = v.n();
    let inv = v.inverse();
    let mut free: Vec<Cell> = Vec::new();
    for a in 1..=n {
        for j in 1..=n {
            if j < inv.at(a) && a > v.at(j) {
                free.push(Cell::new(a, j));
            }
        }
    }
    free.sort_by_key(|c| bottom_up_key(n, c));
    let index: HashMap<Cell, usize> = free.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let cells = (1..=n)
        .map(|a| {
            (1..=n)
                .map(|j| {
                    if v.at(j) == a {
                        Entry::One
                    } else if let Some(&k) = index.get(&Cell::new(a, j)) {
                        Entry::Var(k)
                    } else {
                        Entry::Zero
                    }
                })
                .collect()
        })
        .collect();
    GenericMatrix {
        n,
        cells,
        free_vars: free,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IdealKind {
    KazhdanLusztig { v: Permutation, w: Permutation },
    Schubert { w: Permutation },
    TangentCone,
    Adhoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorMode {
    #[default]
    Full,
    Essential,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub generators: Vec<MultiPoly>,
    pub var_names: Vec<String>,
    pub kind: IdealKind,
}

impl Ideal {
    pub fn new(generators: Vec<MultiPoly>, var_names: Vec<String>, kind: IdealKind) -> Self {
        let mut seen = HashSet::new();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.normalized())
            .filter(|g| seen.insert(g.clone()))
            .collect();
        Ideal {
            generators,
            var_names,
            kind,
        }
    }

    pub fn adhoc(generators: Vec<MultiPoly>, nvars: usize) -> Self {
        Ideal::new(generators, crate::poly::default_names(nvars), IdealKind::Adhoc)
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.fmt_with(&self.var_names)).collect()
    }
}

/// Determinants of square submatrices, memoized on (row set, column set).
struct MinorEngine<'a> {
    cells: &'a [Vec<Entry>],
    nvars: usize,
    memo: HashMap<(u32, u32), MultiPoly>,
}

impl<'a> MinorEngine<'a> {
    fn entry_poly(&self, e: Entry) -> Option<MultiPoly> {
        match e {
            Entry::Zero => None,
            Entry::One => Some(MultiPoly::one(self.nvars)),
            Entry::Var(k) => Some(MultiPoly::var(k, self.nvars)),
        }
    }

    /// Rows and columns are zero-based bit masks of equal popcount.
    fn det(&mut self, rows: u32, cols: u32) -> MultiPoly {
        if rows == 0 {
            return MultiPoly::one(self.nvars);
        }
        if let Some(d) = self.memo.get(&(rows, cols)) {
            return d.clone();
        }
        // Expand along the first column.
        let c = cols.trailing_zeros() as usize;
        let rest_cols = cols & (cols - 1);
        let mut acc = MultiPoly::zero(self.nvars);
        let mut sign_negative = false;
        let mut r_mask = rows;
        while r_mask != 0 {
            let r = r_mask.trailing_zeros() as usize;
            r_mask &= r_mask - 1;
            if let Some(e) = self.entry_poly(self.cells[r][c]) {
                let minor = self.det(rows & !(1 << r), rest_cols);
                if !minor.is_zero() {
                    let term = e.mul(&minor);
                    acc = if sign_negative { acc.sub(&term) } else { acc.add(&term) };
                }
            }
            sign_negative = !sign_negative;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    fn go(items: &[usize], k: usize, start: usize, mask: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..=items.len() - k {
            go(items, k - 1, i + 1, mask | (1 << items[i]), out);
        }
    }
    go(items, k, 0, 0, &mut out);
    out
}

/// For each top-down position `(a, j)` in `positions`, all minors of size
/// `rank(a, j) + 1` of the submatrix on rows `a..=n` and columns `1..=j`.
fn minors_ideal(
    n: usize,
    cells: &[Vec<Entry>],
    nvars: usize,
    positions: impl IntoIterator<Item = (Cell, usize)>,
) -> Vec<MultiPoly> {
    let mut engine = MinorEngine {
        cells,
        nvars,
        memo: HashMap::new(),
    };
    let mut out = Vec::new();
    for (pos, rank) in positions {
        let rows: Vec<usize> = (pos.row - 1..n).collect();
        let cols: Vec<usize> = (0..pos.col).collect();
        let k = rank + 1;
        if k > rows.len() || k > cols.len() {
            continue;
        }
        let col_sets = subsets(&cols, k);
        for rs in subsets(&rows, k) {
            for &cs in &col_sets {
                let d = engine.det(rs, cs);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
    }
    out
}

fn rank_positions(w: &Permutation, mode: GeneratorMode) -> Vec<(Cell, usize)> {
    let n = w.n();
    let cells: Vec<Cell> = match mode {
        GeneratorMode::Full => (1..=n)
            .flat_map(|a| (1..=n).map(move |j| Cell::new(a, j)))
            .collect(),
        GeneratorMode::Essential => w.essential_set().into_iter().collect(),
    };
    cells
        .into_iter()
        .map(|c| (c, w.sw_rank_unchecked(c.row, c.col)))
        .filter(|&(c, r)| r < (n - c.row + 1).min(c.col))
        .collect()
}

/// `I_{v,w}`: minors of `Z^(v)` bounded by the southwest ranks of `w`.
pub fn kl_generators(
    v: &Permutation,
    w: &Permutation,
    mode: GeneratorMode,
) -> Result<Ideal, IdealError> {
    Permutation::require_below(v, w)?;
    let z = generic_matrix(v);
    if z.nvars() > MAX_VARS {
        return Err(IdealError::TooManyVariables(z.nvars()));
    }
    let gens = minors_ideal(v.n(), &z.cells, z.nvars(), rank_positions(w, mode));
    Ok(Ideal::new(
        gens,
        z.var_names(),
        IdealKind::KazhdanLusztig {
            v: v.clone(),
            w: w.clone(),
        },
    ))
}

/// `I_w` on the fully generic matrix, restricted to the variables that occur
/// in some constrained southwest submatrix.
pub fn schubert_determinantal_generators(
    w: &Permutation,
    mode: GeneratorMode,
) -> Result<Ideal, IdealError> {
    let n = w.n();
    let positions = rank_positions(w, mode);
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (pos, _) in &positions {
        for a in pos.row..=n {
            for j in 1..=pos.col {
                used.insert(bottom_up_key(n, &Cell::new(a, j)));
            }
        }
    }
    if used.len() > MAX_VARS {
        return Err(IdealError::TooManyVariables(used.len()));
    }
    let free: Vec<Cell> = used.iter().map(|&(i, j)| Cell::new(n - i + 1, j)).collect();
    let index: HashMap<Cell, usize> = free.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let cells: Vec<Vec<Entry>> = (1..=n)
        .map(|a| {
            (1..=n)
                .map(|j| index.get(&Cell::new(a, j)).map_or(Entry::Zero, |&k| Entry::Var(k)))
                .collect()
        })
        .collect();
    let gens = minors_ideal(n, &cells, free.len(), positions);
    let names = free.iter().map(|c| var_name(n, *c)).collect();
    Ok(Ideal::new(gens, names, IdealKind::Schubert { w: w.clone() }))
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(mut m: Vec<Vec<Int>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let (a, b) = (m[rank][c].clone(), m[r][c].clone());
            for k in c..cols {
                m[r][k] = &(&m[r][k] * &a) - &(&m[rank][k] * &b);
            }
        }
        rank += 1;
    }
    rank
}
