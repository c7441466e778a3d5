use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use super::order::MonomialOrder;
use super::GbError;
use crate::poly::{Int, Monomial, MultiPoly};

/// Resource limits for a single Gröbner computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: Option<usize>,
    pub max_ms: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_pairs: None,
        max_ms: None,
    };

    pub fn ms(ms: u64) -> Self {
        Budget {
            max_pairs: None,
            max_ms: Some(ms),
        }
    }
}

/// Terms sorted by decreasing monomial order.
type Terms = Vec<(Monomial, Int)>;

fn to_terms(f: &MultiPoly, order: &MonomialOrder) -> Terms {
    let mut t: Terms = f.terms().to_vec();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn from_terms(t: Terms, nvars: usize) -> MultiPoly {
    MultiPoly::from_terms(nvars, t)
}

fn content(t: &Terms) -> Int {
    let mut g = Int::ZERO;
    for (_, c) in t {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
fn make_primitive(t: &mut Terms) {
    if t.is_empty() {
        return;
    }
    let mut g = content(t);
    if t[0].1.is_negative() {
        g = -&g;
    }
    if !g.is_one() {
        for (_, c) in t.iter_mut() {
            *c = c.div_exact(&g);
        }
    }
}

/// `a·f - c·m·g`, where the leading terms cancel.
fn axpy(order: &MonomialOrder, f: &[(Monomial, Int)], a: &Int, g: &[(Monomial, Int)], c: &Int, m: &Monomial) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() && j < g.len() {
        let gm = g[j].0.mul(m);
        match order.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push((f[i].0, &f[i].1 * a));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -&(&g[j].1 * c)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &(&f[i].1 * a) - &(&g[j].1 * c);
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    for t in &f[i..] {
        out.push((t.0, &t.1 * a));
    }
    for t in &g[j..] {
        out.push((t.0.mul(m), -&(&t.1 * c)));
    }
    out
}

/// Fraction-free reduction step coefficients: `lcf·a == lcg·c` with `a`, `c` coprime.
fn cancel_coeffs(lcf: &Int, lcg: &Int) -> (Int, Int) {
    let g = lcf.gcd(lcg);
    let a = lcg.div_exact(&g);
    let c = lcf.div_exact(&g);
    if a.is_negative() {
        (-&a, -&c)
    } else {
        (a, c)
    }
}

struct Reducers<'a> {
    polys: &'a [Terms],
    active: &'a [usize],
}

impl Reducers<'_> {
    fn find(&self, m: &Monomial) -> Option<&Terms> {
        self.active
            .iter()
            .map(|&k| &self.polys[k])
            .find(|g| g[0].0.divides(m))
    }
}

/// Reduces until the leading term is irreducible (or `f` vanishes).
fn top_reduce(order: &MonomialOrder, mut f: Terms, red: &Reducers<'_>) -> Terms {
    let mut steps = 0u32;
    while let Some((lm, lc)) = f.first() {
        let Some(g) = red.find(lm) else { break };
        let m = lm.exact_div(&g[0].0);
        let (a, c) = cancel_coeffs(lc, &g[0].1);
        f = axpy(order, &f, &a, g, &c, &m);
        steps += 1;
        if steps % 8 == 0 || f.first().is_some_and(|t| matches!(t.1, Int::Big(_))) {
            make_primitive(&mut f);
        }
    }
    make_primitive(&mut f);
    f
}

/// Full reduction; the result is the remainder up to a nonzero scalar.
fn full_reduce(order: &MonomialOrder, f: Terms, red: &Reducers<'_>) -> Terms {
    let mut rest = f;
    let mut done: Terms = Vec::new();
    loop {
        rest = top_reduce_keep_scale(order, rest, red, &mut done);
        if rest.is_empty() {
            break;
        }
        done.push(rest.remove(0));
    }
    make_primitive(&mut done);
    done
}

/// Like [`top_reduce`] but scales the already-finished part `done` along with `f`.
fn top_reduce_keep_scale(order: &MonomialOrder, mut f: Terms, red: &Reducers<'_>, done: &mut Terms) -> Terms {
    while let Some((lm, lc)) = f.first() {
        let Some(g) = red.find(lm) else { break };
        let m = lm.exact_div(&g[0].0);
        let (a, c) = cancel_coeffs(lc, &g[0].1);
        f = axpy(order, &f, &a, g, &c, &m);
        if !a.is_one() {
            for (_, x) in done.iter_mut() {
                *x = &*x * &a;
            }
        }
        let big = f.first().is_some_and(|t| matches!(t.1, Int::Big(_)));
        if big {
            // Joint content of the remainder and what is left.
            let g = content(&f).gcd(&content(done));
            if !g.is_zero() && !g.is_one() {
                for (_, x) in f.iter_mut().chain(done.iter_mut()) {
                    *x = x.div_exact(&g);
                }
            }
        }
    }
    f
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
    alive: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_skipped: usize,
}

/// A reduced Gröbner basis: minimal, tail-reduced, each element primitive
/// with positive leading coefficient, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<Terms>,
    pub stats: GbStats,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    polys: Vec<Terms>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    heap: BinaryHeap<Reverse<(u32, u32, usize)>>,
    stats: GbStats,
}

impl<'a> Engine<'a> {
    fn lm(&self, k: usize) -> &Monomial {
        &self.polys[k][0].0
    }

    fn push_pair(&mut self, i: usize, j: usize) {
        let lcm = self.lm(i).lcm(self.lm(j));
        let s_i = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let s_j = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        let sugar = s_i.max(s_j);
        let id = self.pairs.len();
        self.heap.push(Reverse((sugar, lcm.degree(), id)));
        self.pairs.push(Pair {
            i,
            j,
            lcm,
            sugar,
            alive: true,
        });
    }

    /// Gebauer–Möller update for a new element `h`.
    fn update(&mut self, h: Terms, sugar: u32) {
        let hk = self.polys.len();
        self.polys.push(h);
        self.sugar.push(sugar);
        let lh = *self.lm(hk);

        // New pairs (h, g): drop those whose lcm is a proper multiple of another's
        // (chain criterion), then those with coprime leading monomials.
        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lg = self.lm(g);
                (g, lh.lcm(lg), lh.is_coprime(lg))
            })
            .collect();
        let mut keep: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, &(g, lcm, coprime)) in cands.iter().enumerate() {
            let dominated = cands.iter().enumerate().any(|(k, &(_, l2, _))| {
                k != idx && l2.divides(&lcm) && (l2 != lcm || k < idx)
            });
            if coprime || !dominated {
                // Among equal lcms keep only the first; coprime ones are kept
                // here so they can still dominate, then discarded below.
                let dup = keep.iter().any(|&(_, l, _)| l == lcm);
                if !dup {
                    keep.push((g, lcm, coprime));
                } else {
                    self.stats.pairs_skipped += 1;
                }
            } else {
                self.stats.pairs_skipped += 1;
            }
        }

        // Old pairs made redundant by h.
        for p in self.pairs.iter_mut().filter(|p| p.alive) {
            if lh.divides(&p.lcm) {
                let li = self.polys[p.i][0].0.lcm(&lh);
                let lj = self.polys[p.j][0].0.lcm(&lh);
                if li != p.lcm && lj != p.lcm {
                    p.alive = false;
                    self.stats.pairs_skipped += 1;
                }
            }
        }

        for (g, _, coprime) in keep {
            if coprime {
                self.stats.pairs_skipped += 1;
            } else {
                self.push_pair(g, hk);
            }
        }

        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(&polys[g][0].0));
        self.active.push(hk);
    }

    fn s_poly(&self, p: &Pair) -> Terms {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = p.lcm.exact_div(&f[0].0);
        let mg = p.lcm.exact_div(&g[0].0);
        let (a, c) = cancel_coeffs(&f[0].1, &g[0].1);
        // a·mf·f - c·mg·g
        let ff: Terms = f.iter().map(|(m, x)| (m.mul(&mf), x.clone())).collect();
        axpy(self.order, &ff, &a, g, &c, &mg)
    }
}

impl GroebnerBasis {
    /// Buchberger's algorithm with the normal selection strategy by sugar
    /// and both Buchberger criteria.
    pub fn compute(
        generators: &[MultiPoly],
        nvars: usize,
        order: &MonomialOrder,
        budget: Budget,
    ) -> Result<GroebnerBasis, GbError> {
        let start = Instant::now();
        let mut engine = Engine {
            order,
            polys: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            heap: BinaryHeap::new(),
            stats: GbStats::default(),
        };
        let mut input: Vec<Terms> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| to_terms(&g.with_nvars(nvars), order))
            .collect();
        input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));
        for f in input {
            let sugar = f.iter().map(|t| t.0.degree()).max().unwrap_or(0);
            let red = Reducers {
                polys: &engine.polys,
                active: &engine.active,
            };
            let h = top_reduce(order, f, &red);
            if !h.is_empty() {
                engine.update(h, sugar);
            }
        }
        while let Some(Reverse((_, _, id))) = engine.heap.pop() {
            if !engine.pairs[id].alive {
                continue;
            }
            engine.pairs[id].alive = false;
            if let Some(limit) = budget.max_pairs {
                if engine.stats.pairs_reduced >= limit {
                    return Err(GbError::Budget {
                        pairs: engine.stats.pairs_reduced,
                        elapsed_ms: start.elapsed().as_millis() as u64,
                    });
                }
            }
            if let Some(ms) = budget.max_ms {
                if start.elapsed() > Duration::from_millis(ms) {
                    return Err(GbError::Budget {
                        pairs: engine.stats.pairs_reduced,
                        elapsed_ms: start.elapsed().as_millis() as u64,
                    });
                }
            }
            let pair = engine.pairs[id].clone();
            let s = engine.s_poly(&pair);
            engine.stats.pairs_reduced += 1;
            let red = Reducers {
                polys: &engine.polys,
                active: &engine.active,
            };
            let h = top_reduce(order, s, &red);
            if h.is_empty() {
                engine.stats.zero_reductions += 1;
            } else {
                engine.update(h, pair.sugar);
            }
        }
        let stats = engine.stats;
        let mut basis: Vec<Terms> = engine.active.iter().map(|&k| engine.polys[k].clone()).collect();
        basis = interreduce(order, basis);
        Ok(GroebnerBasis {
            nvars,
            order: order.clone(),
            elements: basis,
            stats,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<MultiPoly> {
        self.elements.iter().map(|t| from_terms(t.clone(), self.nvars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|t| t[0].0).collect()
    }

    /// Is the ideal the whole ring?
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|t| t[0].0.is_one())
    }

    fn reducers(&self) -> (Vec<usize>, &[Terms]) {
        ((0..self.elements.len()).collect(), &self.elements)
    }

    /// Remainder of `f` on division by the basis, made primitive with positive
    /// leading coefficient (so it is determined up to sign and scale).
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let (active, polys) = self.reducers();
        let red = Reducers {
            polys,
            active: &active,
        };
        let r = full_reduce(&self.order, to_terms(&f.with_nvars(self.nvars), &self.order), &red);
        from_terms(r, self.nvars)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let (active, polys) = self.reducers();
        let red = Reducers {
            polys,
            active: &active,
        };
        let engine = Engine {
            order: &self.order,
            polys: self.elements.clone(),
            sugar: vec![0; self.elements.len()],
            active: Vec::new(),
            pairs: Vec::new(),
            heap: BinaryHeap::new(),
            stats: GbStats::default(),
        };
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let lcm = self.elements[i][0].0.lcm(&self.elements[j][0].0);
                let p = Pair {
                    i,
                    j,
                    lcm,
                    sugar: 0,
                    alive: true,
                };
                let s = engine.s_poly(&p);
                if !top_reduce(&self.order, s, &red).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced bases for the same order are canonical; across orders, checks
    /// containment both ways.
    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        if self.order == other.order {
            return self.elements() == other.elements();
        }
        other.elements().iter().all(|g| self.contains(g)) && self.elements().iter().all(|g| other.contains(g))
    }
}

/// Minimalize, tail-reduce and sort a Gröbner basis.
fn interreduce(order: &MonomialOrder, mut basis: Vec<Terms>) -> Vec<Terms> {
    basis.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut minimal: Vec<Terms> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h[0].0.divides(&g[0].0)) {
            minimal.push(g);
        }
    }
    let n = minimal.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let active: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let red = Reducers {
            polys: &minimal,
            active: &active,
        };
        let mut g = minimal[k].clone();
        let lead = g.remove(0);
        // The leading term is irreducible by minimality; reduce the tail only.
        let mut done = vec![lead];
        let mut rest = g;
        loop {
            rest = top_reduce_keep_scale(order, rest, &red, &mut done);
            if rest.is_empty() {
                break;
            }
            done.push(rest.remove(0));
        }
        make_primitive(&mut done);
        out.push(done);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_names, parse_poly};

    fn polys(gens: &[&str], n: usize) -> Vec<MultiPoly> {
        gens.iter().map(|s| parse_poly(s, &default_names(n)).unwrap()).collect()
    }

    fn gb(gens: &[&str], n: usize, order: MonomialOrder) -> GroebnerBasis {
        GroebnerBasis::compute(&polys(gens, n), n, &order, Budget::UNLIMITED).unwrap()
    }

    #[test]
    fn single_variable() {
        let g = gb(&["x_1"], 2, MonomialOrder::Grevlex);
        assert_eq!(g.elements(), polys(&["x_1"], 2));
    }

    #[test]
    fn minors_of_generic_2x3() {
        // [x1 x2 x3; x4 x5 x6]
        let gens = ["x_1*x_5 - x_2*x_4", "x_1*x_6 - x_3*x_4", "x_2*x_6 - x_3*x_5"];
        let g = gb(&gens, 6, MonomialOrder::Grevlex);
        assert_eq!(g.len(), 3);
        assert!(g.verify_s_pairs());
        for f in polys(&gens, 6) {
            assert!(g.contains(&f));
        }
    }

    #[test]
    fn one_reduction() {
        let g = gb(&["x_1 - x_2^2", "x_1"], 2, MonomialOrder::Grevlex);
        let mut got = g.elements();
        got.sort_by_key(|p| p.to_string());
        let mut want = polys(&["x_1", "x_2^2"], 2);
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn normal_forms() {
        let g = gb(&["x_1^2 - x_2", "x_1*x_2 - 1"], 2, MonomialOrder::Lex);
        assert!(g.verify_s_pairs());
        assert!(g.contains(&polys(&["x_2^3 - 1"], 2)[0]));
        let g = gb(&["x_1*x_2"], 2, MonomialOrder::Grevlex);
        assert_eq!(g.normal_form(&MultiPoly::one(2)), MultiPoly::one(2));
    }

    #[test]
    fn unit_ideal() {
        let g = gb(&["x_1 + 1", "x_1"], 1, MonomialOrder::Grevlex);
        assert!(g.is_unit_ideal());
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let gens = ["x_1^2 - x_2", "x_1*x_2 - 1"];
        let err = GroebnerBasis::compute(
            &polys(&gens, 2),
            2,
            &MonomialOrder::Grevlex,
            Budget {
                max_pairs: Some(0),
                max_ms: None,
            },
        );
        assert!(matches!(err, Err(GbError::Budget { .. })));
    }
}
