use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schubreg::gb::{self, hilbert_data, lowest_degree_forms_ideal, Budget, GroebnerBasis, MonomialOrder};
use schubreg::ideal::{generic_matrix, kl_generators, schubert_determinantal_generators, Entry, GeneratorMode};
use schubreg::perm::{all_permutations, bruhat_interval};
use schubreg::poly::Monomial;
use schubreg::reg::{
    check_conjectures, finalps_check, kl_polynomial, ps_series, regularity, Flag, KlCache, Method, RegOptions,
    RegularityReport,
};
use schubreg::shapes::regularity_formula;
use schubreg::{Int, Permutation, UniPoly};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let id = Permutation::identity(n);
    all_permutations(n)
        .flat_map(|w| {
            bruhat_interval(&id, &w)
                .unwrap()
                .into_iter()
                .map(move |v| (v, w.clone()))
        })
        .collect()
}

fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pos) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pos);
        for i in rank + 1..rows.len() {
            let f = &rows[i][c] / &rows[rank][c];
            for k in 0..cols {
                let d = &f * &rows[rank][k];
                rows[i][k] -= d;
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn generators_cut_out_the_rank_conditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xdada);
    let mut hits = 0;
    for (v, w) in pairs(4) {
        let z = generic_matrix(&v);
        let ideal = kl_generators(&v, &w, GeneratorMode::Full).unwrap();
        let ranks = w.rank_matrix();
        for _ in 0..12 {
            let point: Vec<i64> = (0..z.nvars()).map(|_| rng.gen_range(-1..=1)).collect();
            let m: Vec<Vec<i64>> = z
                .cells
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| match e {
                            Entry::Zero => 0,
                            Entry::One => 1,
                            Entry::Var(k) => point[*k],
                        })
                        .collect()
                })
                .collect();
            let n = v.n();
            let holds = (1..=n).all(|a| {
                (1..=n).all(|j| {
                    let sub: Vec<Vec<i64>> = m[a - 1..].iter().map(|r| r[..j].to_vec()).collect();
                    rational_rank(&sub) <= ranks[a - 1][j - 1]
                })
            });
            let ipoint: Vec<Int> = point.iter().map(|&x| Int::from(x)).collect();
            let vanish = ideal.generators.iter().all(|g| g.evaluate(&ipoint).is_zero());
            assert_eq!(vanish, holds, "v={v} w={w} point {point:?}");
            hits += usize::from(holds);
        }
    }
    assert!(hits > 100);
}

#[test]
fn essential_generators_give_the_same_ideal() {
    for (v, w) in pairs(4) {
        let full = kl_generators(&v, &w, GeneratorMode::Full).unwrap();
        let ess = kl_generators(&v, &w, GeneratorMode::Essential).unwrap();
        assert!(ess.generators.len() <= full.generators.len());
        let nv = full.nvars();
        let a = GroebnerBasis::compute(&full.generators, nv, &MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap();
        let b = GroebnerBasis::compute(&ess.generators, nv, &MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap();
        assert!(a.same_ideal(&b), "v={v} w={w}");
    }
}

#[test]
fn schubert_determinantal_ideal_codimension() {
    // With southwest rank conditions the codimension is |D(w)| = C(n,2) - ℓ(w).
    for w in all_permutations(4) {
        let ideal = schubert_determinantal_generators(&w, GeneratorMode::Essential).unwrap();
        let gb = GroebnerBasis::compute(&ideal.generators, ideal.nvars(), &MonomialOrder::Grevlex, Budget::UNLIMITED)
            .unwrap();
        let data = gb::HilbertData::from_initial_ideal(&gb.leading_monomials(), ideal.nvars()).unwrap();
        assert_eq!(data.height, w.diagram().len(), "{w}");
        assert_eq!(data.height, 6 - w.length());
    }
}

#[test]
fn dimensions_of_kazhdan_lusztig_varieties() {
    for n in [4, 5] {
        for (v, w) in pairs(n) {
            let hd = hilbert_data(&v, &w, GeneratorMode::Full, Budget::UNLIMITED).unwrap();
            assert_eq!(hd.data.dim, w.length() - v.length());
            assert_eq!(hd.data.height, n * (n - 1) / 2 - w.length());
            assert!(hd.data.h.has_nonnegative_coeffs());
        }
    }
}

#[test]
fn homogeneous_shortcut_where_it_fires() {
    let mut fired = 0;
    for (v, w) in pairs(4) {
        let r = regularity(&v, &w, &RegOptions::with_method(Method::Groebner)).unwrap();
        if r.homogeneous_ideal == Some(true) {
            fired += 1;
            let ideal = kl_generators(&v, &w, GeneratorMode::Full).unwrap();
            let tc = lowest_degree_forms_ideal(&ideal, Budget::UNLIMITED).unwrap();
            let nv = ideal.nvars();
            let a = GroebnerBasis::compute(&ideal.generators, nv, &MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap();
            let b = GroebnerBasis::compute(&tc.ideal.generators, nv, &MonomialOrder::Grevlex, Budget::UNLIMITED)
                .unwrap();
            assert!(a.same_ideal(&b), "v={v} w={w}");
        }
    }
    assert!(fired > 0);
}

#[test]
fn dual_path_agreement_in_s4() {
    for (v, w) in pairs(4).into_iter().filter(|(_, w)| w.is_covexillary()) {
        let r = regularity(&v, &w, &RegOptions::with_method(Method::Both)).unwrap();
        assert!(!r.discrepant, "v={v} w={w}: {:?} vs {:?}", r.formula_reg, r.groebner_reg);
    }
}

#[test]
fn kl_degree_matches_formula_for_covexillary_s4() {
    let mut cache = KlCache::new();
    for (v, w) in pairs(4).into_iter().filter(|(_, w)| w.is_covexillary()) {
        let deg = cache.polynomial(&v, &w).unwrap().degree().unwrap();
        assert_eq!(deg, regularity_formula(&v, &w).unwrap(), "v={v} w={w}");
    }
}

#[test]
fn kl_polynomials_have_constant_term_one_and_bounded_degree() {
    let mut cache = KlCache::new();
    for (v, w) in pairs(5) {
        let pol = cache.polynomial(&v, &w).unwrap();
        assert_eq!(pol.coeff(0), Int::ONE);
        assert!(pol.has_nonnegative_coeffs());
        let span = w.length() - v.length();
        let deg = pol.degree().unwrap();
        assert!(v == w || 2 * deg < span, "v={v} w={w}");
    }
    let golden = kl_polynomial(&p("1423576"), &p("7314562")).unwrap();
    assert_eq!(golden.degree(), Some(2));
}

#[test]
fn finalps_identity_for_covexillary_s4() {
    for (v, w) in pairs(4).into_iter().filter(|(_, w)| w.is_covexillary()) {
        assert!(finalps_check(&v, &w, Budget::UNLIMITED).unwrap().holds, "v={v} w={w}");
    }
}

#[test]
fn covexillary_semicontinuity_in_s5() {
    for w in all_permutations(5).filter(|w| w.is_covexillary()) {
        let interval = bruhat_interval(&Permutation::identity(5), &w).unwrap();
        for v in &interval {
            let here = regularity_formula(v, &w).unwrap();
            for u in v.bruhat_covers_down() {
                assert!(regularity_formula(&u, &w).unwrap() >= here, "u={u} v={v} w={w}");
            }
        }
    }
}

#[test]
fn conjecture_checks_on_s4() {
    for (v, w) in pairs(4) {
        let flags = check_conjectures(&v, &w, Budget::UNLIMITED).unwrap();
        for (name, flag) in &flags {
            assert_ne!(*flag, Flag::Fail, "{name} at v={v} w={w}");
        }
    }
}

#[test]
fn poincare_series_matches_standard_monomials() {
    let v = p("1423576");
    let w = p("7314562");
    let hd = hilbert_data(&v, &w, GeneratorMode::Full, Budget::UNLIMITED).unwrap();
    let nv = hd.data.n_vars;
    let series = ps_series(&v, &w, 7, Budget::UNLIMITED).unwrap();
    // Standard monomials of degree d, by extending degree d - 1 ones.
    let mut layer = vec![Monomial::from_exponents(&[])];
    for d in 0..7 {
        if d > 0 {
            let mut next: Vec<Monomial> = layer
                .iter()
                .flat_map(|m| (0..nv).map(move |i| m.mul(&Monomial::var(i))))
                .filter(|m| !hd.tangent.initial.iter().any(|g| g.divides(m)))
                .collect();
            next.sort();
            next.dedup();
            layer = next;
        }
        assert_eq!(series.coeffs[d], Int::from(layer.len() as i64), "degree {d}");
    }
    assert_eq!(series.multiplicity, Int::from(5));
    assert_eq!(series.h, UniPoly::from_i64(&[1, 3, 1]));
}

#[test]
fn multiplicity_of_the_non_covexillary_example() {
    let s = ps_series(&Permutation::identity(7), &p("6734512"), 3, Budget::UNLIMITED).unwrap();
    assert_eq!(s.multiplicity, Int::from(28));
    assert_eq!(s.h, UniPoly::from_i64(&[1, 4, 9, 9, 4, 1]));
}

#[test]
fn reports_round_trip_through_json() {
    for (v, w) in pairs(4).into_iter().step_by(7) {
        let opts = RegOptions {
            method: Method::Auto,
            verify: true,
            kl: true,
            ps_order: Some(4),
            ..Default::default()
        };
        let r = regularity(&v, &w, &opts).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: RegularityReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
