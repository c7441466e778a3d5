mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schubreg::gb::{
    hilbert_numerator, is_homogeneous_ideal, lowest_degree_forms_ideal, Budget, GroebnerBasis, HilbertData,
    MonomialOrder,
};
use schubreg::ideal::Ideal;
use schubreg::poly::{default_names, parse_poly};
use schubreg::UniPoly;

#[test]
fn tangent_cone_matches_macaulay_matrix_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e);
    let mut checked = 0;
    while checked < 120 {
        let (nv, gens) = random_ideal(&mut rng, false);
        if gens.is_empty() {
            continue;
        }
        tangent_cone_against_oracle(nv, &gens, 6).unwrap();
        checked += 1;
    }
}

#[test]
fn hilbert_numerator_matches_standard_monomial_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x41b3);
    for _ in 0..150 {
        let (nv, gens) = random_monomial_ideal(&mut rng);
        numerator_against_counts(nv, &gens, 10).unwrap();
        let data = HilbertData::from_initial_ideal(&gens, nv).unwrap();
        assert_eq!(data.hilbert_function(11), hilbert_numerator(&gens).series_over_one_minus_q(nv, 11));
    }
}

#[test]
fn groebner_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..80 {
        let (nv, gens) = random_ideal(&mut rng, round % 2 == 0);
        if gens.is_empty() {
            continue;
        }
        let grevlex = GroebnerBasis::compute(&gens, nv, &MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap();
        let lex = GroebnerBasis::compute(&gens, nv, &MonomialOrder::Lex, Budget::UNLIMITED).unwrap();
        for gb in [&grevlex, &lex] {
            assert!(gb.verify_s_pairs(), "{gens:?}");
            for g in &gens {
                assert!(gb.normal_form(g).is_zero(), "{g:?} not reduced to 0 by {:?}", gb.elements());
            }
            let lms = gb.leading_monomials();
            for (i, a) in lms.iter().enumerate() {
                for (j, b) in lms.iter().enumerate() {
                    assert!(i == j || !a.divides(b), "basis not reduced");
                }
            }
        }
        assert!(grevlex.same_ideal(&lex));
    }
}

#[test]
fn hilbert_series_is_order_independent_for_homogeneous_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a11);
    for _ in 0..60 {
        let (nv, gens) = random_ideal(&mut rng, true);
        if gens.is_empty() {
            continue;
        }
        let a = GroebnerBasis::compute(&gens, nv, &MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap();
        let b = GroebnerBasis::compute(&gens, nv, &MonomialOrder::Lex, Budget::UNLIMITED).unwrap();
        assert_eq!(
            hilbert_numerator(&a.leading_monomials()),
            hilbert_numerator(&b.leading_monomials()),
            "{gens:?}"
        );
    }
}

#[test]
fn homogeneous_ideals_are_their_own_tangent_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e0e);
    for _ in 0..40 {
        let (nv, gens) = random_ideal(&mut rng, true);
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::adhoc(gens.clone(), nv);
        let tc = lowest_degree_forms_ideal(&ideal, Budget::UNLIMITED).unwrap();
        assert!(tc.homogeneous_input);
        assert!(is_homogeneous_ideal(&ideal, Budget::UNLIMITED).unwrap());
        let a = GroebnerBasis::compute(&gens, nv, &MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap();
        let b = GroebnerBasis::compute(&tc.ideal.generators, nv, &MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap();
        assert!(a.same_ideal(&b));
    }
}

fn ideal(gens: &[&str], n: usize) -> Ideal {
    let names = default_names(n);
    Ideal::adhoc(gens.iter().map(|s| parse_poly(s, &names).unwrap()).collect(), n)
}

#[test]
fn plane_curve_tangent_cones() {
    // Node: y^2 - x^2 - x^3 has tangent cone y^2 - x^2, multiplicity 2.
    let node = ideal(&["x_2^2 - x_1^2 - x_1^3"], 2);
    let tc = lowest_degree_forms_ideal(&node, Budget::UNLIMITED).unwrap();
    let expected = parse_poly("x_2^2 - x_1^2", &default_names(2)).unwrap();
    assert_eq!(tc.ideal.generators.len(), 1);
    assert_eq!(tc.ideal.generators[0].normalized(), expected.normalized());
    let data = HilbertData::from_initial_ideal(&tc.initial, 2).unwrap();
    assert_eq!(data.h, UniPoly::from_i64(&[1, 1]));

    // A hidden homogeneous ideal: <x + y^2, x> = <x, y^2>.
    let hidden = ideal(&["x_1 + x_2^2", "x_1"], 2);
    assert!(is_homogeneous_ideal(&hidden, Budget::UNLIMITED).unwrap());
    assert!(!lowest_degree_forms_ideal(&hidden, Budget::UNLIMITED).unwrap().homogeneous_input);

    // Smooth curve: tangent cone is a line.
    let smooth = ideal(&["x_2 - x_1^2"], 2);
    let tc = lowest_degree_forms_ideal(&smooth, Budget::UNLIMITED).unwrap();
    let data = HilbertData::from_initial_ideal(&tc.initial, 2).unwrap();
    assert_eq!(data.h, UniPoly::one());
    assert_eq!(data.dim, 1);
}

#[test]
fn budget_is_enforced() {
    let i = ideal(&["x_1^2 - x_2", "x_1*x_2 - 1"], 2);
    let budget = Budget {
        max_pairs: Some(0),
        max_ms: None,
    };
    assert!(GroebnerBasis::compute(&i.generators, 2, &MonomialOrder::Grevlex, budget).is_err());
}
