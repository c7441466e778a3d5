use super::buchberger::{Budget, GroebnerBasis};
use super::order::MonomialOrder;
use super::GbError;
use crate::ideal::{Ideal, IdealKind};
use crate::poly::{Monomial, MultiPoly, MAX_VARS};

/// The tangent cone ideal together with its grevlex initial ideal.
#[derive(Debug, Clone)]
pub struct TangentCone {
    /// Lowest forms of a standard basis; they generate `⟨LD(f) : f ∈ I⟩` and
    /// form a grevlex Gröbner basis of it.
    pub ideal: Ideal,
    pub initial: Vec<Monomial>,
    pub homogeneous_input: bool,
}

/// `⟨LD(f) : f ∈ I⟩`.
///
/// Generators are homogenized with a new variable `t` and a Gröbner basis is
/// computed for the order that breaks degree ties toward higher powers of
/// `t`; after setting `t = 1` this is a standard basis for the local degree
/// order, and the lowest forms of its elements generate the tangent cone.
pub fn lowest_degree_forms_ideal(ideal: &Ideal, budget: Budget) -> Result<TangentCone, GbError> {
    let n = ideal.nvars();
    let homogeneous_input = ideal.generators.iter().all(MultiPoly::is_homogeneous);
    let (forms, initial) = if homogeneous_input {
        let gb = GroebnerBasis::compute(&ideal.generators, n, &MonomialOrder::Grevlex, budget)?;
        (gb.elements(), gb.leading_monomials())
    } else {
        if n + 1 > MAX_VARS {
            return Err(GbError::TooManyVariables(n + 1));
        }
        let t = n;
        let hom: Vec<MultiPoly> = ideal
            .generators
            .iter()
            .map(|g| g.with_nvars(n + 1).homogenize(t))
            .collect();
        let gb = GroebnerBasis::compute(&hom, n + 1, &MonomialOrder::lazard(t, n + 1), budget)?;
        let mut forms = Vec::with_capacity(gb.len());
        let mut initial = Vec::with_capacity(gb.len());
        for (g, lm) in gb.elements().iter().zip(gb.leading_monomials()) {
            forms.push(g.dehomogenize(t).lowest_form().with_nvars(n));
            initial.push(lm.with_exp(t, 0));
        }
        (forms, initial)
    };
    Ok(TangentCone {
        ideal: Ideal::new(forms, ideal.var_names.clone(), IdealKind::TangentCone),
        initial: super::hilbert::minimalize(initial),
        homogeneous_input,
    })
}

/// An ideal is homogeneous iff its reduced grevlex basis is.
pub fn is_homogeneous_ideal(ideal: &Ideal, budget: Budget) -> Result<bool, GbError> {
    let gb = GroebnerBasis::compute(&ideal.generators, ideal.nvars(), &MonomialOrder::Grevlex, budget)?;
    Ok(gb.elements().iter().all(MultiPoly::is_homogeneous))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_names, parse_poly};

    fn ideal(gens: &[&str], n: usize) -> Ideal {
        let names = default_names(n);
        Ideal::adhoc(gens.iter().map(|s| parse_poly(s, &names).unwrap()).collect(), n)
    }

    fn gb(i: &Ideal) -> GroebnerBasis {
        GroebnerBasis::compute(&i.generators, i.nvars(), &MonomialOrder::Grevlex, Budget::UNLIMITED).unwrap()
    }

    #[test]
    fn principal() {
        let tc = lowest_degree_forms_ideal(&ideal(&["x_1 + x_1^2"], 1), Budget::UNLIMITED).unwrap();
        assert!(gb(&tc.ideal).same_ideal(&gb(&ideal(&["x_1"], 1))));
    }

    #[test]
    fn needs_more_than_generator_forms() {
        let tc = lowest_degree_forms_ideal(&ideal(&["x_1 - x_2^2", "x_1"], 2), Budget::UNLIMITED).unwrap();
        assert!(gb(&tc.ideal).same_ideal(&gb(&ideal(&["x_1", "x_2^2"], 2))));
        let tc = lowest_degree_forms_ideal(&ideal(&["x_1 - x_2^2", "x_1 + x_2^3"], 2), Budget::UNLIMITED).unwrap();
        assert!(gb(&tc.ideal).same_ideal(&gb(&ideal(&["x_1", "x_2^2"], 2))));
    }

    #[test]
    fn homogeneous_fixed_point() {
        let i = ideal(&["x_1^2 + x_1*x_2", "x_2*x_3"], 3);
        let tc = lowest_degree_forms_ideal(&i, Budget::UNLIMITED).unwrap();
        assert!(tc.homogeneous_input);
        assert!(gb(&tc.ideal).same_ideal(&gb(&i)));
        assert!(is_homogeneous_ideal(&i, Budget::UNLIMITED).unwrap());
        assert!(!is_homogeneous_ideal(&ideal(&["x_1 - x_2^2"], 2), Budget::UNLIMITED).unwrap());
        // Inhomogeneous generators, homogeneous ideal.
        assert!(is_homogeneous_ideal(&ideal(&["x_1 + x_2^2", "x_2^2"], 2), Budget::UNLIMITED).unwrap());
    }
}
