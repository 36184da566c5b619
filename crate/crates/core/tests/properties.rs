use num_bigint::BigInt;
use proptest::prelude::*;

use permrat::exec::Exec;
use permrat::fields::{find_normal_element, make_field, moore_matrix, FieldConfig};
use permrat::mpoly::{
    resultant_bareiss, resultant_with, substitute_linear, to_extension, IntPoly, IntegerRing, Monomial, PrimeField,
    SparsePoly, VarSet,
};

fn vars() -> VarSet {
    VarSet::param_and_indexed("T", "Y", 3)
}

/// Up to `terms` terms in T, Y1, Y2, Y3 with small exponents.
fn int_poly(terms: usize, max_exp: u16) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((prop::array::uniform4(0..=max_exp), -20i64..=20), 0..=terms).prop_map(|ts| {
        IntPoly::from_terms(
            IntegerRing,
            vars(),
            ts.into_iter().map(|(e, c)| (Monomial::new(&e), BigInt::from(c))),
        )
    })
}

fn y_poly(p: u64, terms: usize) -> impl Strategy<Value = SparsePoly<PrimeField>> {
    prop::collection::vec((prop::array::uniform3(0u16..=3), 0..p), 0..=terms).prop_map(move |ts| {
        SparsePoly::from_terms(
            PrimeField::new(p),
            VarSet::indexed("Y", 3),
            ts.into_iter().map(|(e, c)| (Monomial::new(&e), c)),
        )
    })
}

fn cyclic_sum(f: &SparsePoly<PrimeField>) -> SparsePoly<PrimeField> {
    (0..3).fold(SparsePoly::zero(*f.ring(), f.vars().clone()), |acc, k| acc.add(&f.block_rotate(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(f in int_poly(6, 3), g in int_poly(6, 3), h in int_poly(6, 3)) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(f in int_poly(6, 3), g in int_poly(5, 2)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!(f.mul(&g).exact_div(&g).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in int_poly(6, 3), g in int_poly(6, 3), pt in prop::array::uniform4(-5i64..=5)) {
        let pt: Vec<BigInt> = pt.iter().map(|&v| BigInt::from(v)).collect();
        prop_assert_eq!(f.mul(&g).evaluate(&pt), f.evaluate(&pt) * g.evaluate(&pt));
        prop_assert_eq!(f.add(&g).evaluate(&pt), f.evaluate(&pt) + g.evaluate(&pt));
    }

    #[test]
    fn modular_resultant_matches_bareiss(f in int_poly(5, 2), g in int_poly(5, 2)) {
        let exec = Exec::sequential();
        prop_assert_eq!(resultant_with(&f, &g, 3, &exec), resultant_bareiss(&f, &g, 3));
    }

    #[test]
    fn resultant_is_multiplicative(f in int_poly(4, 2), g in int_poly(4, 2), h in int_poly(4, 2)) {
        let exec = Exec::sequential();
        let lhs = resultant_with(&f.mul(&g), &h, 3, &exec);
        let rhs = resultant_with(&f, &h, 3, &exec).mul(&resultant_with(&g, &h, 3, &exec));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn worker_count_does_not_change_resultant(f in int_poly(5, 2), g in int_poly(5, 2)) {
        let one = resultant_with(&f, &g, 2, &Exec::sequential());
        prop_assert_eq!(&one, &resultant_with(&f, &g, 2, &Exec::with_workers(4)));
    }

    #[test]
    fn tilde_is_multiplicative_involution(f in int_poly(6, 3), g in int_poly(6, 3)) {
        prop_assert_eq!(f.tilde().tilde(), f.clone());
        prop_assert_eq!(f.mul(&g).tilde(), f.tilde().mul(&g.tilde()));
    }

    #[test]
    fn components_sum_back(f in int_poly(8, 3)) {
        let comps = f.homogeneous_components();
        let sum = comps.values().fold(IntPoly::int_zero(vars()), |acc, c| acc.add(c));
        prop_assert_eq!(sum, f);
        for (d, c) in &comps {
            prop_assert!(c.terms().iter().all(|(m, _)| m.degree_in(1..4) == *d));
        }
    }

    #[test]
    fn rotation_has_order_three(f in int_poly(6, 3)) {
        prop_assert_eq!(f.cyclic_shift().cyclic_shift().cyclic_shift(), f.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moore_substitution_round_trips(f in y_poly(5, 5), i in 0u64..125) {
        let cfg = make_field(5, 3).unwrap();
        let m = moore_matrix(&cfg, &cfg.element_at(i));
        prop_assume!(m.is_invertible(&cfg));
        let w = m.inverse(&cfg).unwrap();
        let lifted = to_extension(&f, &cfg);
        prop_assert_eq!(substitute_linear(&substitute_linear(&lifted, &m.rows()), &w.rows()), lifted);
    }

    #[test]
    fn cyclic_stays_cyclic_and_rational(f in y_poly(7, 4)) {
        let cfg = make_field(7, 3).unwrap();
        let f = cyclic_sum(&f);
        let g = substitute_linear(&to_extension(&f, &cfg), &moore_matrix(&cfg, &find_normal_element(&cfg)).rows());
        prop_assert!(g.is_cyclic());
        prop_assert!(g.terms().iter().all(|(_, c)| c.as_prime().is_some()));
    }

    #[test]
    fn field_axioms(a in 0u64..2401, b in 0u64..2401, c in 0u64..2401) {
        let cfg: FieldConfig = make_field(7, 4).unwrap();
        let (a, b, c) = (cfg.element_at(a), cfg.element_at(b), cfg.element_at(c));
        prop_assert_eq!(cfg.mul(&cfg.mul(&a, &b), &c), cfg.mul(&a, &cfg.mul(&b, &c)));
        prop_assert_eq!(cfg.mul(&a, &cfg.add(&b, &c)), cfg.add(&cfg.mul(&a, &b), &cfg.mul(&a, &c)));
        prop_assert_eq!(cfg.frobenius(&cfg.add(&a, &b)), cfg.add(&cfg.frobenius(&a), &cfg.frobenius(&b)));
        prop_assert_eq!(cfg.frobenius(&cfg.mul(&a, &b)), cfg.mul(&cfg.frobenius(&a), &cfg.frobenius(&b)));
        prop_assert_eq!(cfg.trace(&cfg.add(&a, &b)), (cfg.trace(&a) + cfg.trace(&b)) % 7);
        if let Some(inv) = cfg.inv(&a) {
            prop_assert_eq!(cfg.mul(&a, &inv), cfg.one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(cfg.index(&a), cfg.index(&cfg.element_at(cfg.index(&a))));
    }
}
