mod common;

use std::sync::Arc;

use folia::forms::{
    bracket_fields, contract, exterior_derivative, first_plucker_violation, kernel_module, wedge, Chart, ExteriorForm,
};
use folia::poly::Polynomial;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chart() -> Arc<Chart> {
    Chart::with_parameters(&[], &["x", "y", "z", "w"]).unwrap()
}

fn same(a: &ExteriorForm, b: &ExteriorForm) -> bool {
    let minus = Polynomial::constant(a.ring(), (-1).into());
    a.add(&b.scale(&minus)).unwrap().is_zero()
}

fn sign(p: usize) -> Polynomial {
    Polynomial::constant(chart().ring(), if p.is_multiple_of(2) { 1.into() } else { (-1).into() })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_obeys_leibniz(seed in any::<u64>(), p in 0usize..=2, q in 0usize..=1) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_form(&c, &mut rng, p, 2);
        let b = common::random_form(&c, &mut rng, q, 2);
        let lhs = exterior_derivative(&wedge(&a, &b).unwrap());
        let rhs = wedge(&exterior_derivative(&a), &b).unwrap()
            .add(&wedge(&a, &exterior_derivative(&b)).unwrap().scale(&sign(p))).unwrap();
        prop_assert!(same(&lhs, &rhs));
        prop_assert!(exterior_derivative(&exterior_derivative(&a)).is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>(), p in 0usize..=2, q in 0usize..=2) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_form(&c, &mut rng, p, 1);
        let b = common::random_form(&c, &mut rng, q, 1);
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap().scale(&sign(p * q));
        prop_assert!(same(&ab, &ba));
        if p % 2 == 1 {
            prop_assert!(wedge(&a, &a).unwrap().is_zero());
        }
    }

    #[test]
    fn contraction_is_an_antiderivation(seed in any::<u64>(), p in 1usize..=2, q in 1usize..=2) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_form(&c, &mut rng, p, 1);
        let b = common::random_form(&c, &mut rng, q, 1);
        let v = common::random_field(&c, &mut rng, 1);
        let w = common::random_field(&c, &mut rng, 1);
        let lhs = contract(&v, &wedge(&a, &b).unwrap()).unwrap();
        let rhs = wedge(&contract(&v, &a).unwrap(), &b).unwrap()
            .add(&wedge(&a, &contract(&v, &b).unwrap()).unwrap().scale(&sign(p))).unwrap();
        prop_assert!(same(&lhs, &rhs));
        if p == 2 {
            let vw = contract(&w, &contract(&v, &a).unwrap()).unwrap();
            let wv = contract(&v, &contract(&w, &a).unwrap()).unwrap();
            prop_assert!(same(&vw, &wv.scale(&sign(1))));
        }
    }

    #[test]
    fn bracket_acts_as_commutator(seed in any::<u64>()) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = common::random_field(&c, &mut rng, 2);
        let w = common::random_field(&c, &mut rng, 2);
        let u = common::random_field(&c, &mut rng, 1);
        let f = common::random_poly(&c, &mut rng, 3, 3);
        let vw = bracket_fields(&v, &w).unwrap();
        prop_assert_eq!(vw.apply(&f), &v.apply(&w.apply(&f)) - &w.apply(&v.apply(&f)));
        prop_assert!(vw.add(&bracket_fields(&w, &v).unwrap()).unwrap().is_zero());
        let jac = bracket_fields(&u, &vw).unwrap()
            .add(&bracket_fields(&v, &bracket_fields(&w, &u).unwrap()).unwrap()).unwrap()
            .add(&bracket_fields(&w, &bracket_fields(&u, &v).unwrap()).unwrap()).unwrap();
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), p in 0usize..=3) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_form(&c, &mut rng, p, 2);
        let text = serde_json::to_string(&a.to_document()).unwrap();
        let b = ExteriorForm::from_json(&text).unwrap();
        prop_assert_eq!(b.to_string(), a.to_string());
    }

    #[test]
    fn decomposable_forms_satisfy_plucker(seed in any::<u64>()) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_form(&c, &mut rng, 1, 1);
        let b = common::random_form(&c, &mut rng, 1, 1);
        prop_assert_eq!(first_plucker_violation(&wedge(&a, &b).unwrap()).unwrap(), None);
    }

    #[test]
    fn kernel_fields_annihilate(seed in any::<u64>(), p in 1usize..=2) {
        let c = Chart::with_parameters(&[], &["x", "y", "z"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_form(&c, &mut rng, p, 1);
        let k = kernel_module(&a).unwrap();
        for g in folia::forms::module_fields(&c, &k).unwrap() {
            prop_assert!(contract(&g, &a).unwrap().is_zero());
        }
        prop_assert!(k.double_orthogonal().unwrap().equals(&k));
    }
}

#[test]
fn symplectic_form_is_not_decomposable() {
    let c = chart();
    let omega = ExteriorForm::parse(&c, 2, &[(&[0, 1], "1"), (&[2, 3], "1")]).unwrap();
    let (_, _, value) = first_plucker_violation(&omega).unwrap().expect("violation");
    assert!(!value.is_zero());
}
