use std::sync::Arc;

use folia::exact::Rational;
use folia::poly::{module_kernel, Ideal, Monomial, MonomialOrder, PolyMatrix, Polynomial, Ring};
use proptest::prelude::*;

fn ring() -> Arc<Ring> {
    Ring::new(["x", "y", "z"], MonomialOrder::GrevLex)
}

fn poly_strategy(max_terms: usize, max_deg: u16) -> impl Strategy<Value = Vec<([u16; 3], i64)>> {
    prop::collection::vec(([0..=max_deg, 0..=max_deg, 0..=max_deg], -4i64..=4), 0..=max_terms)
}

fn build(r: &Arc<Ring>, terms: &[([u16; 3], i64)]) -> Polynomial {
    let terms = terms.iter().map(|(e, c)| (Monomial::from_exponents(e), Rational::from(*c))).collect();
    Polynomial::from_terms(r, terms)
}

fn ideal_strategy() -> impl Strategy<Value = Vec<Vec<([u16; 3], i64)>>> {
    prop::collection::vec(poly_strategy(3, 2), 1..=3)
}

fn ideal(r: &Arc<Ring>, gens: &[Vec<([u16; 3], i64)>]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| build(r, g)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in poly_strategy(4, 3), b in poly_strategy(4, 3), c in poly_strategy(4, 3),
                 pt in prop::collection::vec(-5i64..=5, 3)) {
        let r = ring();
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        let p: Vec<Rational> = pt.into_iter().map(Rational::from).collect();
        prop_assert_eq!((&a * &b).eval(&p), &a.eval(&p) * &b.eval(&p));
        prop_assert_eq!((&a + &b).eval(&p), &a.eval(&p) + &b.eval(&p));
    }

    #[test]
    fn display_parse_round_trip(a in poly_strategy(5, 3)) {
        let r = ring();
        let a = build(&r, &a);
        prop_assert_eq!(Polynomial::parse(&r, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn derivative_is_a_derivation(a in poly_strategy(3, 3), b in poly_strategy(3, 3), v in 0usize..3) {
        let r = ring();
        let (a, b) = (build(&r, &a), build(&r, &b));
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn groebner_basis_is_a_basis(gens in ideal_strategy(), m in poly_strategy(3, 2)) {
        let r = ring();
        let i = ideal(&r, &gens);
        prop_assert!(i.verify_groebner_basis());
        for g in i.generators() {
            prop_assert!(i.contains(g));
        }
        let m = build(&r, &m);
        for g in i.generators() {
            prop_assert!(i.contains(&(&m * g)));
        }
        let nf = i.normal_form(&m);
        prop_assert!(i.contains(&(&m - &nf)));
        prop_assert_eq!(i.normal_form(&nf), nf);
    }

    #[test]
    fn groebner_basis_independent_of_order(gens in ideal_strategy()) {
        let r = ring();
        let i = ideal(&r, &gens);
        let lex = i.reorder(MonomialOrder::Lex);
        prop_assert!(lex.verify_groebner_basis());
        for g in lex.groebner_basis() {
            let back = g.reorder(MonomialOrder::GrevLex);
            prop_assert!(i.contains(&back));
        }
    }

    #[test]
    fn quotient_agrees_with_syzygies(gens in ideal_strategy(), f in poly_strategy(2, 1)) {
        let r = ring();
        let i = ideal(&r, &gens);
        let f = build(&r, &f);
        prop_assume!(!f.is_zero());
        let q = i.quotient(&f).unwrap();
        prop_assert!(q.equals(&i.quotient_by_syzygies(&f).unwrap()));
        prop_assert!(q.contains_ideal(&i));
        for g in q.generators() {
            prop_assert!(i.contains(&(g * &f)));
        }
    }

    #[test]
    fn intersection_bounds(a in ideal_strategy(), b in ideal_strategy()) {
        let r = ring();
        let (i, j) = (ideal(&r, &a), ideal(&r, &b));
        let meet = i.intersection(&j).unwrap();
        prop_assert!(i.contains_ideal(&meet) && j.contains_ideal(&meet));
        prop_assert!(meet.contains_ideal(&i.product(&j).unwrap()));
        let s = i.sum(&j).unwrap();
        prop_assert!(s.contains_ideal(&i) && s.contains_ideal(&j));
    }

    #[test]
    fn saturation_two_ways(gens in ideal_strategy(), v in 0usize..3) {
        let r = ring();
        let i = ideal(&r, &gens);
        let f = Polynomial::var(&r, v);
        let (sat, k) = i.saturate(&f).unwrap();
        prop_assert!(sat.equals(&i.saturate_by_elimination(&f).unwrap()));
        prop_assert!(sat.equals(&sat.quotient(&f).unwrap()));
        let fk = f.pow(k as u32);
        for g in sat.generators() {
            prop_assert!(i.contains(&(g * &fk)));
        }
    }

    #[test]
    fn kernel_is_annihilated(rows in prop::collection::vec(prop::collection::vec(poly_strategy(2, 1), 3), 1..=2)) {
        let r = ring();
        let rows: Vec<Vec<Polynomial>> = rows.iter().map(|row| row.iter().map(|p| build(&r, p)).collect()).collect();
        let m = PolyMatrix::from_rows(&r, rows).unwrap();
        let k = module_kernel(&m).unwrap();
        for g in k.generators() {
            prop_assert!(m.mul_vec(g).unwrap().iter().all(Polynomial::is_zero));
        }
        prop_assert!(k.double_orthogonal().unwrap().equals(&k));
    }

    #[test]
    fn fitting_chain_increases(entries in prop::collection::vec(poly_strategy(2, 1), 6)) {
        let r = ring();
        let rows: Vec<Vec<Polynomial>> = entries.chunks(2).map(|c| c.iter().map(|p| build(&r, p)).collect()).collect();
        let m = PolyMatrix::from_rows(&r, rows).unwrap();
        let chain = m.fitting_chain();
        prop_assert_eq!(chain.len(), 4);
        prop_assert!(chain[3].is_unit());
        for w in chain.windows(2) {
            prop_assert!(w[1].contains_ideal(&w[0]));
        }
    }
}

#[test]
fn krull_dimension_examples() {
    let r = ring();
    assert_eq!(Ideal::zero(&r).krull_dimension(), 3);
    assert_eq!(Ideal::unit(&r).krull_dimension(), -1);
    assert_eq!(Ideal::parse(&r, &["x*y", "x*z"]).unwrap().krull_dimension(), 2);
    assert_eq!(Ideal::parse(&r, &["x", "y^2 - z^3"]).unwrap().krull_dimension(), 1);
    assert_eq!(Ideal::of_variables(&r, &[0, 1, 2]).krull_dimension(), 0);
}

#[test]
fn elimination_of_a_parametrised_curve() {
    let r = Ring::new(["t", "x", "y"], MonomialOrder::GrevLex);
    let i = Ideal::parse(&r, &["x - t^2", "y - t^3"]).unwrap();
    let e = i.eliminate(&[0]);
    let cusp = Polynomial::parse(&r, "x^3 - y^2").unwrap();
    assert!(e.contains(&cusp));
    assert!(Ideal::new(&r, vec![cusp]).unwrap().contains_ideal(&e));
}
