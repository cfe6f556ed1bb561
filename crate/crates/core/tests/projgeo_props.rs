mod common;

use folia::exact::{QMatrix, Rational};
use folia::partitions::{jordan_triple, partitions_with_part};
use folia::projgeo::{
    field_singular_ideal, fundamental_field, pencil_family_certificate, pencil_singular_ideal, projective_dimension,
    random_pencil_samples,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn traceless(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        let mut m = QMatrix::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
            .unwrap();
        let tr = m.trace();
        m[(n - 1, n - 1)] = &m[(n - 1, n - 1)] - &tr;
        m
    })
}

fn field_dim(a: &QMatrix) -> i64 {
    projective_dimension(&field_singular_ideal(&fundamental_field(a).unwrap())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn every_field_has_a_singular_point(a in (3usize..=4).prop_flat_map(traceless)) {
        prop_assert!(field_dim(&a) >= 0);
    }

    #[test]
    fn diagonalizable_fields_match_eigenspaces(d in prop::collection::vec(-2i64..=2, 3), seed in any::<u64>()) {
        let mut diag: Vec<Rational> = d.into_iter().map(Rational::from).collect();
        let s: Rational = diag.iter().cloned().sum();
        diag.push(-s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_invertible(4, &mut rng);
        let a = p.mul(&QMatrix::diagonal(&diag)).unwrap().mul(&p.inverse().unwrap()).unwrap();
        prop_assume!(!a.is_zero());
        prop_assert_eq!(field_dim(&a), common::fixed_point_dimension(&a, &diag));
    }

    #[test]
    fn pencil_locus_is_symmetric(a in traceless(3), b in traceless(3)) {
        let ab = pencil_singular_ideal(&a, &b).unwrap();
        let ba = pencil_singular_ideal(&b, &a).unwrap();
        prop_assert!(ab.equals(&ba));
        if !a.is_zero() {
            prop_assert!(field_singular_ideal(&fundamental_field(&a).unwrap()).contains_ideal(&ab));
        }
    }

    #[test]
    fn pencil_members_stay_below_delta(index in 0usize..7, seed in any::<u64>()) {
        let all: Vec<_> = (5..=8).flat_map(|n| partitions_with_part(n, 5).unwrap()).collect();
        prop_assert_eq!(all.len(), 7);
        let lambda = &all[index];
        let samples = random_pencil_samples(10, seed);
        let cert = pencil_family_certificate(lambda, &samples).unwrap();
        let t = jordan_triple(lambda).unwrap();
        let heig: Vec<Rational> = (0..t.h.rows()).map(|i| t.h[(i, i)].clone()).collect();
        for m in &cert.members {
            let a = t.j.scale(&m.alpha).add(&t.h.scale(&m.beta)).unwrap();
            let mut cands: Vec<Rational> = heig.iter().map(|e| e * &m.beta).collect();
            cands.push(Rational::zero());
            prop_assert_eq!(m.dim, common::fixed_point_dimension(&a, &cands));
            prop_assert!(m.dim <= cert.delta);
        }
        prop_assert!(cert.all_members_pass() && cert.family_flat);
    }
}

#[test]
fn nonzero_trace_is_rejected() {
    assert!(fundamental_field(&QMatrix::identity(3)).is_err());
}
