#![allow(dead_code)]

use std::sync::Arc;

use folia::exact::{QMatrix, Rational};
use folia::forms::{wedge, Chart, ExteriorForm, PolyVectorField};
use folia::poly::{Monomial, Polynomial};
use rand::Rng;

/// Up to `terms` monomials of degree ≤ `deg` with coefficients in −3..=3.
pub fn random_poly<R: Rng>(chart: &Arc<Chart>, rng: &mut R, terms: usize, deg: u16) -> Polynomial {
    let ring = chart.ring();
    let n = ring.nvars();
    let mut out = Polynomial::zero(ring);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut exps = vec![0u16; n];
        for _ in 0..rng.gen_range(0..=deg) {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = Rational::from(rng.gen_range(-3i64..=3));
        out = &out + &Polynomial::monomial(ring, Monomial::from_exponents(&exps), c);
    }
    out
}

pub fn random_form<R: Rng>(chart: &Arc<Chart>, rng: &mut R, degree: usize, deg: u16) -> ExteriorForm {
    use itertools::Itertools;
    let terms = (0..chart.dim())
        .combinations(degree)
        .map(|idx| (idx, random_poly(chart, rng, 2, deg)))
        .collect();
    ExteriorForm::new(chart, degree, terms).unwrap()
}

pub fn random_field<R: Rng>(chart: &Arc<Chart>, rng: &mut R, deg: u16) -> PolyVectorField {
    let comps = (0..chart.dim()).map(|_| random_poly(chart, rng, 2, deg)).collect();
    PolyVectorField::new(chart, comps).unwrap()
}

/// A random invertible constant matrix, as rows of 1-form coefficients.
pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> QMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| Rational::from(rng.gen_range(-3i64..=3))).collect()).collect();
        let m = QMatrix::from_rows(rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

pub fn constant_one_form(chart: &Arc<Chart>, row: &[Rational]) -> ExteriorForm {
    let coeffs = row.iter().map(|c| Polynomial::constant(chart.ring(), c.clone())).collect();
    ExteriorForm::one_form(chart, coeffs).unwrap()
}

pub fn wedge_all(forms: &[ExteriorForm]) -> ExteriorForm {
    let mut acc = forms[0].clone();
    for f in &forms[1..] {
        acc = wedge(&acc, f).unwrap();
    }
    acc
}

/// Projective dimension of the fixed-point set of `A` from eigenspaces:
/// `max_μ dim ker(A − μ) − 1` over the given candidate eigenvalues.
pub fn fixed_point_dimension(a: &QMatrix, candidates: &[Rational]) -> i64 {
    let n = a.rows();
    candidates
        .iter()
        .map(|mu| {
            let shifted = a.sub(&QMatrix::identity(n).scale(mu)).unwrap();
            (n - shifted.rank()) as i64
        })
        .max()
        .unwrap_or(0)
        - 1
}
