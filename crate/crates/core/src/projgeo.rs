//! Fundamental vector fields on ℙⁿ and the minor ideals cutting out their
//! singular loci.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};
use crate::partitions::{jordan_triple, Partition};
use crate::poly::{Ideal, MonomialOrder, PolyMatrix, Polynomial, Ring};

/// Homogeneous coordinate ring `ℚ[x0, …, xn]` with grevlex.
pub fn projective_ring(n: usize) -> Arc<Ring> {
    Ring::new((0..=n).map(|i| format!("x{i}")), MonomialOrder::GrevLex)
}

/// The field `x ↦ A·x` induced by a traceless matrix.
#[derive(Clone, Debug)]
pub struct ProjectiveField {
    matrix: QMatrix,
    ring: Arc<Ring>,
    components: Vec<Polynomial>,
}

impl ProjectiveField {
    /// Dimension of the projective space.
    pub fn n(&self) -> usize {
        self.components.len() - 1
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// `(A·x)_i`, the coefficient of `∂/∂x_i`.
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }
}

impl fmt::Display for ProjectiveField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = if c.num_terms() > 1 { format!("({c})") } else { c.to_string() };
            match (first, text.strip_prefix('-')) {
                (true, _) => f.write_str(&text)?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {text}")?,
            }
            first = false;
            write!(f, "*d{i}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn linear_rows(ring: &Arc<Ring>, a: &QMatrix) -> Vec<Polynomial> {
    (0..a.rows()).map(|i| Polynomial::linear(ring, a.row(i))).collect()
}

fn check_traceless(a: &QMatrix) -> Result<()> {
    if !a.is_square() || a.rows() < 2 {
        return Err(Error::Dimension(format!("expected a square matrix of size ≥ 2, got {}×{}", a.rows(), a.cols())));
    }
    let tr = a.trace();
    if !tr.is_zero() {
        return Err(Error::NonZeroTrace(tr.to_string()));
    }
    Ok(())
}

pub fn fundamental_field(a: &QMatrix) -> Result<ProjectiveField> {
    check_traceless(a)?;
    let ring = projective_ring(a.rows() - 1);
    let components = linear_rows(&ring, a);
    Ok(ProjectiveField { matrix: a.clone(), ring, components })
}

fn coordinate_row(ring: &Arc<Ring>) -> Vec<Polynomial> {
    (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()
}

/// 2×2 minors of `[x; A·x]`.
pub fn field_singular_ideal(f: &ProjectiveField) -> Ideal {
    let m = PolyMatrix::from_rows(&f.ring, vec![coordinate_row(&f.ring), f.components.clone()]).expect("rectangular");
    Ideal::new(&f.ring, m.minors(2)).expect("same ring")
}

/// 3×3 minors of `[x; A·x; B·x]`: points where some nonzero `αA + βB`
/// fixes the line.
///
/// When `A` and `B` are linearly dependent those minors vanish identically,
/// so the locus is computed from the single nonzero matrix instead (and is
/// empty when both are zero).
pub fn pencil_singular_ideal(a: &QMatrix, b: &QMatrix) -> Result<Ideal> {
    let fa = fundamental_field(a)?;
    let fb = fundamental_field(b)?;
    if fa.n() != fb.n() {
        return Err(Error::Dimension("pencil matrices have different sizes".into()));
    }
    let ring = fa.ring.clone();
    let stacked = QMatrix::from_rows(vec![a.entries().to_vec(), b.entries().to_vec()])?;
    if stacked.rank() < 2 {
        return Ok(match (a.is_zero(), b.is_zero()) {
            (true, true) => Ideal::unit(&ring),
            (false, _) => field_singular_ideal(&fa),
            (true, false) => field_singular_ideal(&fb),
        });
    }
    let rows = vec![coordinate_row(&ring), fa.components, linear_rows(&ring, &fb.matrix)];
    let m = PolyMatrix::from_rows(&ring, rows)?;
    Ideal::new(&ring, m.minors(3))
}

/// Dimension of the projective zero set, `−1` when it is empty.
pub fn projective_dimension(i: &Ideal) -> Result<i64> {
    if !i.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok((i.krull_dimension() - 1).max(-1))
}

/// Whether `t` is a nonzerodivisor modulo `I`, i.e. `(I : t) = I`.
pub fn t_flatness_check(i: &Ideal, t: usize) -> Result<bool> {
    if t >= i.ring().nvars() {
        return Err(Error::Dimension(format!("variable index {t} out of range")));
    }
    let tv = Polynomial::var(i.ring(), t);
    Ok(i.quotient(&tv)?.equals(i))
}

/// 2×2 minors of `[x; (tJ + H)·x]` in `ℚ[x0, …, xn, t]`; `t` is the last variable.
pub fn pencil_family_ideal(j: &QMatrix, h: &QMatrix) -> Result<Ideal> {
    check_traceless(j)?;
    check_traceless(h)?;
    if j.rows() != h.rows() {
        return Err(Error::Dimension("pencil matrices have different sizes".into()));
    }
    let size = j.rows();
    let ring = Ring::new((0..size).map(|i| format!("x{i}")).chain(["t".to_string()]), MonomialOrder::GrevLex);
    let t = Polynomial::var(&ring, size);
    let xs: Vec<Polynomial> = (0..size).map(|i| Polynomial::var(&ring, i)).collect();
    let mut lin = vec![Rational::zero(); size + 1];
    let field: Vec<Polynomial> = (0..size)
        .map(|i| {
            lin[..size].clone_from_slice(j.row(i));
            let tj = &t * &Polynomial::linear(&ring, &lin);
            lin[..size].clone_from_slice(h.row(i));
            &tj + &Polynomial::linear(&ring, &lin)
        })
        .collect();
    let m = PolyMatrix::from_rows(&ring, vec![xs, field])?;
    Ideal::new(&ring, m.minors(2))
}

/// Whether the projective zero set of `i` is exactly the given finite set
/// of points, over the algebraic closure.
///
/// Each point must satisfy every generator, and every generator of the
/// vanishing ideal of the points must lie in the radical of `i`.
pub fn zero_set_is(i: &Ideal, points: &[Vec<Rational>]) -> Result<bool> {
    let ring = i.ring();
    let n = ring.nvars();
    if points.iter().any(|p| p.len() != n || p.iter().all(Rational::is_zero)) {
        return Err(Error::Dimension(format!("points must be nonzero vectors of length {n}")));
    }
    if !points.iter().all(|p| i.generators().iter().all(|g| g.eval(p).is_zero())) {
        return Ok(false);
    }
    let mut vanishing = Ideal::unit(ring);
    for p in points {
        vanishing = vanishing.intersection(&point_ideal(ring, p))?;
    }
    Ok(vanishing.generators().iter().all(|g| i.radical_contains(g)))
}

/// Linear ideal of a projective point: all `p_j x_i − p_i x_j`.
pub fn point_ideal(ring: &Arc<Ring>, p: &[Rational]) -> Ideal {
    let n = ring.nvars();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut c = vec![Rational::zero(); n];
            c[i] = p[j].clone();
            c[j] = -&p[i];
            let l = Polynomial::linear(ring, &c);
            if !l.is_zero() {
                gens.push(l);
            }
        }
    }
    Ideal::new(ring, gens).expect("same ring")
}

/// Whether the hyperplane `x_var = 0` misses the zero set: every variable
/// lies in the radical of `I + (x_var)`.
pub fn misses_hyperplane(i: &Ideal, var: usize) -> bool {
    let ring = i.ring();
    let cut = i.add_generators(&[Polynomial::var(ring, var)]).expect("same ring");
    (0..ring.nvars()).all(|k| cut.radical_contains(&Polynomial::var(ring, k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberCheck {
    pub alpha: Rational,
    pub beta: Rational,
    pub dim: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibreDim {
    pub t: Rational,
    pub dim: i64,
}

/// Per-member dimension checks for the pencil `αJ_λ + βH_λ`, plus the
/// `t`-regularity of the family and its sampled fibre dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilCertificate {
    pub lambda: Partition,
    pub n: usize,
    pub delta: i64,
    pub family_flat: bool,
    pub fibre_dims: Vec<FibreDim>,
    pub max_fibre_dim: i64,
    pub members: Vec<MemberCheck>,
}

impl PencilCertificate {
    pub fn all_members_pass(&self) -> bool {
        self.members.iter().all(|m| m.pass)
    }
}

/// `(α, β)` pairs: the given samples plus both axes, without the zero pair,
/// deduplicated and sorted.
fn member_list(samples: &[(Rational, Rational)]) -> Vec<(Rational, Rational)> {
    let mut all: Vec<(Rational, Rational)> = samples
        .iter()
        .cloned()
        .chain([(Rational::one(), Rational::zero()), (Rational::zero(), Rational::one())])
        .filter(|(a, b)| !(a.is_zero() && b.is_zero()))
        .collect();
    all.sort();
    all.dedup();
    all
}

pub fn pencil_family_certificate(lambda: &Partition, samples: &[(Rational, Rational)]) -> Result<PencilCertificate> {
    if !lambda.contains_part(5) {
        return Err(Error::NoPartFive(lambda.to_string()));
    }
    let size = lambda.size();
    let delta = size as i64 - 5;
    let triple = jordan_triple(lambda)?;
    let (j, h) = (&triple.j, &triple.h);

    let members = member_list(samples)
        .into_par_iter()
        .map(|(alpha, beta)| {
            let a = j.scale(&alpha).add(&h.scale(&beta))?;
            let dim = projective_dimension(&field_singular_ideal(&fundamental_field(&a)?))?;
            Ok(MemberCheck { alpha, beta, dim, pass: dim <= delta })
        })
        .collect::<Result<Vec<_>>>()?;

    let family = pencil_family_ideal(j, h)?;
    let t = size;
    let family_flat = t_flatness_check(&family, t)?;
    let fibre_dims = fibre_values()
        .into_par_iter()
        .map(|tv| {
            let a = j.scale(&tv).add(h)?;
            let dim = projective_dimension(&field_singular_ideal(&fundamental_field(&a)?))?;
            Ok(FibreDim { t: tv, dim })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_fibre_dim = fibre_dims.iter().map(|f| f.dim).max().unwrap_or(-1);

    Ok(PencilCertificate { lambda: lambda.clone(), n: size - 1, delta, family_flat, fibre_dims, max_fibre_dim, members })
}

/// `t` values at which the family `tJ + H` is specialized.
fn fibre_values() -> Vec<Rational> {
    [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 7)].into_iter().map(|(p, q)| Rational::new(p, q)).collect()
}

/// `count` seeded nonzero pairs with small numerators and denominators.
pub fn random_pencil_samples(count: usize, seed: u64) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=5));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        if !(a.is_zero() && b.is_zero()) {
            out.push((a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> Rational {
        Rational::from(a)
    }

    fn triple(s: &str) -> (QMatrix, QMatrix) {
        let t = jordan_triple(&s.parse().unwrap()).unwrap();
        (t.j, t.h)
    }

    fn unit_point(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|k| if k == i { q(1) } else { q(0) }).collect()
    }

    #[test]
    fn fundamental_fields_of_j5_and_h5() {
        let (j, h) = triple("5");
        assert_eq!(fundamental_field(&j).unwrap().to_string(), "x1*d0 + x2*d1 + x3*d2 + x4*d3");
        assert_eq!(fundamental_field(&h).unwrap().to_string(), "4*x0*d0 + 2*x1*d1 - 2*x3*d3 - 4*x4*d4");
        assert!(fundamental_field(&QMatrix::zeros(3, 3)).unwrap().is_zero());
    }

    #[test]
    fn trace_must_vanish() {
        assert!(matches!(fundamental_field(&QMatrix::identity(3)), Err(Error::NonZeroTrace(_))));
        assert!(fundamental_field(&QMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn diagonal_on_the_line() {
        let a = QMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        let i = field_singular_ideal(&fundamental_field(&a).unwrap());
        let ring = i.ring().clone();
        assert!(i.equals(&Ideal::parse(&ring, &["x0*x1"]).unwrap()));
        assert_eq!(projective_dimension(&i).unwrap(), 0);
        assert!(zero_set_is(&i, &[unit_point(2, 0), unit_point(2, 1)]).unwrap());
        assert!(!zero_set_is(&i, &[unit_point(2, 0)]).unwrap());
    }

    #[test]
    fn j5_has_one_singular_point() {
        let (j, _) = triple("5");
        let i = field_singular_ideal(&fundamental_field(&j).unwrap());
        assert_eq!(projective_dimension(&i).unwrap(), 0);
        assert!(misses_hyperplane(&i, 0));
        assert!(!misses_hyperplane(&i, 1));
        assert!(zero_set_is(&i, &[unit_point(5, 0)]).unwrap());
    }

    #[test]
    fn h5_has_five_coordinate_points() {
        let (_, h) = triple("5");
        let i = field_singular_ideal(&fundamental_field(&h).unwrap());
        let pts: Vec<_> = (0..5).map(|k| unit_point(5, k)).collect();
        assert!(zero_set_is(&i, &pts).unwrap());
        assert!(!zero_set_is(&i, &pts[..4]).unwrap());
    }

    #[test]
    fn projective_dimension_conventions() {
        let ring = projective_ring(4);
        assert_eq!(projective_dimension(&Ideal::of_variables(&ring, &[0, 1, 2, 3, 4])).unwrap(), -1);
        assert_eq!(projective_dimension(&Ideal::zero(&ring)).unwrap(), 4);
        assert_eq!(projective_dimension(&Ideal::unit(&ring)).unwrap(), -1);
        let bad = Ideal::parse(&ring, &["x0 - 1"]).unwrap();
        assert_eq!(projective_dimension(&bad), Err(Error::NotHomogeneous));
    }

    #[test]
    fn pencil_ideals() {
        // Each member αJ + βH with β ≠ 0 is conjugate to βH, so its five
        // fixed points sweep out a curve as α/β varies.
        let (j, h) = triple("5");
        assert_eq!(projective_dimension(&pencil_singular_ideal(&j, &h).unwrap()).unwrap(), 1);
        let single = field_singular_ideal(&fundamental_field(&j).unwrap());
        assert!(pencil_singular_ideal(&j, &j).unwrap().equals(&single));
        assert!(pencil_singular_ideal(&j, &j.scale(&q(-3))).unwrap().equals(&single));
        let zero = QMatrix::zeros(5, 5);
        assert!(pencil_singular_ideal(&zero, &j).unwrap().equals(&single));
        assert!(pencil_singular_ideal(&zero, &zero).unwrap().is_unit());
    }

    #[test]
    fn flatness_examples() {
        let ring = Ring::new(["t", "x"], MonomialOrder::GrevLex);
        assert!(t_flatness_check(&Ideal::parse(&ring, &["x"]).unwrap(), 0).unwrap());
        assert!(!t_flatness_check(&Ideal::parse(&ring, &["t*x"]).unwrap(), 0).unwrap());
        let (j, h) = triple("5");
        assert!(t_flatness_check(&pencil_family_ideal(&j, &h).unwrap(), 5).unwrap());
    }

    #[test]
    fn certificate_for_five() {
        let samples = [(q(1), q(1)), (q(2), q(-3))];
        let cert = pencil_family_certificate(&"5".parse().unwrap(), &samples).unwrap();
        assert_eq!(cert.n, 4);
        assert_eq!(cert.delta, 0);
        assert!(cert.family_flat);
        assert_eq!(cert.members.len(), 4);
        assert!(cert.members.iter().all(|m| m.dim == 0 && m.pass));
        assert_eq!(cert.max_fibre_dim, 0);
    }

    #[test]
    fn certificate_requires_a_five() {
        assert!(matches!(pencil_family_certificate(&"4,1".parse().unwrap(), &[]), Err(Error::NoPartFive(_))));
    }

    #[test]
    fn linearity_in_the_matrix() {
        let (j, h) = triple("5");
        let (a, b) = (Rational::new(2, 3), q(-5));
        let combo = fundamental_field(&j.scale(&a).add(&h.scale(&b)).unwrap()).unwrap();
        let fj = fundamental_field(&j).unwrap();
        let fh = fundamental_field(&h).unwrap();
        for i in 0..5 {
            let expect = &fj.components()[i].scale(&a) + &fh.components()[i].scale(&b);
            assert_eq!(combo.components()[i], expect);
        }
    }

    #[test]
    fn permutation_conjugation_permutes_variables() {
        let (j, _) = triple("5");
        let perm = [3usize, 0, 4, 1, 2];
        let mut p = QMatrix::zeros(5, 5);
        for (i, &s) in perm.iter().enumerate() {
            p[(s, i)] = q(1);
        }
        let conj = p.mul(&j).unwrap().mul(&p.transpose()).unwrap();
        let base = field_singular_ideal(&fundamental_field(&j).unwrap());
        let moved = field_singular_ideal(&fundamental_field(&conj).unwrap());
        let ring = moved.ring().clone();
        assert!(base.remap(&ring, &perm).equals(&moved));
    }

    #[test]
    fn samples_are_seeded() {
        assert_eq!(random_pencil_samples(6, 42), random_pencil_samples(6, 42));
        assert_ne!(random_pencil_samples(6, 42), random_pencil_samples(6, 43));
    }
}
