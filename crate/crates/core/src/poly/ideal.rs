use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner::{normal_form, reduced_basis, satisfies_buchberger_criterion};
use super::ring::same_ring;
use super::{MonomialOrder, PolyMatrix, Polynomial, Ring};
use crate::error::{Error, Result};

/// Iterated colon ideals give up after this many steps.
pub const SATURATION_CAP: usize = 64;

/// An ideal of a polynomial ring, with its reduced Gröbner basis computed on
/// first use and cached.
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// Reduced Gröbner basis of `gens` with respect to `order`.
///
/// The generators are moved into a ring with the requested order, so the
/// returned ideal lives there.
pub fn groebner(gens: &[Polynomial], order: MonomialOrder) -> Result<Ideal> {
    let ring = gens.first().ok_or_else(|| Error::Invalid("no generators given".into()))?.ring().clone();
    let ideal = Ideal::new(&ring, gens.to_vec())?.reorder(order);
    ideal.groebner_basis();
    Ok(ideal)
}

impl Ideal {
    /// Fails with [`Error::RingMismatch`] if a generator lives elsewhere.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    /// Parses generators written in the plain-text syntax.
    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| Polynomial::parse(ring, g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    /// The ideal generated by the variables with the given indices.
    pub fn of_variables(ring: &Arc<Ring>, vars: &[usize]) -> Self {
        Ideal::new(ring, vars.iter().map(|&i| Polynomial::var(ring, i)).collect()).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced, monic Gröbner basis in the ring's order, sorted by leading
    /// monomial, largest first.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            let ord = self.ring.order();
            let gens = self.gens.iter().map(|g| g.clone().into_terms()).collect();
            reduced_basis(gens, &ord).into_iter().map(|t| Polynomial::from_sorted(&self.ring, t)).collect()
        })
    }

    /// Remainder of `f` modulo the Gröbner basis: no term of the result is
    /// divisible by a leading monomial of the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert!(same_ring(f.ring(), &self.ring), "normal form across rings");
        let basis: Vec<_> = self.groebner_basis().iter().map(|g| g.clone().into_terms()).collect();
        Polynomial::from_sorted(&self.ring, normal_form(f.clone().into_terms(), &basis, &self.ring.order()))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Ideal equality, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        same_ring(&self.ring, &other.ring) && self.groebner_basis() == other.groebner_basis()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(Polynomial::is_unit)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when every generator is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Re-checks the Buchberger criterion on the cached basis.
    pub fn verify_groebner_basis(&self) -> bool {
        let basis: Vec<_> = self.groebner_basis().iter().map(|g| g.clone().into_terms()).collect();
        satisfies_buchberger_criterion(&basis, &self.ring.order())
    }

    pub fn reorder(&self, order: MonomialOrder) -> Ideal {
        if order == self.ring.order() {
            return self.clone();
        }
        let ring = self.ring.with_order(order);
        let gens = self.gens.iter().map(|g| g.reorder(order)).collect();
        Ideal::new(&ring, gens).expect("same ring")
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().chain(extra).cloned().collect())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a * b)).collect();
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J`, by eliminating `u` from `u·I + (1 − u)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let (big, embed) = with_auxiliary_variable(&self.ring);
        let u = Polynomial::var(&big, 0);
        let one_minus_u = &Polynomial::one(&big) - &u;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| &u * &g.remap(&big, &embed)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_u * &g.remap(&big, &embed)));
        Ok(self.restrict_from_auxiliary(&big, gens))
    }

    /// Generators of the big-ring ideal free of the auxiliary variable,
    /// mapped back into this ring.
    fn restrict_from_auxiliary(&self, big: &Arc<Ring>, gens: Vec<Polynomial>) -> Ideal {
        let big_ideal = Ideal::new(big, gens).expect("same ring");
        let back: Vec<usize> = std::iter::once(0).chain(0..self.ring.nvars()).collect();
        let kept = big_ideal
            .groebner_basis()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponent(0) == 0))
            .map(|g| g.remap(&self.ring, &back))
            .collect();
        Ideal::new(&self.ring, kept).expect("same ring")
    }

    /// `(I : f) = { g : g·f ∈ I }`, computed as `(I ∩ (f)) / f`.
    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_divisor(f)?;
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersection(&principal)?;
        let gens = meet
            .groebner_basis()
            .iter()
            .map(|h| h.div_exact(f).ok_or_else(|| Error::Invalid("intersection generator not divisible".into())))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `(I : f)` through the syzygies of `(f, g₁, …, gₘ)`: the first
    /// coordinates of the syzygies generate the quotient.
    pub fn quotient_by_syzygies(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_divisor(f)?;
        let mut row = vec![f.clone()];
        row.extend(self.groebner_basis().iter().cloned());
        let map = PolyMatrix::from_rows(&self.ring, vec![row])?;
        let syz = map.kernel()?;
        let gens = syz.generators().iter().map(|v| v[0].clone()).collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(I : f^∞)` by iterated colon ideals. Returns the saturation and the
    /// first exponent `k` with `(I : f^k) = (I : f^(k+1))`.
    pub fn saturate(&self, f: &Polynomial) -> Result<(Ideal, usize)> {
        self.check_divisor(f)?;
        let mut current = self.clone();
        for k in 0..=SATURATION_CAP {
            let next = current.quotient(f)?;
            if next.equals(&current) {
                return Ok((current, k));
            }
            current = next;
        }
        Err(Error::SaturationCap(SATURATION_CAP))
    }

    /// `(I : f^∞)` as `(I + (1 − u f)) ∩ ℚ[x]`.
    pub fn saturate_by_elimination(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_divisor(f)?;
        let (big, embed) = with_auxiliary_variable(&self.ring);
        let u = Polynomial::var(&big, 0);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.remap(&big, &embed)).collect();
        gens.push(&Polynomial::one(&big) - &(&u * &f.remap(&big, &embed)));
        Ok(self.restrict_from_auxiliary(&big, gens))
    }

    /// Whether `f` lies in the radical of the ideal: `1 ∈ I + (1 − u f)`.
    pub fn radical_contains(&self, f: &Polynomial) -> bool {
        let (big, embed) = with_auxiliary_variable(&self.ring);
        let u = Polynomial::var(&big, 0);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.remap(&big, &embed)).collect();
        gens.push(&Polynomial::one(&big) - &(&u * &f.remap(&big, &embed)));
        Ideal::new(&big, gens).expect("same ring").is_unit()
    }

    /// `I ∩ ℚ[remaining variables]`, returned in the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        let n = self.ring.nvars();
        let mut order: Vec<usize> = vars.to_vec();
        order.sort_unstable();
        order.dedup();
        let k = order.len();
        order.extend((0..n).filter(|i| !vars.contains(i)));
        // forward[i] = position of old variable i in the block ring
        let mut forward = vec![0; n];
        for (pos, &old) in order.iter().enumerate() {
            forward[old] = pos;
        }
        let names: Vec<String> = order.iter().map(|&i| self.ring.var_name(i).to_string()).collect();
        let block = Ring::new(names, MonomialOrder::Block(k));
        let gens = self.gens.iter().map(|g| g.remap(&block, &forward)).collect();
        let big = Ideal::new(&block, gens).expect("same ring");
        let kept = big
            .groebner_basis()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
            .map(|g| g.remap(&self.ring, &order))
            .collect();
        Ideal::new(&self.ring, kept).expect("same ring")
    }

    /// Krull dimension of `ℚ[x]/I`, or −1 for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        match self.max_independent_set() {
            Some(s) => s.len() as i64,
            None => -1,
        }
    }

    /// A maximum-size set of variables containing no leading monomial's
    /// support; `None` for the unit ideal.
    pub fn max_independent_set(&self) -> Option<Vec<usize>> {
        if self.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        assert!(n <= 64, "dimension search supports at most 64 variables");
        let masks: Vec<u64> = self.groebner_basis().iter().map(|g| g.lead_monomial().unwrap().support_mask()).collect();
        let mut best = 0u64;
        let mut best_len = 0usize;
        independent_search(0, n, 0, 0, &masks, &mut best, &mut best_len);
        Some((0..n).filter(|i| best & (1 << i) != 0).collect())
    }

    /// Maps generators through a variable map into another ring.
    pub fn remap(&self, target: &Arc<Ring>, map: &[usize]) -> Ideal {
        Ideal::new(target, self.gens.iter().map(|g| g.remap(target, map)).collect()).expect("same ring")
    }

    /// Sets variable `var` to `value` in every generator.
    pub fn specialize(&self, var: usize, value: &crate::exact::Rational) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g.specialize(var, value)).collect()).expect("same ring")
    }

    fn check_divisor(&self, f: &Polynomial) -> Result<()> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroDivisor("divisor"));
        }
        Ok(())
    }
}

fn independent_search(i: usize, n: usize, cur: u64, len: usize, masks: &[u64], best: &mut u64, best_len: &mut usize) {
    if len + (n - i) <= *best_len {
        return;
    }
    if i == n {
        *best = cur;
        *best_len = len;
        return;
    }
    let with = cur | (1 << i);
    if masks.iter().all(|&m| m & !with != 0) {
        independent_search(i + 1, n, with, len + 1, masks, best, best_len);
    }
    independent_search(i + 1, n, cur, len, masks, best, best_len);
}

/// A ring with a fresh variable in front, plus the embedding of the old
/// variables.
fn with_auxiliary_variable(ring: &Arc<Ring>) -> (Arc<Ring>, Vec<usize>) {
    let mut name = String::from("_u");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    let names: Vec<String> = std::iter::once(name).chain(ring.vars().iter().cloned()).collect();
    let big = Ring::new(names, MonomialOrder::Block(1));
    (big, (1..=ring.nvars()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(h: &str) -> Arc<Ring> {
        Ring::parse_header(h).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let r = ring("ring x y order lex");
        let i = groebner(&[p(&r, "x"), p(&r, "y")], MonomialOrder::Lex).unwrap();
        assert_eq!(i.groebner_basis(), &[p(&r, "x"), p(&r, "y")]);

        // S(x^2-1, x-1) = x - 1 after one step: basis {x - 1}.
        let r1 = ring("ring x");
        let i = groebner(&[p(&r1, "x^2 - 1"), p(&r1, "x - 1")], MonomialOrder::GrevLex).unwrap();
        assert_eq!(i.groebner_basis(), &[p(&r1, "x - 1")]);

        // x^2 = 0 and xy = 1 force 1 = (xy)^2 - y^2 x^2 ∈ I.
        let r2 = ring("ring x y");
        let i = Ideal::parse(&r2, &["x*y - 1", "x^2"]).unwrap();
        assert!(i.is_unit());
        assert_eq!(i.groebner_basis(), &[Polynomial::one(&r2)]);
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ring("ring x y");
        let b = ring("ring x z");
        assert_eq!(groebner(&[p(&a, "x"), p(&b, "z")], MonomialOrder::GrevLex).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring("ring x y");
        let i = Ideal::parse(&r, &["x^2 - y"]).unwrap();
        assert_eq!(i.normal_form(&p(&r, "x^2")), p(&r, "y"));
        assert!(i.normal_form(&p(&r, "x^3 - x*y")).is_zero());
        assert_eq!(i.normal_form(&Polynomial::one(&r)), Polynomial::one(&r));
    }

    #[test]
    fn quotient_examples() {
        let r = ring("ring x y");
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        let q = i.quotient(&p(&r, "x")).unwrap();
        assert!(q.equals(&Ideal::parse(&r, &["y"]).unwrap()));
        assert!(i.quotient(&Polynomial::one(&r)).unwrap().equals(&i));
        assert!(matches!(i.quotient(&Polynomial::zero(&r)), Err(Error::ZeroDivisor(_))));
        let q2 = i.quotient_by_syzygies(&p(&r, "x")).unwrap();
        assert!(q2.equals(&q));
    }

    #[test]
    fn saturation_examples() {
        let r = ring("ring x y");
        // Ladder: (I:x) = (x, y), (I:x^2) = (1) = (I:x^3).
        let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert!(i.quotient(&p(&r, "x")).unwrap().equals(&Ideal::parse(&r, &["x", "y"]).unwrap()));
        let (s, k) = i.saturate(&p(&r, "x")).unwrap();
        assert!(s.is_unit());
        assert_eq!(k, 2);

        let r3 = ring("ring t x y");
        let j = Ideal::parse(&r3, &["t*x", "t*y"]).unwrap();
        let (s, k) = j.saturate(&p(&r3, "t")).unwrap();
        assert!(s.equals(&Ideal::parse(&r3, &["x", "y"]).unwrap()));
        assert_eq!(k, 1);
        assert!(s.equals(&j.saturate_by_elimination(&p(&r3, "t")).unwrap()));

        let prime = Ideal::parse(&r3, &["x - y^2"]).unwrap();
        let (s, k) = prime.saturate(&p(&r3, "t + x")).unwrap();
        assert!(s.equals(&prime));
        assert_eq!(k, 0);
    }

    #[test]
    fn elimination_examples() {
        let r = ring("ring x y");
        let i = Ideal::parse(&r, &["x - y^2"]).unwrap();
        assert!(i.eliminate(&[0]).is_zero());
        let u = Ideal::parse(&r, &["x*y - 1", "x^2"]).unwrap();
        assert!(u.eliminate(&[0]).is_unit());

        let r3 = ring("ring t x y");
        let par = Ideal::parse(&r3, &["x - t", "y - t^2"]).unwrap();
        let e = par.eliminate(&[0]);
        assert!(e.equals(&Ideal::parse(&r3, &["y - x^2"]).unwrap()));
    }

    #[test]
    fn dimension_examples() {
        let r = ring("ring x y z");
        assert_eq!(Ideal::zero(&r).krull_dimension(), 3);
        assert_eq!(Ideal::unit(&r).krull_dimension(), -1);
        let r4 = ring("ring t x y z");
        assert_eq!(Ideal::parse(&r4, &["x", "y", "t"]).unwrap().krull_dimension(), 1);
        assert_eq!(Ideal::parse(&r4, &["x*y", "z"]).unwrap().krull_dimension(), 2);
    }

    #[test]
    fn intersection_and_radical() {
        let r = ring("ring x y");
        let a = Ideal::parse(&r, &["x"]).unwrap();
        let b = Ideal::parse(&r, &["y"]).unwrap();
        assert!(a.intersection(&b).unwrap().equals(&Ideal::parse(&r, &["x*y"]).unwrap()));
        let sq = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        assert!(sq.radical_contains(&p(&r, "x + y")));
        assert!(!sq.radical_contains(&p(&r, "x + 1")));
    }
}
