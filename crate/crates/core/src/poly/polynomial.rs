use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::ring::same_ring;
use super::sparse::{self, TermVec};
use super::{Monomial, MonomialOrder, Ring};
use crate::exact::Rational;
use crate::error::{Error, Result};

/// A sparse polynomial with rational coefficients.
///
/// Terms are kept sorted by the ring's order, largest first, and no stored
/// coefficient is zero.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: TermVec<Monomial>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::one(ring.nvars()), c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// The `i`-th ring variable.
    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), i), Rational::one())] }
    }

    /// The ring variable called `name`.
    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring.var_index(name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Rational)>) -> Self {
        assert!(terms.iter().all(|(m, _)| m.nvars() == ring.nvars()), "monomial arity mismatch");
        Polynomial { ring: ring.clone(), terms: sparse::normalize(terms, &ring.order()) }
    }

    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: TermVec<Monomial>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    /// Linear form `Σ cᵢ xᵢ`.
    pub fn linear(ring: &Arc<Ring>, coeffs: &[Rational]) -> Self {
        assert_eq!(coeffs.len(), ring.nvars());
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(ring.nvars(), i), c.clone()))
            .collect();
        Self::from_terms(ring, terms)
    }

    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        super::parse::parse_polynomial(ring, text)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> TermVec<Monomial> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Non-zero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lead_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Coefficient of `m`, zero if absent.
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Indices of the variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.terms.iter().any(|(m, _)| m.exponent(i) > 0)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Polynomial { ring: self.ring.clone(), terms: sparse::scale(&self.terms, c) }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        Polynomial { ring: self.ring.clone(), terms: sparse::mul_term(&self.terms, c, m) }
    }

    pub fn monic(&self) -> Self {
        let mut t = self.terms.clone();
        sparse::make_monic(&mut t);
        Polynomial { ring: self.ring.clone(), terms: t }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.clone();
                for (x, &e) in point.iter().zip(m.exponents()) {
                    if e > 0 {
                        v *= &x.pow(e as i32);
                    }
                }
                v
            })
            .sum()
    }

    /// Substitutes `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Self {
        assert!(same_ring(&self.ring, &value.ring), "substitution across rings");
        let mut powers: Vec<Polynomial> = vec![Self::one(&self.ring)];
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = m.with_exponent(var, 0);
            acc = &acc + &powers[e].mul_monomial(&rest, c);
        }
        acc
    }

    /// Substitutes a constant for variable `var`.
    pub fn specialize(&self, var: usize, value: &Rational) -> Self {
        self.substitute(var, &Self::constant(&self.ring, value.clone()))
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                (m.with_exponent(var, e - 1), c * &Rational::from(e as i64))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `map[i]`.
    pub fn remap(&self, target: &Arc<Ring>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        let terms = self.terms.iter().map(|(m, c)| (m.remap(map, target.nvars()), c.clone())).collect();
        Self::from_terms(target, terms)
    }

    /// The same polynomial in a ring with identical variables and another order.
    pub fn reorder(&self, order: MonomialOrder) -> Self {
        let target = self.ring.with_order(order);
        let id: Vec<usize> = (0..self.ring.nvars()).collect();
        self.remap(&target, &id)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(same_ring(&self.ring, &divisor.ring));
        if divisor.is_zero() {
            return None;
        }
        let ord = self.ring.order();
        let (lm, lc) = divisor.terms[0].clone();
        let mut rem = self.terms.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.first().cloned() {
            let q = m.div(&lm)?;
            let qc = &c / &lc;
            rem = sparse::sub_scaled(&rem, &qc, &q, &divisor.terms, &ord);
            quot.push((q, qc));
        }
        Some(Self::from_terms(&self.ring, quot))
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(same_ring(&self.ring, &other.ring), "polynomials from different rings");
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        Polynomial { ring: self.ring.clone(), terms: sparse::add(&self.terms, &rhs.terms, &self.ring.order()) }
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let one = Monomial::one(self.ring.nvars());
        Polynomial {
            ring: self.ring.clone(),
            terms: sparse::sub_scaled(&self.terms, &Rational::one(), &one, &rhs.terms, &self.ring.order()),
        }
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += &(ca * cb);
            }
        }
        Polynomial::from_terms(&self.ring, acc.into_iter().collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_ops {
    ($Trait:ident, $method:ident) => {
        impl $Trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = self.ring.var_name(i);
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
