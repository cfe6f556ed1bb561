//! Sparse term vectors shared by polynomials and free-module elements.
//!
//! A term vector is a `Vec<(T, Rational)>` sorted strictly descending under
//! a [`TermOrder`] with no zero coefficients.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use super::{Monomial, MonomialOrder};
use crate::exact::Rational;

pub(crate) type TermVec<T> = Vec<(T, Rational)>;

pub(crate) trait Term: Clone + Eq + Hash + Debug + Send + Sync {
    /// Buchberger's coprime-leading-term criterion is only valid for ideals.
    const PRODUCT_CRITERION: bool;

    fn mon(&self) -> &Monomial;

    /// Free-module position; always 0 for plain monomials.
    fn slot(&self) -> usize;

    fn with_mon(&self, m: Monomial) -> Self;

    fn divides(&self, other: &Self) -> bool {
        self.slot() == other.slot() && self.mon().divides(other.mon())
    }

    fn lcm(&self, other: &Self) -> Option<Self> {
        (self.slot() == other.slot()).then(|| self.with_mon(self.mon().lcm(other.mon())))
    }

    fn mul_mon(&self, m: &Monomial) -> Self {
        self.with_mon(self.mon().mul(m))
    }
}

pub(crate) trait TermOrder<T>: Sync {
    fn cmp_terms(&self, a: &T, b: &T) -> Ordering;
}

impl Term for Monomial {
    const PRODUCT_CRITERION: bool = true;

    fn mon(&self) -> &Monomial {
        self
    }

    fn slot(&self) -> usize {
        0
    }

    fn with_mon(&self, m: Monomial) -> Self {
        m
    }
}

impl TermOrder<Monomial> for MonomialOrder {
    fn cmp_terms(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp(a, b)
    }
}

/// A term `m·eᵢ` of a free module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct ModTerm {
    pub pos: usize,
    pub mon: Monomial,
}

impl Term for ModTerm {
    const PRODUCT_CRITERION: bool = false;

    fn mon(&self) -> &Monomial {
        &self.mon
    }

    fn slot(&self) -> usize {
        self.pos
    }

    fn with_mon(&self, m: Monomial) -> Self {
        ModTerm { pos: self.pos, mon: m }
    }
}

/// Position-over-term: `e₀ > e₁ > …`, ties broken by the ring order.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Pot(pub MonomialOrder);

impl TermOrder<ModTerm> for Pot {
    fn cmp_terms(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        b.pos.cmp(&a.pos).then_with(|| self.0.cmp(&a.mon, &b.mon))
    }
}

/// Sorts, merges duplicate terms and drops zeros.
pub(crate) fn normalize<T: Term, O: TermOrder<T>>(mut terms: TermVec<T>, ord: &O) -> TermVec<T> {
    terms.sort_by(|a, b| ord.cmp_terms(&b.0, &a.0));
    let mut out: TermVec<T> = Vec::with_capacity(terms.len());
    for (t, c) in terms {
        match out.last_mut() {
            Some((lt, lc)) if *lt == t => *lc += &c,
            _ => out.push((t, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// `a - c · m · b`, all inputs sorted descending.
pub(crate) fn sub_scaled<T: Term, O: TermOrder<T>>(
    a: &[(T, Rational)],
    c: &Rational,
    m: &Monomial,
    b: &[(T, Rational)],
    ord: &O,
) -> TermVec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(t, k)| (t.mul_mon(m), k));
    let mut next_b = bi.next();
    while i < a.len() || next_b.is_some() {
        match (a.get(i), &next_b) {
            (Some((ta, ca)), Some((tb, cb))) => match ord.cmp_terms(ta, tb) {
                Ordering::Greater => {
                    out.push((ta.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((tb.clone(), -(c * *cb)));
                    next_b = bi.next();
                }
                Ordering::Equal => {
                    let v = ca - &(c * *cb);
                    if !v.is_zero() {
                        out.push((ta.clone(), v));
                    }
                    i += 1;
                    next_b = bi.next();
                }
            },
            (Some((ta, ca)), None) => {
                out.push((ta.clone(), ca.clone()));
                i += 1;
            }
            (None, Some((tb, cb))) => {
                out.push((tb.clone(), -(c * *cb)));
                next_b = bi.next();
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub(crate) fn add<T: Term, O: TermOrder<T>>(a: &[(T, Rational)], b: &[(T, Rational)], ord: &O) -> TermVec<T> {
    let one = b.first().map(|(t, _)| Monomial::one(t.mon().nvars()));
    match one {
        None => a.to_vec(),
        Some(one) => sub_scaled(a, &-Rational::one(), &one, b, ord),
    }
}

pub(crate) fn scale<T: Term>(a: &[(T, Rational)], c: &Rational) -> TermVec<T> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(t, k)| (t.clone(), k * c)).collect()
}

pub(crate) fn mul_term<T: Term>(a: &[(T, Rational)], c: &Rational, m: &Monomial) -> TermVec<T> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(t, k)| (t.mul_mon(m), k * c)).collect()
}

pub(crate) fn make_monic<T: Term>(a: &mut TermVec<T>) {
    if let Some((_, lc)) = a.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in a.iter_mut() {
                *c *= &inv;
            }
        }
    }
}
