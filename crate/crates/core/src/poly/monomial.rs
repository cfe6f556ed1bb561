use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector indexed by ring variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u16; 14]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial { deg: exps.iter().map(|&e| e as u32).sum(), exps: SmallVec::from_slice(exps) }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            deg: self.deg - other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 14]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial { deg: exps.iter().map(|&e| e as u32).sum(), exps }
    }

    /// True when the two monomials share no variable.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` is set iff variable `i < 64` occurs.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .take(64)
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub(crate) fn with_exponent(&self, i: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[i] as u32 + e as u32;
        m.exps[i] = e;
        m
    }

    /// Reindexes variables: variable `i` of `self` becomes variable `map[i]`
    /// of a monomial in `nvars` variables.
    pub(crate) fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial { deg: self.deg, exps }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Monomial orders. Variable 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// An elimination order for the first block.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| revlex_tail(&a.exps, &b.exps)),
            MonomialOrder::Block(k) => {
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                grevlex_slice(a1, b1).then_with(|| grevlex_slice(a2, b2))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block(k) => format!("block:{k}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lex" => Some(MonomialOrder::Lex),
            "grevlex" => Some(MonomialOrder::GrevLex),
            _ => s.strip_prefix("block:").and_then(|k| k.parse().ok()).map(MonomialOrder::Block),
        }
    }
}

// Among equal degrees, the monomial with the smaller exponent in the last
// differing variable is larger.
fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn grevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}
