use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use super::{Element, LieAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};
use crate::partitions::{jordan_triple, Partition};

/// Jordan block sizes of a nilpotent matrix from the ranks of its powers:
/// the number of blocks of size `≥ k` is `rank(x^{k−1}) − rank(x^k)`.
pub fn jordan_type(x: &QMatrix) -> Result<Partition> {
    if !x.is_square() {
        return Err(Error::Dimension("Jordan type of a non-square matrix".into()));
    }
    let n = x.rows();
    let mut ranks = vec![n];
    let mut p = QMatrix::identity(n);
    for _ in 0..n {
        p = p.mul(x)?;
        let r = p.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotNilpotent);
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, &c) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n((k + 1) as u32, c - next));
    }
    Partition::new(parts)
}

/// The nilpotent orbit attached to a 2-dimensional subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orbit {
    /// The orbit `{0}`, assigned to abelian planes.
    Zero,
    Nilpotent(Partition),
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orbit::Zero => f.write_str("zero"),
            Orbit::Nilpotent(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Orbit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Orbit::Zero => s.serialize_str("zero"),
            Orbit::Nilpotent(p) => p.serialize(s),
        }
    }
}

/// Classifies a 2-dimensional subalgebra of a matrix Lie algebra.
///
/// Abelian planes give [`Orbit::Zero`]. Otherwise the derived algebra must
/// be a line spanned by a nilpotent element, whose Jordan type is returned.
pub fn orbit_of_subalgebra(h: &Subspace<'_>) -> Result<Orbit> {
    if h.dim() != 2 {
        return Err(Error::Invalid(format!("expected a 2-dimensional subalgebra, got dimension {}", h.dim())));
    }
    if h.is_abelian()? {
        return Ok(Orbit::Zero);
    }
    let derived = h.derived();
    if derived.dim() != 1 {
        return Err(Error::DerivedDimension(derived.dim()));
    }
    let g = h.parent();
    let gen = &derived.basis()[0];
    let m = g.to_matrix(gen)?;
    jordan_type(&m).map(Orbit::Nilpotent)
}

/// A random element of `SL_n(ℚ)` and its inverse, as a product of
/// elementary matrices `I + c·E_ij` with small rational `c`.
pub fn random_conjugator<R: Rng>(n: usize, steps: usize, rng: &mut R) -> (QMatrix, QMatrix) {
    let mut g = QMatrix::identity(n);
    let mut ginv = QMatrix::identity(n);
    if n < 2 {
        return (g, ginv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let num = loop {
            let v: i64 = rng.gen_range(-3..=3);
            if v != 0 {
                break v;
            }
        };
        let c = Rational::new(num, rng.gen_range(1..=3i64));
        let mut e = QMatrix::identity(n);
        e[(i, j)] = c.clone();
        let mut e_inv = QMatrix::identity(n);
        e_inv[(i, j)] = -c;
        g = g.mul(&e).expect("square");
        ginv = e_inv.mul(&ginv).expect("square");
    }
    (g, ginv)
}

/// `g · m · g⁻¹`.
pub fn conjugate(m: &QMatrix, g: &QMatrix, ginv: &QMatrix) -> Result<QMatrix> {
    g.mul(m)?.mul(ginv)
}

/// Elements `e, h, f` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Element,
    pub h: Element,
    pub f: Element,
}

impl Sl2Triple {
    /// Checks the three relations inside `g`.
    pub fn new(g: &LieAlgebra, e: Element, h: Element, f: Element) -> Result<Self> {
        let two = Rational::from(2);
        let scaled = |v: &Element, c: &Rational| v.iter().map(|x| x * c).collect::<Element>();
        if g.bracket(&h, &e)? != scaled(&e, &two)
            || g.bracket(&h, &f)? != scaled(&f, &-two.clone())
            || g.bracket(&e, &f)? != h
        {
            return Err(Error::Invalid("elements do not form an sl2-triple".into()));
        }
        Ok(Sl2Triple { e, h, f })
    }

    /// The triple `(J_λ, H_λ, K_λ)` inside `𝔰𝔩_{|λ|}`.
    pub fn from_partition(g: &LieAlgebra, lambda: &Partition) -> Result<Self> {
        let t = jordan_triple(lambda)?;
        Self::new(g, g.coordinates(&t.j)?, g.coordinates(&t.h)?, g.coordinates(&t.k)?)
    }

    /// The plane `span(e, h)`.
    pub fn plane<'a>(&self, g: &'a LieAlgebra) -> Result<Subspace<'a>> {
        g.subspace(vec![self.e.clone(), self.h.clone()])
    }
}
