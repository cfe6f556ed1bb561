//! `H¹(𝔥, 𝔤/𝔥)` for a subalgebra `𝔥 ⊆ 𝔤` by explicit linear algebra.

use serde::Serialize;

use super::{Element, Subspace};
use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleDims {
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

/// The quotient map `𝔤 → 𝔤/𝔥` in coordinates indexed by the non-pivot
/// columns of `rref(𝔥)`.
struct Quotient {
    rows: QMatrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Quotient {
    fn new(h: &Subspace<'_>) -> Result<Self> {
        let n = h.parent().dim();
        let (rows, pivots) = if h.dim() == 0 {
            (QMatrix::zeros(0, n), Vec::new())
        } else {
            let r = QMatrix::from_rows(h.basis().to_vec())?.rref();
            (r.matrix, r.pivots)
        };
        let free = (0..n).filter(|c| !pivots.contains(c)).collect();
        Ok(Quotient { rows, pivots, free })
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (j, x) in self.rows.row(r).iter().enumerate() {
                if !x.is_zero() {
                    w[j] -= &(&c * x);
                }
            }
        }
        self.free.iter().map(|&j| w[j].clone()).collect()
    }

    fn lift(&self, q: usize, n: usize) -> Element {
        let mut e = vec![Rational::zero(); n];
        e[self.free[q]] = Rational::one();
        e
    }
}

/// Matrices of the induced actions `m ↦ [x_i, m] mod 𝔥` on `𝔤/𝔥`.
fn induced_actions(h: &Subspace<'_>, quot: &Quotient) -> Result<Vec<QMatrix>> {
    let g = h.parent();
    let d = quot.dim();
    h.basis()
        .iter()
        .map(|x| {
            let mut m = QMatrix::zeros(d, d);
            for q in 0..d {
                let image = quot.project(&g.bracket(x, &quot.lift(q, g.dim()))?);
                for (p, v) in image.into_iter().enumerate() {
                    m[(p, q)] = v;
                }
            }
            Ok(m)
        })
        .collect()
}

/// Stacks the action matrices vertically.
fn stacked(actions: &[QMatrix], d: usize) -> QMatrix {
    let mut s = QMatrix::zeros(actions.len() * d, d);
    for (a, m) in actions.iter().enumerate() {
        for p in 0..d {
            for q in 0..d {
                s[(a * d + p, q)] = m[(p, q)].clone();
            }
        }
    }
    s
}

/// Dimensions of derivations `Z¹(𝔥, 𝔤/𝔥)`, inner derivations `B¹` and
/// their quotient `H¹`.
///
/// A derivation is a linear `δ: 𝔥 → 𝔤/𝔥` with
/// `δ([x,y]) = x·δ(y) − y·δ(x)`; inner ones are `x ↦ x·m`.
pub fn cocycle_dims(h: &Subspace<'_>) -> Result<CocycleDims> {
    if !h.is_subalgebra() {
        return Err(Error::NotSubalgebra);
    }
    let g = h.parent();
    let quot = Quotient::new(h)?;
    let (r, d) = (h.dim(), quot.dim());
    if d == 0 || r == 0 {
        return Ok(CocycleDims { z1: 0, b1: 0, h1: 0 });
    }
    let rho = induced_actions(h, &quot)?;

    // Structure constants of 𝔥 in its own basis.
    let hmat = QMatrix::from_rows(h.basis().to_vec())?.transpose();
    let mut s = vec![vec![Vec::new(); r]; r];
    for a in 0..r {
        for b in a + 1..r {
            let br = g.bracket(&h.basis()[a], &h.basis()[b])?;
            s[a][b] = hmat.solve(&br)?.ok_or(Error::NotSubalgebra)?;
        }
    }

    // Unknown D[q][c] = q-th coordinate of δ(x_c), at index q·r + c.
    let unknowns = d * r;
    let idx = |q: usize, c: usize| q * r + c;
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            for q in 0..d {
                let mut eq = vec![Rational::zero(); unknowns];
                for (c, sc) in s[a][b].iter().enumerate() {
                    eq[idx(q, c)] += sc;
                }
                for p in 0..d {
                    eq[idx(p, b)] -= &rho[a][(q, p)];
                    eq[idx(p, a)] += &rho[b][(q, p)];
                }
                eqs.push(eq);
            }
        }
    }
    let rank = if eqs.is_empty() { 0 } else { QMatrix::from_rows(eqs)?.rank() };
    let z1 = unknowns - rank;
    let b1 = stacked(&rho, d).rank();
    Ok(CocycleDims { z1, b1, h1: z1 - b1 })
}

/// Dimension of `(𝔤/𝔥)^𝔥`, the joint kernel of the induced actions.
pub fn invariant_subspace_dim(h: &Subspace<'_>) -> Result<usize> {
    if !h.is_subalgebra() {
        return Err(Error::NotSubalgebra);
    }
    let quot = Quotient::new(h)?;
    let d = quot.dim();
    if d == 0 || h.dim() == 0 {
        return Ok(d);
    }
    let rho = induced_actions(h, &quot)?;
    Ok(d - stacked(&rho, d).rank())
}
