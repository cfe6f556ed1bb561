use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use super::ring::same_ring;
use super::{module_kernel, Ideal, Polynomial, Ring, SubmoduleBasis};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// A dense matrix of polynomials, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i).iter().map(|p| p.to_string()).collect_vec())).finish()
    }
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, data: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = Polynomial::one(ring);
        }
        m
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged polynomial matrix".into()));
        }
        if rows.iter().flatten().any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let n = rows.len();
        Ok(PolyMatrix { ring: ring.clone(), rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(ring: &Arc<Ring>, rows: usize, cols: &[Vec<Polynomial>]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::RankMismatch { expected: rows, found: c.len() });
            }
            for (i, p) in c.iter().enumerate() {
                if !same_ring(p.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
                m.data[i * m.cols + j] = p.clone();
            }
        }
        Ok(m)
    }

    /// Parses entries written in the plain-text polynomial syntax.
    pub fn parse(ring: &Arc<Ring>, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(same_ring(p.ring(), &self.ring));
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(Error::RankMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Polynomial::zero(&self.ring), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let cols: Vec<Vec<Polynomial>> =
            other.columns().iter().map(|c| self.mul_vec(c)).collect::<Result<_>>()?;
        Self::from_columns(&self.ring, self.rows, &cols)
    }

    pub fn specialize(&self, var: usize, value: &Rational) -> Self {
        PolyMatrix { data: self.data.iter().map(|p| p.specialize(var, value)).collect(), ..self.clone() }
    }

    /// All nonzero `size × size` minors, deduplicated, in the order of
    /// (row subset, column subset) lexicographically.
    pub fn minors(&self, size: usize) -> Vec<Polynomial> {
        if size == 0 {
            return vec![Polynomial::one(&self.ring)];
        }
        if size > self.rows || size > self.cols {
            return Vec::new();
        }
        assert!(self.rows <= 64 && self.cols <= 64, "minor masks hold at most 64 rows and columns");
        let mut memo: HashMap<(u64, u64), Polynomial> = HashMap::new();
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for rs in (0..self.rows).combinations(size) {
            let rmask = rs.iter().fold(0u64, |m, &r| m | 1 << r);
            for cs in (0..self.cols).combinations(size) {
                let cmask = cs.iter().fold(0u64, |m, &c| m | 1 << c);
                let d = self.minor_masked(rmask, cmask, &mut memo);
                if !d.is_zero() && seen.insert(d.clone()) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Laplace expansion along the first selected row, memoizing every
    /// sub-minor.
    fn minor_masked(&self, rmask: u64, cmask: u64, memo: &mut HashMap<(u64, u64), Polynomial>) -> Polynomial {
        if rmask == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&(rmask, cmask)) {
            return p.clone();
        }
        let r = rmask.trailing_zeros() as usize;
        let rest = rmask & (rmask - 1);
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_neg = false;
        let mut cm = cmask;
        while cm != 0 {
            let c = cm.trailing_zeros() as usize;
            cm &= cm - 1;
            let a = self.get(r, c);
            if !a.is_zero() {
                let sub = self.minor_masked(rest, cmask & !(1 << c), memo);
                if !sub.is_zero() {
                    let term = a * &sub;
                    acc = if sign_neg { &acc - &term } else { &acc + &term };
                }
            }
            sign_neg = !sign_neg;
        }
        memo.insert((rmask, cmask), acc.clone());
        acc
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let full = if self.rows == 64 { u64::MAX } else { (1u64 << self.rows) - 1 };
        Ok(self.minor_masked(full, full, &mut HashMap::new()))
    }

    /// `Fitt_i` of the cokernel of this presentation: the ideal of
    /// `(rows − i)`-minors, with the conventions `(1)` when `rows ≤ i` and
    /// `0` when the minors do not fit.
    pub fn fitting_ideal(&self, i: usize) -> Ideal {
        if self.rows <= i {
            return Ideal::unit(&self.ring);
        }
        Ideal::new(&self.ring, self.minors(self.rows - i)).expect("same ring")
    }

    /// `Fitt_0, …, Fitt_rows`.
    pub fn fitting_chain(&self) -> Vec<Ideal> {
        (0..=self.rows).map(|i| self.fitting_ideal(i)).collect()
    }

    /// Syzygies of the columns: `{ v : self · v = 0 }`.
    pub fn kernel(&self) -> Result<SubmoduleBasis> {
        module_kernel(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<Ring> {
        Ring::parse_header("ring t x y z").unwrap()
    }

    #[test]
    fn determinant_matches_cofactor_formula() {
        let r = ring();
        let m = PolyMatrix::parse(&r, &[&["x", "t", "0"], &["-y", "0", "t"], &["0", "-y", "-x"]]).unwrap();
        // x(0·(−x) − t(−y)) − t((−y)(−x) − 0) = xyt − txy = 0
        assert!(m.determinant().unwrap().is_zero());
        let d = PolyMatrix::parse(&r, &[&["x", "1"], &["y", "t"]]).unwrap();
        assert_eq!(d.determinant().unwrap(), Polynomial::parse(&r, "t*x - y").unwrap());
    }

    #[test]
    fn fitting_of_zero_matrix() {
        let r = ring();
        let z = PolyMatrix::zeros(&r, 3, 2);
        for i in 0..3 {
            assert!(z.fitting_ideal(i).is_zero());
        }
        assert!(z.fitting_ideal(3).is_unit());
    }

    #[test]
    fn fitting_chain_of_presentation() {
        let r = ring();
        let q = PolyMatrix::parse(&r, &[&["x", "t", "0"], &["-y", "0", "t"], &["0", "-y", "-x"]]).unwrap();
        let chain = q.fitting_chain();
        assert!(chain[0].is_zero() || chain[0].groebner_basis().is_empty());
        let f1 = Ideal::parse(&r, &["y^2", "x*y", "t*y", "x^2", "t*x", "t^2"]).unwrap();
        assert!(chain[1].equals(&f1));
        assert!(chain[2].equals(&Ideal::parse(&r, &["x", "y", "t"]).unwrap()));
        assert!(chain[3].is_unit());
        for w in chain.windows(2) {
            assert!(w[1].contains_ideal(&w[0]));
        }
    }
}
