use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: QMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<Rational>> =
            rows.iter().map(|row| row.iter().map(|&x| Rational::from(x)).collect()).collect();
        Self::from_rows(r).expect("ragged integer rows")
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// The matrix unit with a single 1 at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &QMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &QMatrix) -> Result<QMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row-echelon form. The pivot in each column is the first
    /// non-zero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &factor;
                    m[(i, j)] -= &v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{ v : M v = 0 }`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(r, f)];
                }
                v
            })
            .collect()
    }

    /// Some solution of `M x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= &v;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Serialized as a JSON array of rows of rational strings.
impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(d)?;
        QMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
