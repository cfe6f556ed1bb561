//! Finite-dimensional Lie algebras over ℚ given by structure constants.

mod cohomology;
mod nilpotent;

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};

pub use cohomology::{cocycle_dims, invariant_subspace_dim, CocycleDims};
pub use nilpotent::{conjugate, jordan_type, orbit_of_subalgebra, random_conjugator, Orbit, Sl2Triple};

/// Coordinates with respect to the algebra's basis.
pub type Element = Vec<Rational>;

type Sparse = Vec<(usize, Rational)>;

/// A Lie algebra with basis `e_0, …, e_{n−1}` and `[e_i, e_j] = Σ_k c_ijk e_k`.
///
/// An optional matrix realization is kept alongside as a witness.
pub struct LieAlgebra {
    name: String,
    dim: usize,
    consts: Vec<Sparse>,
    realization: Option<Realization>,
}

struct Realization {
    size: usize,
    basis: Vec<QMatrix>,
    coords: CoordMap,
}

enum CoordMap {
    /// Basis of `𝔰𝔩_n` in the order produced by [`LieAlgebra::sl`].
    Sl { offdiag: Vec<(usize, usize)>, h_start: usize },
    /// Coordinates read off an invertible square block of the flattened basis.
    Generic { rows: Vec<usize>, inv: QMatrix },
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra").field("name", &self.name).field("dim", &self.dim).finish()
    }
}

impl LieAlgebra {
    /// Builds an algebra from dense constants `c[i][j][k]`, checking
    /// antisymmetry and the Jacobi identity.
    pub fn from_structure_constants(name: &str, c: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let dim = c.len();
        let mut consts = Vec::with_capacity(dim * dim);
        for row in c {
            if row.len() != dim || row.iter().any(|v| v.len() != dim) {
                return Err(Error::Dimension("structure constants must be n×n×n".into()));
            }
            for v in row {
                consts.push(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect());
            }
        }
        let alg = LieAlgebra { name: name.to_string(), dim, consts, realization: None };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// The algebra spanned by linearly independent square matrices, which
    /// must be closed under the commutator.
    pub fn from_matrices(name: &str, basis: Vec<QMatrix>) -> Result<Self> {
        let size = basis.first().map_or(0, QMatrix::rows);
        if basis.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::Dimension("basis matrices must be square of one size".into()));
        }
        let flat: Vec<Vec<Rational>> = basis.iter().map(|m| m.entries().to_vec()).collect();
        let bt = QMatrix::from_rows(flat)?;
        let rref = bt.rref();
        if rref.rank < basis.len() {
            return Err(Error::Invalid("basis matrices are linearly dependent".into()));
        }
        let rows = rref.pivots.clone();
        let block: Vec<Vec<Rational>> =
            rows.iter().map(|&p| basis.iter().map(|m| m.entries()[p].clone()).collect()).collect();
        let inv = QMatrix::from_rows(block)?.inverse().expect("pivot block is invertible");
        Self::with_realization(name, size, basis, CoordMap::Generic { rows, inv })
    }

    /// `𝔰𝔩_n` with basis `E_ij (i<j)`, then `H_i = E_ii − E_{i+1,i+1}`, then
    /// `E_ij (i>j)`. For `n = 2` this is `(e, h, f)`.
    pub fn sl(n: usize) -> Self {
        assert!(n >= 2, "sl(n) needs n >= 2");
        let mut basis = Vec::new();
        let mut offdiag = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                basis.push(QMatrix::unit(n, i, j));
                offdiag.push((i, j));
            }
        }
        let h_start = basis.len();
        for i in 0..n - 1 {
            let mut h = QMatrix::unit(n, i, i);
            h[(i + 1, i + 1)] = -Rational::one();
            basis.push(h);
        }
        for i in 0..n {
            for j in 0..i {
                basis.push(QMatrix::unit(n, i, j));
                offdiag.push((i, j));
            }
        }
        Self::with_realization(&format!("sl{n}"), n, basis, CoordMap::Sl { offdiag, h_start })
            .expect("sl(n) is a Lie algebra")
    }

    /// The abelian algebra of dimension `n`.
    pub fn abelian(n: usize) -> Self {
        LieAlgebra { name: format!("abelian{n}"), dim: n, consts: vec![Vec::new(); n * n], realization: None }
    }

    fn with_realization(name: &str, size: usize, basis: Vec<QMatrix>, coords: CoordMap) -> Result<Self> {
        let dim = basis.len();
        let mut alg = LieAlgebra {
            name: name.to_string(),
            dim,
            consts: vec![Vec::new(); dim * dim],
            realization: Some(Realization { size, basis, coords }),
        };
        let sparse: Vec<Vec<(usize, usize, Rational)>> =
            alg.realization.as_ref().unwrap().basis.iter().map(sparse_entries).collect();
        for i in 0..dim {
            for j in i + 1..dim {
                let comm = sparse_commutator(size, &sparse[i], &sparse[j]);
                let coords = alg.coordinates(&comm).map_err(|_| Error::Invalid("basis not closed under bracket".into()))?;
                let s: Sparse = coords.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect();
                alg.consts[j * dim + i] = s.iter().map(|(k, x)| (*k, -x)).collect();
                alg.consts[i * dim + j] = s;
            }
        }
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            if !self.consts[i * n + i].is_empty() {
                return Err(Error::InvalidStructure("antisymmetry".into()));
            }
            for j in i + 1..n {
                let neg: Sparse = self.consts[j * n + i].iter().map(|(k, x)| (*k, -x)).collect();
                if neg != self.consts[i * n + j] {
                    return Err(Error::InvalidStructure("antisymmetry".into()));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![Rational::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, x) in &self.consts[a * n + b] {
                            for (p, y) in &self.consts[m * n + c] {
                                acc[*p] += &(x * y);
                            }
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(Error::InvalidStructure(format!("Jacobi identity at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.consts[i * self.dim + j].iter().find(|(m, _)| *m == k).map_or_else(Rational::zero, |(_, x)| x.clone())
    }

    pub fn zero(&self) -> Element {
        vec![Rational::zero(); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = Rational::one();
        e
    }

    fn check(&self, x: &[Rational]) -> Result<()> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.consts[i * self.dim + j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_x` acting on coordinate vectors.
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<QMatrix> {
        self.check(x)?;
        let n = self.dim;
        let mut m = QMatrix::zeros(n, n);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..n {
                for (k, c) in &self.consts[i * n + j] {
                    m[(*k, j)] += &(a * c);
                }
            }
        }
        Ok(m)
    }

    /// Whether `ad_x^n = 0` with `n = dim`.
    pub fn ad_nilpotent(&self, x: &[Rational]) -> Result<bool> {
        let ad = self.ad_matrix(x)?;
        let mut p = ad.clone();
        for _ in 1..self.dim.max(1) {
            if p.is_zero() {
                return Ok(true);
            }
            p = p.mul(&ad)?;
        }
        Ok(p.is_zero())
    }

    pub fn has_realization(&self) -> bool {
        self.realization.is_some()
    }

    /// Size of the realizing matrices, if any.
    pub fn matrix_size(&self) -> Option<usize> {
        self.realization.as_ref().map(|r| r.size)
    }

    /// The realizing matrix of an element.
    pub fn to_matrix(&self, x: &[Rational]) -> Result<QMatrix> {
        self.check(x)?;
        let r = self.realization.as_ref().ok_or_else(|| Error::Invalid(format!("{} has no matrix realization", self.name)))?;
        let mut m = QMatrix::zeros(r.size, r.size);
        for (a, b) in x.iter().zip(&r.basis).filter(|(a, _)| !a.is_zero()) {
            m = m.add(&b.scale(a))?;
        }
        Ok(m)
    }

    /// Coordinates of a matrix in the realization; fails if it lies outside.
    pub fn coordinates(&self, m: &QMatrix) -> Result<Element> {
        let r = self.realization.as_ref().ok_or_else(|| Error::Invalid(format!("{} has no matrix realization", self.name)))?;
        if m.rows() != r.size || m.cols() != r.size {
            return Err(Error::Dimension(format!("expected a {0}×{0} matrix", r.size)));
        }
        let x = match &r.coords {
            CoordMap::Sl { offdiag, h_start } => {
                let tr = m.trace();
                if !tr.is_zero() {
                    return Err(Error::NonZeroTrace(tr.to_string()));
                }
                let mut x = self.zero();
                for (idx, &(i, j)) in offdiag.iter().enumerate() {
                    // lower-triangular units sit after the n − 1 diagonal elements
                    let slot = if idx < *h_start { idx } else { idx + r.size - 1 };
                    x[slot] = m[(i, j)].clone();
                }
                let mut run = Rational::zero();
                for k in 0..r.size - 1 {
                    run += &m[(k, k)];
                    x[h_start + k] = run.clone();
                }
                return Ok(x);
            }
            CoordMap::Generic { rows, inv } => {
                let picked: Vec<Rational> = rows.iter().map(|&p| m.entries()[p].clone()).collect();
                inv.mul_vec(&picked)?
            }
        };
        if &self.to_matrix(&x)? != m {
            return Err(Error::Invalid("matrix lies outside the algebra".into()));
        }
        Ok(x)
    }

    /// A subspace spanned by linearly independent elements.
    pub fn subspace(&self, basis: Vec<Element>) -> Result<Subspace<'_>> {
        for b in &basis {
            self.check(b)?;
        }
        if !basis.is_empty() && QMatrix::from_rows(basis.clone())?.rank() < basis.len() {
            return Err(Error::Invalid("subspace basis is linearly dependent".into()));
        }
        Ok(Subspace { parent: self, basis })
    }

    /// Span of the given vectors, dropping dependent ones.
    pub fn span(&self, vectors: Vec<Element>) -> Result<Subspace<'_>> {
        for b in &vectors {
            self.check(b)?;
        }
        let mut basis: Vec<Element> = Vec::new();
        for v in vectors {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if QMatrix::from_rows(trial)?.rank() > basis.len() {
                basis.push(v);
            }
        }
        Ok(Subspace { parent: self, basis })
    }

    /// The span of matrices, converted to coordinates.
    pub fn subspace_of_matrices(&self, mats: &[QMatrix]) -> Result<Subspace<'_>> {
        let basis = mats.iter().map(|m| self.coordinates(m)).collect::<Result<Vec<_>>>()?;
        self.subspace(basis)
    }
}

fn sparse_entries(m: &QMatrix) -> Vec<(usize, usize, Rational)> {
    let c = m.cols();
    m.entries().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(p, x)| (p / c, p % c, x.clone())).collect()
}

fn sparse_commutator(n: usize, a: &[(usize, usize, Rational)], b: &[(usize, usize, Rational)]) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for (i, k, x) in a {
        for (k2, j, y) in b {
            if k == k2 {
                m[(*i, *j)] += &(x * y);
            }
        }
    }
    for (i, k, x) in b {
        for (k2, j, y) in a {
            if k == k2 {
                m[(*i, *j)] -= &(x * y);
            }
        }
    }
    m
}

/// A linear subspace of a Lie algebra with a linearly independent basis.
#[derive(Clone)]
pub struct Subspace<'a> {
    parent: &'a LieAlgebra,
    basis: Vec<Element>,
}

impl fmt::Debug for Subspace<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace").field("parent", &self.parent.name).field("basis", &self.basis).finish()
    }
}

impl<'a> Subspace<'a> {
    pub fn parent(&self) -> &'a LieAlgebra {
        self.parent
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.iter().all(Rational::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(x.to_vec());
        QMatrix::from_rows(rows).expect("equal lengths").rank() == self.basis.len()
    }

    /// Whether every pairwise bracket of basis vectors stays in the span.
    pub fn is_subalgebra(&self) -> bool {
        self.pairs().all(|(a, b)| self.contains(&self.parent.bracket(a, b).expect("same parent")))
    }

    /// Fails with [`Error::NotSubalgebra`] unless closed under the bracket.
    pub fn is_abelian(&self) -> Result<bool> {
        if !self.is_subalgebra() {
            return Err(Error::NotSubalgebra);
        }
        Ok(self.pairs().all(|(a, b)| self.parent.bracket(a, b).expect("same parent").iter().all(Rational::is_zero)))
    }

    /// The span of all pairwise brackets.
    pub fn derived(&self) -> Subspace<'a> {
        let brackets = self.pairs().map(|(a, b)| self.parent.bracket(a, b).expect("same parent")).collect();
        self.parent.span(brackets).expect("same parent")
    }

    /// The subspace with basis `Σ_j t[i][j]·b_j`; `t` must be invertible.
    pub fn change_basis(&self, t: &QMatrix) -> Result<Subspace<'a>> {
        if t.rows() != self.dim() || t.cols() != self.dim() || t.inverse().is_none() {
            return Err(Error::Invalid("change of basis must be invertible".into()));
        }
        let basis = (0..self.dim())
            .map(|i| {
                let mut v = self.parent.zero();
                for (j, b) in self.basis.iter().enumerate() {
                    for (vk, bk) in v.iter_mut().zip(b) {
                        *vk += &(&t[(i, j)] * bk);
                    }
                }
                v
            })
            .collect();
        self.parent.subspace(basis)
    }

    fn pairs(&self) -> impl Iterator<Item = (&Element, &Element)> + '_ {
        let b = &self.basis;
        (0..b.len()).flat_map(move |i| (i + 1..b.len()).map(move |j| (&b[i], &b[j])))
    }
}

/// Free-function form of [`Subspace::is_subalgebra`].
pub fn is_subalgebra(v: &Subspace<'_>) -> bool {
    v.is_subalgebra()
}

/// Free-function form of [`Subspace::is_abelian`].
pub fn is_abelian(v: &Subspace<'_>) -> Result<bool> {
    v.is_abelian()
}
