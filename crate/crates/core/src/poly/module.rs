use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner::{normal_form, reduced_basis, satisfies_buchberger_criterion};
use super::ring::same_ring;
use super::sparse::{normalize, ModTerm, Pot, TermVec};
use super::{PolyMatrix, Polynomial, Ring, SATURATION_CAP};
use crate::error::{Error, Result};

/// A submodule of the free module `R^rank`, given by generating vectors.
/// Its reduced Gröbner basis uses the position-over-term order and is
/// cached on first use.
pub struct SubmoduleBasis {
    ring: Arc<Ring>,
    rank: usize,
    gens: Vec<Vec<Polynomial>>,
    gb: OnceLock<Vec<Vec<Polynomial>>>,
}

impl Clone for SubmoduleBasis {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        SubmoduleBasis { ring: self.ring.clone(), rank: self.rank, gens: self.gens.clone(), gb }
    }
}

impl fmt::Debug for SubmoduleBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.gens.iter().map(|v| v.iter().map(|p| p.to_string()).collect()).collect();
        f.debug_struct("SubmoduleBasis").field("rank", &self.rank).field("gens", &rows).finish()
    }
}

fn to_terms(v: &[Polynomial], ord: &Pot) -> TermVec<ModTerm> {
    let terms = v
        .iter()
        .enumerate()
        .flat_map(|(pos, p)| p.terms().iter().map(move |(m, c)| (ModTerm { pos, mon: m.clone() }, c.clone())))
        .collect();
    normalize(terms, ord)
}

fn from_terms(ring: &Arc<Ring>, rank: usize, t: TermVec<ModTerm>) -> Vec<Polynomial> {
    let mut parts: Vec<Vec<_>> = vec![Vec::new(); rank];
    for (ModTerm { pos, mon }, c) in t {
        parts[pos].push((mon, c));
    }
    parts.into_iter().map(|terms| Polynomial::from_terms(ring, terms)).collect()
}

impl SubmoduleBasis {
    /// Fails if a vector has the wrong length or lives in another ring.
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: Vec<Vec<Polynomial>>) -> Result<Self> {
        for v in &gens {
            if v.len() != rank {
                return Err(Error::RankMismatch { expected: rank, found: v.len() });
            }
            if v.iter().any(|p| !same_ring(p.ring(), ring)) {
                return Err(Error::RingMismatch);
            }
        }
        let gens = gens.into_iter().filter(|v| v.iter().any(|p| !p.is_zero())).collect();
        Ok(SubmoduleBasis { ring: ring.clone(), rank, gens, gb: OnceLock::new() })
    }

    /// The whole free module, spanned by the standard basis.
    pub fn free(ring: &Arc<Ring>, rank: usize) -> Self {
        Self::new(ring, rank, (0..rank).map(|i| unit_vector(ring, rank, i)).collect()).expect("well formed")
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> Self {
        Self::new(ring, rank, Vec::new()).expect("well formed")
    }

    /// Parses generator vectors written in the plain-text polynomial syntax.
    pub fn parse(ring: &Arc<Ring>, rank: usize, gens: &[&[&str]]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|v| v.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, rank, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn pot(&self) -> Pot {
        Pot(self.ring.order())
    }

    fn gb_terms(&self) -> Vec<TermVec<ModTerm>> {
        let ord = self.pot();
        self.groebner_basis().iter().map(|v| to_terms(v, &ord)).collect()
    }

    /// Reduced Gröbner basis, position over term, sorted by leading term.
    pub fn groebner_basis(&self) -> &[Vec<Polynomial>] {
        self.gb.get_or_init(|| {
            let ord = self.pot();
            let gens = self.gens.iter().map(|v| to_terms(v, &ord)).collect();
            reduced_basis(gens, &ord).into_iter().map(|t| from_terms(&self.ring, self.rank, t)).collect()
        })
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: v.len() });
        }
        let ord = self.pot();
        let nf = normal_form(to_terms(v, &ord), &self.gb_terms(), &ord);
        Ok(from_terms(&self.ring, self.rank, nf))
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        self.normal_form(v).map(|r| r.iter().all(Polynomial::is_zero)).unwrap_or(false)
    }

    pub fn contains_module(&self, other: &SubmoduleBasis) -> bool {
        other.rank == self.rank && other.gens.iter().all(|v| self.contains(v))
    }

    /// Equality of submodules via reduced Gröbner bases.
    pub fn equals(&self, other: &SubmoduleBasis) -> bool {
        self.rank == other.rank && same_ring(&self.ring, &other.ring) && self.groebner_basis() == other.groebner_basis()
    }

    pub fn is_free_module(&self) -> bool {
        self.equals(&SubmoduleBasis::free(&self.ring, self.rank))
    }

    /// Re-checks the Buchberger criterion on the cached basis.
    pub fn verify_groebner_basis(&self) -> bool {
        satisfies_buchberger_criterion(&self.gb_terms(), &self.pot())
    }

    /// The generators as the columns of a `rank × m` matrix.
    pub fn generator_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(&self.ring, self.rank, &self.gens).expect("well formed")
    }

    /// `(M : f) = { v : f·v ∈ M }`, from the kernel of `[f·I | −G]`.
    pub fn quotient(&self, f: &Polynomial) -> Result<SubmoduleBasis> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroDivisor("divisor"));
        }
        let k = self.rank;
        let basis = self.groebner_basis();
        let mut m = PolyMatrix::zeros(&self.ring, k, k + basis.len());
        for i in 0..k {
            m.set(i, i, f.clone());
        }
        for (j, g) in basis.iter().enumerate() {
            for i in 0..k {
                m.set(i, k + j, -g[i].clone());
            }
        }
        let ker = module_kernel(&m)?;
        let gens = ker.gens.iter().map(|v| v[..k].to_vec()).collect();
        SubmoduleBasis::new(&self.ring, k, gens)
    }

    /// `{ v : f^j·v ∈ M for some j }` by iterated quotients, with the first
    /// stabilizing exponent.
    pub fn saturate(&self, f: &Polynomial) -> Result<(SubmoduleBasis, usize)> {
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

    /// `M⊥ ⊆ (R^rank)*`: linear forms vanishing on every generator.
    pub fn orthogonal(&self) -> Result<SubmoduleBasis> {
        let rows = PolyMatrix::from_rows(&self.ring, self.gens.clone())?;
        if self.gens.is_empty() {
            return Ok(SubmoduleBasis::free(&self.ring, self.rank));
        }
        module_kernel(&rows)
    }

    /// `M⊥⊥`, the strong saturation of `M`.
    pub fn double_orthogonal(&self) -> Result<SubmoduleBasis> {
        self.orthogonal()?.orthogonal()
    }

    /// Sets variable `var` to `value` in every generator.
    pub fn specialize(&self, var: usize, value: &crate::exact::Rational) -> SubmoduleBasis {
        let gens = self.gens.iter().map(|v| v.iter().map(|p| p.specialize(var, value)).collect()).collect();
        SubmoduleBasis::new(&self.ring, self.rank, gens).expect("well formed")
    }
}

fn unit_vector(ring: &Arc<Ring>, rank: usize, i: usize) -> Vec<Polynomial> {
    (0..rank).map(|j| if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) }).collect()
}

/// Reduced Gröbner basis of the submodule spanned by `gens`.
pub fn module_groebner(ring: &Arc<Ring>, rank: usize, gens: Vec<Vec<Polynomial>>) -> Result<SubmoduleBasis> {
    let m = SubmoduleBasis::new(ring, rank, gens)?;
    m.groebner_basis();
    Ok(m)
}

/// Syzygies of the columns of a `k × m` matrix, as a submodule of `R^m`.
///
/// The vectors `(A·e_j, e_j) ∈ R^{k+m}` are put in Gröbner form under the
/// position-over-term order; the basis elements vanishing in the first `k`
/// slots generate the kernel.
pub fn module_kernel(map: &PolyMatrix) -> Result<SubmoduleBasis> {
    let ring = map.ring();
    let (k, m) = (map.rows(), map.cols());
    if k == 0 || map.is_zero() {
        return Ok(SubmoduleBasis::free(ring, m));
    }
    let lifted: Vec<Vec<Polynomial>> = (0..m)
        .map(|j| {
            let mut v = map.column(j);
            v.extend(unit_vector(ring, m, j));
            v
        })
        .collect();
    let big = SubmoduleBasis::new(ring, k + m, lifted)?;
    let gens = big
        .groebner_basis()
        .iter()
        .filter(|v| v[..k].iter().all(Polynomial::is_zero))
        .map(|v| v[k..].to_vec())
        .collect();
    SubmoduleBasis::new(ring, m, gens)
}

/// Free-function form of [`SubmoduleBasis::saturate`], discarding the
/// exponent.
pub fn module_saturate(m: &SubmoduleBasis, f: &Polynomial) -> Result<SubmoduleBasis> {
    m.saturate(f).map(|(s, _)| s)
}

/// Free-function form of [`SubmoduleBasis::double_orthogonal`].
pub fn double_orthogonal(m: &SubmoduleBasis) -> Result<SubmoduleBasis> {
    m.double_orthogonal()
}
