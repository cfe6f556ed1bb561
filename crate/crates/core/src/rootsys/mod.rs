//! Irreducible root systems in explicit lattice coordinates, with the
//! counting bounds built on them.

mod bounds;
mod models;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};

pub use bounds::{
    eligibility_report, EligibilityReport, EligibilityRow, LeviMinimum, SpringerBounds, SuterWang, TableWarning,
    EXCLUDED_TYPES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" | "a" => RootType::A,
            "B" | "b" => RootType::B,
            "C" | "c" => RootType::C,
            "D" | "d" => RootType::D,
            "E" | "e" => RootType::E,
            "F" | "f" => RootType::F,
            "G" | "g" => RootType::G,
            other => return Err(Error::InvalidRootSystem(other.to_string())),
        })
    }
}

impl RootType {
    /// Whether `(self, rank)` names an irreducible reduced root system
    /// (with the usual restrictions avoiding coincidences).
    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            RootType::A => rank >= 1,
            RootType::B => rank >= 2,
            RootType::C => rank >= 3,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
        }
    }

    /// Every valid `(type, rank)` with `rank ≤ cap`, ordered by type then rank.
    pub fn all_up_to(cap: usize) -> Vec<(RootType, usize)> {
        use RootType::*;
        [A, B, C, D, E, F, G]
            .into_iter()
            .flat_map(|t| (1..=cap).filter(move |&r| t.valid_rank(r)).map(move |r| (t, r)))
            .collect()
    }
}

/// Roots as integer vectors, a positive system and its base.
///
/// E and F types use doubled coordinates so every root is integral; inner
/// products are the standard dot product on the ambient lattice.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: RootType,
    rank: usize,
    ambient: usize,
    positive: Vec<Vec<i64>>,
    simple: Vec<Vec<i64>>,
    /// Expansion of each positive root in the simple roots.
    coeffs: Vec<Vec<i64>>,
    highest: usize,
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootSystem {
    pub fn build(ty: RootType, rank: usize) -> Result<Self> {
        if !ty.valid_rank(rank) {
            return Err(Error::InvalidRootSystem(format!("{ty}{rank}")));
        }
        let (roots, functional) = models::roots(ty, rank);
        let ambient = functional.len();
        let mut positive: Vec<Vec<i64>> = roots.into_iter().filter(|r| dot(r, &functional) > 0).collect();
        positive.sort_by(|a, b| dot(a, &functional).cmp(&dot(b, &functional)).then_with(|| b.cmp(a)));

        let set: HashSet<&Vec<i64>> = positive.iter().collect();
        let mut simple: Vec<Vec<i64>> = positive
            .iter()
            .filter(|r| {
                !positive.iter().any(|a| {
                    let rest: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - y).collect();
                    set.contains(&rest)
                })
            })
            .cloned()
            .collect();
        simple.sort_by(|a, b| b.cmp(a));
        if simple.len() != rank {
            return Err(Error::InvalidRootSystem(format!("{ty}{rank}: found {} simple roots", simple.len())));
        }

        // Columns are simple roots; solve for each positive root.
        let cols = QMatrix::from_rows(
            (0..ambient).map(|i| simple.iter().map(|s| Rational::from(s[i])).collect()).collect(),
        )?;
        let mut coeffs = Vec::with_capacity(positive.len());
        for r in &positive {
            let rhs: Vec<Rational> = r.iter().map(|&x| Rational::from(x)).collect();
            let sol = cols.solve(&rhs)?.ok_or_else(|| Error::InvalidRootSystem("root outside span of base".into()))?;
            let ints = sol
                .iter()
                .map(|c| c.to_i64().filter(|v| *v >= 0 && c.is_integer()))
                .collect::<Option<Vec<i64>>>()
                .ok_or_else(|| Error::InvalidRootSystem("positive root with a negative or fractional coefficient".into()))?;
            coeffs.push(ints);
        }
        let heights: Vec<i64> = coeffs.iter().map(|c| c.iter().sum()).collect();
        let top = *heights.iter().max().expect("non-empty");
        let highest: Vec<usize> = (0..positive.len()).filter(|&i| heights[i] == top).collect();
        if highest.len() != 1 {
            return Err(Error::InvalidRootSystem("highest root is not unique".into()));
        }
        Ok(RootSystem { ty, rank, ambient, positive, simple, coeffs, highest: highest[0] })
    }

    pub fn root_type(&self) -> RootType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Label such as `E8`.
    pub fn label(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let neg = self.positive.iter().map(|r| r.iter().map(|x| -x).collect());
        self.positive.iter().cloned().chain(neg).collect()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple
    }

    /// Coefficients of the `i`-th positive root in the base.
    pub fn expansion(&self, i: usize) -> &[i64] {
        &self.coeffs[i]
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.positive[self.highest]
    }

    /// Marks: the expansion of the highest root.
    pub fn marks(&self) -> &[i64] {
        &self.coeffs[self.highest]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.coeffs[i].iter().sum()
    }

    /// `(h, h∨)`: one plus the height of the highest root, and one plus the
    /// sum of its comarks `m_i |α_i|² / |α̃|²`.
    pub fn coxeter_numbers(&self) -> (i64, i64) {
        let theta = self.highest_root();
        let tt = dot(theta, theta);
        let h = 1 + self.height(self.highest);
        let dual: Rational = self
            .marks()
            .iter()
            .zip(&self.simple)
            .map(|(&m, s)| Rational::new(m * dot(s, s), tt))
            .sum();
        assert!(dual.is_integer(), "comarks must sum to an integer");
        (h, 1 + dual.to_i64().expect("small"))
    }

    /// `#{α ∈ Φ : ⟨α, v⟩ ≠ 0}` for `v` in ambient coordinates.
    pub fn count_nonorthogonal(&self, v: &[Rational]) -> Result<usize> {
        if v.len() != self.ambient {
            return Err(Error::Dimension(format!("expected a vector of length {}", self.ambient)));
        }
        let positive = self
            .positive
            .iter()
            .filter(|r| !r.iter().zip(v).map(|(&a, b)| b * &Rational::from(a)).sum::<Rational>().is_zero())
            .count();
        Ok(2 * positive)
    }

    /// Integer-vector convenience for [`count_nonorthogonal`](Self::count_nonorthogonal).
    pub fn count_nonorthogonal_int(&self, v: &[i64]) -> usize {
        assert_eq!(v.len(), self.ambient);
        2 * self.positive.iter().filter(|r| dot(r, v) != 0).count()
    }

    pub(crate) fn coeff_support(&self, i: usize) -> u32 {
        self.coeffs[i].iter().enumerate().filter(|(_, &c)| c != 0).fold(0, |m, (k, _)| m | 1 << k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RootType::*;

    fn classical_count(t: RootType, r: usize) -> usize {
        match t {
            A => r * (r + 1),
            B | C => 2 * r * r,
            D => 2 * r * (r - 1),
            E => [72, 126, 240][r - 6],
            F => 48,
            G => 12,
        }
    }

    #[test]
    fn root_counts() {
        for (t, r) in RootType::all_up_to(8) {
            let rs = RootSystem::build(t, r).unwrap();
            assert_eq!(rs.num_roots(), classical_count(t, r), "{t}{r}");
            assert_eq!(rs.simple_roots().len(), r);
        }
        assert_eq!(RootSystem::build(A, 1).unwrap().num_roots(), 2);
        assert_eq!(RootSystem::build(E, 8).unwrap().positive_roots().len(), 120);
    }

    #[test]
    fn invalid_ranks() {
        for (t, r) in [(B, 1), (C, 2), (D, 3), (E, 5), (E, 9), (F, 3), (G, 3), (A, 0)] {
            assert!(matches!(RootSystem::build(t, r), Err(Error::InvalidRootSystem(_))), "{t}{r}");
        }
    }

    #[test]
    fn highest_root_is_maximal() {
        for (t, r) in RootType::all_up_to(8) {
            let rs = RootSystem::build(t, r).unwrap();
            let theta = rs.highest_root().to_vec();
            let all: HashSet<Vec<i64>> = rs.roots().into_iter().collect();
            for a in rs.positive_roots() {
                let s: Vec<i64> = theta.iter().zip(a).map(|(x, y)| x + y).collect();
                assert!(!all.contains(&s), "{t}{r}");
            }
        }
    }

    #[test]
    fn coxeter_examples() {
        for r in 1..=8 {
            assert_eq!(RootSystem::build(A, r).unwrap().coxeter_numbers(), (r as i64 + 1, r as i64 + 1));
        }
        assert_eq!(RootSystem::build(G, 2).unwrap().coxeter_numbers(), (6, 4));
        assert_eq!(RootSystem::build(E, 6).unwrap().coxeter_numbers(), (12, 12));
        assert_eq!(RootSystem::build(E, 7).unwrap().coxeter_numbers(), (18, 18));
        assert_eq!(RootSystem::build(E, 8).unwrap().coxeter_numbers(), (30, 30));
        assert_eq!(RootSystem::build(F, 4).unwrap().coxeter_numbers(), (12, 9));
        assert_eq!(RootSystem::build(B, 5).unwrap().coxeter_numbers(), (10, 9));
        assert_eq!(RootSystem::build(C, 5).unwrap().coxeter_numbers(), (10, 6));
        assert_eq!(RootSystem::build(D, 5).unwrap().coxeter_numbers(), (8, 8));
    }

    #[test]
    fn nonorthogonal_examples() {
        let a2 = RootSystem::build(A, 2).unwrap();
        assert_eq!(a2.count_nonorthogonal(&vec![Rational::zero(); 3]).unwrap(), 0);
        let theta: Vec<Rational> = a2.highest_root().iter().map(|&x| Rational::from(x)).collect();
        assert_eq!(a2.count_nonorthogonal(&theta).unwrap(), 6);
        let b2 = RootSystem::build(B, 2).unwrap();
        assert_eq!(b2.count_nonorthogonal_int(&[3, 1]), 8);
        assert!(b2.count_nonorthogonal(&[Rational::one()]).is_err());
    }
}
