//! Codimension bounds from root counts: Levi minima, the highest-root count
//! and the halved bounds for elements and pencils.

use rayon::prelude::*;
use serde::Serialize;

use super::{dot, RootSystem, RootType};
use crate::error::{Error, Result};

/// Types whose pencil bound is expected to fall below 3.
pub const EXCLUDED_TYPES: [(RootType, usize); 6] =
    [(RootType::A, 1), (RootType::A, 2), (RootType::A, 3), (RootType::B, 2), (RootType::C, 3), (RootType::G, 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuterWang {
    /// `#(Φ ∖ α̃⊥)` by direct count.
    pub computed: usize,
    /// `4h∨ − 6`.
    pub formula: i64,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviMinimum {
    /// `|Φ| − max #(Φ ∩ span S)` over proper subsets `S` of the base.
    pub minimum: usize,
    /// Indices into [`RootSystem::simple_roots`] of a maximizing `S`.
    pub witness: Vec<usize>,
    /// `#(Φ ∩ span S)` for the witness.
    pub levi_roots: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpringerBounds {
    pub ss_bound: i64,
    pub nilp_bound: i64,
    pub element_bound: i64,
    pub pencil_bound: i64,
}

fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

impl RootSystem {
    /// `#(Φ⁺ ∖ α̃⊥)`.
    pub fn positive_nonorthogonal_to_highest(&self) -> usize {
        let theta = self.highest_root();
        self.positive_roots().iter().filter(|r| dot(r, theta) != 0).count()
    }

    pub fn suter_wang_check(&self) -> SuterWang {
        let computed = self.count_nonorthogonal_int(self.highest_root());
        let formula = 4 * self.coxeter_numbers().1 - 6;
        SuterWang { computed, formula, equal: computed as i64 == formula }
    }

    /// Exhaustive search over the proper subsets of the base.
    pub fn min_semisimple_complement(&self) -> LeviMinimum {
        let full = (1u32 << self.rank()) - 1;
        let supports: Vec<u32> = (0..self.positive_roots().len()).map(|i| self.coeff_support(i)).collect();
        let (best_mask, best) = (0..full)
            .map(|s| (s, supports.iter().filter(|&&m| m & !s == 0).count()))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        LeviMinimum {
            minimum: self.num_roots() - 2 * best,
            witness: (0..self.rank()).filter(|i| best_mask & (1 << i) != 0).collect(),
            levi_roots: 2 * best,
        }
    }

    /// `#(Φ⁺ ∖ α̃⊥) + 1`.
    pub fn nilpotent_centralizer_lb(&self) -> usize {
        self.positive_nonorthogonal_to_highest() + 1
    }

    pub fn springer_bounds(&self) -> SpringerBounds {
        let ss = ceil_half(self.min_semisimple_complement().minimum as i64);
        let nilp = ceil_half(self.nilpotent_centralizer_lb() as i64);
        let element = ss.min(nilp);
        SpringerBounds { ss_bound: ss, nilp_bound: nilp, element_bound: element, pencil_bound: element - 1 }
    }
}

/// Tabulated lower bounds for `#(Φ ∖ s⊥)`.
pub(crate) fn tabulated_min_complement(ty: RootType, r: i64) -> i64 {
    match ty {
        RootType::A => 2 * r,
        RootType::B | RootType::C => 4 * r - 2,
        RootType::D => 4 * r - 4,
        RootType::E => [36, 54, 114][(r - 6) as usize],
        RootType::F => 30,
        RootType::G => 16,
    }
}

/// Tabulated lower bounds for `½ codim Z(n)`, `n` nilpotent.
pub(crate) fn tabulated_nilpotent_bound(ty: RootType, r: i64) -> i64 {
    match ty {
        RootType::A => r,
        RootType::B => 2 * r - 2,
        RootType::C => r,
        RootType::D => 2 * r - 3,
        RootType::E => [11, 17, 27][(r - 6) as usize],
        RootType::F => 8,
        RootType::G => 3,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EligibilityRow {
    #[serde(rename = "type")]
    pub ty: RootType,
    pub rank: usize,
    pub roots: usize,
    pub h: i64,
    pub h_dual: i64,
    pub min_complement: usize,
    pub ss_bound: i64,
    pub nilp_bound: i64,
    pub element_bound: i64,
    pub pencil_bound: i64,
    pub eligible: bool,
    pub suter_wang_equal: bool,
}

impl EligibilityRow {
    pub fn label(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }
}

/// A computed value disagreeing with its tabulated counterpart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableWarning {
    pub label: String,
    pub quantity: String,
    pub tabulated: i64,
    pub computed: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EligibilityReport {
    pub rank_cap: usize,
    pub rows: Vec<EligibilityRow>,
    pub warnings: Vec<TableWarning>,
    pub expected_ineligible: Vec<String>,
    pub computed_ineligible: Vec<String>,
    pub matches_exclusion_list: bool,
}

/// Bounds for every irreducible type of rank `≤ rank_cap` (at most 8), with
/// table mismatches collected as warnings.
pub fn eligibility_report(rank_cap: usize) -> Result<EligibilityReport> {
    if !(1..=8).contains(&rank_cap) {
        return Err(Error::Invalid(format!("rank cap must lie in 1..=8, got {rank_cap}")));
    }
    let types = RootType::all_up_to(rank_cap);
    let built: Vec<(EligibilityRow, Vec<TableWarning>)> = types
        .par_iter()
        .map(|&(ty, rank)| {
            let rs = RootSystem::build(ty, rank)?;
            let (h, h_dual) = rs.coxeter_numbers();
            let levi = rs.min_semisimple_complement();
            let b = rs.springer_bounds();
            let row = EligibilityRow {
                ty,
                rank,
                roots: rs.num_roots(),
                h,
                h_dual,
                min_complement: levi.minimum,
                ss_bound: b.ss_bound,
                nilp_bound: b.nilp_bound,
                element_bound: b.element_bound,
                pencil_bound: b.pencil_bound,
                eligible: b.pencil_bound >= 3,
                suter_wang_equal: rs.suter_wang_check().equal,
            };
            let mut warns = Vec::new();
            let r = rank as i64;
            let tab_min = tabulated_min_complement(ty, r);
            if tab_min != levi.minimum as i64 {
                warns.push(TableWarning {
                    label: rs.label(),
                    quantity: "min_semisimple_complement".into(),
                    tabulated: tab_min,
                    computed: levi.minimum as i64,
                });
            }
            let tab_nilp = tabulated_nilpotent_bound(ty, r);
            if tab_nilp != b.nilp_bound {
                warns.push(TableWarning {
                    label: rs.label(),
                    quantity: "nilp_bound".into(),
                    tabulated: tab_nilp,
                    computed: b.nilp_bound,
                });
            }
            Ok((row, warns))
        })
        .collect::<Result<_>>()?;
    let (rows, warnings): (Vec<_>, Vec<Vec<_>>) = built.into_iter().unzip();
    let expected_ineligible: Vec<String> =
        EXCLUDED_TYPES.iter().filter(|(_, r)| *r <= rank_cap).map(|(t, r)| format!("{t}{r}")).collect();
    let computed_ineligible: Vec<String> = rows.iter().filter(|r| !r.eligible).map(EligibilityRow::label).collect();
    Ok(EligibilityReport {
        rank_cap,
        matches_exclusion_list: expected_ineligible == computed_ineligible,
        rows,
        warnings: warnings.into_iter().flatten().collect(),
        expected_ineligible,
        computed_ineligible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{QMatrix, Rational};
    use RootType::*;

    #[test]
    fn suter_wang_everywhere() {
        for (t, r) in RootType::all_up_to(8) {
            let rs = RootSystem::build(t, r).unwrap();
            let sw = rs.suter_wang_check();
            assert!(sw.equal, "{t}{r}: {sw:?}");
            assert_eq!(sw.computed, 2 * rs.positive_nonorthogonal_to_highest());
        }
        let a2 = RootSystem::build(A, 2).unwrap().suter_wang_check();
        assert_eq!((a2.computed, a2.formula), (6, 6));
        let d4 = RootSystem::build(D, 4).unwrap().suter_wang_check();
        assert_eq!((d4.computed, d4.formula), (18, 18));
        let e8 = RootSystem::build(E, 8).unwrap().suter_wang_check();
        assert_eq!((e8.computed, e8.formula), (114, 114));
    }

    #[test]
    fn levi_minima_classical() {
        for r in 1..=8usize {
            let m = |t| RootSystem::build(t, r).unwrap().min_semisimple_complement().minimum;
            assert_eq!(m(A), 2 * r);
            if r >= 2 {
                assert_eq!(m(B), 4 * r - 2);
            }
            if r >= 3 {
                assert_eq!(m(C), 4 * r - 2);
            }
            if r >= 4 {
                assert_eq!(m(D), 4 * r - 4);
            }
        }
    }

    #[test]
    fn levi_minima_exceptional() {
        let m = |t, r| RootSystem::build(t, r).unwrap().min_semisimple_complement().minimum;
        // The largest Levi subsystem of E₆ is D₅ with 40 roots.
        assert_eq!(m(E, 6), 32);
        assert_eq!(m(E, 7), 54);
        assert_eq!(m(E, 8), 114);
        assert_eq!(m(F, 4), 30);
        assert_eq!(m(G, 2), 10);
    }

    #[test]
    fn witness_reexpands() {
        // Count roots in the rational span of the witness by a rank test.
        for (t, r) in RootType::all_up_to(8) {
            let rs = RootSystem::build(t, r).unwrap();
            let lm = rs.min_semisimple_complement();
            let span: Vec<Vec<Rational>> = lm
                .witness
                .iter()
                .map(|&i| rs.simple_roots()[i].iter().map(|&x| Rational::from(x)).collect())
                .collect();
            let base_rank = lm.witness.len();
            let inside = rs
                .roots()
                .iter()
                .filter(|root| {
                    let mut rows = span.clone();
                    rows.push(root.iter().map(|&x| Rational::from(x)).collect());
                    QMatrix::from_rows(rows).unwrap().rank() == base_rank
                })
                .count();
            assert_eq!(inside, lm.levi_roots, "{t}{r}");
        }
    }

    #[test]
    fn nilpotent_examples() {
        assert_eq!(RootSystem::build(A, 1).unwrap().nilpotent_centralizer_lb(), 2);
        let g2 = RootSystem::build(G, 2).unwrap();
        assert_eq!(g2.nilpotent_centralizer_lb(), 6);
        assert_eq!(g2.springer_bounds().nilp_bound, 3);
        let e8 = RootSystem::build(E, 8).unwrap();
        assert_eq!(e8.nilpotent_centralizer_lb(), 58);
        assert_eq!(e8.springer_bounds().nilp_bound, 29);
    }

    #[test]
    fn springer_examples() {
        let b = |t, r| RootSystem::build(t, r).unwrap().springer_bounds();
        assert_eq!(b(D, 5), SpringerBounds { ss_bound: 8, nilp_bound: 7, element_bound: 7, pencil_bound: 6 });
        assert!(b(B, 2).element_bound <= 3);
        assert_eq!(b(A, 5), SpringerBounds { ss_bound: 5, nilp_bound: 5, element_bound: 5, pencil_bound: 4 });
        assert_eq!(b(F, 4), SpringerBounds { ss_bound: 15, nilp_bound: 8, element_bound: 8, pencil_bound: 7 });
    }

    #[test]
    fn report_marks_exclusions() {
        let rep = eligibility_report(8).unwrap();
        assert!(rep.matches_exclusion_list, "{:?}", rep.computed_ineligible);
        assert!(rep.rows.iter().all(|r| r.suter_wang_equal));
        let small = eligibility_report(2).unwrap();
        assert_eq!(small.computed_ineligible, ["A1", "A2", "B2", "G2"]);
        let three = eligibility_report(3).unwrap();
        assert!(three.computed_ineligible.contains(&"C3".to_string()));
        assert!(eligibility_report(9).is_err());
    }

    #[test]
    fn table_warnings() {
        let rep = eligibility_report(8).unwrap();
        let mut w: Vec<(String, String, i64, i64)> =
            rep.warnings.iter().map(|w| (w.label.clone(), w.quantity.clone(), w.tabulated, w.computed)).collect();
        w.sort();
        assert_eq!(
            w,
            vec![
                ("E6".into(), "min_semisimple_complement".into(), 36, 32),
                ("E8".into(), "nilp_bound".into(), 27, 29),
                ("G2".into(), "min_semisimple_complement".into(), 16, 10),
            ]
        );
    }
}
