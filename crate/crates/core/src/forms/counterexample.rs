//! The closed relative 1-form `x dy + y dx + t dz` over `ℚ[t]`, whose
//! kernel distribution is saturated but not flat, and whose restriction to
//! `t = 0` differs from the distribution pulled back to the fibre.

use serde::Serialize;

use super::{
    contract, exterior_derivative, kernel_module, module_fields, nonkupka_ideal, singular_ideal, span_fields, Chart,
    ExteriorForm, PolyVectorField,
};
use crate::error::Result;
use crate::exact::Rational;
use crate::poly::{module_kernel, module_saturate, Ideal, PolyMatrix, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FittingCheck {
    pub module: String,
    pub index: usize,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
    pub equal: bool,
}

/// Where `(x, y)` and `(1)` first appear in the two chains on the fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FittingIndices {
    pub restricted_xy: Option<usize>,
    pub fibre_xy: Option<usize>,
    pub restricted_unit: Option<usize>,
    pub fibre_unit: Option<usize>,
}

impl FittingIndices {
    pub fn jumps(&self) -> bool {
        self.restricted_xy.is_some() && self.fibre_xy.is_some() && self.restricted_xy != self.fibre_xy
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub form: String,
    pub closed: bool,
    pub kernel_generators: Vec<String>,
    pub kernel_matches: bool,
    pub kernel_contracts_to_zero: bool,
    pub kernel_strongly_saturated: bool,
    pub syzygy_matches: bool,
    pub fitting: Vec<FittingCheck>,
    pub fitting_chains_increase: bool,
    pub singular_ideal: Vec<String>,
    pub singular_matches: bool,
    pub nonkupka_ideal: Vec<String>,
    pub tangent_singular_in_nonkupka: bool,
    pub fibre_generators: Vec<String>,
    pub fibre_matches: bool,
    pub fibre_saturation_matches: bool,
    pub fibre_free_rank: Option<usize>,
    pub fitting_indices: FittingIndices,
    pub pass: bool,
}

fn gb_strings(i: &Ideal) -> Vec<String> {
    i.groebner_basis().iter().map(ToString::to_string).collect()
}

fn index_of(chain: &[Ideal], target: &Ideal) -> Option<usize> {
    chain.iter().position(|i| i.equals(target))
}

/// Rank of the free module on `gens` when they are independent, else `None`.
fn free_rank(m: &crate::poly::SubmoduleBasis) -> Result<Option<usize>> {
    let gens = m.generators();
    if gens.is_empty() {
        return Ok(Some(0));
    }
    let syz = module_kernel(&m.generator_matrix())?;
    Ok(if syz.is_zero() { Some(gens.len()) } else { None })
}

pub fn counterexample() -> Result<CounterexampleReport> {
    let chart = Chart::with_parameters(&["t"], &["x", "y", "z"])?;
    let ring = chart.ring().clone();
    let omega = ExteriorForm::parse(&chart, 1, &[(&[1], "x"), (&[0], "y"), (&[2], "t")])?;
    let closed = exterior_derivative(&omega).is_zero();

    let kernel = kernel_module(&omega)?;
    let expected_fields = [
        PolyVectorField::parse(&chart, &["x", "-y", "0"])?,
        PolyVectorField::parse(&chart, &["t", "0", "-y"])?,
        PolyVectorField::parse(&chart, &["0", "t", "-x"])?,
    ];
    let expected_kernel = span_fields(&chart, &expected_fields)?;
    let kernel_matches = kernel.equals(&expected_kernel);
    let kernel_contracts_to_zero = module_fields(&chart, &kernel)?
        .iter()
        .map(|v| contract(v, &omega).map(|f| f.is_zero()))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let kernel_strongly_saturated = kernel.double_orthogonal()?.equals(&kernel);

    let q_v = PolyMatrix::parse(&ring, &[&["x", "t", "0"], &["-y", "0", "t"], &["0", "-y", "-x"]])?;
    let t_v = PolyMatrix::parse(&ring, &[&["t"], &["-x"], &["y"]])?;
    let syzygy_matches = q_v.kernel()?.equals(&crate::poly::SubmoduleBasis::parse(&ring, 3, &[&["t", "-x", "y"]])?);
    let q_v0 = PolyMatrix::parse(&ring, &[&["x", "0", "0"], &["-y", "0", "0"], &["0", "1", "1"]])?;
    let zero = Rational::zero();
    let q_v_restricted = q_v.specialize(0, &zero);

    let chains: [(&str, &PolyMatrix, Vec<Vec<&str>>); 4] = [
        ("T_V", &t_v, vec![vec![], vec![], vec!["x", "y", "t"], vec!["1"]]),
        ("Q_V", &q_v, vec![vec![], vec!["y^2", "x*y", "t*y", "x^2", "t*x", "t^2"], vec!["x", "y", "t"], vec!["1"]]),
        ("Q_V0", &q_v0, vec![vec![], vec!["x", "y"], vec!["1"]]),
        ("Q_V|t=0", &q_v_restricted, vec![vec![], vec!["x^2", "x*y", "y^2"], vec!["x", "y"], vec!["1"]]),
    ];
    let mut fitting = Vec::new();
    let mut fitting_chains_increase = true;
    let mut computed_chains = Vec::new();
    for (name, m, expected) in chains {
        let chain = m.fitting_chain();
        fitting_chains_increase &= chain.windows(2).all(|w| w[1].contains_ideal(&w[0]));
        for (i, gens) in expected.iter().enumerate() {
            let want = Ideal::parse(&ring, gens)?;
            fitting.push(FittingCheck {
                module: name.to_string(),
                index: i,
                expected: gens.iter().map(|s| s.to_string()).collect(),
                computed: gb_strings(&chain[i]),
                equal: chain[i].equals(&want),
            });
        }
        computed_chains.push(chain);
    }

    let sing = singular_ideal(&omega);
    let singular_matches = sing.equals(&Ideal::parse(&ring, &["x", "y", "t"])?);
    let nonkupka = nonkupka_ideal(&omega);
    // The tangent module is not free exactly where Fitt₂(T_V) is proper.
    let tangent_singular = &computed_chains[0][2];
    let tangent_singular_in_nonkupka = nonkupka.generators().iter().all(|g| tangent_singular.radical_contains(g));

    // Pull the kernel back to t = 0 and saturate in the tangent module.
    let restricted = kernel.specialize(0, &zero);
    let fibre = restricted.double_orthogonal()?;
    let expected_fibre = span_fields(
        &chart,
        &[PolyVectorField::parse(&chart, &["x", "-y", "0"])?, PolyVectorField::coordinate(&chart, 2)],
    )?;
    let fibre_matches = fibre.equals(&expected_fibre);
    let y = Polynomial::var(&ring, 2);
    let fibre_saturation_matches = module_saturate(&restricted, &y)?.equals(&expected_fibre);
    let fibre_free_rank = free_rank(&expected_fibre)?;

    let xy = Ideal::parse(&ring, &["x", "y"])?;
    let unit = Ideal::unit(&ring);
    let fitting_indices = FittingIndices {
        restricted_xy: index_of(&computed_chains[3], &xy),
        fibre_xy: index_of(&computed_chains[2], &xy),
        restricted_unit: index_of(&computed_chains[3], &unit),
        fibre_unit: index_of(&computed_chains[2], &unit),
    };

    let pass = closed
        && kernel_matches
        && kernel_contracts_to_zero
        && kernel_strongly_saturated
        && syzygy_matches
        && fitting.iter().all(|f| f.equal)
        && fitting_chains_increase
        && singular_matches
        && tangent_singular_in_nonkupka
        && fibre_matches
        && fibre_saturation_matches
        && fibre_free_rank == Some(2)
        && fitting_indices.jumps();

    Ok(CounterexampleReport {
        form: omega.to_string(),
        closed,
        kernel_generators: module_fields(&chart, &kernel)?.iter().map(ToString::to_string).collect(),
        kernel_matches,
        kernel_contracts_to_zero,
        kernel_strongly_saturated,
        syzygy_matches,
        fitting,
        fitting_chains_increase,
        singular_ideal: gb_strings(&sing),
        singular_matches,
        nonkupka_ideal: gb_strings(&nonkupka),
        tangent_singular_in_nonkupka,
        fibre_generators: module_fields(&chart, &fibre)?.iter().map(ToString::to_string).collect(),
        fibre_matches,
        fibre_saturation_matches,
        fibre_free_rank,
        fitting_indices,
        pass,
    })
}
