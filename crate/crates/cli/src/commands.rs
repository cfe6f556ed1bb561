use std::path::Path;

use folia::exact::QMatrix;
use folia::forms::{
    counterexample, exterior_derivative, first_plucker_violation, is_involutive, kernel_module, module_fields,
    nonkupka_ideal, singular_ideal, ExteriorForm,
};
use folia::liealg::{cocycle_dims, invariant_subspace_dim, orbit_of_subalgebra, LieAlgebra, Orbit, Sl2Triple, Subspace};
use folia::partitions::{hardy_ramanujan_check, Partition};
use folia::poly::Ideal;
use folia::projgeo::{pencil_family_certificate, random_pencil_samples};
use folia::rootsys::eligibility_report;
use serde::Deserialize;
use serde_json::json;

use crate::report::{Report, Status, Table};

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Usage(String),
    /// The computation itself broke: exit code 1.
    Internal(String),
}

impl From<folia::Error> for CliError {
    fn from(e: folia::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

type CmdResult = Result<Report, CliError>;

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn ideal_list(gens: &[String]) -> String {
    if gens.is_empty() {
        "(0)".into()
    } else {
        format!("({})", gens.join(", "))
    }
}

fn index(i: Option<usize>) -> String {
    i.map_or_else(|| "none".into(), |k| k.to_string())
}

fn gb(i: &Ideal) -> Vec<String> {
    i.groebner_basis().iter().map(ToString::to_string).collect()
}

pub fn parse_partition(s: &str) -> Result<Partition, CliError> {
    s.parse().map_err(|e: folia::Error| usage(format!("partition {s:?}: {e}")))
}

pub fn components_lb(n: i64, to: Option<i64>) -> CmdResult {
    let last = to.unwrap_or(n);
    if n < 4 {
        return Err(usage(format!("n must be at least 4, got {n}")));
    }
    if last < n {
        return Err(usage(format!("--to {last} is below n = {n}")));
    }
    let mut report = Report::new(
        "components-lb",
        "partitions of n-4 index distinct components, so their number is at least p(n-4), and p(n-4) > e^(2*sqrt(n-4))/14",
        json!({"n": n, "to": last}),
    );
    let mut table = Table::new(&["n", "m", "p(m)", "lower", "upper", "upper_approx", "holds"]);
    let mut results = Vec::new();
    for k in n..=last {
        let hr = hardy_ramanujan_check(k - 4)?;
        table.push(vec![
            k.to_string(),
            hr.n.to_string(),
            hr.partitions.to_string(),
            hr.lower.to_string(),
            hr.upper.to_string(),
            format!("{:.6}", hr.upper.to_f64()),
            hr.holds.to_string(),
        ]);
        report.verdict(
            format!("n={k}"),
            Status::of(hr.holds),
            format!("p({}) = {} vs e^(2*sqrt({}))/14 <= {:.6}", hr.n, hr.partitions, hr.n, hr.upper.to_f64()),
        );
        results.push(json!({"n": k, "bound": hr}));
    }
    report.results = json!({ "rows": results });
    report.table = Some(table);
    Ok(report)
}

pub fn pencil_check(lambda: &str, samples: usize, seed: u64) -> CmdResult {
    let lam = parse_partition(lambda)?;
    if !lam.contains_part(5) {
        return Err(usage(format!("partition {lam} has no part equal to 5")));
    }
    let pairs = random_pencil_samples(samples, seed);
    let cert = pencil_family_certificate(&lam, &pairs)?;
    let mut report = Report::new(
        "pencil-check",
        "every member alpha*J + beta*H of the pencil of a partition with a part 5 has a singular locus of dimension at most |lambda| - 5",
        json!({"partition": lam.to_string(), "samples": samples, "seed": seed}),
    );
    let mut table = Table::new(&["alpha", "beta", "dim", "delta", "pass"]);
    for m in &cert.members {
        table.push(vec![m.alpha.to_string(), m.beta.to_string(), m.dim.to_string(), cert.delta.to_string(), m.pass.to_string()]);
        report.verdict(
            format!("member ({}, {})", m.alpha, m.beta),
            Status::of(m.pass),
            format!("dim Sing = {} <= {}", m.dim, cert.delta),
        );
    }
    let fibres: Vec<String> = cert.fibre_dims.iter().map(|f| format!("t={}: {}", f.t, f.dim)).collect();
    report.verdict(
        "family t-regular",
        if cert.family_flat { Status::Pass } else { Status::Warn },
        format!("(I:t) = I is {}; fibre dims {}", cert.family_flat, fibres.join(", ")),
    );
    report.results = serde_json::to_value(&cert).expect("certificate serializes");
    report.table = Some(table);
    Ok(report)
}

pub fn root_bounds(rank_cap: usize) -> CmdResult {
    if !(1..=8).contains(&rank_cap) {
        return Err(usage(format!("--rank-cap must be between 1 and 8, got {rank_cap}")));
    }
    let er = eligibility_report(rank_cap)?;
    let mut report = Report::new(
        "root-bounds",
        "Springer-fibre codimension bounds are at least 3 for every irreducible type outside A1, A2, A3, B2, C3, G2",
        json!({"rank_cap": rank_cap}),
    );
    let mut table =
        Table::new(&["type", "rank", "roots", "h", "h_dual", "ss_bound", "nilp_bound", "pencil_bound", "eligible"]);
    for r in &er.rows {
        table.push(vec![
            r.ty.to_string(),
            r.rank.to_string(),
            r.roots.to_string(),
            r.h.to_string(),
            r.h_dual.to_string(),
            r.ss_bound.to_string(),
            r.nilp_bound.to_string(),
            r.pencil_bound.to_string(),
            r.eligible.to_string(),
        ]);
        report.verdict(
            format!("{} highest-root count", r.label()),
            Status::of(r.suter_wang_equal),
            format!("#(Phi minus the hyperplane of the highest root) = 4h_dual - 6 is {}", r.suter_wang_equal),
        );
    }
    report.verdict(
        "exclusion list",
        Status::of(er.matches_exclusion_list),
        format!("ineligible {:?}, expected {:?}", er.computed_ineligible, er.expected_ineligible),
    );
    for w in &er.warnings {
        report.verdict(
            format!("{} {}", w.label, w.quantity),
            Status::Warn,
            format!("tabulated {}, computed {}", w.tabulated, w.computed),
        );
    }
    report.results = serde_json::to_value(&er).expect("eligibility serializes");
    report.table = Some(table);
    Ok(report)
}

pub fn counterexample_cmd() -> CmdResult {
    let r = counterexample()?;
    let mut report = Report::new(
        "counterexample",
        "the kernel of x dy + y dx + t dz over Q[t] is saturated, yet its Fitting chain on the fibre t = 0 jumps relative to the restricted chain",
        json!({}),
    );
    let mut table = Table::new(&["module", "index", "expected", "computed", "equal"]);
    for f in &r.fitting {
        let expected = ideal_list(&f.expected);
        let computed = ideal_list(&f.computed);
        table.push(vec![f.module.clone(), f.index.to_string(), expected.clone(), computed.clone(), f.equal.to_string()]);
        report.verdict(format!("Fitt_{}({})", f.index, f.module), Status::of(f.equal), computed);
    }
    let checks = [
        ("closed", r.closed, r.form.clone()),
        ("kernel generators", r.kernel_matches, r.kernel_generators.join(", ")),
        ("kernel contracts to zero", r.kernel_contracts_to_zero, format!("i_v({}) = 0 for each generator v", r.form)),
        ("kernel strongly saturated", r.kernel_strongly_saturated, "Ker = Ker^perp^perp".into()),
        ("syzygy of Q_V", r.syzygy_matches, "(t, -x, y)".into()),
        ("Fitting chains increase", r.fitting_chains_increase, "Fitt_i contained in Fitt_(i+1) for all four modules".into()),
        ("Sing ideal", r.singular_matches, ideal_list(&r.singular_ideal)),
        ("TSing in NKup", r.tangent_singular_in_nonkupka, format!("NKup = {}", ideal_list(&r.nonkupka_ideal))),
        ("fibre module", r.fibre_matches && r.fibre_saturation_matches, r.fibre_generators.join(", ")),
        ("fibre module free", r.fibre_free_rank == Some(2), format!("rank {}", index(r.fibre_free_rank))),
        (
            "Fitting index jump",
            r.fitting_indices.jumps(),
            format!(
                "(x, y) at index {} restricted vs {} on the fibre; (1) at {} vs {}",
                index(r.fitting_indices.restricted_xy),
                index(r.fitting_indices.fibre_xy),
                index(r.fitting_indices.restricted_unit),
                index(r.fitting_indices.fibre_unit)
            ),
        ),
    ];
    for (name, ok, detail) in checks {
        report.verdict(name, Status::of(ok), detail);
    }
    report.results = serde_json::to_value(&r).expect("report serializes");
    report.table = Some(table);
    Ok(report)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Wrapped { matrices: Vec<QMatrix> },
    Bare(Vec<QMatrix>),
}

pub fn read_matrices(path: &Path) -> Result<Vec<QMatrix>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let parsed: MatrixFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: expected a list of matrices: {e}", path.display())))?;
    let mats = match parsed {
        MatrixFile::Wrapped { matrices } | MatrixFile::Bare(matrices) => matrices,
    };
    if mats.is_empty() {
        return Err(usage("no matrices given"));
    }
    let n = mats[0].rows();
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(usage("matrices must be square and of equal size"));
    }
    if let Some(m) = mats.iter().find(|m| !m.trace().is_zero()) {
        return Err(usage(format!("matrix has trace {}, expected 0", m.trace())));
    }
    Ok(mats)
}

fn plane<'a>(g: &'a LieAlgebra, mats: &[QMatrix]) -> Result<Subspace<'a>, CliError> {
    let h = g.subspace_of_matrices(mats).map_err(usage)?;
    if !h.is_subalgebra() {
        return Err(usage("the matrices do not span a subalgebra: a bracket leaves their span"));
    }
    Ok(h)
}

pub fn orbit(path: &Path) -> CmdResult {
    let mats = read_matrices(path)?;
    if mats.len() != 2 {
        return Err(usage(format!("expected two matrices, got {}", mats.len())));
    }
    let n = mats[0].rows();
    let g = LieAlgebra::sl(n);
    let h = plane(&g, &mats)?;
    if h.dim() != 2 {
        return Err(usage(format!("the matrices span a space of dimension {}, not a plane", h.dim())));
    }
    let abelian = h.is_abelian()?;
    let orbit = orbit_of_subalgebra(&h).map_err(usage)?;
    let mut report = Report::new(
        "orbit",
        "a 2-dimensional subalgebra of sl_n determines a nilpotent orbit: zero when abelian, otherwise the Jordan type of its derived line",
        json!({"file": path.display().to_string(), "n": n}),
    );
    report.verdict("subalgebra", Status::Pass, format!("span of 2 matrices in sl_{n} is closed under bracket"));
    report.verdict("abelian", Status::Pass, abelian.to_string());
    let label = match &orbit {
        Orbit::Zero => "zero".to_string(),
        Orbit::Nilpotent(p) => p.to_string(),
    };
    report.verdict("orbit", Status::Pass, label.clone());
    report.results = json!({"subalgebra": true, "abelian": abelian, "derived_dim": h.derived().dim(), "orbit": orbit});
    Ok(report)
}

pub fn cohomology(partition: Option<&str>, file: Option<&Path>) -> CmdResult {
    let (g, mats, inputs, triple_plane) = match (partition, file) {
        (Some(p), None) => {
            let lam = parse_partition(p)?;
            if lam.parts()[0] < 2 {
                return Err(usage(format!("partition {lam} gives the zero nilpotent")));
            }
            let g = LieAlgebra::sl(lam.size());
            let t = Sl2Triple::from_partition(&g, &lam)?;
            let mats = vec![g.to_matrix(&t.e)?, g.to_matrix(&t.h)?];
            (g, mats, json!({"partition": lam.to_string()}), true)
        }
        (None, Some(path)) => {
            let mats = read_matrices(path)?;
            (LieAlgebra::sl(mats[0].rows()), mats, json!({"file": path.display().to_string()}), false)
        }
        _ => return Err(usage("give exactly one of --partition or --matrices")),
    };
    let h = plane(&g, &mats)?;
    let dims = cocycle_dims(&h)?;
    let inv = invariant_subspace_dim(&h)?;
    let mut report = Report::new(
        "cohomology",
        "for the plane span(e, h) of an sl2-triple, H^1(h, g/h) is isomorphic to the invariants it computes, so the dimensions agree",
        inputs,
    );
    let equal = dims.h1 == inv;
    let status = match (equal, triple_plane) {
        (true, _) => Status::Pass,
        (false, true) => Status::Fail,
        (false, false) => Status::Warn,
    };
    report.verdict("dim H1 = invariants", status, format!("Z1 = {}, B1 = {}, H1 = {}, invariants = {inv}", dims.z1, dims.b1, dims.h1));
    report.results = json!({"n": mats[0].rows(), "dim_h": h.dim(), "z1": dims.z1, "b1": dims.b1, "h1": dims.h1, "invariants": inv});
    Ok(report)
}

pub fn forms_check(path: &Path) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let omega = ExteriorForm::from_json(&text).map_err(usage)?;
    if omega.degree() == 0 {
        return Err(usage("forms-check needs a form of degree at least 1"));
    }
    let chart = omega.chart().clone();
    let d_omega = exterior_derivative(&omega);
    let violation = first_plucker_violation(&omega)?;
    let kernel = kernel_module(&omega)?;
    let fields = module_fields(&chart, &kernel)?;
    let involutive = is_involutive(&fields, &kernel)?;
    let sing = singular_ideal(&omega);
    let nkup = nonkupka_ideal(&omega);

    let mut report = Report::new(
        "forms-check",
        "a form is locally decomposable when the Grassmann-Plucker relations hold, and its kernel then defines a foliation when closed under bracket",
        json!({"file": path.display().to_string(), "degree": omega.degree()}),
    );
    let lds_detail = match &violation {
        None => "all Grassmann-Plucker relations vanish".to_string(),
        Some((a, b, v)) => format!("relation for {a:?}, {b:?} is {v}"),
    };
    report.verdict("locally decomposable", Status::of(violation.is_none()), lds_detail);
    let gens: Vec<String> = fields.iter().map(ToString::to_string).collect();
    report.verdict("kernel involutive", Status::of(involutive), format!("Ker = <{}>", gens.join(", ")));
    report.results = json!({
        "form": omega.to_string(),
        "d_form": d_omega.to_string(),
        "closed": d_omega.is_zero(),
        "kernel_generators": gens,
        "singular_ideal": gb(&sing),
        "nonkupka_ideal": gb(&nkup),
        "kupka_everywhere_on_singular_set": nkup.is_unit() && !sing.is_unit(),
    });
    Ok(report)
}
