//! Differential forms and vector fields with polynomial coefficients on an
//! affine chart, possibly relative to parameters that carry no
//! differential.

mod counterexample;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::{module_kernel, same_ring, Ideal, MonomialOrder, PolyMatrix, Polynomial, Ring, SubmoduleBasis};

pub use crate::poly::{double_orthogonal, module_saturate};
pub use counterexample::{counterexample, CounterexampleReport, FittingCheck, FittingIndices};

/// A polynomial ring together with the variables that carry differentials.
///
/// Variables outside `coords` are parameters: `d` and brackets treat them
/// as constants.
#[derive(Debug, PartialEq, Eq)]
pub struct Chart {
    ring: Arc<Ring>,
    coords: Vec<usize>,
}

impl Chart {
    pub fn new(ring: &Arc<Ring>, coords: Vec<usize>) -> Result<Arc<Chart>> {
        let n = ring.nvars();
        if coords.iter().any(|&c| c >= n) || coords.iter().duplicates().next().is_some() {
            return Err(Error::Invalid("chart coordinates must be distinct ring variables".into()));
        }
        Ok(Arc::new(Chart { ring: ring.clone(), coords }))
    }

    /// Every variable of `ring` is a coordinate.
    pub fn full(ring: &Arc<Ring>) -> Arc<Chart> {
        Arc::new(Chart { ring: ring.clone(), coords: (0..ring.nvars()).collect() })
    }

    /// Ring `ℚ[params, coords]` with grevlex; the coordinates come last.
    pub fn with_parameters(params: &[&str], coords: &[&str]) -> Result<Arc<Chart>> {
        let names: Vec<&str> = params.iter().chain(coords).copied().collect();
        if names.iter().duplicates().next().is_some() || names.iter().any(|n| !crate::poly::is_identifier(n)) {
            return Err(Error::Parse(format!("bad variable list {names:?}")));
        }
        let ring = Ring::new(names, MonomialOrder::GrevLex);
        Chart::new(&ring, (params.len()..params.len() + coords.len()).collect())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Number of coordinates, the rank of the tangent module.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Ring variable of the `i`-th coordinate.
    pub fn coord_var(&self, i: usize) -> usize {
        self.coords[i]
    }

    pub fn coord_name(&self, i: usize) -> &str {
        self.ring.var_name(self.coords[i])
    }

    pub fn parameters(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|v| !self.coords.contains(v)).collect()
    }

    /// `∂f/∂(coordinate i)`.
    pub fn partial(&self, f: &Polynomial, i: usize) -> Polynomial {
        f.derivative(self.coords[i])
    }
}

fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
    Arc::ptr_eq(a, b) || (same_ring(&a.ring, &b.ring) && a.coords == b.coords)
}

/// Sorts `idx` in place and returns the sign of the permutation, or `None`
/// if an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// A `q`-form `Σ f_I dx_I` over strictly increasing index tuples `I`.
#[derive(Clone, Debug)]
pub struct ExteriorForm {
    chart: Arc<Chart>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

impl PartialEq for ExteriorForm {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.degree == other.degree && self.terms == other.terms
    }
}

impl ExteriorForm {
    /// Index tuples may be unsorted; they are sorted with the matching sign,
    /// and tuples with a repeated index are dropped.
    pub fn new(chart: &Arc<Chart>, degree: usize, terms: Vec<(Vec<usize>, Polynomial)>) -> Result<Self> {
        let mut form = ExteriorForm::zero(chart, degree);
        for (mut idx, f) in terms {
            if idx.len() != degree {
                return Err(Error::Dimension(format!("index tuple {idx:?} in a {degree}-form")));
            }
            if idx.iter().any(|&i| i >= chart.dim()) {
                return Err(Error::Dimension(format!("index tuple {idx:?} outside {} coordinates", chart.dim())));
            }
            if !same_ring(f.ring(), &chart.ring) {
                return Err(Error::RingMismatch);
            }
            if let Some(sign) = sort_with_sign(&mut idx) {
                form.accumulate(idx, if sign < 0 { -f } else { f });
            }
        }
        Ok(form)
    }

    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        ExteriorForm { chart: chart.clone(), degree, terms: BTreeMap::new() }
    }

    /// The 0-form `f`.
    pub fn function(chart: &Arc<Chart>, f: Polynomial) -> Result<Self> {
        ExteriorForm::new(chart, 0, vec![(Vec::new(), f)])
    }

    /// `dx_i`.
    pub fn differential(chart: &Arc<Chart>, i: usize) -> Result<Self> {
        ExteriorForm::new(chart, 1, vec![(vec![i], Polynomial::one(&chart.ring))])
    }

    /// `Σ c_i dx_i`.
    pub fn one_form(chart: &Arc<Chart>, coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.len() != chart.dim() {
            return Err(Error::Dimension(format!("expected {} coefficients", chart.dim())));
        }
        ExteriorForm::new(chart, 1, coeffs.into_iter().enumerate().map(|(i, c)| (vec![i], c)).collect())
    }

    /// Terms given as `(indices, polynomial text)`.
    pub fn parse(chart: &Arc<Chart>, degree: usize, terms: &[(&[usize], &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(idx, text)| Ok((idx.to_vec(), Polynomial::parse(&chart.ring, text)?)))
            .collect::<Result<Vec<_>>>()?;
        ExteriorForm::new(chart, degree, parsed)
    }

    fn accumulate(&mut self, idx: Vec<usize>, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(g) => {
                let sum = &*g + &f;
                if sum.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *g = sum;
                }
            }
            None => {
                self.terms.insert(idx, f);
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.chart.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Nonzero terms in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Polynomial)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficient of `dx_I`, for any ordering of `I`.
    pub fn coeff(&self, idx: &[usize]) -> Polynomial {
        let mut sorted = idx.to_vec();
        match sort_with_sign(&mut sorted) {
            Some(sign) => match self.terms.get(&sorted) {
                Some(f) if sign < 0 => -f,
                Some(f) => f.clone(),
                None => Polynomial::zero(&self.chart.ring),
            },
            None => Polynomial::zero(&self.chart.ring),
        }
    }

    pub fn coefficients(&self) -> Vec<Polynomial> {
        self.terms.values().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        if !same_chart(&self.chart, &other.chart) {
            return Err(Error::RingMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::Dimension(format!("adding a {}-form to a {}-form", self.degree, other.degree)));
        }
        let mut out = self.clone();
        for (idx, f) in &other.terms {
            out.accumulate(idx.clone(), f.clone());
        }
        Ok(out)
    }

    /// `f·ω`.
    pub fn scale(&self, f: &Polynomial) -> ExteriorForm {
        let mut out = ExteriorForm::zero(&self.chart, self.degree);
        for (idx, g) in &self.terms {
            out.accumulate(idx.clone(), g * f);
        }
        out
    }

    /// Sets ring variable `var` to `value` in every coefficient.
    pub fn specialize(&self, var: usize, value: &Rational) -> ExteriorForm {
        let mut out = ExteriorForm::zero(&self.chart, self.degree);
        for (idx, g) in &self.terms {
            out.accumulate(idx.clone(), g.specialize(var, value));
        }
        out
    }

    pub fn to_document(&self) -> FormDocument {
        let params = self.chart.parameters();
        FormDocument {
            parameters: params.iter().map(|&p| self.chart.ring.var_name(p).to_string()).collect(),
            coordinates: (0..self.chart.dim()).map(|i| self.chart.coord_name(i).to_string()).collect(),
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| TermDocument { indices: k.clone(), coeff: v.to_string() }).collect(),
        }
    }

    /// Builds the chart from the document's variable lists.
    pub fn from_document(doc: &FormDocument) -> Result<ExteriorForm> {
        let params: Vec<&str> = doc.parameters.iter().map(String::as_str).collect();
        let coords: Vec<&str> = doc.coordinates.iter().map(String::as_str).collect();
        let chart = Chart::with_parameters(&params, &coords)?;
        let terms: Vec<(&[usize], &str)> = doc.terms.iter().map(|t| (t.indices.as_slice(), t.coeff.as_str())).collect();
        ExteriorForm::parse(&chart, doc.degree, &terms)
    }

    pub fn from_json(text: &str) -> Result<ExteriorForm> {
        let doc: FormDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        ExteriorForm::from_document(&doc)
    }
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let d: Vec<String> = idx.iter().map(|&i| format!("d{}", self.chart.coord_name(i))).collect();
            let d = d.join("^");
            let unit = c.is_constant() && c.lead_coeff().map(|x| x.abs().is_one()).unwrap_or(false);
            let text = match (idx.is_empty(), unit, c.num_terms() > 1) {
                (false, true, _) if c.lead_coeff().is_some_and(|x| x.is_one()) => d,
                (false, true, _) => format!("-{d}"),
                (false, false, true) => format!("({c})*{d}"),
                (false, false, false) => format!("{c}*{d}"),
                (true, _, _) => c.to_string(),
            };
            match (k, text.strip_prefix('-')) {
                (0, _) => f.write_str(&text)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ExteriorForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

/// JSON shape of a form. `parameters` may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDocument {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    pub coordinates: Vec<String>,
    pub degree: usize,
    pub terms: Vec<TermDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub indices: Vec<usize>,
    pub coeff: String,
}

/// `Σ v_i ∂/∂x_i` over the coordinates of a chart.
#[derive(Clone, Debug)]
pub struct PolyVectorField {
    chart: Arc<Chart>,
    components: Vec<Polynomial>,
}

impl PartialEq for PolyVectorField {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.components == other.components
    }
}

impl PolyVectorField {
    pub fn new(chart: &Arc<Chart>, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != chart.dim() {
            return Err(Error::RankMismatch { expected: chart.dim(), found: components.len() });
        }
        if components.iter().any(|c| !same_ring(c.ring(), &chart.ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyVectorField { chart: chart.clone(), components })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        PolyVectorField { chart: chart.clone(), components: vec![Polynomial::zero(&chart.ring); chart.dim()] }
    }

    /// `∂/∂x_i`.
    pub fn coordinate(chart: &Arc<Chart>, i: usize) -> Self {
        let mut v = PolyVectorField::zero(chart);
        v.components[i] = Polynomial::one(&chart.ring);
        v
    }

    pub fn parse(chart: &Arc<Chart>, components: &[&str]) -> Result<Self> {
        let comps = components.iter().map(|c| Polynomial::parse(&chart.ring, c)).collect::<Result<Vec<_>>>()?;
        PolyVectorField::new(chart, comps)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// The derivation `f ↦ Σ v_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.chart.ring);
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &self.chart.partial(f, i));
            }
        }
        out
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        if !same_chart(&self.chart, &other.chart) {
            return Err(Error::RingMismatch);
        }
        let comps = self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect();
        PolyVectorField::new(&self.chart, comps)
    }

    pub fn scale(&self, f: &Polynomial) -> PolyVectorField {
        PolyVectorField { chart: self.chart.clone(), components: self.components.iter().map(|c| c * f).collect() }
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = format!("d/d{}", self.chart.coord_name(i));
            let text = if c.num_terms() > 1 {
                format!("({c})*{d}")
            } else if c.is_unit() && c.lead_coeff().is_some_and(|x| x.is_one()) {
                d
            } else if c.is_unit() && c.lead_coeff().is_some_and(|x| (-x).is_one()) {
                format!("-{d}")
            } else {
                format!("{c}*{d}")
            };
            match (first, text.strip_prefix('-')) {
                (true, _) => f.write_str(&text)?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {text}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn wedge(a: &ExteriorForm, b: &ExteriorForm) -> Result<ExteriorForm> {
    if !same_chart(&a.chart, &b.chart) {
        return Err(Error::RingMismatch);
    }
    let mut out = ExteriorForm::zero(&a.chart, a.degree + b.degree);
    for (i, f) in &a.terms {
        for (j, g) in &b.terms {
            let mut idx: Vec<usize> = i.iter().chain(j).copied().collect();
            if let Some(sign) = sort_with_sign(&mut idx) {
                let p = f * g;
                out.accumulate(idx, if sign < 0 { -p } else { p });
            }
        }
    }
    Ok(out)
}

/// Interior product `ι_v a`.
pub fn contract(v: &PolyVectorField, a: &ExteriorForm) -> Result<ExteriorForm> {
    if !same_chart(&v.chart, &a.chart) {
        return Err(Error::RingMismatch);
    }
    if a.degree == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = ExteriorForm::zero(&a.chart, a.degree - 1);
    for (idx, f) in &a.terms {
        for (pos, &k) in idx.iter().enumerate() {
            let vk = &v.components[k];
            if vk.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != k).collect();
            let p = vk * f;
            out.accumulate(rest, if pos % 2 == 1 { -p } else { p });
        }
    }
    Ok(out)
}

/// `d a`, differentiating only along the chart coordinates.
pub fn exterior_derivative(a: &ExteriorForm) -> ExteriorForm {
    let n = a.chart.dim();
    let mut out = ExteriorForm::zero(&a.chart, a.degree + 1);
    for (idx, f) in &a.terms {
        for i in (0..n).filter(|i| !idx.contains(i)) {
            let df = a.chart.partial(f, i);
            if df.is_zero() {
                continue;
            }
            let before = idx.iter().filter(|&&k| k < i).count();
            let mut new_idx = idx.clone();
            new_idx.insert(before, i);
            out.accumulate(new_idx, if before % 2 == 1 { -df } else { df });
        }
    }
    out
}

/// The `C(n, q−1) × n` matrix of `v ↦ ι_v ω`, rows indexed by increasing
/// `(q−1)`-tuples in lexicographic order.
pub fn contraction_matrix(omega: &ExteriorForm) -> Result<PolyMatrix> {
    if omega.degree == 0 {
        return Err(Error::DegreeZero);
    }
    let n = omega.chart.dim();
    let ring = omega.ring();
    let rows: Vec<Vec<usize>> = (0..n).combinations(omega.degree - 1).collect();
    let mut m = PolyMatrix::zeros(ring, rows.len(), n);
    for k in 0..n {
        let image = contract(&PolyVectorField::coordinate(&omega.chart, k), omega)?;
        for (r, idx) in rows.iter().enumerate() {
            if let Some(f) = image.terms.get(idx) {
                m.set(r, k, f.clone());
            }
        }
    }
    Ok(m)
}

/// `Ker_ω = { v : ι_v ω = 0 }` as a submodule of the free module of rank
/// `n` on the coordinate fields.
pub fn kernel_module(omega: &ExteriorForm) -> Result<SubmoduleBasis> {
    module_kernel(&contraction_matrix(omega)?)
}

/// The generators of a submodule of the tangent module as vector fields.
pub fn module_fields(chart: &Arc<Chart>, m: &SubmoduleBasis) -> Result<Vec<PolyVectorField>> {
    m.generators().iter().map(|g| PolyVectorField::new(chart, g.clone())).collect()
}

/// Submodule of the tangent module spanned by `fields`.
pub fn span_fields(chart: &Arc<Chart>, fields: &[PolyVectorField]) -> Result<SubmoduleBasis> {
    if fields.iter().any(|v| !same_chart(&v.chart, chart)) {
        return Err(Error::RingMismatch);
    }
    SubmoduleBasis::new(&chart.ring, chart.dim(), fields.iter().map(|v| v.components.clone()).collect())
}

/// Whether every Grassmann–Plücker relation among the coefficients of `ω`
/// vanishes identically.
pub fn is_decomposable_generic(omega: &ExteriorForm) -> Result<bool> {
    Ok(first_plucker_violation(omega)?.is_none())
}

/// Index sets `(A, B)` of a failing relation and its value.
pub type PluckerViolation = (Vec<usize>, Vec<usize>, Polynomial);

/// A relation `(A, B)` that fails, with its value:
/// `Σ_ℓ (−1)^ℓ P_{A ∪ b_ℓ} P_{B ∖ b_ℓ} ≠ 0`.
pub fn first_plucker_violation(omega: &ExteriorForm) -> Result<Option<PluckerViolation>> {
    let q = omega.degree;
    if q == 0 {
        return Err(Error::DegreeZero);
    }
    let n = omega.chart.dim();
    if q == 1 || q + 1 > n {
        return Ok(None);
    }
    let ring = omega.ring();
    for a in (0..n).combinations(q - 1) {
        for b in (0..n).combinations(q + 1) {
            let mut sum = Polynomial::zero(ring);
            for (l, &bl) in b.iter().enumerate() {
                let mut left = a.clone();
                left.push(bl);
                let pl = omega.coeff(&left);
                if pl.is_zero() {
                    continue;
                }
                let right: Vec<usize> = b.iter().copied().filter(|&x| x != bl).collect();
                let pr = omega.coeff(&right);
                if pr.is_zero() {
                    continue;
                }
                let term = &pl * &pr;
                sum = if l % 2 == 1 { &sum - &term } else { &sum + &term };
            }
            if !sum.is_zero() {
                return Ok(Some((a, b, sum)));
            }
        }
    }
    Ok(None)
}

/// Ideal of all coefficients of `ω`.
pub fn singular_ideal(omega: &ExteriorForm) -> Ideal {
    Ideal::new(omega.ring(), omega.coefficients()).expect("same ring")
}

/// `Sing(ω) + Sing(dω)`: singular points where `dω` vanishes too.
pub fn nonkupka_ideal(omega: &ExteriorForm) -> Ideal {
    singular_ideal(omega).sum(&singular_ideal(&exterior_derivative(omega))).expect("same ring")
}

/// `[v, w]_i = Σ_j (v_j ∂_j w_i − w_j ∂_j v_i)`.
pub fn bracket_fields(v: &PolyVectorField, w: &PolyVectorField) -> Result<PolyVectorField> {
    if !same_chart(&v.chart, &w.chart) {
        return Err(Error::RingMismatch);
    }
    let comps = (0..v.chart.dim()).map(|i| &v.apply(&w.components[i]) - &w.apply(&v.components[i])).collect();
    PolyVectorField::new(&v.chart, comps)
}

/// Whether every pairwise bracket of `gens` lies in `saturated`.
///
/// `saturated` should be the saturation of the span of `gens`; every
/// generator must lie in it.
pub fn is_involutive(gens: &[PolyVectorField], saturated: &SubmoduleBasis) -> Result<bool> {
    for g in gens {
        if !same_ring(g.chart.ring(), saturated.ring()) {
            return Err(Error::RingMismatch);
        }
        if g.components.len() != saturated.rank() {
            return Err(Error::RankMismatch { expected: saturated.rank(), found: g.components.len() });
        }
        if !saturated.contains(&g.components) {
            return Err(Error::Invalid(format!("generator {g} lies outside the given module")));
        }
    }
    for (i, v) in gens.iter().enumerate() {
        for w in &gens[i + 1..] {
            if !saturated.contains(&bracket_fields(v, w)?.components) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`is_involutive`] against the double orthogonal of the span of `gens`.
pub fn is_involutive_saturated(chart: &Arc<Chart>, gens: &[PolyVectorField]) -> Result<bool> {
    let sat = double_orthogonal(&span_fields(chart, gens)?)?;
    is_involutive(gens, &sat)
}
