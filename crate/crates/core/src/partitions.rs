//! Integer partitions, partition counts, the Hardy–Ramanujan style lower
//! bound and the Jordan 𝔰𝔩₂-triples attached to a partition.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};

/// A weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into descending order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    pub fn contains_part(&self, part: u32) -> bool {
        self.parts.contains(&part)
    }

    /// The transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let m = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=m).map(|k| self.parts.iter().filter(|&&p| p >= k).count() as u32).collect();
        Partition { parts }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `5,1,1` or `[5, 1, 1]`.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition part `{p}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

fn check_nonnegative(n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::Negative(n))
}

/// All partitions of `n`, lexicographically descending.
pub fn enumerate_partitions(n: i64) -> Result<Vec<Partition>> {
    let n = check_nonnegative(n)?;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n as u32, n as u32, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// `p(n)` by Euler's pentagonal-number recurrence.
pub fn count_partitions(n: i64) -> Result<BigUint> {
    let n = check_nonnegative(n)?;
    Ok(partition_counts(n).pop().expect("non-empty").to_biguint().expect("p(n) is positive"))
}

/// `p(0), …, p(n)`.
pub fn partition_counts(n: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign_pos = k % 2 == 1;
            let mut term = p[m - g1].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                term += &p[m - g2];
            }
            if sign_pos {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

/// Partitions of `n` with at least one part equal to `part`. Empty when
/// `part > n`.
pub fn partitions_with_part(n: i64, part: u32) -> Result<Vec<Partition>> {
    if part == 0 {
        return Err(Error::Invalid("part must be positive".into()));
    }
    Ok(enumerate_partitions(n)?.into_iter().filter(|p| p.contains_part(part)).collect())
}

/// Outcome of comparing `p(n)` with `e^{2√n}/14`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HardyRamanujan {
    pub n: u64,
    #[serde(serialize_with = "ser_big")]
    pub partitions: BigUint,
    /// Certified `lower ≤ e^{2√n}/14 ≤ upper`.
    pub lower: Rational,
    pub upper: Rational,
    /// `p(n) > upper`, hence strictly above the true value.
    pub holds: bool,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

const SQRT_SCALE_BITS: u64 = 64;

/// Encloses `e^{2√n}/14` between two rationals and compares `p(n)` with the
/// upper end.
pub fn hardy_ramanujan_check(n: i64) -> Result<HardyRamanujan> {
    let m = check_nonnegative(n)?;
    let (lower, upper) = exp_two_sqrt_over_14(m as u64);
    let partitions = count_partitions(n)?;
    let pn = Rational::from(BigInt::from(partitions.clone()));
    let holds = pn > upper;
    Ok(HardyRamanujan { n: m as u64, partitions, lower, upper, holds })
}

/// Interval for `e^{2√n}/14`.
pub fn exp_two_sqrt_over_14(n: u64) -> (Rational, Rational) {
    let scale = BigInt::one() << SQRT_SCALE_BITS;
    let radicand = BigInt::from(n) * &scale * &scale;
    let root = radicand.sqrt();
    let exact = &root * &root == radicand;
    let s_lo = Rational::from(root.clone()) / Rational::from(scale.clone());
    let s_hi = if exact { s_lo.clone() } else { Rational::from(root + 1) / Rational::from(scale) };
    let two = Rational::from(2);
    let fourteen = Rational::from(14);
    let lo = exp_lower(&(&two * &s_lo)) / &fourteen;
    let hi = exp_upper(&(&two * &s_hi)) / &fourteen;
    if lo == hi {
        return (lo, hi);
    }
    // Outward rounding to 12 decimals keeps the enclosure certified and short.
    let denom = BigInt::from(10u64.pow(12));
    let down = Rational::new((&lo * &Rational::from(denom.clone())).floor(), denom.clone());
    let up = Rational::new(-(-(&hi * &Rational::from(denom.clone()))).floor(), denom);
    (down, up)
}

fn taylor_terms(x: &Rational) -> usize {
    // Enough terms that x < N + 2 and the remainder is tiny.
    let xf = x.to_f64().ceil() as usize;
    (3 * xf + 20).max(20)
}

/// Partial Taylor sum of `e^x` for `x ≥ 0`: a lower bound.
fn exp_lower(x: &Rational) -> Rational {
    let n = taylor_terms(x);
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 1..=n {
        term = &term * x / Rational::from(k as i64);
        sum += &term;
    }
    sum
}

/// Partial sum plus the geometric tail bound
/// `x^{N+1}/(N+1)! · 1/(1 − x/(N+2))`.
fn exp_upper(x: &Rational) -> Rational {
    let n = taylor_terms(x);
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 1..=n {
        term = &term * x / Rational::from(k as i64);
        sum += &term;
    }
    let next = &term * x / Rational::from(n as i64 + 1);
    let ratio = x / &Rational::from(n as i64 + 2);
    assert!(ratio < Rational::one(), "too few Taylor terms");
    sum + next / (Rational::one() - ratio)
}

/// An 𝔰𝔩₂-triple `(J, H, K)` with `[H,J] = 2J`, `[H,K] = −2K`, `[J,K] = H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanTriple {
    pub j: QMatrix,
    pub h: QMatrix,
    pub k: QMatrix,
}

impl JordanTriple {
    pub fn satisfies_relations(&self) -> bool {
        let c = |a: &QMatrix, b: &QMatrix| a.commutator(b).expect("square");
        c(&self.h, &self.j) == self.j.scale(&Rational::from(2))
            && c(&self.h, &self.k) == self.k.scale(&Rational::from(-2))
            && c(&self.j, &self.k) == self.h
    }
}

/// Block-diagonal `J_λ`, `H_λ` and the completing `K_λ`.
///
/// Each block of size `μ` has ones on the superdiagonal for `J` and
/// `diag(μ−1, μ−3, …, 1−μ)` for `H`; `K` is found by solving
/// `[J,K] = H`, `[H,K] = −2K`.
pub fn jordan_triple(lambda: &Partition) -> Result<JordanTriple> {
    if lambda.is_empty() {
        return Err(Error::Invalid("empty partition".into()));
    }
    let n = lambda.size();
    let mut j = QMatrix::zeros(n, n);
    let mut h = QMatrix::zeros(n, n);
    let mut k = QMatrix::zeros(n, n);
    let mut blocks: HashMap<u32, QMatrix> = HashMap::new();
    let mut off = 0;
    for &mu in lambda.parts() {
        let m = mu as usize;
        let kb = match blocks.get(&mu) {
            Some(b) => b.clone(),
            None => {
                let b = solve_lowering_block(m)?;
                blocks.insert(mu, b.clone());
                b
            }
        };
        for i in 0..m {
            h[(off + i, off + i)] = Rational::from(mu as i64 - 1 - 2 * i as i64);
            if i + 1 < m {
                j[(off + i, off + i + 1)] = Rational::one();
            }
            for c in 0..m {
                k[(off + i, off + c)] = kb[(i, c)].clone();
            }
        }
        off += m;
    }
    Ok(JordanTriple { j, h, k })
}

fn single_block(m: usize) -> (QMatrix, QMatrix) {
    let mut j = QMatrix::zeros(m, m);
    let mut h = QMatrix::zeros(m, m);
    for i in 0..m {
        h[(i, i)] = Rational::from(m as i64 - 1 - 2 * i as i64);
        if i + 1 < m {
            j[(i, i + 1)] = Rational::one();
        }
    }
    (j, h)
}

/// Solves the linear system `JK − KJ = H`, `HK − KH + 2K = 0` for the
/// `m²` entries of `K`.
fn solve_lowering_block(m: usize) -> Result<QMatrix> {
    let (j, h) = single_block(m);
    let idx = |r: usize, c: usize| r * m + c;
    let unknowns = m * m;
    let mut rows = Vec::with_capacity(2 * unknowns);
    let mut rhs = Vec::with_capacity(2 * unknowns);
    for r in 0..m {
        for c in 0..m {
            // (JK − KJ)[r][c] = Σ_s J[r][s] K[s][c] − K[r][s] J[s][c]
            let mut eq = vec![Rational::zero(); unknowns];
            for s in 0..m {
                eq[idx(s, c)] += &j[(r, s)];
                eq[idx(r, s)] -= &j[(s, c)];
            }
            rows.push(eq);
            rhs.push(h[(r, c)].clone());

            // (HK − KH + 2K)[r][c] = (h_r − h_c + 2) K[r][c]
            let mut eq = vec![Rational::zero(); unknowns];
            eq[idx(r, c)] = &(&h[(r, r)] - &h[(c, c)]) + &Rational::from(2);
            rows.push(eq);
            rhs.push(Rational::zero());
        }
    }
    let a = QMatrix::from_rows(rows)?;
    let sol = a.solve(&rhs)?.ok_or_else(|| Error::Invalid("no completing K".into()))?;
    if a.rank() != unknowns {
        return Err(Error::Invalid("completing K is not unique".into()));
    }
    let mut k = QMatrix::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            k[(r, c)] = sol[idx(r, c)].clone();
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Independent brute force: count multisets by dynamic programming over
    /// the largest allowed part.
    fn count_dp(n: usize) -> u128 {
        let mut ways = vec![0u128; n + 1];
        ways[0] = 1;
        for p in 1..=n {
            for s in p..=n {
                ways[s] += ways[s - p];
            }
        }
        ways[n]
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0).unwrap(), vec![Partition::empty()]);
        let four = enumerate_partitions(4).unwrap();
        let expected: Vec<Partition> = ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"].iter().map(|s| part(s)).collect();
        assert_eq!(four, expected);
        assert_eq!(enumerate_partitions(9).unwrap().len(), 30);
        assert_eq!(enumerate_partitions(-1).unwrap_err(), Error::Negative(-1));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_partitions(0).unwrap(), BigUint::from(1u32));
        assert_eq!(count_partitions(5).unwrap(), BigUint::from(7u32));
        assert_eq!(count_partitions(50).unwrap(), BigUint::from(count_dp(50)));
        assert_eq!(count_partitions(100).unwrap(), BigUint::from(count_dp(100)));
        for n in 0..=30 {
            assert_eq!(count_partitions(n).unwrap(), BigUint::from(enumerate_partitions(n).unwrap().len()));
        }
    }

    #[test]
    fn with_part_examples() {
        assert_eq!(partitions_with_part(5, 5).unwrap(), vec![part("5")]);
        assert_eq!(partitions_with_part(9, 5).unwrap().len(), 5);
        assert!(partitions_with_part(6, 7).unwrap().is_empty());
        for n in 5..=30 {
            assert_eq!(
                BigUint::from(partitions_with_part(n, 5).unwrap().len()),
                count_partitions(n - 5).unwrap()
            );
        }
    }

    #[test]
    fn hardy_ramanujan_examples() {
        let z = hardy_ramanujan_check(0).unwrap();
        assert_eq!(z.lower, Rational::new(1, 14));
        assert_eq!(z.upper, Rational::new(1, 14));
        assert!(z.holds);

        let nine = hardy_ramanujan_check(9).unwrap();
        // e^6 / 14 = 28.81634...
        assert!(nine.lower > Rational::new(288163, 10000) && nine.upper < Rational::new(288164, 10000));
        assert!(nine.holds);
        assert!(hardy_ramanujan_check(100).unwrap().holds);
    }

    #[test]
    fn interval_is_narrow_and_ordered() {
        for n in [1u64, 2, 7, 50] {
            let (lo, hi) = exp_two_sqrt_over_14(n);
            assert!(lo <= hi);
            let rel = (&hi - &lo) / &lo;
            assert!(rel < Rational::new(1, 1_000_000_000));
            let f = (2.0 * (n as f64).sqrt()).exp() / 14.0;
            assert!((lo.to_f64() - f).abs() / f < 1e-12);
        }
    }

    #[test]
    fn triple_examples() {
        let one = jordan_triple(&part("1")).unwrap();
        assert!(one.j.is_zero() && one.h.is_zero() && one.k.is_zero());

        let five = jordan_triple(&part("5")).unwrap();
        assert_eq!(five.h, QMatrix::diagonal(&[4, 2, 0, -2, -4].map(Rational::from)));
        for i in 0..4 {
            assert_eq!(five.j[(i, i + 1)], Rational::one());
            // k(μ − k) with k = i + 1
            assert_eq!(five.k[(i + 1, i)], Rational::from(((i + 1) * (4 - i)) as i64));
        }
        assert!(jordan_triple(&part("2,2")).unwrap().satisfies_relations());
    }

    #[test]
    fn triples_for_small_partitions() {
        for n in 1..=12 {
            for p in enumerate_partitions(n).unwrap() {
                let t = jordan_triple(&p).unwrap();
                assert!(t.satisfies_relations(), "{p}");
                assert!(t.j.trace().is_zero() && t.h.trace().is_zero() && t.k.trace().is_zero());
            }
        }
    }

    #[test]
    fn serde_and_parse() {
        let p = part("[1, 5, 1]");
        assert_eq!(p.parts(), &[5, 1, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[5,1,1]");
        assert_eq!(serde_json::from_str::<Partition>("[2,3]").unwrap(), part("3,2"));
        assert!(serde_json::from_str::<Partition>("[0]").is_err());
        assert_eq!(p.to_string(), "[5,1,1]");
        assert_eq!(part("3,1").conjugate(), part("2,1,1"));
    }

    proptest! {
        #[test]
        fn conjugate_is_an_involution(parts in proptest::collection::vec(1u32..8, 0..8)) {
            let p = Partition::new(parts).unwrap();
            prop_assert_eq!(p.conjugate().conjugate(), p.clone());
            prop_assert_eq!(p.conjugate().size(), p.size());
        }
    }
}
