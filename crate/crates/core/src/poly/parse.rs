//! Plain-text polynomial syntax: `3/2*x0^2*t - y + 1`.

use std::sync::Arc;

use super::{Monomial, Polynomial, Ring};
use crate::exact::Rational;
use crate::error::{Error, Result};

pub(crate) fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let err = |msg: &str| Error::Parse(format!("{msg} in `{text}`"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Rational::one();
        match rest.as_bytes()[0] {
            b'+' => rest = &rest[1..],
            b'-' => {
                sign = -sign;
                rest = &rest[1..];
            }
            _ if !first => return Err(err("expected `+` or `-`")),
            _ => {}
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let (m, c) = parse_term(ring, term).map_err(|e| match e {
            Error::Parse(m) => err(&m),
            other => other,
        })?;
        terms.push((m, sign * c));
        rest = tail;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term(ring: &Arc<Ring>, term: &str) -> Result<(Monomial, Rational)> {
    let mut coeff = Rational::one();
    let mut exps = vec![0u16; ring.nvars()];
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse("empty factor".into()));
        }
        if factor.as_bytes()[0].is_ascii_digit() {
            coeff = coeff * factor.parse::<Rational>()?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u16>().map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?),
            None => (factor, 1),
        };
        let i = ring.var_index(name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        exps[i] += exp;
    }
    Ok((Monomial::from_exponents(&exps), coeff))
}

/// Parses a block of text: a ring header line followed by one polynomial per
/// non-empty line. Lines starting with `#` are ignored.
pub fn parse_polynomial_list(text: &str) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("missing ring header".into()))?;
    let ring = Ring::parse_header(header)?;
    let polys = lines.map(|l| Polynomial::parse(&ring, l)).collect::<Result<Vec<_>>>()?;
    Ok((ring, polys))
}

/// Inverse of [`parse_polynomial_list`].
pub fn format_polynomial_list(ring: &Ring, polys: &[Polynomial]) -> String {
    let mut s = ring.header();
    s.push('\n');
    for p in polys {
        s.push_str(&p.to_string());
        s.push('\n');
    }
    s
}
