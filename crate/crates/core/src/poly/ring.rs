use std::fmt;
use std::sync::Arc;

use super::MonomialOrder;
use crate::error::{Error, Result};

/// A polynomial ring ℚ[x₀, …, xₙ₋₁] with a fixed monomial order.
///
/// Rings are shared through `Arc` and compared structurally, so two rings
/// with the same variable names and order are interchangeable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, order: MonomialOrder) -> Arc<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if let MonomialOrder::Block(k) = order {
            assert!(k <= vars.len(), "block size exceeds variable count");
        }
        Arc::new(Ring { vars, order })
    }

    /// Parses a header line such as `ring t x0 x1 x2 order grevlex`.
    /// The `order` clause is optional and defaults to grevlex.
    pub fn parse_header(line: &str) -> Result<Arc<Ring>> {
        let mut words = line.split_whitespace();
        if words.next() != Some("ring") {
            return Err(Error::Parse(format!("ring header must start with `ring`: `{line}`")));
        }
        let mut vars = Vec::new();
        let mut order = MonomialOrder::GrevLex;
        while let Some(w) = words.next() {
            if w == "order" {
                let o = words.next().ok_or_else(|| Error::Parse("missing order name".into()))?;
                order = MonomialOrder::parse(o).ok_or_else(|| Error::Parse(format!("unknown order `{o}`")))?;
                if words.next().is_some() {
                    return Err(Error::Parse("trailing tokens after order".into()));
                }
                break;
            }
            if !is_identifier(w) {
                return Err(Error::Parse(format!("invalid variable name `{w}`")));
            }
            if vars.iter().any(|v| v == w) {
                return Err(Error::Parse(format!("duplicate variable `{w}`")));
            }
            vars.push(w.to_string());
        }
        Ok(Ring::new(vars, order))
    }

    pub fn header(&self) -> String {
        let mut s = String::from("ring");
        for v in &self.vars {
            s.push(' ');
            s.push_str(v);
        }
        s.push_str(" order ");
        s.push_str(&self.order.name());
        s
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Ring::new(self.vars.clone(), order)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

pub(crate) fn is_identifier(w: &str) -> bool {
    let mut chars = w.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
