//! Polynomials over ℚ, ideals, submodules of free modules and Gröbner bases.

mod groebner;
mod ideal;
mod matrix;
mod module;
mod monomial;
mod parse;
mod polynomial;
mod ring;
mod sparse;

pub use ideal::{groebner, Ideal, SATURATION_CAP};
pub use matrix::PolyMatrix;
pub use module::{double_orthogonal, module_groebner, module_kernel, module_saturate, SubmoduleBasis};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{format_polynomial_list, parse_polynomial_list};
pub use polynomial::Polynomial;
pub use ring::Ring;

pub(crate) use ring::{is_identifier, same_ring};
