//! Exact polynomial arithmetic over arbitrary-precision integers.

mod bivariate;
mod poly;
mod rational;

pub use bivariate::{substitute_b, BivariatePolynomial};
pub use poly::{BPolynomial, Indeterminate, Poly, QPolynomial, XPolynomial, B, Q, X};
pub use rational::{x_series, RationalGF};
