//! Distributions of the k-connector and gk-connector statistics on k-ary
//! words, computed three independent ways: exhaustive enumeration, a
//! transfer-matrix recurrence on the last letter, and closed-form rational
//! generating functions. The closed forms for the gk-connector statistic come
//! from a linear system over `Z[b]`, `b = x(q - 1)`, solved by Cramer's rule.

pub mod algebra;
pub mod error;
pub mod genfunc;
pub mod linsys;
pub mod totals;
pub mod verify;
pub mod word;

pub use algebra::{BPolynomial, BivariatePolynomial, QPolynomial, RationalGF, XPolynomial};
pub use error::{Error, Result};
pub use word::{brute_distribution, stat_count, ConnectorKind, ConnectorStat, Word};
