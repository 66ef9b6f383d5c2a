//! Closed-form generating functions and the transfer-matrix recurrence.
//!
//! `kcon_gf(k)` and `gkcon_gf(k)` return `sum_n sum_{w in [k]^n} x^n q^{stat(w)}`
//! as normalized rational functions. `transfer_distribution` computes the
//! coefficient of `x^n` directly, by propagating one distribution polynomial
//! per final letter.

use num_bigint::BigInt;

use crate::algebra::{substitute_b, BivariatePolynomial, QPolynomial, RationalGF, XPolynomial};
use crate::linsys::{det_closed_form, term_sum};
use crate::word::ConnectorStat;

fn x_poly(coeffs: &[i64]) -> BivariatePolynomial {
    BivariatePolynomial::from_x_poly(&XPolynomial::from_i64s(coeffs))
}

/// `b = x(q - 1)` as a bivariate polynomial.
fn b_bivariate() -> BivariatePolynomial {
    BivariatePolynomial::x_monomial(QPolynomial::from_i64s(&[-1, 1]), 1)
}

/// k-connector generating function
/// `1 / (1 - x - (k - 1) (x + x^2 (q - 1)) / (1 - x^2 (q - 1)^2))`.
///
/// The inner fraction is cleared by multiplying through with `1 - b^2`, so the
/// numerator is `1 - b^2` and the denominator is
/// `(1 - x)(1 - b^2) - (k - 1) x (1 + b)`.
pub fn kcon_gf(k: u32) -> RationalGF {
    assert!(k >= 1, "alphabet size must be positive");
    let b = b_bivariate();
    let one = BivariatePolynomial::one();
    let one_minus_b2 = &one - &(&b * &b);
    let x_one_plus_b = (&one + &b).shift_x(1);
    let km1 = QPolynomial::constant(k - 1);
    let den = &(&x_poly(&[1, -1]) * &one_minus_b2) - &x_one_plus_b.scale(&km1);
    RationalGF::new(one_minus_b2, den).expect("constant term is 1")
}

/// Totals generating function `(k - 1) x^2 / (1 - kx)^2`.
pub fn kcon_total_gf(k: u32) -> RationalGF {
    assert!(k >= 1, "alphabet size must be positive");
    scaled_square_gf(BigInt::from(k - 1), k)
}

/// `c x^2 / (1 - kx)^2`
pub(crate) fn scaled_square_gf(c: BigInt, k: u32) -> RationalGF {
    let num = BivariatePolynomial::x_monomial(QPolynomial::constant(c), 2);
    let lin = x_poly(&[1, -i64::from(k)]);
    RationalGF::new(num, &lin * &lin).expect("constant term is 1")
}

/// gk-connector generating function `det A / (det A - x * sum_j t_j)` under
/// `b = x(q - 1)`, where `det A` is the closed-form determinant and `t_j` the
/// parity-dependent term polynomials.
pub fn gkcon_gf(k: u32) -> RationalGF {
    assert!(k >= 1, "alphabet size must be positive");
    let num = substitute_b(&det_closed_form(k));
    let terms = substitute_b(&term_sum(k)).shift_x(1);
    let den = &num - &terms;
    RationalGF::new(num, den).expect("constant term is 1")
}

/// Closed-form generating function for a statistic at its natural threshold.
/// Returns `None` when the threshold differs from `k`.
pub fn closed_form_gf(k: u32, s: ConnectorStat) -> Option<RationalGF> {
    use crate::word::ConnectorKind::*;
    if s.threshold() != k {
        return None;
    }
    Some(match s.kind() {
        SumEquals => kcon_gf(k),
        SumGreater => gkcon_gf(k),
    })
}

/// Distribution polynomials of words of length `n`, split by final letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalDistribution {
    by_last_letter: Vec<QPolynomial>,
    n: usize,
}

impl ConditionalDistribution {
    /// Length-one words: one word per letter, statistic 0.
    pub fn initial(k: u32) -> Self {
        assert!(k >= 1, "alphabet size must be positive");
        ConditionalDistribution { by_last_letter: vec![QPolynomial::one(); k as usize], n: 1 }
    }

    pub fn from_parts(by_last_letter: Vec<QPolynomial>, n: usize) -> Self {
        assert!(!by_last_letter.is_empty(), "alphabet size must be positive");
        ConditionalDistribution { by_last_letter, n }
    }

    /// Entry `i - 1` holds the distribution over words ending in letter `i`.
    pub fn by_last_letter(&self) -> &[QPolynomial] {
        &self.by_last_letter
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.by_last_letter.len() as u32
    }

    pub fn total(&self) -> QPolynomial {
        self.by_last_letter.iter().sum()
    }

    /// Appends one letter: entry `i` becomes `sum_j w(j, i) * old_j`, with
    /// `w(j, i) = q` when the pair `(j, i)` is a connector and 1 otherwise.
    pub fn step(&self, s: ConnectorStat) -> Self {
        let k = self.k();
        let q = QPolynomial::var();
        let by_last_letter = (1..=k)
            .map(|i| {
                let mut plain = QPolynomial::zero();
                let mut marked = QPolynomial::zero();
                for (j, entry) in (1..=k).zip(&self.by_last_letter) {
                    if s.matches(j, i) {
                        marked = &marked + entry;
                    } else {
                        plain = &plain + entry;
                    }
                }
                &plain + &(&marked * &q)
            })
            .collect();
        ConditionalDistribution { by_last_letter, n: self.n + 1 }
    }
}

pub fn transfer_step(d: &ConditionalDistribution, s: ConnectorStat) -> ConditionalDistribution {
    d.step(s)
}

/// Distribution polynomial over `[k]^n` in `O(n k^2)` polynomial additions.
pub fn transfer_distribution(n: usize, k: u32, s: ConnectorStat) -> QPolynomial {
    assert!(k >= 1, "alphabet size must be positive");
    if n == 0 {
        return QPolynomial::one();
    }
    let mut state = ConditionalDistribution::initial(k);
    for _ in 1..n {
        state = state.step(s);
    }
    state.total()
}
