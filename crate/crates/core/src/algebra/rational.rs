//! Rational generating functions `N(x, q) / D(x, q)` with `D(0, q) = 1`.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bivariate::BivariatePolynomial;
use super::poly::{QPolynomial, XPolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: BivariatePolynomial,
    denominator: BivariatePolynomial,
}

impl RationalGF {
    /// Builds `numerator / denominator`, normalizing so the denominator's
    /// constant term is exactly 1. A constant term of `-1` flips both signs;
    /// anything else is rejected.
    pub fn new(numerator: BivariatePolynomial, denominator: BivariatePolynomial) -> Result<Self> {
        let c0 = denominator.xcoeff(0);
        if c0 == QPolynomial::one() {
            Ok(RationalGF { numerator, denominator })
        } else if c0 == -QPolynomial::one() {
            Ok(RationalGF { numerator: -&numerator, denominator: -&denominator })
        } else {
            Err(Error::NotNormalized(c0.to_string()))
        }
    }

    pub fn polynomial(p: BivariatePolynomial) -> Self {
        RationalGF { numerator: p, denominator: BivariatePolynomial::one() }
    }

    pub fn one() -> Self {
        Self::polynomial(BivariatePolynomial::one())
    }

    pub fn zero() -> Self {
        Self::polynomial(BivariatePolynomial::zero())
    }

    /// `1 / (1 - k x)`, the series of all k-ary words counted by length.
    pub fn all_words(k: u32) -> Self {
        RationalGF {
            numerator: BivariatePolynomial::one(),
            denominator: BivariatePolynomial::from_x_poly(&XPolynomial::from_coeffs(vec![
                BigInt::one(),
                -BigInt::from(k),
            ])),
        }
    }

    pub fn numerator(&self) -> &BivariatePolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &BivariatePolynomial {
        &self.denominator
    }

    /// Coefficients of `x^0 ..= x^nmax` of the power-series expansion.
    ///
    /// Uses `c_n = N_n - sum_{m=1..n} D_m c_{n-m}`, valid because `D_0 = 1`.
    pub fn series_coefficients(&self, nmax: usize) -> Vec<QPolynomial> {
        let den = self.denominator.xcoeffs();
        let mut out: Vec<QPolynomial> = Vec::with_capacity(nmax + 1);
        for n in 0..=nmax {
            let mut c = self.numerator.xcoeff(n);
            for m in 1..=n.min(den.len().saturating_sub(1)) {
                if den[m].is_zero() {
                    continue;
                }
                c = &c - &(&den[m] * &out[n - m]);
            }
            out.push(c);
        }
        out
    }

    pub fn coefficient(&self, n: usize) -> QPolynomial {
        self.series_coefficients(n).pop().unwrap_or_default()
    }

    /// `d/dq` of the function, evaluated at `q = 1`, as a rational function of
    /// `x` alone (embedded with constant `q`-coefficients).
    pub fn derivative_q_at_1(&self) -> RationalGF {
        let n1 = self.numerator.eval_q_one();
        let d1 = self.denominator.eval_q_one();
        let dn1 = self.numerator.derivative_q().eval_q_one();
        let dd1 = self.denominator.derivative_q().eval_q_one();
        let num = &(&dn1 * &d1) - &(&n1 * &dd1);
        let den = &d1 * &d1;
        // D(0, q) = 1 for every q, so D(0, 1)^2 = 1.
        RationalGF::new(BivariatePolynomial::from_x_poly(&num), BivariatePolynomial::from_x_poly(&den))
            .expect("denominator keeps constant term 1 at q = 1")
    }

    /// The function with `q := 1`, as (numerator, denominator) in `x`.
    pub fn at_q_one(&self) -> (XPolynomial, XPolynomial) {
        (self.numerator.eval_q_one(), self.denominator.eval_q_one())
    }

    /// Equality as rational functions: `N1 * D2 == N2 * D1`.
    pub fn same_function(&self, other: &RationalGF) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    /// Multiplies the truncated series back by the denominator and checks the
    /// numerator is recovered through degree `nmax`.
    pub fn series_consistent(&self, nmax: usize) -> bool {
        let series = BivariatePolynomial::from_xcoeffs(self.series_coefficients(nmax));
        let product = &series * &self.denominator;
        (0..=nmax).all(|n| product.xcoeff(n) == self.numerator.xcoeff(n))
    }

    pub fn is_zero_function(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl Add for &RationalGF {
    type Output = RationalGF;
    fn add(self, rhs: &RationalGF) -> RationalGF {
        if self.denominator == rhs.denominator {
            return RationalGF {
                numerator: &self.numerator + &rhs.numerator,
                denominator: self.denominator.clone(),
            };
        }
        RationalGF {
            numerator: &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            denominator: &self.denominator * &rhs.denominator,
        }
    }
}

impl Sub for &RationalGF {
    type Output = RationalGF;
    fn sub(self, rhs: &RationalGF) -> RationalGF {
        let neg = RationalGF { numerator: -&rhs.numerator, denominator: rhs.denominator.clone() };
        self + &neg
    }
}

impl Mul for &RationalGF {
    type Output = RationalGF;
    fn mul(self, rhs: &RationalGF) -> RationalGF {
        RationalGF {
            numerator: &self.numerator * &rhs.numerator,
            denominator: &self.denominator * &rhs.denominator,
        }
    }
}

/// Integer power series of a rational function of `x` alone.
pub fn x_series(num: &XPolynomial, den: &XPolynomial, nmax: usize) -> Vec<BigInt> {
    assert!(den.constant_term().is_one(), "x-series needs a unit constant term");
    let mut out: Vec<BigInt> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let mut c = num.coeff(n);
        for m in 1..=n.min(den.coeffs().len().saturating_sub(1)) {
            let d = &den.coeffs()[m];
            if !d.is_zero() {
                c -= d * &out[n - m];
            }
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xpoly(c: &[i64]) -> BivariatePolynomial {
        BivariatePolynomial::from_x_poly(&XPolynomial::from_i64s(c))
    }

    #[test]
    fn geometric_series() {
        let gf = RationalGF::all_words(3);
        let coeffs: Vec<_> = gf.series_coefficients(3).iter().map(QPolynomial::eval_one).collect();
        assert_eq!(coeffs, [1, 3, 9, 27].map(BigInt::from));
    }

    #[test]
    fn squared_denominator_series() {
        // (k-1) x^2 / (1 - kx)^2 with k = 2
        let den = &xpoly(&[1, -2]) * &xpoly(&[1, -2]);
        let gf = RationalGF::new(xpoly(&[0, 0, 1]), den).unwrap();
        assert_eq!(gf.coefficient(3), QPolynomial::constant(4));
        assert!(gf.series_consistent(10));
    }

    #[test]
    fn rejects_non_unit_constant_term() {
        assert!(matches!(RationalGF::new(xpoly(&[1]), xpoly(&[2, 1])), Err(Error::NotNormalized(_))));
        let flipped = RationalGF::new(xpoly(&[1]), xpoly(&[-1, 1])).unwrap();
        assert_eq!(flipped.denominator().xcoeff(0), QPolynomial::one());
        assert_eq!(flipped.coefficient(2), QPolynomial::constant(-1));
    }

    #[test]
    fn derivative_of_q_free_function_is_zero() {
        let gf = RationalGF::all_words(5);
        assert!(gf.derivative_q_at_1().is_zero_function());
    }

    #[test]
    fn derivative_of_q_over_one_minus_x() {
        // q x / (1 - x): derivative at q=1 is x / (1 - x)
        let num = BivariatePolynomial::x_monomial(QPolynomial::var(), 1);
        let gf = RationalGF::new(num, xpoly(&[1, -1])).unwrap();
        let d = gf.derivative_q_at_1();
        let expected = RationalGF::new(xpoly(&[0, 1]), xpoly(&[1, -1])).unwrap();
        assert!(d.same_function(&expected));
    }

    #[test]
    fn arithmetic_matches_series() {
        let a = RationalGF::all_words(2);
        let b = RationalGF::all_words(3);
        let sum = &a + &b;
        let prod = &a * &b;
        let sa = a.series_coefficients(6);
        let sb = b.series_coefficients(6);
        let ss = RationalGF::new(sum.numerator().clone(), sum.denominator().clone()).unwrap().series_coefficients(6);
        let sp = prod.series_coefficients(6);
        for n in 0..=6 {
            assert_eq!(ss[n], &sa[n] + &sb[n]);
            let conv: QPolynomial = (0..=n).map(|i| &sa[i] * &sb[n - i]).sum();
            assert_eq!(sp[n], conv);
        }
        assert!((&a - &a).is_zero_function());
    }

    #[test]
    fn integer_series_helper() {
        let s = x_series(&XPolynomial::from_i64s(&[1]), &XPolynomial::from_i64s(&[1, -1, -1]), 6);
        assert_eq!(s, [1, 1, 2, 3, 5, 8, 13].map(BigInt::from));
    }
}
