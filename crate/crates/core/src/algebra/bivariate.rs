//! Polynomials in `x` whose coefficients are polynomials in `q`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::poly::{BPolynomial, QPolynomial, XPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePolynomial {
    xcoeffs: Vec<QPolynomial>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_xcoeffs(vec![QPolynomial::one()])
    }

    pub fn constant(c: QPolynomial) -> Self {
        Self::from_xcoeffs(vec![c])
    }

    /// `c * x^degree`
    pub fn x_monomial(c: QPolynomial, degree: usize) -> Self {
        let mut xcoeffs = vec![QPolynomial::zero(); degree + 1];
        xcoeffs[degree] = c;
        Self::from_xcoeffs(xcoeffs)
    }

    pub fn from_xcoeffs(mut xcoeffs: Vec<QPolynomial>) -> Self {
        while xcoeffs.last().is_some_and(QPolynomial::is_zero) {
            xcoeffs.pop();
        }
        BivariatePolynomial { xcoeffs }
    }

    /// Embeds a polynomial in `x` with constant (q-free) coefficients.
    pub fn from_x_poly(p: &XPolynomial) -> Self {
        Self::from_xcoeffs(p.coeffs().iter().map(|c| QPolynomial::constant(c.clone())).collect())
    }

    pub fn xcoeffs(&self) -> &[QPolynomial] {
        &self.xcoeffs
    }

    pub fn xcoeff(&self, degree: usize) -> QPolynomial {
        self.xcoeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.xcoeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.xcoeffs.is_empty()
    }

    /// Multiplies by `x^shift`.
    pub fn shift_x(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut xcoeffs = vec![QPolynomial::zero(); shift];
        xcoeffs.extend(self.xcoeffs.iter().cloned());
        Self::from_xcoeffs(xcoeffs)
    }

    pub fn scale(&self, by: &QPolynomial) -> Self {
        Self::from_xcoeffs(self.xcoeffs.iter().map(|c| c * by).collect())
    }

    /// Partial derivative with respect to `q`.
    pub fn derivative_q(&self) -> Self {
        Self::from_xcoeffs(self.xcoeffs.iter().map(QPolynomial::derivative).collect())
    }

    pub fn eval_q(&self, q: &BigInt) -> XPolynomial {
        XPolynomial::from_coeffs(self.xcoeffs.iter().map(|c| c.eval(q)).collect())
    }

    pub fn eval_q_one(&self) -> XPolynomial {
        XPolynomial::from_coeffs(self.xcoeffs.iter().map(QPolynomial::eval_one).collect())
    }
}

/// Expands `p(b)` under `b = x(q - 1)`: the `b^i` term becomes `x^i (q - 1)^i`.
pub fn substitute_b(p: &BPolynomial) -> BivariatePolynomial {
    let q_minus_one = QPolynomial::from_i64s(&[-1, 1]);
    let mut power = QPolynomial::one();
    let mut xcoeffs = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        xcoeffs.push(power.scale(c));
        power = &power * &q_minus_one;
    }
    BivariatePolynomial::from_xcoeffs(xcoeffs)
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial::from_xcoeffs(self.xcoeffs.iter().map(|c| -c).collect())
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let len = self.xcoeffs.len().max(rhs.xcoeffs.len());
        BivariatePolynomial::from_xcoeffs((0..len).map(|i| self.xcoeff(i) + rhs.xcoeff(i)).collect())
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePolynomial::zero();
        }
        let mut out = vec![QPolynomial::zero(); self.xcoeffs.len() + rhs.xcoeffs.len() - 1];
        for (i, a) in self.xcoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.xcoeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BivariatePolynomial::from_xcoeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn substitute_single_b() {
        let s = substitute_b(&BPolynomial::var());
        assert_eq!(s.xcoeff(0), QPolynomial::zero());
        assert_eq!(s.xcoeff(1), QPolynomial::from_i64s(&[-1, 1]));
        assert_eq!(s.x_degree(), Some(1));
    }

    #[test]
    fn substitute_two_by_two_determinant() {
        // 1 - b - b^2  ->  1 - x(q-1) - x^2 (q-1)^2
        let s = substitute_b(&BPolynomial::from_i64s(&[1, -1, -1]));
        assert_eq!(s.xcoeff(0), QPolynomial::one());
        assert_eq!(s.xcoeff(1), QPolynomial::from_i64s(&[1, -1]));
        assert_eq!(s.xcoeff(2), QPolynomial::from_i64s(&[-1, 2, -1]));
    }

    #[test]
    fn substitute_constant() {
        let s = substitute_b(&BPolynomial::constant(7));
        assert_eq!(s, BivariatePolynomial::constant(QPolynomial::constant(7)));
    }

    proptest! {
        #[test]
        fn b_vanishes_at_q_one(c in prop::collection::vec(-9i64..9, 0..7)) {
            let p = BPolynomial::from_i64s(&c);
            let at_one = substitute_b(&p).eval_q_one();
            prop_assert_eq!(at_one.coeff(0), p.constant_term());
            for i in 1..c.len() + 1 {
                prop_assert!(at_one.coeff(i).is_zero());
            }
            prop_assert_eq!(substitute_b(&p).x_degree(), p.degree());
        }
    }
}
