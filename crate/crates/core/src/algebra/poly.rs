//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! The variable is tracked at the type level so that a polynomial in `q`
//! cannot be added to a polynomial in `b` by accident. Coefficients are stored
//! in ascending order of degree and kept canonical: no trailing zeros, and the
//! zero polynomial is the empty vector.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Marker for the name of a polynomial's variable.
pub trait Indeterminate {
    const SYMBOL: char;
}

/// The statistic marker variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Q;

/// The substitution variable `b = x(q - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct B;

/// The length-marking variable of a generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct X;

impl Indeterminate for Q {
    const SYMBOL: char = 'q';
}
impl Indeterminate for B {
    const SYMBOL: char = 'b';
}
impl Indeterminate for X {
    const SYMBOL: char = 'x';
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<V> {
    coeffs: Vec<BigInt>,
    _var: PhantomData<V>,
}

pub type QPolynomial = Poly<Q>;
pub type BPolynomial = Poly<B>;
pub type XPolynomial = Poly<X>;

impl<V> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V> Poly<V> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new(), _var: PhantomData }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * v^degree`
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs, _var: PhantomData }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ascending coefficients, canonical (no trailing zeros).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// Value at 1, i.e. the sum of the coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, by: &BigInt) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c * by).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in `Z[v]`. Returns `None` when `divisor` does not divide
    /// `self` with an integer quotient.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dlen = divisor.coeffs.len();
        let lead = divisor.coeffs.last()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < dlen {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * d;
            }
            quot[shift] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Decimal strings of the ascending coefficients; the zero polynomial
    /// serializes as an empty list.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl<V: Indeterminate> Poly<V> {
    /// Parses sums of terms such as `b^4+b^3-3b^2-2b+1`, `1 - b`, `-2*b^3`.
    pub fn parse(input: &str) -> Result<Self> {
        let err = |reason: &str| Error::PolyParse { input: input.to_string(), reason: reason.to_string() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let bytes: Vec<char> = s.chars().collect();
        let mut acc = Self::zero();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(err("expected '+' or '-' between terms"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let has_digits = i > start;
            let coeff: BigInt = if has_digits {
                bytes[start..i].iter().collect::<String>().parse().map_err(|_| err("bad coefficient"))?
            } else {
                BigInt::one()
            };
            if i < bytes.len() && bytes[i] == '*' {
                i += 1;
            }
            let mut degree = 0usize;
            if i < bytes.len() && bytes[i] == V::SYMBOL {
                i += 1;
                degree = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ds == i {
                        return Err(err("missing exponent"));
                    }
                    degree = bytes[ds..i].iter().collect::<String>().parse().map_err(|_| err("bad exponent"))?;
                }
            } else if !has_digits {
                return Err(err("expected a coefficient or the variable"));
            }
            acc = &acc + &Self::monomial(sign * coeff, degree);
        }
        Ok(acc)
    }
}

impl<V: Indeterminate> fmt::Display for Poly<V> {
    /// Ascending order, e.g. `5 + 2q + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}", V::SYMBOL)?,
                _ => write!(f, "{}^{}", V::SYMBOL, i)?,
            }
        }
        Ok(())
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl<V> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<V> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        -&self
    }
}

impl<V> Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        Poly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl<V> Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        self + &(-rhs)
    }
}

impl<V> Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        Poly::from_coeffs(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<V> $tr for Poly<V> {
            type Output = Poly<V>;
            fn $method(self, rhs: Poly<V>) -> Poly<V> {
                (&self).$method(&rhs)
            }
        }
        impl<V> $tr<&Poly<V>> for Poly<V> {
            type Output = Poly<V>;
            fn $method(self, rhs: &Poly<V>) -> Poly<V> {
                (&self).$method(rhs)
            }
        }
        impl<V> $tr<Poly<V>> for &Poly<V> {
            type Output = Poly<V>;
            fn $method(self, rhs: Poly<V>) -> Poly<V> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<V> std::iter::Sum for Poly<V> {
    fn sum<I: Iterator<Item = Poly<V>>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

impl<'a, V: 'a> std::iter::Sum<&'a Poly<V>> for Poly<V> {
    fn sum<I: Iterator<Item = &'a Poly<V>>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |acc, p| &acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(c)
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        assert_eq!(qp(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(qp(&[0, 0]).is_zero());
        assert_eq!(qp(&[0]).degree(), None);
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(qp(&[1, 1]) * qp(&[1, -1]), qp(&[1, 0, -1]));
    }

    #[test]
    fn identities() {
        let p = qp(&[3, -1, 4]);
        assert_eq!(&p + &QPolynomial::zero(), p);
        let bp = BPolynomial::from_i64s(&[1, -1, -1]);
        assert_eq!(&bp * &BPolynomial::one(), bp);
    }

    #[test]
    fn display_ascending() {
        assert_eq!(qp(&[5, 2, 1]).to_string(), "5 + 2q + q^2");
        assert_eq!(BPolynomial::from_i64s(&[1, -1, -1]).to_string(), "1 - b - b^2");
        assert_eq!(qp(&[0, -3]).to_string(), "-3q");
        assert_eq!(qp(&[]).to_string(), "0");
    }

    #[test]
    fn parse_descending_forms() {
        assert_eq!(BPolynomial::parse("b^4+b^3-3b^2-2b+1").unwrap(), BPolynomial::from_i64s(&[1, -2, -3, 1, 1]));
        assert_eq!(BPolynomial::parse("-b+1").unwrap(), BPolynomial::from_i64s(&[1, -1]));
        assert_eq!(BPolynomial::parse("1").unwrap(), BPolynomial::one());
        assert_eq!(BPolynomial::parse(" 2*b^2 - b ").unwrap(), BPolynomial::from_i64s(&[0, -1, 2]));
        assert!(BPolynomial::parse("q+1").is_err());
        assert!(BPolynomial::parse("").is_err());
        assert!(BPolynomial::parse("b^").is_err());
    }

    #[test]
    fn exact_division() {
        let a = qp(&[1, 1]);
        let b = qp(&[2, -3, 1]);
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(qp(&[1, 0, 1]).div_exact(&qp(&[1, 1])), None);
        assert_eq!(qp(&[1]).div_exact(&qp(&[2])), None);
        assert_eq!(QPolynomial::zero().div_exact(&a), Some(QPolynomial::zero()));
    }

    #[test]
    fn eval_and_derivative() {
        let p = qp(&[5, 2, 1]);
        assert_eq!(p.eval_one(), BigInt::from(8));
        assert_eq!(p.eval(&BigInt::from(-1)), BigInt::from(4));
        assert_eq!(p.derivative(), qp(&[2, 2]));
    }

    fn arb_poly() -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|c| qp(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn display_parse_round_trip(c in prop::collection::vec(-9i64..9, 0..6)) {
            let p = BPolynomial::from_i64s(&c);
            prop_assert_eq!(BPolynomial::parse(&p.to_string()).unwrap(), p);
        }
    }
}
