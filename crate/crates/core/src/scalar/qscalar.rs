//! The exact ground field Q(q1,..,ql) of rational functions in the
//! Kähler parameters.

use super::qpoly::{gcd, QPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::fmt;

/// Rational function num/den over Z[q1..ql], kept in canonical form:
/// coprime, content-reduced, denominator sign-normalized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QScalar {
    num: QPoly,
    den: QPoly,
}

impl QScalar {
    fn make(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "division by the zero polynomial");
        if num.is_zero() {
            let n = num.nvars();
            return QScalar { num, den: QPoly::one(n) };
        }
        let g = gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        if den
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            num = num.neg();
            den = den.neg();
        }
        QScalar { num, den }
    }

    pub fn zero(kvars: usize) -> Self {
        QScalar { num: QPoly::zero(kvars), den: QPoly::one(kvars) }
    }

    pub fn one(kvars: usize) -> Self {
        QScalar { num: QPoly::one(kvars), den: QPoly::one(kvars) }
    }

    pub fn from_int(kvars: usize, v: i64) -> Self {
        QScalar { num: QPoly::constant(kvars, BigInt::from(v)), den: QPoly::one(kvars) }
    }

    pub fn from_ratio(kvars: usize, r: &BigRational) -> Self {
        Self::make(
            QPoly::constant(kvars, r.numer().clone()),
            QPoly::constant(kvars, r.denom().clone()),
        )
    }

    /// The parameter `q_{idx+1}` as a scalar.
    pub fn var(kvars: usize, idx: usize) -> Self {
        QScalar { num: QPoly::var(kvars, idx), den: QPoly::one(kvars) }
    }

    /// The monomial `q^m` for a non-negative exponent vector.
    pub fn q_monomial(kvars: usize, m: &[u32]) -> Self {
        QScalar {
            num: QPoly::monomial(kvars, m.to_vec(), BigInt::one()),
            den: QPoly::one(kvars),
        }
    }

    pub fn from_poly(num: QPoly) -> Self {
        let n = num.nvars();
        QScalar { num, den: QPoly::one(n) }
    }

    pub fn kvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::make(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::make(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero scalar");
        Self::make(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Self {
        Self::one(self.kvars()).div(self)
    }

    pub fn mul_int(&self, v: i64) -> Self {
        Self::make(self.num.mul_bigint(&BigInt::from(v)), self.den.clone())
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().pow(-k);
        }
        QScalar::make(self.num.pow(k as u32), self.den.pow(k as u32))
    }

    /// Formal partial derivative by `q_{idx+1}`, quotient rule.
    pub fn q_derivative(&self, idx: usize) -> Self {
        let dn = self.num.derivative(idx);
        let dd = self.den.derivative(idx);
        Self::make(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
    }

    pub fn eval(&self, q: &[f64]) -> f64 {
        self.num.eval(q) / self.den.eval(q)
    }

    /// Plain rendering, e.g. `q1`, `2*q1^2 - 1`, `(1 - q1)/(1 + q1)`.
    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_text("q");
        }
        let num = if self.num.is_single_term() {
            self.num.to_text("q")
        } else {
            format!("({})", self.num.to_text("q"))
        };
        let den = if self.den.is_single_term() {
            self.den.to_text("q")
        } else {
            format!("({})", self.den.to_text("q"))
        };
        format!("{num}/{den}")
    }

    /// Rendering safe to splice into a product: wraps sums and fractions.
    pub fn to_text_atom(&self) -> String {
        let s = self.to_text();
        if self.den.is_one() && self.num.is_single_term() {
            s
        } else {
            format!("({s})")
        }
    }

    /// True when the rendering starts with a bare minus that callers may
    /// absorb into the surrounding sum. The denominator is always
    /// sign-normalized positive.
    pub fn is_negative_term(&self) -> bool {
        self.num.is_single_term()
            && self
                .num
                .leading()
                .map(|(_, c)| c.is_negative())
                .unwrap_or(false)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
