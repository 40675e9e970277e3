//! Gaussian extension Q(q1,..,ql)(i) of the ground field.
//!
//! One scalar type serves both the Jacobian-ring algebra (real part only)
//! and the form-transform kernels, where factors of sqrt(-1) circulate.

use super::qscalar::QScalar;
use num_complex::Complex64;
use num_rational::BigRational;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussScalar {
    re: QScalar,
    im: QScalar,
}

impl GaussScalar {
    pub fn new(re: QScalar, im: QScalar) -> Self {
        assert_eq!(re.kvars(), im.kvars());
        GaussScalar { re, im }
    }

    pub fn zero(kvars: usize) -> Self {
        GaussScalar { re: QScalar::zero(kvars), im: QScalar::zero(kvars) }
    }

    pub fn one(kvars: usize) -> Self {
        GaussScalar { re: QScalar::one(kvars), im: QScalar::zero(kvars) }
    }

    pub fn i(kvars: usize) -> Self {
        GaussScalar { re: QScalar::zero(kvars), im: QScalar::one(kvars) }
    }

    pub fn from_real(re: QScalar) -> Self {
        let k = re.kvars();
        GaussScalar { re, im: QScalar::zero(k) }
    }

    pub fn from_int(kvars: usize, v: i64) -> Self {
        Self::from_real(QScalar::from_int(kvars, v))
    }

    pub fn from_ratio(kvars: usize, r: &BigRational) -> Self {
        Self::from_real(QScalar::from_ratio(kvars, r))
    }

    pub fn kvars(&self) -> usize {
        self.re.kvars()
    }

    pub fn re(&self) -> &QScalar {
        &self.re
    }

    pub fn im(&self) -> &QScalar {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussScalar { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussScalar { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn neg(&self) -> Self {
        GaussScalar { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussScalar {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn conj(&self) -> Self {
        GaussScalar { re: self.re.clone(), im: self.im.neg() }
    }

    /// Field inverse; the norm re^2 + im^2 vanishes only at zero since the
    /// base field is formally real.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let c = self.conj();
        GaussScalar { re: c.re.div(&norm), im: c.im.div(&norm) }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn mul_int(&self, v: i64) -> Self {
        GaussScalar { re: self.re.mul_int(v), im: self.im.mul_int(v) }
    }

    /// i^k for any integer k.
    pub fn i_pow(kvars: usize, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(kvars),
            1 => Self::i(kvars),
            2 => Self::one(kvars).neg(),
            _ => Self::i(kvars).neg(),
        }
    }

    pub fn q_derivative(&self, idx: usize) -> Self {
        GaussScalar { re: self.re.q_derivative(idx), im: self.im.q_derivative(idx) }
    }

    pub fn eval(&self, q: &[f64]) -> Complex64 {
        Complex64::new(self.re.eval(q), self.im.eval(q))
    }

    pub fn to_text(&self) -> String {
        if self.im.is_zero() {
            return self.re.to_text();
        }
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if self.im.neg().is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", self.im.to_text_atom())
        };
        if self.re.is_zero() {
            return im_part;
        }
        match im_part.strip_prefix('-') {
            Some(tail) => format!("{} - {}", self.re.to_text(), tail),
            None => format!("{} + {}", self.re.to_text(), im_part),
        }
    }

    /// Rendering safe inside a product.
    pub fn to_text_atom(&self) -> String {
        if self.im.is_zero() {
            self.re.to_text_atom()
        } else if self.re.is_zero() {
            let s = self.to_text();
            if s == "i" || s == "-i" {
                s
            } else {
                format!("({s})")
            }
        } else {
            format!("({})", self.to_text())
        }
    }

    pub fn is_negative_term(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative_term()
        } else if self.re.is_zero() {
            self.im.is_negative_term()
        } else {
            false
        }
    }
}

impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squares_to_minus_one() {
        let i = GaussScalar::i(0);
        assert_eq!(i.mul(&i), GaussScalar::from_int(0, -1));
        assert_eq!(GaussScalar::i_pow(0, -1), i.neg());
    }

    #[test]
    fn division() {
        let a = GaussScalar::new(QScalar::from_int(1, 1), QScalar::var(1, 0));
        let b = a.div(&a);
        assert!(b.is_one());
    }

    #[test]
    fn rendering() {
        let i = GaussScalar::i(1);
        let q = GaussScalar::from_real(QScalar::var(1, 0));
        assert_eq!(i.to_text(), "i");
        assert_eq!(i.neg().to_text(), "-i");
        assert_eq!(q.add(&i).to_text(), "q1 + i");
        assert_eq!(q.mul(&i).to_text(), "q1*i");
    }
}
