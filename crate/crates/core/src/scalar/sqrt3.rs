use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Sign;

/// `a + b·√3` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSqrt3 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt3 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        // (a + b√3)(a − b√3) = a² − 3b², nonzero unless both vanish
        let norm = &self.a * &self.a - BigRational::from_integer(3.into()) * &self.b * &self.b;
        if norm.is_zero() {
            return None;
        }
        Some(Self {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        })
    }

    pub fn sign(&self) -> Sign {
        let sa = Sign::of_rational(&self.a);
        let sb = Sign::of_rational(&self.b);
        match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (s, t) if s == t => s,
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = BigRational::from_integer(3.into()) * &self.b * &self.b;
                // a² vs 3b² decides which term dominates
                let dominant = if a2 > b2 { sa } else { sb };
                if a2 == b2 {
                    Sign::Zero
                } else {
                    dominant
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

impl<'a> Add<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn add(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3 {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, rhs: &QSqrt3) -> QSqrt3 {
        let three = BigRational::from_integer(3.into());
        QSqrt3 {
            a: &self.a * &rhs.a + three * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3 {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sign_by_rational_comparison() {
        assert_eq!(QSqrt3::new(q(2), q(-1)).sign(), Sign::Positive);
        assert_eq!(QSqrt3::new(q(1), q(-1)).sign(), Sign::Negative);
        assert_eq!(QSqrt3::new(q(-2), q(1)).sign(), Sign::Negative);
        assert_eq!(QSqrt3::new(q(-1), q(1)).sign(), Sign::Positive);
        assert_eq!(QSqrt3::zero().sign(), Sign::Zero);
        assert_eq!(QSqrt3::new(q(0), q(-3)).sign(), Sign::Negative);
    }

    #[test]
    fn inverse_of_sqrt3() {
        let r3 = QSqrt3::new(q(0), q(1));
        let inv = r3.inv().unwrap();
        assert_eq!(&r3 * &inv, QSqrt3::one());
        assert!(QSqrt3::zero().inv().is_none());
    }
}
