//! Exact scalars over the three coordinate fields of the face charts:
//! the rationals (squares), Q(√3) (triangles) and Q(ζ₅) (pentagons).
//!
//! Fields never coerce into one another. The operator impls on references
//! panic on mixed fields, since every value inside one solid lives in that
//! solid's field; [`arith`] and the `try_*` methods report the mismatch instead.

mod cyclo5;
mod sqrt3;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use cyclo5::{Cyclo5, INITIAL_SIGN_BITS};
pub use sqrt3::QSqrt3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rational,
    Sqrt3,
    Cyclo5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        self.as_i8().cmp(&0)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i8() * rhs.as_i8() {
            0 => Sign::Zero,
            1 => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("mixed fields: {0:?} and {1:?}")]
    MixedFields(FieldKind, FieldKind),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not real")]
    NotReal,
    #[error("Q(ζ₅) points have no real coordinate pair")]
    NoCoordinates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(BigRational),
    Sqrt3(QSqrt3),
    Cyclo5(Cyclo5),
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl ExactScalar {
    pub fn field(&self) -> FieldKind {
        match self {
            ExactScalar::Rational(_) => FieldKind::Rational,
            ExactScalar::Sqrt3(_) => FieldKind::Sqrt3,
            ExactScalar::Cyclo5(_) => FieldKind::Cyclo5,
        }
    }

    /// Embeds a rational into the given field.
    pub fn from_rational(field: FieldKind, r: BigRational) -> Self {
        match field {
            FieldKind::Rational => ExactScalar::Rational(r),
            FieldKind::Sqrt3 => ExactScalar::Sqrt3(QSqrt3::from_rational(r)),
            FieldKind::Cyclo5 => ExactScalar::Cyclo5(Cyclo5::from_rational(r)),
        }
    }

    pub fn zero(field: FieldKind) -> Self {
        Self::from_rational(field, BigRational::zero())
    }

    pub fn one(field: FieldKind) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_zero(),
            ExactScalar::Sqrt3(v) => v.is_zero(),
            ExactScalar::Cyclo5(v) => v.is_zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            ExactScalar::Cyclo5(v) => v.is_real(),
            _ => true,
        }
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            ExactScalar::Rational(r) => Some(r.clone()),
            ExactScalar::Sqrt3(v) => v.b.is_zero().then(|| v.a.clone()),
            ExactScalar::Cyclo5(v) => {
                let c = v.coeffs();
                c[1..].iter().all(Zero::is_zero).then(|| c[0].clone())
            }
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            ExactScalar::Rational(r) => (!r.is_zero()).then(|| ExactScalar::Rational(r.recip())),
            ExactScalar::Sqrt3(v) => v.inv().map(ExactScalar::Sqrt3),
            ExactScalar::Cyclo5(v) => v.inv().map(ExactScalar::Cyclo5),
        }
    }

    /// Complex conjugate; the identity on the two real fields.
    pub fn conj(&self) -> Self {
        match self {
            ExactScalar::Cyclo5(v) => ExactScalar::Cyclo5(v.conj()),
            other => other.clone(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::MixedFields(self.field(), other.field()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        let inv = other.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Exact sign of a real value.
    pub fn sign(&self) -> Result<Sign, ScalarError> {
        match self {
            ExactScalar::Rational(r) => Ok(Sign::of_rational(r)),
            ExactScalar::Sqrt3(v) => Ok(v.sign()),
            ExactScalar::Cyclo5(v) => v.sign_real().ok_or(ScalarError::NotReal),
        }
    }

    /// Compares two real values of the same field.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(self.try_sub(other)?.sign()?.to_ordering())
    }

    /// Real part as a float, for rendering only.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactScalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ExactScalar::Sqrt3(v) => v.to_f64(),
            ExactScalar::Cyclo5(v) => v.to_complex_f64().0,
        }
    }
}

/// Field arithmetic with explicit error reporting.
pub fn arith(a: &ExactScalar, b: &ExactScalar, op: ArithOp) -> Result<ExactScalar, ScalarError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

pub fn sign_real(a: &ExactScalar) -> Result<Sign, ScalarError> {
    a.sign()
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                match (self, rhs) {
                    (ExactScalar::Rational(a), ExactScalar::Rational(b)) => {
                        ExactScalar::Rational(a.$method(b))
                    }
                    (ExactScalar::Sqrt3(a), ExactScalar::Sqrt3(b)) => {
                        ExactScalar::Sqrt3(a.$method(b))
                    }
                    (ExactScalar::Cyclo5(a), ExactScalar::Cyclo5(b)) => {
                        ExactScalar::Cyclo5(a.$method(b))
                    }
                    (a, b) => panic!("mixed fields: {:?} and {:?}", a.field(), b.field()),
                }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Rational(a) => ExactScalar::Rational(-a),
            ExactScalar::Sqrt3(a) => ExactScalar::Sqrt3(-a),
            ExactScalar::Cyclo5(a) => ExactScalar::Cyclo5(-a),
        }
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Writes `Σ cᵢ·uᵢ`, skipping zero terms and unit coefficients.
fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(&BigRational, &str)]) -> fmt::Result {
    let mut first = true;
    for (c, unit) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
            (true, false) => {}
        }
        let magnitude = c.abs();
        if unit.is_empty() {
            write!(f, "{}", format_rational(&magnitude))?;
        } else if magnitude.is_one() {
            write!(f, "{unit}")?;
        } else {
            write!(f, "{}·{unit}", format_rational(&magnitude))?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{}", format_rational(r)),
            ExactScalar::Sqrt3(v) => write_terms(f, &[(&v.a, ""), (&v.b, "√3")]),
            ExactScalar::Cyclo5(v) => {
                let c = v.coeffs();
                write_terms(
                    f,
                    &[(&c[0], ""), (&c[1], "ζ"), (&c[2], "ζ²"), (&c[3], "ζ³")],
                )
            }
        }
    }
}

/// Wire form: a rational is one string (`"13"`, `"13/4"`); a Q(√3) value is
/// the pair `["a", "b"]`; a Q(ζ₅) value is the four power-basis coefficients.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarWire {
    Rational(String),
    Coeffs(Vec<String>),
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = match self {
            ExactScalar::Rational(r) => ScalarWire::Rational(format_rational(r)),
            ExactScalar::Sqrt3(v) => {
                ScalarWire::Coeffs(vec![format_rational(&v.a), format_rational(&v.b)])
            }
            ExactScalar::Cyclo5(v) => {
                ScalarWire::Coeffs(v.coeffs().iter().map(format_rational).collect())
            }
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let parse = |s: &str| {
            parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
        };
        match ScalarWire::deserialize(d)? {
            ScalarWire::Rational(s) => Ok(ExactScalar::Rational(parse(&s)?)),
            ScalarWire::Coeffs(v) => match v.as_slice() {
                [a, b] => Ok(ExactScalar::Sqrt3(QSqrt3::new(parse(a)?, parse(b)?))),
                [c0, c1, c2, c3] => Ok(ExactScalar::Cyclo5(Cyclo5::new([
                    parse(c0)?,
                    parse(c1)?,
                    parse(c2)?,
                    parse(c3)?,
                ]))),
                _ => Err(D::Error::custom("expected 2 or 4 coefficients")),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_skips_zero_terms() {
        let half = rational(1, 2);
        assert_eq!(
            ExactScalar::Sqrt3(QSqrt3::new(half.clone(), integer(-1))).to_string(),
            "1/2 - √3"
        );
        assert_eq!(
            ExactScalar::Sqrt3(QSqrt3::new(integer(0), integer(3))).to_string(),
            "3·√3"
        );
        assert_eq!(ExactScalar::Cyclo5(Cyclo5::one()).to_string(), "1");
        assert_eq!(
            ExactScalar::Cyclo5(Cyclo5::from_integers([0, -1, 0, 2])).to_string(),
            "-ζ + 2·ζ³"
        );
        assert_eq!(ExactScalar::Cyclo5(Cyclo5::zero()).to_string(), "0");
    }

    fn s3(a: i64, b: i64) -> ExactScalar {
        ExactScalar::Sqrt3(QSqrt3::new(integer(a), integer(b)))
    }

    #[test]
    fn sqrt3_products() {
        let one = s3(1, 0);
        let r3 = s3(0, 1);
        assert_eq!(arith(&one, &r3, ArithOp::Mul).unwrap(), r3);
        assert_eq!(arith(&r3, &r3, ArithOp::Mul).unwrap(), s3(3, 0));
    }

    #[test]
    fn cyclotomic_sum_vanishes() {
        let s = ExactScalar::Cyclo5(Cyclo5::from_integers([1, 1, 1, 1]));
        let z4 = ExactScalar::Cyclo5(Cyclo5::zeta_pow(4));
        assert!(arith(&s, &z4, ArithOp::Add).unwrap().is_zero());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sign_real(&s3(2, -1)).unwrap(), Sign::Positive);
        let golden = ExactScalar::Cyclo5(Cyclo5::from_integers([-1, 0, -1, -1]));
        assert_eq!(sign_real(&golden).unwrap(), Sign::Positive);
        assert_eq!(
            sign_real(&ExactScalar::zero(FieldKind::Cyclo5)).unwrap(),
            Sign::Zero
        );
        assert_eq!(
            sign_real(&ExactScalar::zero(FieldKind::Rational)).unwrap(),
            Sign::Zero
        );
        let zeta = ExactScalar::Cyclo5(Cyclo5::zeta_pow(1));
        assert_eq!(sign_real(&zeta), Err(ScalarError::NotReal));
    }

    #[test]
    fn errors() {
        let a = ExactScalar::Rational(integer(1));
        let b = s3(1, 0);
        assert_eq!(
            arith(&a, &b, ArithOp::Add),
            Err(ScalarError::MixedFields(
                FieldKind::Rational,
                FieldKind::Sqrt3
            ))
        );
        assert_eq!(
            arith(&a, &ExactScalar::zero(FieldKind::Rational), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn wire_form() {
        let r = ExactScalar::Rational(rational(13, 4));
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"13/4\"");
        let v = s3(13, 0);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[\"13\",\"0\"]");
        for x in [
            r,
            v,
            ExactScalar::Cyclo5(Cyclo5::from_integers([1, -2, 0, 3])),
        ] {
            let back: ExactScalar =
                serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            assert_eq!(back, x);
        }
    }
}
