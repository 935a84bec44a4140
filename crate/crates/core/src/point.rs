//! Points and vectors of a chart plane, treated as complex numbers so that
//! rotations are multiplications.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{Cyclo5, ExactScalar, FieldKind, QSqrt3, ScalarError, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PlanarPoint {
    Rational {
        x: BigRational,
        y: BigRational,
    },
    Sqrt3 {
        x: QSqrt3,
        y: QSqrt3,
    },
    /// `x + iy` as a single element of Q(ζ₅).
    Cyclo5(Cyclo5),
}

fn mixed(a: &PlanarPoint, b: &PlanarPoint) -> ! {
    panic!("mixed fields: {:?} and {:?}", a.field(), b.field())
}

impl PlanarPoint {
    pub fn rational(x: BigRational, y: BigRational) -> Self {
        PlanarPoint::Rational { x, y }
    }

    pub fn sqrt3(x: QSqrt3, y: QSqrt3) -> Self {
        PlanarPoint::Sqrt3 { x, y }
    }

    /// Builds a point from two real scalars of the same (non-cyclotomic) field.
    pub fn from_xy(x: ExactScalar, y: ExactScalar) -> Result<Self, ScalarError> {
        match (x, y) {
            (ExactScalar::Rational(x), ExactScalar::Rational(y)) => {
                Ok(PlanarPoint::Rational { x, y })
            }
            (ExactScalar::Sqrt3(x), ExactScalar::Sqrt3(y)) => Ok(PlanarPoint::Sqrt3 { x, y }),
            (ExactScalar::Cyclo5(_), ExactScalar::Cyclo5(_)) => Err(ScalarError::NoCoordinates),
            (x, y) => Err(ScalarError::MixedFields(x.field(), y.field())),
        }
    }

    pub fn field(&self) -> FieldKind {
        match self {
            PlanarPoint::Rational { .. } => FieldKind::Rational,
            PlanarPoint::Sqrt3 { .. } => FieldKind::Sqrt3,
            PlanarPoint::Cyclo5(_) => FieldKind::Cyclo5,
        }
    }

    pub fn zero(field: FieldKind) -> Self {
        match field {
            FieldKind::Rational => PlanarPoint::Rational {
                x: Zero::zero(),
                y: Zero::zero(),
            },
            FieldKind::Sqrt3 => PlanarPoint::Sqrt3 {
                x: QSqrt3::zero(),
                y: QSqrt3::zero(),
            },
            FieldKind::Cyclo5 => PlanarPoint::Cyclo5(Cyclo5::zero()),
        }
    }

    /// The point `1 + 0i`, the identity rotation.
    pub fn one(field: FieldKind) -> Self {
        match field {
            FieldKind::Rational => PlanarPoint::Rational {
                x: One::one(),
                y: Zero::zero(),
            },
            FieldKind::Sqrt3 => PlanarPoint::Sqrt3 {
                x: QSqrt3::one(),
                y: QSqrt3::zero(),
            },
            FieldKind::Cyclo5 => PlanarPoint::Cyclo5(Cyclo5::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PlanarPoint::Rational { x, y } => x.is_zero() && y.is_zero(),
            PlanarPoint::Sqrt3 { x, y } => x.is_zero() && y.is_zero(),
            PlanarPoint::Cyclo5(z) => z.is_zero(),
        }
    }

    /// Cartesian coordinates, for the two real-coordinate fields.
    pub fn xy(&self) -> Option<(ExactScalar, ExactScalar)> {
        match self {
            PlanarPoint::Rational { x, y } => Some((
                ExactScalar::Rational(x.clone()),
                ExactScalar::Rational(y.clone()),
            )),
            PlanarPoint::Sqrt3 { x, y } => {
                Some((ExactScalar::Sqrt3(x.clone()), ExactScalar::Sqrt3(y.clone())))
            }
            PlanarPoint::Cyclo5(_) => None,
        }
    }

    /// Complex product.
    pub fn cmul(&self, other: &Self) -> Self {
        match (self, other) {
            (PlanarPoint::Rational { x: a, y: b }, PlanarPoint::Rational { x: c, y: d }) => {
                PlanarPoint::Rational {
                    x: a * c - b * d,
                    y: a * d + b * c,
                }
            }
            (PlanarPoint::Sqrt3 { x: a, y: b }, PlanarPoint::Sqrt3 { x: c, y: d }) => {
                PlanarPoint::Sqrt3 {
                    x: &(a * c) - &(b * d),
                    y: &(a * d) + &(b * c),
                }
            }
            (PlanarPoint::Cyclo5(a), PlanarPoint::Cyclo5(b)) => PlanarPoint::Cyclo5(a * b),
            (a, b) => mixed(a, b),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            PlanarPoint::Rational { x, y } => PlanarPoint::Rational {
                x: x.clone(),
                y: -y,
            },
            PlanarPoint::Sqrt3 { x, y } => PlanarPoint::Sqrt3 {
                x: x.clone(),
                y: -y,
            },
            PlanarPoint::Cyclo5(z) => PlanarPoint::Cyclo5(z.conj()),
        }
    }

    /// Complex inverse; `None` at the origin.
    pub fn cinv(&self) -> Option<Self> {
        match self {
            PlanarPoint::Cyclo5(z) => z.inv().map(PlanarPoint::Cyclo5),
            _ => {
                let inv = self.norm_sq().inv()?;
                Some(self.conj().scale(&inv))
            }
        }
    }

    /// Multiplication by a real scalar of the same field.
    pub fn scale(&self, s: &ExactScalar) -> Self {
        match (self, s) {
            (PlanarPoint::Rational { x, y }, ExactScalar::Rational(s)) => {
                PlanarPoint::Rational { x: x * s, y: y * s }
            }
            (PlanarPoint::Sqrt3 { x, y }, ExactScalar::Sqrt3(s)) => {
                PlanarPoint::Sqrt3 { x: x * s, y: y * s }
            }
            (PlanarPoint::Cyclo5(z), ExactScalar::Cyclo5(s)) => PlanarPoint::Cyclo5(z * s),
            (p, s) => panic!("mixed fields: {:?} and {:?}", p.field(), s.field()),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        match self {
            PlanarPoint::Rational { x, y } => PlanarPoint::Rational { x: x * r, y: y * r },
            PlanarPoint::Sqrt3 { x, y } => {
                let s = QSqrt3::from_rational(r.clone());
                PlanarPoint::Sqrt3 {
                    x: x * &s,
                    y: y * &s,
                }
            }
            PlanarPoint::Cyclo5(z) => PlanarPoint::Cyclo5(z.scale(r)),
        }
    }

    pub fn half(&self) -> Self {
        self.scale_rational(&BigRational::new(1.into(), 2.into()))
    }

    /// Euclidean dot product, a real value in the field.
    pub fn dot(&self, other: &Self) -> ExactScalar {
        match (self, other) {
            (PlanarPoint::Rational { x: a, y: b }, PlanarPoint::Rational { x: c, y: d }) => {
                ExactScalar::Rational(a * c + b * d)
            }
            (PlanarPoint::Sqrt3 { x: a, y: b }, PlanarPoint::Sqrt3 { x: c, y: d }) => {
                ExactScalar::Sqrt3(&(a * c) + &(b * d))
            }
            (PlanarPoint::Cyclo5(u), PlanarPoint::Cyclo5(v)) => {
                // Re(ū v) = (ū v + u v̄) / 2
                let w = &u.conj() * v;
                ExactScalar::Cyclo5((&w + &w.conj()).scale(&BigRational::new(1.into(), 2.into())))
            }
            (a, b) => mixed(a, b),
        }
    }

    /// A positive multiple of the cross product `u × v`, real and in the field.
    ///
    /// The multiple is 1 for the rational and √3 fields. In Q(ζ₅) the cross
    /// product `Im(ū v)` is not itself a field element, so the value returned
    /// is `4·sin 72°·Im(ū v)`. Signs and ratios of cross products are exact in
    /// every field.
    pub fn cross(&self, other: &Self) -> ExactScalar {
        match (self, other) {
            (PlanarPoint::Rational { x: a, y: b }, PlanarPoint::Rational { x: c, y: d }) => {
                ExactScalar::Rational(a * d - b * c)
            }
            (PlanarPoint::Sqrt3 { x: a, y: b }, PlanarPoint::Sqrt3 { x: c, y: d }) => {
                ExactScalar::Sqrt3(&(a * d) - &(b * c))
            }
            (PlanarPoint::Cyclo5(u), PlanarPoint::Cyclo5(v)) => {
                // (w − w̄)(ζ⁴ − ζ) = (2i Im w)(−2i sin 72°)
                let w = &u.conj() * v;
                let scale = &Cyclo5::zeta_pow(4) - &Cyclo5::zeta_pow(1);
                ExactScalar::Cyclo5(&(&w - &w.conj()) * &scale)
            }
            (a, b) => mixed(a, b),
        }
    }

    pub fn norm_sq(&self) -> ExactScalar {
        self.dot(self)
    }

    /// Exact lexicographic order on `(x, y)`.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        let diff = self - other;
        let one = PlanarPoint::one(self.field());
        let by_x = diff.dot(&one).sign().expect("dot products are real");
        if by_x != Sign::Zero {
            return by_x.to_ordering();
        }
        one.cross(&diff)
            .sign()
            .expect("cross products are real")
            .to_ordering()
    }

    /// Floating-point coordinates, for rendering only.
    pub fn to_f64(&self) -> (f64, f64) {
        match self {
            PlanarPoint::Cyclo5(z) => z.to_complex_f64(),
            _ => {
                let (x, y) = self.xy().expect("real coordinates");
                (x.to_f64(), y.to_f64())
            }
        }
    }
}

/// Orientation of the pair `(u, v)`: the sign of `u × v`.
pub fn orient(u: &PlanarPoint, v: &PlanarPoint) -> Result<Sign, ScalarError> {
    if u.field() != v.field() {
        return Err(ScalarError::MixedFields(u.field(), v.field()));
    }
    u.cross(v).sign()
}

pub(crate) fn orient_same(u: &PlanarPoint, v: &PlanarPoint) -> Sign {
    u.cross(v).sign().expect("cross products are real")
}

macro_rules! pointop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a PlanarPoint> for &'a PlanarPoint {
            type Output = PlanarPoint;
            fn $method(self, rhs: &PlanarPoint) -> PlanarPoint {
                match (self, rhs) {
                    (
                        PlanarPoint::Rational { x: a, y: b },
                        PlanarPoint::Rational { x: c, y: d },
                    ) => PlanarPoint::Rational {
                        x: a.$method(c),
                        y: b.$method(d),
                    },
                    (PlanarPoint::Sqrt3 { x: a, y: b }, PlanarPoint::Sqrt3 { x: c, y: d }) => {
                        PlanarPoint::Sqrt3 {
                            x: a.$method(c),
                            y: b.$method(d),
                        }
                    }
                    (PlanarPoint::Cyclo5(a), PlanarPoint::Cyclo5(b)) => {
                        PlanarPoint::Cyclo5(a.$method(b))
                    }
                    (a, b) => mixed(a, b),
                }
            }
        }
    };
}

pointop!(Add, add);
pointop!(Sub, sub);

impl Neg for &PlanarPoint {
    type Output = PlanarPoint;
    fn neg(self) -> PlanarPoint {
        match self {
            PlanarPoint::Rational { x, y } => PlanarPoint::Rational { x: -x, y: -y },
            PlanarPoint::Sqrt3 { x, y } => PlanarPoint::Sqrt3 { x: -x, y: -y },
            PlanarPoint::Cyclo5(z) => PlanarPoint::Cyclo5(-z),
        }
    }
}

impl fmt::Display for PlanarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.xy() {
            Some((x, y)) => write!(f, "({x}, {y})"),
            None => match self {
                PlanarPoint::Cyclo5(z) => write!(f, "[{}]", ExactScalar::Cyclo5(z.clone())),
                _ => unreachable!(),
            },
        }
    }
}

/// Wire form: `{"x": .., "y": ..}` for real-coordinate fields and
/// `{"z": [c0, c1, c2, c3]}` for Q(ζ₅).
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
enum PointWire {
    Xy { x: ExactScalar, y: ExactScalar },
    Z { z: ExactScalar },
}

impl Serialize for PlanarPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = match self {
            PlanarPoint::Cyclo5(z) => PointWire::Z {
                z: ExactScalar::Cyclo5(z.clone()),
            },
            _ => {
                let (x, y) = self.xy().expect("real coordinates");
                PointWire::Xy { x, y }
            }
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanarPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match PointWire::deserialize(d)? {
            PointWire::Xy { x, y } => PlanarPoint::from_xy(x, y).map_err(D::Error::custom),
            PointWire::Z {
                z: ExactScalar::Cyclo5(z),
            } => Ok(PlanarPoint::Cyclo5(z)),
            PointWire::Z { .. } => Err(D::Error::custom("expected cyclotomic coefficients")),
        }
    }
}
