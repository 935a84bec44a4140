//! The cyclotomic field Q(ζ) with ζ = exp(2πi/5), in the power basis {1, ζ, ζ², ζ³}.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::Sign;

/// Precision of the first interval evaluation in [`Cyclo5::sign_real`].
pub const INITIAL_SIGN_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo5 {
    c: [BigRational; 4],
}

fn reduce(mut t: [BigRational; 5]) -> Cyclo5 {
    // ζ⁴ = −1 − ζ − ζ² − ζ³
    let c4 = std::mem::take(&mut t[4]);
    let [c0, c1, c2, c3, _] = t;
    Cyclo5 {
        c: [c0 - &c4, c1 - &c4, c2 - &c4, c3 - c4],
    }
}

impl Cyclo5 {
    pub fn new(c: [BigRational; 4]) -> Self {
        Self { c }
    }

    pub fn from_integers(c: [i64; 4]) -> Self {
        Self {
            c: c.map(|v| BigRational::from_integer(v.into())),
        }
    }

    /// Canonicalizes a combination of all five powers `1, ζ, …, ζ⁴`.
    pub fn from_power_basis5(t: [BigRational; 5]) -> Self {
        reduce(t)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self {
            c: [
                r,
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let mut t: [BigRational; 5] = Default::default();
        t[k.rem_euclid(5) as usize] = BigRational::one();
        reduce(t)
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Applies the automorphism `ζ ↦ ζ^m`.
    pub fn galois(&self, m: usize) -> Self {
        let mut t: [BigRational; 5] = Default::default();
        for (k, ck) in self.c.iter().enumerate() {
            t[(m * k) % 5] += ck;
        }
        reduce(t)
    }

    /// Complex conjugation, `ζ ↦ ζ⁴`.
    pub fn conj(&self) -> Self {
        self.galois(4)
    }

    /// A value is real iff it equals its conjugate; in this basis that means
    /// `c1 = 0` and `c2 = c3`.
    pub fn is_real(&self) -> bool {
        self.c[1].is_zero() && self.c[2] == self.c[3]
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let others = &(&self.galois(2) * &self.galois(3)) * &self.galois(4);
        let norm = (self * &others).c[0].clone();
        debug_assert!(!norm.is_zero());
        Some(Self {
            c: others.c.map(|v| v / &norm),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            c: self.c.clone().map(|v| v * r),
        }
    }

    /// The value `A + B√5` of a real element, as the rational pair `(A, B)`.
    fn real_part_sqrt5(&self) -> (BigRational, BigRational) {
        // Re ζ = (√5 − 1)/4, Re ζ² = Re ζ³ = −(√5 + 1)/4
        let quarter = BigRational::new(1.into(), 4.into());
        let s23 = &self.c[2] + &self.c[3];
        let a = &self.c[0] - (&self.c[1] + &s23) * &quarter;
        let b = (&self.c[1] - &s23) * quarter;
        (a, b)
    }

    /// Sign of a real element. Returns `None` if the value is not real.
    ///
    /// Zero is decided exactly from the coefficients. A nonzero value is
    /// evaluated with an interval enclosure of √5 at 64 bits, doubling the
    /// precision until the interval excludes zero.
    pub fn sign_real(&self) -> Option<Sign> {
        if !self.is_real() {
            return None;
        }
        if self.is_zero() {
            return Some(Sign::Zero);
        }
        let (a, b) = self.real_part_sqrt5();
        let mut bits = INITIAL_SIGN_BITS;
        loop {
            let (lo, hi) = sqrt5_enclosure(bits);
            let at_lo = Sign::of_rational(&(&a + &b * &lo));
            let at_hi = Sign::of_rational(&(&a + &b * &hi));
            if at_lo == at_hi && at_lo != Sign::Zero {
                return Some(at_lo);
            }
            bits *= 2;
        }
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        self.c
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, ck)| {
                let v = ck.to_f64().unwrap_or(f64::NAN);
                let ang = std::f64::consts::TAU * k as f64 / 5.0;
                (re + v * ang.cos(), im + v * ang.sin())
            })
    }
}

/// Rational bounds `lo < √5 < hi` with `hi − lo = 2^-bits`.
fn sqrt5_enclosure(bits: u32) -> (BigRational, BigRational) {
    static CACHE: OnceLock<Vec<BigUint>> = OnceLock::new();
    let levels = CACHE.get_or_init(|| {
        (0..4)
            .map(|i| floor_sqrt5(INITIAL_SIGN_BITS << i))
            .collect()
    });
    let floor = match (bits / INITIAL_SIGN_BITS).checked_ilog2() {
        Some(i) if INITIAL_SIGN_BITS << i == bits && (i as usize) < levels.len() => {
            levels[i as usize].clone()
        }
        _ => floor_sqrt5(bits),
    };
    let denom = BigInt::one() << bits;
    let n = BigInt::from(floor);
    (
        BigRational::new(n.clone(), denom.clone()),
        BigRational::new(n + 1, denom),
    )
}

fn floor_sqrt5(bits: u32) -> BigUint {
    (BigUint::from(5u32) << (2 * bits as usize)).sqrt()
}

impl<'a> Add<&'a Cyclo5> for &'a Cyclo5 {
    type Output = Cyclo5;
    fn add(self, rhs: &Cyclo5) -> Cyclo5 {
        Cyclo5 {
            c: std::array::from_fn(|k| &self.c[k] + &rhs.c[k]),
        }
    }
}

impl<'a> Sub<&'a Cyclo5> for &'a Cyclo5 {
    type Output = Cyclo5;
    fn sub(self, rhs: &Cyclo5) -> Cyclo5 {
        Cyclo5 {
            c: std::array::from_fn(|k| &self.c[k] - &rhs.c[k]),
        }
    }
}

impl<'a> Mul<&'a Cyclo5> for &'a Cyclo5 {
    type Output = Cyclo5;
    fn mul(self, rhs: &Cyclo5) -> Cyclo5 {
        // multiply in Q[x]/(x⁵ − 1), then eliminate ζ⁴
        let mut t: [BigRational; 5] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    t[(i + j) % 5] += a * b;
                }
            }
        }
        reduce(t)
    }
}

impl Neg for &Cyclo5 {
    type Output = Cyclo5;
    fn neg(self) -> Cyclo5 {
        Cyclo5 {
            c: std::array::from_fn(|k| -&self.c[k]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_relation() {
        let s = Cyclo5::from_integers([1, 1, 1, 1]);
        let z4 = Cyclo5::zeta_pow(4);
        assert_eq!(z4, Cyclo5::from_integers([-1, -1, -1, -1]));
        assert!((&s + &z4).is_zero());
        assert_eq!(Cyclo5::zeta_pow(5), Cyclo5::one());
        assert_eq!(&Cyclo5::zeta_pow(2) * &Cyclo5::zeta_pow(3), Cyclo5::one());
    }

    #[test]
    fn golden_ratio_sign() {
        // ζ + ζ⁴ = 2cos 72°
        let v = &Cyclo5::zeta_pow(1) + &Cyclo5::zeta_pow(4);
        assert_eq!(v, Cyclo5::from_integers([-1, 0, -1, -1]));
        assert_eq!(v.sign_real(), Some(Sign::Positive));
        let w = &Cyclo5::zeta_pow(2) + &Cyclo5::zeta_pow(3);
        assert_eq!(w.sign_real(), Some(Sign::Negative));
        assert_eq!(Cyclo5::zeta_pow(1).sign_real(), None);
    }

    #[test]
    fn sign_needs_escalation_near_zero() {
        // F(n+1) + F(n)·(ζ²+ζ³) = F(n+1) − F(n)·φ, which shrinks like φ^-n
        let (fa, fb): (BigRational, BigRational) = {
            let (mut x, mut y) = (BigInt::one(), BigInt::one());
            for _ in 0..120 {
                let z = &x + &y;
                x = y;
                y = z;
            }
            (BigRational::from_integer(y), BigRational::from_integer(x))
        };
        // value = F(122) − F(121)·φ = ψ^121 with ψ = −1/φ, about −10^-25
        let v = Cyclo5::new([fa, BigRational::zero(), fb.clone(), fb]);
        assert_eq!(v.sign_real(), Some(Sign::Negative));
    }

    #[test]
    fn inverse_round_trip() {
        let x = Cyclo5::from_integers([3, -1, 4, 1]);
        assert_eq!(&x * &x.inv().unwrap(), Cyclo5::one());
    }
}
