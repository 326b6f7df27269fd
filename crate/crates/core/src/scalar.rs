//! Real scalar abstraction shared by every numeric routine in the crate.
//!
//! Numeric code is written once against [`Real`] and instantiated either with
//! plain `f64` (fast prefilters, small test boxes) or with [`BigFixed`], an
//! arbitrary precision binary fixed-point number used wherever rounding has to
//! be certified.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Bits per decimal digit.
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// A real number type usable by the solver.
///
/// Precision is carried by values, not by the type: constants are created
/// against a [`Real::Precision`] obtained from an existing value or from a
/// digit count.
pub trait Real:
    Clone + fmt::Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    type Precision: Copy + fmt::Debug + Send + Sync;

    fn precision_for_digits(digits: u32) -> Self::Precision;
    fn precision(&self) -> Self::Precision;
    /// Decimal digits carried after the radix point (f64: significant digits).
    fn digits_of(prec: Self::Precision) -> u32;

    fn from_bigint(n: &BigInt, prec: Self::Precision) -> Self;
    fn from_i64(n: i64, prec: Self::Precision) -> Self {
        Self::from_bigint(&BigInt::from(n), prec)
    }
    fn from_ratio(n: i64, d: i64, prec: Self::Precision) -> Self {
        Self::from_i64(n, prec) / Self::from_i64(d, prec)
    }

    fn sqrt(&self) -> Self;
    fn cbrt(&self) -> Self;
    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn to_f64(&self) -> f64;

    fn round_to_bigint(&self) -> BigInt;
    fn floor_to_bigint(&self) -> BigInt;
    fn ceil_to_bigint(&self) -> BigInt {
        -(-self.clone()).floor_to_bigint()
    }

    /// A bound on the absolute error accumulated by a short chain of
    /// operations producing a value of this magnitude.
    fn error_bound(&self) -> Self;

    /// The value nudged away from zero by more than its error bound.
    fn outward(&self) -> Self {
        let e = self.error_bound();
        if *self < Self::zero() {
            self.clone() - e
        } else {
            self.clone() + e
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

/// Binary fixed-point real `mant · 2^(-bits)`.
///
/// Operations between values of different scales use the finer scale, so
/// `zero()` and `one()` (scale 0) mix freely with working-precision values.
#[derive(Clone)]
pub struct BigFixed {
    mant: BigInt,
    bits: u32,
}

impl BigFixed {
    pub fn bits_for_digits(digits: u32) -> u32 {
        (f64::from(digits) * LOG2_10).ceil() as u32 + 16
    }

    pub fn from_bigint_bits(n: &BigInt, bits: u32) -> Self {
        BigFixed {
            mant: n << bits,
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn rescaled(&self, bits: u32) -> BigInt {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (bits - self.bits),
            Ordering::Less => &self.mant >> (self.bits - bits),
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let bits = self.bits.max(other.bits);
        (self.rescaled(bits), other.rescaled(bits), bits)
    }

    /// Decimal rendering with `places` digits after the point (truncated).
    pub fn to_decimal_string(&self, places: usize) -> String {
        let neg = self.mant.is_negative();
        let scaled = (self.mant.abs() * BigInt::from(10u32).pow(places as u32)) >> self.bits;
        let mut s = scaled.to_string();
        if places > 0 {
            if s.len() <= places {
                s = format!("{}{}", "0".repeat(places + 1 - s.len()), s);
            }
            s.insert(s.len() - places, '.');
        }
        if neg && scaled.sign() != Sign::NoSign {
            s.insert(0, '-');
        }
        s
    }
}

impl fmt::Debug for BigFixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for BigFixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().unwrap_or(20);
        f.write_str(&self.to_decimal_string(places))
    }
}

impl PartialEq for BigFixed {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.aligned(other);
        a == b
    }
}

impl PartialOrd for BigFixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b, _) = self.aligned(other);
        Some(a.cmp(&b))
    }
}

impl Add for BigFixed {
    type Output = BigFixed;
    fn add(self, rhs: Self) -> Self {
        let (a, b, bits) = self.aligned(&rhs);
        BigFixed { mant: a + b, bits }
    }
}

impl Sub for BigFixed {
    type Output = BigFixed;
    fn sub(self, rhs: Self) -> Self {
        let (a, b, bits) = self.aligned(&rhs);
        BigFixed { mant: a - b, bits }
    }
}

impl Mul for BigFixed {
    type Output = BigFixed;
    fn mul(self, rhs: Self) -> Self {
        let bits = self.bits.max(rhs.bits);
        let drop = self.bits.min(rhs.bits);
        BigFixed {
            mant: (self.mant * rhs.mant) >> drop,
            bits,
        }
    }
}

impl Div for BigFixed {
    type Output = BigFixed;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.mant.is_zero(), "BigFixed division by zero");
        let bits = self.bits.max(rhs.bits);
        let num = self.mant << (bits + rhs.bits - self.bits);
        BigFixed {
            mant: num.div_floor(&rhs.mant),
            bits,
        }
    }
}

impl Rem for BigFixed {
    type Output = BigFixed;
    fn rem(self, rhs: Self) -> Self {
        let (a, b, bits) = self.aligned(&rhs);
        BigFixed { mant: a % b, bits }
    }
}

impl Neg for BigFixed {
    type Output = BigFixed;
    fn neg(self) -> Self {
        BigFixed {
            mant: -self.mant,
            bits: self.bits,
        }
    }
}

impl Zero for BigFixed {
    fn zero() -> Self {
        BigFixed {
            mant: BigInt::zero(),
            bits: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl One for BigFixed {
    fn one() -> Self {
        BigFixed {
            mant: BigInt::one(),
            bits: 0,
        }
    }
}

impl Num for BigFixed {
    type FromStrRadixErr = num_bigint::ParseBigIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        Ok(BigFixed {
            mant: BigInt::from_str_radix(s, radix)?,
            bits: 0,
        })
    }
}

impl Real for BigFixed {
    type Precision = u32;

    fn precision_for_digits(digits: u32) -> u32 {
        Self::bits_for_digits(digits)
    }
    fn precision(&self) -> u32 {
        self.bits
    }
    fn digits_of(prec: u32) -> u32 {
        (f64::from(prec.saturating_sub(16)) / LOG2_10).floor() as u32
    }
    fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::from_bigint_bits(n, prec)
    }

    fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "sqrt of negative BigFixed");
        BigFixed {
            mant: (&self.mant << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    fn cbrt(&self) -> Self {
        let r = (self.mant.abs() << (2 * self.bits)).nth_root(3);
        BigFixed {
            mant: if self.mant.is_negative() { -r } else { r },
            bits: self.bits,
        }
    }

    fn abs(&self) -> Self {
        BigFixed {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    fn to_f64(&self) -> f64 {
        let len = self.mant.bits() as i64;
        let excess = (len - 60).max(0);
        let head = (&self.mant >> excess as usize).to_f64().unwrap_or(0.0);
        let exp = excess - i64::from(self.bits);
        head * 2f64.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    fn round_to_bigint(&self) -> BigInt {
        if self.bits == 0 {
            return self.mant.clone();
        }
        let half = BigInt::one() << (self.bits - 1);
        (&self.mant + half) >> self.bits
    }

    fn floor_to_bigint(&self) -> BigInt {
        &self.mant >> self.bits
    }

    fn error_bound(&self) -> Self {
        // 2^-(bits-24) absolute plus the same relative slack for large values
        let bits = self.bits.max(32);
        let abs_part = BigInt::one() << 24u32;
        let rel_part = self.rescaled(bits).abs() >> (bits - 24);
        BigFixed {
            mant: abs_part + rel_part,
            bits,
        }
    }
}

impl Real for f64 {
    type Precision = ();

    fn precision_for_digits(_digits: u32) {}
    fn precision(&self) {}
    fn digits_of(_prec: ()) -> u32 {
        15
    }
    fn from_bigint(n: &BigInt, _prec: ()) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn from_i64(n: i64, _prec: ()) -> Self {
        n as f64
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn cbrt(&self) -> Self {
        f64::cbrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn round_to_bigint(&self) -> BigInt {
        BigInt::from_f64(self.round()).unwrap_or_default()
    }
    fn floor_to_bigint(&self) -> BigInt {
        BigInt::from_f64(self.floor()).unwrap_or_default()
    }
    fn error_bound(&self) -> Self {
        f64::abs(*self) * 1e-12 + 1e-12
    }
}

/// Modulus of a complex number.
pub fn cabs<T: Real>(z: &Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

/// Principal square root, computed without cancellation.
pub fn csqrt<T: Real>(z: &Complex<T>) -> Complex<T> {
    let zero = T::zero();
    if z.re == zero && z.im == zero {
        return Complex::new(zero.clone(), zero);
    }
    let two = T::one() + T::one();
    let r = cabs(z);
    if z.re >= zero {
        let t = ((r + z.re.clone()) / two.clone()).sqrt();
        if t == zero {
            return Complex::new(zero.clone(), zero);
        }
        let im = z.im.clone() / (two * t.clone());
        Complex::new(t, im)
    } else {
        let t = ((r - z.re.clone()) / two.clone()).sqrt();
        if t == zero {
            return Complex::new(zero.clone(), zero);
        }
        let re = z.im.abs() / (two * t.clone());
        let im = if z.im < zero { -t } else { t };
        Complex::new(re, im)
    }
}

/// Embeds an integer into the complex numbers at a given precision.
pub fn cint<T: Real>(n: i64, prec: T::Precision) -> Complex<T> {
    Complex::new(T::from_i64(n, prec), T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fx(n: i64, d: i64) -> BigFixed {
        BigFixed::from_ratio(n, d, BigFixed::bits_for_digits(60))
    }

    #[test]
    fn fixed_basic_arithmetic() {
        let a = fx(1, 3);
        let b = fx(2, 3);
        let s = a.clone() + b.clone();
        assert!((s.clone() - BigFixed::one()).abs() < fx(1, 1_000_000_000_000));
        let p = a * b;
        assert!((p.to_f64() - 2.0 / 9.0).abs() < 1e-15);
        assert_eq!(fx(7, 1).round_to_bigint(), BigInt::from(7));
        assert_eq!(fx(-7, 2).floor_to_bigint(), BigInt::from(-4));
        assert_eq!(fx(-7, 2).ceil_to_bigint(), BigInt::from(-3));
        assert_eq!(fx(-7, 2).round_to_bigint(), BigInt::from(-3));
    }

    #[test]
    fn fixed_roots() {
        let two = fx(2, 1);
        let r = two.sqrt();
        let err = (r.clone() * r - fx(2, 1)).abs();
        assert!(err < fx(1, 1) / BigFixed::from_bigint(&BigInt::from(10u32).pow(55), 0));
        let c = fx(27, 1).cbrt();
        assert!((c.to_f64() - 3.0).abs() < 1e-15);
        assert!((fx(-8, 1).cbrt().to_f64() + 2.0).abs() < 1e-15);
    }

    #[test]
    fn mixed_scale_values_combine() {
        let x = fx(5, 4);
        assert_eq!((x.clone() + BigFixed::one()).to_f64(), 2.25);
        assert_eq!((BigFixed::one() / x).to_f64(), 0.8);
        assert!(BigFixed::zero() < fx(1, 1000));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(fx(-5, 4).to_decimal_string(3), "-1.250");
        assert_eq!(fx(1, 8).to_decimal_string(2), "0.12");
        assert_eq!(format!("{:.1}", fx(123, 1)), "123.0");
    }

    #[test]
    fn complex_sqrt_squares_back() {
        let prec = BigFixed::bits_for_digits(60);
        for (re, im) in [(3, 4), (-3, 4), (-3, -4), (0, -2), (-9, 0), (5, 0)] {
            let z = Complex::new(BigFixed::from_i64(re, prec), BigFixed::from_i64(im, prec));
            let s = csqrt(&z);
            assert!(s.re >= BigFixed::zero());
            let back = s.clone() * s;
            assert!(cabs(&(back - z)).to_f64() < 1e-50);
            let zf = Complex::new(re as f64, im as f64);
            let sf = csqrt(&zf);
            assert!((sf * sf - zf).norm() < 1e-12);
        }
    }
}
