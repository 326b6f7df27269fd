//! Exact arithmetic in the ring of integers of an imaginary quadratic field
//! `M = Q(sqrt(m))`, `m < 0`, `m ≡ 1 (mod 4)`, with integral basis `(1, ω)`,
//! `ω = (1 + sqrt(m)) / 2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyfield::is_squarefree;
use crate::scalar::Real;

/// Shared field context: the parameter `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    m: i64,
}

impl QuadField {
    pub fn new(m: i64) -> Result<Self> {
        if m >= 0 || m.rem_euclid(4) != 1 || !is_squarefree(m)? {
            return Err(Error::InvalidFieldParameter(m));
        }
        Ok(QuadField { m })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn elt(&self, u: impl Into<BigInt>, v: impl Into<BigInt>) -> QuadElt {
        QuadElt {
            u: u.into(),
            v: v.into(),
            m: self.m,
        }
    }

    pub fn int(&self, u: impl Into<BigInt>) -> QuadElt {
        self.elt(u, 0)
    }

    pub fn zero(&self) -> QuadElt {
        self.elt(0, 0)
    }

    pub fn one(&self) -> QuadElt {
        self.elt(1, 0)
    }

    pub fn omega(&self) -> QuadElt {
        self.elt(0, 1)
    }

    /// The full unit group of `Z_M`.
    pub fn units(&self) -> Vec<QuadElt> {
        if self.m == -3 {
            vec![
                self.elt(1, 0),
                self.elt(-1, 0),
                self.elt(0, 1),
                self.elt(0, -1),
                self.elt(-1, 1),
                self.elt(1, -1),
            ]
        } else {
            vec![self.elt(1, 0), self.elt(-1, 0)]
        }
    }

    /// `ω` under the embedding `sqrt(m) ↦ i·sqrt(|m|)`.
    pub fn embedded_omega<T: Real>(&self, prec: T::Precision) -> Complex<T> {
        let two = T::from_i64(2, prec);
        let half = T::one() / two.clone();
        Complex::new(half, T::from_i64(-self.m, prec).sqrt() / two)
    }
}

/// `units(m)` for a bare parameter.
pub fn units(m: i64) -> Result<Vec<QuadElt>> {
    Ok(QuadField::new(m)?.units())
}

/// The element `u + vω` of `Z_M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElt {
    u: BigInt,
    v: BigInt,
    m: i64,
}

impl QuadElt {
    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn field(&self) -> QuadField {
        QuadField { m: self.m }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn check(&self, other: &QuadElt) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ContextMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(())
    }

    fn omega_sq_const(&self) -> BigInt {
        BigInt::from((self.m - 1) / 4)
    }

    pub fn checked_add(&self, other: &QuadElt) -> Result<QuadElt> {
        self.check(other)?;
        Ok(QuadElt {
            u: &self.u + &other.u,
            v: &self.v + &other.v,
            m: self.m,
        })
    }

    pub fn checked_sub(&self, other: &QuadElt) -> Result<QuadElt> {
        self.check(other)?;
        Ok(QuadElt {
            u: &self.u - &other.u,
            v: &self.v - &other.v,
            m: self.m,
        })
    }

    /// Product using `ω² = ω + (m-1)/4`.
    pub fn checked_mul(&self, other: &QuadElt) -> Result<QuadElt> {
        self.check(other)?;
        let vv = &self.v * &other.v;
        Ok(QuadElt {
            u: &self.u * &other.u + &vv * self.omega_sq_const(),
            v: &self.u * &other.v + &self.v * &other.u + vv,
            m: self.m,
        })
    }

    pub fn scale(&self, k: &BigInt) -> QuadElt {
        QuadElt {
            u: &self.u * k,
            v: &self.v * k,
            m: self.m,
        }
    }

    pub fn pow(&self, e: u32) -> QuadElt {
        (0..e).fold(self.field().one(), |acc, _| &acc * self)
    }

    /// Complex conjugation: `u + vω ↦ (u + v) − vω`, since `ω̄ = 1 − ω`.
    pub fn conj(&self) -> QuadElt {
        QuadElt {
            u: &self.u + &self.v,
            v: -&self.v,
            m: self.m,
        }
    }

    /// `N(u + vω) = u² + uv + v²(1−m)/4`.
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u + &self.u * &self.v + &self.v * &self.v * BigInt::from((1 - self.m) / 4)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Image under `ω ↦ omega`.
    pub fn embed<T: Real>(&self, omega: &Complex<T>) -> Complex<T> {
        let prec = omega.im.precision();
        let u = T::from_bigint(&self.u, prec);
        let v = T::from_bigint(&self.v, prec);
        Complex::new(u + v.clone() * omega.re.clone(), v * omega.im.clone())
    }
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else if self.u.is_zero() {
            write!(f, "{}ω", self.v)
        } else if self.v.is_negative() {
            write!(f, "{}-{}ω", self.u, -&self.v)
        } else {
            write!(f, "{}+{}ω", self.u, self.v)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadElt> for &QuadElt {
            type Output = QuadElt;
            fn $method(self, rhs: &QuadElt) -> QuadElt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadElt> for QuadElt {
            type Output = QuadElt;
            fn $method(self, rhs: QuadElt) -> QuadElt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadElt> for QuadElt {
            type Output = QuadElt;
            fn $method(self, rhs: &QuadElt) -> QuadElt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt {
            u: -&self.u,
            v: -&self.v,
            m: self.m,
        }
    }
}

impl Neg for QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cabs, BigFixed};
    use proptest::prelude::*;

    fn field(m: i64) -> QuadField {
        QuadField::new(m).unwrap()
    }

    #[test]
    fn addition() {
        let k = field(-3);
        assert_eq!(k.elt(1, 0) + k.elt(0, 1), k.elt(1, 1));
        let x = k.elt(7, -2);
        assert_eq!(&x + &k.zero(), x);
        assert_eq!(k.elt(2, 3) + k.elt(-2, -3), k.zero());
    }

    #[test]
    fn multiplication() {
        let k = field(-3);
        assert_eq!(k.omega() * k.omega(), k.elt(-1, 1));
        let x = k.elt(4, 9);
        assert_eq!(&x * &k.one(), x);
        assert_eq!(k.omega().norm(), BigInt::from(1));
        // ω⁴ = −ω for m = −3
        assert_eq!(k.omega().pow(4), k.elt(0, -1));
    }

    #[test]
    fn conjugation() {
        let k = field(-7);
        assert_eq!(k.omega().conj(), k.elt(1, -1));
        let x = k.elt(-3, 5);
        assert_eq!(x.conj().conj(), x);
        assert_eq!(k.int(5).conj(), k.int(5));
    }

    #[test]
    fn norms() {
        assert_eq!(field(-3).zero().norm(), BigInt::zero());
        assert_eq!(field(-3).omega().norm(), BigInt::from(1));
        assert_eq!(field(-7).elt(1, 1).norm(), BigInt::from(4));
    }

    #[test]
    fn unit_groups() {
        let u3 = units(-3).unwrap();
        assert_eq!(u3.len(), 6);
        let k7 = field(-7);
        assert_eq!(units(-7).unwrap(), vec![k7.one(), -k7.one()]);
        for m in [-3, -7, -11, -15, -19, -83] {
            let us = units(m).unwrap();
            assert!(us.iter().all(|e| e.norm() == BigInt::one()));
            // closed under products and inverses
            for x in &us {
                assert!(us.iter().any(|y| (x * y) == field(m).one()));
                for y in &us {
                    assert!(us.contains(&(x * y)));
                }
            }
        }
    }

    #[test]
    fn unit_predicate() {
        let k = field(-3);
        assert!(k.one().is_unit());
        assert!(!k.int(2).is_unit());
        assert!(k.omega().is_unit());
        assert!(!field(-7).omega().is_unit());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(QuadField::new(5).is_err());
        assert!(QuadField::new(-1).is_err());
        assert!(QuadField::new(-35).is_ok());
        assert!(QuadField::new(-25).is_err());
        assert!(QuadField::new(-27).is_err()); // ≡ 1 mod 4 but 9 | 27
        assert!(QuadField::new(-2).is_err());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let x = field(-3).one();
        let y = field(-7).one();
        assert_eq!(
            x.checked_add(&y),
            Err(Error::ContextMismatch { left: -3, right: -7 })
        );
        assert!(x.checked_mul(&y).is_err());
    }

    fn arb_elt(m: i64) -> impl Strategy<Value = QuadElt> {
        (-1000i64..1000, -1000i64..1000).prop_map(move |(u, v)| field(m).elt(u, v))
    }

    fn arb_pair() -> impl Strategy<Value = (QuadElt, QuadElt)> {
        prop::sample::select(vec![-3i64, -7, -11, -19, -35, -83])
            .prop_flat_map(|m| (arb_elt(m), arb_elt(m)))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative((x, y) in arb_pair()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert!(!x.norm().is_negative());
        }

        #[test]
        fn conj_is_a_ring_homomorphism((x, y) in arb_pair()) {
            prop_assert_eq!((&x + &y).conj(), x.conj() + y.conj());
            prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
            prop_assert_eq!(x.norm(), (&x * &x.conj()).u().clone());
        }

        #[test]
        fn product_matches_embedding((x, y) in arb_pair()) {
            let digits = 80;
            let prec = BigFixed::bits_for_digits(digits);
            let om = x.field().embedded_omega::<BigFixed>(prec);
            let exact = (&x * &y).embed(&om);
            let numeric = x.embed(&om) * y.embed(&om);
            let tol = BigFixed::from_i64(1, prec)
                / BigFixed::from_bigint(&BigInt::from(10).pow(digits - 20), prec);
            prop_assert!(cabs(&(exact - numeric)) < tol);
        }
    }
}
