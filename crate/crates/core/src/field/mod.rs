//! Coefficient fields for the Bell-operator algebra.
//!
//! Three concrete fields are used throughout the crate:
//!
//! * [`Scalar`]: the exact field `Q(st)[ct, u]` where `st = sin θ`,
//!   `ct = cos θ` and `u = 1/sqrt(1 + sin²2θ)`. Identities that hold for every
//!   angle are verified here.
//! * [`Surd`]: the biquadratic field `Q(√2, √3)`, exact at the two
//!   distinguished angles `π/4` (CHSH) and `π/8`.
//! * `f64`: numeric mode.
//!
//! Algorithms that only need field arithmetic are written once against the
//! [`Field`] trait.

mod ratfun;
mod ratpoly;
mod scalar;
mod surd;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Result;

pub use ratfun::RatFun;
pub use ratpoly::{RatPoly, DEGREE_CAP};
pub use scalar::Scalar;
pub use surd::Surd;

/// Ring operations needed by polynomial coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// A commutative field with a canonical embedding of the rationals and a
/// textual form understood by the polynomial parser.
pub trait Field: Coefficient {
    /// `true` when equality is decided exactly.
    const EXACT: bool;

    fn try_inv(&self) -> Option<Self>;

    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// Named constants recognised by the parser (`st`, `sqrt2`, ...).
    fn symbol(_name: &str) -> Option<Self> {
        None
    }

    /// Expression text that the parser maps back to `self`.
    fn to_expr(&self) -> String;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|inv| self.clone() * inv)
    }
}

/// Floating-point evaluation at a concrete angle.
pub trait Evaluate {
    fn eval_at(&self, theta: f64) -> Result<f64>;
}

macro_rules! float_field {
    ($($t:ty)*) => {$(
        impl Field for $t {
            const EXACT: bool = false;

            fn try_inv(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / self)
                }
            }

            fn from_rational(r: &BigRational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn to_expr(&self) -> String {
                let a = self.abs();
                if a != 0.0 && !(1e-4..1e15).contains(&a) {
                    format!("{self:e}")
                } else {
                    format!("{self}")
                }
            }
        }

        impl Evaluate for $t {
            fn eval_at(&self, _theta: f64) -> Result<f64> {
                Ok(*self as f64)
            }
        }
    )*};
}

float_field!(f32 f64);

impl Field for BigRational {
    const EXACT: bool = true;

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_expr(&self) -> String {
        rational_to_string(self)
    }
}

impl Evaluate for BigRational {
    fn eval_at(&self, _theta: f64) -> Result<f64> {
        Ok(rational_to_f64(self))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `n` or `n/d` with the sign on the numerator.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact value of a decimal literal such as `-1.25e-3`.
pub(crate) fn parse_decimal(t: &str) -> Option<BigRational> {
    use num_bigint::BigInt;
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}0").parse().ok()?;
    let digits = digits / BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(digits);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// Fields containing `√2` and `√3`.
pub trait Radicals: Field {
    fn root2() -> Self;
    fn root3() -> Self;
}

impl Radicals for f64 {
    fn root2() -> Self {
        std::f64::consts::SQRT_2
    }

    fn root3() -> Self {
        3f64.sqrt()
    }
}

impl Radicals for Surd {
    fn root2() -> Self {
        Surd::sqrt2()
    }

    fn root3() -> Self {
        Surd::sqrt3()
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
