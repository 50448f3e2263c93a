use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatPoly;
use crate::error::{Error, Result};

/// Rational function `num/den` in `st`, kept in lowest terms with a monic
/// denominator so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: RatPoly,
    den: RatPoly,
}

impl RatFun {
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(num: RatPoly) -> Self {
        Self {
            num,
            den: RatPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(RatPoly::constant(c))
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.constant_term())
    }

    fn normalized(num: RatPoly, den: RatPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        if den.is_constant() {
            let k = den.constant_term().recip();
            return Self {
                num: num.scale(&k),
                den: RatPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_rem(&g).expect("gcd is nonzero").0,
                den.div_rem(&g).expect("gcd is nonzero").0,
            )
        };
        let lead = den.leading().expect("nonzero denominator").recip();
        Self {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    /// Re-run normalization; a no-op on values built through the public API.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::normalized(self.num.scale(k), self.den.clone())
    }

    pub fn eval_f64(&self, x: f64) -> Option<f64> {
        let d = self.den.eval_f64(x);
        (d != 0.0).then(|| self.num.eval_f64(x) / d)
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        Self {
            num: RatPoly::zero(),
            den: RatPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        Self::from_poly(RatPoly::one())
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        RatFun::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_monic_denominator() {
        // (2 st^2 - 2) / (4 st - 4) = (st + 1)/2
        let f = RatFun::new(
            RatPoly::from_i64s(&[-2, 0, 2]),
            RatPoly::from_i64s(&[-4, 4]),
        )
        .unwrap();
        assert!(f.is_polynomial());
        assert_eq!(
            f.num(),
            &RatPoly::from_i64s(&[1, 1]).scale(&crate::field::rat(1, 2))
        );
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFun::new(RatPoly::one(), RatPoly::zero()).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let f = RatFun::new(RatPoly::from_i64s(&[1, 3]), RatPoly::from_i64s(&[2, 0, 1])).unwrap();
        assert_eq!(&f * &f.try_inv().unwrap(), RatFun::one());
        assert_eq!(f.renormalize(), f);
    }
}
