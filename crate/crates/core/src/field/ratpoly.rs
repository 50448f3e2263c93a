use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rational_to_f64, rational_to_string};
use crate::error::{Error, Result};

/// Hard limit on polynomial degree. Certificate checks stay below 16; anything
/// near the cap means runaway growth somewhere upstream.
pub const DEGREE_CAP: usize = 64;

/// Dense univariate polynomial in `st` with rational coefficients, lowest
/// degree first. The coefficient vector never has trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<Self> {
        trim(&mut coeffs);
        if coeffs.len() > DEGREE_CAP + 1 {
            return Err(Error::DegreeOverflow {
                degree: coeffs.len() - 1,
                cap: DEGREE_CAP,
            });
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
        .expect("small literal polynomial")
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c]).expect("constant polynomial")
    }

    /// The formal variable `st`.
    pub fn var() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs
            .first()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let degree = self.coeffs.len() + rhs.coeffs.len() - 2;
        if degree > DEGREE_CAP {
            return Err(Error::DegreeOverflow {
                degree,
                cap: DEGREE_CAP,
            });
        }
        let mut out = vec![BigRational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let lead = divisor.leading()?.clone();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((
            Self::new(quot).expect("quotient degree bounded by dividend"),
            Self::new(rem).expect("remainder degree bounded by divisor"),
        ))
    }

    /// Scale so the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

fn trim(coeffs: &mut Vec<BigRational>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

fn add_coeffs(a: &[BigRational], b: &[BigRational], negate_b: bool) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(if negate_b { x - y } else { x + y });
    }
    RatPoly::new(out).expect("sum degree bounded by operands")
}

impl Zero for RatPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RatPoly {
    fn one() -> Self {
        Self::from_i64s(&[1])
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Display for RatPoly {
    /// `1 - 2*st^2`, or `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "st".to_string(),
                _ => format!("st^{k}"),
            };
            if k == 0 {
                f.write_str(&rational_to_string(&mag))?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{}", rational_to_string(&mag), var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn division_identity() {
        let a = RatPoly::from_i64s(&[3, -1, 0, 4, 2]);
        let b = RatPoly::from_i64s(&[1, 2, -1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = RatPoly::from_i64s(&[1, 1]); // 1 + st
        let g = RatPoly::from_i64s(&[-1, 0, 3]);
        let h = RatPoly::from_i64s(&[2, 0, 0, 5]);
        let d = (&f * &g).gcd(&(&f * &h));
        assert_eq!(d, f);
        assert!(d.leading().unwrap().is_one());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let mut c = vec![BigRational::zero(); DEGREE_CAP];
        c.push(rat(1, 1));
        let p = RatPoly::new(c).unwrap();
        assert!(p.checked_mul(&RatPoly::var()).is_err());
        let mut c = vec![BigRational::zero(); DEGREE_CAP + 1];
        c.push(rat(1, 1));
        assert!(RatPoly::new(c).is_err());
    }

    #[test]
    fn display() {
        let p = RatPoly::new(vec![rat(1, 1), rat(0, 1), rat(-2, 1), rat(3, 4)]).unwrap();
        assert_eq!(p.to_string(), "1 - 2*st^2 + 3/4*st^3");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }
}
