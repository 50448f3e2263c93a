use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rational_to_f64, rational_to_string, Evaluate, Field};
use crate::error::Result;

/// Element `a + b√2 + c√3 + d√6` of `Q(√2, √3)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd([BigRational; 4]);

const UNITS: [&str; 4] = ["", "sqrt2", "sqrt3", "sqrt6"];

impl Surd {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self([a, b, c, d])
    }

    pub fn from_i64s(v: [i64; 4]) -> Self {
        Self(v.map(|n| BigRational::from_integer(n.into())))
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.0
    }

    pub fn sqrt2() -> Self {
        Self::from_i64s([0, 1, 0, 0])
    }

    pub fn sqrt3() -> Self {
        Self::from_i64s([0, 0, 1, 0])
    }

    pub fn sqrt6() -> Self {
        Self::from_i64s([0, 0, 0, 1])
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.0[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.0[0].clone())
    }

    pub fn to_f64(&self) -> f64 {
        let r = [1.0, 2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt()];
        self.0
            .iter()
            .zip(r)
            .map(|(c, r)| rational_to_f64(c) * r)
            .sum()
    }

    /// Conjugate under `√3 ↦ -√3`.
    fn conj3(&self) -> Self {
        let [a, b, c, d] = &self.0;
        Self([a.clone(), b.clone(), -c, -d])
    }

    /// Conjugate under `√2 ↦ -√2`.
    fn conj2(&self) -> Self {
        let [a, b, c, d] = &self.0;
        Self([a.clone(), -b, c.clone(), -d])
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let x3 = self.conj3();
        // self·conj3 lies in Q(√2)
        let g = self * &x3;
        let g2 = g.conj2();
        let n = (&g * &g2).as_rational().expect("norm is rational");
        let inv = n.recip();
        Some(&(&x3 * &g2) * &Self::from_rational(&inv))
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Self::from_i64s([0; 4])
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl One for Surd {
    fn one() -> Self {
        Self::from_i64s([1, 0, 0, 0])
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, r: &Surd) -> Surd {
        Surd(std::array::from_fn(|i| &self.0[i] + &r.0[i]))
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, r: &Surd) -> Surd {
        Surd(std::array::from_fn(|i| &self.0[i] - &r.0[i]))
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, r: &Surd) -> Surd {
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &r.0;
        let k = |n: i64| BigRational::from_integer(n.into());
        Surd([
            a0 * b0 + k(2) * a1 * b1 + k(3) * a2 * b2 + k(6) * a3 * b3,
            a0 * b1 + a1 * b0 + k(3) * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + k(2) * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd(std::array::from_fn(|i| -&self.0[i]))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Surd {
            type Output = Surd;
            fn $m(self, rhs: Surd) -> Surd {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl Field for Surd {
    const EXACT: bool = true;

    fn try_inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn from_rational(r: &BigRational) -> Self {
        let z = BigRational::zero();
        Self([r.clone(), z.clone(), z.clone(), z])
    }

    fn symbol(name: &str) -> Option<Self> {
        match name {
            "sqrt2" => Some(Self::sqrt2()),
            "sqrt3" => Some(Self::sqrt3()),
            "sqrt6" => Some(Self::sqrt6()),
            _ => None,
        }
    }

    fn to_expr(&self) -> String {
        let mut out = String::new();
        for (c, unit) in self.0.iter().zip(UNITS) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (unit, mag.is_one()) {
                ("", _) => out.push_str(&rational_to_string(&mag)),
                (_, true) => out.push_str(unit),
                _ => {
                    out.push_str(&rational_to_string(&mag));
                    out.push('*');
                    out.push_str(unit);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Evaluate for Surd {
    fn eval_at(&self, _theta: f64) -> Result<f64> {
        Ok(self.to_f64())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({})", self.to_expr())
    }
}
