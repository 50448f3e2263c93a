use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{rational_to_string, Evaluate, Field, RatFun, RatPoly};
use crate::error::{Error, Result};

/// Element `a + b·ct + p·u + q·ct·u` of the field `Q(st)[ct, u]` with
/// `ct² = 1 - st²` and `u² = 1/(1 + 4st² - 4st⁴)`.
///
/// At a concrete angle θ, `st = sin θ`, `ct = cos θ` and
/// `u = 1/sqrt(1 + sin²2θ)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ScalarJson", try_from = "ScalarJson")]
pub struct Scalar {
    a: RatFun,
    b: RatFun,
    p: RatFun,
    q: RatFun,
}

/// `1 - st²`, the value of `ct²`.
fn ct_squared() -> RatFun {
    RatFun::from_poly(RatPoly::from_i64s(&[1, 0, -1]))
}

/// `1 + 4st² - 4st⁴`, the value of `1/u²`.
fn u_radicand() -> RatPoly {
    RatPoly::from_i64s(&[1, 0, 4, 0, -4])
}

fn u_squared() -> RatFun {
    RatFun::new(RatPoly::one(), u_radicand()).expect("nonzero radicand")
}

impl Scalar {
    pub fn new(a: RatFun, b: RatFun, p: RatFun, q: RatFun) -> Self {
        Self { a, b, p, q }
    }

    pub fn from_ratfun(a: RatFun) -> Self {
        Self::new(a, RatFun::zero(), RatFun::zero(), RatFun::zero())
    }

    pub fn from_poly(p: RatPoly) -> Self {
        Self::from_ratfun(RatFun::from_poly(p))
    }

    /// Components `(a, b, p, q)` in the basis `{1, ct, u, ct·u}`.
    pub fn components(&self) -> [&RatFun; 4] {
        [&self.a, &self.b, &self.p, &self.q]
    }

    pub fn st() -> Self {
        Self::from_poly(RatPoly::var())
    }

    pub fn ct() -> Self {
        Self::new(
            RatFun::zero(),
            RatFun::one(),
            RatFun::zero(),
            RatFun::zero(),
        )
    }

    pub fn u() -> Self {
        Self::new(
            RatFun::zero(),
            RatFun::zero(),
            RatFun::one(),
            RatFun::zero(),
        )
    }

    /// `cos 2θ = 1 - 2st²`.
    pub fn c() -> Self {
        Self::from_poly(RatPoly::from_i64s(&[1, 0, -2]))
    }

    /// `sin 2θ = 2·st·ct`.
    pub fn s() -> Self {
        Self::new(
            RatFun::zero(),
            RatFun::from_poly(RatPoly::from_i64s(&[0, 2])),
            RatFun::zero(),
            RatFun::zero(),
        )
    }

    /// `sqrt(1 + s²) = 1/u = u·(1 + s²)`.
    pub fn sqrt_one_plus_s2() -> Self {
        Self::new(
            RatFun::zero(),
            RatFun::zero(),
            RatFun::from_poly(u_radicand()),
            RatFun::zero(),
        )
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.b.is_zero() && self.p.is_zero() && self.q.is_zero() {
            self.a.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(
            self.a.scale(k),
            self.b.scale(k),
            self.p.scale(k),
            self.q.scale(k),
        )
    }

    /// Renormalize every component; idempotent.
    pub fn normalize(&self) -> Self {
        Self::new(
            self.a.renormalize(),
            self.b.renormalize(),
            self.p.renormalize(),
            self.q.renormalize(),
        )
    }

    /// Inverse by conjugating over `u`, then over `ct`, leaving a norm in `Q(st)`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let c2 = ct_squared();
        let u2 = u_squared();
        // x = α + β·u with α = a + b·ct, β = p + q·ct.
        // γ = α² - u²·β² = g0 + g1·ct
        let g0 = &(&(&self.a * &self.a) + &(&c2 * &(&self.b * &self.b)))
            - &(&u2 * &(&(&self.p * &self.p) + &(&c2 * &(&self.q * &self.q))));
        let two = RatFun::constant(BigRational::from_integer(2.into()));
        let g1 = &two * &(&(&self.a * &self.b) - &(&u2 * &(&self.p * &self.q)));
        let norm = &(&g0 * &g0) - &(&c2 * &(&g1 * &g1));
        let inv_norm = norm.try_inv()?;
        // (α - β·u)(g0 - g1·ct) / norm
        let conj_u = Self::new(self.a.clone(), self.b.clone(), -&self.p, -&self.q);
        let conj_ct = Self::new(g0, -&g1, RatFun::zero(), RatFun::zero());
        Some(&(&conj_u * &conj_ct) * &Self::from_ratfun(inv_norm))
    }

    pub fn eval(&self, theta: f64) -> Result<f64> {
        let st = theta.sin();
        let ct = theta.cos();
        let s2 = (2.0 * theta).sin();
        let u = 1.0 / (1.0 + s2 * s2).sqrt();
        let ev = |f: &RatFun| f.eval_f64(st).ok_or(Error::Pole { theta });
        Ok(ev(&self.a)? + ev(&self.b)? * ct + ev(&self.p)? * u + ev(&self.q)? * ct * u)
    }
}

impl Evaluate for Scalar {
    fn eval_at(&self, theta: f64) -> Result<f64> {
        self.eval(theta)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self::from_ratfun(RatFun::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.p.is_zero() && self.q.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_ratfun(RatFun::one())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, r: &Scalar) -> Scalar {
        Scalar::new(
            &self.a + &r.a,
            &self.b + &r.b,
            &self.p + &r.p,
            &self.q + &r.q,
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, r: &Scalar) -> Scalar {
        Scalar::new(
            &self.a - &r.a,
            &self.b - &r.b,
            &self.p - &r.p,
            &self.q - &r.q,
        )
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, r: &Scalar) -> Scalar {
        let (a, b, p, q) = (&self.a, &self.b, &self.p, &self.q);
        let (a2, b2, p2, q2) = (&r.a, &r.b, &r.p, &r.q);
        // Cheap path: both operands in Q(st).
        if b.is_zero() && p.is_zero() && q.is_zero() {
            return Scalar::new(a * a2, a * b2, a * p2, a * q2);
        }
        if b2.is_zero() && p2.is_zero() && q2.is_zero() {
            return Scalar::new(a * a2, b * a2, p * a2, q * a2);
        }
        let c2 = ct_squared();
        let u2 = u_squared();
        let one = &(&(a * a2) + &(&c2 * &(b * b2))) + &(&u2 * &(&(p * p2) + &(&c2 * &(q * q2))));
        let ct = &(&(a * b2) + &(b * a2)) + &(&u2 * &(&(p * q2) + &(q * p2)));
        let u = &(&(a * p2) + &(p * a2)) + &(&c2 * &(&(b * q2) + &(q * b2)));
        let ctu = &(&(a * q2) + &(q * a2)) + &(&(b * p2) + &(p * b2));
        Scalar::new(one, ct, u, ctu)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b, -&self.p, -&self.q)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Field for Scalar {
    const EXACT: bool = true;

    fn try_inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn from_rational(r: &BigRational) -> Self {
        Self::from_ratfun(RatFun::constant(r.clone()))
    }

    fn symbol(name: &str) -> Option<Self> {
        match name {
            "st" => Some(Self::st()),
            "ct" => Some(Self::ct()),
            "u" => Some(Self::u()),
            "c" => Some(Self::c()),
            "s" => Some(Self::s()),
            _ => None,
        }
    }

    fn to_expr(&self) -> String {
        let mut parts = Vec::new();
        for (f, unit) in [
            (&self.a, ""),
            (&self.b, "ct"),
            (&self.p, "u"),
            (&self.q, "ct*u"),
        ] {
            if f.is_zero() {
                continue;
            }
            let coef = if f.is_polynomial() && f.num().is_constant() {
                rational_to_string(&f.num().constant_term())
            } else {
                format!("({f})")
            };
            parts.push(match (unit, coef.as_str()) {
                ("", _) => coef,
                (_, "1") => unit.to_string(),
                (_, "-1") => format!("-{unit}"),
                _ => format!("{coef}*{unit}"),
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.to_expr())
    }
}

/// Wire form: each slot is `[numerator, denominator]`, each polynomial a list
/// of decimal rationals, lowest degree first. Missing slots are zero.
#[derive(Serialize, Deserialize)]
struct ScalarJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<[Vec<String>; 2]>,
}

fn poly_to_strings(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(rational_to_string).collect()
}

fn slot_out(f: &RatFun) -> Option<[Vec<String>; 2]> {
    (!f.is_zero()).then(|| [poly_to_strings(f.num()), poly_to_strings(f.den())])
}

fn slot_in(s: Option<[Vec<String>; 2]>) -> Result<RatFun, String> {
    let Some([num, den]) = s else {
        return Ok(RatFun::zero());
    };
    let parse = |v: Vec<String>| -> Result<RatPoly, String> {
        let coeffs = v
            .iter()
            .map(|t| parse_rational(t).ok_or_else(|| format!("bad rational {t:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        RatPoly::new(coeffs).map_err(|e| e.to_string())
    };
    RatFun::new(parse(num)?, parse(den)?).map_err(|e| e.to_string())
}

/// Accepts `n`, `n/d` and plain decimals such as `-0.125`.
pub(crate) fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().ok()?;
        let d: num_bigint::BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    super::parse_decimal(t)
}

impl From<Scalar> for ScalarJson {
    fn from(x: Scalar) -> Self {
        Self {
            a: slot_out(&x.a),
            b: slot_out(&x.b),
            p: slot_out(&x.p),
            q: slot_out(&x.q),
        }
    }
}

impl TryFrom<ScalarJson> for Scalar {
    type Error = String;
    fn try_from(j: ScalarJson) -> Result<Self, String> {
        Ok(Scalar::new(
            slot_in(j.a)?,
            slot_in(j.b)?,
            slot_in(j.p)?,
            slot_in(j.q)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn defining_relations() {
        let ct = Scalar::ct();
        let st = Scalar::st();
        assert_eq!(&(&ct * &ct) + &(&st * &st), Scalar::one());
        let c = Scalar::c();
        let s = Scalar::s();
        assert_eq!(&(&c * &c) + &(&s * &s), Scalar::one());
        let r = Scalar::sqrt_one_plus_s2();
        assert_eq!(&r * &Scalar::u(), Scalar::one());
    }

    #[test]
    fn u_squared_lands_in_first_slot() {
        let u = Scalar::u();
        let uu = &u * &u;
        let [a, b, p, q] = uu.components();
        assert!(b.is_zero() && p.is_zero() && q.is_zero());
        assert_eq!(
            a.den(),
            &RatPoly::from_i64s(&[1, 0, 4, 0, -4]).scale(&rat(-1, 4))
        );
    }

    #[test]
    fn tilt_and_optimal_value_relation() {
        // 8 + 2α² = (4u)² with α = 2cu
        let two = Scalar::from_i64(2);
        let alpha = &(&two * &Scalar::c()) * &Scalar::u();
        let imax = &Scalar::from_i64(4) * &Scalar::u();
        assert_eq!(
            &Scalar::from_i64(8) + &(&two * &(&alpha * &alpha)),
            &imax * &imax
        );
    }

    #[test]
    fn inverse() {
        let x = &(&Scalar::c() + &Scalar::u()) + &(&Scalar::ct() * &Scalar::st());
        assert_eq!(&x * &x.inverse().unwrap(), Scalar::one());
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn eval_reference_values() {
        let pi4 = std::f64::consts::FRAC_PI_4;
        let pi8 = std::f64::consts::FRAC_PI_8;
        let imax = &Scalar::from_i64(4) * &Scalar::u();
        assert!((imax.eval(pi4).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        let alpha = &(&Scalar::from_i64(2) * &Scalar::c()) * &Scalar::u();
        assert!(alpha.eval(pi4).unwrap().abs() < 1e-12);
        assert!((alpha.eval(pi8).unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        let s = Scalar::s();
        assert!(((&s + &s).eval(pi8).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let x = &(&Scalar::c() * &Scalar::u()) + &Scalar::ratio(3, 7);
        let j = serde_json::to_string(&x).unwrap();
        let y: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(x, y);
        let z: Scalar = serde_json::from_str(r#"{"p":[["0.5"],["1"]]}"#).unwrap();
        assert_eq!(z, &Scalar::u() * &Scalar::ratio(1, 2));
    }
}
