//! Rational functions `num/den` in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::FieldElem;
use super::poly::{poly_gcd, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` and normalizes it.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den)?;
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.inv()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(FieldElem::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `X^n` for any integer `n`.
    pub fn x_pow(n: i64) -> Self {
        if n >= 0 {
            Self::from_poly(Poly::monomial(FieldElem::one(), n as usize))
        } else {
            RatFunc { num: Poly::one(), den: Poly::monomial(FieldElem::one(), n.unsigned_abs() as usize) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Nonzero constant of `K`, if the function is one.
    pub fn as_constant(&self) -> Option<FieldElem> {
        if self.is_poly() && self.num.is_constant() {
            Some(self.num.eval0())
        } else {
            None
        }
    }

    /// No pole at `X = 0`, i.e. membership in `K[X]_(X)`.
    pub fn is_local(&self) -> bool {
        !self.den.eval0().is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `κ·X^j·self`, cancelling powers of `X` without a full gcd.
    pub fn scale_shift(&self, kappa: &FieldElem, j: i64) -> Self {
        if self.is_zero() || kappa.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = (self.num.scale(kappa), self.den.clone());
        if j >= 0 {
            let k = (j as usize).min(den.ord().unwrap_or(0));
            den = den.unshift(k);
            num = num.shift(j as usize - k);
        } else {
            let n = j.unsigned_abs() as usize;
            let k = n.min(num.ord().unwrap_or(0));
            num = num.unshift(k);
            den = den.shift(n - k);
        }
        RatFunc { num, den }
    }

    pub fn eval0(&self) -> Result<FieldElem> {
        eval_at_zero(self)
    }

    pub fn ord0(&self) -> Result<i64> {
        ord_at_zero(self)
    }
}

/// `X`-adic valuation.
pub fn ord_at_zero(f: &RatFunc) -> Result<i64> {
    let n = f.num.ord().ok_or(Error::ZeroValuation)?;
    let d = f.den.ord().expect("nonzero denominator");
    Ok(n as i64 - d as i64)
}

/// Value at `X = 0`; fails when `f` has a pole there.
pub fn eval_at_zero(f: &RatFunc) -> Result<FieldElem> {
    let d0 = f.den.eval0();
    if d0.is_zero() {
        return Err(Error::PoleAtZero(ord_at_zero(f)?));
    }
    f.num.eval0().checked_div(&d0)
}

fn build(num: Poly, den: Poly) -> RatFunc {
    RatFunc::new(num, den).expect("nonzero denominator")
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return build(&self.num + &rhs.num, self.den.clone());
        }
        build(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        build(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
