//! Exact elements of ℚ and of imaginary or real quadratic fields ℚ(√d).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `true` when `d` has no square factor other than 1. Zero is rejected.
pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// An element `rat + surd·√d` with exact rational parts.
///
/// The tag `d = 1` encodes plain ℚ, in which case `surd` is always zero.
/// Elements tagged with `d = 1` are promoted silently into any quadratic
/// field when combined with one; two different non-trivial tags are an error.
#[derive(Clone, Debug)]
pub struct FieldElem {
    rat: BigRational,
    surd: BigRational,
    d: i64,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat
            && self.surd == other.surd
            && (self.surd.is_zero() || self.d == other.d)
    }
}

impl Eq for FieldElem {}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rat.hash(state);
        self.surd.hash(state);
        self.effective_tag().hash(state);
    }
}

/// Field arithmetic selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Conj,
    Norm,
}

/// Dispatching form of the scalar operations; `b` is ignored by the unary ones.
pub fn field_arith(a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Conj => Ok(a.conj()),
        FieldOp::Norm => Ok(FieldElem::from_rational(a.norm())),
    }
}

impl FieldElem {
    pub fn new(rat: BigRational, surd: BigRational, d: i64) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        if d == 1 && !surd.is_zero() {
            return Err(Error::Unsupported("sqrt(1) tag with a surd part".into()));
        }
        Ok(FieldElem { rat, surd, d })
    }

    pub fn from_rational(q: BigRational) -> Self {
        FieldElem { rat: q, surd: BigRational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, m: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(m)))
    }

    /// √d itself. `d` must be squarefree and different from 1.
    pub fn sqrt(d: i64) -> Result<Self> {
        if d == 1 {
            return Ok(Self::one());
        }
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rat(&self) -> &BigRational {
        &self.rat
    }

    pub fn surd(&self) -> &BigRational {
        &self.surd
    }

    /// Discriminant tag; 1 when the value lies in ℚ and carries no field tag.
    pub fn tag(&self) -> i64 {
        self.d
    }

    /// Re-tag into ℚ(√d). Fails when the element already lives in another field.
    pub fn in_field(&self, d: i64) -> Result<Self> {
        if d == 1 && !self.surd.is_zero() {
            return Err(Error::FieldMismatch(self.d, 1));
        }
        let t = unify(self.effective_tag(), d)?;
        Ok(FieldElem { rat: self.rat.clone(), surd: self.surd.clone(), d: t })
    }

    fn effective_tag(&self) -> i64 {
        if self.surd.is_zero() {
            1
        } else {
            self.d
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// Integer value when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_rational() && self.rat.is_integer() {
            Some(self.rat.to_integer())
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.join(other)?;
        Ok(FieldElem { rat: &self.rat + &other.rat, surd: &self.surd + &other.surd, d })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.join(other)?;
        Ok(FieldElem { rat: &self.rat - &other.rat, surd: &self.surd - &other.surd, d })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.join(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let rat = &self.rat * &other.rat + &self.surd * &other.surd * dd;
        let surd = &self.rat * &other.surd + &self.surd * &other.rat;
        Ok(FieldElem { rat, surd, d })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(FieldElem { rat: &self.rat / &n, surd: -(&self.surd / &n), d: self.d })
    }

    pub fn conj(&self) -> Self {
        FieldElem { rat: self.rat.clone(), surd: -self.surd.clone(), d: self.d }
    }

    /// `rat² − d·surd²`.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        &self.rat * &self.rat - dd * &self.surd * &self.surd
    }

    /// Trace `2·rat`.
    pub fn trace(&self) -> BigRational {
        &self.rat + &self.rat
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElem { rat: &self.rat * q, surd: &self.surd * q, d: self.d }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = FieldElem { rat: BigRational::one(), surd: BigRational::zero(), d: self.d };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Least common denominator of both rational parts.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.rat.denom().lcm(self.surd.denom())
    }

    fn join(&self, other: &Self) -> Result<i64> {
        let t = unify(self.effective_tag(), other.effective_tag())?;
        if t != 1 {
            return Ok(t);
        }
        // Both values are rational; keep whatever field tag they agree on.
        Ok(unify(self.d, other.d).unwrap_or(1))
    }
}

fn unify(a: i64, b: i64) -> Result<i64> {
    if a == b || b == 1 {
        Ok(a)
    } else if a == 1 {
        Ok(b)
    } else {
        Err(Error::FieldMismatch(a, b))
    }
}

fn expect<T>(r: Result<T>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("field arithmetic: {e}"),
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        expect(self.checked_add(rhs))
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        expect(self.checked_sub(rhs))
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        expect(self.checked_mul(rhs))
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { rat: -self.rat.clone(), surd: -self.surd.clone(), d: self.d }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl FieldElem {
    /// `true` when printing needs parentheses to act as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        !self.rat.is_zero() && !self.surd.is_zero()
    }
}

impl fmt::Display for FieldElem {
    /// Prints in the expression syntax understood by the CLI parser,
    /// e.g. `3/2`, `-sqrt(-5)`, `1/6-1/6*sqrt(-5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", fmt_rational(&self.rat));
        }
        let root = format!("sqrt({})", self.d);
        let abs = self.surd.abs();
        let surd_term = if abs.is_one() { root } else { format!("{}*{}", fmt_rational(&abs), root) };
        if self.rat.is_zero() {
            if self.surd.is_negative() {
                write!(f, "-{surd_term}")
            } else {
                write!(f, "{surd_term}")
            }
        } else {
            let sign = if self.surd.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rational(&self.rat), sign, surd_term)
        }
    }
}
