//! Evaluation of parsed expressions against one pullback instance.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use starpull_core::base_domain::{ClassLabel, ExtDModule};
use starpull_core::class_groups::{alpha, beta, gamma};
use starpull_core::kernel::{FieldElem, RatFunc};
use starpull_core::pullback::{PullbackInstance, RawIdeal};
use starpull_core::star_ops::{star_eval, IdealValue, StarOp};
use starpull_core::{Error, Result};

use crate::parse::Expr;

/// Exponents beyond this are rejected rather than expanded.
const MAX_EXPONENT: i64 = 64;
/// Radicands are factored by trial division, so they are kept small.
const MAX_RADICAND: i64 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(RatFunc),
    Ideal(IdealValue),
    Label(ClassLabel),
    /// Result of `principal(...)`: a generator, or none.
    Generator(Option<RatFunc>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Ideal(_) => "ideal",
            Value::Label(_) => "class",
            Value::Generator(_) => "generator",
        }
    }

    pub fn display(&self, inst: &PullbackInstance) -> String {
        match self {
            Value::Scalar(f) => f.to_string(),
            Value::Ideal(i) => inst.value_display(i),
            Value::Label(l) => l.to_string(),
            Value::Generator(Some(g)) => g.to_string(),
            Value::Generator(None) => "none".into(),
        }
    }

    /// Expression text that evaluates back to this value, where one exists.
    pub fn expr(&self, inst: &PullbackInstance) -> Option<String> {
        match self {
            Value::Scalar(f) => Some(f.to_string()),
            Value::Ideal(i) => Some(inst.value_expr(i)),
            _ => None,
        }
    }

    pub fn to_json(&self, inst: &PullbackInstance) -> serde_json::Value {
        let side = match self {
            Value::Ideal(i) => Some(i.side().to_string()),
            _ => None,
        };
        json!({
            "instance": inst.name(),
            "kind": self.kind(),
            "side": side,
            "display": self.display(inst),
            "expr": self.expr(inst),
        })
    }
}

pub fn evaluate(e: &Expr, inst: &PullbackInstance) -> Result<Value> {
    match e {
        Expr::Int(n) => Ok(Value::Scalar(RatFunc::constant(big_int(n)))),
        Expr::Sqrt(n) => Ok(Value::Scalar(RatFunc::constant(inst.scalar(&sqrt(n)?)?))),
        Expr::X => Ok(Value::Scalar(RatFunc::x())),
        Expr::TRing => Ok(Value::Ideal(IdealValue::R(inst.t_as_ideal()))),
        Expr::MIdeal => Ok(Value::Ideal(IdealValue::R(inst.m_ideal()))),
        Expr::KField => Ok(Value::Ideal(IdealValue::D(ExtDModule::Full))),
        Expr::Neg(a) => match evaluate(a, inst)? {
            Value::Scalar(f) => Ok(Value::Scalar(-&f)),
            other => Err(type_error("negation", &other)),
        },
        Expr::Add(a, b) => add(evaluate(a, inst)?, evaluate(b, inst)?, inst),
        Expr::Sub(a, b) => match (evaluate(a, inst)?, evaluate(b, inst)?) {
            (Value::Scalar(f), Value::Scalar(g)) => Ok(Value::Scalar(&f - &g)),
            (x, _) => Err(type_error("subtraction", &x)),
        },
        Expr::Mul(a, b) => mul(evaluate(a, inst)?, evaluate(b, inst)?, inst),
        Expr::Div(a, b) => {
            let x = evaluate(a, inst)?;
            match evaluate(b, inst)? {
                Value::Scalar(g) => mul(x, Value::Scalar(g.inv()?), inst),
                other => Err(type_error("division", &other)),
            }
        }
        Expr::Pow(a, n) => power(evaluate(a, inst)?, *n, inst),
        Expr::Ideal(items) => {
            let gens = scalars(items, inst)?;
            let raw = RawIdeal::new(gens)?;
            Ok(Value::Ideal(IdealValue::R(inst.hull(&raw)?)))
        }
        Expr::DIdeal(items) => {
            let gens = scalars(items, inst)?
                .iter()
                .map(|f| f.as_constant().ok_or_else(|| Error::OutOfDomain(format!("dideal takes constants, got {f}"))))
                .collect::<Result<Vec<_>>>()?;
            let gens: Vec<FieldElem> = gens.into_iter().filter(|c| !c.is_zero()).collect();
            if gens.is_empty() {
                return Err(Error::ZeroIdeal);
            }
            Ok(Value::Ideal(IdealValue::D(inst.base().module(&gens)?)))
        }
        Expr::Call(f, a) => call(f, evaluate(a, inst)?, inst),
        Expr::Star(op, a) => {
            let v = ideal(evaluate(a, inst)?, "star")?;
            let op = StarOp::parse(op, v.side())?;
            Ok(Value::Ideal(star_eval(&op, &v, inst)?))
        }
    }
}

fn type_error(what: &str, v: &Value) -> Error {
    Error::OutOfDomain(format!("{what} is not defined on a {}", v.kind()))
}

fn big_int(n: &BigInt) -> FieldElem {
    FieldElem::from_rational(num_rational::BigRational::from_integer(n.clone()))
}

/// `√n` written as `m·√d` with `d` squarefree.
fn sqrt(n: &BigInt) -> Result<FieldElem> {
    let n = n
        .to_i64()
        .filter(|n| n.abs() <= MAX_RADICAND)
        .ok_or_else(|| Error::Unsupported(format!("radicand {n} is too large")))?;
    if n == 0 {
        return Ok(FieldElem::zero());
    }
    let (mut m, mut d) = (1i64, n);
    let mut p = 2i64;
    while p * p <= d.abs() {
        while d % (p * p) == 0 {
            d /= p * p;
            m *= p;
        }
        p += 1;
    }
    Ok(FieldElem::sqrt(d)?.scale(&num_rational::BigRational::from_integer(m.into())))
}

fn scalars(items: &[Expr], inst: &PullbackInstance) -> Result<Vec<RatFunc>> {
    items
        .iter()
        .map(|e| match evaluate(e, inst)? {
            Value::Scalar(f) => {
                inst.check_elem(&f)?;
                Ok(f)
            }
            other => Err(Error::OutOfDomain(format!("generators must be elements, got a {}", other.kind()))),
        })
        .collect()
}

fn ideal(v: Value, what: &str) -> Result<IdealValue> {
    match v {
        Value::Ideal(i) => Ok(i),
        other => Err(type_error(what, &other)),
    }
}

fn r_ideal(v: Value, what: &str) -> Result<starpull_core::pullback::StructuredIdeal> {
    match ideal(v, what)? {
        IdealValue::R(h) => Ok(h),
        other => Err(Error::OutOfDomain(format!("{what} takes an ideal of R, got one of {}", other.side()))),
    }
}

fn add(x: Value, y: Value, inst: &PullbackInstance) -> Result<Value> {
    match (x, y) {
        (Value::Scalar(f), Value::Scalar(g)) => Ok(Value::Scalar(&f + &g)),
        (Value::Ideal(a), Value::Ideal(b)) => Ok(Value::Ideal(inst.value_add(&a, &b)?)),
        (x, _) => Err(type_error("addition", &x)),
    }
}

fn mul(x: Value, y: Value, inst: &PullbackInstance) -> Result<Value> {
    match (x, y) {
        (Value::Scalar(f), Value::Scalar(g)) => Ok(Value::Scalar(&f * &g)),
        (Value::Scalar(f), Value::Ideal(a)) | (Value::Ideal(a), Value::Scalar(f)) => {
            Ok(Value::Ideal(inst.value_scale(&a, &f)?))
        }
        (Value::Ideal(a), Value::Ideal(b)) => Ok(Value::Ideal(ideal_mul(&a, &b, inst)?)),
        (x, _) => Err(type_error("multiplication", &x)),
    }
}

fn ideal_mul(a: &IdealValue, b: &IdealValue, inst: &PullbackInstance) -> Result<IdealValue> {
    match (a, b) {
        (IdealValue::D(x), IdealValue::D(y)) => Ok(IdealValue::D(inst.base().mul(x, y))),
        (IdealValue::R(x), IdealValue::R(y)) => Ok(IdealValue::R(inst.mul(x, y))),
        (IdealValue::T(x), IdealValue::T(y)) => Ok(IdealValue::T(inst.t_mul(x, y))),
        _ => Err(Error::OutOfDomain("product of ideals of different rings".into())),
    }
}

fn power(x: Value, n: i64, inst: &PullbackInstance) -> Result<Value> {
    if n.abs() > MAX_EXPONENT {
        return Err(Error::Unsupported(format!("exponent {n} exceeds {MAX_EXPONENT}")));
    }
    match x {
        Value::Scalar(f) => Ok(Value::Scalar(f.pow(n)?)),
        Value::Ideal(a) => {
            let base = if n < 0 { colon(&a, inst)? } else { a.clone() };
            let mut acc = inst.value_unit(a.side());
            for _ in 0..n.abs() {
                acc = ideal_mul(&acc, &base, inst)?;
            }
            Ok(Value::Ideal(acc))
        }
        other => Err(type_error("exponentiation", &other)),
    }
}

fn colon(a: &IdealValue, inst: &PullbackInstance) -> Result<IdealValue> {
    Ok(match a {
        IdealValue::D(ExtDModule::Full) => return Err(Error::OutOfDomain("(D : k) is zero".into())),
        IdealValue::D(x) => IdealValue::D(inst.base().colon(x)),
        IdealValue::R(x) => IdealValue::R(inst.colon(x)),
        IdealValue::T(x) => IdealValue::T(inst.t_colon(x)),
    })
}

fn call(f: &str, arg: Value, inst: &PullbackInstance) -> Result<Value> {
    match f {
        "v" | "t" => {
            let a = ideal(arg, f)?;
            let op = if f == "v" { StarOp::v(a.side()) } else { StarOp::t(a.side()) };
            Ok(Value::Ideal(star_eval(&op, &a, inst)?))
        }
        "colon" | "inv" => Ok(Value::Ideal(colon(&ideal(arg, f)?, inst)?)),
        "hull" => Ok(Value::Ideal(IdealValue::R(r_ideal(arg, f)?))),
        "extT" => match ideal(arg, f)? {
            IdealValue::R(h) => Ok(Value::Ideal(IdealValue::T(inst.extend_to_t(&h)))),
            t @ IdealValue::T(_) => Ok(Value::Ideal(t)),
            IdealValue::D(_) => Err(Error::OutOfDomain("extT takes an ideal of R".into())),
        },
        "alpha" => match ideal(arg, f)? {
            IdealValue::D(j) => Ok(Value::Ideal(IdealValue::R(alpha(&j, inst)?))),
            other => Err(Error::OutOfDomain(format!("alpha takes a D-module, got an ideal of {}", other.side()))),
        },
        "beta" => Ok(Value::Ideal(IdealValue::T(beta(&r_ideal(arg, f)?, inst)))),
        "gamma" => Ok(Value::Label(gamma(&r_ideal(arg, f)?, inst)?)),
        "principal" => Ok(Value::Generator(match ideal(arg, f)? {
            IdealValue::D(j) => inst.base().is_cyclic(&j).map(RatFunc::constant),
            IdealValue::R(h) => inst.is_principal(&h),
            IdealValue::T(c) => Some(c.generator().clone()),
        })),
        other => Err(Error::Config(format!("unknown function '{other}'"))),
    }
}
