//! Star operations on the three rings of a pullback square, as values that
//! can be composed and evaluated.
//!
//! An operation is attached to the ring it acts on ([`Side`]): `D`, `R` or
//! `T`. Combinators move between rings: `lift` takes a `D`-operation to
//! `R`, `proj` takes an `R`-operation to `D`, `extT`/`restT` take an
//! `R`-operation to `T`, and `ovr` takes a `T`-operation to `R`-modules
//! (it does not fix `R`, so it is only evaluated under a meet).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base_domain::ExtDModule;
use crate::error::{Error, Result};
use crate::kernel::{FieldElem, RatFunc};
use crate::pullback::{PullbackInstance, RawIdeal, StructuredIdeal, TIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    D,
    R,
    T,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::D => "D",
            Side::R => "R",
            Side::T => "T",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StarOp {
    Identity(Side),
    V(Side),
    T(Side),
    Meet(Box<StarOp>, Box<StarOp>),
    /// `∗_f`; acts as its operand on finitely generated inputs.
    FiniteType(Box<StarOp>),
    /// `∗_φ`, from an `R`-operation.
    Projected(Box<StarOp>),
    /// `★^φ`, from a `D`-operation.
    Lifted(Box<StarOp>),
    /// `(∗)_T : E ↦ E^∗ ∩ (T : (T : E))`.
    ExtendedT(Box<StarOp>),
    /// `∗_ι : E ↦ E^∗` on `T`-modules.
    RestrictedT(Box<StarOp>),
    /// `★^ι : E ↦ (ET)^★`, from a `T`-operation.
    OverringInduced(Box<StarOp>),
    /// `∗̃`; constructible, never evaluated.
    Stable(Box<StarOp>),
    /// `w`; constructible, never evaluated.
    W(Side),
}

impl StarOp {
    pub fn d(side: Side) -> Self {
        StarOp::Identity(side)
    }

    pub fn v(side: Side) -> Self {
        StarOp::V(side)
    }

    pub fn t(side: Side) -> Self {
        StarOp::T(side)
    }

    pub fn meet(a: StarOp, b: StarOp) -> Self {
        StarOp::Meet(Box::new(a), Box::new(b))
    }

    pub fn finite_type(a: StarOp) -> Self {
        StarOp::FiniteType(Box::new(a))
    }

    pub fn projected(a: StarOp) -> Self {
        StarOp::Projected(Box::new(a))
    }

    pub fn lifted(a: StarOp) -> Self {
        StarOp::Lifted(Box::new(a))
    }

    pub fn extended_t(a: StarOp) -> Self {
        StarOp::ExtendedT(Box::new(a))
    }

    pub fn restricted_t(a: StarOp) -> Self {
        StarOp::RestrictedT(Box::new(a))
    }

    pub fn overring_induced(a: StarOp) -> Self {
        StarOp::OverringInduced(Box::new(a))
    }

    /// The ring whose ideals the operation acts on.
    pub fn side(&self) -> Side {
        match self {
            StarOp::Identity(s) | StarOp::V(s) | StarOp::T(s) | StarOp::W(s) => *s,
            StarOp::Meet(a, _) | StarOp::FiniteType(a) | StarOp::Stable(a) => a.side(),
            StarOp::Projected(_) => Side::D,
            StarOp::Lifted(_) | StarOp::OverringInduced(_) => Side::R,
            StarOp::ExtendedT(_) | StarOp::RestrictedT(_) => Side::T,
        }
    }

    /// Checks operand sides of every combinator.
    pub fn validate(&self) -> Result<()> {
        let want = |a: &StarOp, s: Side, what: &str| -> Result<()> {
            a.validate()?;
            if a.side() != s {
                return Err(Error::OutOfDomain(format!("{what} needs a {s}-side operand, got {a} on {}", a.side())));
            }
            Ok(())
        };
        match self {
            StarOp::Identity(_) | StarOp::V(_) | StarOp::T(_) | StarOp::W(_) => Ok(()),
            StarOp::Meet(a, b) => {
                a.validate()?;
                want(b, a.side(), "meet")
            }
            StarOp::FiniteType(a) | StarOp::Stable(a) => a.validate(),
            StarOp::Projected(a) | StarOp::ExtendedT(a) | StarOp::RestrictedT(a) => want(a, Side::R, self.name()),
            StarOp::Lifted(a) => want(a, Side::D, "lift"),
            StarOp::OverringInduced(a) => want(a, Side::T, "ovr"),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            StarOp::Identity(_) => "d",
            StarOp::V(_) => "v",
            StarOp::T(_) => "t",
            StarOp::W(_) => "w",
            StarOp::Meet(..) => "meet",
            StarOp::FiniteType(_) => "fin",
            StarOp::Projected(_) => "proj",
            StarOp::Lifted(_) => "lift",
            StarOp::ExtendedT(_) => "extT",
            StarOp::RestrictedT(_) => "restT",
            StarOp::OverringInduced(_) => "ovr",
            StarOp::Stable(_) => "stable",
        }
    }

    /// Parses the textual names `d v t w meet(a,b) fin(a) proj(a) lift(a)
    /// extT(a) restT(a) ovr(a) stable(a)`. Bare names take their side from
    /// the enclosing combinator, or `side` at the top level.
    pub fn parse(text: &str, side: Side) -> Result<Self> {
        let mut p = OpParser { s: text.as_bytes(), pos: 0 };
        let op = p.op(side)?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        op.validate()?;
        if op.side() != side {
            return Err(Error::OutOfDomain(format!("{op} acts on {}-side ideals, not {side}", op.side())));
        }
        Ok(op)
    }
}

impl fmt::Display for StarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarOp::Identity(_) | StarOp::V(_) | StarOp::T(_) | StarOp::W(_) => f.write_str(self.name()),
            StarOp::Meet(a, b) => write!(f, "meet({a},{b})"),
            StarOp::FiniteType(a)
            | StarOp::Projected(a)
            | StarOp::Lifted(a)
            | StarOp::ExtendedT(a)
            | StarOp::RestrictedT(a)
            | StarOp::OverringInduced(a)
            | StarOp::Stable(a) => write!(f, "{}({a})", self.name()),
        }
    }
}

impl Serialize for StarOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct OpParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl OpParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Config(format!("star operation: {msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an operation name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn op(&mut self, side: Side) -> Result<StarOp> {
        let name = self.ident()?;
        let unary = |p: &mut Self, inner: Side| -> Result<StarOp> {
            p.expect(b'(')?;
            let a = p.op(inner)?;
            p.expect(b')')?;
            Ok(a)
        };
        Ok(match name.as_str() {
            "d" => StarOp::Identity(side),
            "v" => StarOp::V(side),
            "t" => StarOp::T(side),
            "w" => StarOp::W(side),
            "meet" => {
                self.expect(b'(')?;
                let a = self.op(side)?;
                self.expect(b',')?;
                let b = self.op(side)?;
                self.expect(b')')?;
                StarOp::meet(a, b)
            }
            "fin" => StarOp::finite_type(unary(self, side)?),
            "stable" => StarOp::Stable(Box::new(unary(self, side)?)),
            "proj" => StarOp::projected(unary(self, Side::R)?),
            "lift" => StarOp::lifted(unary(self, Side::D)?),
            "extT" => StarOp::extended_t(unary(self, Side::R)?),
            "restT" => StarOp::restricted_t(unary(self, Side::R)?),
            "ovr" => StarOp::overring_induced(unary(self, Side::T)?),
            other => {
                self.pos -= other.len();
                return Err(self.err(&format!("unknown operation '{other}'")));
            }
        })
    }
}

/// An ideal of one of the three rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealValue {
    /// A nonzero `D`-submodule of `k`.
    D(ExtDModule),
    R(StructuredIdeal),
    T(TIdeal),
}

impl IdealValue {
    pub fn side(&self) -> Side {
        match self {
            IdealValue::D(_) => Side::D,
            IdealValue::R(_) => Side::R,
            IdealValue::T(_) => Side::T,
        }
    }

    pub fn as_r(&self) -> Option<&StructuredIdeal> {
        match self {
            IdealValue::R(i) => Some(i),
            _ => None,
        }
    }
}

/// Evaluates `op` on `value`. Raw ideals enter through [`star_eval_raw`].
pub fn star_eval(op: &StarOp, value: &IdealValue, inst: &PullbackInstance) -> Result<IdealValue> {
    op.validate()?;
    if op.side() != value.side() {
        return Err(Error::OutOfDomain(format!("{op} acts on {}-side ideals, got a {}-side ideal", op.side(), value.side())));
    }
    eval(op, value, inst)
}

/// Evaluates an `R`-side operation on a finitely generated ideal through its
/// structured form, which equals the ideal.
pub fn star_eval_raw(op: &StarOp, i: &RawIdeal, inst: &PullbackInstance) -> Result<StructuredIdeal> {
    match star_eval(op, &IdealValue::R(inst.hull(i)?), inst)? {
        IdealValue::R(h) => Ok(h),
        _ => unreachable!("R-side operations return R-side ideals"),
    }
}

fn eval(op: &StarOp, value: &IdealValue, inst: &PullbackInstance) -> Result<IdealValue> {
    match (op, value) {
        (StarOp::Stable(_) | StarOp::W(_), _) => {
            Err(Error::OutOfDomain(format!("{op} is a stable operation; it is not evaluated")))
        }
        (StarOp::OverringInduced(_), _) => {
            Err(Error::OutOfDomain(format!("{op} does not fix R; evaluate it inside a meet with a star operation")))
        }
        (StarOp::FiniteType(a), _) => eval(a, value, inst),
        (StarOp::Meet(a, b), _) => eval_meet(a, b, value, inst),

        (StarOp::Identity(_), v) => Ok(v.clone()),

        (StarOp::V(_) | StarOp::T(_), IdealValue::D(j)) => {
            check_d_ideal(j)?;
            Ok(IdealValue::D(inst.base().v(j)))
        }
        (StarOp::V(_) | StarOp::T(_), IdealValue::R(i)) => Ok(IdealValue::R(inst.v(i))),
        // T is a PID or a DVR: every fractional ideal is divisorial
        (StarOp::V(_) | StarOp::T(_), IdealValue::T(c)) => Ok(IdealValue::T(inst.t_colon(&inst.t_colon(c)))),

        (StarOp::Projected(a), IdealValue::D(j)) => {
            check_d_ideal(j)?;
            let pre = inst.inverse_image(j)?;
            match eval(a, &IdealValue::R(pre), inst)? {
                IdealValue::R(h) => Ok(IdealValue::D(phi_image(&h, inst)?)),
                _ => unreachable!(),
            }
        }
        (StarOp::Lifted(a), IdealValue::R(i)) => {
            // T-forms uT are fixed by every star operation on R, since they are divisorial
            if i.is_t_form() {
                return Ok(value.clone());
            }
            match eval(a, &IdealValue::D(i.dpart().clone()), inst)? {
                IdealValue::D(j) => Ok(IdealValue::R(inst.structured(i.unit_part(), &j)?)),
                _ => unreachable!(),
            }
        }
        (StarOp::ExtendedT(a), IdealValue::T(c)) => {
            let star = eval_r(a, &inst.t_ideal_as_r(c), inst)?;
            let hull = inst.t_ideal_as_r(&inst.t_colon(&inst.t_colon(c)));
            to_t_ideal(&inst.intersect(&star, &hull), inst)
        }
        (StarOp::RestrictedT(a), IdealValue::T(c)) => to_t_ideal(&eval_r(a, &inst.t_ideal_as_r(c), inst)?, inst),
        _ => Err(Error::OutOfDomain(format!("{op} cannot act on a {}-side ideal", value.side()))),
    }
}

fn eval_r(op: &StarOp, i: &StructuredIdeal, inst: &PullbackInstance) -> Result<StructuredIdeal> {
    match eval(op, &IdealValue::R(i.clone()), inst)? {
        IdealValue::R(h) => Ok(h),
        _ => unreachable!(),
    }
}

fn to_t_ideal(i: &StructuredIdeal, inst: &PullbackInstance) -> Result<IdealValue> {
    inst.as_t_ideal(i)
        .map(IdealValue::T)
        .ok_or_else(|| Error::OutOfDomain(format!("{} is not a T-module", inst.display(i))))
}

fn eval_meet(a: &StarOp, b: &StarOp, value: &IdealValue, inst: &PullbackInstance) -> Result<IdealValue> {
    let operand = |op: &StarOp, other: &StarOp| -> Result<IdealValue> {
        match (op, value) {
            // E ↦ E^★ ∩ (ET)^★″ fixes R as soon as ★ does
            (StarOp::OverringInduced(inner), IdealValue::R(i)) if fixes_r(other) => {
                match eval(inner, &IdealValue::T(inst.extend_to_t(i)), inst)? {
                    IdealValue::T(c) => Ok(IdealValue::R(inst.t_ideal_as_r(&c))),
                    _ => unreachable!(),
                }
            }
            _ => eval(op, value, inst),
        }
    };
    let x = operand(a, b)?;
    let y = operand(b, a)?;
    Ok(match (x, y) {
        (IdealValue::D(x), IdealValue::D(y)) => IdealValue::D(inst.base().intersect(&x, &y)),
        (IdealValue::R(x), IdealValue::R(y)) => IdealValue::R(inst.intersect(&x, &y)),
        (IdealValue::T(x), IdealValue::T(y)) => IdealValue::T(inst.t_intersect(&x, &y)),
        _ => unreachable!("meet operands share a side"),
    })
}

/// Whether `op` is a genuine star operation on `R`, i.e. `R^op = R`.
fn fixes_r(op: &StarOp) -> bool {
    match op {
        StarOp::Identity(Side::R) | StarOp::V(Side::R) | StarOp::T(Side::R) | StarOp::Lifted(_) => true,
        StarOp::FiniteType(a) => fixes_r(a),
        StarOp::Meet(a, b) => fixes_r(a) && fixes_r(b) || fixes_r(a) && is_overring(b) || is_overring(a) && fixes_r(b),
        _ => false,
    }
}

fn is_overring(op: &StarOp) -> bool {
    matches!(op, StarOp::OverringInduced(_))
}

fn check_d_ideal(j: &ExtDModule) -> Result<()> {
    match j {
        ExtDModule::Zero => Err(Error::ZeroIdeal),
        _ => Ok(()),
    }
}

/// `φ(H)` for an `R`-submodule of `T`.
pub fn phi_image(h: &StructuredIdeal, inst: &PullbackInstance) -> Result<ExtDModule> {
    let u = h.unit_part();
    if u.is_one() {
        Ok(h.dpart().clone())
    } else if inst.in_t(u) {
        // u lies in the maximal ideal, so the whole module does
        Ok(ExtDModule::Zero)
    } else {
        Err(Error::OutOfDomain(format!("{} is not contained in {}", inst.display(h), inst.t_name())))
    }
}

// ---- generic ideal operations over the three sides ----

impl PullbackInstance {
    pub fn value_leq(&self, a: &IdealValue, b: &IdealValue) -> bool {
        match (a, b) {
            (IdealValue::D(x), IdealValue::D(y)) => self.base().leq(x, y),
            (IdealValue::R(x), IdealValue::R(y)) => self.leq(x, y),
            (IdealValue::T(x), IdealValue::T(y)) => self.t_contains(y, x.generator()),
            _ => false,
        }
    }

    pub fn value_add(&self, a: &IdealValue, b: &IdealValue) -> Result<IdealValue> {
        match (a, b) {
            (IdealValue::D(x), IdealValue::D(y)) => Ok(IdealValue::D(self.base().add(x, y))),
            (IdealValue::R(x), IdealValue::R(y)) => Ok(IdealValue::R(self.add(x, y))),
            (IdealValue::T(x), IdealValue::T(y)) => Ok(IdealValue::T(self.t_add(x, y))),
            _ => Err(Error::OutOfDomain("sum of ideals of different rings".into())),
        }
    }

    /// `z·E`. On the `D` side `z` must be a constant.
    pub fn value_scale(&self, a: &IdealValue, z: &RatFunc) -> Result<IdealValue> {
        match a {
            IdealValue::D(x) => {
                let c = z.as_constant().ok_or_else(|| Error::OutOfDomain(format!("{z} is not a constant")))?;
                if c.is_zero() {
                    return Err(Error::ZeroIdeal);
                }
                Ok(IdealValue::D(self.base().scale(x, &c)))
            }
            IdealValue::R(x) => Ok(IdealValue::R(self.scale(x, z)?)),
            IdealValue::T(x) => Ok(IdealValue::T(self.t_ideal(&(x.generator() * z))?)),
        }
    }

    /// The ring itself, as an ideal of the given side.
    pub fn value_unit(&self, side: Side) -> IdealValue {
        match side {
            Side::D => IdealValue::D(self.base().unit_module()),
            Side::R => IdealValue::R(self.unit_ideal()),
            Side::T => IdealValue::T(self.t_ideal(&RatFunc::one()).expect("T")),
        }
    }

    pub fn value_display(&self, a: &IdealValue) -> String {
        match a {
            IdealValue::D(x) => self.base().display_module(x),
            IdealValue::R(x) => self.display(x),
            IdealValue::T(x) => self.display_t(x),
        }
    }

    /// Expression text that evaluates back to `a`.
    pub fn value_expr(&self, a: &IdealValue) -> String {
        match a {
            IdealValue::D(ExtDModule::Full) => "K".into(),
            IdealValue::D(x) => {
                let gens: Vec<String> = self.base().short_generators(x).iter().map(FieldElem::to_string).collect();
                format!("dideal({})", gens.join(", "))
            }
            IdealValue::R(x) => self.to_expr(x),
            IdealValue::T(x) => self.t_to_expr(x),
        }
    }
}

/// A sample on which a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub sample: String,
    pub expected: String,
    pub got: String,
    pub witness: String,
}

/// Samples where `E^op1 ⊄ E^op2`.
pub fn star_leq_check(op1: &StarOp, op2: &StarOp, samples: &[IdealValue], inst: &PullbackInstance) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for s in samples {
        let a = star_eval(op1, s, inst)?;
        let b = star_eval(op2, s, inst)?;
        if !inst.value_leq(&a, &b) {
            out.push(Violation {
                sample: inst.value_expr(s),
                expected: format!("{op1} ≤ {op2}"),
                got: format!("{} ⊄ {}", inst.value_display(&a), inst.value_display(&b)),
                witness: format!("star({op1}, {}) ⊆ star({op2}, {})", inst.value_expr(s), inst.value_expr(s)),
            });
        }
    }
    Ok(out)
}

/// Checks extensivity, idempotence, `(zE)^∗ = zE^∗`, `(zA)^∗ = zA` for the
/// ring `A` itself, and monotonicity along `E ⊆ E + F` for consecutive
/// samples.
pub fn star_axiom_check(op: &StarOp, samples: &[IdealValue], scalars: &[RatFunc], inst: &PullbackInstance) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    let ev = |e: &IdealValue| star_eval(op, e, inst);
    let show = |e: &IdealValue| inst.value_display(e);
    let mut flag = |sample: &IdealValue, expected: &str, got: String, witness: String| {
        out.push(Violation { sample: inst.value_expr(sample), expected: expected.into(), got, witness });
    };
    let unit = inst.value_unit(op.side());
    for z in scalars {
        let zr = inst.value_scale(&unit, z)?;
        let got = ev(&zr)?;
        if got != zr {
            flag(&zr, "(zA)^* = zA", show(&got), format!("star({op}, {})", inst.value_expr(&zr)));
        }
    }
    for (n, e) in samples.iter().enumerate() {
        let star = ev(e)?;
        if !inst.value_leq(e, &star) {
            flag(e, "E ⊆ E^*", show(&star), format!("star({op}, {})", inst.value_expr(e)));
        }
        let again = ev(&star)?;
        if again != star {
            flag(e, &format!("(E^*)^* = {}", show(&star)), show(&again), format!("star({op}, star({op}, {}))", inst.value_expr(e)));
        }
        for z in scalars {
            let ze = inst.value_scale(e, z)?;
            let lhs = ev(&ze)?;
            let rhs = inst.value_scale(&star, z)?;
            if lhs != rhs {
                flag(e, &format!("(zE)^* = {}", show(&rhs)), show(&lhs), format!("star({op}, {})", inst.value_expr(&ze)));
            }
        }
        if let Some(f) = samples.get(n + 1) {
            let big = inst.value_add(e, f)?;
            let big_star = ev(&big)?;
            if !inst.value_leq(&star, &big_star) {
                flag(e, "E ⊆ F ⇒ E^* ⊆ F^*", show(&big_star), format!("star({op}, {})", inst.value_expr(&big)));
            }
        }
    }
    Ok(out)
}
