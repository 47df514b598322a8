use std::fmt;

use super::{values_module, PullbackInstance, RawIdeal, TKind};
use crate::base_domain::ExtDModule;
use crate::error::{Error, Result};
use crate::kernel::{eval_at_zero, FieldElem, RatFunc};

/// The ideal `u·φ⁻¹(J)` of `R`, in canonical form.
///
/// The D-part is never ZERO: `u·φ⁻¹(0) = u·M = uX·T` is stored as
/// `(uX, FULL)`, so `T = (1, FULL)` and `M = (X, FULL)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructuredIdeal {
    u: RatFunc,
    j: ExtDModule,
}

impl StructuredIdeal {
    pub fn unit_part(&self) -> &RatFunc {
        &self.u
    }

    pub fn dpart(&self) -> &ExtDModule {
        &self.j
    }

    /// A fractional ideal of `T` (`u·T`), as opposed to a proper φ-preimage.
    pub fn is_t_form(&self) -> bool {
        self.j.is_full()
    }
}

/// The fractional `T`-ideal `c·T`, with `c` canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TIdeal {
    c: RatFunc,
}

impl TIdeal {
    pub fn generator(&self) -> &RatFunc {
        &self.c
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.c.is_one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Mul,
    Add,
}

impl PullbackInstance {
    /// Canonical structured ideal `u·φ⁻¹(J)`.
    pub fn structured(&self, u: &RatFunc, j: &ExtDModule) -> Result<StructuredIdeal> {
        if u.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        self.check_elem(u)?;
        if !j.fits(self.base()) {
            return Err(Error::MixedBaseDomains);
        }
        let (u, j) = match j {
            ExtDModule::Zero => (u * &RatFunc::x(), ExtDModule::Full),
            _ => (u.clone(), j.clone()),
        };
        let (gen, unit) = self.t_normalize(&u)?;
        // w·φ⁻¹(J) = φ⁻¹(w(0)·J) for a unit w of T
        let w0 = eval_at_zero(&unit)?;
        let j = self.base().scale(&j, &w0);
        Ok(StructuredIdeal { u: gen, j })
    }

    pub fn t_ideal(&self, c: &RatFunc) -> Result<TIdeal> {
        self.check_elem(c)?;
        Ok(TIdeal { c: self.t_normalize(c)?.0 })
    }

    /// `R` itself.
    pub fn unit_ideal(&self) -> StructuredIdeal {
        self.structured(&RatFunc::one(), &self.base().unit_module()).expect("R")
    }

    /// `T` as an `R`-module.
    pub fn t_as_ideal(&self) -> StructuredIdeal {
        self.structured(&RatFunc::one(), &ExtDModule::Full).expect("T")
    }

    /// The conductor `M = X·T`.
    pub fn m_ideal(&self) -> StructuredIdeal {
        self.structured(&RatFunc::one(), &ExtDModule::Zero).expect("M")
    }

    /// `z·R`.
    pub fn principal(&self, z: &RatFunc) -> Result<StructuredIdeal> {
        self.structured(z, &self.base().unit_module())
    }

    /// `φ⁻¹(J)`; ZERO yields `M`.
    pub fn inverse_image(&self, j: &ExtDModule) -> Result<StructuredIdeal> {
        self.structured(&RatFunc::one(), j)
    }

    /// Structured form of a finitely generated ideal; it equals the ideal.
    pub fn hull(&self, i: &RawIdeal) -> Result<StructuredIdeal> {
        for g in i.gens() {
            self.check_elem(g)?;
        }
        let (u, reduced) = self.content_t(i.gens())?;
        let j = values_module(self, &reduced)?;
        self.structured(&u, &j)
    }

    pub fn contains(&self, i: &StructuredIdeal, f: &RatFunc) -> bool {
        if f.is_zero() {
            return true;
        }
        let Ok(q) = f.checked_div(&i.u) else { return false };
        if !self.in_t(&q) {
            return false;
        }
        match &i.j {
            ExtDModule::Full => true,
            j => eval_at_zero(&q).map(|c| self.base().member(j, &c)).unwrap_or(false),
        }
    }

    pub fn mul(&self, a: &StructuredIdeal, b: &StructuredIdeal) -> StructuredIdeal {
        let j = self.base().mul(&a.j, &b.j);
        self.structured(&(&a.u * &b.u), &j).expect("nonzero product")
    }

    pub fn add(&self, a: &StructuredIdeal, b: &StructuredIdeal) -> StructuredIdeal {
        let g = self.t_gcd(&[a.u.clone(), b.u.clone()]).expect("nonzero");
        let ra = a.u.checked_div(&g).expect("nonzero");
        let rb = b.u.checked_div(&g).expect("nonzero");
        let pa = eval_at_zero(&ra).expect("ra ∈ T");
        let pb = eval_at_zero(&rb).expect("rb ∈ T");
        let j = self.base().add(&self.base().scale(&a.j, &pa), &self.base().scale(&b.j, &pb));
        self.structured(&g, &j).expect("nonzero sum")
    }

    /// `A ∩ B`, always again of the form `u·φ⁻¹(J)`.
    pub fn intersect(&self, a: &StructuredIdeal, b: &StructuredIdeal) -> StructuredIdeal {
        // u_b/u_a = p/q with p, q ∈ T coprime; then A ∩ B = u_a·p·φ⁻¹(C₁ ∩ C₂)
        let h = b.u.checked_div(&a.u).expect("nonzero");
        let (p, q) = self.coprime_split(&h);
        let pp = eval_at_zero(&p).expect("p ∈ T");
        let pq = eval_at_zero(&q).expect("q ∈ T");
        let base = self.base();
        let preimage = |x: &FieldElem, j: &ExtDModule| -> ExtDModule {
            if x.is_zero() {
                ExtDModule::Full
            } else {
                base.scale(j, &x.inv().expect("nonzero"))
            }
        };
        let c = base.intersect(&preimage(&pp, &a.j), &preimage(&pq, &b.j));
        self.structured(&(&a.u * &p), &c).expect("nonzero intersection")
    }

    /// Writes `h = p/q` with `p, q ∈ T` generating `T` together.
    fn coprime_split(&self, h: &RatFunc) -> (RatFunc, RatFunc) {
        match self.t_kind() {
            TKind::Poly => (RatFunc::from_poly(h.num().clone()), RatFunc::from_poly(h.den().clone())),
            TKind::Local => {
                let e = h.ord0().expect("nonzero");
                if e >= 0 {
                    (h.clone(), RatFunc::one())
                } else {
                    (&RatFunc::x_pow(-e) * h, RatFunc::x_pow(-e))
                }
            }
        }
    }

    pub fn leq(&self, a: &StructuredIdeal, b: &StructuredIdeal) -> bool {
        &self.add(a, b) == b
    }

    /// `(R : I) = u⁻¹·φ⁻¹((D : J))`.
    pub fn colon(&self, i: &StructuredIdeal) -> StructuredIdeal {
        let u = i.u.inv().expect("nonzero");
        self.structured(&u, &self.base().colon(&i.j)).expect("nonzero colon")
    }

    pub fn v(&self, i: &StructuredIdeal) -> StructuredIdeal {
        self.colon(&self.colon(i))
    }

    /// On the structured class `t` and `v` agree: finitely generated ideals
    /// satisfy `F^t = F^v`, and `T`, `M` are `t`-ideals as well as divisorial.
    pub fn t(&self, i: &StructuredIdeal) -> StructuredIdeal {
        self.v(i)
    }

    pub fn scale(&self, i: &StructuredIdeal, z: &RatFunc) -> Result<StructuredIdeal> {
        self.structured(&(&i.u * z), &i.j)
    }

    /// `IT`.
    pub fn extend_to_t(&self, i: &StructuredIdeal) -> TIdeal {
        TIdeal { c: i.u.clone() }
    }

    pub fn extend_raw_to_t(&self, i: &RawIdeal) -> Result<TIdeal> {
        Ok(TIdeal { c: self.content_t(i.gens())?.0 })
    }

    /// Generator `g` with `I = gR`, if `I` is principal.
    pub fn is_principal(&self, i: &StructuredIdeal) -> Option<RatFunc> {
        let c = self.base().is_cyclic(&i.j)?;
        Some(i.u.scale(&c))
    }

    /// `cT` viewed as an `R`-module.
    pub fn t_ideal_as_r(&self, t: &TIdeal) -> StructuredIdeal {
        self.structured(&t.c, &ExtDModule::Full).expect("nonzero")
    }

    /// Inverse of [`Self::t_ideal_as_r`] on FULL-form ideals.
    pub fn as_t_ideal(&self, i: &StructuredIdeal) -> Option<TIdeal> {
        i.is_t_form().then(|| TIdeal { c: i.u.clone() })
    }

    pub fn t_mul(&self, a: &TIdeal, b: &TIdeal) -> TIdeal {
        self.t_ideal(&(&a.c * &b.c)).expect("nonzero")
    }

    pub fn t_add(&self, a: &TIdeal, b: &TIdeal) -> TIdeal {
        TIdeal { c: self.t_gcd(&[a.c.clone(), b.c.clone()]).expect("nonzero") }
    }

    /// `aT ∩ bT = lcm(a, b)·T`.
    pub fn t_intersect(&self, a: &TIdeal, b: &TIdeal) -> TIdeal {
        let g = self.t_gcd(&[a.c.clone(), b.c.clone()]).expect("nonzero");
        self.t_ideal(&(&a.c * &b.c).checked_div(&g).expect("nonzero")).expect("nonzero")
    }

    /// `(T : cT) = c⁻¹T`.
    pub fn t_colon(&self, a: &TIdeal) -> TIdeal {
        self.t_ideal(&a.c.inv().expect("nonzero")).expect("nonzero")
    }

    pub fn t_contains(&self, a: &TIdeal, f: &RatFunc) -> bool {
        f.is_zero() || f.checked_div(&a.c).map(|q| self.in_t(&q)).unwrap_or(false)
    }

    /// Mathematical rendering such as `2ℤ + X·ℚ[X]`.
    pub fn display(&self, i: &StructuredIdeal) -> String {
        let inner = match &i.j {
            ExtDModule::Full => self.t_name(),
            j => format!("{} + X·{}", self.base().display_module(j), self.t_name()),
        };
        if i.u.is_one() {
            inner
        } else if i.j.is_full() {
            format!("{}·{}", paren(&i.u), inner)
        } else {
            format!("{}·({inner})", paren(&i.u))
        }
    }

    pub fn display_t(&self, t: &TIdeal) -> String {
        if t.c.is_one() {
            self.t_name()
        } else {
            format!("{}·{}", paren(&t.c), self.t_name())
        }
    }

    /// Expression text that evaluates back to `i` in the CLI language.
    pub fn to_expr(&self, i: &StructuredIdeal) -> String {
        match &i.j {
            ExtDModule::Full => format!("{}*T", paren(&i.u)),
            j => {
                let gens: Vec<String> = self
                    .base()
                    .short_generators(j)
                    .iter()
                    .map(|c| i.u.scale(c).to_string())
                    .collect();
                format!("ideal({})", gens.join(", "))
            }
        }
    }

    pub fn t_to_expr(&self, t: &TIdeal) -> String {
        format!("extT({}*T)", paren(&t.c))
    }
}

fn paren(f: &RatFunc) -> String {
    let s = f.to_string();
    if s.starts_with('(') || s.chars().all(|c| c.is_ascii_alphanumeric()) {
        s
    } else {
        format!("({s})")
    }
}

/// Product or sum of two ideals given in the same instance.
pub fn ideal_arith(inst: &PullbackInstance, a: &StructuredIdeal, b: &StructuredIdeal, op: IdealOp) -> StructuredIdeal {
    match op {
        IdealOp::Mul => inst.mul(a, b),
        IdealOp::Add => inst.add(a, b),
    }
}

impl fmt::Display for TIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·T", paren(&self.c))
    }
}
