//! Pullback rings `R = φ⁻¹(D) ⊆ T` with `T = K[X]` or `K[X]_(X)`, conductor
//! `M = X·T` and `φ` evaluation at `X = 0`.
//!
//! Every nonzero finitely generated ideal of `R` has the exact form
//! `u·φ⁻¹(J)` with `u` a T-generator of its extension `IT` and `J` the
//! `D`-module spanned by the values at 0 of `I/u`; all closed-form
//! operations below work on that representation.

mod ideal;
mod oracle;

pub use ideal::{ideal_arith, IdealOp, StructuredIdeal, TIdeal};
pub use oracle::{oracle_colon_member, oracle_v_member, DegreeWindow, VMembership, VOracle};

use std::fmt;

use serde::Serialize;

use crate::base_domain::{BaseDomain, DomainKind, ExtDModule};
use crate::error::{Error, Result};
use crate::kernel::{eval_at_zero, ord_at_zero, poly_gcd, FieldElem, Poly, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TKind {
    /// `K[X]`
    Poly,
    /// `K[X]_(X)`
    Local,
}

/// Description of the base domain in an instance config.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSpec {
    Integers,
    /// Maximal order of ℚ(√d); forces `k = ℚ(√d)`.
    Quadratic(i64),
    /// ℚ inside `k`.
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceConfig {
    pub name: Option<String>,
    pub base: BaseSpec,
    /// `k = ℚ(√k_disc)`, 1 for ℚ.
    pub k_disc: i64,
    pub t_kind: TKind,
}

impl InstanceConfig {
    pub fn catalog(name: &str) -> Result<Self> {
        let (base, k_disc, t_kind) = match name {
            "A" => (BaseSpec::Integers, 1, TKind::Poly),
            "B" => (BaseSpec::Integers, 1, TKind::Local),
            "C" => (BaseSpec::Quadratic(-5), -5, TKind::Poly),
            "D" => (BaseSpec::Integers, -1, TKind::Poly),
            "E" => (BaseSpec::Rational, -1, TKind::Local),
            other => return Err(Error::Config(format!("unknown instance `{other}` (catalog: A B C D E)"))),
        };
        Ok(InstanceConfig { name: Some(name.to_string()), base, k_disc, t_kind })
    }
}

pub const CATALOG: [&str; 5] = ["A", "B", "C", "D", "E"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceFlags {
    /// `qf(D) = k`.
    pub is_square_plus: bool,
    pub t_quasilocal: bool,
    /// `K^× ⊆ U(T)` maps onto `k^×/U(D)`; holds for both T-kinds.
    pub phi_tilde_surjective: bool,
    /// `T_M` is a valuation domain (a DVR for both T-kinds).
    pub t_m_valuation: bool,
    pub d_pvmd: bool,
}

impl InstanceFlags {
    /// Structural PvMD verdict for `R`: `D` a PvMD, `T_M` valuation, `qf(D) = k`.
    pub fn r_is_pvmd(&self) -> bool {
        self.d_pvmd && self.t_m_valuation && self.is_square_plus
    }
}

#[derive(Clone, Debug)]
pub struct PullbackInstance {
    name: String,
    base: BaseDomain,
    t_kind: TKind,
    flags: InstanceFlags,
}

impl PartialEq for PullbackInstance {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.t_kind == other.t_kind
    }
}

/// Builds the instance described by `config`.
pub fn make_instance(config: &InstanceConfig) -> Result<PullbackInstance> {
    let base = match config.base {
        BaseSpec::Integers => BaseDomain::integers(config.k_disc)?,
        BaseSpec::Quadratic(d) => {
            if d != config.k_disc {
                return Err(Error::Unsupported(format!("O(√{d}) does not lie in k = ℚ(√{})", config.k_disc)));
            }
            BaseDomain::quadratic_order(d)?
        }
        BaseSpec::Rational => BaseDomain::rational_field(config.k_disc)?,
    };
    let flags = InstanceFlags {
        is_square_plus: base.quotient_field_is_k(),
        t_quasilocal: config.t_kind == TKind::Local,
        phi_tilde_surjective: true,
        t_m_valuation: true,
        d_pvmd: base.is_pvmd(),
    };
    let name = config.name.clone().unwrap_or_else(|| {
        let t = match config.t_kind {
            TKind::Poly => "poly",
            TKind::Local => "local",
        };
        format!("{}/{}/{t}", base.name(), base.k_name())
    });
    Ok(PullbackInstance { name, base, t_kind: config.t_kind, flags })
}

impl PullbackInstance {
    pub fn catalog(name: &str) -> Result<Self> {
        make_instance(&InstanceConfig::catalog(name)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &BaseDomain {
        &self.base
    }

    pub fn t_kind(&self) -> TKind {
        self.t_kind
    }

    pub fn flags(&self) -> InstanceFlags {
        self.flags
    }

    pub fn k_disc(&self) -> i64 {
        self.base.k_disc()
    }

    /// Display name of `T`, e.g. `ℚ[X]` or `ℚ(i)[X]_(X)`.
    pub fn t_name(&self) -> String {
        let k = self.base.k_name();
        match self.t_kind {
            TKind::Poly => format!("{k}[X]"),
            TKind::Local => format!("{k}[X]_(X)"),
        }
    }

    /// Brings a scalar into the field `k`, rejecting foreign surds.
    pub fn scalar(&self, c: &FieldElem) -> Result<FieldElem> {
        c.in_field(self.k_disc())
    }

    /// Checks that every coefficient of `f` lives in `K = k`.
    pub fn check_elem(&self, f: &RatFunc) -> Result<()> {
        for c in f.num().coeffs().iter().chain(f.den().coeffs()) {
            self.scalar(c)?;
        }
        Ok(())
    }

    pub fn in_t(&self, f: &RatFunc) -> bool {
        match self.t_kind {
            TKind::Poly => f.is_poly(),
            TKind::Local => f.is_local(),
        }
    }

    pub fn is_t_unit(&self, f: &RatFunc) -> bool {
        if f.is_zero() {
            return false;
        }
        match self.t_kind {
            TKind::Poly => f.as_constant().is_some(),
            TKind::Local => f.is_local() && !eval_at_zero(f).map(|c| c.is_zero()).unwrap_or(true),
        }
    }

    /// `φ(f)` for `f ∈ T`.
    pub fn phi(&self, f: &RatFunc) -> Result<FieldElem> {
        if !self.in_t(f) {
            return Err(Error::NotInT(f.to_string()));
        }
        eval_at_zero(f)
    }

    /// `f ∈ R = φ⁻¹(D)`.
    pub fn member_r(&self, f: &RatFunc) -> bool {
        if f.is_zero() {
            return true;
        }
        self.in_t(f) && eval_at_zero(f).map(|c| self.base.contains(&c)).unwrap_or(false)
    }

    /// `f ∈ S = U(T) ∩ R`.
    pub fn in_s(&self, f: &RatFunc) -> bool {
        self.member_r(f) && self.is_t_unit(f)
    }

    /// `f ∈ N = {x ∈ R : φ(x) ∈ U(D)}`.
    pub fn in_n(&self, f: &RatFunc) -> bool {
        self.member_r(f) && eval_at_zero(f).map(|c| self.base.is_unit(&c)).unwrap_or(false)
    }

    /// Canonical generator of the T-ideal `fT`, and the unit `w` with `f = w·gen`.
    pub fn t_normalize(&self, f: &RatFunc) -> Result<(RatFunc, RatFunc)> {
        if f.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let gen = match self.t_kind {
            TKind::Poly => RatFunc::new(f.num().monic(), f.den().clone())?,
            TKind::Local => RatFunc::x_pow(ord_at_zero(f)?),
        };
        let unit = f.checked_div(&gen)?;
        Ok((gen, unit))
    }

    /// Canonical generator of `Σ fᵢ·T`.
    pub fn t_gcd(&self, fs: &[RatFunc]) -> Result<RatFunc> {
        let nonzero: Vec<&RatFunc> = fs.iter().filter(|f| !f.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        match self.t_kind {
            TKind::Poly => {
                let mut num = Poly::zero();
                let mut den = Poly::one();
                for f in &nonzero {
                    num = poly_gcd(&num, f.num())?;
                    let g = poly_gcd(&den, f.den())?;
                    den = (&den * f.den()).exact_div(&g)?;
                }
                RatFunc::new(num, den)
            }
            TKind::Local => {
                let e = nonzero.iter().map(|f| ord_at_zero(f)).collect::<Result<Vec<_>>>()?;
                Ok(RatFunc::x_pow(*e.iter().min().expect("nonempty")))
            }
        }
    }

    /// Content `u` of a generator list with the reduced generators `fᵢ/u`.
    pub fn content_t(&self, gens: &[RatFunc]) -> Result<(RatFunc, Vec<RatFunc>)> {
        let u = self.t_gcd(gens)?;
        let reduced = gens.iter().filter(|f| !f.is_zero()).map(|f| f.checked_div(&u)).collect::<Result<_>>()?;
        Ok((u, reduced))
    }

    /// Element of `K` viewed in `K(X)`.
    pub fn constant(&self, c: &FieldElem) -> RatFunc {
        RatFunc::constant(c.clone())
    }
}

impl fmt::Display for PullbackInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (D = {}, k = {}, T = {})", self.name, self.base.name(), self.base.k_name(), self.t_name())
    }
}

/// One-line description of the base-domain kind, for listings.
pub fn describe_base(inst: &PullbackInstance) -> String {
    match inst.base().kind() {
        DomainKind::Integers => "integers".into(),
        DomainKind::QuadraticOrder(d) => format!("quadratic({d})"),
        DomainKind::Field => "rational field".into(),
    }
}

/// A nonempty list of nonzero generators of an ideal of `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawIdeal {
    gens: Vec<RatFunc>,
}

impl RawIdeal {
    pub fn new(gens: Vec<RatFunc>) -> Result<Self> {
        let gens: Vec<RatFunc> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(RawIdeal { gens })
    }

    pub fn gens(&self) -> &[RatFunc] {
        &self.gens
    }

    /// Generator-wise product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        RawIdeal { gens }
    }

    /// Concatenated generators.
    pub fn add(&self, other: &Self) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        RawIdeal { gens }
    }

    pub fn scale(&self, z: &RatFunc) -> Result<Self> {
        RawIdeal::new(self.gens.iter().map(|g| g * z).collect())
    }
}

impl fmt::Display for RawIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(RatFunc::to_string).collect();
        write!(f, "ideal({})", gens.join(", "))
    }
}

/// The `D`-module generated by the values at 0 of `T`-elements.
pub(crate) fn values_module(inst: &PullbackInstance, fs: &[RatFunc]) -> Result<ExtDModule> {
    let vals = fs.iter().map(|f| inst.phi(f)).collect::<Result<Vec<_>>>()?;
    inst.base().module(&vals)
}

#[cfg(test)]
mod tests;
