//! The maps `α : Cl(D) → Cl(R)`, `β : Cl(R) → Cl(T)` and `γ : Cl(R) → Cl(D)`
//! at ideal level, with principality and (star-)invertibility certificates.

use serde::Serialize;

use crate::base_domain::{ClassLabel, ExtDModule};
use crate::error::{Error, Result};
use crate::kernel::{FieldElem, RatFunc};
use crate::pullback::{PullbackInstance, StructuredIdeal, TIdeal};
use crate::star_ops::{star_eval, IdealValue, StarOp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `I = g·R`.
    Principal(RatFunc),
    /// `I·J = R`.
    Invertible(StructuredIdeal),
    /// `(I·(R : I))^∗ = R`; records the product and its closure.
    StarInvertible { product: StructuredIdeal, closure: StructuredIdeal },
    None,
}

/// An ideal together with the strongest invertibility property found for it.
/// Principal ideals are invertible, and invertible ones are `∗`-invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RClassWitness {
    pub ideal: StructuredIdeal,
    pub op: StarOp,
    pub certificate: Certificate,
}

impl RClassWitness {
    pub fn is_principal(&self) -> bool {
        matches!(self.certificate, Certificate::Principal(_))
    }

    pub fn is_invertible(&self) -> bool {
        matches!(self.certificate, Certificate::Principal(_) | Certificate::Invertible(_))
    }

    pub fn is_star_invertible(&self) -> bool {
        !matches!(self.certificate, Certificate::None)
    }

    /// Re-checks the certificate from scratch.
    pub fn replay(&self, inst: &PullbackInstance) -> Result<bool> {
        let r = inst.unit_ideal();
        Ok(match &self.certificate {
            Certificate::Principal(g) => inst.principal(g)? == self.ideal,
            Certificate::Invertible(j) => inst.mul(&self.ideal, j) == r,
            Certificate::StarInvertible { product, closure } => {
                let p = inst.mul(&self.ideal, &inst.colon(&self.ideal));
                p == *product && star_r(&self.op, &p, inst)? == *closure && *closure == r
            }
            Certificate::None => {
                let p = inst.mul(&self.ideal, &inst.colon(&self.ideal));
                star_r(&self.op, &p, inst)? != r
            }
        })
    }
}

/// Serializable summary of an ideal's class data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub ideal: String,
    pub op: String,
    pub certificate: String,
    pub label: Option<String>,
    pub beta: String,
}

fn star_r(op: &StarOp, i: &StructuredIdeal, inst: &PullbackInstance) -> Result<StructuredIdeal> {
    match star_eval(op, &IdealValue::R(i.clone()), inst)? {
        IdealValue::R(h) => Ok(h),
        _ => Err(Error::OutOfDomain(format!("{op} is not an operation on R"))),
    }
}

/// `α(J) = φ⁻¹(J)` for a `t`-invertible ideal `J` of `D`.
pub fn alpha(j: &ExtDModule, inst: &PullbackInstance) -> Result<StructuredIdeal> {
    if !inst.flags().phi_tilde_surjective {
        return Err(Error::Precondition("the unit map T → k is not surjective onto units".into()));
    }
    if !inst.base().is_v_invertible(j) {
        return Err(Error::NotInvertible);
    }
    inst.inverse_image(j)
}

/// `β(H) = HT`.
pub fn beta(h: &StructuredIdeal, inst: &PullbackInstance) -> TIdeal {
    inst.extend_to_t(h)
}

/// Writes `H = z·H′` with `H′ = φ⁻¹(dJ₀) ⊆ R` and `H′ ⊄ M`: `d` clears the
/// denominators of `J₀` and `z = u/d`.
pub fn gamma_normalize(h: &StructuredIdeal, inst: &PullbackInstance) -> Result<(RatFunc, StructuredIdeal)> {
    let j = h.dpart();
    if j.is_full() {
        return Err(Error::NotInvertible);
    }
    let base = inst.base();
    let d = base
        .generators(j)
        .iter()
        .map(|g| base.clearing_denominator(g))
        .fold(num_bigint::BigInt::from(1), |acc, m| num_integer::Integer::lcm(&acc, &m));
    let d = FieldElem::from_rational(num_rational::BigRational::from_integer(d));
    let inner = inst.inverse_image(&base.scale(j, &d))?;
    let z = h.unit_part().scale(&d.inv()?);
    Ok((z, inner))
}

/// `γ(H)`: the class of `(φ(H′))^{v_D}` in `Cl(D)`, for a `t`-invertible `H`.
pub fn gamma(h: &StructuredIdeal, inst: &PullbackInstance) -> Result<ClassLabel> {
    if !inst.flags().is_square_plus {
        return Err(Error::Precondition(format!("γ needs qf(D) = k; instance {} has qf(D) ≠ k", inst.name())));
    }
    if !invertibility_r(h, &StarOp::t(crate::star_ops::Side::R), inst)?.is_star_invertible() {
        return Err(Error::NotInvertible);
    }
    let (_, inner) = gamma_normalize(h, inst)?;
    let base = inst.base();
    base.class_label(&base.v(inner.dpart()))
}

pub fn is_principal_r(h: &StructuredIdeal, inst: &PullbackInstance) -> Option<RatFunc> {
    inst.is_principal(h)
}

/// Tests `H·(R : H) = R`, then `(H·(R : H))^op = R`.
pub fn invertibility_r(h: &StructuredIdeal, op: &StarOp, inst: &PullbackInstance) -> Result<RClassWitness> {
    let witness = |certificate| Ok(RClassWitness { ideal: h.clone(), op: op.clone(), certificate });
    if let Some(g) = inst.is_principal(h) {
        return witness(Certificate::Principal(g));
    }
    let inverse = inst.colon(h);
    let product = inst.mul(h, &inverse);
    let r = inst.unit_ideal();
    if product == r {
        return witness(Certificate::Invertible(inverse));
    }
    let closure = star_r(op, &product, inst)?;
    if closure == r {
        witness(Certificate::StarInvertible { product, closure })
    } else {
        witness(Certificate::None)
    }
}

/// `[H₁] = [H₂]` in `Cl^op(R)`: `(H₁·(R : H₂))^op` is principal.
pub fn class_equivalent_r(h1: &StructuredIdeal, h2: &StructuredIdeal, op: &StarOp, inst: &PullbackInstance) -> Result<bool> {
    for h in [h1, h2] {
        if !invertibility_r(h, op, inst)?.is_star_invertible() {
            return Err(Error::NotInvertible);
        }
    }
    let q = star_r(op, &inst.mul(h1, &inst.colon(h2)), inst)?;
    Ok(inst.is_principal(&q).is_some())
}

/// Report entry for `h` under `op`.
pub fn class_entry(h: &StructuredIdeal, op: &StarOp, inst: &PullbackInstance) -> Result<ClassEntry> {
    let w = invertibility_r(h, op, inst)?;
    let certificate = match &w.certificate {
        Certificate::Principal(g) => format!("principal({g})"),
        Certificate::Invertible(j) => format!("invertible({})", inst.to_expr(j)),
        Certificate::StarInvertible { .. } => "star_invertible".into(),
        Certificate::None => "none".into(),
    };
    let label = if w.is_star_invertible() && inst.flags().is_square_plus {
        Some(gamma(h, inst)?.to_string())
    } else {
        None
    };
    Ok(ClassEntry {
        ideal: inst.to_expr(h),
        op: op.to_string(),
        certificate,
        label,
        beta: inst.display_t(&beta(h, inst)),
    })
}

#[cfg(test)]
mod tests;
