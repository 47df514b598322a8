//! Definitional brute-force membership tests for `(R : I)` and `(R : (R : I))`.
//! They only use `member_r` and generator lists, never the closed forms, so
//! they can certify the structured calculus.

use serde::{Deserialize, Serialize};

use super::{PullbackInstance, RawIdeal, StructuredIdeal};
use crate::base_domain::ExtDModule;
use crate::error::Result;
use crate::kernel::{FieldElem, RatFunc};

/// Search bounds for witness families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWindow {
    /// Shifts `X^j` for `0 ≤ j ≤ degree`.
    pub degree: u32,
    /// Scalars `1/m` are tried for the listed small `m ≤ height`.
    pub height: i64,
}

impl Default for DegreeWindow {
    fn default() -> Self {
        DegreeWindow { degree: 12, height: 50 }
    }
}

impl DegreeWindow {
    fn scalars(&self, k_disc: i64) -> Vec<FieldElem> {
        let mut out: Vec<FieldElem> =
            [1, 2, 3, 5, 7].iter().filter(|&&m| m <= self.height).map(|&m| FieldElem::from_ratio(1, m)).collect();
        if k_disc != 1 {
            let root = FieldElem::sqrt(k_disc).expect("squarefree");
            let extra: Vec<FieldElem> = out.iter().map(|c| c * &root).collect();
            out.extend(extra);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VMembership {
    In,
    /// `g ∈ (R : I)` with `h·g ∉ R`.
    Out(RatFunc),
    Inconclusive,
}

/// `g ∈ (R : I)`, decided exactly by testing `g·fᵢ ∈ R` for every generator.
pub fn oracle_colon_member(g: &RatFunc, i: &RawIdeal, inst: &PullbackInstance) -> bool {
    i.gens().iter().all(|f| inst.member_r(&(g * f)))
}

/// Witness search for `h ∉ (R : (R : I))` over the family `u⁻¹·c·κ·X^j`,
/// where `u` is the T-content of `I` and `c` runs over the basis of `(D : J)`
/// and then `1`. Every candidate is certified in `(R : I)` generator by
/// generator once, when the oracle is built.
#[derive(Clone, Debug)]
pub struct VOracle {
    bases: Vec<RatFunc>,
    /// `(base index, κ, j)` of every certified family member.
    certified: Vec<(usize, FieldElem, i64)>,
    closed: StructuredIdeal,
}

impl VOracle {
    pub fn new(i: &RawIdeal, inst: &PullbackInstance, window: DegreeWindow) -> Result<Self> {
        let hull = inst.hull(i)?;
        let u_inv = hull.unit_part().inv()?;
        let mut bases = Vec::new();
        if let c @ (ExtDModule::Lattice(_) | ExtDModule::Span(_)) = inst.base().colon(hull.dpart()) {
            bases.extend(inst.base().generators(&c).iter().map(|x| u_inv.scale(x)));
        }
        bases.push(u_inv);
        let scalars = window.scalars(inst.k_disc());
        let mut certified = Vec::new();
        for (b, base) in bases.iter().enumerate() {
            let products: Vec<Shifts> = i.gens().iter().map(|f| Shifts::new(&(base * f), inst)).collect();
            for kappa in &scalars {
                for j in 0..=window.degree as i64 {
                    if products.iter().all(|p| p.member(kappa, j, inst)) {
                        certified.push((b, kappa.clone(), j));
                    }
                }
            }
        }
        Ok(VOracle { bases, certified, closed: inst.v(&hull) })
    }

    /// Elements of the family that were certified in `(R : I)`.
    pub fn certified(&self) -> Vec<RatFunc> {
        self.certified.iter().map(|(b, k, j)| self.bases[*b].scale_shift(k, *j)).collect()
    }

    pub fn member(&self, h: &RatFunc, inst: &PullbackInstance) -> VMembership {
        let hb: Vec<Shifts> = self.bases.iter().map(|b| Shifts::new(&(h * b), inst)).collect();
        if let Some((b, k, j)) = self.certified.iter().find(|(b, k, j)| !hb[*b].member(k, *j, inst)) {
            return VMembership::Out(self.bases[*b].scale_shift(k, *j));
        }
        if inst.contains(&self.closed, h) {
            VMembership::In
        } else {
            VMembership::Inconclusive
        }
    }
}

/// Decides `κ·X^j·f ∈ R` for many `(κ, j)` without rebuilding the product.
/// Writing `f = X^e·g` with `g(0)` finite and nonzero, the shifted element lies
/// in `T` iff `g ∈ T` and `e + j ≥ 0`, and its value at `0` is `0` when
/// `e + j > 0` and `κ·g(0)` when `e + j = 0`.
#[derive(Clone, Debug)]
struct Shifts {
    zero: bool,
    unit_part_in_t: bool,
    order: i64,
    lead: FieldElem,
}

impl Shifts {
    fn new(f: &RatFunc, inst: &PullbackInstance) -> Self {
        if f.is_zero() {
            return Shifts { zero: true, unit_part_in_t: true, order: 0, lead: FieldElem::zero() };
        }
        let order = f.ord0().expect("nonzero");
        let g = f.scale_shift(&FieldElem::one(), -order);
        let lead = g.eval0().expect("X-free part has no pole at 0");
        Shifts { zero: false, unit_part_in_t: inst.in_t(&g), order, lead }
    }

    fn member(&self, kappa: &FieldElem, j: i64, inst: &PullbackInstance) -> bool {
        if self.zero || kappa.is_zero() {
            return true;
        }
        let e = self.order + j;
        self.unit_part_in_t && (e > 0 || e == 0 && inst.base().contains(&(kappa * &self.lead)))
    }
}

/// One-shot form of [`VOracle::member`].
pub fn oracle_v_member(h: &RatFunc, i: &RawIdeal, inst: &PullbackInstance, window: DegreeWindow) -> Result<VMembership> {
    Ok(VOracle::new(i, inst, window)?.member(h, inst))
}
