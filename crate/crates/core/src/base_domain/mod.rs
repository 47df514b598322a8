//! The base domain `D ⊊ k` and its calculus of `D`-submodules of `k`.
//!
//! Supported domains: ℤ inside ℚ or inside a quadratic field, the maximal
//! order of an imaginary quadratic field, and ℚ inside a quadratic field.
//! Every `D`-module is flattened to coordinates over the ℚ-basis `(1, √d)`
//! of `k`.

mod class_group;
mod module;

pub use class_group::{ClassGroup, ClassLabel};
pub use module::ExtDModule;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{is_squarefree, FieldElem};
use crate::lattice::{QSpan, ZLattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Integers,
    /// Maximal order of ℚ(√d), `d < 0`.
    QuadraticOrder(i64),
    /// ℚ, viewed inside a proper quadratic extension `k`.
    Field,
}

#[derive(Clone, Debug)]
pub struct BaseDomain {
    kind: DomainKind,
    k_disc: i64,
    class_group: ClassGroup,
}

impl PartialEq for BaseDomain {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.k_disc == other.k_disc
    }
}

impl Eq for BaseDomain {}

/// Largest discriminant magnitude for which class groups are enumerated.
pub const MAX_ABS_DISCRIMINANT: i64 = 400;

impl BaseDomain {
    /// ℤ inside `k = ℚ(√k_disc)`; `k_disc = 1` gives `k = ℚ`.
    pub fn integers(k_disc: i64) -> Result<Self> {
        if !is_squarefree(k_disc) {
            return Err(Error::NotSquarefree(k_disc));
        }
        Ok(BaseDomain { kind: DomainKind::Integers, k_disc, class_group: ClassGroup::trivial() })
    }

    /// The ring of integers of ℚ(√d) for squarefree `d < 0`, with `k = ℚ(√d)`.
    pub fn quadratic_order(d: i64) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        if d >= 0 {
            return Err(Error::Unsupported(format!("real quadratic order sqrt({d})")));
        }
        let disc = fundamental_discriminant(d);
        if disc.abs() > MAX_ABS_DISCRIMINANT {
            return Err(Error::Unsupported(format!("|discriminant| {} exceeds {MAX_ABS_DISCRIMINANT}", disc.abs())));
        }
        let mut dom = BaseDomain { kind: DomainKind::QuadraticOrder(d), k_disc: d, class_group: ClassGroup::trivial() };
        dom.class_group = ClassGroup::compute(&dom)?;
        Ok(dom)
    }

    /// ℚ as a proper subfield of `k = ℚ(√k_disc)`.
    pub fn rational_field(k_disc: i64) -> Result<Self> {
        if !is_squarefree(k_disc) {
            return Err(Error::NotSquarefree(k_disc));
        }
        if k_disc == 1 {
            return Err(Error::Unsupported("D must be a proper subring of k".into()));
        }
        Ok(BaseDomain { kind: DomainKind::Field, k_disc, class_group: ClassGroup::trivial() })
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    /// Squarefree `d` with `k = ℚ(√d)`; 1 for `k = ℚ`.
    pub fn k_disc(&self) -> i64 {
        self.k_disc
    }

    pub fn class_group(&self) -> &ClassGroup {
        &self.class_group
    }

    pub fn is_field(&self) -> bool {
        self.kind == DomainKind::Field
    }

    /// `true` when the quotient field of `D` is all of `k`.
    pub fn quotient_field_is_k(&self) -> bool {
        match self.kind {
            DomainKind::Integers => self.k_disc == 1,
            DomainKind::QuadraticOrder(_) => true,
            DomainKind::Field => false,
        }
    }

    /// ℤ, Dedekind orders and fields are all PvMDs.
    pub fn is_pvmd(&self) -> bool {
        true
    }

    pub fn dim(&self) -> usize {
        if self.k_disc == 1 {
            1
        } else {
            2
        }
    }

    /// Short human name, e.g. `ℤ`, `O_K(-5)`, `ℚ`.
    pub fn name(&self) -> String {
        match self.kind {
            DomainKind::Integers => "ℤ".into(),
            DomainKind::QuadraticOrder(-5) => "ℤ[√-5]".into(),
            DomainKind::QuadraticOrder(d) => format!("O(√{d})"),
            DomainKind::Field => "ℚ".into(),
        }
    }

    /// Name of the ambient field `k`.
    pub fn k_name(&self) -> String {
        match self.k_disc {
            1 => "ℚ".into(),
            -1 => "ℚ(i)".into(),
            d => format!("ℚ(√{d})"),
        }
    }

    pub fn coords(&self, x: &FieldElem) -> Result<Vec<BigRational>> {
        let x = x.in_field(self.k_disc)?;
        if self.k_disc == 1 {
            Ok(vec![x.rat().clone()])
        } else {
            Ok(vec![x.rat().clone(), x.surd().clone()])
        }
    }

    pub fn elem(&self, c: &[BigRational]) -> FieldElem {
        if self.k_disc == 1 {
            FieldElem::from_rational(c[0].clone())
        } else {
            FieldElem::new(c[0].clone(), c[1].clone(), self.k_disc).expect("squarefree tag")
        }
    }

    /// The element `ω` with `O_K = ℤ + ℤω`.
    pub fn omega(&self) -> Option<FieldElem> {
        match self.kind {
            DomainKind::QuadraticOrder(d) => Some(if d.rem_euclid(4) == 1 {
                let half = BigRational::new(1.into(), 2.into());
                FieldElem::new(half.clone(), half, d).expect("squarefree")
            } else {
                FieldElem::sqrt(d).expect("squarefree")
            }),
            _ => None,
        }
    }

    /// A ℤ-basis of `D` (ℚ-basis when `D` is a field).
    pub fn basis(&self) -> Vec<FieldElem> {
        match self.omega() {
            Some(w) => vec![FieldElem::one(), w],
            None => vec![FieldElem::one()],
        }
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        let Ok(c) = self.coords(x) else { return false };
        match self.kind {
            DomainKind::Integers => c.iter().skip(1).all(Zero::is_zero) && c[0].is_integer(),
            DomainKind::Field => c.iter().skip(1).all(Zero::is_zero),
            DomainKind::QuadraticOrder(_) => self.unit_module().contains_in(self, &c),
        }
    }

    pub fn is_unit(&self, x: &FieldElem) -> bool {
        !x.is_zero() && self.contains(x) && x.inv().map(|y| self.contains(&y)).unwrap_or(false)
    }

    /// `D` itself as a module.
    pub fn unit_module(&self) -> ExtDModule {
        self.module(&[FieldElem::one()]).expect("1 lies in k")
    }

    /// The `D`-module generated by `gens`; all-zero or empty input gives ZERO.
    pub fn module(&self, gens: &[FieldElem]) -> Result<ExtDModule> {
        let basis = self.basis();
        let mut vecs = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            for b in &basis {
                vecs.push(self.coords(&g.checked_mul(b)?)?);
            }
        }
        Ok(self.from_vectors(&vecs))
    }

    pub(crate) fn from_vectors(&self, vecs: &[Vec<BigRational>]) -> ExtDModule {
        if self.is_field() {
            match QSpan::from_rows(self.dim(), vecs) {
                None => ExtDModule::Zero,
                Some(s) if s.rank() == self.dim() => ExtDModule::Full,
                Some(s) => ExtDModule::Span(s),
            }
        } else {
            match ZLattice::from_rows(self.dim(), vecs) {
                None => ExtDModule::Zero,
                Some(l) => ExtDModule::Lattice(l),
            }
        }
    }

    /// Basis elements of a proper nonzero module; these also generate it over `D`.
    pub fn generators(&self, n: &ExtDModule) -> Vec<FieldElem> {
        match n {
            ExtDModule::Zero | ExtDModule::Full => Vec::new(),
            ExtDModule::Lattice(l) => l.basis().iter().map(|v| self.elem(v)).collect(),
            ExtDModule::Span(s) => s.basis().iter().map(|v| self.elem(v)).collect(),
        }
    }

    /// A single generator when the module is cyclic, otherwise its basis.
    pub fn short_generators(&self, n: &ExtDModule) -> Vec<FieldElem> {
        match self.is_cyclic(n) {
            Some(c) => vec![c],
            None => self.generators(n),
        }
    }

    pub fn member(&self, n: &ExtDModule, x: &FieldElem) -> bool {
        match self.coords(x) {
            Ok(c) => n.contains_in(self, &c),
            Err(_) => false,
        }
    }

    pub fn add(&self, a: &ExtDModule, b: &ExtDModule) -> ExtDModule {
        use ExtDModule::*;
        match (a, b) {
            (Zero, x) | (x, Zero) => x.clone(),
            (Full, _) | (_, Full) => Full,
            (Lattice(x), Lattice(y)) => Lattice(x.sum(y)),
            (Span(x), Span(y)) => {
                let s = x.sum(y);
                if s.rank() == self.dim() {
                    Full
                } else {
                    Span(s)
                }
            }
            _ => unreachable!("modules of one domain share a representation"),
        }
    }

    pub fn mul(&self, a: &ExtDModule, b: &ExtDModule) -> ExtDModule {
        use ExtDModule::*;
        match (a, b) {
            (Zero, _) | (_, Zero) => Zero,
            (Full, _) | (_, Full) => Full,
            _ => {
                let (ga, gb) = (self.generators(a), self.generators(b));
                let mut vecs = Vec::with_capacity(ga.len() * gb.len());
                for x in &ga {
                    for y in &gb {
                        vecs.push(self.coords(&(x * y)).expect("same field"));
                    }
                }
                self.from_vectors(&vecs)
            }
        }
    }

    /// `c·N` for `c ∈ k`.
    pub fn scale(&self, n: &ExtDModule, c: &FieldElem) -> ExtDModule {
        if c.is_zero() {
            return ExtDModule::Zero;
        }
        match n {
            ExtDModule::Zero | ExtDModule::Full => n.clone(),
            _ => {
                let vecs: Vec<_> = self.generators(n).iter().map(|g| self.coords(&(g * c)).expect("same field")).collect();
                self.from_vectors(&vecs)
            }
        }
    }

    pub fn intersect(&self, a: &ExtDModule, b: &ExtDModule) -> ExtDModule {
        use ExtDModule::*;
        match (a, b) {
            (Zero, _) | (_, Zero) => Zero,
            (Full, x) | (x, Full) => x.clone(),
            (Lattice(x), Lattice(y)) => x.intersect(y).map(Lattice).unwrap_or(Zero),
            (Span(x), Span(y)) => {
                if x == y {
                    a.clone()
                } else {
                    Zero
                }
            }
            _ => unreachable!("modules of one domain share a representation"),
        }
    }

    /// `a ⊆ b`.
    pub fn leq(&self, a: &ExtDModule, b: &ExtDModule) -> bool {
        &self.add(a, b) == b
    }

    /// `(D :_k N) = {y ∈ k : yN ⊆ D}`.
    pub fn colon(&self, n: &ExtDModule) -> ExtDModule {
        match n {
            ExtDModule::Zero => ExtDModule::Full,
            ExtDModule::Full => ExtDModule::Zero,
            _ => {
                let unit = self.unit_module();
                let mut acc = ExtDModule::Full;
                for g in self.generators(n) {
                    let inv = g.inv().expect("basis elements are nonzero");
                    acc = self.intersect(&acc, &self.scale(&unit, &inv));
                    if acc == ExtDModule::Zero {
                        break;
                    }
                }
                acc
            }
        }
    }

    pub fn v(&self, n: &ExtDModule) -> ExtDModule {
        self.colon(&self.colon(n))
    }

    /// A generator `c` with `N = cD`, if one exists.
    pub fn is_cyclic(&self, n: &ExtDModule) -> Option<FieldElem> {
        match n {
            ExtDModule::Zero | ExtDModule::Full => None,
            ExtDModule::Span(s) => (s.rank() == 1).then(|| self.elem(&s.basis()[0])),
            ExtDModule::Lattice(l) => match self.kind {
                DomainKind::Integers | DomainKind::Field => (l.rank() == 1).then(|| self.elem(&l.basis()[0])),
                DomainKind::QuadraticOrder(_) => {
                    let c = self.shortest_vector(l);
                    (self.module(std::slice::from_ref(&c)).ok().as_ref() == Some(n)).then_some(c)
                }
            },
        }
    }

    /// Lagrange–Gauss reduction of a rank-2 lattice under the field norm.
    fn shortest_vector(&self, l: &ZLattice) -> FieldElem {
        let b = l.basis();
        let mut u = self.elem(&b[0]);
        if b.len() < 2 {
            return u;
        }
        let mut v = self.elem(&b[1]);
        let norm = |x: &FieldElem| x.norm();
        if norm(&v) < norm(&u) {
            std::mem::swap(&mut u, &mut v);
        }
        loop {
            // bilinear form B(u, v) = Tr(u·v̄)/2
            let bf = (&u * &v.conj()).rat().clone();
            let mu = round(&(bf / norm(&u)));
            if !mu.is_zero() {
                v = &v - &u.scale(&BigRational::from_integer(mu));
            }
            if norm(&v) < norm(&u) {
                std::mem::swap(&mut u, &mut v);
            } else {
                return u;
            }
        }
    }

    pub fn is_invertible(&self, n: &ExtDModule) -> bool {
        match n {
            ExtDModule::Zero | ExtDModule::Full => false,
            _ => self.mul(n, &self.colon(n)) == self.unit_module(),
        }
    }

    pub fn is_v_invertible(&self, n: &ExtDModule) -> bool {
        match n {
            ExtDModule::Zero | ExtDModule::Full => false,
            _ => self.v(&self.mul(n, &self.colon(n))) == self.unit_module(),
        }
    }

    /// Class of an invertible module in the class group of `D`.
    pub fn class_label(&self, n: &ExtDModule) -> Result<ClassLabel> {
        if !self.is_invertible(n) {
            return Err(Error::NotInvertible);
        }
        match (&self.kind, n) {
            (DomainKind::QuadraticOrder(_), ExtDModule::Lattice(l)) => self.class_group.label_of(self, l),
            _ => Ok(self.class_group.identity()),
        }
    }

    /// `(label, ideal)` for every class of `D`.
    pub fn class_representatives(&self) -> Vec<(ClassLabel, ExtDModule)> {
        let g = &self.class_group;
        if g.representatives().is_empty() {
            return vec![(g.identity(), self.unit_module())];
        }
        g.elements().iter().cloned().zip(g.representatives().iter().cloned()).collect()
    }

    /// Smallest positive integer `m` with `m·x ∈ D`, for `D` of integer kind.
    pub fn clearing_denominator(&self, x: &FieldElem) -> BigInt {
        match self.kind {
            DomainKind::Field => BigInt::one(),
            DomainKind::Integers => x.rat().denom().clone(),
            DomainKind::QuadraticOrder(_) => {
                let l = x.denominator_lcm();
                // the lcm of coordinate denominators always works; try its divisors
                let mut best = l.clone();
                let mut m = BigInt::one();
                while m < l {
                    if l.is_multiple_of(&m) && self.contains(&x.scale(&BigRational::from_integer(m.clone()))) {
                        best = m;
                        break;
                    }
                    m += 1;
                }
                best
            }
        }
    }

    /// Human-readable module, e.g. `2ℤ`, `ℤ·2 + ℤ·(1+sqrt(-5))`, `0`, `k`.
    pub fn display_module(&self, n: &ExtDModule) -> String {
        match n {
            ExtDModule::Zero => "0".into(),
            ExtDModule::Full => self.k_name(),
            _ => {
                if let Some(c) = self.is_cyclic(n) {
                    let cs = if c.is_one() {
                        String::new()
                    } else if c.as_integer().is_some() {
                        c.to_string()
                    } else {
                        format!("({c})")
                    };
                    return format!("{cs}{}", self.name());
                }
                let ring = if self.is_field() { "ℚ" } else { "ℤ" };
                self.generators(n)
                    .iter()
                    .map(|g| if g.is_compound() { format!("{ring}·({g})") } else { format!("{ring}·{g}") })
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        }
    }
}

impl fmt::Display for BaseDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn round(q: &BigRational) -> BigInt {
    (q + BigRational::new(1.into(), 2.into())).floor().to_integer()
}

/// Discriminant of the maximal order of ℚ(√d).
pub fn fundamental_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Add, multiply, colon, v and predicate helpers in free-function form.
pub fn dmod_from_generators(gens: &[FieldElem], d: &BaseDomain) -> Result<ExtDModule> {
    d.module(gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModOp {
    Add,
    Mul,
}

pub fn dmod_arith(a: &ExtDModule, b: &ExtDModule, op: ModOp, d: &BaseDomain) -> Result<ExtDModule> {
    if !a.fits(d) || !b.fits(d) {
        return Err(Error::MixedBaseDomains);
    }
    Ok(match op {
        ModOp::Add => d.add(a, b),
        ModOp::Mul => d.mul(a, b),
    })
}

pub fn dmod_colon(n: &ExtDModule, d: &BaseDomain) -> ExtDModule {
    d.colon(n)
}

pub fn dmod_v(n: &ExtDModule, d: &BaseDomain) -> ExtDModule {
    d.v(n)
}

pub fn class_label_d(n: &ExtDModule, d: &BaseDomain) -> Result<ClassLabel> {
    d.class_label(n)
}

#[cfg(test)]
mod tests;
