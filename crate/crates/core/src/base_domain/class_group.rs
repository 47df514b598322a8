//! Ideal class groups of imaginary quadratic maximal orders, computed from
//! reduced binary quadratic forms and put into Smith normal form.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{fundamental_discriminant, BaseDomain, DomainKind, ExtDModule};
use crate::error::{Error, Result};
use crate::kernel::FieldElem;
use crate::lattice::ZLattice;

/// An element of `ℤ/n₁ × … × ℤ/n_r`, exponents reduced into `[0, nᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassLabel {
    pub exps: Vec<i64>,
    pub orders: Vec<i64>,
}

impl ClassLabel {
    pub fn identity(orders: &[i64]) -> Self {
        ClassLabel { exps: vec![0; orders.len()], orders: orders.to_vec() }
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.orders, other.orders);
        let exps = self.exps.iter().zip(&other.exps).zip(&self.orders).map(|((a, b), n)| (a + b).rem_euclid(*n)).collect();
        ClassLabel { exps, orders: self.orders.clone() }
    }

    pub fn neg(&self) -> Self {
        let exps = self.exps.iter().zip(&self.orders).map(|(a, n)| (-a).rem_euclid(*n)).collect();
        ClassLabel { exps, orders: self.orders.clone() }
    }

    /// Order of the element.
    pub fn order(&self) -> i64 {
        self.exps.iter().zip(&self.orders).fold(1, |acc, (e, n)| acc.lcm(&(n / n.gcd(e))))
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let e: Vec<String> = self.exps.iter().map(i64::to_string).collect();
        let g: Vec<String> = self.orders.iter().map(|n| format!("ℤ/{n}")).collect();
        write!(f, "({}) in {}", e.join(", "), g.join(" × "))
    }
}

type Form = (i128, i128, i128);

#[derive(Clone, Debug, Default)]
pub struct ClassGroup {
    orders: Vec<i64>,
    discriminant: i64,
    index: HashMap<Form, usize>,
    labels: Vec<ClassLabel>,
    forms: Vec<Form>,
    reps: Vec<ExtDModule>,
}

impl ClassGroup {
    pub fn trivial() -> Self {
        ClassGroup { labels: vec![ClassLabel::identity(&[])], ..Default::default() }
    }

    /// Invariant factors `n₁ | n₂ | …`, all greater than 1.
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn class_number(&self) -> i64 {
        self.orders.iter().product()
    }

    pub fn identity(&self) -> ClassLabel {
        ClassLabel::identity(&self.orders)
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// Reduced forms `(a, b, c)` in enumeration order.
    pub fn reduced_forms(&self) -> Vec<(i64, i64, i64)> {
        self.forms.iter().map(|&(a, b, c)| (a as i64, b as i64, c as i64)).collect()
    }

    /// Every class, as a label.
    pub fn elements(&self) -> &[ClassLabel] {
        &self.labels
    }

    /// One ideal per class, aligned with [`Self::elements`]. Empty for the
    /// trivial group, where `D` itself represents the only class.
    pub fn representatives(&self) -> &[ExtDModule] {
        &self.reps
    }

    pub(super) fn compute(dom: &BaseDomain) -> Result<Self> {
        let DomainKind::QuadraticOrder(d) = *dom.kind() else {
            return Ok(Self::trivial());
        };
        let disc = fundamental_discriminant(d);
        let forms = reduced_forms(disc as i128);
        let h = forms.len();
        let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let lookup = |l: &ZLattice| -> Result<usize> {
            let f = reduce(form_of(dom, l)?, disc as i128);
            index.get(&f).copied().ok_or_else(|| Error::Precondition(format!("form {f:?} missing from the reduced list")))
        };
        let mut reps: Vec<Option<ZLattice>> = vec![None; h];
        for &(a, b, _) in &forms {
            let ideal = form_ideal(dom, a, b, disc)?;
            let ExtDModule::Lattice(l) = ideal else { unreachable!("nonzero ideal") };
            let i = lookup(&l)?;
            reps[i] = Some(l);
        }
        let reps: Vec<ZLattice> = reps
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Precondition("ideal-to-form map is not onto".into()))?;
        let ExtDModule::Lattice(unit) = dom.unit_module() else { unreachable!() };
        let id = lookup(&unit)?;
        let mut table = vec![vec![0usize; h]; h];
        for i in 0..h {
            for j in 0..h {
                let ExtDModule::Lattice(p) = dom.mul(&ExtDModule::Lattice(reps[i].clone()), &ExtDModule::Lattice(reps[j].clone())) else {
                    unreachable!()
                };
                table[i][j] = lookup(&p)?;
            }
        }
        let (orders, labels) = structure(&table, id);
        let reps = reps.into_iter().map(ExtDModule::Lattice).collect();
        Ok(ClassGroup { orders, discriminant: disc, index, labels, forms, reps })
    }

    pub(super) fn label_of(&self, dom: &BaseDomain, l: &ZLattice) -> Result<ClassLabel> {
        let f = reduce(form_of(dom, l)?, self.discriminant as i128);
        let i = self.index.get(&f).ok_or(Error::NotInvertible)?;
        Ok(self.labels[*i].clone())
    }
}

/// Ideal `aℤ + ((−b + √Δ)/2)ℤ` attached to the form `(a, b, c)`.
fn form_ideal(dom: &BaseDomain, a: i128, b: i128, disc: i64) -> Result<ExtDModule> {
    let d = dom.k_disc();
    let half = BigRational::new(1.into(), 2.into());
    let root_half = if disc == d { half.clone() } else { BigRational::from_integer(1.into()) };
    let second = FieldElem::new(BigRational::from_integer((-b).into()) * &half, root_half, d)?;
    dom.module(&[FieldElem::from_int(a as i64), second])
}

/// Norm form of an ideal with a positively oriented ℤ-basis, divided by the ideal norm.
fn form_of(dom: &BaseDomain, l: &ZLattice) -> Result<Form> {
    if l.rank() != 2 {
        return Err(Error::NotInvertible);
    }
    let b = l.basis();
    let det = &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0];
    let (mut alpha, mut beta) = (dom.elem(&b[0]), dom.elem(&b[1]));
    if det.is_negative() {
        std::mem::swap(&mut alpha, &mut beta);
    }
    let unit_det = if fundamental_discriminant(dom.k_disc()) == dom.k_disc() {
        BigRational::new(1.into(), 2.into())
    } else {
        BigRational::from_integer(1.into())
    };
    let n = det.abs() / unit_det;
    let a = alpha.norm() / &n;
    let bb = (&alpha * &beta.conj()).trace() / &n;
    let c = beta.norm() / &n;
    let int = |q: BigRational| -> Result<i128> {
        if !q.is_integer() {
            return Err(Error::NotInvertible);
        }
        q.to_integer().to_i128().ok_or_else(|| Error::Unsupported("form coefficients too large".into()))
    };
    Ok((int(a)?, int(bb)?, int(c)?))
}

fn reduce((mut a, mut b, mut c): Form, disc: i128) -> Form {
    loop {
        if !(-a < b && b <= a) {
            let k = Integer::div_floor(&(a - b), &(2 * a));
            b += 2 * a * k;
            c = (b * b - disc) / (4 * a);
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return (a, b, c);
    }
}

fn reduced_forms(disc: i128) -> Vec<Form> {
    let mut out = Vec::new();
    let mut a = 1i128;
    while 3 * a * a <= -disc {
        for b in (-a + 1)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                out.push((a, b, c));
            }
        }
        a += 1;
    }
    out
}

/// Invariant factors and per-element labels of a finite abelian group given by
/// its multiplication table.
fn structure(table: &[Vec<usize>], id: usize) -> (Vec<i64>, Vec<ClassLabel>) {
    let h = table.len();
    let mut coords: HashMap<usize, Vec<i64>> = HashMap::from([(id, Vec::new())]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    let mut gens = 0usize;
    while coords.len() < h {
        let g = (0..h).find(|x| !coords.contains_key(x)).expect("missing element");
        let (mut p, mut m) = (g, 1i64);
        while !coords.contains_key(&p) {
            p = table[p][g];
            m += 1;
        }
        let mut rel: Vec<i64> = coords[&p].iter().map(|e| -e).collect();
        rel.resize(gens, 0);
        rel.push(m);
        relations.push(rel);
        let old: Vec<(usize, Vec<i64>)> = coords.iter().map(|(k, v)| (*k, v.clone())).collect();
        let mut power = id;
        for e in 0..m {
            for (x, cx) in &old {
                let mut c = cx.clone();
                c.resize(gens, 0);
                c.push(e);
                coords.entry(table[*x][power]).or_insert(c);
            }
            power = table[power][g];
        }
        gens += 1;
    }
    for r in relations.iter_mut() {
        r.resize(gens, 0);
    }
    let (diag, v) = smith(relations);
    let keep: Vec<usize> = (0..gens).filter(|&i| diag[i] != 1).collect();
    let orders: Vec<i64> = keep.iter().map(|&i| diag[i]).collect();
    let mut labels = vec![ClassLabel::identity(&orders); h];
    for (elem, x) in coords {
        let mut x = x;
        x.resize(gens, 0);
        let y: Vec<i64> = (0..gens).map(|j| (0..gens).map(|i| x[i] * v[i][j]).sum()).collect();
        labels[elem] = ClassLabel { exps: keep.iter().map(|&i| y[i].rem_euclid(diag[i])).collect(), orders: orders.clone() };
    }
    (orders, labels)
}

/// Smith normal form `U·A·V = diag`; returns the diagonal and `V`.
fn smith(mut a: Vec<Vec<i64>>) -> (Vec<i64>, Vec<Vec<i64>>) {
    let r = a.len();
    let mut v: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    for k in 0..r {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..r {
                for j in k..r {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(k, bi);
            for row in a.iter_mut() {
                row.swap(k, bj);
            }
            for row in v.iter_mut() {
                row.swap(k, bj);
            }
            let mut dirty = false;
            for i in k + 1..r {
                let q = Integer::div_floor(&a[i][k], &a[k][k]);
                if q != 0 {
                    for j in 0..r {
                        a[i][j] -= q * a[k][j];
                    }
                }
                dirty |= a[i][k] != 0;
            }
            for j in k + 1..r {
                let q = Integer::div_floor(&a[k][j], &a[k][k]);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[k];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[k];
                    }
                }
                dirty |= a[k][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (k + 1..r).find(|&i| (k + 1..r).any(|j| a[i][j] % a[k][k] != 0));
            match bad {
                Some(i) => {
                    for j in 0..r {
                        a[k][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        if a[k][k] < 0 {
            for j in 0..r {
                a[k][j] = -a[k][j];
            }
        }
    }
    ((0..r).map(|i| a[i][i]).collect(), v)
}
