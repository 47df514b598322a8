//! Seeded samplers. Every list starts with fixed corner cases, then fills up
//! with pseudo-random draws from a ChaCha stream keyed by the seed.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SampleParams;
use crate::base_domain::ExtDModule;
use crate::kernel::{FieldElem, Poly, RatFunc};
use crate::pullback::{PullbackInstance, RawIdeal, TIdeal, TKind};

/// Independent stream per purpose, so adding draws to one sampler does not
/// shift the others.
fn stream(params: &SampleParams, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(purpose);
    rng
}

fn int(n: i64) -> RatFunc {
    RatFunc::from_int(n)
}

fn root(inst: &PullbackInstance) -> Option<FieldElem> {
    (inst.k_disc() != 1).then(|| FieldElem::sqrt(inst.k_disc()).expect("squarefree"))
}

/// Corner cases in a fixed order: `(X)`, `(2, X)`, `(3)`, `(X, X²)`,
/// `(2X, X²)`, then instance-specific ones.
pub fn corner_ideals(inst: &PullbackInstance) -> Vec<RawIdeal> {
    let x = RatFunc::x();
    let x2 = RatFunc::x_pow(2);
    let mut out = vec![
        vec![x.clone()],
        vec![int(2), x.clone()],
        vec![int(3)],
        vec![x.clone(), x2.clone()],
        vec![&int(2) * &x, x2],
    ];
    if let Some(w) = inst.base().omega() {
        let one_w = RatFunc::constant(&FieldElem::one() + &w);
        out.push(vec![int(2), one_w.clone()]);
        out.push(vec![int(3), one_w]);
    }
    if !inst.base().quotient_field_is_k() {
        if let Some(r) = root(inst) {
            out.push(vec![RatFunc::one(), RatFunc::constant(r)]);
        }
    }
    out.into_iter().map(|g| RawIdeal::new(g).expect("nonempty")).collect()
}

fn scalar(rng: &mut ChaCha8Rng, inst: &PullbackInstance, height: i64, nonzero: bool) -> FieldElem {
    loop {
        let den = rng.random_range(1..=3i64);
        let a = BigRational::new(rng.random_range(-height..=height).into(), den.into());
        let b = if inst.k_disc() != 1 && rng.random_bool(0.5) {
            BigRational::new(rng.random_range(-height..=height).into(), den.into())
        } else {
            BigRational::from_integer(0.into())
        };
        let c = FieldElem::new(a, b, inst.k_disc()).expect("squarefree");
        if !nonzero || !c.is_zero() {
            return c;
        }
    }
}

fn poly(rng: &mut ChaCha8Rng, inst: &PullbackInstance, params: &SampleParams) -> Poly {
    loop {
        let deg = rng.random_range(0..=params.max_degree as usize);
        let coeffs: Vec<FieldElem> = (0..=deg)
            .map(|_| if rng.random_bool(0.25) { FieldElem::zero() } else { scalar(rng, inst, params.height, false) })
            .collect();
        let p = Poly::new(coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A nonzero element of `T`.
fn t_element(rng: &mut ChaCha8Rng, inst: &PullbackInstance, params: &SampleParams) -> RatFunc {
    let p = RatFunc::from_poly(poly(rng, inst, params));
    match inst.t_kind() {
        TKind::Local if rng.random_bool(0.4) => {
            // divide by a unit 1 + cX of the local ring
            let c = scalar(rng, inst, params.height, true);
            let unit = Poly::new(vec![FieldElem::one(), c]);
            p.checked_div(&RatFunc::from_poly(unit)).expect("nonzero")
        }
        _ => p,
    }
}

/// A nonzero element of `k(X)`, occasionally with poles.
fn element(rng: &mut ChaCha8Rng, inst: &PullbackInstance, params: &SampleParams) -> RatFunc {
    let mut f = t_element(rng, inst, params);
    if rng.random_bool(0.15) {
        f = f.scale_shift(&FieldElem::one(), -1);
    }
    if inst.t_kind() == TKind::Poly && rng.random_bool(0.15) {
        let a = rng.random_range(1..=3i64);
        let lin = RatFunc::from_poly(Poly::from_ints(&[-a, 1]));
        f = f.checked_div(&lin).expect("nonzero");
    }
    f
}

/// `count` ideals: corners first, then random generator lists of length
/// `1..=max_gens`; a quarter of them share a common factor.
pub fn sample_ideals(inst: &PullbackInstance, params: &SampleParams) -> Vec<RawIdeal> {
    let mut out = corner_ideals(inst);
    out.truncate(params.count);
    let mut rng = stream(params, 1);
    while out.len() < params.count {
        let n = rng.random_range(1..=params.max_gens);
        let mut gens: Vec<RatFunc> = (0..n).map(|_| element(&mut rng, inst, params)).collect();
        if rng.random_bool(0.25) {
            let common = match (inst.t_kind(), rng.random_bool(0.5)) {
                (TKind::Poly, true) => RatFunc::from_poly(Poly::from_ints(&[1, 1])),
                _ => RatFunc::x(),
            };
            gens = gens.iter().map(|g| g * &common).collect();
        }
        out.push(RawIdeal::new(gens).expect("nonempty"));
    }
    out
}

/// Nonzero `D`-submodules of `k`: `D`, small primes of `D` and the `(1, √d)`
/// module when `k` is larger than `qf(D)`, then random one- and
/// two-generator modules.
pub fn sample_d_modules(inst: &PullbackInstance, params: &SampleParams) -> Vec<ExtDModule> {
    let base = inst.base();
    let mut gens: Vec<Vec<FieldElem>> = vec![vec![FieldElem::one()], vec![FieldElem::from_int(2)]];
    if let Some(w) = base.omega() {
        gens.push(vec![FieldElem::from_int(2), &FieldElem::one() + &w]);
        gens.push(vec![FieldElem::from_int(3), &FieldElem::one() + &w]);
    }
    if !base.quotient_field_is_k() {
        if let Some(r) = root(inst) {
            gens.push(vec![FieldElem::one(), r]);
        }
    }
    gens.truncate(params.count);
    let mut rng = stream(params, 2);
    while gens.len() < params.count {
        let n = rng.random_range(1..=2usize);
        gens.push((0..n).map(|_| scalar(&mut rng, inst, params.height, true)).collect());
    }
    gens.iter().map(|g| base.module(g).expect("nonzero generators")).collect()
}

/// Random nonzero fractional ideals `cT`.
pub fn sample_t_ideals(inst: &PullbackInstance, params: &SampleParams) -> Vec<TIdeal> {
    let mut rng = stream(params, 3);
    (0..params.count)
        .map(|_| inst.t_ideal(&element(&mut rng, inst, params)).expect("nonzero"))
        .collect()
}

/// Random nonzero elements of the conductor `M = XT`.
pub fn sample_m_elements(inst: &PullbackInstance, params: &SampleParams) -> Vec<RatFunc> {
    let mut rng = stream(params, 4);
    (0..params.count)
        .map(|_| &t_element(&mut rng, inst, params) * &RatFunc::x())
        .collect()
}
