use super::*;
use crate::kernel::Poly;
use proptest::prelude::*;

fn inst(name: &str) -> PullbackInstance {
    PullbackInstance::catalog(name).unwrap()
}

fn p(cs: &[i64]) -> RatFunc {
    RatFunc::from_poly(Poly::from_ints(cs))
}

fn rf(n: &[i64], d: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
}

fn c(n: i64, m: i64) -> RatFunc {
    RatFunc::constant(FieldElem::from_ratio(n, m))
}

fn surd(x: i64, y: i64, d: i64) -> FieldElem {
    FieldElem::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()), d).unwrap()
}

use num_rational::BigRational;

fn raw(gens: Vec<RatFunc>) -> RawIdeal {
    RawIdeal::new(gens).unwrap()
}

fn p_ideal_c() -> RawIdeal {
    raw(vec![c(2, 1), RatFunc::constant(surd(1, 1, -5))])
}

#[test]
fn catalog_flags() {
    assert!(inst("A").flags().is_square_plus);
    assert!(inst("C").flags().is_square_plus);
    assert!(!inst("D").flags().is_square_plus);
    assert!(!inst("E").flags().is_square_plus);
    assert!(inst("B").flags().t_quasilocal && inst("E").flags().t_quasilocal);
    assert!(CATALOG.iter().all(|n| inst(n).flags().phi_tilde_surjective));
    assert!(inst("A").flags().r_is_pvmd() && !inst("D").flags().r_is_pvmd());
    let bad = InstanceConfig { name: None, base: BaseSpec::Quadratic(-5), k_disc: -1, t_kind: TKind::Poly };
    assert!(matches!(make_instance(&bad), Err(Error::Unsupported(_))));
    assert!(PullbackInstance::catalog("Z").is_err());
}

#[test]
fn membership_in_r() {
    let a = inst("A");
    let b = inst("B");
    assert!(a.member_r(&rf(&[0, 1], &[2])));
    assert!(!a.member_r(&c(1, 2)));
    let f = rf(&[3, 1], &[1, 1]);
    assert!(!a.member_r(&f));
    assert!(b.member_r(&f));
}

#[test]
fn content_extraction() {
    let a = inst("A");
    let (u, red) = a.content_t(&[p(&[0, 2]), p(&[0, 0, 1])]).unwrap();
    assert_eq!(u, RatFunc::x());
    assert_eq!(red, vec![c(2, 1), RatFunc::x()]);
    assert!(a.content_t(&[c(2, 1), RatFunc::x()]).unwrap().0.is_one());
    let b = inst("B");
    let (u, red) = b.content_t(&[p(&[0, 1, 1]), p(&[0, 0, 0, 1])]).unwrap();
    assert_eq!(u, RatFunc::x());
    assert_eq!(red, vec![p(&[1, 1]), p(&[0, 0, 1])]);
}

#[test]
fn hull_examples() {
    let a = inst("A");
    let h = a.hull(&raw(vec![c(2, 1), RatFunc::x()])).unwrap();
    assert!(h.unit_part().is_one());
    assert_eq!(h.dpart(), &a.base().module(&[FieldElem::from_int(2)]).unwrap());
    assert_eq!(a.display(&h), "2ℤ + X·ℚ[X]");
    // X/3 = 2·(X/6) lies in (2, X); 1 does not
    assert!(a.contains(&h, &rf(&[0, 1], &[3])));
    assert!(!a.contains(&h, &RatFunc::one()));

    let d = inst("D");
    let i = RawIdeal::new(vec![RatFunc::one(), RatFunc::constant(surd(0, 1, -1))]).unwrap();
    let h = d.hull(&i).unwrap();
    assert!(h.unit_part().is_one());
    assert_eq!(h.dpart(), &d.base().module(&[FieldElem::one(), surd(0, 1, -1)]).unwrap());

    let z = rf(&[1, 1], &[0, 3]);
    let h = a.hull(&raw(vec![z.clone()])).unwrap();
    assert_eq!(h, a.principal(&z).unwrap());
}

#[test]
fn colon_examples() {
    let a = inst("A");
    let i = raw(vec![c(2, 1), RatFunc::x()]);
    let col = a.colon(&a.hull(&i).unwrap());
    assert_eq!(col, a.inverse_image(&a.base().module(&[FieldElem::from_ratio(1, 2)]).unwrap()).unwrap());
    assert!(oracle_colon_member(&c(1, 2), &i, &a));

    let d = inst("D");
    let i = raw(vec![RatFunc::one(), RatFunc::constant(surd(0, 1, -1))]);
    assert_eq!(d.colon(&d.hull(&i).unwrap()), d.m_ideal());

    for n in CATALOG {
        let r = inst(n);
        assert_eq!(r.colon(&r.t_as_ideal()), r.m_ideal(), "(R:T) in {n}");
        assert_eq!(r.colon(&r.m_ideal()), r.t_as_ideal(), "(R:M) in {n}");
    }
}

#[test]
fn closure_examples() {
    let a = inst("A");
    let h = a.hull(&raw(vec![c(2, 1), RatFunc::x()])).unwrap();
    assert_eq!(a.v(&h), h);
    for n in CATALOG {
        let r = inst(n);
        assert_eq!(r.v(&r.m_ideal()), r.m_ideal());
        assert_eq!(r.t(&r.m_ideal()), r.m_ideal());
    }
    let d = inst("D");
    let h = d.hull(&raw(vec![RatFunc::one(), RatFunc::constant(surd(0, 1, -1))])).unwrap();
    assert_eq!(d.v(&h), d.t_as_ideal());
}

#[test]
fn arithmetic_examples() {
    let cc = inst("C");
    let pp = cc.hull(&p_ideal_c()).unwrap();
    assert_eq!(cc.mul(&pp, &pp), cc.principal(&c(2, 1)).unwrap());
    let a = inst("A");
    let m = a.m_ideal();
    assert_eq!(a.mul(&m, &m), a.scale(&m, &RatFunc::x()).unwrap());
    let h = a.hull(&raw(vec![c(2, 1), RatFunc::x()])).unwrap();
    assert_eq!(a.mul(&h, &a.unit_ideal()), h);
    assert_eq!(ideal_arith(&a, &h, &a.unit_ideal(), IdealOp::Add), a.unit_ideal());
}

#[test]
fn extension_examples() {
    let a = inst("A");
    assert!(a.extend_raw_to_t(&raw(vec![c(2, 1), RatFunc::x()])).unwrap().is_unit_ideal());
    assert_eq!(a.extend_raw_to_t(&raw(vec![p(&[0, 2]), p(&[0, 0, 1])])).unwrap().generator(), &RatFunc::x());
    let cc = inst("C");
    assert!(cc.extend_to_t(&cc.hull(&p_ideal_c()).unwrap()).is_unit_ideal());
}

#[test]
fn inverse_images() {
    let a = inst("A");
    let two = a.base().module(&[FieldElem::from_int(2)]).unwrap();
    assert_eq!(a.display(&a.inverse_image(&two).unwrap()), "2ℤ + X·ℚ[X]");
    assert_eq!(a.inverse_image(&ExtDModule::Zero).unwrap(), a.m_ideal());
    let cc = inst("C");
    let pj = cc.base().module(&[FieldElem::from_int(2), surd(1, 1, -5)]).unwrap();
    let h = cc.inverse_image(&pj).unwrap();
    // M ⊊ φ⁻¹(P) ⊆ φ⁻¹(P)^v ⊊ T
    assert!(cc.leq(&cc.m_ideal(), &h) && h != cc.m_ideal());
    assert!(cc.leq(&h, &cc.v(&h)));
    assert!(cc.leq(&cc.v(&h), &cc.t_as_ideal()) && cc.v(&h) != cc.t_as_ideal());
}

#[test]
fn unit_group_predicates() {
    let a = inst("A");
    assert!(a.in_s(&c(2, 1)) && !a.in_n(&c(2, 1)));
    assert!(!a.in_s(&p(&[1, 1])) && a.in_n(&p(&[1, 1])));
    assert!(a.in_s(&c(-1, 1)) && a.in_n(&c(-1, 1)));
}

#[test]
fn oracle_examples() {
    let a = inst("A");
    let i = raw(vec![c(2, 1), RatFunc::x()]);
    assert!(oracle_colon_member(&c(1, 2), &i, &a));
    let got = oracle_v_member(&rf(&[1], &[0, 1]), &i, &a, DegreeWindow::default()).unwrap();
    assert_eq!(got, VMembership::Out(c(1, 2)));
    let d = inst("D");
    let i = raw(vec![RatFunc::one(), RatFunc::constant(surd(0, 1, -1))]);
    assert_eq!(oracle_v_member(&RatFunc::one(), &i, &d, DegreeWindow::default()).unwrap(), VMembership::In);
}

#[test]
fn principal_detection() {
    let a = inst("A");
    let two = a.inverse_image(&a.base().module(&[FieldElem::from_int(2)]).unwrap()).unwrap();
    assert_eq!(a.is_principal(&two), Some(c(2, 1)));
    let cc = inst("C");
    assert_eq!(cc.is_principal(&cc.hull(&p_ideal_c()).unwrap()), None);
    assert_eq!(a.is_principal(&a.m_ideal()), None);
    assert_eq!(a.is_principal(&a.t_as_ideal()), None);
}

#[test]
fn expression_text() {
    let a = inst("A");
    let h = a.hull(&raw(vec![c(2, 1), RatFunc::x()])).unwrap();
    assert_eq!(a.to_expr(&h), "ideal(2)");
    assert_eq!(a.to_expr(&a.m_ideal()), "X*T");
}

// ---- randomized properties ----

fn arb_elem() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(-4i64..=4, 1..4), 1i64..=3, 0i64..=2).prop_filter_map("nonzero", |(cs, den, shift)| {
        let f = &p(&cs) * &RatFunc::constant(FieldElem::from_ratio(1, den));
        let f = f.scale_shift(&FieldElem::one(), shift);
        (!f.is_zero()).then_some(f)
    })
}

fn arb_local_elem() -> impl Strategy<Value = RatFunc> {
    (arb_elem(), prop::collection::vec(-3i64..=3, 1..3)).prop_filter_map("unit den", |(f, d)| {
        let mut d = d;
        if d[0] == 0 {
            d[0] = 1;
        }
        let den = p(&d);
        (!den.is_zero()).then(|| f.checked_div(&den).unwrap())
    })
}

fn arb_raw() -> impl Strategy<Value = RawIdeal> {
    prop::collection::vec(arb_elem(), 1..4).prop_map(|g| RawIdeal::new(g).unwrap())
}

fn arb_raw_local() -> impl Strategy<Value = RawIdeal> {
    prop::collection::vec(arb_local_elem(), 1..4).prop_map(|g| RawIdeal::new(g).unwrap())
}

fn arb_raw_c() -> impl Strategy<Value = RawIdeal> {
    let elem = (prop::collection::vec((-3i64..=3, -2i64..=2), 1..3), 0i64..=1).prop_filter_map("nonzero", |(cs, shift)| {
        let coeffs: Vec<FieldElem> = cs.iter().map(|&(x, y)| surd(x, y, -5)).collect();
        let f = RatFunc::from_poly(Poly::new(coeffs)).scale_shift(&FieldElem::one(), shift);
        (!f.is_zero()).then_some(f)
    });
    prop::collection::vec(elem, 1..3).prop_map(|g| RawIdeal::new(g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_contains_generators(i in arb_raw()) {
        let a = inst("A");
        let h = a.hull(&i).unwrap();
        for g in i.gens() {
            prop_assert!(a.contains(&h, g));
        }
    }

    #[test]
    fn v_closure_laws(i in arb_raw(), j in arb_raw(), z in arb_elem()) {
        let a = inst("A");
        let hi = a.hull(&i).unwrap();
        let hs = a.hull(&i.add(&j)).unwrap();
        let v = a.v(&hi);
        prop_assert!(a.leq(&hi, &v));
        prop_assert_eq!(a.v(&v), v.clone());
        prop_assert!(a.leq(&v, &a.v(&hs)));
        let zi = a.hull(&i.scale(&z).unwrap()).unwrap();
        prop_assert_eq!(a.v(&zi), a.scale(&v, &z).unwrap());
    }

    #[test]
    fn v_closure_laws_local(i in arb_raw_local(), j in arb_raw_local()) {
        let b = inst("B");
        let hi = b.hull(&i).unwrap();
        let v = b.v(&hi);
        prop_assert!(b.leq(&hi, &v));
        prop_assert_eq!(b.v(&v), v.clone());
        prop_assert!(b.leq(&v, &b.v(&b.hull(&i.add(&j)).unwrap())));
    }

    #[test]
    fn sum_and_product_match_raw(i in arb_raw(), j in arb_raw()) {
        let a = inst("A");
        let (hi, hj) = (a.hull(&i).unwrap(), a.hull(&j).unwrap());
        prop_assert_eq!(a.add(&hi, &hj), a.hull(&i.add(&j)).unwrap());
        prop_assert_eq!(a.mul(&hi, &hj), a.hull(&i.mul(&j)).unwrap());
    }

    #[test]
    fn sum_and_product_match_raw_c(i in arb_raw_c(), j in arb_raw_c()) {
        let cc = inst("C");
        let (hi, hj) = (cc.hull(&i).unwrap(), cc.hull(&j).unwrap());
        prop_assert_eq!(cc.add(&hi, &hj), cc.hull(&i.add(&j)).unwrap());
        prop_assert_eq!(cc.mul(&hi, &hj), cc.hull(&i.mul(&j)).unwrap());
    }

    #[test]
    fn intersection_is_pointwise(i in arb_raw(), j in arb_raw(), probes in prop::collection::vec(arb_elem(), 6)) {
        let a = inst("A");
        let (hi, hj) = (a.hull(&i).unwrap(), a.hull(&j).unwrap());
        let both = a.intersect(&hi, &hj);
        prop_assert!(a.leq(&both, &hi) && a.leq(&both, &hj));
        let scales = [c(1, 1), c(2, 1), c(30, 1), RatFunc::x(), p(&[0, 2]), p(&[0, 0, 1])];
        let mut grid = probes.clone();
        for f in i.mul(&j).gens() {
            grid.extend(scales.iter().map(|s| f * s));
        }
        for f in grid.iter().chain(i.gens()).chain(j.gens()) {
            prop_assert_eq!(a.contains(&both, f), a.contains(&hi, f) && a.contains(&hj, f));
        }
    }

    #[test]
    fn extension_is_multiplicative(i in arb_raw(), j in arb_raw()) {
        let a = inst("A");
        let lhs = a.extend_raw_to_t(&i.mul(&j)).unwrap();
        let rhs = a.t_mul(&a.extend_raw_to_t(&i).unwrap(), &a.extend_raw_to_t(&j).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn colon_matches_exact_oracle(i in arb_raw(), probes in prop::collection::vec(arb_elem(), 4)) {
        let a = inst("A");
        let col = a.colon(&a.hull(&i).unwrap());
        let mut grid: Vec<RatFunc> = probes;
        for g in a.base().generators(&a.base().colon(a.hull(&i).unwrap().dpart())) {
            grid.push(a.hull(&i).unwrap().unit_part().inv().unwrap().scale(&g));
        }
        for g in &grid {
            for j in -2..=2 {
                let y = g.scale_shift(&FieldElem::one(), j);
                prop_assert_eq!(a.contains(&col, &y), oracle_colon_member(&y, &i, &a), "probe {}", y);
            }
        }
    }

    #[test]
    fn t_ideals_in_m_are_divisorial(r in arb_elem()) {
        let a = inst("A");
        let r = r.scale_shift(&FieldElem::one(), 1);
        let rt = a.structured(&r, &ExtDModule::Full).unwrap();
        prop_assert_eq!(a.v(&rt), rt);
    }

    #[test]
    fn height_one_primes_of_t(c0 in 1i64..=5, c1 in -5i64..=5) {
        // X + c0 and X² + c1·X + c0 with c0 ≠ 0 do not vanish at 0
        let a = inst("A");
        for f in [p(&[c0, 1]), p(&[c0, c1, 1])] {
            let ft = a.structured(&f, &ExtDModule::Full).unwrap();
            prop_assert_eq!(a.v(&ft), ft);
        }
    }
}
