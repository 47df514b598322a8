use super::*;
use crate::pullback::{RawIdeal, CATALOG};
use crate::star_ops::Side;
use num_rational::BigRational;
use proptest::prelude::*;

fn inst(name: &str) -> PullbackInstance {
    PullbackInstance::catalog(name).unwrap()
}

fn c(n: i64, m: i64) -> RatFunc {
    RatFunc::constant(FieldElem::from_ratio(n, m))
}

fn surd(x: i64, y: i64, d: i64) -> FieldElem {
    FieldElem::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()), d).unwrap()
}

fn t() -> StarOp {
    StarOp::t(Side::R)
}

fn d_op() -> StarOp {
    StarOp::d(Side::R)
}

fn p_module(r: &PullbackInstance) -> ExtDModule {
    r.base().module(&[FieldElem::from_int(2), surd(1, 1, -5)]).unwrap()
}

fn pbar_module(r: &PullbackInstance) -> ExtDModule {
    r.base().module(&[FieldElem::from_int(2), surd(1, -1, -5)]).unwrap()
}

#[test]
fn alpha_of_p() {
    let cc = inst("C");
    let h = alpha(&p_module(&cc), &cc).unwrap();
    assert_eq!(cc.display(&h), "ℤ·(1+sqrt(-5)) + ℤ·2*sqrt(-5) + X·ℚ(√-5)[X]");
    let w = invertibility_r(&h, &t(), &cc).unwrap();
    assert!(w.is_invertible() && !w.is_principal());
    assert!(w.replay(&cc).unwrap());

    let sq = cc.mul(&h, &h);
    assert_eq!(sq, cc.principal(&c(2, 1)).unwrap());
    assert_eq!(alpha(&cc.base().mul(&p_module(&cc), &p_module(&cc)), &cc).unwrap(), sq);

    let cd = cc.base().module(&[FieldElem::from_ratio(3, 7)]).unwrap();
    assert_eq!(is_principal_r(&alpha(&cd, &cc).unwrap(), &cc), Some(c(3, 7)));
}

#[test]
fn alpha_rejects_non_invertible() {
    let d = inst("D");
    let j = d.base().module(&[FieldElem::one(), surd(0, 1, -1)]).unwrap();
    assert_eq!(alpha(&j, &d), Err(Error::NotInvertible));
}

#[test]
fn beta_examples() {
    let cc = inst("C");
    assert!(beta(&alpha(&p_module(&cc), &cc).unwrap(), &cc).is_unit_ideal());
    let a = inst("A");
    assert_eq!(beta(&a.principal(&RatFunc::x()).unwrap(), &a).generator(), &RatFunc::x());
    let u = RatFunc::from_poly(crate::kernel::Poly::from_ints(&[0, 1, 1]));
    let h = a.structured(&u, &a.base().module(&[FieldElem::from_int(3)]).unwrap()).unwrap();
    assert_eq!(beta(&h, &a).generator(), &u);
}

#[test]
fn gamma_examples() {
    let cc = inst("C");
    let pl = cc.base().class_label(&p_module(&cc)).unwrap();
    assert!(!pl.is_identity());
    assert_eq!(gamma(&alpha(&p_module(&cc), &cc).unwrap(), &cc).unwrap(), pl);
    assert!(gamma(&cc.principal(&c(5, 3)).unwrap(), &cc).unwrap().is_identity());
    // 3 is split in ℤ[√-5]; 3O_K is principal, so P·3O_K stays in the class of P
    let p3 = cc.base().scale(&p_module(&cc), &FieldElem::from_int(3));
    let h = cc.structured(&RatFunc::from_poly(crate::kernel::Poly::from_ints(&[0, 1, 1])), &p3).unwrap();
    assert_eq!(gamma(&h, &cc).unwrap(), pl);
    // fractional D-part: normalization clears denominators
    let half = cc.base().scale(&p_module(&cc), &FieldElem::from_ratio(1, 2));
    let h = cc.inverse_image(&half).unwrap();
    let (z, inner) = gamma_normalize(&h, &cc).unwrap();
    assert_eq!(z, c(1, 2));
    assert_eq!(inner, alpha(&p_module(&cc), &cc).unwrap());
    assert_eq!(gamma(&h, &cc).unwrap(), pl);

    let d = inst("D");
    assert!(matches!(gamma(&d.unit_ideal(), &d), Err(Error::Precondition(_))));
    assert_eq!(gamma(&cc.m_ideal(), &cc), Err(Error::NotInvertible));
}

#[test]
fn principal_examples() {
    let a = inst("A");
    let two = a.inverse_image(&a.base().module(&[FieldElem::from_int(2)]).unwrap()).unwrap();
    assert_eq!(is_principal_r(&two, &a), Some(c(2, 1)));
    let cc = inst("C");
    assert_eq!(is_principal_r(&alpha(&p_module(&cc), &cc).unwrap(), &cc), None);
    assert_eq!(is_principal_r(&a.m_ideal(), &a), None);
}

#[test]
fn invertibility_examples() {
    let d = inst("D");
    let i = d.hull(&RawIdeal::new(vec![RatFunc::one(), RatFunc::constant(surd(0, 1, -1))]).unwrap()).unwrap();
    let w = invertibility_r(&i, &t(), &d).unwrap();
    assert_eq!(w.certificate, Certificate::None);
    assert!(w.replay(&d).unwrap());
    assert_eq!(cc_closure(&d, &i), d.m_ideal());

    let a = inst("A");
    let z = a.principal(&RatFunc::x().inv().unwrap()).unwrap();
    let w = invertibility_r(&z, &d_op(), &a).unwrap();
    assert!(w.is_invertible() && w.replay(&a).unwrap());
    assert!(!invertibility_r(&a.m_ideal(), &t(), &a).unwrap().is_star_invertible());
}

fn cc_closure(r: &PullbackInstance, i: &StructuredIdeal) -> StructuredIdeal {
    r.t(&r.mul(i, &r.colon(i)))
}

#[test]
fn class_equivalence_examples() {
    let cc = inst("C");
    let hp = alpha(&p_module(&cc), &cc).unwrap();
    let hq = alpha(&pbar_module(&cc), &cc).unwrap();
    assert!(class_equivalent_r(&hp, &hq, &t(), &cc).unwrap());
    assert!(!class_equivalent_r(&hp, &cc.unit_ideal(), &t(), &cc).unwrap());
    let z = RatFunc::from_poly(crate::kernel::Poly::from_ints(&[2, 0, 1]));
    assert!(class_equivalent_r(&cc.scale(&hp, &z).unwrap(), &hp, &t(), &cc).unwrap());
    assert_eq!(class_equivalent_r(&cc.m_ideal(), &hp, &t(), &cc), Err(Error::NotInvertible));
}

#[test]
fn alpha_is_injective_on_classes() {
    let cc = inst("C");
    let reps = cc.base().class_representatives();
    assert_eq!(reps.len(), 2);
    for (l1, j1) in &reps {
        assert_eq!(&gamma(&alpha(j1, &cc).unwrap(), &cc).unwrap(), l1);
        assert!(beta(&alpha(j1, &cc).unwrap(), &cc).is_unit_ideal());
        for (l2, j2) in &reps {
            let same = class_equivalent_r(&alpha(j1, &cc).unwrap(), &alpha(j2, &cc).unwrap(), &t(), &cc).unwrap();
            assert_eq!(same, l1 == l2);
        }
    }
}

#[test]
fn entries_serialize() {
    let cc = inst("C");
    let e = class_entry(&alpha(&p_module(&cc), &cc).unwrap(), &t(), &cc).unwrap();
    assert!(e.certificate.starts_with("invertible("));
    assert_eq!(e.label.as_deref(), Some("(1) in ℤ/2"));
    assert_eq!(e.beta, "ℚ(√-5)[X]");
}

fn arb_c_ideal() -> impl Strategy<Value = (i64, i64, i64, i64, u32)> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6, 0u32..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// γ is a homomorphism on invertible ideals of C and inverts α.
    #[test]
    fn gamma_respects_products((a, b, x, y, e) in arb_c_ideal()) {
        let cc = inst("C");
        let b1 = cc.base();
        let g1 = surd(a, b, -5);
        let g2 = surd(x, y, -5);
        prop_assume!(!g1.is_zero() && !g2.is_zero());
        let j = b1.module(&[g1.clone(), g2]).unwrap();
        prop_assume!(b1.is_invertible(&j));
        let u = RatFunc::x().pow(e as i64).unwrap();
        let h = cc.structured(&u, &j).unwrap();
        let k = alpha(&p_module(&cc), &cc).unwrap();
        let lhs = gamma(&cc.mul(&h, &k), &cc).unwrap();
        let rhs = gamma(&h, &cc).unwrap().add(&gamma(&k, &cc).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(gamma(&alpha(&j, &cc).unwrap(), &cc).unwrap(), b1.class_label(&j).unwrap());
        let w = invertibility_r(&h, &d_op(), &cc).unwrap();
        prop_assert!(w.is_invertible());
        prop_assert!(w.replay(&cc).unwrap());
        // principal exactly when the D-class is trivial
        prop_assert_eq!(w.is_principal(), b1.class_label(&j).unwrap().is_identity());
    }

    #[test]
    fn principal_certificates_replay(n in 1i64..=30, m in 1i64..=30, e in 0i64..=3) {
        for name in CATALOG {
            let r = inst(name);
            let z = c(n, m).scale_shift(&FieldElem::one(), e);
            let h = r.principal(&z).unwrap();
            let w = invertibility_r(&h, &t(), &r).unwrap();
            prop_assert!(w.is_principal());
            prop_assert!(w.replay(&r).unwrap());
        }
    }
}
