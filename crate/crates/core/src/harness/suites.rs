use std::fmt::Display;

use super::sample::{sample_d_modules, sample_ideals, sample_m_elements, sample_t_ideals};
use super::{Report, SampleParams, Violation};
use crate::base_domain::ExtDModule;
use crate::class_groups::{alpha, beta, class_equivalent_r, gamma, gamma_normalize, invertibility_r, is_principal_r};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::kernel::{FieldElem, RatFunc};
use crate::pullback::{oracle_colon_member, PullbackInstance, RawIdeal, StructuredIdeal, VMembership, VOracle};
use crate::star_ops::{star_axiom_check, star_eval, star_leq_check, IdealValue, Side, StarOp};

/// Outcome of the checks on one sample.
struct Sheet {
    sample: String,
    notes: Vec<String>,
    bad: Vec<Violation>,
}

impl Sheet {
    fn new(sample: impl Into<String>) -> Self {
        Sheet { sample: sample.into(), notes: Vec::new(), bad: Vec::new() }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn expect(&mut self, ok: bool, expected: impl Into<String>, got: impl Display, witness: impl Into<String>) {
        if !ok {
            self.bad.push(Violation {
                sample: self.sample.clone(),
                expected: expected.into(),
                got: got.to_string(),
                witness: witness.into(),
            });
        }
    }
}

/// Runs `check` on every item with `exec` and appends the sheets to the
/// report in input order.
fn sweep<T, F>(report: &mut Report, items: &[T], exec: Exec, describe: impl Fn(&T) -> String + Sync + Send, check: F)
where
    T: Sync,
    F: Fn(&T, &mut Sheet) -> Result<()> + Sync + Send,
{
    let sheets = exec.map(items, |_, x| {
        let mut sheet = Sheet::new(describe(x));
        if let Err(e) = check(x, &mut sheet) {
            let w = sheet.sample.clone();
            sheet.expect(false, "evaluation succeeds", format!("error: {e}"), w);
        }
        sheet
    });
    for sheet in sheets {
        let n = report.n_samples;
        let outcome = if sheet.bad.is_empty() { sheet.notes.join("; ") } else { "violation".into() };
        report.push(n, sheet.sample, outcome, sheet.bad);
    }
}

fn star_r(op: &StarOp, i: &StructuredIdeal, inst: &PullbackInstance) -> Result<StructuredIdeal> {
    match star_eval(op, &IdealValue::R(i.clone()), inst)? {
        IdealValue::R(h) => Ok(h),
        _ => unreachable!("R-side operations return R-side ideals"),
    }
}

fn dexpr(inst: &PullbackInstance, j: &ExtDModule) -> String {
    inst.value_expr(&IdealValue::D(j.clone()))
}

/// `H^n` under `op`, then whether it is principal.
fn power_is_principal(h: &StructuredIdeal, n: i64, op: &StarOp, inst: &PullbackInstance) -> Result<bool> {
    let mut acc = inst.unit_ideal();
    for _ in 0..n {
        acc = inst.mul(&acc, h);
    }
    Ok(is_principal_r(&star_r(op, &acc, inst)?, inst).is_some())
}

/// Split exactness of `0 → Cl(D) → Cl(R) → Cl(T) → 0` under `op`: `α` is
/// injective on class representatives, `γ∘α = id`, `β∘α` is trivial, and
/// every sampled `op`-invertible ideal is equivalent to `α` of its
/// normalized D-part.
pub fn verify_split_exact(inst: &PullbackInstance, op: &StarOp, params: &SampleParams, exec: Exec) -> Result<Report> {
    let flags = inst.flags();
    if !(flags.is_square_plus && flags.phi_tilde_surjective) {
        return Err(Error::Precondition(format!("split-exact needs qf(D) = k; instance {} does not have it", inst.name())));
    }
    let mut report = Report::new("split-exact", inst, Some(op), params);
    let base = inst.base();
    let reps = base.class_representatives();
    report.notes.push(format!("Cl(D) has {} classes", reps.len()));

    sweep(&mut report, &reps, exec, |(l, j)| format!("alpha({}) [class {l}]", dexpr(inst, j)), |(l, j), s| {
        let h = alpha(j, inst)?;
        let g = gamma(&h, inst)?;
        s.expect(&g == l, format!("γ(α(J)) = {l}"), &g, format!("gamma(alpha({}))", dexpr(inst, j)));
        let b = beta(&h, inst);
        s.expect(b.is_unit_ideal(), "β(α(J)) = T", &b, format!("beta(alpha({}))", dexpr(inst, j)));
        let w = invertibility_r(&h, op, inst)?;
        s.expect(w.is_star_invertible(), format!("α(J) is {op}-invertible"), "not invertible", inst.to_expr(&h));
        if !l.is_identity() {
            s.expect(!w.is_principal(), "α(J) non-principal", "principal", format!("principal({})", inst.to_expr(&h)));
        }
        let order = l.order();
        let ok = power_is_principal(&h, order, op, inst)?;
        s.expect(ok, format!("α(J)^{order} principal"), "non-principal", format!("principal({}^{order})", inst.to_expr(&h)));
        for (l2, j2) in &reps {
            let same = class_equivalent_r(&h, &alpha(j2, inst)?, op, inst)?;
            s.expect(
                same == (l == l2),
                format!("[α(J)] = [α(J′)] iff {l} = {l2}"),
                if same { "equivalent" } else { "not equivalent" },
                format!("principal(star({op}, alpha({}) * colon(alpha({}))))", dexpr(inst, j), dexpr(inst, j2)),
            );
        }
        s.note(format!("γ = {g}, {}", if w.is_principal() { "principal" } else { "non-principal" }));
        Ok(())
    });

    let dmods: Vec<ExtDModule> =
        sample_d_modules(inst, params).into_iter().filter(|j| base.is_v_invertible(j)).collect();
    sweep(&mut report, &dmods, exec, |j| format!("alpha({})", dexpr(inst, j)), |j, s| {
        let h = alpha(j, inst)?;
        let l = base.class_label(&base.v(j))?;
        let g = gamma(&h, inst)?;
        s.expect(g == l, format!("γ(α(J)) = {l}"), &g, format!("gamma(alpha({}))", dexpr(inst, j)));
        let b = beta(&h, inst);
        s.expect(b.is_unit_ideal(), "β(α(J)) = T", &b, format!("beta(alpha({}))", dexpr(inst, j)));
        s.note(format!("γ∘α = {g}"));
        Ok(())
    });

    let ideals = sample_ideals(inst, params);
    sweep(&mut report, &ideals, exec, RawIdeal::to_string, |i, s| {
        let h = star_r(op, &inst.hull(i)?, inst)?;
        let w = invertibility_r(&h, op, inst)?;
        if !w.is_star_invertible() {
            s.note(format!("not {op}-invertible"));
            return Ok(());
        }
        let b = beta(&h, inst);
        let (_, inner) = gamma_normalize(&h, inst)?;
        let j = base.v(inner.dpart());
        let captured = class_equivalent_r(&h, &alpha(&j, inst)?, op, inst)?;
        s.expect(
            captured,
            "H ~ α(normalized D-part)",
            "not equivalent",
            format!("principal(star({op}, {} * colon(alpha({}))))", inst.to_expr(&h), dexpr(inst, &j)),
        );
        let g = gamma(&h, inst)?;
        s.expect(g == base.class_label(&j)?, "γ(H) = [J]", &g, format!("gamma({})", inst.to_expr(&h)));
        s.note(format!("γ = {g}, β = {}", inst.display_t(&b)));
        Ok(())
    });
    Ok(report.finish())
}

/// Quasilocal `T`: every `op`-invertible ideal `I` is `i·I₁` with
/// `M ⊊ I₁ ⊆ I₁^v ⊊ T`, `I ~ α(φ(I₁))`, and all such ideals are principal
/// since `Cl(D)` is trivial on the catalogued quasilocal instances.
pub fn verify_quasilocal_iso(inst: &PullbackInstance, op: &StarOp, params: &SampleParams, exec: Exec) -> Result<Report> {
    if !inst.flags().t_quasilocal {
        return Err(Error::Precondition(format!("quasilocal-iso needs a quasilocal T; instance {} has {}", inst.name(), inst.t_name())));
    }
    let mut report = Report::new("quasilocal-iso", inst, Some(op), params);
    let base = inst.base();
    let trivial = base.class_group().class_number() == 1;
    if !inst.flags().is_square_plus {
        report.notes.push("qf(D) ≠ k: every op-invertible ideal must be principal".into());
    }
    let ideals = sample_ideals(inst, params);
    let m = inst.m_ideal();
    let t = inst.t_as_ideal();
    sweep(&mut report, &ideals, exec, RawIdeal::to_string, |i, s| {
        let h = star_r(op, &inst.hull(i)?, inst)?;
        let w = invertibility_r(&h, op, inst)?;
        if !w.is_star_invertible() {
            s.note(format!("not {op}-invertible"));
            return Ok(());
        }
        // IT = iT; the T-generator i stands in for an element of I
        let gen = beta(&h, inst).generator().clone();
        let i1 = inst.scale(&h, &gen.inv()?)?;
        let e1 = inst.to_expr(&i1);
        s.expect(inst.leq(&m, &i1) && i1 != m, "M ⊊ I₁", inst.display(&i1), e1.clone());
        let v1 = inst.v(&i1);
        s.expect(inst.leq(&i1, &v1), "I₁ ⊆ I₁^v", inst.display(&v1), format!("v({e1})"));
        s.expect(inst.leq(&v1, &t) && v1 != t, "I₁^v ⊊ T", inst.display(&v1), format!("v({e1})"));
        let j = i1.dpart().clone();
        let equivalent = class_equivalent_r(&h, &alpha(&j, inst)?, op, inst)?;
        s.expect(
            equivalent,
            "I ~ α(φ(I₁))",
            "not equivalent",
            format!("principal(star({op}, {} * colon(alpha({}))))", inst.to_expr(&h), dexpr(inst, &j)),
        );
        if trivial {
            s.expect(w.is_principal(), "principal", "non-principal", format!("principal({})", inst.to_expr(&h)));
        }
        s.note(format!("I₁ = {}, J = {}", inst.display(&i1), base.display_module(&j)));
        Ok(())
    });
    Ok(report.finish())
}

/// Structural PvMD verdict against sampled behaviour of `(I·I⁻¹)^op`.
pub fn verify_pvmd(inst: &PullbackInstance, op: &StarOp, params: &SampleParams, exec: Exec) -> Result<Report> {
    let flags = inst.flags();
    let structural = flags.r_is_pvmd();
    let mut report = Report::new("pvmd", inst, Some(op), params);
    report.notes.push(format!(
        "structural: D PvMD = {}, T_M valuation = {}, qf(D) = k: {} ⇒ R PvMD = {structural}",
        flags.d_pvmd, flags.t_m_valuation, flags.is_square_plus
    ));
    report
        .notes
        .push("structural: T = k[X²,X³]_Q has T_M not a valuation domain ⇒ not PvMD (not computed)".into());
    let ideals = sample_ideals(inst, params);
    let r = inst.unit_ideal();
    let results = exec.map(&ideals, |_, i| -> Result<(StructuredIdeal, StructuredIdeal)> {
        let h = inst.hull(i)?;
        let closure = star_r(op, &inst.mul(&h, &inst.colon(&h)), inst)?;
        Ok((h, closure))
    });
    for (n, (i, res)) in ideals.iter().zip(results).enumerate() {
        let sample = i.to_string();
        let (h, closure) = match res {
            Ok(x) => x,
            Err(e) => {
                let v = Violation { sample: sample.clone(), expected: "evaluation succeeds".into(), got: e.to_string(), witness: sample.clone() };
                report.push(n, sample, "violation".into(), vec![v]);
                continue;
            }
        };
        let e = inst.to_expr(&h);
        let witness = format!("star({op}, {e} * colon({e}))");
        let ok = closure == r;
        if ok {
            report.push(n, sample, format!("{op}-invertible"), Vec::new());
        } else if structural {
            let v = Violation { sample: sample.clone(), expected: inst.display(&r), got: inst.display(&closure), witness };
            report.push(n, sample, "violation".into(), vec![v]);
        } else {
            let confirmation = confirm_failure(i, &closure, inst, params)?;
            report.witnesses.push(Violation {
                sample: sample.clone(),
                expected: format!("(I·I⁻¹)^{op} ≠ R"),
                got: inst.display(&closure),
                witness: format!("{witness}; {confirmation}"),
            });
            report.push(n, sample, format!("not {op}-invertible: {}", inst.display(&closure)), Vec::new());
        }
    }
    if !structural && report.witnesses.is_empty() {
        report.violations.push(Violation {
            sample: format!("{} samples", ideals.len()),
            expected: "a non-t-invertible ideal".into(),
            got: "none found".into(),
            witness: format!("verify -i {} -s pvmd --seed {}", inst.name(), params.seed),
        });
    }
    Ok(report.finish())
}

/// Independent check that `(I·I⁻¹)^v ≠ R`: an element `y ∉ R` with
/// `y·I ⊆ I^v`, i.e. `y ∈ (R : I·I⁻¹)`, where `y·f ∈ I^v` is tested with the
/// brute-force witness search.
fn confirm_failure(i: &RawIdeal, closure: &StructuredIdeal, inst: &PullbackInstance, params: &SampleParams) -> Result<String> {
    let oracle = VOracle::new(i, inst, params.window)?;
    let col = inst.colon(closure);
    let u = col.unit_part().clone();
    let mut candidates: Vec<RatFunc> = inst.base().short_generators(col.dpart()).iter().map(|c| u.scale(c)).collect();
    if inst.k_disc() != 1 {
        candidates.push(u.scale(&FieldElem::sqrt(inst.k_disc())?));
    }
    candidates.extend([FieldElem::from_ratio(1, 2), FieldElem::from_ratio(1, 3)].iter().map(|c| u.scale(c)));
    for y in candidates {
        if inst.member_r(&y) || !inst.contains(&col, &y) {
            continue;
        }
        if i.gens().iter().all(|f| !matches!(oracle.member(&(&y * f), inst), VMembership::Out(_))) {
            return Ok(format!("confirmed: {y} ∉ R lies in (R : I·I⁻¹)"));
        }
    }
    Err(Error::Precondition("no confirming element found".into()))
}

/// `T` and `M` are fixed by every implemented operation, `(rT)^v = rT` for
/// `r ∈ M`, `(t_R)_T` agrees with `(t_R)_ι` and with the finite-type part of
/// `(v_R)_T` on `T`-ideals.
pub fn verify_t_extension(inst: &PullbackInstance, params: &SampleParams, exec: Exec) -> Result<Report> {
    let mut report = Report::new("t-extension", inst, None, params);
    let ops: Vec<StarOp> = ["d", "v", "t", "fin(t)", "lift(d)", "lift(v)", "lift(t)", "meet(lift(v),ovr(d))", "meet(t,lift(d))"]
        .iter()
        .map(|s| StarOp::parse(s, Side::R))
        .collect::<Result<_>>()?;
    let m = inst.m_ideal();
    let t = inst.t_as_ideal();
    sweep(&mut report, &ops, exec, |o| format!("{o} on M and T"), |o, s| {
        let got = star_r(o, &m, inst)?;
        s.expect(got == m, "M^* = M", inst.display(&got), format!("star({o}, X*T)"));
        let got = star_r(o, &t, inst)?;
        s.expect(got == t, "T^* = T", inst.display(&got), format!("star({o}, T)"));
        s.note("fixed");
        Ok(())
    });

    let rs = sample_m_elements(inst, params);
    sweep(&mut report, &rs, exec, |r| format!("{r}·T"), |r, s| {
        let rt = inst.t_ideal_as_r(&inst.t_ideal(r)?);
        let got = inst.v(&rt);
        s.expect(got == rt, "(rT)^v = rT", inst.display(&got), format!("v({})", inst.to_expr(&rt)));
        s.note("divisorial");
        Ok(())
    });

    let ext_t = StarOp::parse("extT(t)", Side::T)?;
    let rest_t = StarOp::parse("restT(t)", Side::T)?;
    let fin_ext_v = StarOp::parse("fin(extT(v))", Side::T)?;
    let cs = sample_t_ideals(inst, params);
    sweep(&mut report, &cs, exec, |c| inst.display_t(c), |c, s| {
        let val = IdealValue::T(c.clone());
        let e = star_eval(&ext_t, &val, inst)?;
        let r = star_eval(&rest_t, &val, inst)?;
        let f = star_eval(&fin_ext_v, &val, inst)?;
        let cexpr = inst.t_to_expr(c);
        s.expect(e == r, format!("(t_R)_T = (t_R)_ι = {}", inst.value_display(&r)), inst.value_display(&e), format!("star(extT(t), {cexpr})"));
        s.expect(e == f, format!("(t_R)_T = ((v_R)_T)_f = {}", inst.value_display(&f)), inst.value_display(&e), format!("star(fin(extT(v)), {cexpr})"));
        s.expect(e == val, "(cT)^(t_R)_T = cT", inst.value_display(&e), format!("star(extT(t), {cexpr})"));
        s.note("agree");
        Ok(())
    });
    Ok(report.finish())
}

/// `Pic(R) ≅ Pic(D) ⊕ Pic(T)` at sample level: invertible ideals are
/// principal exactly when their D-class is trivial, `α` keeps invertibility
/// and non-principality.
pub fn verify_pic_splitting(inst: &PullbackInstance, params: &SampleParams, exec: Exec) -> Result<Report> {
    if !inst.flags().phi_tilde_surjective {
        return Err(Error::Precondition("pic-splitting needs T → k surjective on units".into()));
    }
    let mut report = Report::new("pic-splitting", inst, Some(&StarOp::d(Side::R)), params);
    let d_op = StarOp::d(Side::R);
    let base = inst.base();
    let square_plus = inst.flags().is_square_plus;

    let mut dmods: Vec<ExtDModule> = base.class_representatives().into_iter().map(|(_, j)| j).collect();
    dmods.extend(sample_d_modules(inst, params).into_iter().filter(|j| base.is_invertible(j)));
    sweep(&mut report, &dmods, exec, |j| format!("alpha({})", dexpr(inst, j)), |j, s| {
        let h = alpha(j, inst)?;
        let w = invertibility_r(&h, &d_op, inst)?;
        let e = inst.to_expr(&h);
        s.expect(w.is_invertible(), "α(J) invertible", "not invertible", format!("{e} * colon({e})"));
        let l = base.class_label(j)?;
        s.expect(w.is_principal() == l.is_identity(), format!("principal iff class {l} trivial"), if w.is_principal() { "principal" } else { "non-principal" }, format!("principal({e})"));
        let ok = power_is_principal(&h, l.order(), &d_op, inst)?;
        s.expect(ok, format!("α(J)^{} principal", l.order()), "non-principal", format!("principal({e}^{})", l.order()));
        s.note(format!("class {l} of order {}", l.order()));
        Ok(())
    });

    let ideals = sample_ideals(inst, params);
    sweep(&mut report, &ideals, exec, RawIdeal::to_string, |i, s| {
        let h = inst.hull(i)?;
        let w = invertibility_r(&h, &d_op, inst)?;
        if !w.is_invertible() {
            s.note("not invertible");
            return Ok(());
        }
        let b = beta(&h, inst);
        let trivial = if square_plus { gamma(&h, inst)?.is_identity() } else { base.class_label(h.dpart())?.is_identity() };
        let e = inst.to_expr(&h);
        s.expect(
            w.is_principal() == trivial,
            format!("principal iff D-class trivial ({trivial})"),
            if w.is_principal() { "principal" } else { "non-principal" },
            format!("principal({e})"),
        );
        s.note(format!("invertible, D-class trivial: {trivial}, β = {}", inst.display_t(&b)));
        Ok(())
    });
    Ok(report.finish())
}

/// Closed-form `(R : I)` and `I^v` against the brute-force oracles on a grid
/// of probes built from the generators, the lifts of colon generators, and
/// their `X^j` shifts.
pub fn verify_oracle_agreement(inst: &PullbackInstance, params: &SampleParams, exec: Exec) -> Result<Report> {
    let mut report = Report::new("oracle-agreement", inst, None, params);
    let ideals = sample_ideals(inst, params);
    let window = params.window;
    sweep(&mut report, &ideals, exec, RawIdeal::to_string, |i, s| {
        let h = inst.hull(i)?;
        let col = inst.colon(&h);
        let v = inst.v(&h);
        let oracle = VOracle::new(i, inst, window)?;
        let grid = probe_grid(i, &col, inst, window.degree as i64);
        let e = inst.to_expr(&h);
        let (mut n_in, mut n_out) = (0, 0);
        for g in &grid {
            let closed = inst.contains(&col, g);
            let exact = oracle_colon_member(g, i, inst);
            s.expect(closed == exact, format!("{g} ∈ (R : I) is {exact}"), closed, format!("colon({e}) ∋ {g}"));
            let closed = inst.contains(&v, g);
            let found = oracle.member(g, inst);
            let agrees = match &found {
                VMembership::In => closed,
                VMembership::Out(_) => !closed,
                VMembership::Inconclusive => false,
            };
            let got = match &found {
                VMembership::In => "no witness".to_string(),
                VMembership::Out(w) => format!("witness {w}"),
                VMembership::Inconclusive => "no witness found".to_string(),
            };
            s.expect(agrees, format!("{g} ∈ I^v is {closed}"), got, format!("v({e}) ∋ {g}"));
            if closed {
                n_in += 1;
            } else {
                n_out += 1;
            }
        }
        s.note(format!("{} probes ({n_in} in I^v, {n_out} outside)", grid.len()));
        Ok(())
    });
    Ok(report.finish())
}

fn probe_grid(i: &RawIdeal, col: &StructuredIdeal, inst: &PullbackInstance, max_shift: i64) -> Vec<RatFunc> {
    let mut seeds: Vec<RatFunc> = i.gens().to_vec();
    let u = col.unit_part();
    match col.dpart() {
        ExtDModule::Full => seeds.push(u.clone()),
        j => seeds.extend(inst.base().short_generators(j).iter().map(|c| u.scale(c))),
    }
    let half = FieldElem::from_ratio(1, 2);
    let root = (inst.k_disc() != 1).then(|| FieldElem::sqrt(inst.k_disc()).expect("squarefree"));
    let mut grid = Vec::new();
    for p in &seeds {
        for j in [-1, 0, 1, max_shift] {
            grid.push(p.scale_shift(&FieldElem::one(), j));
        }
        grid.push(p.scale(&half));
        if let Some(r) = &root {
            grid.push(p.scale(r));
        }
    }
    grid.sort_by_key(|f| f.to_string());
    grid.dedup();
    grid
}

/// Star-operation axioms, the order `d ≤ t ≤ v`, `lift(v_D) = v_R`,
/// `proj∘lift = id` and `∗ ≤ lift(proj(∗))`.
pub fn verify_star_algebra(inst: &PullbackInstance, params: &SampleParams, exec: Exec) -> Result<Report> {
    let mut report = Report::new("star-algebra", inst, None, params);
    let rs: Vec<IdealValue> = sample_ideals(inst, params)
        .iter()
        .map(|i| inst.hull(i).map(IdealValue::R))
        .collect::<Result<_>>()?;
    let ds: Vec<IdealValue> = sample_d_modules(inst, params).into_iter().map(IdealValue::D).collect();
    let r_scalars = {
        let mut v = vec![RatFunc::from_int(2), RatFunc::constant(FieldElem::from_ratio(-1, 3)), RatFunc::x(), RatFunc::from_poly(crate::kernel::Poly::from_ints(&[1, 1]))];
        if inst.k_disc() != 1 {
            v.push(RatFunc::constant(FieldElem::sqrt(inst.k_disc())?));
        }
        v
    };
    let d_scalars = vec![RatFunc::from_int(2), RatFunc::constant(FieldElem::from_ratio(-1, 3))];

    #[derive(Clone)]
    enum Task {
        Axioms(&'static str, Side),
        Leq(&'static str, &'static str, Side),
        Equal(&'static str, &'static str, Side),
    }
    let tasks = vec![
        Task::Axioms("d", Side::R),
        Task::Axioms("t", Side::R),
        Task::Axioms("v", Side::R),
        Task::Axioms("lift(d)", Side::R),
        Task::Axioms("lift(v)", Side::R),
        Task::Axioms("meet(lift(v),ovr(d))", Side::R),
        Task::Axioms("proj(t)", Side::D),
        Task::Axioms("proj(d)", Side::D),
        Task::Leq("d", "t", Side::R),
        Task::Leq("t", "v", Side::R),
        Task::Equal("lift(v)", "v", Side::R),
        Task::Equal("meet(v,v)", "v", Side::R),
        Task::Equal("meet(d,v)", "d", Side::R),
        Task::Equal("proj(lift(d))", "d", Side::D),
        Task::Equal("proj(lift(v))", "v", Side::D),
        Task::Leq("d", "lift(proj(d))", Side::R),
        Task::Leq("t", "lift(proj(t))", Side::R),
        Task::Leq("v", "lift(proj(v))", Side::R),
    ];
    let describe = |t: &Task| match t {
        Task::Axioms(o, s) => format!("axioms of {o} on {s}"),
        Task::Leq(a, b, s) => format!("{a} ≤ {b} on {s}"),
        Task::Equal(a, b, s) => format!("{a} = {b} on {s}"),
    };
    sweep(&mut report, &tasks, exec, describe, |task, s| {
        let pick = |side: Side| if side == Side::D { &ds } else { &rs };
        let bad = match task {
            Task::Axioms(o, side) => {
                let sc = if *side == Side::D { &d_scalars } else { &r_scalars };
                star_axiom_check(&StarOp::parse(o, *side)?, pick(*side), sc, inst)?
            }
            Task::Leq(a, b, side) => star_leq_check(&StarOp::parse(a, *side)?, &StarOp::parse(b, *side)?, pick(*side), inst)?,
            Task::Equal(a, b, side) => {
                let (x, y) = (StarOp::parse(a, *side)?, StarOp::parse(b, *side)?);
                let mut bad = star_leq_check(&x, &y, pick(*side), inst)?;
                bad.extend(star_leq_check(&y, &x, pick(*side), inst)?);
                bad
            }
        };
        let n = pick(match task {
            Task::Axioms(_, s) | Task::Leq(_, _, s) | Task::Equal(_, _, s) => *s,
        })
        .len();
        s.bad.extend(bad);
        s.note(format!("{n} samples"));
        Ok(())
    });
    Ok(report.finish())
}
