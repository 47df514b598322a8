//! End-to-end acceptance run: one line per criterion, non-zero exit when any
//! criterion fails.

use std::time::{Duration, Instant};

use starpull::eval::{evaluate, Value};
use starpull::parse::parse_expression;
use starpull_core::class_groups::invertibility_r;
use starpull_core::exec::Exec;
use starpull_core::harness::{run_suite, sample_ideals, Report, SampleParams};
use starpull_core::pullback::{PullbackInstance, CATALOG};
use starpull_core::star_ops::{IdealValue, Side, StarOp};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn inst(name: &str) -> PullbackInstance {
    PullbackInstance::catalog(name).expect("catalogued")
}

fn params(seed: u64, count: usize) -> SampleParams {
    SampleParams { seed, count, ..SampleParams::default() }
}

fn eval(i: &PullbackInstance, text: &str) -> Result<Value, String> {
    let ast = parse_expression(text).map_err(|e| format!("{text}: {e}"))?;
    evaluate(&ast, i).map_err(|e| format!("{text}: {e}"))
}

fn suite(name: &str, i: &str, count: usize, limit: Duration) -> Result<(Report, Duration), String> {
    let start = Instant::now();
    let r = run_suite(name, &inst(i), None, &params(7, count), Exec::Parallel).map_err(|e| format!("{name} on {i}: {e}"))?;
    let took = start.elapsed();
    if !r.passed() {
        return Err(r.summary());
    }
    if took > limit {
        return Err(format!("{name} on {i} took {took:.2?}, limit {limit:?}"));
    }
    Ok((r, took))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

const TEN: Duration = Duration::from_secs(10);

fn split_exact() -> Check {
    let (r, took) = suite("split-exact", "C", 100, TEN)?;
    let c = inst("C");
    let p = "alpha(dideal(2, 1+sqrt(-5)))";
    ensure(eval(&c, &format!("principal({p})"))? == Value::Generator(None), "α(P) is principal")?;
    ensure(matches!(eval(&c, &format!("principal({p}^2)"))?, Value::Generator(Some(_))), "α(P)² is not principal")?;
    let g = eval(&c, &format!("gamma({p})"))?.display(&c);
    let g1 = eval(&c, "gamma(alpha(dideal(1)))")?.display(&c);
    ensure(g.starts_with("(1)") && g1.starts_with("(0)"), format!("γ∘α gave {g} and {g1}"))?;
    Ok(format!("C, op t, {} samples, {took:.2?}", r.n_samples))
}

fn quasilocal() -> Check {
    let (b, tb) = suite("quasilocal-iso", "B", 100, TEN)?;
    let (e, te) = suite("quasilocal-iso", "E", 100, TEN)?;
    Ok(format!("B {} samples in {tb:.2?}, E {} samples in {te:.2?}", b.n_samples, e.n_samples))
}

fn pvmd() -> Check {
    let (a, ta) = suite("pvmd", "A", 100, TEN)?;
    let ok = a.records.iter().filter(|r| r.outcome == "t-invertible").count();
    ensure(ok == 100 && a.witnesses.is_empty(), format!("A: {ok}/100 t-invertible"))?;
    let (d, td) = suite("pvmd", "D", 100, TEN)?;
    let w = d
        .witnesses
        .iter()
        .find(|w| w.sample == "ideal(1, sqrt(-1))")
        .ok_or("D: no witness ideal(1, sqrt(-1))")?;
    ensure(w.got == "X·ℚ(i)[X]" && w.witness.contains("confirmed"), format!("D: witness {w:?}"))?;
    Ok(format!("A 100/100 t-invertible in {ta:.2?}; D witness ideal(1, sqrt(-1)) -> M, confirmed, {td:.2?}"))
}

fn t_extension() -> Check {
    let mut total = Duration::ZERO;
    for name in CATALOG {
        let (_, took) = suite("t-extension", name, 20, Duration::from_secs(5))?;
        total += took;
    }
    ensure(total < Duration::from_secs(5), format!("total {total:.2?}"))?;
    Ok(format!("all instances, 20 samples each, {total:.2?}"))
}

fn pic_splitting() -> Check {
    let mut parts = Vec::new();
    for name in ["C", "A", "B"] {
        let (r, took) = suite("pic-splitting", name, 100, TEN)?;
        parts.push(format!("{name} {} samples {took:.2?}", r.n_samples));
    }
    let c = inst("C");
    let Value::Ideal(IdealValue::R(p)) = eval(&c, "alpha(dideal(2, 1+sqrt(-5)))")? else {
        return Err("α(P) is not an ideal of R".into());
    };
    let w = invertibility_r(&p, &StarOp::d(Side::R), &c).map_err(|e| e.to_string())?;
    ensure(w.is_invertible() && !w.is_principal() && w.replay(&c) == Ok(true), "φ⁻¹(P) certificate")?;
    Ok(parts.join(", "))
}

fn oracle_agreement() -> Check {
    let mut parts = Vec::new();
    for name in ["A", "C", "D"] {
        let (r, took) = suite("oracle-agreement", name, 200, Duration::from_secs(60))?;
        parts.push(format!("{name} {} ideals {took:.2?}", r.n_samples));
    }
    Ok(parts.join(", "))
}

fn star_algebra() -> Check {
    let mut total = Duration::ZERO;
    for name in CATALOG {
        let (_, took) = suite("star-algebra", name, 50, Duration::from_secs(60))?;
        total += took;
    }
    Ok(format!("all instances, 50 samples each, {total:.2?}"))
}

fn determinism() -> Check {
    for name in ["C", "D"] {
        for s in ["split-exact", "pvmd", "oracle-agreement"] {
            let run = |exec| run_suite(s, &inst(name), None, &params(99, 30), exec).map(|r| r.to_json());
            match (run(Exec::Parallel), run(Exec::Parallel), run(Exec::Sequential)) {
                (Ok(a), Ok(b), Ok(c)) => ensure(a == b && b == c, format!("{s} on {name} differs between runs"))?,
                (Err(_), Err(_), Err(_)) => {}
                _ => return Err(format!("{s} on {name}: inconsistent outcomes")),
            }
        }
    }
    let mut checked = 0;
    for name in CATALOG {
        let i = inst(name);
        for raw in sample_ideals(&i, &params(2024, 500)) {
            let h = i.hull(&raw).map_err(|e| e.to_string())?;
            let text = i.to_expr(&h);
            ensure(eval(&i, &text)? == Value::Ideal(IdealValue::R(h)), format!("{name}: {text} does not parse back"))?;
            checked += 1;
        }
    }
    Ok(format!("byte-identical reports; {checked} ideals round-tripped (500 per instance)"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("split exact sequence", split_exact),
        ("quasilocal isomorphism", quasilocal),
        ("PvMD characterization", pvmd),
        ("t-extension", t_extension),
        ("Picard splitting", pic_splitting),
        ("oracle agreement", oracle_agreement),
        ("star-operation algebra", star_algebra),
        ("determinism and round trip", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {}", n + 1, why.trim_end());
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
