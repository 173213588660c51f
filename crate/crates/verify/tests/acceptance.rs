//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use arnold_core::invariants::{jacobian_ideal, milnor_number, spectrum_qh};
use arnold_core::newton::{multiplier_order, theta_lp, theta_oracle, NewtonPoly};
use arnold_core::{colength, Ideal, Limits, Poly, Rational, VarSet};
use arnold_verify::{run_corpus, CheckKind, Corpus, Report, RunOptions, Verdict};
use common::{corpus_path, corpus_text, q, random_qh};
use itertools::Itertools;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sweep() -> Vec<Vec<u32>> {
    (1..=3).flat_map(|n| (0..n).map(|_| 2u32..=6).multi_cartesian_product()).collect()
}

fn diagonal(exps: &[u32]) -> Poly {
    let text = exps.iter().zip(["x", "y", "z"]).map(|(a, v)| format!("{v}^{a}")).join(" + ");
    let vars = VarSet::new(["x", "y", "z"].into_iter().take(exps.len())).unwrap();
    Poly::parse(&text, &vars).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(corpus: &Corpus, checks: Option<Vec<CheckKind>>) -> Report {
    run_corpus(corpus, &RunOptions { checks, ..RunOptions::default() })
}

fn run_text(text: &str, checks: Option<Vec<CheckKind>>) -> Report {
    run(&Corpus::parse(text).unwrap(), checks)
}

fn no_fail(r: &Report) -> Result<(), String> {
    ensure(r.summary.fail == 0, || {
        let bad: Vec<String> = r
            .entries
            .iter()
            .flat_map(|e| e.checks.iter().filter(|c| c.verdict == Verdict::Fail).map(move |c| format!("{}: {}: {}", e.name, c.check, c.message)))
            .collect();
        format!("FAIL verdicts: {}", bad.join("; "))
    })
}

fn find<'a>(r: &'a Report, entry: &str, check: CheckKind) -> &'a arnold_verify::CheckResult {
    r.entries.iter().find(|e| e.name == entry).and_then(|e| e.checks.iter().find(|c| c.check == check)).unwrap()
}

fn wit<'a>(c: &'a arnold_verify::CheckResult, key: &str) -> &'a Value {
    c.witness.get(key).unwrap_or(&Value::Null)
}

fn c1_milnor_sweep() -> Outcome {
    let lim = Limits::default();
    let start = Instant::now();
    let cases = sweep();
    for exps in &cases {
        let want: u64 = exps.iter().map(|&a| a as u64 - 1).product();
        let got = milnor_number(&diagonal(exps), &lim).map_err(|e| e.to_string())?;
        ensure(got == Some(want), || format!("{exps:?}: {got:?} != {want}"))?;
    }
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{} cases", cases.len()))
}

fn c2_spectrum_oracle() -> Outcome {
    let lim = Limits::default();
    let cases = sweep();
    for exps in &cases {
        let mut want: BTreeMap<Rational, u64> = BTreeMap::new();
        for ks in exps.iter().map(|&a| 1..a).multi_cartesian_product() {
            let v: Rational = ks.iter().zip(exps).map(|(&k, &a)| q(k as i64, a as i64)).sum();
            *want.entry(v).or_insert(0) += 1;
        }
        let sp = spectrum_qh(&diagonal(exps), &lim).map_err(|e| e.to_string())?;
        let got: BTreeMap<Rational, u64> = sp.entries().map(|(k, m)| (k.clone(), m)).collect();
        ensure(got == want, || format!("{exps:?}: spectrum {sp}"))?;
    }
    Ok(format!("{} spectra", cases.len()))
}

fn c3_theta_oracle() -> Outcome {
    let cases = sweep();
    let mut n = 0;
    for exps in cases.iter().filter(|e| e.len() >= 2) {
        let j = jacobian_ideal(&diagonal(exps)).unwrap();
        let lp = theta_lp(&NewtonPoly::of_ideal_support(&j).unwrap()).map_err(|e| e.to_string())?.value;
        let oracle = theta_oracle(&j, 12).map_err(|e| e.to_string())?;
        ensure(lp == oracle, || format!("{exps:?}: lp {lp} oracle {oracle}"))?;
        let max = *exps.iter().max().unwrap() as i64;
        if exps.len() == 2 {
            ensure(lp == q(max - 1, 1), || format!("{exps:?}: theta {lp}"))?;
        }
        n += 1;
    }
    Ok(format!("{n} Jacobians, theta_lp = theta_oracle"))
}

fn two_variable_corpus(checks: &str) -> String {
    let mut s = String::new();
    for a in 2..=6 {
        for b in a..=6 {
            s += &format!("[[entry]]\nname = \"x^{a}+y^{b}\"\npoly = \"x^{a} + y^{b}\"\nchecks = [{checks}]\n\n");
        }
    }
    s
}

fn c4_teissier() -> Outcome {
    let bp = run(&Corpus::load(&corpus_path("brieskorn_pham.corpus")).unwrap(), Some(vec![CheckKind::Teissier]));
    no_fail(&bp)?;
    let c = find(&bp, "x^2+y^3+z^5 along z=0", CheckKind::Teissier);
    ensure(c.verdict == Verdict::Pass && wit(c, "equality") == &Value::Bool(true), || format!("z=0: {}", c.message))?;
    ensure(wit(c, "theta") == "4" && wit(c, "rhs") == "31/30", || format!("z=0 witness {:?}", c.witness))?;
    let pairs = run_text(&two_variable_corpus("\"teissier\""), None);
    no_fail(&pairs)?;
    for e in &pairs.entries {
        let c = &e.checks[0];
        ensure(c.verdict == Verdict::Pass && wit(c, "equality") == &Value::Bool(true), || {
            format!("{}: {} {}", e.name, c.verdict, c.message)
        })?;
    }
    Ok(format!(
        "{} corpus checks without FAIL; equality on {} x^a+y^b and on z=0",
        bp.summary.pass + bp.summary.inconclusive + bp.summary.error,
        pairs.entries.len()
    ))
}

fn c5_corollary() -> Outcome {
    let bp = run(&Corpus::load(&corpus_path("brieskorn_pham.corpus")).unwrap(), Some(vec![CheckKind::CorollaryChain]));
    no_fail(&bp)?;
    for (name, sum, thetas) in
        [("A2 x^2+y^3", "5/6", vec!["2", "1"]), ("x^2+y^3+z^5 generic", "31/30", vec!["4", "2", "1"])]
    {
        let c = find(&bp, name, CheckKind::CorollaryChain);
        ensure(c.verdict == Verdict::Pass && wit(c, "equality") == &Value::Bool(true), || format!("{name}: {}", c.message))?;
        ensure(wit(c, "sum") == sum && wit(c, "exponent") == sum, || format!("{name}: {:?}", c.witness))?;
        let got: Vec<&str> = wit(c, "thetas").as_array().unwrap().iter().filter_map(Value::as_str).collect();
        ensure(got == thetas, || format!("{name}: thetas {got:?}"))?;
    }
    Ok("1/3+1/2 = 5/6 and 1/5+1/3+1/2 = 31/30 with equality; zero FAIL".into())
}

fn c6_upper_bound() -> Outcome {
    let bp = run(&Corpus::load(&corpus_path("brieskorn_pham.corpus")).unwrap(), Some(vec![CheckKind::UpperBound]));
    no_fail(&bp)?;
    let c = find(&bp, "x^2+y^3+z^5 generic", CheckKind::UpperBound);
    ensure(c.verdict == Verdict::Pass, || c.message.clone())?;
    ensure(
        wit(c, "section_exponent") == "5/6"
            && wit(c, "section_exponent_method") == "morse_ak"
            && wit(c, "rhs") == "8/15"
            && wit(c, "mult") == 2,
        || format!("{:?}", c.witness),
    )?;
    Ok("5/6 >= 31/30 - 1/2 = 8/15 via A_k recognition; zero FAIL".into())
}

fn c7_milnor_chain() -> Outcome {
    let bp = run(&Corpus::load(&corpus_path("brieskorn_pham.corpus")).unwrap(), Some(vec![CheckKind::MilnorChain]));
    let mut n = 0;
    for e in &bp.entries {
        for c in &e.checks {
            ensure(c.verdict == Verdict::Pass, || format!("{}: {} {}", e.name, c.verdict, c.message))?;
            let esc = c.witness["certificate"]["escalations"].as_u64().unwrap();
            ensure(esc <= 1, || format!("{}: {esc} escalations", e.name))?;
            ensure(c.witness["certificate"]["height"].as_u64().unwrap() >= 101, || "height".into())?;
            n += 1;
        }
    }
    let cubic = find(&bp, "Fermat cubic", CheckKind::MilnorChain);
    ensure(wit(cubic, "mu_section") == 4 && wit(cubic, "mu_h0") == 8, || format!("{:?}", cubic.witness))?;
    Ok(format!("{n} entries: five equalities hold, at most one escalation"))
}

fn c8_multiplier_order() -> Outcome {
    for theta in 1..=6u64 {
        for d in 1..=6u64 {
            let m = d * (theta + 1);
            let got = multiplier_order(m, &q(1, theta as i64 + 1)).map_err(|e| e.to_string())?;
            ensure(got == d - 1, || format!("theta {theta}, d {d}: {got}"))?;
        }
    }
    Ok("36 cases equal d-1".into())
}

fn c9_cubic_family() -> Outcome {
    let fam = run(&Corpus::load(&corpus_path("families.corpus")).unwrap(), None);
    let c = find(&fam, "cubic pencil", CheckKind::SpectrumFamily);
    ensure(c.verdict == Verdict::Pass, || c.message.clone())?;
    let rows = wit(c, "samples").as_array().unwrap();
    let samples: Vec<&str> = rows.iter().map(|r| r["sample"].as_str().unwrap()).collect();
    ensure(samples == ["0", "1", "2", "-1"], || format!("{samples:?}"))?;
    for r in rows {
        ensure(r["mu"] == 8 && r["spectrum"] == "1, 4/3, 4/3, 4/3, 5/3, 5/3, 5/3, 2", || r.to_string())?;
    }
    no_fail(&fam)?;
    Ok("mu = 8 and spectrum {1, 4/3 x3, 5/3 x3, 2} at t = 0, 1, 2, -1".into())
}

fn c10_lct() -> Outcome {
    let r = run(&Corpus::load(&corpus_path("diagonal.corpus")).unwrap(), None);
    for e in &r.entries {
        for c in &e.checks {
            ensure(c.verdict == Verdict::Pass, || format!("{}: {} {}", e.name, c.verdict, c.message))?;
            if c.check == CheckKind::LctRelation {
                ensure(wit(c, "lct") == wit(c, "newton_lct"), || format!("{}: {:?}", e.name, c.witness))?;
            }
        }
    }
    Ok(format!("{} diagonal entries match the Newton value", r.entries.len()))
}

fn c11_locality() -> Outcome {
    let v = VarSet::new(["x", "y"]).unwrap();
    let i = Ideal::new(&v, vec![Poly::parse("x - x^2", &v).unwrap(), Poly::parse("y", &v).unwrap()]).unwrap();
    let c = colength(&i, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(c == Some(1), || format!("colength {c:?}"))?;
    Ok("colength((x - x^2, y)) = 1".into())
}

fn c12_fuzz() -> Outcome {
    let polys = random_qh(200, 0x5eed, 60);
    let checks = ["teissier", "corollary_chain", "upper_bound", "milnor_chain", "lct_relation"];
    let r = run_text(&corpus_text(&polys, &checks), None);
    no_fail(&r)?;
    let s = r.summary;
    let mut open: BTreeMap<&str, usize> = BTreeMap::new();
    for c in r.entries.iter().flat_map(|e| &e.checks).filter(|c| c.verdict != Verdict::Pass) {
        *open.entry(c.check.as_str()).or_default() += 1;
    }
    if std::env::var_os("ARNOLD_FUZZ_DUMP").is_some() {
        for e in &r.entries {
            for c in e.checks.iter().filter(|c| c.verdict != Verdict::Pass && c.check != CheckKind::LctRelation) {
                eprintln!("{} | {} | {} | {}", polys[e.name[5..].parse::<usize>().unwrap()], c.check, c.verdict, c.message);
            }
        }
    }
    let open = open.iter().map(|(k, v)| format!("{k} {v}")).join(", ");
    Ok(format!(
        "200 entries: {} pass, {} fail, {} inconclusive, {} error (not passing: {open})",
        s.pass, s.fail, s.inconclusive, s.error
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Brieskorn-Pham Milnor numbers", c1_milnor_sweep),
        ("spectrum oracle", c2_spectrum_oracle),
        ("theta oracle equivalence", c3_theta_oracle),
        ("section inequality with theta", c4_teissier),
        ("iterated-section sum", c5_corollary),
        ("section upper bound", c6_upper_bound),
        ("multiplicity chain", c7_milnor_chain),
        ("multiplier order arithmetic", c8_multiplier_order),
        ("mu-constant cubic family", c9_cubic_family),
        ("lct relation", c10_lct),
        ("locality witness", c11_locality),
        ("quasi-homogeneous fuzz soundness", c12_fuzz),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_millis();
        match out {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
