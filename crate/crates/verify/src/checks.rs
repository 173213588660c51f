//! Theorem-level checks with three-valued verdicts.
//!
//! A check FAILs only when every quantity in the violated relation is
//! exact. Lower bounds that still satisfy the relation PASS a fortiori;
//! anything else that is not exact is INCONCLUSIVE.

use std::fmt;
use std::str::FromStr;

use arnold_core::invariants::{milnor_number, minimal_exponent, multiplicity, spectrum_qh, theta, MinExp};
use arnold_core::newton::{lct_monomial, NewtonPoly, ThetaStatus};
use arnold_core::poly::format_rational;
use arnold_core::sampler::Certificate;
use arnold_core::sections::{
    default_samples, generic_restriction, generic_section, milnor_chain, mu_scan, restrict, SectionInvariant,
    SectionValue,
};
use arnold_core::{two_seed, Error, Exponent, ExtRat, Limits, Poly, Rational, Sampler, Spectrum};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::corpus::Entry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Teissier,
    CorollaryChain,
    UpperBound,
    MilnorChain,
    LctRelation,
    SpectrumFamily,
    MuScan,
    Expect,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Teissier,
        CheckKind::CorollaryChain,
        CheckKind::UpperBound,
        CheckKind::MilnorChain,
        CheckKind::LctRelation,
        CheckKind::SpectrumFamily,
        CheckKind::MuScan,
        CheckKind::Expect,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Teissier => "teissier",
            CheckKind::CorollaryChain => "corollary_chain",
            CheckKind::UpperBound => "upper_bound",
            CheckKind::MilnorChain => "milnor_chain",
            CheckKind::LctRelation => "lct_relation",
            CheckKind::SpectrumFamily => "spectrum_family",
            CheckKind::MuScan => "mu_scan",
            CheckKind::Expect => "expect",
        }
    }

    fn index(self) -> u64 {
        CheckKind::ALL.iter().position(|&c| c == self).unwrap() as u64
    }
}

impl FromStr for CheckKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        CheckKind::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CheckKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    /// A precondition or resource failure; the relation was not tested.
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub verdict: Verdict,
    pub witness: Map<String, Value>,
    pub message: String,
}

/// Everything a check needs besides the entry.
#[derive(Clone, Debug)]
pub struct Context {
    pub sampler: Sampler,
    pub limits: Limits,
}

/// `p/q` text of an exact rational.
pub fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn ext(r: &ExtRat) -> Value {
    Value::String(r.to_string())
}

fn opt_nat(v: Option<u64>) -> Value {
    match v {
        Some(k) => json!(k),
        None => json!("inf"),
    }
}

fn nat_text(v: Option<u64>) -> String {
    v.map_or("inf".to_string(), |k| k.to_string())
}

fn spectrum_text(s: &Spectrum) -> String {
    s.values().iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn cert(w: &mut Map<String, Value>, key: &str, c: &Certificate) {
    w.insert(
        key.into(),
        json!({"seeds": c.seeds, "height": c.height, "escalations": c.escalations}),
    );
}

fn recip_plus_one(t: &Rational) -> Rational {
    (t + Rational::one()).recip()
}

/// Verdict for `lhs >= rhs` given exactness of the two sides, where an
/// inexact right side is known to be an over-estimate (so holding still
/// proves the relation).
fn judge(holds: bool, lhs_exact: bool, rhs_exact: bool, rhs_overestimates: bool) -> Verdict {
    match (lhs_exact, rhs_exact) {
        (true, true) => {
            if holds {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        (true, false) if rhs_overestimates && holds => Verdict::Pass,
        _ => Verdict::Inconclusive,
    }
}

struct Outcome {
    verdict: Verdict,
    witness: Map<String, Value>,
    message: String,
}

impl Outcome {
    fn new(verdict: Verdict, witness: Map<String, Value>, message: impl Into<String>) -> Outcome {
        Outcome { verdict, witness, message: message.into() }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let verdict = match e {
        Error::Inconclusive(_) => Verdict::Inconclusive,
        _ => Verdict::Error,
    };
    Outcome::new(verdict, Map::new(), e.to_string())
}

/// Rejects smooth and non-isolated inputs before a theorem check.
fn require_isolated(f: &Poly, limits: &Limits) -> Result<u64, Error> {
    match milnor_number(f, limits)? {
        Some(0) => Err(Error::SmoothPoint),
        Some(mu) => Ok(mu),
        None => Err(Error::NonIsolated),
    }
}

fn exponent_fields(w: &mut Map<String, Value>, prefix: &str, e: &MinExp) {
    w.insert(prefix.into(), ext(&e.value));
    w.insert(format!("{prefix}_method"), json!(e.method.as_str()));
    w.insert(format!("{prefix}_exact"), json!(e.exact));
}

fn section_exponent(entry: &Entry, ctx: &Context, w: &mut Map<String, Value>) -> Result<MinExp, Error> {
    let f = &entry.poly;
    match &entry.params.hyperplane {
        Some(h) => {
            let g = restrict(f, h, &ctx.limits)?;
            w.insert(
                "hyperplane".into(),
                Value::Array(h.coeffs().iter().map(q).collect()),
            );
            minimal_exponent(&g, &ctx.limits)
        }
        None => {
            let st = generic_section(f, SectionInvariant::Exponent, &ctx.sampler, &ctx.limits)?;
            w.insert("hyperplane".into(), json!("generic"));
            cert(w, "section_certificate", &st.certificate);
            match st.value {
                SectionValue::Exponent(e) => Ok(e),
                _ => unreachable!("exponent requested"),
            }
        }
    }
}

/// Verdict of `α̃(f) >= α̃(f|_H) + 1/(θ + 1)`. A θ lower bound enlarges
/// the right side, so the relation still holds a fortiori when it passes.
pub fn teissier_verdict(ef: &MinExp, eh: &MinExp, theta: &Rational, status: ThetaStatus) -> Verdict {
    let rhs = &eh.value + &ExtRat::Finite(recip_plus_one(theta));
    judge(ef.value >= rhs, ef.exact, eh.exact && status.is_exact(), eh.exact)
}

/// Verdict of `α̃(f) >= Σ 1/(θ_i + 1)`.
pub fn chain_verdict(ef: &MinExp, thetas: &[(Rational, ThetaStatus)]) -> Verdict {
    let sum: Rational = thetas.iter().map(|(t, _)| recip_plus_one(t)).sum();
    judge(ef.value >= ExtRat::Finite(sum), ef.exact, thetas.iter().all(|(_, s)| s.is_exact()), true)
}

/// `α̃(f) >= α̃(f|_H) + 1/(θ(f) + 1)`.
fn teissier(entry: &Entry, ctx: &Context) -> Result<Outcome, Error> {
    let f = &entry.poly;
    require_isolated(f, &ctx.limits)?;
    let mut w = Map::new();
    let ef = minimal_exponent(f, &ctx.limits)?;
    let th = theta(f, &ctx.limits)?;
    let eh = section_exponent(entry, ctx, &mut w)?;
    exponent_fields(&mut w, "exponent", &ef);
    exponent_fields(&mut w, "section_exponent", &eh);
    w.insert("theta".into(), q(&th.value));
    w.insert("theta_status".into(), json!(th.status.as_str()));
    let rhs = &eh.value + &ExtRat::Finite(recip_plus_one(&th.value));
    w.insert("rhs".into(), ext(&rhs));
    let holds = ef.value >= rhs;
    w.insert("equality".into(), json!(ef.value == rhs));
    let verdict = teissier_verdict(&ef, &eh, &th.value, th.status);
    let msg = format!("{} >= {} {}", ef.value, rhs, if holds { "holds" } else { "violated" });
    Ok(Outcome::new(verdict, w, msg))
}

/// `α̃(f) >= Σ 1/(θ_i + 1)` over a flag of generic sections.
fn corollary_chain(entry: &Entry, ctx: &Context) -> Result<Outcome, Error> {
    let f = &entry.poly;
    require_isolated(f, &ctx.limits)?;
    let ef = minimal_exponent(f, &ctx.limits)?;
    let st = two_seed(&ctx.sampler, |s| {
        let mut g = f.clone();
        let mut thetas = Vec::new();
        for k in 0u64.. {
            let t = theta(&g, &ctx.limits)?;
            thetas.push((t.value, t.status));
            if g.arity() == 1 {
                break;
            }
            g = generic_restriction(&g, &s.derive(k), &ctx.limits)?;
        }
        Ok(thetas)
    })?;
    let mut w = Map::new();
    exponent_fields(&mut w, "exponent", &ef);
    let mut sum = Rational::zero();
    let mut partial = Vec::new();
    for (t, _) in &st.value {
        sum += recip_plus_one(t);
        partial.push(q(&sum));
    }
    w.insert("thetas".into(), Value::Array(st.value.iter().map(|(t, _)| q(t)).collect()));
    w.insert(
        "theta_statuses".into(),
        Value::Array(st.value.iter().map(|(_, s)| json!(s.as_str())).collect()),
    );
    w.insert("partial_sums".into(), Value::Array(partial));
    w.insert("sum".into(), q(&sum));
    cert(&mut w, "certificate", &st.certificate);
    let rhs = ExtRat::Finite(sum);
    let holds = ef.value >= rhs;
    w.insert("equality".into(), json!(ef.value == rhs));
    let verdict = chain_verdict(&ef, &st.value);
    let msg = format!("{} >= {} {}", ef.value, rhs, if holds { "holds" } else { "violated" });
    Ok(Outcome::new(verdict, w, msg))
}

/// `α̃(f|_H) >= α̃(f) - 1/mult(f)` for generic `H`.
fn upper_bound(entry: &Entry, ctx: &Context) -> Result<Outcome, Error> {
    let f = &entry.poly;
    require_isolated(f, &ctx.limits)?;
    let d = multiplicity(f).ok_or(Error::ConstantInput)?;
    let ef = minimal_exponent(f, &ctx.limits)?;
    let st = generic_section(f, SectionInvariant::Exponent, &ctx.sampler, &ctx.limits)?;
    let SectionValue::Exponent(eh) = st.value else { unreachable!("exponent requested") };
    let mut w = Map::new();
    exponent_fields(&mut w, "exponent", &ef);
    exponent_fields(&mut w, "section_exponent", &eh);
    w.insert("mult".into(), json!(d));
    let rhs = &ef.value + &ExtRat::Finite(-Rational::new(1.into(), d.into()));
    w.insert("rhs".into(), ext(&rhs));
    cert(&mut w, "section_certificate", &st.certificate);
    let holds = eh.value >= rhs;
    w.insert("equality".into(), json!(eh.value == rhs));
    let verdict = judge(holds, eh.exact, ef.exact, false);
    let msg = format!("{} >= {} {}", eh.value, rhs, if holds { "holds" } else { "violated" });
    Ok(Outcome::new(verdict, w, msg))
}

fn milnor_chain_check(entry: &Entry, ctx: &Context) -> Result<Outcome, Error> {
    let f = &entry.poly;
    require_isolated(f, &ctx.limits)?;
    let st = milnor_chain(f, &ctx.sampler, &ctx.limits)?;
    let c = &st.value;
    let mut w = Map::new();
    w.insert("d".into(), json!(c.d));
    w.insert("mu".into(), json!(c.mu_f));
    w.insert("e_jacobian".into(), json!(c.e_jacobian));
    w.insert("mu_section".into(), json!(c.mu_section));
    w.insert("e_restricted".into(), json!(c.e_restricted));
    w.insert("mixed".into(), json!(c.mixed));
    w.insert("mu_family".into(), json!(c.mu_family));
    w.insert("mu_h0".into(), json!(c.mu_h0));
    w.insert("predicted".into(), json!(c.predicted_family_mu()));
    cert(&mut w, "certificate", &st.certificate);
    let verdict = if c.holds() { Verdict::Pass } else { Verdict::Fail };
    let msg = format!(
        "mu(g) = {}, e(J|H) = {}, mixed = {}, mu(h_t) = {:?}, mu(h_0) = {}, (d-1)mu(g) = {}, e(J) = {} vs mu = {}",
        c.mu_section, c.e_restricted, c.mixed, c.mu_family, c.mu_h0, c.predicted_family_mu(), c.e_jacobian, c.mu_f
    );
    Ok(Outcome::new(verdict, w, msg))
}

fn lct_relation(entry: &Entry, ctx: &Context) -> Result<Outcome, Error> {
    let f = &entry.poly;
    require_isolated(f, &ctx.limits)?;
    let mut w = Map::new();
    if !entry.params.nondegenerate {
        return Ok(Outcome::new(Verdict::Inconclusive, w, "entry not flagged nondegenerate"));
    }
    let ef = minimal_exponent(f, &ctx.limits)?;
    exponent_fields(&mut w, "exponent", &ef);
    let exps: Vec<Exponent> = f.support().copied().collect();
    let newton = lct_monomial(&NewtonPoly::from_exponents(&exps)?)?;
    let one = ExtRat::Finite(Rational::one());
    let lhs = ef.value.clone().min(one);
    let rhs = newton.clone().min(Rational::one());
    w.insert("newton_threshold".into(), q(&newton));
    w.insert("lct".into(), ext(&lhs));
    w.insert("newton_lct".into(), q(&rhs));
    if !ef.exact {
        return Ok(Outcome::new(Verdict::Inconclusive, w, "minimal exponent is not exact"));
    }
    let rhs = ExtRat::Finite(rhs);
    let verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
    Ok(Outcome::new(verdict, w, format!("min(exponent, 1) = {lhs}, Newton value = {rhs}")))
}

fn family_samples(entry: &Entry) -> Vec<Rational> {
    let samples = match &entry.params.samples {
        Some(s) => s.clone(),
        None => default_samples(&entry.params.exclusions),
    };
    samples.into_iter().filter(|s| !entry.params.exclusions.contains(s)).collect()
}

fn expected_spectrum(entry: &Entry) -> Option<Vec<Rational>> {
    let text = entry.params.expect.get("spectrum")?;
    let mut v: Vec<Rational> =
        text.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse().expect("validated")).collect();
    v.sort();
    Some(v)
}

fn expected_mu(entry: &Entry) -> Option<Option<u64>> {
    entry.params.expect.get("mu").map(|s| s.trim().parse().ok())
}

/// `μ` at a sample, and the spectrum when `μ` is finite.
type SampleSpectrum = (Option<u64>, Option<Spectrum>);

fn spectrum_family(entry: &Entry, ctx: &Context) -> Result<Outcome, Error> {
    let fam = entry.family()?.ok_or_else(|| Error::InvalidArgument("no family".into()))?;
    let samples = family_samples(entry);
    let rows: Vec<(Rational, Result<SampleSpectrum, Error>)> = samples
        .par_iter()
        .map(|s| {
            let r = fam.instantiate(&vec![s.clone(); fam.params().len()]).and_then(|h| {
                let mu = milnor_number(&h, &ctx.limits)?;
                if mu.is_none() {
                    return Ok((None, None));
                }
                Ok((mu, Some(spectrum_qh(&h, &ctx.limits)?)))
            });
            (s.clone(), r)
        })
        .collect();
    let mut w = Map::new();
    let mut table = Vec::new();
    let mut verdict = Verdict::Pass;
    let mut msg = String::from("mu and spectrum constant");
    let mut reference: Option<(Option<u64>, Option<Spectrum>)> = None;
    for (s, r) in &rows {
        match r {
            Ok((mu, sp)) => {
                table.push(json!({
                    "sample": q(s),
                    "mu": opt_nat(*mu),
                    "spectrum": sp.as_ref().map(spectrum_text),
                }));
                match &reference {
                    None => reference = Some((*mu, sp.clone())),
                    Some(r0) if *r0 != (*mu, sp.clone()) && verdict == Verdict::Pass => {
                        verdict = Verdict::Fail;
                        msg = format!("sample {} differs from sample {}", format_rational(s), format_rational(&samples[0]));
                    }
                    _ => {}
                }
            }
            Err(e) => {
                table.push(json!({"sample": q(s), "error": e.to_string()}));
                if verdict != Verdict::Fail {
                    verdict = if e.is_resource() { Verdict::Error } else { Verdict::Inconclusive };
                    msg = format!("sample {}: {e}", format_rational(s));
                }
            }
        }
    }
    w.insert("samples".into(), Value::Array(table));
    if verdict == Verdict::Pass {
        if let Some((mu, sp)) = &reference {
            if let Some(want) = expected_mu(entry) {
                if want != *mu {
                    verdict = Verdict::Fail;
                    msg = format!("expected mu {}, found {}", nat_text(want), nat_text(*mu));
                }
            }
            if let (Some(want), Some(sp)) = (expected_spectrum(entry), sp) {
                if want != sp.values() {
                    verdict = Verdict::Fail;
                    msg = format!("expected spectrum {{{}}}, found {{{}}}", want.iter().map(format_rational).collect::<Vec<_>>().join(", "), spectrum_text(sp));
                }
            }
        }
    }
    Ok(Outcome::new(verdict, w, msg))
}

fn mu_scan_check(entry: &Entry, ctx: &Context) -> Result<Outcome, Error> {
    let fam = entry.family()?.ok_or_else(|| Error::InvalidArgument("no family".into()))?;
    let scan = mu_scan(&fam, &family_samples(entry), &ctx.limits);
    let mut w = Map::new();
    let rows: Vec<Value> = scan
        .rows
        .iter()
        .map(|r| match &r.mu {
            Ok(mu) => json!({"sample": q(&r.sample), "mu": opt_nat(*mu)}),
            Err(e) => json!({"sample": q(&r.sample), "error": e.to_string()}),
        })
        .collect();
    w.insert("samples".into(), Value::Array(rows));
    if let Some(r) = scan.rows.iter().find(|r| r.mu.is_err()) {
        let e = r.mu.as_ref().unwrap_err();
        let v = if e.is_resource() { Verdict::Error } else { Verdict::Inconclusive };
        return Ok(Outcome::new(v, w, format!("sample {}: {e}", format_rational(&r.sample))));
    }
    if scan.is_constant() {
        let mu = scan.rows.first().and_then(|r| r.mu.clone().ok()).flatten();
        if let Some(want) = expected_mu(entry) {
            if scan.rows.first().map(|r| r.mu.clone().ok().flatten()) != Some(want) {
                return Ok(Outcome::new(Verdict::Fail, w, format!("expected mu {}, found {}", nat_text(want), nat_text(mu))));
            }
        }
        return Ok(Outcome::new(Verdict::Pass, w, format!("CONSTANT mu = {}", nat_text(mu))));
    }
    let parts: Vec<String> = scan
        .partition()
        .iter()
        .map(|(mu, xs)| format!("mu = {}: {}", nat_text(*mu), xs.iter().map(format_rational).collect::<Vec<_>>().join(" ")))
        .collect();
    Ok(Outcome::new(Verdict::Fail, w, parts.join("; ")))
}

fn expect(entry: &Entry, ctx: &Context) -> Result<Outcome, Error> {
    let f = &entry.poly;
    let mut w = Map::new();
    let mut verdict = Verdict::Pass;
    let mut notes = Vec::new();
    let mut downgrade = |v: Verdict, note: String, verdict: &mut Verdict| {
        if v == Verdict::Fail || (v == Verdict::Inconclusive && *verdict == Verdict::Pass) {
            *verdict = v;
        }
        notes.push(note);
    };
    for (key, want) in &entry.params.expect {
        let want = want.trim();
        let (got, exact): (String, bool) = match key.as_str() {
            "mu" => (nat_text(milnor_number(f, &ctx.limits)?), true),
            "mult" => (multiplicity(f).map_or("inf".into(), |d| d.to_string()), true),
            "theta" => {
                let t = theta(f, &ctx.limits)?;
                (format_rational(&t.value), t.status.is_exact())
            }
            "exponent" => {
                let e = minimal_exponent(f, &ctx.limits)?;
                (e.value.to_string(), e.exact)
            }
            "lct" => {
                let e = minimal_exponent(f, &ctx.limits)?;
                (e.value.min(ExtRat::Finite(Rational::one())).to_string(), e.exact)
            }
            "spectrum" => {
                let sp = spectrum_qh(f, &ctx.limits)?;
                let want_sp = expected_spectrum(entry).unwrap_or_default();
                let got = spectrum_text(&sp);
                w.insert(key.clone(), json!({"expected": want, "found": got, "exact": true}));
                if sp.values() != want_sp {
                    downgrade(Verdict::Fail, format!("spectrum: expected {{{want}}}, found {{{got}}}"), &mut verdict);
                }
                continue;
            }
            "section_mu" => {
                let st = generic_section(f, SectionInvariant::Mu, &ctx.sampler, &ctx.limits)?;
                let SectionValue::Natural(mu) = st.value else { unreachable!("mu requested") };
                (nat_text(mu), true)
            }
            _ => unreachable!("validated key"),
        };
        let same = match (want.parse::<Rational>(), got.parse::<Rational>()) {
            (Ok(a), Ok(b)) => a == b,
            _ => want == got,
        };
        w.insert(key.clone(), json!({"expected": want, "found": got, "exact": exact}));
        if !same {
            let v = if exact { Verdict::Fail } else { Verdict::Inconclusive };
            downgrade(v, format!("{key}: expected {want}, found {got}"), &mut verdict);
        }
    }
    let msg = if notes.is_empty() { "all expected values match".to_string() } else { notes.join("; ") };
    Ok(Outcome::new(verdict, w, msg))
}

/// Runs one check; every error becomes a record instead of aborting.
pub fn run_check(kind: CheckKind, entry: &Entry, ctx: &Context) -> CheckResult {
    let ctx = Context { sampler: ctx.sampler.derive(kind.index()), limits: ctx.limits.clone() };
    let out = match kind {
        CheckKind::Teissier => teissier(entry, &ctx),
        CheckKind::CorollaryChain => corollary_chain(entry, &ctx),
        CheckKind::UpperBound => upper_bound(entry, &ctx),
        CheckKind::MilnorChain => milnor_chain_check(entry, &ctx),
        CheckKind::LctRelation => lct_relation(entry, &ctx),
        CheckKind::SpectrumFamily => spectrum_family(entry, &ctx),
        CheckKind::MuScan => mu_scan_check(entry, &ctx),
        CheckKind::Expect => expect(entry, &ctx),
    };
    let out = out.unwrap_or_else(|e| error_outcome(&e));
    CheckResult { check: kind, verdict: out.verdict, witness: out.witness, message: out.message }
}

/// The checks an entry asks for, plus `expect` when it carries expected
/// values and is not a family.
pub fn planned_checks(entry: &Entry, filter: Option<&[CheckKind]>) -> Vec<CheckKind> {
    let mut ks = entry.checks.clone();
    if !entry.params.expect.is_empty() && !entry.is_parametric() && entry.params.family.is_none() {
        ks.push(CheckKind::Expect);
    }
    let mut seen = Vec::new();
    ks.retain(|k| {
        let keep = !seen.contains(k) && filter.is_none_or(|f| f.contains(k));
        seen.push(*k);
        keep
    });
    ks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(k.as_str().parse::<CheckKind>().unwrap(), k);
        }
        assert!("teisier".parse::<CheckKind>().is_err());
    }

    #[test]
    fn gating() {
        assert_eq!(judge(true, true, true, false), Verdict::Pass);
        assert_eq!(judge(false, true, true, false), Verdict::Fail);
        assert_eq!(judge(true, true, false, true), Verdict::Pass);
        assert_eq!(judge(false, true, false, true), Verdict::Inconclusive);
        assert_eq!(judge(true, true, false, false), Verdict::Inconclusive);
        assert_eq!(judge(false, false, true, true), Verdict::Inconclusive);
    }
}
