//! Corpus files: TOML documents holding `[[entry]]` tables.
//!
//! ```toml
//! [[entry]]
//! name = "A2+z5"
//! poly = "x^2 + y^3 + z^5"
//! checks = ["teissier", "corollary_chain"]
//!
//! [entry.params]
//! hyperplane = ["0", "0", "1"]
//!
//! [entry.params.expect]
//! mu = "8"
//! exponent = "31/30"
//! ```
//!
//! Every entry is validated before any check runs.

use std::collections::{BTreeMap, HashSet};
use std::str::FromStr;
use std::sync::Arc;

use arnold_core::parse::infer_vars;
use arnold_core::sections::{FamilySpec, Hyperplane};
use arnold_core::{Poly, Rational, VarSet};
use serde::Deserialize;

use crate::checks::CheckKind;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed corpus: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("entry `{entry}`: {msg}")]
    Entry { entry: String, msg: String },
}

fn entry_err(entry: &str, msg: impl Into<String>) -> CorpusError {
    CorpusError::Entry { entry: entry.to_string(), msg: msg.into() }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCorpus {
    #[serde(default)]
    entry: Vec<RawEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    #[serde(default)]
    vars: Option<Vec<String>>,
    poly: String,
    #[serde(default)]
    checks: Vec<String>,
    #[serde(default)]
    params: RawParams,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    d: Option<u32>,
    m: Option<u32>,
    samples: Option<Vec<String>>,
    #[serde(default)]
    exclusions: Vec<String>,
    #[serde(default)]
    expect: BTreeMap<String, String>,
    param: Option<String>,
    family: Option<String>,
    #[serde(default)]
    nondegenerate: bool,
    hyperplane: Option<Vec<String>>,
}

/// Keys accepted under `params.expect`.
pub const EXPECT_KEYS: &[&str] = &["mu", "mult", "theta", "exponent", "lct", "spectrum", "section_mu"];

/// A validated corpus entry.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub vars: Arc<VarSet>,
    /// The polynomial; for parametric entries it also carries the parameter.
    pub poly: Poly,
    pub checks: Vec<CheckKind>,
    pub params: Params,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default)]
pub struct Params {
    pub d: Option<u32>,
    pub m: Option<u32>,
    pub samples: Option<Vec<Rational>>,
    pub exclusions: Vec<Rational>,
    pub expect: BTreeMap<String, String>,
    pub param: Option<String>,
    pub family: Option<String>,
    pub nondegenerate: bool,
    pub hyperplane: Option<Hyperplane>,
}

impl Entry {
    pub fn is_parametric(&self) -> bool {
        self.params.param.is_some()
    }

    /// The family this entry describes, if any.
    pub fn family(&self) -> Result<Option<FamilySpec>, arnold_core::Error> {
        if let Some(p) = &self.params.param {
            return FamilySpec::parametric(self.poly.clone(), &[p.as_str()]).map(Some);
        }
        match self.params.family.as_deref() {
            Some("loeser") => FamilySpec::loeser(&self.poly, self.params.d).map(Some),
            Some("cover") => FamilySpec::cover(&self.poly, self.params.d.unwrap_or(1), self.params.m.unwrap_or(1)).map(Some),
            _ => Ok(None),
        }
    }
}

fn parse_rational(entry: &str, field: &str, s: &str) -> Result<Rational, CorpusError> {
    Rational::from_str(s.trim()).map_err(|_| entry_err(entry, format!("{field}: `{s}` is not a rational")))
}

/// A parsed, validated corpus with its raw bytes for digesting.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub entries: Vec<Entry>,
    pub bytes: Vec<u8>,
}

impl Corpus {
    pub fn load(path: &std::path::Path) -> Result<Corpus, CorpusError> {
        let bytes = std::fs::read(path)?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| entry_err("<file>", "corpus is not valid UTF-8"))?;
        let mut c = Corpus::parse(&text)?;
        c.bytes = bytes;
        Ok(c)
    }

    pub fn parse(text: &str) -> Result<Corpus, CorpusError> {
        let raw: RawCorpus = toml::from_str(text)?;
        let mut seen = HashSet::new();
        let mut entries = Vec::with_capacity(raw.entry.len());
        for e in raw.entry {
            if !seen.insert(e.name.clone()) {
                return Err(entry_err(&e.name, "duplicate entry name"));
            }
            entries.push(validate(e)?);
        }
        Ok(Corpus { entries, bytes: text.as_bytes().to_vec() })
    }
}

fn validate(e: RawEntry) -> Result<Entry, CorpusError> {
    let name = e.name.clone();
    let err = |msg: String| entry_err(&name, msg);
    let p = &e.params;
    let base_vars = match &e.vars {
        Some(v) => VarSet::new(v.iter().cloned()).map_err(|x| err(x.to_string()))?,
        None => {
            let all = infer_vars(&e.poly).map_err(|x| err(x.to_string()))?;
            let keep: Vec<usize> =
                (0..all.arity()).filter(|&i| Some(all.name(i)) != p.param.as_deref()).collect();
            all.select(&keep).map_err(|x| err(x.to_string()))?
        }
    };
    let parse_vars = match &p.param {
        Some(t) => {
            if base_vars.index_of(t).is_some() {
                return Err(err(format!("parameter `{t}` is also a variable")));
            }
            VarSet::new(base_vars.names().iter().cloned().chain([t.clone()])).map_err(|x| err(x.to_string()))?
        }
        None => base_vars.clone(),
    };
    let poly = Poly::parse(&e.poly, &parse_vars).map_err(|x| err(format!("poly: {x}")))?;
    let mut checks = Vec::new();
    for c in &e.checks {
        checks.push(CheckKind::from_str(c).map_err(|_| err(format!("unknown check `{c}`")))?);
    }
    for k in p.expect.keys() {
        if !EXPECT_KEYS.contains(&k.as_str()) {
            return Err(err(format!("unknown expected value `{k}`")));
        }
    }
    for (k, v) in &p.expect {
        if k == "spectrum" {
            for part in v.split(',').filter(|s| !s.trim().is_empty()) {
                parse_rational(&name, "expect.spectrum", part)?;
            }
        } else if v.trim() != "inf" {
            parse_rational(&name, &format!("expect.{k}"), v)?;
        }
    }
    let samples = match &p.samples {
        Some(s) => Some(s.iter().map(|x| parse_rational(&name, "samples", x)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let exclusions =
        p.exclusions.iter().map(|x| parse_rational(&name, "exclusions", x)).collect::<Result<Vec<_>, _>>()?;
    let hyperplane = match &p.hyperplane {
        Some(h) => {
            let coeffs = h.iter().map(|x| parse_rational(&name, "hyperplane", x)).collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != base_vars.arity() {
                return Err(err(format!("hyperplane has {} coefficients for {} variables", coeffs.len(), base_vars.arity())));
            }
            Some(Hyperplane::new(coeffs).map_err(|x| err(x.to_string()))?)
        }
        None => None,
    };
    if let Some(f) = &p.family {
        if f != "loeser" && f != "cover" {
            return Err(err(format!("unknown family `{f}`")));
        }
        if p.param.is_some() {
            return Err(err("`family` and `param` are exclusive".into()));
        }
    }
    let needs_family = checks.iter().any(|c| matches!(c, CheckKind::SpectrumFamily | CheckKind::MuScan));
    if needs_family && p.param.is_none() && p.family.is_none() {
        return Err(err("family checks need `param` or `family`".into()));
    }
    if p.param.is_some() && checks.iter().any(|c| !matches!(c, CheckKind::SpectrumFamily | CheckKind::MuScan)) {
        return Err(err("parametric entries only support family checks".into()));
    }
    let params = Params {
        d: p.d,
        m: p.m,
        samples,
        exclusions,
        expect: p.expect.clone(),
        param: p.param.clone(),
        family: p.family.clone(),
        nondegenerate: p.nondegenerate,
        hyperplane,
    };
    let entry = Entry { name: name.clone(), vars: base_vars, poly, checks, params, seed: e.seed };
    if entry.params.family.is_some() {
        entry.family().map_err(|x| err(format!("family: {x}")))?;
    }
    Ok(entry)
}
