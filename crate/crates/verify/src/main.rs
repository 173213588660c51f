use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use arnold_core::invariants::{jacobian_ideal, milnor_number, minimal_exponent, multiplicity, spectrum_qh, theta};
use arnold_core::newton::theta_oracle;
use arnold_core::parse::infer_vars;
use arnold_core::poly::format_rational;
use arnold_core::sections::{
    default_samples, generic_section, mu_scan, restrict, section_invariant, FamilySpec, Hyperplane,
    SectionInvariant, SectionValue,
};
use arnold_core::{Error, Limits, Poly, Rational, Sampler, VarSet};
use arnold_verify::{run_corpus, CheckKind, Corpus, RunOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "arnold", version, about = "Exact invariants of isolated hypersurface singularities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Global seed for generic choices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Height bound for sampled coefficients.
    #[arg(long, global = true, default_value_t = 101)]
    height: u64,
    /// Worker threads for corpus runs and scans.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Largest denominator tried by the θ oracle.
    #[arg(long, global = true, default_value_t = 12)]
    qmax: u32,
    /// Reduction-step budget per standard basis.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Comma-separated variable order; inferred from the input otherwise.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiplicity (order) at the origin.
    Mult { poly: String },
    /// Milnor number.
    Milnor { poly: String },
    /// Teissier θ of the Jacobian ideal.
    Theta { poly: String },
    /// Minimal exponent.
    Exponent { poly: String },
    /// Spectrum of a quasi-homogeneous polynomial.
    Spectrum { poly: String },
    /// An invariant of a hyperplane section.
    Section {
        poly: String,
        #[arg(long, default_value = "mu")]
        invariant: String,
        /// Comma-separated coefficients; a generic hyperplane otherwise.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        hyperplane: Option<Vec<String>>,
    },
    /// Milnor numbers along a one-parameter family.
    Scan {
        poly: String,
        /// Name of the parameter inside the polynomial.
        #[arg(long, conflicts_with = "family")]
        param: Option<String>,
        /// A built-in family of the polynomial: loeser or cover.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        samples: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        exclude: Vec<String>,
    },
    /// Run a corpus file.
    Verify {
        corpus: PathBuf,
        /// Comma-separated subset of checks.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Exit 3 when any check is INCONCLUSIVE or ERROR.
        #[arg(long)]
        strict: bool,
        /// Record wall time in the report.
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::ArityOverflow { .. } | Error::InvalidArgument(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Compute(e),
        }
    }
}

fn rational(s: &str) -> Result<Rational, Failure> {
    Rational::from_str(s.trim()).map_err(|_| Failure::Usage(format!("`{s}` is not a rational")))
}

fn rationals(v: &[String]) -> Result<Vec<Rational>, Failure> {
    v.iter().map(|s| rational(s)).collect()
}

fn nat(v: Option<u64>) -> Value {
    v.map_or(json!("inf"), |k| json!(k))
}

struct Session {
    g: Global,
    limits: Limits,
}

impl Session {
    fn vars_for(&self, text: &str, exclude: Option<&str>) -> Result<Arc<VarSet>, Failure> {
        Ok(match &self.g.vars {
            Some(v) => VarSet::new(v.iter().cloned())?,
            None => {
                let all = infer_vars(text)?;
                let keep: Vec<usize> = (0..all.arity()).filter(|&i| Some(all.name(i)) != exclude).collect();
                all.select(&keep)?
            }
        })
    }

    fn poly(&self, text: &str) -> Result<Poly, Failure> {
        Ok(Poly::parse(text, &self.vars_for(text, None)?)?)
    }

    fn sampler(&self) -> Sampler {
        Sampler::new(self.g.seed, self.g.height)
    }

    fn run(&self, cmd: &Cmd) -> Result<(Map<String, Value>, i32), Failure> {
        let lim = &self.limits;
        let mut out = Map::new();
        match cmd {
            Cmd::Mult { poly } => {
                let f = self.poly(poly)?;
                out.insert("mult".into(), nat(multiplicity(&f).map(u64::from)));
            }
            Cmd::Milnor { poly } => {
                let f = self.poly(poly)?;
                out.insert("mu".into(), nat(milnor_number(&f, lim)?));
            }
            Cmd::Theta { poly } => {
                let f = self.poly(poly)?;
                let t = theta(&f, lim)?;
                out.insert("theta".into(), json!(format_rational(&t.value)));
                out.insert("status".into(), json!(t.status.as_str()));
                out.insert(
                    "witness".into(),
                    Value::Array(t.witness.as_slice().iter().map(|w| json!(format_rational(w))).collect()),
                );
                if let Ok(o) = theta_oracle(&jacobian_ideal(&f)?, self.g.qmax) {
                    out.insert("oracle".into(), json!(format_rational(&o)));
                }
            }
            Cmd::Exponent { poly } => {
                let f = self.poly(poly)?;
                let e = minimal_exponent(&f, lim)?;
                out.insert("exponent".into(), json!(e.value.to_string()));
                out.insert("method".into(), json!(e.method.as_str()));
                out.insert("exact".into(), json!(e.exact));
            }
            Cmd::Spectrum { poly } => {
                let f = self.poly(poly)?;
                let sp = spectrum_qh(&f, lim)?;
                out.insert("mu".into(), json!(sp.len()));
                out.insert("spectrum".into(), Value::Array(sp.values().iter().map(|v| json!(format_rational(v))).collect()));
            }
            Cmd::Section { poly, invariant, hyperplane } => {
                let f = self.poly(poly)?;
                let inv = SectionInvariant::from_str(invariant)?;
                let value = match hyperplane {
                    Some(h) => {
                        let h = Hyperplane::new(rationals(h)?)?;
                        if h.coeffs().len() != f.arity() {
                            return Err(Failure::Usage("hyperplane length does not match the variables".into()));
                        }
                        out.insert("hyperplane".into(), Value::Array(h.coeffs().iter().map(|c| json!(format_rational(c))).collect()));
                        section_invariant(&restrict(&f, &h, lim)?, inv, lim)?
                    }
                    None => {
                        let st = generic_section(&f, inv, &self.sampler(), lim)?;
                        out.insert("hyperplane".into(), json!("generic"));
                        out.insert("escalations".into(), json!(st.certificate.escalations));
                        st.value
                    }
                };
                out.insert("invariant".into(), json!(inv.as_str()));
                match value {
                    SectionValue::Natural(v) => {
                        out.insert("value".into(), nat(v));
                    }
                    SectionValue::Exponent(e) => {
                        out.insert("value".into(), json!(e.value.to_string()));
                        out.insert("method".into(), json!(e.method.as_str()));
                        out.insert("exact".into(), json!(e.exact));
                    }
                    SectionValue::Theta { value, status } => {
                        out.insert("value".into(), json!(format_rational(&value)));
                        out.insert("status".into(), json!(status.as_str()));
                    }
                }
            }
            Cmd::Scan { poly, param, family, d, m, samples, exclude } => {
                let fam = match (param, family.as_deref()) {
                    (Some(t), _) => {
                        let base = self.vars_for(poly, Some(t))?;
                        let vars = VarSet::new(base.names().iter().cloned().chain([t.clone()]))?;
                        FamilySpec::parametric(Poly::parse(poly, &vars)?, &[t.as_str()])?
                    }
                    (None, Some("loeser")) => FamilySpec::loeser(&self.poly(poly)?, *d)?,
                    (None, Some("cover")) => FamilySpec::cover(&self.poly(poly)?, d.unwrap_or(1), m.unwrap_or(1))?,
                    (None, Some(other)) => return Err(Failure::Usage(format!("unknown family `{other}`"))),
                    (None, None) => return Err(Failure::Usage("scan needs --param or --family".into())),
                };
                let excl = rationals(exclude)?;
                let samples = match samples {
                    Some(s) => rationals(s)?.into_iter().filter(|x| !excl.contains(x)).collect(),
                    None => default_samples(&excl),
                };
                let scan = match self.g.jobs {
                    Some(j) => rayon::ThreadPoolBuilder::new()
                        .num_threads(j.max(1))
                        .build()
                        .map_err(|e| Failure::Usage(e.to_string()))?
                        .install(|| mu_scan(&fam, &samples, lim)),
                    None => mu_scan(&fam, &samples, lim),
                };
                out.insert("family".into(), json!(fam.symbolic().to_string()));
                let rows = scan
                    .rows
                    .iter()
                    .map(|r| match &r.mu {
                        Ok(mu) => json!({"sample": format_rational(&r.sample), "mu": nat(*mu)}),
                        Err(e) => json!({"sample": format_rational(&r.sample), "error": e.to_string()}),
                    })
                    .collect();
                out.insert("samples".into(), Value::Array(rows));
                out.insert("constant".into(), json!(scan.is_constant()));
            }
            Cmd::Verify { corpus, checks, strict, timing } => {
                let corpus = Corpus::load(corpus).map_err(|e| Failure::Usage(e.to_string()))?;
                let checks = match checks {
                    Some(cs) => Some(
                        cs.iter()
                            .map(|c| CheckKind::from_str(c).map_err(Failure::Usage))
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                    None => None,
                };
                let opts = RunOptions {
                    seed: self.g.seed,
                    height: self.g.height,
                    jobs: self.g.jobs,
                    limits: lim.clone(),
                    checks,
                    timing: *timing,
                };
                let report = run_corpus(&corpus, &opts);
                match self.g.format {
                    Format::Json => println!("{}", report.to_json()),
                    Format::Table => print!("{}", report.to_table()),
                }
                return Ok((Map::new(), report.exit_code(*strict)));
            }
        }
        Ok((out, 0))
    }
}

fn render(out: &Map<String, Value>, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(out).expect("serializes")),
        Format::Table => {
            for (k, v) in out {
                match v {
                    Value::String(s) => println!("{k}: {s}"),
                    Value::Array(a) if a.iter().all(Value::is_string) => {
                        println!("{k}: {}", a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", "))
                    }
                    Value::Array(a) => {
                        println!("{k}:");
                        for row in a {
                            let cells: Vec<String> = row
                                .as_object()
                                .map(|o| o.iter().map(|(k, v)| format!("{k}={}", v.as_str().map_or(v.to_string(), str::to_string))).collect())
                                .unwrap_or_default();
                            println!("  {}", cells.join("  "));
                        }
                    }
                    other => println!("{k}: {other}"),
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(b) = cli.global.budget {
        limits.max_steps = b;
    }
    let format = cli.global.format;
    let session = Session { g: cli.global, limits };
    match session.run(&cli.cmd) {
        Ok((out, code)) => {
            if !out.is_empty() {
                render(&out, format);
            }
            ExitCode::from(code as u8)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            // precondition failures are input errors; budgets and unstable sampling are not
            ExitCode::from(if e.is_resource() || matches!(e, Error::Inconclusive(_)) { 3 } else { 2 })
        }
    }
}
