//! Running a corpus and rendering the report.

use std::fmt::Write as _;
use std::time::Instant;

use arnold_core::{Limits, Sampler};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::checks::{planned_checks, run_check, CheckKind, CheckResult, Context, Verdict};
use crate::corpus::{Corpus, Entry};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub height: u64,
    pub jobs: Option<usize>,
    pub limits: Limits,
    pub checks: Option<Vec<CheckKind>>,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, height: 101, jobs: None, limits: Limits::default(), checks: None, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub corpus_digest: String,
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
    /// Only filled in on request, so default reports stay byte-identical.
    pub elapsed_ms: Option<u64>,
}

/// First eight bytes, big-endian, of SHA-256 over the global seed
/// (little-endian) followed by the entry name.
pub fn entry_seed(global: u64, name: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(global.to_le_bytes());
    h.update(name.as_bytes());
    let out = h.finalize();
    u64::from_be_bytes(out[..8].try_into().unwrap())
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn run_entry(entry: &Entry, opts: &RunOptions) -> EntryReport {
    let seed = entry.seed.unwrap_or_else(|| entry_seed(opts.seed, &entry.name));
    let ctx = Context { sampler: Sampler::new(seed, opts.height), limits: opts.limits.clone() };
    let checks = planned_checks(entry, opts.checks.as_deref()).into_iter().map(|k| run_check(k, entry, &ctx)).collect();
    EntryReport { name: entry.name.clone(), seed, checks }
}

impl Summary {
    fn count(entries: &[EntryReport]) -> Summary {
        let mut s = Summary::default();
        for c in entries.iter().flat_map(|e| &e.checks) {
            match c.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
                Verdict::Error => s.error += 1,
            }
        }
        s
    }
}

/// Runs every entry; entries run concurrently, checks within an entry in
/// order, and the report keeps corpus order.
pub fn run_corpus(corpus: &Corpus, opts: &RunOptions) -> Report {
    let start = Instant::now();
    let work = || corpus.entries.par_iter().map(|e| run_entry(e, opts)).collect::<Vec<_>>();
    let entries = match opts.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        },
        None => work(),
    };
    let summary = Summary::count(&entries);
    Report {
        version: VERSION.to_string(),
        seed: opts.seed,
        corpus_digest: digest(&corpus.bytes),
        entries,
        summary,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let width = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:<15}  {:<12}  message", "entry", "check", "verdict");
        for e in &self.entries {
            for c in &e.checks {
                let _ = writeln!(out, "{:<width$}  {:<15}  {:<12}  {}", e.name, c.check.as_str(), c.verdict.to_string(), c.message);
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} inconclusive, {} error",
            s.pass, s.fail, s.inconclusive, s.error
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out
    }

    /// 1 on any FAIL, 3 on INCONCLUSIVE or ERROR when strict, else 0.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if strict && (self.summary.inconclusive > 0 || self.summary.error > 0) {
            3
        } else {
            0
        }
    }
}
