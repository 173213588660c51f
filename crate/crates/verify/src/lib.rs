//! Corpus-driven verification of the minimal-exponent inequalities, plus
//! the plumbing behind the `arnold` command.

pub mod checks;
pub mod corpus;
pub mod report;

pub use checks::{run_check, CheckKind, CheckResult, Context, Verdict};
pub use corpus::{Corpus, CorpusError, Entry};
pub use report::{entry_seed, run_corpus, Report, RunOptions, Summary};
