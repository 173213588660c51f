#![allow(dead_code)]

use std::path::PathBuf;

use arnold_core::invariants::{find_qh_weights, milnor_number};
use arnold_core::poly::format_rational;
use arnold_core::{Exponent, Limits, Poly, Rational, VarSet};
use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpora").join(name)
}

const NAMES: [&str; 3] = ["x", "y", "z"];

/// Random quasi-homogeneous isolated singularities: weights `p/q` with
/// `q <= 6` and `p/q <= 1/2`, every weight-one monomial present with
/// probability 2/3 and a small nonzero coefficient, `μ <= max_mu`.
pub fn random_qh(count: usize, seed: u64, max_mu: u64) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lim = Limits::default();
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=3);
        let w: Vec<Rational> = (0..n)
            .map(|_| loop {
                let q: i64 = rng.gen_range(2..=6);
                let p: i64 = rng.gen_range(1..q);
                if 2 * p <= q {
                    break Rational::new(p.into(), q.into());
                }
            })
            .collect();
        let bound: Vec<u32> = w.iter().map(|wi| (wi.recip().floor().to_integer()).try_into().unwrap()).collect();
        let vars = VarSet::new(NAMES.into_iter().take(n)).unwrap();
        let mut terms: Vec<(Exponent, Rational)> = Vec::new();
        for a in bound.iter().map(|&b| 0..=b).multi_cartesian_product() {
            let e = Exponent::new(&a);
            if e.weighted_degree(&w) != Rational::from_integer(1.into()) || rng.gen_range(0..3) == 0 {
                continue;
            }
            let c: i64 = loop {
                let c = rng.gen_range(-5..=5);
                if c != 0 {
                    break c;
                }
            };
            terms.push((e, Rational::from_integer(c.into())));
        }
        let f = Poly::from_terms(&vars, terms);
        if f.len() < n || find_qh_weights(&f).is_none() {
            continue;
        }
        match milnor_number(&f, &lim) {
            Ok(Some(mu)) if (1..=max_mu).contains(&mu) => out.push(f),
            _ => {}
        }
    }
    out
}

/// A corpus document with one entry per polynomial.
pub fn corpus_text(polys: &[Poly], checks: &[&str]) -> String {
    let checks = checks.iter().map(|c| format!("\"{c}\"")).join(", ");
    polys
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let vars = f.vars().names().iter().map(|v| format!("\"{v}\"")).join(", ");
            format!("[[entry]]\nname = \"fuzz-{i}\"\nvars = [{vars}]\npoly = \"{f}\"\nchecks = [{checks}]\n\n")
        })
        .collect()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn qs(r: &Rational) -> String {
    format_rational(r)
}
