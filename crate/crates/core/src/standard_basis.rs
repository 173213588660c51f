//! Standard bases in the local ring at the origin.
//!
//! Reduction is Mora's tangent-cone normal form: among reducers whose leading
//! monomial divides, pick the one of least écart (earliest on ties), and push
//! the current remainder into the reducer set whenever the chosen reducer has
//! larger écart. Pairs are processed in local order of their lcm, then FIFO.
//!
//! Once the leading monomials collected so far contain every monomial of
//! some degree `D`, the ideal contains `m^D` (highest corner), and from then
//! on every polynomial is truncated below degree `D`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Exponent, Poly, VarSet, DEFAULT_TERM_CAP};

/// Resource budgets for the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Reduction steps per standard-basis computation.
    pub max_steps: usize,
    /// Terms in any intermediate polynomial.
    pub max_terms: usize,
    /// Cells of a staircase box walk.
    pub max_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_steps: 200_000, max_terms: DEFAULT_TERM_CAP, max_cells: 1_000_000 }
    }
}

/// An ideal of the local ring, given by polynomial generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Arc<VarSet>,
    generators: Vec<Poly>,
}

impl Ideal {
    pub fn new(vars: &Arc<VarSet>, generators: Vec<Poly>) -> Result<Ideal> {
        let generators: Vec<Poly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(Error::InvalidArgument("ideal needs a nonzero generator".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.vars() != vars) {
            return Err(Error::ArityMismatch { expected: vars.arity(), found: g.arity() });
        }
        Ok(Ideal { vars: vars.clone(), generators })
    }

    /// The maximal ideal `(x_1, …, x_n)`.
    pub fn maximal(vars: &Arc<VarSet>) -> Ideal {
        let generators = (0..vars.arity()).map(|i| Poly::var(vars, i)).collect();
        Ideal { vars: vars.clone(), generators }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.arity()
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Poly::is_monomial)
    }
}

/// A standard basis under the local degree order.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ideal: Ideal,
    basis: Vec<Poly>,
    /// Every monomial of degree `>= corner` lies in the ideal.
    corner: Option<u32>,
}

impl StandardBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn highest_corner_degree(&self) -> Option<u32> {
        self.corner
    }

    pub fn leading_exponents(&self) -> Vec<Exponent> {
        self.basis.iter().filter_map(Poly::leading_exponent).collect()
    }

    /// Mora normal form of `f`; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Poly, limits: &Limits) -> Result<Poly> {
        let mut steps = 0;
        let owned: Vec<Reducer> = self.basis.iter().map(Reducer::new).collect();
        let reducers: Vec<&Reducer> = owned.iter().collect();
        mora_normal_form(f.clone(), &reducers, self.corner, &mut steps, limits)
    }

    pub fn contains(&self, f: &Poly, limits: &Limits) -> Result<bool> {
        Ok(self.normal_form(f, limits)?.is_zero())
    }

    pub fn staircase(&self, limits: &Limits) -> Result<Staircase> {
        Staircase::build(self.ideal.arity(), self.leading_exponents(), self.corner, limits)
    }

    /// True iff the ideal equals its leading monomial ideal in the local
    /// ring. Only meaningful for finite colength, where both quotients have
    /// the same length and inclusion `L(I) ⊆ I` forces equality.
    pub fn is_monomial_ideal(&self, limits: &Limits) -> Result<bool> {
        let stairs = self.staircase(limits)?;
        if !stairs.is_cofinite() {
            return Ok(self.ideal.is_monomial());
        }
        for e in stairs.generators() {
            let m = Poly::monomial(self.ideal.vars(), *e, crate::Rational::from_integer(1.into()));
            if !self.contains(&m, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Monomial staircase: the complement of a monomial ideal in `N^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    arity: usize,
    generators: Vec<Exponent>,
    cofinite: bool,
    colength: Option<u64>,
}

impl Staircase {
    /// The staircase of the monomial ideal generated by `exps`.
    pub fn from_exponents(arity: usize, exps: Vec<Exponent>, limits: &Limits) -> Result<Staircase> {
        Staircase::build(arity, exps, None, limits)
    }

    fn build(arity: usize, exps: Vec<Exponent>, corner: Option<u32>, limits: &Limits) -> Result<Staircase> {
        let mut gens = minimalize(exps);
        if let Some(d) = corner {
            let extra: Vec<Exponent> = monomials_of_degree(arity, d)
                .into_iter()
                .filter(|m| !gens.iter().any(|g| g.divides(m)))
                .collect();
            gens.extend(extra);
            gens = minimalize(gens);
        }
        gens.sort_by(|a, b| a.grlex_cmp(b));
        let bounds = pure_power_bounds(arity, &gens);
        let cofinite = bounds.iter().all(Option::is_some);
        let colength = if cofinite {
            let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
            Some(count_outside(&bounds, &gens, limits.max_cells)?)
        } else {
            None
        };
        Ok(Staircase { arity, generators: gens, cofinite, colength })
    }

    /// Minimal generators of the monomial ideal, grlex ascending.
    pub fn generators(&self) -> &[Exponent] {
        &self.generators
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    /// Number of standard monomials; `None` for `+∞`.
    pub fn colength(&self) -> Option<u64> {
        self.colength
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.generators.iter().any(|g| g.divides(e))
    }

    /// Standard monomials in grlex ascending order.
    pub fn standard_monomials(&self, limits: &Limits) -> Result<Vec<Exponent>> {
        if !self.cofinite {
            return Err(Error::InfiniteColength);
        }
        let bounds: Vec<u32> =
            pure_power_bounds(self.arity, &self.generators).into_iter().map(Option::unwrap).collect();
        let mut out = Vec::new();
        walk_box(&bounds, limits.max_cells, |e| {
            if !self.contains(e) {
                out.push(*e);
            }
        })?;
        out.sort_by(|a, b| a.grlex_cmp(b));
        Ok(out)
    }
}

fn minimalize(mut exps: Vec<Exponent>) -> Vec<Exponent> {
    exps.sort_by(|a, b| a.grlex_cmp(b));
    exps.dedup();
    let mut out: Vec<Exponent> = Vec::new();
    for e in exps {
        if !out.iter().any(|g| g.divides(&e)) {
            out.push(e);
        }
    }
    out
}

fn pure_power_bounds(arity: usize, gens: &[Exponent]) -> Vec<Option<u32>> {
    let mut bounds = vec![None; arity];
    for g in gens {
        if g.is_zero() {
            return vec![Some(0); arity];
        }
        if let Some((i, k)) = g.pure_power() {
            bounds[i] = Some(bounds[i].map_or(k, |b: u32| b.min(k)));
        }
    }
    bounds
}

fn walk_box(bounds: &[u32], max_cells: usize, mut visit: impl FnMut(&Exponent)) -> Result<()> {
    let mut cells: usize = 1;
    for &b in bounds {
        cells = cells.saturating_mul(b as usize);
    }
    if cells > max_cells {
        return Err(Error::BoxCap { limit: max_cells });
    }
    if cells == 0 {
        return Ok(());
    }
    let n = bounds.len();
    let mut e = Exponent::zero(n);
    loop {
        visit(&e);
        let mut i = 0;
        loop {
            if i == n {
                return Ok(());
            }
            if e.get(i) + 1 < bounds[i] {
                e.set(i, e.get(i) + 1);
                break;
            }
            e.set(i, 0);
            i += 1;
        }
    }
}

fn count_outside(bounds: &[u32], gens: &[Exponent], max_cells: usize) -> Result<u64> {
    let mut count = 0u64;
    walk_box(bounds, max_cells, |e| {
        if !gens.iter().any(|g| g.divides(e)) {
            count += 1;
        }
    })?;
    Ok(count)
}

/// All exponents of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i + 1 == n {
            cur.set(i, left);
            out.push(*cur);
            return;
        }
        for k in 0..=left {
            cur.set(i, k);
            rec(n, i + 1, left - k, cur, out);
        }
        cur.set(i, 0);
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, 0, d, &mut Exponent::zero(n), &mut out);
    out
}

struct Reducer {
    poly: Poly,
    lead: Exponent,
    ecart: u32,
}

impl Reducer {
    fn new(p: &Poly) -> Reducer {
        Reducer { lead: p.leading_exponent().expect("nonzero reducer"), ecart: p.ecart(), poly: p.clone() }
    }
}

fn mora_normal_form(
    mut h: Poly,
    basis: &[&Reducer],
    corner: Option<u32>,
    steps: &mut usize,
    limits: &Limits,
) -> Result<Poly> {
    if let Some(d) = corner {
        h.truncate(d);
    }
    let mut extra: Vec<Reducer> = Vec::new();
    loop {
        let (lead, lc) = match h.leading_term() {
            None => return Ok(h),
            Some((e, c)) => (*e, c.clone()),
        };
        let mut best: Option<&Reducer> = None;
        for r in basis.iter().copied().chain(extra.iter()) {
            if r.lead.divides(&lead) && best.is_none_or(|b| r.ecart < b.ecart) {
                best = Some(r);
                if r.ecart == 0 {
                    break;
                }
            }
        }
        let Some(r) = best else {
            return Ok(h);
        };
        *steps += 1;
        if *steps > limits.max_steps {
            return Err(Error::StepBudget { limit: limits.max_steps });
        }
        let shift = lead.checked_sub(&r.lead).expect("divisor");
        let coeff = lc / r.poly.leading_term().unwrap().1.clone();
        let h_ecart = h.ecart();
        let next = {
            let mut p = h.sub_mul_term(&shift, &coeff, &r.poly);
            if let Some(d) = corner {
                p.truncate(d);
            }
            p
        };
        if r.ecart > h_ecart {
            extra.push(Reducer::new(&h));
        }
        if next.len() > limits.max_terms {
            return Err(Error::TermCap { limit: limits.max_terms });
        }
        h = next;
    }
}

#[derive(PartialEq, Eq)]
struct Pair {
    lcm: Exponent,
    seq: usize,
    i: usize,
    j: usize,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap: the local-order-largest lcm first, then the earliest pair
        self.lcm.local_cmp(&other.lcm).then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Engine<'a> {
    limits: &'a Limits,
    basis: Vec<Option<Reducer>>,
    pairs: BinaryHeap<Pair>,
    seq: usize,
    steps: usize,
    corner: Option<u32>,
    arity: usize,
}

impl Engine<'_> {
    fn live(&self) -> Vec<&Reducer> {
        self.basis.iter().flatten().collect()
    }

    fn reduce(&mut self, h: Poly) -> Result<Poly> {
        let reducers: Vec<&Reducer> = self.basis.iter().flatten().collect();
        mora_normal_form(h, &reducers, self.corner, &mut self.steps, self.limits)
    }

    fn insert(&mut self, h: Poly) -> Result<()> {
        let h = h.monic();
        let idx = self.basis.len();
        let lead = h.leading_exponent().expect("nonzero");
        for (j, r) in self.basis.iter().enumerate() {
            let Some(r) = r else { continue };
            if r.lead.is_coprime(&lead) {
                continue;
            }
            let lcm = r.lead.lcm(&lead);
            if self.corner.is_some_and(|d| lcm.degree() >= d) {
                continue;
            }
            self.pairs.push(Pair { lcm, seq: self.seq, i: j, j: idx });
            self.seq += 1;
        }
        self.basis.push(Some(Reducer::new(&h)));
        self.update_corner()
    }

    /// Detects a highest corner and truncates everything below it.
    fn update_corner(&mut self) -> Result<()> {
        let leads: Vec<Exponent> = self.live().iter().map(|r| r.lead).collect();
        let gens = minimalize(leads);
        let bounds = pure_power_bounds(self.arity, &gens);
        if bounds.iter().any(Option::is_none) {
            return Ok(());
        }
        let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
        // corner detection is an optimization; skip it on huge boxes
        let cap = self.limits.max_cells.min(200_000);
        let mut top: Option<u32> = None;
        let walked = walk_box(&bounds, cap, |e| {
            if !gens.iter().any(|g| g.divides(e)) {
                top = Some(top.map_or(e.degree(), |t| t.max(e.degree())));
            }
        });
        if walked.is_err() {
            return Ok(());
        }
        let d = top.map_or(0, |t| t + 1);
        if self.corner.is_some_and(|c| c <= d) {
            return Ok(());
        }
        self.corner = Some(d);
        // elements living entirely in degree >= d stay as they are: they keep
        // m^d inside the leading ideal of the final basis
        for r in self.basis.iter_mut().flatten() {
            let mut p = r.poly.clone();
            p.truncate(d);
            if !p.is_zero() && p.len() != r.poly.len() {
                *r = Reducer::new(&p);
            }
        }
        Ok(())
    }
}

/// Computes a minimal standard basis of `ideal` under the local order.
pub fn standard_basis(ideal: &Ideal, limits: &Limits) -> Result<StandardBasis> {
    let mut eng = Engine {
        limits,
        basis: Vec::new(),
        pairs: BinaryHeap::new(),
        seq: 0,
        steps: 0,
        corner: None,
        arity: ideal.arity(),
    };
    for g in ideal.generators() {
        let h = eng.reduce(g.clone())?;
        if !h.is_zero() {
            eng.insert(h)?;
        }
    }
    while let Some(pair) = eng.pairs.pop() {
        if eng.corner.is_some_and(|d| pair.lcm.degree() >= d) {
            continue;
        }
        let (Some(a), Some(b)) = (&eng.basis[pair.i], &eng.basis[pair.j]) else {
            continue;
        };
        let s = s_poly(&a.poly, &b.poly, &pair.lcm);
        if s.len() > limits.max_terms {
            return Err(Error::TermCap { limit: limits.max_terms });
        }
        let h = eng.reduce(s)?;
        if !h.is_zero() {
            eng.insert(h)?;
        }
    }
    let mut basis: Vec<Poly> = Vec::new();
    let live: Vec<Poly> = eng.basis.into_iter().flatten().map(|r| r.poly).collect();
    for (k, p) in live.iter().enumerate() {
        let lead = p.leading_exponent().unwrap();
        let redundant = live.iter().enumerate().any(|(j, q)| {
            let ql = q.leading_exponent().unwrap();
            j != k && ql.divides(&lead) && (ql != lead || j < k)
        });
        if !redundant {
            basis.push(p.clone());
        }
    }
    Ok(StandardBasis { ideal: ideal.clone(), basis, corner: eng.corner })
}

fn s_poly(a: &Poly, b: &Poly, lcm: &Exponent) -> Poly {
    let (ea, ca) = a.leading_term().unwrap();
    let (eb, cb) = b.leading_term().unwrap();
    let left = a.mul_term(&lcm.checked_sub(ea).unwrap(), &(cb.clone()));
    let right_shift = lcm.checked_sub(eb).unwrap();
    let s = left.sub_mul_term(&right_shift, ca, b);
    debug_assert!(s.coefficient(lcm).is_zero());
    s
}

/// `dim_Q O/I` for the local ring `O` at the origin; `None` for `+∞`.
pub fn colength(ideal: &Ideal, limits: &Limits) -> Result<Option<u64>> {
    Ok(standard_basis(ideal, limits)?.staircase(limits)?.colength())
}

/// The monomials outside the leading ideal, grlex ascending.
pub fn quotient_monomial_basis(ideal: &Ideal, limits: &Limits) -> Result<Vec<Exponent>> {
    standard_basis(ideal, limits)?.staircase(limits)?.standard_monomials(limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(names: &[&str]) -> Arc<VarSet> {
        VarSet::new(names.iter().copied()).unwrap()
    }

    fn ideal(v: &Arc<VarSet>, gens: &[&str]) -> Ideal {
        Ideal::new(v, gens.iter().map(|g| Poly::parse(g, v).unwrap()).collect()).unwrap()
    }

    fn leads(sb: &StandardBasis) -> Vec<Vec<u32>> {
        let mut l: Vec<Vec<u32>> = sb.staircase(&Limits::default()).unwrap().generators().iter().map(|e| e.as_slice().to_vec()).collect();
        l.sort();
        l
    }

    #[test]
    fn monomial_input_is_its_own_basis() {
        let v = vs(&["x", "y"]);
        let sb = standard_basis(&ideal(&v, &["x", "y^2"]), &Limits::default()).unwrap();
        assert_eq!(sb.basis().len(), 2);
        assert_eq!(leads(&sb), vec![vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn unit_factor_is_invisible_locally() {
        let v = vs(&["x", "y"]);
        let i = ideal(&v, &["x - x^2", "y"]);
        let sb = standard_basis(&i, &Limits::default()).unwrap();
        assert_eq!(leads(&sb), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(colength(&i, &Limits::default()).unwrap(), Some(1));
    }

    #[test]
    fn scaled_jacobian() {
        let v = vs(&["x", "y"]);
        let sb = standard_basis(&ideal(&v, &["2*x", "3*y^2"]), &Limits::default()).unwrap();
        assert_eq!(leads(&sb), vec![vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn colength_examples() {
        let v = vs(&["x", "y"]);
        assert_eq!(colength(&ideal(&v, &["x", "y^2"]), &Limits::default()).unwrap(), Some(2));
        let w = vs(&["x", "y", "z"]);
        assert_eq!(colength(&ideal(&w, &["x", "y^2", "z^4"]), &Limits::default()).unwrap(), Some(8));
    }

    #[test]
    fn non_isolated_has_infinite_colength() {
        let v = vs(&["x", "y"]);
        assert_eq!(colength(&ideal(&v, &["2*x*y", "x^2"]), &Limits::default()).unwrap(), None);
        assert_eq!(
            quotient_monomial_basis(&ideal(&v, &["x*y"]), &Limits::default()).unwrap_err(),
            Error::InfiniteColength
        );
    }

    #[test]
    fn quotient_bases() {
        let v = vs(&["x", "y"]);
        let b = quotient_monomial_basis(&ideal(&v, &["x", "y^2"]), &Limits::default()).unwrap();
        assert_eq!(b, vec![Exponent::new(&[0, 0]), Exponent::new(&[0, 1])]);
        let b = quotient_monomial_basis(&ideal(&v, &["3*x^2", "3*y^2"]), &Limits::default()).unwrap();
        assert_eq!(
            b,
            vec![Exponent::new(&[0, 0]), Exponent::new(&[0, 1]), Exponent::new(&[1, 0]), Exponent::new(&[1, 1])]
        );
        let w = vs(&["x", "y", "z"]);
        let b = quotient_monomial_basis(&ideal(&w, &["2*x", "3*y^2", "3*z^2"]), &Limits::default()).unwrap();
        let mut got: Vec<Vec<u32>> = b.iter().map(|e| e.as_slice().to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn membership_is_local() {
        let v = vs(&["x", "y"]);
        let sb = standard_basis(&ideal(&v, &["x - x^2", "y"]), &Limits::default()).unwrap();
        let lim = Limits::default();
        assert!(sb.contains(&Poly::parse("x", &v).unwrap(), &lim).unwrap());
        assert!(!sb.contains(&Poly::parse("1 + x", &v).unwrap(), &lim).unwrap());
        for g in sb.ideal().generators() {
            assert!(sb.normal_form(g, &lim).unwrap().is_zero());
        }
    }

    #[test]
    fn step_budget_is_loud() {
        let v = vs(&["x", "y", "z"]);
        let i = ideal(&v, &["x^3 + y^3 + z^3 + x*y*z", "x^2*y + z^4", "y^2*z + x^5"]);
        let lim = Limits { max_steps: 3, ..Limits::default() };
        assert!(matches!(standard_basis(&i, &lim), Err(Error::StepBudget { limit: 3 })));
    }

    #[test]
    fn monomials_of_degree_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 7), vec![Exponent::new(&[7])]);
    }

    #[test]
    fn local_monomiality() {
        let v = vs(&["x", "y"]);
        let lim = Limits::default();
        // (x + y^4 , y^2) equals (x, y^2) locally
        let sb = standard_basis(&ideal(&v, &["x + y^4", "y^2"]), &lim).unwrap();
        assert!(sb.is_monomial_ideal(&lim).unwrap());
        let sb = standard_basis(&ideal(&v, &["x + y", "y^2"]), &lim).unwrap();
        assert!(!sb.is_monomial_ideal(&lim).unwrap());
    }
}
