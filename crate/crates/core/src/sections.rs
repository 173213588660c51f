//! Hyperplane sections through the origin, generic sections with two-seed
//! certificates, the deformation families, and Milnor-number scans.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::{
    hilbert_samuel_sample, jacobian_ideal, milnor_number, minimal_exponent, mixed_multiplicity_sample,
    multiplicity, theta, MinExp,
};
use crate::newton::ThetaStatus;
use crate::poly::{Poly, VarSet};
use crate::sampler::{two_seed, Sampler, Stable};
use crate::standard_basis::{Ideal, Limits};
use crate::Rational;

/// The hyperplane `Σ a_i x_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    coeffs: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>) -> Result<Hyperplane> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("hyperplane needs a nonzero coefficient".into()));
        }
        Ok(Hyperplane { coeffs })
    }

    /// `x_i = 0`.
    pub fn coordinate(n: usize, i: usize) -> Result<Hyperplane> {
        if i >= n {
            return Err(Error::InvalidArgument(format!("coordinate {i} out of range")));
        }
        let mut c = vec![Rational::zero(); n];
        c[i] = Rational::one();
        Hyperplane::new(c)
    }

    /// All coefficients sampled nonzero.
    pub fn generic(n: usize, sampler: &Sampler) -> Hyperplane {
        Hyperplane { coeffs: sampler.stream().nonzero_vector(n) }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The last index with a nonzero coefficient; this variable is eliminated.
    pub fn pivot(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero hyperplane")
    }

    /// `x_pivot` in terms of the other variables of `target`, which must
    /// name them.
    fn pivot_image(&self, source: &VarSet, target: &Arc<VarSet>) -> Result<Poly> {
        let p = self.pivot();
        let inv = -self.coeffs[p].recip();
        let mut out = Poly::zero(target);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i != p && !a.is_zero() {
                let j = target.index_of(source.name(i)).ok_or_else(|| Error::UnknownVariable(source.name(i).into()))?;
                out = out + Poly::var(target, j).scale(&(a * &inv));
            }
        }
        Ok(out)
    }
}

/// `f|_H` in the variables other than the pivot.
pub fn restrict(f: &Poly, h: &Hyperplane, limits: &Limits) -> Result<Poly> {
    let n = f.arity();
    if h.coeffs.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: h.coeffs.len() });
    }
    if n < 2 {
        return Err(Error::InvalidArgument("restriction needs n >= 2".into()));
    }
    let p = h.pivot();
    let target = f.vars().without(p)?;
    let image = h.pivot_image(f.vars(), &target)?;
    let g = f.substitute(&[(f.vars().name(p), image)], &target, limits.max_terms)?;
    if g.is_zero() {
        return Err(Error::VanishingRestriction);
    }
    Ok(g)
}

/// `f` in coordinates where `H` becomes `{x_pivot = 0}`: the pivot
/// coordinate is replaced by `Σ a_i x_i`, the rest are kept. Setting the
/// pivot variable to zero gives exactly [`restrict`].
pub fn adapted_coordinates(f: &Poly, h: &Hyperplane, limits: &Limits) -> Result<Poly> {
    let p = h.pivot();
    let vars = f.vars();
    let rest = vars.without(p)?;
    let partial = h.pivot_image(vars, &rest)?.embed(vars)?;
    let image = partial + Poly::var(vars, p).scale(&h.coeffs[p].recip());
    f.substitute(&[(vars.name(p), image)], vars, limits.max_terms)
}

/// Invariants a generic section can be asked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionInvariant {
    Mu,
    Mult,
    Exponent,
    Theta,
}

impl SectionInvariant {
    pub fn as_str(self) -> &'static str {
        match self {
            SectionInvariant::Mu => "mu",
            SectionInvariant::Mult => "mult",
            SectionInvariant::Exponent => "exponent",
            SectionInvariant::Theta => "theta",
        }
    }
}

impl std::str::FromStr for SectionInvariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu" => Ok(SectionInvariant::Mu),
            "mult" => Ok(SectionInvariant::Mult),
            "exponent" => Ok(SectionInvariant::Exponent),
            "theta" => Ok(SectionInvariant::Theta),
            _ => Err(Error::InvalidArgument(format!("unknown section invariant `{s}`"))),
        }
    }
}

/// Value of a section invariant. `Natural(None)` is `+∞`. The θ witness is
/// coordinate dependent, so only value and status are compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionValue {
    Natural(Option<u64>),
    Exponent(MinExp),
    Theta { value: Rational, status: ThetaStatus },
}

pub fn section_invariant(g: &Poly, invariant: SectionInvariant, limits: &Limits) -> Result<SectionValue> {
    Ok(match invariant {
        SectionInvariant::Mu => SectionValue::Natural(milnor_number(g, limits)?),
        SectionInvariant::Mult => SectionValue::Natural(multiplicity(g).map(u64::from)),
        SectionInvariant::Exponent => SectionValue::Exponent(minimal_exponent(g, limits)?),
        SectionInvariant::Theta => {
            let t = theta(g, limits)?;
            SectionValue::Theta { value: t.value, status: t.status }
        }
    })
}

/// The invariant on `f|_H` for generic `H`, certified by two samples.
pub fn generic_section(
    f: &Poly,
    invariant: SectionInvariant,
    sampler: &Sampler,
    limits: &Limits,
) -> Result<Stable<SectionValue>> {
    if f.arity() < 2 {
        return Err(Error::InvalidArgument("sections need n >= 2".into()));
    }
    two_seed(sampler, |s| {
        let g = restrict(f, &Hyperplane::generic(f.arity(), s), limits)?;
        section_invariant(&g, invariant, limits)
    })
}

/// A generic restriction, with the sampler that produced it.
pub fn generic_restriction(f: &Poly, sampler: &Sampler, limits: &Limits) -> Result<Poly> {
    restrict(f, &Hyperplane::generic(f.arity(), sampler), limits)
}

/// Which deformation a [`FamilySpec`] describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `f(x', t·x_n) + (1 - t)·x_n^d`.
    Loeser { d: u32 },
    /// `f(x', y·x_n^d) + z·x_n^m`.
    Cover { d: u32, m: u32 },
    /// A polynomial in the variables and parameters, instantiated by value.
    Parametric,
}

/// A symbolic family over the base variables plus parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    kind: FamilyKind,
    base: Arc<VarSet>,
    params: Vec<String>,
    symbolic: Poly,
}

fn fresh_name(taken: &[String], want: &str) -> String {
    let mut name = want.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

fn extended(base: &Arc<VarSet>, params: &[String]) -> Result<Arc<VarSet>> {
    VarSet::new(base.names().iter().cloned().chain(params.iter().cloned()))
}

impl FamilySpec {
    /// Loeser's family. `d` defaults to the multiplicity of `f`.
    pub fn loeser(f: &Poly, d: Option<u32>) -> Result<FamilySpec> {
        let base = f.vars().clone();
        let n = base.arity();
        if n < 2 {
            return Err(Error::InvalidArgument("family needs n >= 2".into()));
        }
        let d = match d {
            Some(d) => d,
            None => multiplicity(f).ok_or(Error::ConstantInput)?,
        };
        if d < 2 {
            return Err(Error::InvalidArgument("loeser family needs d >= 2".into()));
        }
        let params = vec![fresh_name(base.names(), "t")];
        let all = extended(&base, &params)?;
        let t = Poly::var(&all, n);
        let xn = Poly::var(&all, n - 1);
        let last = base.name(n - 1);
        let scaled = f.substitute(&[(last, &t * &xn)], &all, usize::MAX)?;
        let symbolic = scaled + (Poly::one(&all) - t) * xn.pow(d);
        Ok(FamilySpec { kind: FamilyKind::Loeser { d }, base, params, symbolic })
    }

    /// The weight-0 cover family; fails loudly if the homogeneity check does.
    pub fn cover(f: &Poly, d: u32, m: u32) -> Result<FamilySpec> {
        let base = f.vars().clone();
        let n = base.arity();
        if d < 1 || m < d {
            return Err(Error::InvalidArgument("cover family needs m >= d >= 1".into()));
        }
        let y = fresh_name(base.names(), "y");
        let mut taken = base.names().to_vec();
        taken.push(y.clone());
        let z = fresh_name(&taken, "z");
        let params = vec![y, z];
        let all = extended(&base, &params)?;
        let (yv, zv, xn) = (Poly::var(&all, n), Poly::var(&all, n + 1), Poly::var(&all, n - 1));
        let last = base.name(n - 1);
        let symbolic = f.substitute(&[(last, &yv * &xn.pow(d))], &all, usize::MAX)? + zv * xn.pow(m);
        let spec = FamilySpec { kind: FamilyKind::Cover { d, m }, base, params, symbolic };
        let weights = spec.cover_weights();
        match spec.symbolic.weighted_degree_signed(&weights) {
            Some((deg, true)) if deg.is_zero() => Ok(spec),
            _ => Err(Error::SelfCheck("cover family is not homogeneous of weight 0".into())),
        }
    }

    /// A family read from a polynomial whose trailing variables are the
    /// parameters.
    pub fn parametric(symbolic: Poly, params: &[&str]) -> Result<FamilySpec> {
        let all = symbolic.vars().clone();
        let mut keep = Vec::new();
        for (i, name) in all.names().iter().enumerate() {
            if !params.contains(&name.as_str()) {
                keep.push(i);
            }
        }
        for p in params {
            if all.index_of(p).is_none() {
                return Err(Error::UnknownVariable(p.to_string()));
            }
        }
        if keep.is_empty() {
            return Err(Error::InvalidArgument("family has no base variables".into()));
        }
        let base = all.select(&keep)?;
        let params = params.iter().map(|s| s.to_string()).collect();
        Ok(FamilySpec { kind: FamilyKind::Parametric, base, params, symbolic })
    }

    /// `wt(x_n) = 1`, `wt(y) = -d`, `wt(z) = -m`, all others 0.
    fn cover_weights(&self) -> Vec<Rational> {
        let FamilyKind::Cover { d, m } = self.kind else {
            unreachable!("cover weights requested for another family")
        };
        let n = self.base.arity();
        let mut w = vec![Rational::zero(); n + 2];
        w[n - 1] = Rational::one();
        w[n] = -Rational::from_integer(BigInt::from(d));
        w[n + 1] = -Rational::from_integer(BigInt::from(m));
        w
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn base_vars(&self) -> &Arc<VarSet> {
        &self.base
    }

    /// The family as one polynomial in the base variables and parameters.
    pub fn symbolic(&self) -> &Poly {
        &self.symbolic
    }

    /// The member at the given parameter values.
    pub fn instantiate(&self, values: &[Rational]) -> Result<Poly> {
        if values.len() != self.params.len() {
            return Err(Error::ArityMismatch { expected: self.params.len(), found: values.len() });
        }
        let assignments: Vec<(&str, Poly)> = self
            .params
            .iter()
            .zip(values)
            .map(|(p, v)| (p.as_str(), Poly::constant(&self.base, v.clone())))
            .collect();
        self.symbolic.substitute(&assignments, &self.base, usize::MAX)
    }
}

/// The default scan values `±1/3, ±1/2, ±2, ±3` without the exclusions.
pub fn default_samples(exclusions: &[Rational]) -> Vec<Rational> {
    let base = [(1, 3), (-1, 3), (1, 2), (-1, 2), (2, 1), (-2, 1), (3, 1), (-3, 1)];
    base.iter()
        .map(|&(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
        .filter(|v| !exclusions.contains(v))
        .collect()
}

/// One row of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub sample: Rational,
    /// `Ok(None)` is `+∞`; an error marks the sample and the scan goes on.
    pub mu: Result<Option<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scan {
    pub rows: Vec<ScanRow>,
}

impl Scan {
    /// True iff every sample succeeded with the same value.
    pub fn is_constant(&self) -> bool {
        let mut vals = self.rows.iter().map(|r| r.mu.as_ref().ok());
        match vals.next() {
            Some(Some(first)) => vals.all(|v| v == Some(first)),
            _ => false,
        }
    }

    /// Samples grouped by value, in first-appearance order; failed samples
    /// are left out.
    pub fn partition(&self) -> Vec<(Option<u64>, Vec<Rational>)> {
        let mut out: Vec<(Option<u64>, Vec<Rational>)> = Vec::new();
        for r in &self.rows {
            if let Ok(v) = &r.mu {
                match out.iter_mut().find(|(k, _)| k == v) {
                    Some((_, xs)) => xs.push(r.sample.clone()),
                    None => out.push((*v, vec![r.sample.clone()])),
                }
            }
        }
        out
    }
}

/// Milnor numbers along a one-parameter family. For two-parameter families
/// the sample is used for both parameters.
pub fn mu_scan(family: &FamilySpec, samples: &[Rational], limits: &Limits) -> Scan {
    let rows = samples
        .par_iter()
        .map(|s| {
            let values = vec![s.clone(); family.params.len()];
            let mu = family.instantiate(&values).and_then(|h| milnor_number(&h, limits));
            ScanRow { sample: s.clone(), mu }
        })
        .collect();
    Scan { rows }
}

/// The integers entering the multiplicity chain through a generic
/// hyperplane. All equalities are expected to hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorChain {
    /// `mult_0(f)`.
    pub d: u32,
    pub mu_f: u64,
    /// `e(J_f)`.
    pub e_jacobian: u64,
    /// `μ(g)`, `g = f|_H`.
    pub mu_section: u64,
    /// `e(J_f·O_H)`.
    pub e_restricted: u64,
    /// `e(J_f^[n-1], m)`.
    pub mixed: u64,
    /// `μ(h_t)` at two generic `t`.
    pub mu_family: [u64; 2],
    /// `μ(g + x_n^d)`.
    pub mu_h0: u64,
}

impl MilnorChain {
    /// `(d - 1)·μ(g)`.
    pub fn predicted_family_mu(&self) -> u64 {
        (self.d as u64 - 1) * self.mu_section
    }

    pub fn holds(&self) -> bool {
        let p = self.predicted_family_mu();
        self.e_jacobian == self.mu_f
            && self.e_restricted == self.mu_section
            && self.mixed == self.mu_section
            && self.mu_family.iter().all(|&m| m == p)
            && self.mu_h0 == p
    }
}

fn finite_mu(f: &Poly, limits: &Limits) -> Result<u64> {
    milnor_number(f, limits)?.ok_or(Error::NonIsolated)
}

/// One sample of the chain: a generic hyperplane, adapted coordinates, the
/// section and the Loeser family in those coordinates.
pub fn milnor_chain_sample(f: &Poly, sampler: &Sampler, limits: &Limits) -> Result<MilnorChain> {
    let n = f.arity();
    let d = multiplicity(f).ok_or(Error::ConstantInput)?;
    let mu_f = finite_mu(f, limits)?;
    if mu_f == 0 {
        return Err(Error::SmoothPoint);
    }
    let h = Hyperplane::generic(n, &sampler.derive(0));
    let p = h.pivot();
    let big_f = adapted_coordinates(f, &h, limits)?;
    let sub = f.vars().without(p)?;
    let to_section = |q: &Poly| -> Result<Poly> {
        q.substitute(&[(f.vars().name(p), Poly::zero(&sub))], &sub, limits.max_terms)
    };
    let g = to_section(&big_f)?;
    if g.is_zero() {
        return Err(Error::VanishingRestriction);
    }
    let mu_section = finite_mu(&g, limits)?;

    let jf = jacobian_ideal(f)?;
    let e_jacobian = hilbert_samuel_sample(&jf, &sampler.derive(1), limits)?;
    let restricted: Vec<Poly> = jacobian_ideal(&big_f)?
        .generators()
        .iter()
        .map(to_section)
        .collect::<Result<_>>()?;
    let e_restricted = hilbert_samuel_sample(&Ideal::new(&sub, restricted)?, &sampler.derive(2), limits)?;
    let mixed = mixed_multiplicity_sample(&jf, &sampler.derive(3), limits)?;

    let family = FamilySpec::loeser(&big_f, Some(d))?;
    let mut ts = sampler.derive(4).stream();
    let mut mu_family = [0u64; 2];
    for slot in &mut mu_family {
        let t = loop {
            let t = ts.nonzero_rational();
            if !t.is_one() {
                break t;
            }
        };
        *slot = finite_mu(&family.instantiate(&[t])?, limits)?;
    }
    let h0 = family.instantiate(&[Rational::zero()])?;
    let mu_h0 = finite_mu(&h0, limits)?;
    Ok(MilnorChain { d, mu_f, e_jacobian, mu_section, e_restricted, mixed, mu_family, mu_h0 })
}

/// The chain, certified by two independent samples.
pub fn milnor_chain(f: &Poly, sampler: &Sampler, limits: &Limits) -> Result<Stable<MilnorChain>> {
    if f.arity() < 2 {
        return Err(Error::InvalidArgument("the chain needs n >= 2".into()));
    }
    two_seed(sampler, |s| milnor_chain_sample(f, s, limits))
}
