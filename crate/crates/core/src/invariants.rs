//! Invariant calculators for a polynomial with a singular point at the
//! origin.
//!
//! Everything generic (reductions, linear forms) is drawn from a
//! [`Sampler`]; callers that need a certified value wrap the call in
//! [`two_seed`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, solve, Solution};
use crate::newton::{diagonal_threshold, theta_lp, NewtonPoly, ThetaStatus, ThetaVal};
use crate::poly::{Exponent, Poly, WeightVector};
use crate::sampler::{two_seed, SampleStream, Sampler, Stable};
use crate::spectrum::{ExtRat, Spectrum};
use crate::standard_basis::{colength, standard_basis, Ideal, Limits, StandardBasis};
use crate::Rational;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `mult_0(f)`, the order at the origin; `None` for the zero polynomial.
pub fn multiplicity(f: &Poly) -> Option<u32> {
    f.order()
}

/// The ideal of first partials. Zero partials are dropped.
pub fn jacobian_ideal(f: &Poly) -> Result<Ideal> {
    let partials: Vec<Poly> = (0..f.arity()).map(|i| f.derivative(i)).collect();
    if partials.iter().all(Poly::is_zero) {
        return Err(Error::ConstantInput);
    }
    Ideal::new(f.vars(), partials)
}

fn require_singular_candidate(f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ConstantInput);
    }
    if !f.constant_term().is_zero() {
        return Err(if f.len() == 1 { Error::ConstantInput } else { Error::NonVanishing });
    }
    Ok(())
}

/// Jacobian ideal and its standard basis, or `None` when a partial is a
/// unit (smooth point).
fn jacobian_basis(f: &Poly, limits: &Limits) -> Result<Option<(Ideal, StandardBasis)>> {
    require_singular_candidate(f)?;
    let j = jacobian_ideal(f)?;
    if j.generators().iter().any(|g| !g.constant_term().is_zero()) {
        return Ok(None);
    }
    let sb = standard_basis(&j, limits)?;
    Ok(Some((j, sb)))
}

/// `μ_0(f) = dim O/J_f`: `Some(0)` at a smooth point, `None` when the
/// singular locus through the origin is positive dimensional.
pub fn milnor_number(f: &Poly, limits: &Limits) -> Result<Option<u64>> {
    match jacobian_basis(f, limits)? {
        None => Ok(Some(0)),
        Some((_, sb)) => Ok(sb.staircase(limits)?.colength()),
    }
}

fn random_combination(gens: &[Poly], stream: &mut SampleStream) -> Poly {
    let vars = gens[0].vars();
    gens.iter().fold(Poly::zero(vars), |acc, g| acc + g.scale(&stream.nonzero_rational()))
}

fn generic_linear_form(vars: &std::sync::Arc<crate::VarSet>, stream: &mut SampleStream) -> Poly {
    let gens: Vec<Poly> = (0..vars.arity()).map(|i| Poly::var(vars, i)).collect();
    random_combination(&gens, stream)
}

fn require_m_primary(ideal: &Ideal, limits: &Limits) -> Result<()> {
    match colength(ideal, limits)? {
        Some(_) => Ok(()),
        None => Err(Error::NotMPrimary),
    }
}

/// Colength of `n` random combinations of the generators: one sample of
/// `e(I)`. The value is exact whenever the sample is a reduction.
pub fn hilbert_samuel_sample(ideal: &Ideal, sampler: &Sampler, limits: &Limits) -> Result<u64> {
    let mut stream = sampler.stream();
    let gens: Vec<Poly> =
        (0..ideal.arity()).map(|_| random_combination(ideal.generators(), &mut stream)).collect();
    let q = Ideal::new(ideal.vars(), gens)?;
    colength(&q, limits)?.ok_or_else(|| Error::Inconclusive("sampled elements are not a reduction".into()))
}

/// `e(I)` for an m-primary ideal, via generic reductions and two-seed
/// agreement.
pub fn hilbert_samuel_multiplicity(ideal: &Ideal, sampler: &Sampler, limits: &Limits) -> Result<Stable<u64>> {
    require_m_primary(ideal, limits)?;
    two_seed(sampler, |s| hilbert_samuel_sample(ideal, s, limits))
}

/// One sample of `e(I^[n-1], m)`: colength of `n - 1` random combinations
/// of the generators together with a random linear form.
pub fn mixed_multiplicity_sample(ideal: &Ideal, sampler: &Sampler, limits: &Limits) -> Result<u64> {
    let n = ideal.arity();
    if n < 2 {
        return Err(Error::InvalidArgument("mixed multiplicity needs n >= 2".into()));
    }
    let mut stream = sampler.stream();
    let mut gens: Vec<Poly> =
        (0..n - 1).map(|_| random_combination(ideal.generators(), &mut stream)).collect();
    gens.push(generic_linear_form(ideal.vars(), &mut stream));
    let q = Ideal::new(ideal.vars(), gens)?;
    colength(&q, limits)?.ok_or_else(|| Error::Inconclusive("sampled elements are not a reduction".into()))
}

pub fn mixed_multiplicity_hyperplane(ideal: &Ideal, sampler: &Sampler, limits: &Limits) -> Result<Stable<u64>> {
    if ideal.arity() < 2 {
        return Err(Error::InvalidArgument("mixed multiplicity needs n >= 2".into()));
    }
    require_m_primary(ideal, limits)?;
    two_seed(sampler, |s| mixed_multiplicity_sample(ideal, s, limits))
}

/// Teissier's θ from the Jacobian ideal.
///
/// Exact when `J_f` is a monomial ideal of the local ring (its leading
/// monomials then generate it), or when `f` is quasi-homogeneous in at
/// most three variables, where θ is `max_i 1/w_i - 1` (Krasiński, Oleksik
/// and Płoski), or when `f` is `A_μ`, where θ is `μ`. Otherwise the LP runs on the generator supports and the
/// result is a lower bound. The witness always attains the LP value.
pub fn theta(f: &Poly, limits: &Limits) -> Result<ThetaVal> {
    let Some((j, sb)) = jacobian_basis(f, limits)? else {
        return Err(Error::SmoothPoint);
    };
    let Some(mu) = sb.staircase(limits)?.colength() else {
        return Err(Error::NonIsolated);
    };
    if sb.is_monomial_ideal(limits)? {
        let np = NewtonPoly::from_exponents(&sb.leading_exponents())?;
        return theta_lp(&np);
    }
    let np = NewtonPoly::of_ideal_support(&j)?;
    let mut t = theta_lp(&np)?;
    t.status = ThetaStatus::NewtonLowerBound;
    let exact = if f.order() == Some(2) && hessian_rank(f) + 1 >= f.arity() {
        Some((rat(mu as i64), ThetaStatus::ExactAk))
    } else if f.arity() <= 3 {
        let half = Rational::new(1.into(), 2.into());
        find_qh_weights(f).filter(|w| w.as_slice().iter().all(|wi| *wi <= half)).map(|w| {
            let wmin = w.as_slice().iter().min().expect("nonempty");
            (wmin.recip() - Rational::one(), ThetaStatus::ExactQuasiHomogeneous)
        })
    } else {
        None
    };
    if let Some((value, status)) = exact {
        if value < t.value {
            return Err(Error::SelfCheck(format!("θ = {value} below its Newton bound {}", t.value)));
        }
        t.value = value;
        t.status = status;
    }
    Ok(t)
}

/// The positive weights making every term of `f` weigh 1, when the support
/// determines them uniquely.
pub fn find_qh_weights(f: &Poly) -> Option<WeightVector> {
    if f.is_zero() || !f.constant_term().is_zero() {
        return None;
    }
    let rows: Vec<Vec<Rational>> =
        f.support().map(|e| e.as_slice().iter().map(|&k| rat(k as i64)).collect()).collect();
    let rhs = vec![Rational::one(); rows.len()];
    match solve(&rows, &rhs) {
        Solution::Unique(w) => WeightVector::new(w).ok(),
        _ => None,
    }
}

/// Weighted degree of `x^a · x_1⋯x_n`, the spectral value of a basis
/// monomial.
fn spectral_value(a: &Exponent, w: &WeightVector) -> Rational {
    a.as_slice().iter().zip(w.as_slice()).map(|(&k, wi)| rat(k as i64 + 1) * wi).sum()
}

/// Spectrum of a quasi-homogeneous isolated singularity, read off a
/// monomial basis of the Milnor algebra.
pub fn spectrum_qh(f: &Poly, limits: &Limits) -> Result<Spectrum> {
    require_singular_candidate(f)?;
    let w = find_qh_weights(f).ok_or(Error::NotQuasiHomogeneous)?;
    let n = f.arity();
    let Some((_, sb)) = jacobian_basis(f, limits)? else {
        return Ok(Spectrum::new(n));
    };
    let stairs = sb.staircase(limits)?;
    let mu = stairs.colength().ok_or(Error::NonIsolated)?;
    let basis = stairs.standard_monomials(limits)?;
    let sp = Spectrum::from_values(n, basis.iter().map(|a| spectral_value(a, &w)));
    check_spectrum(&sp, mu)?;
    Ok(sp)
}

fn check_spectrum(sp: &Spectrum, mu: u64) -> Result<()> {
    if sp.len() != mu {
        return Err(Error::SelfCheck(format!("spectrum has {} entries, μ = {mu}", sp.len())));
    }
    if let Some(m) = sp.min() {
        if sp.multiplicity(m) != 1 {
            return Err(Error::SelfCheck("minimal spectral value is not simple".into()));
        }
    }
    if !sp.is_symmetric() {
        return Err(Error::SelfCheck("spectrum is not symmetric about n/2".into()));
    }
    Ok(())
}

/// One summand of a Thom–Sebastiani splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Positions in the ambient variable set.
    pub vars: Vec<usize>,
    /// The summand over the block's own variables.
    pub poly: Poly,
}

/// Splits `f` into sums over disjoint variable sets: the connected
/// components of the graph joining variables that share a term. Variables
/// absent from `f` belong to no block; a constant term goes to the first.
pub fn ts_split(f: &Poly) -> Result<Vec<Block>> {
    let n = f.arity();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    let mut used = vec![false; n];
    for e in f.support() {
        let idx: Vec<usize> = (0..n).filter(|&i| e.get(i) > 0).collect();
        for &i in &idx {
            used[i] = true;
        }
        for w in idx.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of_group: Vec<usize> = Vec::new();
    for i in (0..n).filter(|&i| used[i]) {
        let r = find(&mut parent, i);
        match root_of_group.iter().position(|&x| x == r) {
            Some(k) => groups[k].push(i),
            None => {
                root_of_group.push(r);
                groups.push(vec![i]);
            }
        }
    }
    let mut blocks = Vec::with_capacity(groups.len());
    for (k, idx) in groups.iter().enumerate() {
        let sub = f.vars().select(idx)?;
        let terms = f.terms().iter().filter_map(|(e, c)| {
            let inside = idx.iter().any(|&i| e.get(i) > 0) || (e.is_zero() && k == 0);
            inside.then(|| {
                let local: Vec<u32> = idx.iter().map(|&i| e.get(i)).collect();
                (Exponent::new(&local), c.clone())
            })
        });
        blocks.push(Block { vars: idx.clone(), poly: Poly::from_terms(&sub, terms) });
    }
    let total: usize = blocks.iter().map(|b| b.poly.len()).sum();
    assert_eq!(total, f.len(), "a term spans two blocks");
    Ok(blocks)
}

/// How a minimal exponent was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpMethod {
    Smooth,
    QuasiHomogeneous,
    ThomSebastiani,
    MorseAk,
    SemiQuasiHomogeneous,
    LctLowerBound,
}

impl ExpMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ExpMethod::Smooth => "smooth",
            ExpMethod::QuasiHomogeneous => "quasi_homogeneous",
            ExpMethod::ThomSebastiani => "thom_sebastiani",
            ExpMethod::MorseAk => "morse_ak",
            ExpMethod::SemiQuasiHomogeneous => "semi_quasi_homogeneous",
            ExpMethod::LctLowerBound => "lct_lower_bound",
        }
    }
}

impl fmt::Display for ExpMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A minimal exponent with its provenance. `exact` is false only for the
/// Newton fallback, which is a lower bound only for nondegenerate input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinExp {
    pub value: ExtRat,
    pub method: ExpMethod,
    pub exact: bool,
}

impl MinExp {
    fn exact(value: Rational, method: ExpMethod) -> MinExp {
        MinExp { value: ExtRat::Finite(value), method, exact: true }
    }
}

fn hessian_rank(f: &Poly) -> usize {
    let n = f.arity();
    let mut h = vec![vec![Rational::zero(); n]; n];
    for (e, c) in f.homogeneous_part(2).terms() {
        let idx: Vec<usize> = (0..n).filter(|&i| e.get(i) > 0).collect();
        match idx.as_slice() {
            [i] => h[*i][*i] = c * rat(2),
            [i, j] => {
                h[*i][*j] = c.clone();
                h[*j][*i] = c.clone();
            }
            _ => unreachable!("degree-2 exponent"),
        }
    }
    rank(&h)
}

/// Exponents readable from the order alone: `1/ord` in one variable, and
/// `(m-1)/2 + 1/(μ+1)` for an `A_μ` singularity (order 2, corank ≤ 1).
pub fn morse_ak_exponent(f: &Poly, limits: &Limits) -> Result<Option<MinExp>> {
    require_singular_candidate(f)?;
    let m = f.arity();
    let ord = f.order().unwrap_or(0);
    if m == 1 {
        return Ok((ord >= 2).then(|| MinExp::exact(Rational::new(1.into(), ord.into()), ExpMethod::MorseAk)));
    }
    if ord != 2 || hessian_rank(f) + 1 < m {
        return Ok(None);
    }
    let Some(mu) = milnor_number(f, limits)? else {
        return Ok(None);
    };
    let value = Rational::new(BigInt::from(m as i64 - 1), 2.into()) + Rational::new(1.into(), BigInt::from(mu + 1));
    Ok(Some(MinExp::exact(value, ExpMethod::MorseAk)))
}

/// The principal part `f_w` for a compact Newton facet with positive
/// weights `w`, when `f_w` is an isolated singularity: `f` is then a
/// μ-constant deformation of `f_w` and shares its spectrum.
pub fn semi_qh_principal_part(f: &Poly, limits: &Limits) -> Result<Option<Poly>> {
    require_singular_candidate(f)?;
    let exps: Vec<Exponent> = f.support().copied().collect();
    let np = NewtonPoly::from_exponents(&exps)?;
    for facet in np.facets() {
        if facet.rhs.is_zero() || facet.normal.iter().any(|c| !c.is_positive()) {
            continue;
        }
        let w: Vec<Rational> = facet.normal.iter().map(|c| c / &facet.rhs).collect();
        let principal = Poly::from_terms(
            f.vars(),
            f.terms().iter().filter(|(e, _)| e.weighted_degree(&w).is_one()).cloned(),
        );
        if principal.len() == f.len() || find_qh_weights(&principal).is_none() {
            continue;
        }
        if let Some(mu) = milnor_number(&principal, limits)? {
            if milnor_number(f, limits)? != Some(mu) {
                return Err(Error::SelfCheck("semi-quasi-homogeneous μ differs from its principal part".into()));
            }
            return Ok(Some(principal));
        }
    }
    Ok(None)
}

fn fallback_exponent(f: &Poly) -> Result<MinExp> {
    let exps: Vec<Exponent> = f.support().copied().collect();
    let np = NewtonPoly::from_exponents(&exps)?;
    let v = diagonal_threshold(&np).min(Rational::one());
    Ok(MinExp { value: ExtRat::Finite(v), method: ExpMethod::LctLowerBound, exact: false })
}

fn block_exponent(f: &Poly, limits: &Limits) -> Result<MinExp> {
    if find_qh_weights(f).is_some() {
        let sp = spectrum_qh(f, limits)?;
        if let Some(min) = sp.min() {
            return Ok(MinExp::exact(min.clone(), ExpMethod::QuasiHomogeneous));
        }
    }
    if let Some(e) = morse_ak_exponent(f, limits)? {
        return Ok(e);
    }
    if let Some(p) = semi_qh_principal_part(f, limits)? {
        if let Some(min) = spectrum_qh(&p, limits)?.min() {
            return Ok(MinExp::exact(min.clone(), ExpMethod::SemiQuasiHomogeneous));
        }
    }
    fallback_exponent(f)
}

/// `α̃_0(f)`: smooth points give `+∞`; otherwise a Thom–Sebastiani split
/// whose blocks go through the quasi-homogeneous, Morse/`A_k`,
/// semi-quasi-homogeneous and Newton fallback routes in that order.
pub fn minimal_exponent(f: &Poly, limits: &Limits) -> Result<MinExp> {
    require_singular_candidate(f)?;
    let mu = milnor_number(f, limits)?;
    match mu {
        Some(0) => return Ok(MinExp { value: ExtRat::Infinite, method: ExpMethod::Smooth, exact: true }),
        None => return fallback_exponent(f),
        Some(_) => {}
    }
    let blocks = ts_split(f)?;
    if blocks.len() == 1 {
        return block_exponent(&blocks[0].poly, limits);
    }
    let mut value = ExtRat::Finite(Rational::zero());
    let mut exact = true;
    for b in &blocks {
        let e = block_exponent(&b.poly, limits)?;
        value = &value + &e.value;
        exact &= e.exact;
    }
    let method = if exact { ExpMethod::ThomSebastiani } else { ExpMethod::LctLowerBound };
    Ok(MinExp { value, method, exact })
}
