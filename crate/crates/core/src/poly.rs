//! Sparse multivariate polynomials over the rationals, localized at the origin.
//!
//! Terms are kept sorted leading-first under the local degree order (see
//! [`Exponent::local_cmp`]), so the leading term of a nonzero polynomial is
//! always `terms()[0]`. Printing uses graded lexicographic ascending order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Hard cap on the number of variables.
pub const MAX_VARS: usize = 6;

/// Default cap on the number of terms produced by expansions.
pub const DEFAULT_TERM_CAP: usize = 50_000;

/// Ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Arc<VarSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidArgument("empty variable set".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::ArityOverflow { arity: names.len(), max: MAX_VARS });
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidArgument(format!("invalid variable name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(VarSet { names }))
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The variable set with variable `i` removed.
    pub fn without(&self, i: usize) -> Result<Arc<VarSet>> {
        let names = self.names.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, n)| n.clone());
        VarSet::new(names)
    }

    /// The sub-list of variables at the given positions.
    pub fn select(&self, idx: &[usize]) -> Result<Arc<VarSet>> {
        VarSet::new(idx.iter().map(|&i| self.names[i].clone()))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector of a monomial. Entries past the arity are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    n: u8,
    e: [u32; MAX_VARS],
}

impl Exponent {
    pub fn zero(n: usize) -> Exponent {
        assert!(n <= MAX_VARS);
        Exponent { n: n as u8, e: [0; MAX_VARS] }
    }

    pub fn new(entries: &[u32]) -> Exponent {
        let mut x = Exponent::zero(entries.len());
        x.e[..entries.len()].copy_from_slice(entries);
        x
    }

    /// The exponent of the variable `x_i`.
    pub fn unit(n: usize, i: usize) -> Exponent {
        let mut x = Exponent::zero(n);
        x.e[i] = 1;
        x
    }

    pub fn arity(&self) -> usize {
        self.n as usize
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.e[..self.n as usize]
    }

    pub fn get(&self, i: usize) -> u32 {
        self.e[i]
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.e[i] = v;
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.e[i] += other.e[i];
        }
        out
    }

    /// `self - other`, if `other` divides `self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.e[i] = self.e[i].checked_sub(other.e[i])?;
        }
        Some(out)
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] <= other.e[i])
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.e[i] = self.e[i].max(other.e[i]);
        }
        out
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || other.e[i] == 0)
    }

    /// If this is a pure power `x_i^k` with `k > 0`, returns `(i, k)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &v) in self.as_slice().iter().enumerate() {
            if v > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, v));
            }
        }
        found
    }

    /// The local degree order. `Greater` means `self` leads `other`:
    /// lower total degree leads; among equal degrees, the last differing
    /// coordinate decides and the larger entry ranks lower.
    pub fn local_cmp(&self, other: &Exponent) -> Ordering {
        match other.degree().cmp(&self.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            if self.e[i] != other.e[i] {
                return other.e[i].cmp(&self.e[i]);
            }
        }
        Ordering::Equal
    }

    /// Graded lexicographic order, used for printing and listing.
    pub fn grlex_cmp(&self, other: &Exponent) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.e.cmp(&other.e))
    }

    pub fn weighted_degree(&self, w: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, wi) in w.iter().enumerate() {
            if self.e[i] != 0 {
                acc += wi * Rational::from_integer(BigInt::from(self.e[i]));
            }
        }
        acc
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

/// Positive rational weights, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(w: Vec<Rational>) -> Result<WeightVector> {
        if w.is_empty() || w.len() > MAX_VARS {
            return Err(Error::InvalidArgument("weight vector length out of range".into()));
        }
        if w.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        Ok(WeightVector(w))
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |a, b| a + b)
    }
}

/// A polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Arc<VarSet>,
    terms: Vec<(Exponent, Rational)>,
}

impl Poly {
    pub fn zero(vars: &Arc<VarSet>) -> Poly {
        Poly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Arc<VarSet>) -> Poly {
        Poly::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Poly {
        Poly::monomial(vars, Exponent::zero(vars.arity()), c)
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Poly {
        Poly::monomial(vars, Exponent::unit(vars.arity(), i), Rational::one())
    }

    pub fn monomial(vars: &Arc<VarSet>, exp: Exponent, c: Rational) -> Poly {
        debug_assert_eq!(exp.arity(), vars.arity());
        if c.is_zero() {
            return Poly::zero(vars);
        }
        Poly { vars: vars.clone(), terms: vec![(exp, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut acc: HashMap<Exponent, Rational> = HashMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.arity(), vars.arity());
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Poly::from_map(vars, acc)
    }

    fn from_map(vars: &Arc<VarSet>, acc: HashMap<Exponent, Rational>) -> Poly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.local_cmp(&a.0));
        Poly { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.arity()
    }

    /// Terms sorted leading-first under the local order.
    pub fn terms(&self) -> &[(Exponent, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Exponent, Rational)> {
        self.terms.first()
    }

    pub fn leading_exponent(&self) -> Option<Exponent> {
        self.terms.first().map(|t| t.0)
    }

    pub fn coefficient(&self, e: &Exponent) -> Rational {
        self.terms
            .iter()
            .find(|t| &t.0 == e)
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Exponent::zero(self.arity()))
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.iter().map(|t| &t.0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Multiplicity at the origin: the least total degree in the support,
    /// `None` standing for `+∞` on the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        // local order puts the least degree first
        self.terms.first().map(|t| t.0.degree())
    }

    /// Largest total degree in the support.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Mora's écart: max degree minus the degree of the leading monomial.
    pub fn ecart(&self) -> u32 {
        match (self.max_degree(), self.order()) {
            (Some(hi), Some(lo)) => hi - lo,
            _ => 0,
        }
    }

    /// The homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Poly {
        let terms = self.terms.iter().filter(|t| t.0.degree() == k).cloned().collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Drops all terms of total degree `>= bound`.
    pub fn truncate(&mut self, bound: u32) {
        self.terms.retain(|t| t.0.degree() < bound);
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(e, a)| (*e, a * c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// `c * x^e * self`. Multiplication by a monomial preserves the order.
    pub fn mul_term(&self, e: &Exponent, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(a, b)| (a.add(e), b * c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// `self - c * x^e * other`, merging the two sorted term lists.
    pub fn sub_mul_term(&self, e: &Exponent, c: &Rational, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let be = b[j].0.add(e);
            if i == a.len() {
                out.push((be, -(&b[j].1 * c)));
                j += 1;
                continue;
            }
            match a[i].0.local_cmp(&be) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((be, -(&b[j].1 * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].1 - &b[j].1 * c;
                    if !v.is_zero() {
                        out.push((be, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { vars: self.vars.clone(), terms: out }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        assert_same_vars(self, other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Rational| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.local_cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !v.is_zero() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(e, c)| (*e, sign(c))));
        Poly { vars: self.vars.clone(), terms: out }
    }

    fn product(&self, other: &Poly) -> Poly {
        assert_same_vars(self, other);
        let mut acc: HashMap<Exponent, Rational> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea.add(eb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Poly::from_map(&self.vars, acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        assert!(i < self.arity(), "variable index out of range");
        let terms = self.terms.iter().filter(|(e, _)| e.get(i) > 0).map(|(e, c)| {
            let k = e.get(i);
            let mut e2 = *e;
            e2.set(i, k - 1);
            (e2, c * Rational::from_integer(BigInt::from(k)))
        });
        // d/dx_i is not order preserving in general, so re-sort
        Poly::from_terms(&self.vars, terms)
    }

    /// Composes with `x_i ↦ images[i]`; every image lives in `target`.
    pub fn compose(&self, images: &[Poly], target: &Arc<VarSet>, term_cap: usize) -> Result<Poly> {
        if images.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: images.len() });
        }
        if let Some(bad) = images.iter().find(|p| p.vars != *target) {
            return Err(Error::ArityMismatch { expected: target.arity(), found: bad.arity() });
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut acc: HashMap<Exponent, Rational> = HashMap::new();
        for (e, c) in &self.terms {
            let mut prod = Poly::constant(target, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    if next.len() > term_cap {
                        return Err(Error::TermCap { limit: term_cap });
                    }
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][k as usize];
                if prod.len() > term_cap {
                    return Err(Error::TermCap { limit: term_cap });
                }
            }
            for (pe, pc) in prod.terms {
                *acc.entry(pe).or_insert_with(Rational::zero) += pc;
            }
            if acc.len() > term_cap {
                return Err(Error::TermCap { limit: term_cap });
            }
        }
        Ok(Poly::from_map(target, acc))
    }

    /// Substitutes by variable name. Variables without an assignment map to
    /// the same-named variable of `target`.
    pub fn substitute(
        &self,
        assignments: &[(&str, Poly)],
        target: &Arc<VarSet>,
        term_cap: usize,
    ) -> Result<Poly> {
        let mut images = Vec::with_capacity(self.arity());
        for name in self.vars.names() {
            match assignments.iter().find(|(n, _)| n == name) {
                Some((_, p)) => images.push(p.clone()),
                None => match target.index_of(name) {
                    Some(j) => images.push(Poly::var(target, j)),
                    None => return Err(Error::UnknownVariable(name.clone())),
                },
            }
        }
        for (n, _) in assignments {
            if self.vars.index_of(n).is_none() {
                return Err(Error::UnknownVariable(n.to_string()));
            }
        }
        self.compose(&images, target, term_cap)
    }

    /// Re-expresses the polynomial over a larger (or reordered) variable
    /// set that contains all its variables.
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Poly> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut out = Exponent::zero(target.arity());
            for (i, &j) in map.iter().enumerate() {
                out.set(j, e.get(i));
            }
            (out, c.clone())
        });
        Ok(Poly::from_terms(target, terms))
    }

    /// Least weighted degree over the support, with a flag telling whether
    /// every term attains it. `None` for the zero polynomial.
    pub fn weighted_degree(&self, w: &WeightVector) -> Option<(Rational, bool)> {
        self.weighted_degree_signed(w.as_slice())
    }

    /// As [`Poly::weighted_degree`] but accepting arbitrary signed weights.
    pub fn weighted_degree_signed(&self, w: &[Rational]) -> Option<(Rational, bool)> {
        let mut degs = self.terms.iter().map(|(e, _)| e.weighted_degree(w));
        let first = degs.next()?;
        let (min, homogeneous) = degs.fold((first, true), |(m, h), d| match d.cmp(&m) {
            Ordering::Less => (d, false),
            Ordering::Equal => (m, h),
            Ordering::Greater => (m, false),
        });
        Some((min, homogeneous))
    }

    /// Parses `text` over `vars`. See the grammar in [`crate::parse`].
    pub fn parse(text: &str, vars: &Arc<VarSet>) -> Result<Poly> {
        crate::parse::parse_poly(text, vars)
    }
}

fn assert_same_vars(a: &Poly, b: &Poly) {
    assert!(
        Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars,
        "polynomials over different variable sets"
    );
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.product(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<&(Exponent, Rational)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| a.0.grlex_cmp(&b.0));
        for (k, (e, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = format_monomial(e, &self.vars);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{}", format_rational(&abs))?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{}", format_rational(&abs), mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn format_monomial(e: &Exponent, vars: &VarSet) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.as_slice().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), k)),
        }
    }
    parts.join("*")
}

/// `p/q` with `/q` omitted for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
