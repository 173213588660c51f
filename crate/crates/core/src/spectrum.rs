//! Spectra as multisets of rationals, and the extended rationals used for
//! minimal exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;

use crate::poly::format_rational;
use crate::Rational;

/// A rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Finite(Rational),
    Infinite,
}

impl ExtRat {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinite)
    }
}

impl From<Rational> for ExtRat {
    fn from(r: Rational) -> Self {
        ExtRat::Finite(r)
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
            (ExtRat::Finite(_), ExtRat::Infinite) => Ordering::Less,
            (ExtRat::Infinite, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::Infinite, ExtRat::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinite,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => write!(f, "{}", format_rational(r)),
            ExtRat::Infinite => write!(f, "inf"),
        }
    }
}

/// A multiset of positive rationals attached to an ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spectrum {
    entries: BTreeMap<Rational, u64>,
    ambient: usize,
}

impl Spectrum {
    pub fn new(ambient: usize) -> Spectrum {
        Spectrum { entries: BTreeMap::new(), ambient }
    }

    pub fn from_values<I: IntoIterator<Item = Rational>>(ambient: usize, values: I) -> Spectrum {
        let mut s = Spectrum::new(ambient);
        for v in values {
            s.insert(v, 1);
        }
        s
    }

    pub fn insert(&mut self, value: Rational, mult: u64) {
        if mult > 0 {
            *self.entries.entry(value).or_insert(0) += mult;
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Distinct values with multiplicities, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (&Rational, u64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    /// All values with repetition, ascending.
    pub fn values(&self) -> Vec<Rational> {
        self.entries.iter().flat_map(|(k, &m)| std::iter::repeat_n(k.clone(), m as usize)).collect()
    }

    pub fn multiplicity(&self, value: &Rational) -> u64 {
        self.entries.get(value).copied().unwrap_or(0)
    }

    /// Total multiplicity.
    pub fn len(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.entries.keys().next()
    }

    /// Invariance under `α ↦ n − α` with multiplicities.
    pub fn is_symmetric(&self) -> bool {
        let n = Rational::from_integer(BigInt::from(self.ambient));
        self.entries.iter().all(|(k, &m)| self.multiplicity(&(&n - k)) == m)
    }

    /// Thom–Sebastiani join: all pairwise sums.
    pub fn join(&self, other: &Spectrum) -> Spectrum {
        let mut out = Spectrum::new(self.ambient + other.ambient);
        for (a, ma) in &self.entries {
            for (b, mb) in &other.entries {
                out.insert(a + b, ma * mb);
            }
        }
        out
    }

    /// Every value shifted by `by`.
    pub fn shifted(&self, by: &Rational, ambient: usize) -> Spectrum {
        let mut out = Spectrum::new(ambient);
        for (a, m) in &self.entries {
            out.insert(a + by, *m);
        }
        out
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(k))?;
            if *m > 1 {
                write!(f, " x{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Thom–Sebastiani combination of spectra.
pub fn ts_spectrum(s1: &Spectrum, s2: &Spectrum) -> Spectrum {
    s1.join(s2)
}
