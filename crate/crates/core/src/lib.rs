//! Exact local invariants of isolated hypersurface singularities at the
//! origin: multiplicity, Milnor number, Teissier's θ, minimal exponents,
//! spectra, and Hilbert–Samuel and mixed multiplicities.

pub mod error;
pub mod invariants;
pub mod linalg;
pub mod lp;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod sampler;
pub mod sections;
pub mod spectrum;
pub mod standard_basis;

pub use error::{Error, Result};
pub use sampler::{two_seed, Sampler, Stable};
pub use sections::{FamilySpec, Hyperplane};
pub use spectrum::{ExtRat, Spectrum};
pub use invariants::{ExpMethod, MinExp};
pub use poly::{Exponent, Poly, VarSet, WeightVector};
pub use standard_basis::{colength, quotient_monomial_basis, standard_basis, Ideal, Limits, Staircase, StandardBasis};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
