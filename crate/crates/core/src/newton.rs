//! Newton polyhedra of monomial sets and the exact quantities read off them:
//! integral-closure membership, Teissier's θ restricted to monomial
//! valuations, and the diagonal (log canonical) threshold.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank};
use crate::lp::{maximize, Constraint};
use crate::poly::{Exponent, WeightVector};
use crate::standard_basis::{monomials_of_degree, Ideal};
use crate::Rational;

/// Largest dimension handled by the enumeration hull.
pub const MAX_NEWTON_DIM: usize = 4;

/// `{a : ⟨normal, a⟩ >= rhs}` with a primitive nonnegative integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub rhs: Rational,
}

impl Facet {
    pub fn contains(&self, a: &[Rational]) -> bool {
        dot(&self.normal, a) >= self.rhs
    }

    pub fn is_tight(&self, a: &[Rational]) -> bool {
        dot(&self.normal, a) == self.rhs
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs: Vec<String> = self.normal.iter().map(|w| w.to_string()).collect();
        write!(f, "<({}), a> >= {}", lhs.join(", "), self.rhs)
    }
}

/// Newton polyhedron `conv(points) + R^n_{>=0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPoly {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Facet>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn int(v: u32) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Scales a nonzero rational vector to a primitive integer vector.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

pub fn exponent_point(e: &Exponent) -> Vec<Rational> {
    e.as_slice().iter().map(|&k| int(k)).collect()
}

impl NewtonPoly {
    /// Newton polyhedron of a set of exponents.
    pub fn from_exponents(points: &[Exponent]) -> Result<NewtonPoly> {
        let pts: Vec<Vec<Rational>> = points.iter().map(exponent_point).collect();
        NewtonPoly::from_points(&pts)
    }

    /// Newton polyhedron of nonnegative rational points.
    pub fn from_points(points: &[Vec<Rational>]) -> Result<NewtonPoly> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidArgument("Newton polyhedron of an empty set".into()));
        };
        let n = first.len();
        if n == 0 || points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidArgument("points of inconsistent dimension".into()));
        }
        if n > MAX_NEWTON_DIM {
            return Err(Error::DimensionCap { n, max: MAX_NEWTON_DIM });
        }
        if points.iter().flatten().any(Signed::is_negative) {
            return Err(Error::InvalidArgument("Newton points must be nonnegative".into()));
        }
        let mut pts: Vec<Vec<Rational>> = points.to_vec();
        pts.sort();
        pts.dedup();
        // drop points dominated by another point
        let pts: Vec<Vec<Rational>> = pts
            .iter()
            .filter(|p| !pts.iter().any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b)))
            .cloned()
            .collect();

        let mut facets: Vec<Facet> = Vec::new();
        for k in 1..=n.min(pts.len()) {
            for chosen in (0..pts.len()).combinations(k) {
                for dirs in (0..n).combinations(n - k) {
                    let base = &pts[chosen[0]];
                    let mut rows: Vec<Vec<Rational>> = chosen[1..]
                        .iter()
                        .map(|&j| pts[j].iter().zip(base).map(|(a, b)| a - b).collect())
                        .collect();
                    for &d in &dirs {
                        let mut r = vec![Rational::zero(); n];
                        r[d] = Rational::one();
                        rows.push(r);
                    }
                    let ker = if rows.is_empty() {
                        vec![vec![Rational::one(); 1]]
                    } else {
                        nullspace(&rows, n)
                    };
                    if ker.len() != 1 {
                        continue;
                    }
                    let mut w = ker.into_iter().next().unwrap();
                    if w.iter().all(|x| !x.is_positive()) {
                        w = w.iter().map(|x| -x).collect();
                    }
                    if w.iter().any(Signed::is_negative) {
                        continue;
                    }
                    let w = primitive(&w);
                    let c = dot(&w, base);
                    if pts.iter().any(|p| dot(&w, p) < c) {
                        continue;
                    }
                    let f = Facet { normal: w, rhs: c };
                    if !facets.contains(&f) {
                        facets.push(f);
                    }
                }
            }
        }
        facets.sort();
        let vertices: Vec<Vec<Rational>> = pts
            .iter()
            .filter(|p| {
                let tight: Vec<Vec<Rational>> =
                    facets.iter().filter(|f| f.is_tight(p)).map(|f| f.normal.clone()).collect();
                rank(&tight) == n
            })
            .cloned()
            .collect();
        Ok(NewtonPoly { dim: n, vertices, facets })
    }

    /// Newton polyhedron of the monomials in the supports of the generators.
    pub fn of_ideal_support(ideal: &Ideal) -> Result<NewtonPoly> {
        let pts: Vec<Exponent> = ideal.generators().iter().flat_map(|g| g.support().copied()).collect();
        NewtonPoly::from_exponents(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Integral-closure membership: `a` satisfies every facet inequality.
    pub fn contains(&self, a: &[Rational]) -> bool {
        a.len() == self.dim && a.iter().all(|x| !x.is_negative()) && self.facets.iter().all(|f| f.contains(a))
    }

    /// `k · NP`, the Newton polyhedron of the `k`-th power.
    pub fn scaled(&self, k: u32) -> NewtonPoly {
        let k = int(k);
        NewtonPoly {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.iter().map(|x| x * &k).collect()).collect(),
            facets: self.facets.iter().map(|f| Facet { normal: f.normal.clone(), rhs: &f.rhs * &k }).collect(),
        }
    }

    /// Whether a vertex lies on every coordinate axis (m-primary source).
    pub fn meets_every_axis(&self) -> bool {
        (0..self.dim).all(|i| self.axis_intercept(i).is_some())
    }

    /// The vertex on the `i`-th axis, as its nonzero coordinate.
    pub fn axis_intercept(&self, i: usize) -> Option<Rational> {
        self.vertices
            .iter()
            .find(|v| v.iter().enumerate().all(|(j, x)| j == i || x.is_zero()))
            .map(|v| v[i].clone())
    }

    /// Least `t` with `t·(1,…,1)` in the polyhedron.
    pub fn diagonal_entry(&self) -> Rational {
        self.facets
            .iter()
            .filter_map(|f| {
                let s: Rational = f.normal.iter().sum();
                s.is_positive().then(|| &f.rhs / s)
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Newton polyhedron of a monomial exponent set.
pub fn newton_polyhedron(points: &[Exponent]) -> Result<NewtonPoly> {
    NewtonPoly::from_exponents(points)
}

/// Closure membership of a rational point.
pub fn closure_contains(np: &NewtonPoly, a: &[Rational]) -> bool {
    np.contains(a)
}

/// How far a θ value can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaStatus {
    /// Exact: the ideal is monomial in the local ring.
    ExactMonomial,
    /// Exact: `max_i 1/w_i - 1` for a quasi-homogeneous isolated singularity
    /// in at most three variables (Łojasiewicz exponent of the gradient).
    ExactQuasiHomogeneous,
    /// Exact: an `A_μ` singularity (order 2, corank at most one) has `θ = μ`.
    ExactAk,
    /// Monomial valuations of the generator supports only; a lower bound.
    NewtonLowerBound,
}

impl ThetaStatus {
    pub fn is_exact(self) -> bool {
        self != ThetaStatus::NewtonLowerBound
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ThetaStatus::ExactMonomial => "exact_monomial",
            ThetaStatus::ExactQuasiHomogeneous => "exact_quasi_homogeneous",
            ThetaStatus::ExactAk => "exact_a_k",
            ThetaStatus::NewtonLowerBound => "newton_lower_bound",
        }
    }
}

/// Teissier's θ with the weight vector attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaVal {
    pub value: Rational,
    pub status: ThetaStatus,
    pub witness: WeightVector,
}

/// `max_w min_v ⟨w, v⟩ / min_i w_i`, solved as one exact LP per choice of
/// the coordinate achieving `min_i w_i = 1`.
pub fn theta_lp(np: &NewtonPoly) -> Result<ThetaVal> {
    if !np.meets_every_axis() {
        return Err(Error::NotMPrimary);
    }
    let n = np.dim();
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for i in 0..n {
        let mut eq = vec![Rational::zero(); n + 1];
        eq[i] = Rational::one();
        let equalities = vec![Constraint::new(eq, Rational::one())];
        let mut inequalities = Vec::new();
        for j in (0..n).filter(|&j| j != i) {
            let mut c = vec![Rational::zero(); n + 1];
            c[j] = Rational::one();
            inequalities.push(Constraint::new(c, Rational::one()));
        }
        for v in np.vertices() {
            let mut c: Vec<Rational> = v.clone();
            c.push(-Rational::one());
            inequalities.push(Constraint::new(c, Rational::zero()));
        }
        if let Some((t, x)) = maximize(&objective, &equalities, &inequalities) {
            if best.as_ref().is_none_or(|(bt, _)| t > *bt) {
                best = Some((t, x));
            }
        }
    }
    let (value, x) = best.ok_or_else(|| Error::InvalidArgument("θ program has no vertex".into()))?;
    let witness = WeightVector::new(x[..n].to_vec())?;
    Ok(ThetaVal { value, status: ThetaStatus::ExactMonomial, witness })
}

/// `min p/q` over `q <= qmax` with `m^p ⊆ closure(I^q)`, by enumerating the
/// degree-`p` monomials against `q·NP`.
pub fn theta_oracle(ideal: &Ideal, qmax: u32) -> Result<Rational> {
    if qmax == 0 {
        return Err(Error::InvalidArgument("qmax must be positive".into()));
    }
    if !ideal.is_monomial() {
        return Err(Error::NonMonomialGenerator);
    }
    let exps: Vec<Exponent> = ideal.generators().iter().filter_map(|g| g.leading_exponent()).collect();
    let np = NewtonPoly::from_exponents(&exps)?;
    if !np.meets_every_axis() {
        return Err(Error::NotMPrimary);
    }
    let n = np.dim();
    let facets: Vec<(Vec<i128>, i128)> = np
        .facets()
        .iter()
        .map(|f| {
            let w = f.normal.iter().map(|x| x.to_integer().to_i128().expect("small normal")).collect();
            // facets through integer points with primitive normals have integer rhs
            (w, f.rhs.to_integer().to_i128().expect("small rhs"))
        })
        .collect();
    let reach: u32 = (0..n).map(|i| np.axis_intercept(i).unwrap().to_integer().to_u32().unwrap()).max().unwrap();
    let all_inside = |p: u32, q: u32| {
        monomials_of_degree(n, p).iter().all(|a| {
            facets.iter().all(|(w, c)| {
                let s: i128 = w.iter().zip(a.as_slice()).map(|(x, &y)| x * y as i128).sum();
                s >= q as i128 * c
            })
        })
    };
    let mut best: Option<Rational> = None;
    for q in 1..=qmax {
        let (mut lo, mut hi) = (0u32, q * reach * n as u32);
        debug_assert!(all_inside(hi, q));
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if all_inside(mid, q) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let cand = Rational::new(BigInt::from(hi), BigInt::from(q));
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    Ok(best.unwrap())
}

/// The Newton (Howald) threshold `1/t₀`, `t₀·(1,…,1) ∈ ∂NP`. Equals the log
/// canonical threshold for monomial ideals and nondegenerate polynomials;
/// callers apply any `min(·, 1)` cap.
pub fn lct_monomial(np: &NewtonPoly) -> Result<Rational> {
    if !np.meets_every_axis() {
        return Err(Error::NotMPrimary);
    }
    Ok(diagonal_threshold(np))
}

/// `1/t₀` without the axis precondition; the diagonal always enters the
/// polyhedron since its recession cone is the orthant.
pub fn diagonal_threshold(np: &NewtonPoly) -> Rational {
    let t0 = np.diagonal_entry();
    if t0.is_zero() {
        // the origin itself is in the polyhedron
        return Rational::zero();
    }
    t0.recip()
}

/// Order of the multiplier ideal `J(z^β x^{mβ})` along `x`: `⌊mβ⌋`, or
/// `mβ − 1` when `mβ` is an integer.
pub fn multiplier_order(m: u64, beta: &Rational) -> Result<u64> {
    if m == 0 || !beta.is_positive() || *beta > Rational::one() {
        return Err(Error::InvalidArgument("need m >= 1 and 0 < beta <= 1".into()));
    }
    let mb = beta * Rational::from_integer(BigInt::from(m));
    let fl = mb.floor().to_integer().to_u64().expect("fits");
    Ok(if mb.is_integer() { fl - 1 } else { fl })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, VarSet};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn qi(n: i64) -> Rational {
        q(n, 1)
    }

    fn np(points: &[&[u32]]) -> NewtonPoly {
        let e: Vec<Exponent> = points.iter().map(|p| Exponent::new(p)).collect();
        newton_polyhedron(&e).unwrap()
    }

    fn facet(w: &[i64], c: i64) -> Facet {
        Facet { normal: w.iter().map(|&x| qi(x)).collect(), rhs: qi(c) }
    }

    #[test]
    fn two_point_hulls() {
        let p = np(&[&[1, 0], &[0, 2]]);
        let mut expect = [facet(&[1, 0], 0), facet(&[0, 1], 0), facet(&[2, 1], 2)];
        expect.sort();
        assert_eq!(p.facets(), &expect[..]);
        let p = np(&[&[2, 0], &[0, 3]]);
        assert!(p.facets().contains(&facet(&[3, 2], 6)));
        let p = np(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(p.facets().contains(&facet(&[1, 1, 1], 1)));
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn dominated_points_are_not_vertices() {
        let p = np(&[&[1, 0], &[0, 2], &[1, 1], &[4, 4]]);
        assert_eq!(p.vertices().len(), 2);
    }

    #[test]
    fn membership() {
        let p = np(&[&[1, 0], &[0, 2]]);
        assert!(closure_contains(&p, &[q(1, 2), qi(1)]));
        assert!(!closure_contains(&p, &[qi(0), qi(1)]));
        for v in p.vertices() {
            assert!(closure_contains(&p, v));
        }
    }

    #[test]
    fn theta_examples() {
        let t = theta_lp(&np(&[&[1, 0], &[0, 2]])).unwrap();
        assert_eq!(t.value, qi(2));
        assert_eq!(t.witness.as_slice(), &[qi(2), qi(1)]);
        let t = theta_lp(&np(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(t.value, qi(1));
        assert_eq!(theta_lp(&np(&[&[1, 1], &[0, 2]])).unwrap_err(), Error::NotMPrimary);
    }

    #[test]
    fn oracle_examples() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let ideal = |g: &[&str]| Ideal::new(&v, g.iter().map(|s| Poly::parse(s, &v).unwrap()).collect()).unwrap();
        assert_eq!(theta_oracle(&ideal(&["x", "y^2"]), 4).unwrap(), qi(2));
        assert_eq!(theta_oracle(&ideal(&["x", "y"]), 1).unwrap(), qi(1));
        assert_eq!(theta_oracle(&ideal(&["x^3", "y^3"]), 2).unwrap(), qi(3));
        assert_eq!(theta_oracle(&ideal(&["x+y"]), 2).unwrap_err(), Error::NonMonomialGenerator);
        assert!(theta_oracle(&ideal(&["x"]), 0).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(lct_monomial(&np(&[&[2, 0], &[0, 3]])).unwrap(), q(5, 6));
        assert_eq!(lct_monomial(&np(&[&[1, 0], &[0, 1]])).unwrap(), qi(2));
        assert_eq!(lct_monomial(&np(&[&[7]])).unwrap(), q(1, 7));
        assert_eq!(lct_monomial(&np(&[&[2, 1]])).unwrap_err(), Error::NotMPrimary);
        assert_eq!(diagonal_threshold(&np(&[&[2, 1]])), q(1, 2));
    }

    #[test]
    fn multiplier_orders() {
        assert_eq!(multiplier_order(5, &q(1, 2)).unwrap(), 2);
        assert_eq!(multiplier_order(6, &q(1, 3)).unwrap(), 1);
        assert!(multiplier_order(0, &q(1, 3)).is_err());
        assert!(multiplier_order(3, &q(4, 3)).is_err());
    }
}
