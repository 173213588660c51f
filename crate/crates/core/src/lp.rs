//! Exact linear programs by vertex enumeration.
//!
//! Only suitable for a handful of variables and constraints: every choice
//! of tight constraints is solved and checked for feasibility.

use std::cmp::Ordering;

use itertools::Itertools;
use num_traits::Zero;

use crate::linalg::{solve, Solution};
use crate::Rational;

/// `⟨coeffs, x⟩ (=|>=) rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Constraint {
        Constraint { coeffs, rhs }
    }

    fn value(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Maximizes `⟨objective, x⟩` subject to `equalities` and `inequalities`
/// (all `>=`). The feasible region must be pointed and the objective
/// bounded above on it; then the optimum sits at a vertex. Among optimal
/// vertices the lexicographically smallest is returned.
pub fn maximize(
    objective: &[Rational],
    equalities: &[Constraint],
    inequalities: &[Constraint],
) -> Option<(Rational, Vec<Rational>)> {
    let dim = objective.len();
    let need = dim.checked_sub(equalities.len())?;
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for tight in (0..inequalities.len()).combinations(need) {
        let rows: Vec<&Constraint> =
            equalities.iter().chain(tight.iter().map(|&k| &inequalities[k])).collect();
        let a: Vec<Vec<Rational>> = rows.iter().map(|c| c.coeffs.clone()).collect();
        let b: Vec<Rational> = rows.iter().map(|c| c.rhs.clone()).collect();
        let Solution::Unique(x) = solve(&a, &b) else {
            continue;
        };
        if inequalities.iter().any(|c| c.value(&x) < c.rhs) {
            continue;
        }
        let v: Rational = objective.iter().zip(&x).map(|(a, b)| a * b).sum();
        let better = match &best {
            None => true,
            Some((bv, bx)) => match v.cmp(bv) {
                Ordering::Greater => true,
                Ordering::Equal => x < *bx,
                Ordering::Less => false,
            },
        };
        if better {
            best = Some((v, x));
        }
    }
    best
}

/// True iff `x` satisfies every constraint.
pub fn feasible(x: &[Rational], equalities: &[Constraint], inequalities: &[Constraint]) -> bool {
    equalities.iter().all(|c| (c.value(x) - &c.rhs).is_zero())
        && inequalities.iter().all(|c| c.value(x) >= c.rhs)
}
