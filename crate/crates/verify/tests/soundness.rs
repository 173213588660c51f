//! A FAIL needs every quantity in the violated relation to be exact.

use arnold_core::invariants::{ExpMethod, MinExp};
use arnold_core::newton::ThetaStatus;
use arnold_core::{ExtRat, Rational};
use arnold_verify::checks::{chain_verdict, teissier_verdict};
use arnold_verify::{run_corpus, Corpus, RunOptions, Verdict};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn exp(v: Rational, exact: bool) -> MinExp {
    let method = if exact { ExpMethod::QuasiHomogeneous } else { ExpMethod::LctLowerBound };
    MinExp { value: ExtRat::Finite(v), method, exact }
}

fn frac() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..12).prop_map(|(n, d)| q(n, d))
}

const LOWER: ThetaStatus = ThetaStatus::NewtonLowerBound;

#[test]
fn injected_theta_bound_degrades() {
    // x^2+y^3: α̃ = 5/6, section 1/2, exact θ = 2 gives equality
    let (ef, eh) = (exp(q(5, 6), true), exp(q(1, 2), true));
    assert_eq!(teissier_verdict(&ef, &eh, &q(2, 1), ThetaStatus::ExactMonomial), Verdict::Pass);
    // an underestimated θ breaks the strengthened inequality: never FAIL
    assert_eq!(teissier_verdict(&ef, &eh, &q(1, 1), LOWER), Verdict::Inconclusive);
    // the same value claimed exact is a genuine violation
    assert_eq!(teissier_verdict(&ef, &eh, &q(1, 1), ThetaStatus::ExactMonomial), Verdict::Fail);
    // a θ lower bound that still satisfies it passes a fortiori
    assert_eq!(teissier_verdict(&ef, &eh, &q(3, 1), LOWER), Verdict::Pass);
    let chain = [(q(2, 1), LOWER), (q(1, 2), ThetaStatus::ExactMonomial)];
    assert_eq!(chain_verdict(&ef, &chain), Verdict::Inconclusive);
}

proptest! {
    #[test]
    fn inexact_inputs_never_fail(
        a in frac(), b in frac(), t in frac(),
        a_exact: bool, b_exact: bool, t_exact: bool,
        thetas in proptest::collection::vec((frac(), any::<bool>()), 1..4),
    ) {
        let status = |e: bool| if e { ThetaStatus::ExactMonomial } else { LOWER };
        let (ef, eh) = (exp(a.clone(), a_exact), exp(b.clone(), b_exact));
        let v = teissier_verdict(&ef, &eh, &t, status(t_exact));
        if v == Verdict::Fail {
            prop_assert!(a_exact && b_exact && t_exact);
        }
        let holds = a >= &b + (&t + Rational::from_integer(1.into())).recip();
        if a_exact && b_exact && t_exact {
            prop_assert_eq!(v, if holds { Verdict::Pass } else { Verdict::Fail });
        }
        let chain: Vec<(Rational, ThetaStatus)> = thetas.iter().map(|(t, e)| (t.clone(), status(*e))).collect();
        let v = chain_verdict(&ef, &chain);
        if v == Verdict::Fail {
            prop_assert!(a_exact && thetas.iter().all(|(_, e)| *e));
        }
    }
}

#[test]
fn degenerate_entries_do_not_fail() {
    // semi-quasi-homogeneous and degenerate inputs whose θ is only a bound
    let c = Corpus::parse(
        "[[entry]]\nname = \"a\"\npoly = \"x^3 + y^4 + x^2*y^2\"\nchecks = [\"teissier\", \"corollary_chain\", \"upper_bound\"]\n\n\
         [[entry]]\nname = \"b\"\npoly = \"x^5 + x^2*y^2 + y^5\"\nchecks = [\"teissier\", \"corollary_chain\", \"upper_bound\"]\n",
    )
    .unwrap();
    let r = run_corpus(&c, &RunOptions::default());
    for e in &r.entries {
        for c in &e.checks {
            assert_ne!(c.verdict, Verdict::Fail, "{}: {}", e.name, c.message);
        }
    }
    assert_eq!(r.entries[0].checks[0].witness["theta_status"], "newton_lower_bound");
}
