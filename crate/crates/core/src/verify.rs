//! End-to-end verification suites, one per `verify` subtarget.
//!
//! Every suite re-derives both sides of its identity from scratch —
//! enumeration against recurrence, bijection against itself, chain solve
//! against tableau formula — and returns a [`Report`] with exact-equality
//! failures only. The suite names (`thm6`, `prop7`, …) are the stable CLI
//! tokens.

use num::{BigRational, One};

use crate::ansatz::{self, insertion_multiplier, multiplier_b, LambdaIndexConvention};
use crate::markov;
use crate::poly::{parse_rational, Monomial, ParamPoint, Polynomial, Var};
use crate::report::{Failure, Report};
use crate::tableau_a::{enumerate, partition_fn, InsertionEvent, Label, LabelSet};
use crate::tableau_b::{enumerate_b, partition_fn_b};

/// The named parameter points used by the stationary suites: the TASEP
/// specialization plus three generic fully-asymmetric rational points.
pub fn default_points() -> Vec<(&'static str, ParamPoint)> {
    let rat = |s: &str| parse_rational(s).expect("literal rational");
    let point = |a, b, g, d, q, u: &str| {
        ParamPoint::six(rat(a), rat(b), rat(g), rat(d), rat(q), rat(u))
    };
    vec![
        ("tasep", ParamPoint::tasep()),
        ("g1", point("1/2", "1/3", "1/5", "1/7", "1/11", "1")),
        ("g2", point("2/3", "3/5", "1/7", "2/11", "3/13", "7/8")),
        ("g3", point("1/5", "2/7", "3/11", "4/13", "5/17", "9/10")),
    ]
}

/// `S_i(u, q) = Σ_{j=0}^{i−1} u^{i−1−j} q^j` (the i-term geometric bridge
/// between u- and q-powers); `S_0 = 0`.
pub fn geometric_sum(i: usize) -> Polynomial {
    let mut s = Polynomial::zero();
    for j in 0..i {
        s.add_term(
            Monomial::var(Var::U, (i - 1 - j) as u32).times(Var::Q, j as u32),
            &BigRational::one(),
        );
    }
    s
}

fn pvar(v: Var) -> Polynomial {
    Polynomial::var(v)
}

/// Closed form for the full-alphabet partition function at q = u = 1:
/// `∏_{i=0}^{n−1} (α + β + γ + δ + i(α+γ)(β+δ))`. The cross term pairs the
/// two column-constrained labels with the two row-constrained ones — the
/// same four products (αβ, αδ, γβ, γδ) that appear as split coefficients in
/// the one-step weight recurrence.
pub fn product_full_alphabet(n: usize) -> Polynomial {
    let base = &(&pvar(Var::Alpha) + &pvar(Var::Beta)) + &(&pvar(Var::Gamma) + &pvar(Var::Delta));
    let cross = &(&pvar(Var::Alpha) + &pvar(Var::Gamma)) * &(&pvar(Var::Beta) + &pvar(Var::Delta));
    let mut product = Polynomial::one();
    for i in 0..n {
        product = &product * &(&base + &cross.scale(&crate::poly::int(i as i64)));
    }
    product
}

/// Closed form for the `{α, δ}`-restricted partition function:
/// `∏_{i=0}^{n−1} (u^i α + αδ·S_i + q^i δ)`.
pub fn product_alpha_delta(n: usize) -> Polynomial {
    let mut product = Polynomial::one();
    for i in 0..n {
        let mut f = Polynomial::monomial(
            Monomial::var(Var::U, i as u32).times(Var::Alpha, 1),
            BigRational::one(),
        );
        f.add_term(
            Monomial::var(Var::Q, i as u32).times(Var::Delta, 1),
            &BigRational::one(),
        );
        f += &geometric_sum(i)
            .mul_monomial(&Monomial::var(Var::Alpha, 1).times(Var::Delta, 1));
        product = &product * &f;
    }
    product
}

/// Closed form for the `{β, γ}`-restricted partition function:
/// `∏_{i=0}^{n−1} (u^i β + βγ·S_i + q^i γ)`.
pub fn product_beta_gamma(n: usize) -> Polynomial {
    let mut product = Polynomial::one();
    for i in 0..n {
        let mut f = Polynomial::monomial(
            Monomial::var(Var::U, i as u32).times(Var::Beta, 1),
            BigRational::one(),
        );
        f.add_term(
            Monomial::var(Var::Q, i as u32).times(Var::Gamma, 1),
            &BigRational::one(),
        );
        f += &geometric_sum(i).mul_monomial(&Monomial::var(Var::Beta, 1).times(Var::Gamma, 1));
        product = &product * &f;
    }
    product
}

/// Closed form for the type B partition function at q = u = 1:
/// `(z(α+β) + γ + δ)^n · ∏_{i=1}^{n−1} (1 + i(β+δ))`.
pub fn product_b_full_alphabet(n: usize) -> Polynomial {
    let base = &(&pvar(Var::Z) * &(&pvar(Var::Alpha) + &pvar(Var::Beta)))
        + &(&pvar(Var::Gamma) + &pvar(Var::Delta));
    let mut product = base.pow(n as u32);
    let bd = &pvar(Var::Beta) + &pvar(Var::Delta);
    for i in 1..n {
        product = &product * &(&Polynomial::one() + &bd.scale(&crate::poly::int(i as i64)));
    }
    product
}

/// Closed form for the `{β, γ}`-restricted type B partition function:
/// `(zqβ + uγ)^n · ∏_{k=0}^{n−1} (q^k u^k + u^k S_k β)`. The factor drops
/// out of the insertion multipliers on all-white states: the letter rows
/// give `(zqβ + uγ)q^k u^k` and the k triple rows sum to
/// `(zqβ + uγ)u^k S_k β`.
pub fn product_b_beta_gamma(n: usize) -> Polynomial {
    let mut head = Polynomial::monomial(
        Monomial::var(Var::Z, 1).times(Var::Q, 1).times(Var::Beta, 1),
        BigRational::one(),
    );
    head.add_term(
        Monomial::var(Var::U, 1).times(Var::Gamma, 1),
        &BigRational::one(),
    );
    let mut product = head.pow(n as u32);
    for k in 0..n {
        let mut f = Polynomial::monomial(
            Monomial::var(Var::Q, k as u32).times(Var::U, k as u32),
            BigRational::one(),
        );
        f += &geometric_sum(k)
            .mul_monomial(&Monomial::var(Var::U, k as u32).times(Var::Beta, 1));
        product = &product * &f;
    }
    product
}

/// Closed form for the `{α, δ}`-restricted type B partition function:
/// `(zqα + uδ)^n · ∏_{k=0}^{n−1} (q^k u^k + q^k S_k δ)` — the all-black
/// mirror of [`product_b_beta_gamma`], with the q-side prefactor on the
/// triple sum.
pub fn product_b_alpha_delta(n: usize) -> Polynomial {
    let mut head = Polynomial::monomial(
        Monomial::var(Var::Z, 1).times(Var::Q, 1).times(Var::Alpha, 1),
        BigRational::one(),
    );
    head.add_term(
        Monomial::var(Var::U, 1).times(Var::Delta, 1),
        &BigRational::one(),
    );
    let mut product = head.pow(n as u32);
    for k in 0..n {
        let mut f = Polynomial::monomial(
            Monomial::var(Var::Q, k as u32).times(Var::U, k as u32),
            BigRational::one(),
        );
        f += &geometric_sum(k)
            .mul_monomial(&Monomial::var(Var::Q, k as u32).times(Var::Delta, 1));
        product = &product * &f;
    }
    product
}

fn poly_failure(inputs: String, lhs: &Polynomial, rhs: &Polynomial) -> Option<Failure> {
    if lhs == rhs {
        None
    } else {
        Some(Failure {
            inputs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}

fn flat(text: &str) -> String {
    text.replace('\n', "/")
}

fn merge(total: &mut Report, sub: Report, prefix: &str) {
    total.instances += sub.instances;
    for mut f in sub.failures {
        f.inputs = format!("{prefix}{}", f.inputs);
        total.failures.push(f);
    }
}

/// Round trips of the type A insertion bijection: `uninsert ∘ insert = id`
/// on every (tableau, event) pair with tableau size ≤ max_size, and
/// `insert ∘ uninsert = id` on every tableau of size ≤ max_size + 1.
pub fn verify_thm6(max_size: usize) -> Report {
    let mut report = Report::new("thm6");
    for n in 0..=max_size {
        let events = InsertionEvent::events_a(n, None);
        for t in enumerate(n, None) {
            for e in &events {
                let inputs = || format!("dir=1 n={n} T=\"{}\" e={e}", flat(&t.render()));
                match t.insert(e).and_then(|big| big.uninsert()) {
                    Err(err) => report.record(Some(Failure {
                        inputs: inputs(),
                        lhs: format!("error: {err}"),
                        rhs: "round trip".into(),
                    })),
                    Ok((back, be)) => report.record(if back == t && be == *e {
                        None
                    } else {
                        Some(Failure {
                            inputs: inputs(),
                            lhs: format!("(\"{}\", {be})", flat(&back.render())),
                            rhs: format!("(\"{}\", {e})", flat(&t.render())),
                        })
                    }),
                }
            }
        }
    }
    for n in 0..=max_size {
        for big in enumerate(n + 1, None) {
            let inputs = || format!("dir=2 n={} T=\"{}\"", n + 1, flat(&big.render()));
            match big.uninsert() {
                Err(err) => report.record(Some(Failure {
                    inputs: inputs(),
                    lhs: format!("error: {err}"),
                    rhs: "uninsert to succeed".into(),
                })),
                Ok((small, e)) => match small.insert(&e) {
                    Err(err) => report.record(Some(Failure {
                        inputs: inputs(),
                        lhs: format!("error: {err}"),
                        rhs: "insert to succeed".into(),
                    })),
                    Ok(again) => report.record(if again == big {
                        None
                    } else {
                        Some(Failure {
                            inputs: inputs(),
                            lhs: format!("\"{}\"", flat(&again.render())),
                            rhs: format!("\"{}\"", flat(&big.render())),
                        })
                    }),
                },
            }
        }
    }
    report
}

/// The type A insertion multiplier: for every (tableau, event) pair with
/// tableau size ≤ max_size, `weight(insert(T, e)) = M(e, type(T))·weight(T)`
/// and the new type is the multiplier's target.
pub fn verify_prop7(max_size: usize) -> Report {
    let mut report = Report::new("prop7");
    for n in 0..=max_size {
        let events = InsertionEvent::events_a(n, None);
        for t in enumerate(n, None) {
            let wt = t.weight().expect("enumerated tableaux are valid");
            let ty = t.type_of().expect("enumerated tableaux are valid");
            for e in &events {
                let (mult, target) = insertion_multiplier(e, &ty);
                let big = t.insert(e).expect("valid event");
                let got_w = big.weight().expect("insertion preserves validity");
                let got_ty = big.type_of().expect("insertion preserves validity");
                let want_w = wt.mul_monomial(&mult);
                report.record(if got_w == want_w && got_ty == target {
                    None
                } else {
                    Some(Failure {
                        inputs: format!("n={n} T=\"{}\" e={e}", flat(&t.render())),
                        lhs: format!("weight {got_w}, type {got_ty}"),
                        rhs: format!("weight {want_w}, type {target}"),
                    })
                });
            }
        }
    }
    report
}

/// Round trips of the type B insertion bijection (both directions, as in
/// [`verify_thm6`]) plus the 4^n·(2n−1)!! counts for 1 ≤ n ≤ max_size.
pub fn verify_thm12(max_size: usize) -> Report {
    let mut report = Report::new("thm12");
    for n in 0..=max_size {
        let events = InsertionEvent::events_b(n, None);
        let mut count: u64 = 0;
        for h in enumerate_b(n, None) {
            count += 1;
            for e in &events {
                let inputs = || format!("dir=1 n={n} H=\"{}\" e={e}", flat(&h.render()));
                match h.insert(e).and_then(|big| big.uninsert()) {
                    Err(err) => report.record(Some(Failure {
                        inputs: inputs(),
                        lhs: format!("error: {err}"),
                        rhs: "round trip".into(),
                    })),
                    Ok((back, be)) => report.record(if back == h && be == *e {
                        None
                    } else {
                        Some(Failure {
                            inputs: inputs(),
                            lhs: format!("(\"{}\", {be})", flat(&back.render())),
                            rhs: format!("(\"{}\", {e})", flat(&h.render())),
                        })
                    }),
                }
            }
        }
        if n >= 1 {
            // 4^n (2n−1)!!
            let want = (1..=n as u64).map(|k| 4 * (2 * k - 1)).product::<u64>();
            report.record(if count == want {
                None
            } else {
                Some(Failure {
                    inputs: format!("count n={n}"),
                    lhs: count.to_string(),
                    rhs: want.to_string(),
                })
            });
        }
    }
    for n in 0..=max_size {
        for big in enumerate_b(n + 1, None) {
            let inputs = || format!("dir=2 n={} H=\"{}\"", n + 1, flat(&big.render()));
            match big.uninsert() {
                Err(err) => report.record(Some(Failure {
                    inputs: inputs(),
                    lhs: format!("error: {err}"),
                    rhs: "uninsert to succeed".into(),
                })),
                Ok((small, e)) => match small.insert(&e) {
                    Err(err) => report.record(Some(Failure {
                        inputs: inputs(),
                        lhs: format!("error: {err}"),
                        rhs: "insert to succeed".into(),
                    })),
                    Ok(again) => report.record(if again == big {
                        None
                    } else {
                        Some(Failure {
                            inputs: inputs(),
                            lhs: format!("\"{}\"", flat(&again.render())),
                            rhs: format!("\"{}\"", flat(&big.render())),
                        })
                    }),
                },
            }
        }
    }
    report
}

/// The type B insertion multiplier, as [`verify_prop7`] but over half
/// tableaux with the twelve-row multiplier table.
pub fn verify_prop13(max_size: usize) -> Report {
    let mut report = Report::new("prop13");
    for n in 0..=max_size {
        let events = InsertionEvent::events_b(n, None);
        for h in enumerate_b(n, None) {
            let wt = h.weight().expect("enumerated half tableaux are valid");
            let ty = h.type_of().expect("enumerated half tableaux are valid");
            for e in &events {
                let (mult, target) = multiplier_b(e, &ty);
                let big = h.insert(e).expect("valid event");
                let got_w = big.weight().expect("insertion preserves validity");
                let got_ty = big.type_of().expect("insertion preserves validity");
                let want_w = wt.mul_monomial(&mult);
                report.record(if got_w == want_w && got_ty == target {
                    None
                } else {
                    Some(Failure {
                        inputs: format!("n={n} H=\"{}\" e={e}", flat(&h.render())),
                        lhs: format!("weight {got_w}, type {got_ty}"),
                        rhs: format!("weight {want_w}, type {target}"),
                    })
                });
            }
        }
    }
    report
}

/// The three closed partition-function products for type A tableaux:
/// full alphabet at q = u = 1, and the `{α,δ}` and `{β,γ}` restrictions
/// fully symbolically, each against the enumerated sum.
pub fn verify_cor8(max_size: usize) -> Report {
    let mut report = Report::new("cor8");
    let one = BigRational::one();
    let subst = vec![(Var::Q, one.clone()), (Var::U, one)];
    for n in 1..=max_size {
        let mut z1 = Polynomial::zero();
        for t in enumerate(n, None) {
            z1 += &t
                .weight()
                .expect("enumerated tableaux are valid")
                .substitute(&subst);
        }
        report.record(poly_failure(
            format!("identity=full-alphabet-at-q-u-1 n={n}"),
            &z1,
            &product_full_alphabet(n),
        ));
        let z2 = partition_fn(n, Some(LabelSet::from_labels(&[Label::Alpha, Label::Delta])));
        report.record(poly_failure(
            format!("identity=alpha-delta n={n}"),
            &z2,
            &product_alpha_delta(n),
        ));
        let z3 = partition_fn(n, Some(LabelSet::from_labels(&[Label::Beta, Label::Gamma])));
        report.record(poly_failure(
            format!("identity=beta-gamma n={n}"),
            &z3,
            &product_beta_gamma(n),
        ));
    }
    report
}

/// The three closed partition-function products for type B half tableaux,
/// mirroring [`verify_cor8`].
pub fn verify_cor14(max_size: usize) -> Report {
    let mut report = Report::new("cor14");
    let one = BigRational::one();
    let subst = vec![(Var::Q, one.clone()), (Var::U, one)];
    for n in 1..=max_size {
        let mut z1 = Polynomial::zero();
        for h in enumerate_b(n, None) {
            z1 += &h
                .weight()
                .expect("enumerated half tableaux are valid")
                .substitute(&subst);
        }
        report.record(poly_failure(
            format!("identity=full-alphabet-at-q-u-1 n={n}"),
            &z1,
            &product_b_full_alphabet(n),
        ));
        let z2 = partition_fn_b(n, Some(LabelSet::from_labels(&[Label::Beta, Label::Gamma])));
        report.record(poly_failure(
            format!("identity=beta-gamma n={n}"),
            &z2,
            &product_b_beta_gamma(n),
        ));
        let z3 = partition_fn_b(n, Some(LabelSet::from_labels(&[Label::Alpha, Label::Delta])));
        report.record(poly_failure(
            format!("identity=alpha-delta n={n}"),
            &z3,
            &product_b_alpha_delta(n),
        ));
    }
    report
}

/// Chain solve versus tableau formula at every default point, 1 ≤ n ≤
/// max_size.
pub fn verify_oracle(max_size: usize) -> Report {
    let mut report = Report::new("oracle");
    for n in 1..=max_size {
        for (name, pt) in default_points() {
            match markov::oracle_compare(n, &pt) {
                Ok(sub) => merge(&mut report, sub, &format!("pt={name} ")),
                Err(err) => report.record(Some(Failure {
                    inputs: format!("pt={name} n={n}"),
                    lhs: format!("error: {err}"),
                    rhs: "oracle comparison to run".into(),
                })),
            }
        }
    }
    report
}

/// The C/P/CP symmetry identities on the stationary distribution at the
/// TASEP point and the two generic points g1, g2, for 1 ≤ n ≤ max_size.
pub fn verify_symmetry(max_size: usize) -> Report {
    let mut report = Report::new("symmetry");
    let points: Vec<(&'static str, ParamPoint)> = default_points()
        .into_iter()
        .filter(|(name, _)| matches!(*name, "tasep" | "g1" | "g2"))
        .collect();
    for n in 1..=max_size {
        for (name, pt) in &points {
            match markov::symmetry_check(n, pt) {
                Ok(sub) => merge(&mut report, sub, &format!("pt={name} ")),
                Err(err) => report.record(Some(Failure {
                    inputs: format!("pt={name} n={n}"),
                    lhs: format!("error: {err}"),
                    rhs: "symmetry check to run".into(),
                })),
            }
        }
    }
    report
}

/// The verify subtargets in the order `all` runs them.
pub const ALL_TARGETS: [&str; 12] = [
    "prop7", "thm6", "thm9", "thm12", "prop13", "cor8", "cor14", "sys21", "sys41", "oracle",
    "symmetry", "product",
];

/// Dispatches one verify subtarget (or `all`); `None` for unknown names.
pub fn run_target(
    target: &str,
    max_size: usize,
    convention: LambdaIndexConvention,
) -> Option<Vec<Report>> {
    let one = |r: Report| Some(vec![r]);
    match target {
        "prop7" => one(verify_prop7(max_size)),
        "thm6" => one(verify_thm6(max_size)),
        "thm9" => one(ansatz::thm9_check(max_size)),
        "thm12" => one(verify_thm12(max_size)),
        "prop13" => one(verify_prop13(max_size)),
        "cor8" => one(verify_cor8(max_size)),
        "cor14" => one(verify_cor14(max_size)),
        "sys21" => one(ansatz::check_system_21(max_size)),
        "sys41" => one(ansatz::check_system_41(max_size, convention)),
        "oracle" => one(verify_oracle(max_size)),
        "symmetry" => one(verify_symmetry(max_size)),
        "product" => one(ansatz::product_formula_check(max_size)),
        "all" => Some(
            ALL_TARGETS
                .iter()
                .flat_map(|t| run_target(t, max_size, convention).expect("known target"))
                .collect(),
        ),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_points_are_valid_rates() {
        let points = default_points();
        assert_eq!(points.len(), 4);
        for (name, pt) in points {
            assert!(pt.rates_in_unit_interval(), "{name}");
        }
    }

    #[test]
    fn geometric_sum_bridges_powers() {
        assert!(geometric_sum(0).is_zero());
        assert_eq!(geometric_sum(1), Polynomial::one());
        let want = &(&Polynomial::monomial(Monomial::var(Var::U, 2), BigRational::one())
            + &Polynomial::monomial(
                Monomial::var(Var::U, 1).times(Var::Q, 1),
                BigRational::one(),
            ))
            + &Polynomial::monomial(Monomial::var(Var::Q, 2), BigRational::one());
        assert_eq!(geometric_sum(3), want);
    }

    #[test]
    fn round_trip_suites_small() {
        let thm6 = verify_thm6(2);
        assert!(thm6.passed(), "failures: {:?}", thm6.failures);
        // Direction 1: Σ 4(n+1)·|TE_n| for n ≤ 2; direction 2: Σ |TE_{n+1}|.
        assert_eq!(thm6.instances, (4 + 32 + 384) + (4 + 32 + 384));

        let thm12 = verify_thm12(2);
        assert!(thm12.passed(), "failures: {:?}", thm12.failures);
        // Both directions plus the two count checks.
        assert_eq!(thm12.instances, (4 + 48 + 960) + 2 + (4 + 48 + 960));
    }

    #[test]
    fn multiplier_suites_small() {
        let prop7 = verify_prop7(2);
        assert!(prop7.passed(), "failures: {:?}", prop7.failures);
        assert_eq!(prop7.instances, 4 + 32 + 384);

        let prop13 = verify_prop13(2);
        assert!(prop13.passed(), "failures: {:?}", prop13.failures);
        assert_eq!(prop13.instances, 4 + 48 + 960);
    }

    #[test]
    fn product_suites_small() {
        let cor8 = verify_cor8(3);
        assert!(cor8.passed(), "failures: {:?}", cor8.failures);
        assert_eq!(cor8.instances, 9);

        let cor14 = verify_cor14(3);
        assert!(cor14.passed(), "failures: {:?}", cor14.failures);
        assert_eq!(cor14.instances, 9);
    }

    #[test]
    fn stationary_suites_small() {
        let oracle = verify_oracle(2);
        assert!(oracle.passed(), "failures: {:?}", oracle.failures);
        assert_eq!(oracle.instances, 4 * (2 + 4));

        let symmetry = verify_symmetry(2);
        assert!(symmetry.passed(), "failures: {:?}", symmetry.failures);
        assert_eq!(symmetry.instances, 3 * 3 * (2 + 4));
    }

    #[test]
    fn dispatcher_covers_all_targets() {
        for t in ALL_TARGETS {
            let reports = run_target(t, 1, LambdaIndexConvention::LhsWordSize).unwrap();
            assert_eq!(reports.len(), 1);
            assert_eq!(reports[0].identity, t);
            assert!(reports[0].passed(), "{t}: {:?}", reports[0].failures);
        }
        let all = run_target("all", 1, LambdaIndexConvention::LhsWordSize).unwrap();
        assert_eq!(all.len(), 12);
        assert!(run_target("bogus", 1, LambdaIndexConvention::LhsWordSize).is_none());
    }
}
