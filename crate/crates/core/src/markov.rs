//! Brute-force stationary oracle.
//!
//! Builds the finite exclusion-process Markov chain on `{∘,•}^n` with exact
//! rational transition probabilities, solves for the stationary
//! distribution by exact Gaussian elimination, and compares against the
//! tableau-side formula. No floating point anywhere.

use num::{BigRational, One, Zero};
use serde_json::{json, Value};

use crate::poly::{rational_str, ParamPoint, Var};
use crate::report::{Failure, Report};
use crate::state::{State, SymmetryKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MarkovError {
    #[error("rate {var} = {value} is outside [0, 1]")]
    RateOutOfRange { var: &'static str, value: String },
    #[error("no unique stationary distribution: rank {rank} on {size} states")]
    NonUniqueStationary { rank: usize, size: usize },
    #[error(transparent)]
    Weight(#[from] crate::ansatz::AnsatzError),
}

/// Row-stochastic transition matrix on the 2^n states in canonical
/// (binary, • = 1, leftmost letter most significant) order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionMatrix {
    n: usize,
    p: Vec<Vec<BigRational>>,
}

impl TransitionMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_states(&self) -> usize {
        1 << self.n
    }

    pub fn prob(&self, from: &State, to: &State) -> &BigRational {
        assert!(from.size() == self.n && to.size() == self.n);
        &self.p[from.index()][to.index()]
    }
}

/// The chain of the exclusion process with n sites: with divisor n+1,
/// internal hops `X•∘Y → X∘•Y` at u and back at q, right boundary
/// `X• → X∘` at β and back at δ, left boundary `∘X → •X` at α and
/// `•X → ∘X` at γ. Rates into the same target accumulate (for n = 1 both
/// boundaries act on the single site). Diagonal entries make rows sum to 1.
pub fn transition_matrix(n: usize, pt: &ParamPoint) -> Result<TransitionMatrix, MarkovError> {
    assert!(n >= 1);
    for v in [Var::Alpha, Var::Beta, Var::Gamma, Var::Delta, Var::Q, Var::U] {
        let val = pt.get(v);
        if val < &BigRational::zero() || val > &BigRational::one() {
            return Err(MarkovError::RateOutOfRange {
                var: v.name(),
                value: rational_str(val),
            });
        }
    }
    let states = State::all(n);
    let nn = 1 << n;
    let divisor = crate::poly::int((n + 1) as i64);
    let mut p = vec![vec![BigRational::zero(); nn]; nn];
    for (idx, m) in states.iter().enumerate() {
        let mut hop = |target: State, rate: &BigRational| {
            p[idx][target.index()] += rate / &divisor;
        };
        match m.letter_at(1) {
            crate::state::Letter::Black => hop(m.with_letter_at(1, crate::state::Letter::White), pt.get(Var::Beta)),
            crate::state::Letter::White => hop(m.with_letter_at(1, crate::state::Letter::Black), pt.get(Var::Delta)),
        }
        match m.letter_at(n) {
            crate::state::Letter::White => hop(m.with_letter_at(n, crate::state::Letter::Black), pt.get(Var::Alpha)),
            crate::state::Letter::Black => hop(m.with_letter_at(n, crate::state::Letter::White), pt.get(Var::Gamma)),
        }
        for pos in 1..n {
            use crate::state::Letter::{Black, White};
            let (hi, lo) = (m.letter_at(pos + 1), m.letter_at(pos));
            let rate = match (hi, lo) {
                (Black, White) => pt.get(Var::U),
                (White, Black) => pt.get(Var::Q),
                _ => continue,
            };
            hop(m.with_letter_at(pos + 1, lo).with_letter_at(pos, hi), rate);
        }
        let off: BigRational = p[idx]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, v)| v.clone())
            .sum();
        p[idx][idx] = BigRational::one() - off;
    }
    Ok(TransitionMatrix { n, p })
}

/// Exact stationary probabilities in canonical state order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalDistribution {
    n: usize,
    probs: Vec<BigRational>,
}

impl RationalDistribution {
    pub fn new(n: usize, probs: Vec<BigRational>) -> RationalDistribution {
        assert_eq!(probs.len(), 1 << n);
        debug_assert_eq!(probs.iter().cloned().sum::<BigRational>(), BigRational::one());
        RationalDistribution { n, probs }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn prob(&self, m: &State) -> &BigRational {
        assert_eq!(m.size(), self.n);
        &self.probs[m.index()]
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    /// JSON array of `{"state": …, "p": "num/den"}` in canonical order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            State::all(self.n)
                .iter()
                .map(|m| json!({ "state": m.to_string(), "p": rational_str(self.prob(m)) }))
                .collect(),
        )
    }
}

/// Left-fixed probability vector of M by exact Gaussian elimination.
/// Requires rank(Mᵀ − I) = 2^n − 1, i.e. a one-dimensional fixed space.
pub fn stationary_exact(matrix: &TransitionMatrix) -> Result<RationalDistribution, MarkovError> {
    let nn = matrix.num_states();
    // A = Mᵀ − I, so the stationary row vector π (πM = π) solves Ax = 0.
    let mut a: Vec<Vec<BigRational>> = (0..nn)
        .map(|i| {
            (0..nn)
                .map(|j| {
                    let mut v = matrix.p[j][i].clone();
                    if i == j {
                        v -= BigRational::one();
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..nn {
        if row == nn {
            break;
        }
        let Some(pivot_row) = (row..nn).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pivot_row);
        for r in row + 1..nn {
            if !a[r][col].is_zero() {
                let factor = &a[r][col] / &a[row][col];
                for j in col..nn {
                    let sub = &a[row][j] * &factor;
                    a[r][j] -= sub;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let rank = pivots.len();
    if rank != nn - 1 {
        return Err(MarkovError::NonUniqueStationary { rank, size: nn });
    }
    let free_col = (0..nn)
        .find(|c| !pivots.iter().any(|&(_, pc)| pc == *c))
        .expect("one free column at rank 2^n − 1");
    let mut x = vec![BigRational::zero(); nn];
    x[free_col] = BigRational::one();
    for &(r, c) in pivots.iter().rev() {
        let mut s = BigRational::zero();
        for (j, xj) in x.iter().enumerate().skip(c + 1) {
            if !a[r][j].is_zero() && !xj.is_zero() {
                s += &a[r][j] * xj;
            }
        }
        x[c] = -s / &a[r][c];
    }
    let total: BigRational = x.iter().cloned().sum();
    if total.is_zero() {
        return Err(MarkovError::NonUniqueStationary { rank, size: nn });
    }
    let probs: Vec<BigRational> = x.into_iter().map(|v| v / total.clone()).collect();
    debug_assert!(probs.iter().all(|v| v >= &BigRational::zero()));
    Ok(RationalDistribution::new(matrix.n, probs))
}

/// Compares the chain-side stationary distribution with the tableau-side
/// formula, entrywise as exact rationals.
pub fn oracle_compare(n: usize, pt: &ParamPoint) -> Result<Report, MarkovError> {
    let chain = stationary_exact(&transition_matrix(n, pt)?)?;
    let tableaux = crate::ansatz::stationary_tableaux(n, pt)?;
    let mut report = Report::new("oracle");
    for m in State::all(n) {
        let lhs = chain.prob(&m);
        let rhs = tableaux.prob(&m);
        report.record(if lhs == rhs {
            None
        } else {
            Some(Failure {
                inputs: format!("n={n} m=\"{m}\""),
                lhs: rational_str(lhs),
                rhs: rational_str(rhs),
            })
        });
    }
    Ok(report)
}

fn swap_pairs(kind: SymmetryKind) -> &'static [(Var, Var)] {
    match kind {
        SymmetryKind::C => &[(Var::Alpha, Var::Gamma), (Var::Beta, Var::Delta), (Var::Q, Var::U)],
        SymmetryKind::P => &[(Var::Alpha, Var::Delta), (Var::Beta, Var::Gamma), (Var::Q, Var::U)],
        SymmetryKind::CP => &[(Var::Alpha, Var::Beta), (Var::Gamma, Var::Delta)],
    }
}

/// Checks the three exact symmetry identities on the stationary
/// distribution: `μ_pt(m) = μ_{σ(pt)}(σ(m))` for σ the letter flip C
/// (swap α↔γ, β↔δ, q↔u), the reversal P (swap α↔δ, β↔γ, q↔u), and their
/// composition CP (swap α↔β, γ↔δ).
pub fn symmetry_check(n: usize, pt: &ParamPoint) -> Result<Report, MarkovError> {
    let base = stationary_exact(&transition_matrix(n, pt)?)?;
    let mut report = Report::new("symmetry");
    for kind in SymmetryKind::ALL {
        let swapped = pt.swapped(swap_pairs(kind));
        let other = stationary_exact(&transition_matrix(n, &swapped)?)?;
        for m in State::all(n) {
            let lhs = base.prob(&m);
            let rhs = other.prob(&m.apply_symmetry(kind));
            report.record(if lhs == rhs {
                None
            } else {
                Some(Failure {
                    inputs: format!("sym={} n={n} m=\"{m}\"", kind.name()),
                    lhs: rational_str(lhs),
                    rhs: rational_str(rhs),
                })
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_rational};

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn st(s: &str) -> State {
        State::parse(s).unwrap()
    }

    fn point(a: &str, b: &str, g: &str, d: &str, q: &str, u: &str) -> ParamPoint {
        ParamPoint::six(rat(a), rat(b), rat(g), rat(d), rat(q), rat(u))
    }

    #[test]
    fn two_state_chain() {
        let pt = point("1", "1", "0", "0", "0", "0");
        let m = transition_matrix(1, &pt).unwrap();
        assert_eq!(m.prob(&st("w"), &st("b")), &rat("1/2"));
        assert_eq!(m.prob(&st("b"), &st("w")), &rat("1/2"));
        assert_eq!(m.prob(&st("w"), &st("w")), &rat("1/2"));
        assert_eq!(m.prob(&st("b"), &st("b")), &rat("1/2"));
        let dist = stationary_exact(&m).unwrap();
        assert_eq!(dist.prob(&st("w")), &rat("1/2"));
        assert_eq!(dist.prob(&st("b")), &rat("1/2"));
    }

    #[test]
    fn single_site_accumulates_both_boundaries() {
        // With one site the left and right boundary moves flip the same
        // letter, so their rates add.
        let pt = point("1/3", "1/5", "1/7", "1/11", "0", "0");
        let m = transition_matrix(1, &pt).unwrap();
        // • → ∘ at (β + γ)/2.
        assert_eq!(
            m.prob(&st("b"), &st("w")),
            &((rat("1/5") + rat("1/7")) / int(2))
        );
        // ∘ → • at (α + δ)/2.
        assert_eq!(
            m.prob(&st("w"), &st("b")),
            &((rat("1/3") + rat("1/11")) / int(2))
        );
    }

    #[test]
    fn internal_hop_divisor() {
        let pt = point("1", "1", "0", "0", "0", "1");
        let m = transition_matrix(2, &pt).unwrap();
        assert_eq!(m.prob(&st("bw"), &st("wb")), &rat("1/3"));
        assert_eq!(m.prob(&st("wb"), &st("bw")), &rat("0"));
    }

    #[test]
    fn rows_sum_to_one_and_moves_are_local() {
        let pt = point("1/2", "1/3", "1/5", "1/7", "1/11", "1");
        for n in 1..=3 {
            let m = transition_matrix(n, &pt).unwrap();
            for s1 in State::all(n) {
                let sum: BigRational = State::all(n)
                    .iter()
                    .map(|s2| m.prob(&s1, s2).clone())
                    .sum();
                assert_eq!(sum, BigRational::one());
                for s2 in State::all(n) {
                    if s1 == s2 || m.prob(&s1, &s2).is_zero() {
                        continue;
                    }
                    let diff: Vec<usize> = (1..=n)
                        .filter(|&i| s1.letter_at(i) != s2.letter_at(i))
                        .collect();
                    let boundary_flip = diff.len() == 1 && (diff[0] == 1 || diff[0] == n);
                    let adjacent_swap = diff.len() == 2 && diff[1] == diff[0] + 1;
                    assert!(boundary_flip || adjacent_swap, "{s1} -> {s2}");
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_rates() {
        let pt = point("2", "1", "0", "0", "0", "1");
        assert!(matches!(
            transition_matrix(1, &pt),
            Err(MarkovError::RateOutOfRange { var: "alpha", .. })
        ));
    }

    #[test]
    fn tasep_two_sites() {
        let dist = stationary_exact(&transition_matrix(2, &ParamPoint::tasep()).unwrap()).unwrap();
        assert_eq!(dist.prob(&st("bb")), &rat("1/5"));
        assert_eq!(dist.prob(&st("bw")), &rat("2/5"));
        assert_eq!(dist.prob(&st("wb")), &rat("1/5"));
        assert_eq!(dist.prob(&st("ww")), &rat("1/5"));
    }

    #[test]
    fn oracle_matches_closed_form_single_site() {
        let pt = point("1/2", "1/3", "1/5", "1/7", "1/11", "1");
        let report = oracle_compare(1, &pt).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        // Closed form: (α+δ, β+γ) normalized.
        let dist = stationary_exact(&transition_matrix(1, &pt).unwrap()).unwrap();
        let a_d = rat("1/2") + rat("1/7");
        let b_g = rat("1/3") + rat("1/5");
        let z = a_d.clone() + b_g.clone();
        assert_eq!(dist.prob(&st("b")), &(a_d / z.clone()));
        assert_eq!(dist.prob(&st("w")), &(b_g / z));
    }

    #[test]
    fn symmetries_hold_at_an_asymmetric_point() {
        let pt = point("1/2", "1/3", "1/5", "1/7", "1/11", "1");
        for n in 1..=3 {
            let report = symmetry_check(n, &pt).unwrap();
            assert!(report.passed(), "failures: {:?}", report.failures);
            assert_eq!(report.instances, 3 << n);
        }
    }

    #[test]
    fn distribution_json_order() {
        let dist = stationary_exact(&transition_matrix(2, &ParamPoint::tasep()).unwrap()).unwrap();
        let v = dist.to_json();
        let states: Vec<&str> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e["state"].as_str().unwrap())
            .collect();
        assert_eq!(states, vec!["ww", "wb", "bw", "bb"]);
        assert_eq!(v[2]["p"], "2/5");
    }
}
