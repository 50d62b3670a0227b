//! The chain algorithm: grow `∅ = X₀ ⊂ X₁ ⊂ …` by a `π`-minimal element of
//! `Ψ(X_i)` until `Ψ` is empty, and return the earliest chain set with the
//! largest `F_Ψ`. For an isotone `Ψ` and a monotone `π` this set maximizes
//! `F_Ψ` over every feasible set except the maximal one.

use std::fmt;

use crate::error::{Error, Result};
use crate::linkage::LinkageSpec;
use crate::operator::OperatorSpec;
use crate::oracle;
use crate::subset::{Element, Subset};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainStep {
    pub set: Subset,
    /// `F_Ψ(set)`.
    pub value: f64,
    /// The `π`-minimal continuation that was added next.
    pub chosen: Element,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainTrace {
    pub steps: Vec<ChainStep>,
    /// The last set, where `Ψ` is empty.
    pub terminal: Subset,
    /// Number of linkage evaluations performed.
    pub evaluations: usize,
}

impl ChainTrace {
    /// The added elements `x₁ x₂ …` in order.
    pub fn letters(&self) -> Vec<Element> {
        self.steps.iter().map(|s| s.chosen).collect()
    }
}

impl fmt::Display for ChainTrace {
    /// One line per step (`set value chosen`), then the terminal set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{} {} {}", step.set, step.value, step.chosen)?;
        }
        write!(f, "{} - -", self.terminal)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptResult {
    /// `X⁰`.
    pub optimum: Subset,
    /// `F_Ψ(X⁰)`.
    pub value: f64,
    pub trace: ChainTrace,
}

/// Runs the chain algorithm from `∅`.
///
/// Ties in the choice of the next element go to the smallest identifier;
/// `X⁰` is replaced only on a strict improvement. Errors when `Ψ(∅) = ∅`, or
/// when the chain stops at a set that is not maximal feasible.
pub fn run_chain(op: &OperatorSpec, pi: &LinkageSpec) -> Result<OptResult> {
    run_chain_from(op, pi, Subset::EMPTY)
}

/// The chain algorithm started at a feasible `start` instead of `∅`; it
/// then optimizes over the feasible sets containing `start`.
pub fn run_chain_from(op: &OperatorSpec, pi: &LinkageSpec, start: Subset) -> Result<OptResult> {
    op.ground().check(start)?;
    let mut steps = Vec::new();
    let mut evaluations = 0;
    let mut best: Option<(Subset, f64)> = None;
    let mut current = start;
    loop {
        let candidates = op.evaluate(current);
        if candidates.is_empty() {
            break;
        }
        let mut chosen: Option<(Element, f64)> = None;
        for x in candidates {
            let value = pi.value(x, current)?;
            evaluations += 1;
            if chosen.is_none_or(|(_, v)| value < v) {
                chosen = Some((x, value));
            }
        }
        let (x, value) = chosen.expect("candidates are non-empty");
        if best.is_none_or(|(_, v)| value > v) {
            best = Some((current, value));
        }
        steps.push(ChainStep {
            set: current,
            value,
            chosen: x,
        });
        current = current.with(x);
    }
    let n = op.ground().len();
    debug_assert!(evaluations <= n * (n + 1));
    let Some((optimum, value)) = best else {
        return Err(Error::EmptyMinimum(start));
    };
    if !op.allows_stop_at(current) {
        return Err(Error::Stuck(current));
    }
    Ok(OptResult {
        optimum,
        value,
        trace: ChainTrace {
            steps,
            terminal: current,
            evaluations,
        },
    })
}

/// Best chain optimum over non-empty feasible sets: one chain per feasible
/// singleton `{y}`, `y ∈ Ψ(∅)`, keeping the earliest strict maximum.
/// `None` when no feasible singleton admits a continuation.
pub fn run_chain_nonempty(op: &OperatorSpec, pi: &LinkageSpec) -> Result<Option<OptResult>> {
    let mut best: Option<OptResult> = None;
    for y in op.evaluate(Subset::EMPTY) {
        let start = Subset::singleton(y);
        if op.evaluate(start).is_empty() {
            if op.allows_stop_at(start) {
                continue;
            }
            return Err(Error::Stuck(start));
        }
        let result = run_chain_from(op, pi, start)?;
        if best.as_ref().is_none_or(|b| result.value > b.value) {
            best = Some(result);
        }
    }
    Ok(best)
}

/// Compares `r.value` with the brute-force maximum of `F_Ψ` over the
/// non-maximal feasible sets. Instances the oracle cannot evaluate (budget,
/// empty operator below the maximal set) count as unverified.
pub fn verify_against_oracle(op: &OperatorSpec, pi: &LinkageSpec, r: &OptResult) -> bool {
    match oracle::brute_max_f_psi(op, pi, &oracle::OracleBudget::default()) {
        Ok(best) => best.value == r.value,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linkage::failure_linkage;
    use crate::operator::IsotoneScope;
    use crate::subset::GroundSet;
    use proptest::prelude::*;

    fn s(xs: &[Element]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn p3_with_w136() {
        let r = run_chain(&fixtures::p3_operator(), &fixtures::w136()).unwrap();
        assert_eq!(r.optimum, s(&[1, 3]));
        assert_eq!(r.value, 4.0);
        let sets: Vec<Subset> = r.trace.steps.iter().map(|st| st.set).collect();
        assert_eq!(sets, [s(&[]), s(&[1]), s(&[1, 3])]);
        let values: Vec<f64> = r.trace.steps.iter().map(|st| st.value).collect();
        assert_eq!(values, [1.0, 2.0, 4.0]);
        assert_eq!(r.trace.terminal, s(&[1, 2, 3]));
        assert_eq!(r.trace.letters(), [1, 3, 2]);
        assert!(verify_against_oracle(&fixtures::p3_operator(), &fixtures::w136(), &r));
        assert_eq!(r.trace.to_string(), "{} 1 1\n{1} 2 3\n{1,3} 4 2\n{1,2,3} - -");
    }

    #[test]
    fn full_operator_decreasing_linkage() {
        let pi = LinkageSpec::weight_minus_size(g(3), vec![3.1, 3.2, 3.3]).unwrap();
        let op = OperatorSpec::full(g(3));
        let r = run_chain(&op, &pi).unwrap();
        assert_eq!(r.optimum, s(&[]));
        assert_eq!(r.value, 3.1);
        assert!(verify_against_oracle(&op, &pi, &r));
    }

    #[test]
    fn n3_failure_linkage_defeats_the_chain() {
        let op = fixtures::n3_operator();
        let witness = op.check_isotone(IsotoneScope::FeasibleOnly).unwrap().unwrap();
        let (_, trace) = op.generate_family();
        let pi = failure_linkage(&op, &witness, &trace).unwrap();
        let r = run_chain(&op, &pi).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.trace.steps.iter().all(|st| st.value == 1.0));
        assert!(!verify_against_oracle(&op, &pi, &r));
    }

    #[test]
    fn single_element_ground() {
        let op = OperatorSpec::full(g(1));
        let pi = LinkageSpec::table(g(1), [(1, s(&[]), 0.5)]).unwrap();
        let r = run_chain(&op, &pi).unwrap();
        assert_eq!((r.optimum, r.value), (s(&[]), 0.5));
        assert!(verify_against_oracle(&op, &pi, &r));
    }

    #[test]
    fn empty_operator_at_start_is_an_error() {
        let op = OperatorSpec::table(g(2), []).unwrap();
        let pi = LinkageSpec::weight_minus_size(g(2), vec![1.0, 1.0]).unwrap();
        assert_eq!(run_chain(&op, &pi), Err(Error::EmptyMinimum(s(&[]))));
    }

    #[test]
    fn stuck_chain_names_the_set() {
        // max_order empties out at {3} while {1,2,3} is still reachable
        let op = OperatorSpec::max_order(g(3));
        let pi = LinkageSpec::weight_minus_size(g(3), vec![5.0, 5.0, 0.0]).unwrap();
        assert_eq!(run_chain(&op, &pi), Err(Error::Stuck(s(&[3]))));
    }

    #[test]
    fn truncated_chain_stops_at_the_cutoff() {
        let op = fixtures::p3_operator().truncated(1);
        let r = run_chain(&op, &fixtures::w136()).unwrap();
        assert_eq!(r.trace.terminal, s(&[1, 3]));
        assert_eq!((r.optimum, r.value), (s(&[1]), 2.0));
        assert!(verify_against_oracle(&op, &fixtures::w136(), &r));
    }

    #[test]
    fn nonempty_variant() {
        // single linkage: π(x, ∅) dominates, so ∅ is the unrestricted optimum
        let op = OperatorSpec::full(g(3));
        let pi = fixtures::single_linkage3();
        let r = run_chain(&op, &pi).unwrap();
        assert_eq!(r.optimum, s(&[]));
        let best = run_chain_nonempty(&op, &pi).unwrap().unwrap();
        let oracle = oracle::brute_max_f_psi_excluding_empty(&op, &pi, &oracle::OracleBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(best.value, oracle.value);
        assert!(oracle.argmax.contains(best.optimum));
    }

    proptest! {
        #[test]
        fn evaluation_bound_and_determinism(seed in any::<u64>(), n in 1usize..7) {
            let op = oracle::random_isotone_operator(seed, n).unwrap();
            let pi = oracle::random_monotone_linkage(seed ^ 0x5555, n, 3).unwrap();
            let a = run_chain(&op, &pi).unwrap();
            let b = run_chain(&op, &pi).unwrap();
            prop_assert!(a.trace.evaluations <= n * (n + 1));
            prop_assert_eq!(&a, &b);
            prop_assert!(verify_against_oracle(&op, &pi, &a));
        }

        #[test]
        fn chain_dominates_every_feasible_set(seed in any::<u64>(), n in 1usize..7) {
            let op = oracle::random_isotone_operator(seed, n).unwrap();
            let pi = oracle::random_monotone_linkage(seed.rotate_left(7), n, 4).unwrap();
            let r = run_chain(&op, &pi).unwrap();
            let family = op.family();
            let sets: Vec<Subset> = r.trace.steps.iter().map(|st| st.set).chain([r.trace.terminal]).collect();
            for &x in family.iter().filter(|&&x| x != r.trace.terminal) {
                // least j with X_j ⊄ X
                let j = sets.iter().position(|xj| !xj.is_subset(x)).unwrap();
                let prev = r.trace.steps[j - 1];
                let f_x = pi.objective_f_psi(&op, x).unwrap().value;
                let via = pi.value(prev.chosen, x).unwrap();
                prop_assert!(f_x <= via);
                prop_assert!(via <= prev.value);
                prop_assert!(prev.value <= r.value);
            }
        }
    }
}
