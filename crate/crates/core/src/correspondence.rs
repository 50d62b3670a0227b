//! The bridge between chain runs and minimax nesting: with
//! `f(x, A) = π(x, A − x)`, the chain's element sequence is a greedy
//! minimax word, and its shortest critical prefix is the chain optimum.

use std::fmt;

use crate::chain::run_chain;
use crate::error::{Error, Result};
use crate::language::{greedy_minimax, prefix_nesting, NestingFunction, Word};
use crate::linkage::LinkageSpec;
use crate::operator::{IsotoneScope, OperatorSpec};
use crate::oracle::{self, OracleBudget};
use crate::subset::{Element, Subset};

/// `f(x, A) = π(x, A − x)` for a monotone `π`.
#[derive(Clone, Debug, PartialEq)]
pub struct BridgedNesting {
    source: LinkageSpec,
}

impl BridgedNesting {
    pub fn source(&self) -> &LinkageSpec {
        &self.source
    }
}

impl NestingFunction for BridgedNesting {
    fn value(&self, x: Element, set: Subset) -> Result<f64> {
        if !set.contains(x) {
            return Err(Error::LinkageDomain { element: x, set });
        }
        self.source.value(x, set.without(x))
    }
}

/// Wraps `pi` after checking that it is monotone.
pub fn bridge_f_from_pi(pi: &LinkageSpec) -> Result<BridgedNesting> {
    if let Some(w) = pi.check_monotone()? {
        return Err(Error::NotMonotone {
            element: w.element,
            smaller: w.smaller,
            larger: w.larger,
        });
    }
    Ok(BridgedNesting { source: pi.clone() })
}

/// The smallest `p` with `W(x₁ … x_{p+1}) = W(α)`, and the support of the
/// `p`-prefix.
pub fn shortest_critical_prefix<F: NestingFunction + ?Sized>(
    f: &F,
    alpha: &Word,
) -> Result<(usize, Subset)> {
    if alpha.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !alpha.is_simple() {
        return Err(Error::BadWord(alpha.to_string()));
    }
    let values = prefix_nesting(f, alpha)?;
    let total = *values.last().expect("non-empty word");
    let p = values.iter().position(|&v| v == total).expect("last prefix qualifies");
    Ok((p, alpha.prefix(p).support()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceReport {
    pub k: usize,
    /// The chain's element sequence `α_k`.
    pub word: Word,
    pub p: usize,
    /// Support of the shortest critical prefix.
    pub prefix_set: Subset,
    pub chain_optimum: Subset,
    /// `F_Ψ(X⁰)`.
    pub chain_value: f64,
    /// `W(α_k)`.
    pub nesting_value: f64,
    pub holds: bool,
    /// One line per failed assertion.
    pub violations: Vec<String>,
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word {}", self.word)?;
        writeln!(f, "p {}", self.p)?;
        writeln!(f, "prefix {}", self.prefix_set)?;
        writeln!(f, "chain_value {}", self.chain_value)?;
        writeln!(f, "nesting_value {}", self.nesting_value)?;
        for v in &self.violations {
            writeln!(f, "violation {v}")?;
        }
        write!(f, "{}", if self.holds { "HOLDS" } else { "VIOLATED" })
    }
}

/// Runs the chain and the bridged greedy on `(op, pi)` and checks both parts
/// of the correspondence against the oracle. `k = 0` stands for the rank.
///
/// Preconditions (isotone or `(k−1)`-isotone operator, monotone linkage,
/// `k` equal to the rank) are reported as errors; failed assertions end up
/// in `violations`.
pub fn verify_correspondence(op: &OperatorSpec, pi: &LinkageSpec, k: usize) -> Result<CorrespondenceReport> {
    let f = bridge_f_from_pi(pi)?;
    let rank = op.family().rank();
    let k = if k == 0 { rank } else { k };
    if k > rank {
        return Err(Error::RankExceeded { k, rank });
    }
    if k < rank {
        return Err(Error::InvalidArgument(format!(
            "k must equal the family rank {rank}, got {k}"
        )));
    }
    if k == 0 {
        return Err(Error::EmptyMinimum(Subset::EMPTY));
    }
    if let Some(w) = op.check_isotone(IsotoneScope::FeasibleOnly)? {
        if let Some(kw) = op.check_k_isotone(k - 1, IsotoneScope::FeasibleOnly)? {
            return Err(Error::NotIsotone(format!(
                "{w}; not {}-isotone either: {kw}",
                k - 1
            )));
        }
    }

    let chain = run_chain(op, pi)?;
    let word = Word::new(chain.trace.letters());
    let greedy = greedy_minimax(op, &f, k)?;
    let prefix_values = prefix_nesting(&f, &word)?;
    let (p, prefix_set) = shortest_critical_prefix(&f, &word)?;
    let nesting_value = *prefix_values.last().expect("k > 0");

    let budget = OracleBudget::default();
    let mut violations = Vec::new();
    if word.len() != k {
        violations.push(format!("chain word has length {}, expected {k}", word.len()));
    }
    if greedy != word {
        violations.push(format!("greedy word {greedy} differs from chain word {word}"));
    }
    for (i, &w) in prefix_values.iter().enumerate() {
        let best = oracle::brute_minimax_w(op, &f, i + 1, &budget)?;
        if w != best.value {
            violations.push(format!(
                "prefix of length {} has W={w}, oracle minimum {}",
                i + 1,
                best.value
            ));
        }
    }
    if prefix_set != chain.optimum {
        violations.push(format!(
            "critical prefix {prefix_set} differs from chain optimum {}",
            chain.optimum
        ));
    }
    if nesting_value != chain.value {
        violations.push(format!(
            "W={nesting_value} differs from chain value {}",
            chain.value
        ));
    }
    let (_, greedy_set) = shortest_critical_prefix(&f, &greedy)?;
    let best = oracle::brute_max_f_psi(op, pi, &budget)?;
    let greedy_value = pi.objective_f_psi(op, greedy_set)?.value;
    if greedy_value != best.value {
        violations.push(format!(
            "greedy critical prefix {greedy_set} has F={greedy_value}, oracle maximum {}",
            best.value
        ));
    }

    Ok(CorrespondenceReport {
        k,
        word,
        p,
        prefix_set,
        chain_optimum: chain.optimum,
        chain_value: chain.value,
        nesting_value,
        holds: violations.is_empty(),
        violations,
    })
}
