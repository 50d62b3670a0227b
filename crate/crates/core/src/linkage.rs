//! Monotone linkage functions `π(x, X)`, defined for `x ∉ X`, and the set
//! functions built from them:
//!
//! * `F(X) = min_{x ∈ E−X} π(x, X)`
//! * `F_Ψ(X) = min_{x ∈ Ψ(X)} π(x, X)`
//!
//! A linkage is monotone when `X ⊆ Y` implies `π(x, X) ≥ π(x, Y)`. Values are
//! `f64` and compared exactly; minima break ties toward the smallest element.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator::{GenerationTrace, IsotoneWitness, OperatorSpec, EXHAUSTIVE_LIMIT};
use crate::subset::{Element, GroundSet, Subset};

/// Largest ground set for an explicit linkage table (`n · 2^(n−1)` entries).
pub const LINKAGE_TABLE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub enum LinkageKind {
    /// Total table over `{(x, X) : x ∉ X}`.
    Table(HashMap<(Element, Subset), f64>),
    /// `π(x, X) = w_x − |X|`.
    WeightMinusSize(Vec<f64>),
    /// `π(x, X) = min_{y ∈ X} d_xy`, and `empty_value` at `X = ∅`.
    SingleLinkage {
        distances: Vec<Vec<f64>>,
        empty_value: f64,
    },
    /// The two-valued linkage that defeats the chain algorithm on a
    /// non-isotone operator.
    Failure(FailureParams),
}

/// Letters `a₁ … a_{k+1}` of the chain `∅ = A₀ ⊂ A₁ ⊂ … ⊂ A_k = A ⊂ A ∪ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureParams {
    letters: Vec<Element>,
}

impl FailureParams {
    pub fn new(ground: &GroundSet, letters: Vec<Element>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidLinkage("failure chain needs at least one letter".into()));
        }
        let mut seen = Subset::EMPTY;
        for &a in &letters {
            ground.check_element(a)?;
            if seen.contains(a) {
                return Err(Error::InvalidLinkage(format!("letter {a} repeats in the failure chain")));
            }
            seen = seen.with(a);
        }
        Ok(FailureParams { letters })
    }

    pub fn letters(&self) -> &[Element] {
        &self.letters
    }

    /// `A ∪ a`, the support of the whole chain.
    pub fn target(&self) -> Subset {
        self.letters.iter().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkageSpec {
    ground: GroundSet,
    kind: LinkageKind,
}

/// A minimum together with the (smallest) element attaining it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObjectiveValue {
    pub value: f64,
    pub element: Element,
}

/// `π(x, X) < π(x, Y)` although `X ⊆ Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonotoneWitness {
    pub element: Element,
    pub smaller: Subset,
    pub larger: Subset,
}

impl fmt::Display for MonotoneWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={} X={} Y={}",
            self.element, self.smaller, self.larger
        )
    }
}

fn check_value(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidLinkage(format!("non-finite value {v}")))
    }
}

impl LinkageSpec {
    /// Explicit table; must be total over `{(x, X) : x ∈ E − X}`.
    pub fn table<I>(ground: GroundSet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, Subset, f64)>,
    {
        let n = ground.len();
        if n > LINKAGE_TABLE_LIMIT {
            return Err(Error::ScopeTooLarge {
                what: "linkage table",
                n,
                limit: LINKAGE_TABLE_LIMIT,
                hint: "use a formula kind",
            });
        }
        let mut table = HashMap::new();
        for (x, set, value) in entries {
            ground.check_element(x)?;
            ground.check(set)?;
            if set.contains(x) {
                return Err(Error::LinkageDomain { element: x, set });
            }
            if table.insert((x, set), check_value(value)?).is_some() {
                return Err(Error::DuplicateEntry(format!("({x}, {set})")));
            }
        }
        if table.len() != n << (n - 1) {
            for x in ground.elements() {
                for set in ground.full().without(x).subsets() {
                    if !table.contains_key(&(x, set)) {
                        return Err(Error::MissingLinkage { element: x, set });
                    }
                }
            }
        }
        Ok(LinkageSpec {
            ground,
            kind: LinkageKind::Table(table),
        })
    }

    pub fn weight_minus_size(ground: GroundSet, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != ground.len() {
            return Err(Error::InvalidLinkage(format!(
                "expected {} weights, found {}",
                ground.len(),
                weights.len()
            )));
        }
        for &w in &weights {
            check_value(w)?;
        }
        Ok(LinkageSpec {
            ground,
            kind: LinkageKind::WeightMinusSize(weights),
        })
    }

    /// Single linkage over a symmetric distance matrix. `empty_value` is
    /// `π(x, ∅)`; it must dominate every distance and defaults to
    /// `2 · max d + 1`.
    pub fn single_linkage(
        ground: GroundSet,
        distances: Vec<Vec<f64>>,
        empty_value: Option<f64>,
    ) -> Result<Self> {
        let n = ground.len();
        if distances.len() != n || distances.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidLinkage(format!("distance matrix must be {n}x{n}")));
        }
        let mut max = f64::NEG_INFINITY;
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                let d = check_value(distances[i][j])?;
                if d != distances[j][i] {
                    return Err(Error::InvalidLinkage(format!(
                        "distance matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if i != j {
                    max = max.max(d);
                }
            }
        }
        let max = if max.is_finite() { max } else { 0.0 };
        let empty_value = match empty_value {
            Some(m) => {
                check_value(m)?;
                if m < max {
                    return Err(Error::InvalidLinkage(format!(
                        "empty-set value {m} is below the largest distance {max}"
                    )));
                }
                m
            }
            None => 2.0 * max + 1.0,
        };
        Ok(LinkageSpec {
            ground,
            kind: LinkageKind::SingleLinkage {
                distances,
                empty_value,
            },
        })
    }

    pub fn failure(ground: GroundSet, params: FailureParams) -> Result<Self> {
        for &a in params.letters() {
            ground.check_element(a)?;
        }
        Ok(LinkageSpec {
            ground,
            kind: LinkageKind::Failure(params),
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn kind(&self) -> &LinkageKind {
        &self.kind
    }

    /// `π(x, X)`; errors when `x ∈ X`.
    pub fn value(&self, x: Element, set: Subset) -> Result<f64> {
        self.ground.check_element(x)?;
        if set.contains(x) {
            return Err(Error::LinkageDomain { element: x, set });
        }
        match &self.kind {
            LinkageKind::Table(table) => table
                .get(&(x, set))
                .copied()
                .ok_or(Error::MissingLinkage { element: x, set }),
            LinkageKind::WeightMinusSize(w) => Ok(w[x - 1] - set.len() as f64),
            LinkageKind::SingleLinkage {
                distances,
                empty_value,
            } => Ok(set
                .iter()
                .map(|y| distances[x - 1][y - 1])
                .reduce(f64::min)
                .unwrap_or(*empty_value)),
            LinkageKind::Failure(params) => {
                let mut prefix = Subset::EMPTY;
                for &a in params.letters() {
                    if a == x && prefix.is_subset(set) {
                        return Ok(1.0);
                    }
                    prefix = prefix.with(a);
                }
                if prefix.is_subset(set) && set != self.ground.full() {
                    Ok(1.0)
                } else {
                    Ok(2.0)
                }
            }
        }
    }

    /// Materializes the linkage as a table (`n ≤ 16`).
    pub fn to_table(&self) -> Result<LinkageSpec> {
        let mut entries = Vec::new();
        if self.ground.len() <= LINKAGE_TABLE_LIMIT {
            for x in self.ground.elements() {
                for set in self.ground.full().without(x).subsets() {
                    entries.push((x, set, self.value(x, set)?));
                }
            }
        }
        LinkageSpec::table(self.ground.clone(), entries)
    }

    /// Exhaustive monotonicity check (`n ≤ 16`). Monotonicity along
    /// single-element extensions implies it along every inclusion, so the
    /// sweep compares `X` with `X ∪ y` only; the first failure in
    /// (element, canonical `X`, `y`) order is returned.
    pub fn check_monotone(&self) -> Result<Option<MonotoneWitness>> {
        let n = self.ground.len();
        if n > EXHAUSTIVE_LIMIT {
            return Err(Error::ScopeTooLarge {
                what: "monotonicity check",
                n,
                limit: EXHAUSTIVE_LIMIT,
                hint: "use the sampled check",
            });
        }
        let all = self.ground.all_subsets();
        for x in self.ground.elements() {
            for &smaller in all.iter().filter(|s| !s.contains(x)) {
                let base = self.value(x, smaller)?;
                for y in self.ground.full().difference(smaller).without(x) {
                    let larger = smaller.with(y);
                    if base < self.value(x, larger)? {
                        return Ok(Some(MonotoneWitness {
                            element: x,
                            smaller,
                            larger,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Randomized monotonicity check along `samples` random maximal chains
    /// `∅ ⊂ … ⊂ E − x`, for ground sets too large to sweep.
    pub fn check_monotone_sampled(&self, seed: u64, samples: usize) -> Result<Option<MonotoneWitness>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.ground.len();
        for _ in 0..samples {
            let x = rng.gen_range(1..=n);
            let mut rest: Vec<Element> = self.ground.full().without(x).iter().collect();
            rest.shuffle(&mut rng);
            let mut smaller = Subset::EMPTY;
            let mut previous = self.value(x, smaller)?;
            for y in rest {
                let larger = smaller.with(y);
                let current = self.value(x, larger)?;
                if previous < current {
                    return Ok(Some(MonotoneWitness {
                        element: x,
                        smaller,
                        larger,
                    }));
                }
                smaller = larger;
                previous = current;
            }
        }
        Ok(None)
    }

    fn minimum_over(&self, candidates: Subset, set: Subset) -> Result<ObjectiveValue> {
        let mut best: Option<ObjectiveValue> = None;
        for x in candidates {
            let value = self.value(x, set)?;
            if best.is_none_or(|b| value < b.value) {
                best = Some(ObjectiveValue { value, element: x });
            }
        }
        best.ok_or(Error::EmptyMinimum(set))
    }

    /// `F(X) = min_{x ∈ E−X} π(x, X)`; undefined at `X = E`.
    pub fn objective_f(&self, set: Subset) -> Result<ObjectiveValue> {
        self.ground.check(set)?;
        self.minimum_over(self.ground.full().difference(set), set)
    }

    /// `F_Ψ(X) = min_{x ∈ Ψ(X)} π(x, X)`; undefined where `Ψ(X) = ∅`.
    pub fn objective_f_psi(&self, op: &OperatorSpec, set: Subset) -> Result<ObjectiveValue> {
        self.ground.check(set)?;
        self.minimum_over(op.evaluate(set), set)
    }
}

/// Builds the two-valued linkage that makes the chain algorithm miss the
/// optimum of a non-isotone operator.
///
/// With `∅ = A₀ ⊂ … ⊂ A_k = A` the recorded chain to `A = w.lower` and
/// `a = w.element`, `π(x, X) = 1` when `X ⊇ A_{i−1}` and `x = a_i` for some
/// `i ≤ k + 1`, or when `A ∪ a ⊆ X ⊂ E`; every other pair gets `2`.
pub fn failure_linkage(
    op: &OperatorSpec,
    witness: &IsotoneWitness,
    trace: &GenerationTrace,
) -> Result<LinkageSpec> {
    if !op.is_witness(witness) {
        return Err(Error::BadWitness(witness.to_string()));
    }
    let chain = trace.chain_to(witness.lower).ok_or_else(|| {
        Error::BadWitness(format!("no generated chain reaches {}", witness.lower))
    })?;
    let mut letters = Vec::with_capacity(chain.len() + 1);
    let mut prefix = Subset::EMPTY;
    for (set, a) in chain {
        if !op.evaluate(prefix).contains(a) || set != prefix.with(a) {
            return Err(Error::BadWitness(format!(
                "trace step {set} is not generated by the operator"
            )));
        }
        letters.push(a);
        prefix = set;
    }
    letters.push(witness.element);
    let params = FailureParams::new(op.ground(), letters)?;
    LinkageSpec::failure(op.ground().clone(), params)
}
