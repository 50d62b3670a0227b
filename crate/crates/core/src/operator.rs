//! Operators `Ψ: 2^E → 2^E` with `Ψ(X) ⊆ E − X`, the level-by-level
//! generator of `F(Ψ)`, and the isotone / `(k−1)`-isotone checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::poset::Poset;
use crate::subset::{Element, GroundSet, Subset};

/// Largest ground set swept exhaustively over all subset pairs.
pub const EXHAUSTIVE_LIMIT: usize = 16;

/// Largest ground set for which an operator is materialized as a table.
pub const TABLE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsotoneScope {
    /// Every pair `X ⊆ Y` of subsets of `E` (`n ≤ 16`).
    AllSubsets,
    /// Pairs drawn from the generated family only.
    FeasibleOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorKind {
    /// Explicit values; subsets without an entry map to `∅`.
    Table(BTreeMap<Subset, Subset>),
    /// `Ψ(X) = E − X`.
    Full,
    /// `Ψ(∅) = E`, otherwise every element above `max(X)`.
    MaxOrder,
    /// Minimal elements of `E − X` in a poset.
    PosetMin(Poset),
    /// `Ψ(∅) = {1}`, otherwise `{max(X) + 1}`.
    Chain,
    /// `Ψ(X) = Γ(B_X)` for an antimatroid.
    BasisOfFamily(SetFamily),
    /// `Ψ(X)` when `|X| ≤ cutoff`, otherwise `∅`.
    Truncated {
        inner: Box<OperatorSpec>,
        cutoff: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    ground: GroundSet,
    kind: OperatorKind,
}

/// A failure of `Ψ(A) ∩ (E − B) ⊆ Ψ(B)`: `A ⊆ B`, `a ∉ B`, `a ∈ Ψ(A)`, `a ∉ Ψ(B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsotoneWitness {
    pub lower: Subset,
    pub upper: Subset,
    pub element: Element,
}

impl fmt::Display for IsotoneWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={} B={} a={}", self.lower, self.upper, self.element)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KIsotoneWitness {
    /// The restricted isotone condition fails for a pair with `|B| ≤ k − 1`.
    Isotone(IsotoneWitness),
    /// `Ψ(X)` is non-empty although `|X| ≥ k`.
    AboveCutoff { set: Subset, element: Element },
}

impl fmt::Display for KIsotoneWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KIsotoneWitness::Isotone(w) => w.fmt(f),
            KIsotoneWitness::AboveCutoff { set, element } => {
                write!(f, "X={set} has {element} in its value above the cutoff")
            }
        }
    }
}

/// Parent links recorded while generating `F(Ψ)`: one feasible chain
/// `∅ = X₀ ⊂ X₁ ⊂ … ⊂ X_k` per generated set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenerationTrace {
    parents: BTreeMap<Subset, (Subset, Element)>,
}

impl GenerationTrace {
    /// The set this one was first generated from, with the added element.
    pub fn parent(&self, s: Subset) -> Option<(Subset, Element)> {
        self.parents.get(&s).copied()
    }

    /// The chain leading to `s` as `(X_i, x_i)` pairs, `X_i = X_{i−1} ∪ x_i`.
    pub fn chain_to(&self, s: Subset) -> Option<Vec<(Subset, Element)>> {
        let mut chain = Vec::with_capacity(s.len());
        let mut current = s;
        while !current.is_empty() {
            let (parent, x) = self.parent(current)?;
            chain.push((current, x));
            current = parent;
        }
        chain.reverse();
        Some(chain)
    }

    /// The letters `x₁ … x_k` of the chain leading to `s`.
    pub fn letters_to(&self, s: Subset) -> Option<Vec<Element>> {
        self.chain_to(s)
            .map(|chain| chain.into_iter().map(|(_, x)| x).collect())
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }
}

impl OperatorSpec {
    /// Table operator. Rejects entries outside the ground set, duplicate keys
    /// and values meeting their key.
    pub fn table<I>(ground: GroundSet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Subset)>,
    {
        let mut table = BTreeMap::new();
        for (set, value) in entries {
            ground.check(set)?;
            ground.check(value)?;
            if !value.is_disjoint(set) {
                return Err(Error::ZeroViolation { set, value });
            }
            if table.insert(set, value).is_some() {
                return Err(Error::DuplicateEntry(set.to_string()));
            }
        }
        Ok(OperatorSpec {
            ground,
            kind: OperatorKind::Table(table),
        })
    }

    pub fn full(ground: GroundSet) -> Self {
        OperatorSpec {
            ground,
            kind: OperatorKind::Full,
        }
    }

    pub fn max_order(ground: GroundSet) -> Self {
        OperatorSpec {
            ground,
            kind: OperatorKind::MaxOrder,
        }
    }

    pub fn poset_min(poset: Poset) -> Self {
        OperatorSpec {
            ground: poset.ground().clone(),
            kind: OperatorKind::PosetMin(poset),
        }
    }

    pub fn chain(ground: GroundSet) -> Self {
        OperatorSpec {
            ground,
            kind: OperatorKind::Chain,
        }
    }

    /// The basis operator `Ψ(X) = Γ(B_X)` of an antimatroid.
    pub fn from_family(family: SetFamily) -> Result<Self> {
        if !family.is_accessible() {
            return Err(Error::NotAntimatroid("family is not accessible".into()));
        }
        if !family.is_union_closed() {
            return Err(Error::NotAntimatroid("family is not closed under union".into()));
        }
        Ok(OperatorSpec {
            ground: family.ground().clone(),
            kind: OperatorKind::BasisOfFamily(family),
        })
    }

    /// `Ψ_{k−1}`: agrees with `self` on sets of at most `cutoff = k − 1`
    /// elements and is empty above.
    pub fn truncated(&self, cutoff: usize) -> Self {
        OperatorSpec {
            ground: self.ground.clone(),
            kind: OperatorKind::Truncated {
                inner: Box::new(self.clone()),
                cutoff,
            },
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    /// `Ψ(X)`; always disjoint from `X`.
    pub fn evaluate(&self, x: Subset) -> Subset {
        let full = self.ground.full();
        match &self.kind {
            OperatorKind::Table(table) => table.get(&x).copied().unwrap_or_default(),
            OperatorKind::Full => full.difference(x),
            OperatorKind::MaxOrder => match x.max() {
                None => full,
                Some(m) => full.iter().filter(|&e| e > m).collect(),
            },
            OperatorKind::PosetMin(poset) => poset.minimal_elements(full.difference(x)),
            OperatorKind::Chain => {
                let next = x.max().map_or(1, |m| m + 1);
                if next <= self.ground.len() {
                    Subset::singleton(next)
                } else {
                    Subset::EMPTY
                }
            }
            OperatorKind::BasisOfFamily(family) => {
                family.continuations_unchecked(family.basis_unchecked(x))
            }
            OperatorKind::Truncated { inner, cutoff } => {
                if x.len() <= *cutoff {
                    inner.evaluate(x)
                } else {
                    Subset::EMPTY
                }
            }
        }
    }

    /// Runs the generator: `T₀ = {∅}`, `T_{i+1} = {X ∪ x : X ∈ T_i, x ∈ Ψ(X)}`
    /// until some `T_i` is empty. Every set in `T_i` has exactly `i` elements.
    pub fn generate_family(&self) -> (SetFamily, GenerationTrace) {
        let mut parents = BTreeMap::new();
        let mut all = vec![Subset::EMPTY];
        let mut level = vec![Subset::EMPTY];
        while !level.is_empty() {
            let mut next = BTreeSet::new();
            for &x in &level {
                for e in self.evaluate(x) {
                    let y = x.with(e);
                    if next.insert(y) {
                        parents.insert(y, (x, e));
                    }
                }
            }
            all.extend(next.iter().copied());
            level = next.into_iter().collect();
        }
        let family = SetFamily::new(self.ground.clone(), all)
            .expect("generated sets stay inside the ground set");
        (family, GenerationTrace { parents })
    }

    /// `F(Ψ)` without the trace.
    pub fn family(&self) -> SetFamily {
        self.generate_family().0
    }

    /// Whether a chain may legitimately stop at feasible `t` (where `Ψ(t) = ∅`):
    /// `t` must be the maximal feasible set, or lie above a truncation cutoff.
    pub fn allows_stop_at(&self, t: Subset) -> bool {
        match &self.kind {
            OperatorKind::Full
            | OperatorKind::MaxOrder
            | OperatorKind::PosetMin(_)
            | OperatorKind::Chain => t == self.ground.full(),
            OperatorKind::BasisOfFamily(family) => t == family.union_of_all(),
            OperatorKind::Table(_) => t == self.family().union_of_all(),
            OperatorKind::Truncated { inner, cutoff } => {
                t.len() > *cutoff || inner.allows_stop_at(t)
            }
        }
    }

    /// Materializes `Ψ` on every subset as a table operator (`n ≤ 20`).
    pub fn to_table(&self) -> Result<OperatorSpec> {
        let n = self.ground.len();
        if n > TABLE_LIMIT {
            return Err(Error::ScopeTooLarge {
                what: "operator table",
                n,
                limit: TABLE_LIMIT,
                hint: "keep the builtin operator kind",
            });
        }
        let entries = self
            .ground
            .full()
            .subsets()
            .map(|x| (x, self.evaluate(x)))
            .filter(|(_, v)| !v.is_empty());
        OperatorSpec::table(self.ground.clone(), entries)
    }

    /// Checks `X ⊆ Y ⇒ Ψ(X) ∩ (E − Y) ⊆ Ψ(Y)` over `scope`, returning the
    /// smallest witness `(A, B, a)` in canonical order.
    pub fn check_isotone(&self, scope: IsotoneScope) -> Result<Option<IsotoneWitness>> {
        self.isotone_sweep(scope, None)
    }

    /// Checks the `(k−1)`-isotone conditions with `cutoff = k − 1`: the
    /// restricted isotone condition for `|Y| ≤ k − 1`, and `Ψ(X) = ∅` for
    /// every `|X| ≥ k`.
    pub fn check_k_isotone(
        &self,
        cutoff: usize,
        scope: IsotoneScope,
    ) -> Result<Option<KIsotoneWitness>> {
        if let Some(w) = self.isotone_sweep(scope, Some(cutoff))? {
            return Ok(Some(KIsotoneWitness::Isotone(w)));
        }
        let candidates = match scope {
            IsotoneScope::AllSubsets => self.ground.all_subsets(),
            IsotoneScope::FeasibleOnly => self.family().sets().to_vec(),
        };
        Ok(candidates
            .into_iter()
            .filter(|x| x.len() > cutoff)
            .find_map(|x| {
                self.evaluate(x)
                    .min()
                    .map(|element| KIsotoneWitness::AboveCutoff { set: x, element })
            }))
    }

    fn isotone_sweep(
        &self,
        scope: IsotoneScope,
        max_upper: Option<usize>,
    ) -> Result<Option<IsotoneWitness>> {
        let upper_ok = |b: Subset| max_upper.is_none_or(|c| b.len() <= c);
        match scope {
            IsotoneScope::AllSubsets => {
                let n = self.ground.len();
                if n > EXHAUSTIVE_LIMIT {
                    return Err(Error::ScopeTooLarge {
                        what: "isotone check over all subsets",
                        n,
                        limit: EXHAUSTIVE_LIMIT,
                        hint: "use the feasible-only scope",
                    });
                }
                let full = self.ground.full();
                let psi: Vec<Subset> = (0..1u64 << n)
                    .map(|b| self.evaluate(Subset::from_bits(b)))
                    .collect();
                for lower in self.ground.all_subsets() {
                    let value = psi[lower.bits() as usize];
                    if value.is_empty() || !upper_ok(lower) {
                        continue;
                    }
                    let mut best: Option<(Subset, Element)> = None;
                    for extra in full.difference(lower).subsets() {
                        let upper = lower.union(extra);
                        if !upper_ok(upper) {
                            continue;
                        }
                        let missing = value.difference(upper).difference(psi[upper.bits() as usize]);
                        if let Some(e) = missing.min() {
                            if best.is_none_or(|(b, _)| upper < b) {
                                best = Some((upper, e));
                            }
                        }
                    }
                    if let Some((upper, element)) = best {
                        return Ok(Some(IsotoneWitness {
                            lower,
                            upper,
                            element,
                        }));
                    }
                }
                Ok(None)
            }
            IsotoneScope::FeasibleOnly => {
                let family = self.family();
                for &lower in family.iter() {
                    let value = self.evaluate(lower);
                    if value.is_empty() {
                        continue;
                    }
                    for &upper in family.iter() {
                        if !lower.is_subset(upper) || !upper_ok(upper) {
                            continue;
                        }
                        let missing = value.difference(upper).difference(self.evaluate(upper));
                        if let Some(element) = missing.min() {
                            return Ok(Some(IsotoneWitness {
                                lower,
                                upper,
                                element,
                            }));
                        }
                    }
                }
                Ok(None)
            }
        }
    }

    /// Whether `w` is a genuine isotonicity failure of this operator.
    pub fn is_witness(&self, w: &IsotoneWitness) -> bool {
        w.lower.is_subset(w.upper)
            && !w.upper.contains(w.element)
            && self.evaluate(w.lower).contains(w.element)
            && !self.evaluate(w.upper).contains(w.element)
    }
}
