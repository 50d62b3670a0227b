//! Feasible families `(E, F)` and the set-system side axioms.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::subset::{Element, GroundSet, Subset};

/// Largest family for which [`SetFamily::is_antimatroid`] cross-checks the
/// exchange axiom and the interval property under debug assertions.
const CROSS_CHECK_LIMIT: usize = 2048;

/// A duplicate-free family of subsets of a ground set, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    sets: Vec<Subset>,
}

impl SetFamily {
    /// Duplicates are merged; every set must lie inside `ground`.
    pub fn new<I: IntoIterator<Item = Subset>>(ground: GroundSet, sets: I) -> Result<Self> {
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        for &s in &sets {
            ground.check(s)?;
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(SetFamily { ground, sets })
    }

    /// Builds a family from element lists, e.g. `&[&[], &[1], &[1, 2]]`.
    pub fn from_lists(ground: GroundSet, lists: &[&[Element]]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| ground.subset(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, sets)
    }

    /// The full power set of the ground set.
    pub fn power_set(ground: GroundSet) -> Self {
        let sets = ground.all_subsets();
        SetFamily { ground, sets }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.sets.iter()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// Subfamily relation.
    pub fn is_subfamily(&self, other: &SetFamily) -> bool {
        self.sets.iter().all(|&s| other.contains(s))
    }

    /// (A1): `∅` is feasible and every non-empty feasible set has an element
    /// whose removal stays feasible. An empty family is not accessible.
    pub fn is_accessible(&self) -> bool {
        self.accessibility_witness().is_none()
    }

    /// First set violating accessibility: `∅` when it is missing, otherwise
    /// the first non-empty feasible set with no feasible `X − x`.
    pub fn accessibility_witness(&self) -> Option<Subset> {
        if !self.contains(Subset::EMPTY) {
            return Some(Subset::EMPTY);
        }
        self.sets
            .iter()
            .copied()
            .filter(|s| !s.is_empty())
            .find(|&s| !s.iter().any(|x| self.contains(s.without(x))))
    }

    /// (A2): for feasible `X ⊄ Y` some `x ∈ X − Y` has `Y ∪ x` feasible.
    pub fn satisfies_exchange(&self) -> bool {
        self.exchange_witness().is_none()
    }

    /// First pair `(X, Y)` violating the exchange axiom.
    pub fn exchange_witness(&self) -> Option<(Subset, Subset)> {
        self.sets.iter().find_map(|&x| {
            self.sets
                .iter()
                .find(|&&y| {
                    !x.is_subset(y) && !x.difference(y).iter().any(|e| self.contains(y.with(e)))
                })
                .map(|&y| (x, y))
        })
    }

    pub fn is_union_closed(&self) -> bool {
        self.union_witness().is_none()
    }

    /// First pair of feasible sets whose union is infeasible.
    pub fn union_witness(&self) -> Option<(Subset, Subset)> {
        self.sets.iter().enumerate().find_map(|(i, &x)| {
            self.sets[i + 1..]
                .iter()
                .find(|&&y| !self.contains(x.union(y)))
                .map(|&y| (x, y))
        })
    }

    /// Interval property without upper bounds: feasible `X ⊆ Y`, `x ∉ Y` and
    /// `X ∪ x` feasible imply `Y ∪ x` feasible.
    pub fn has_interval_property(&self) -> bool {
        self.interval_witness().is_none()
    }

    /// First `(X, Y, x)` violating the interval property.
    pub fn interval_witness(&self) -> Option<(Subset, Subset, Element)> {
        let outside = self.ground.full();
        self.sets.iter().find_map(|&x| {
            self.sets.iter().filter(|&&y| x.is_subset(y)).find_map(|&y| {
                outside
                    .difference(y)
                    .iter()
                    .find(|&e| self.contains(x.with(e)) && !self.contains(y.with(e)))
                    .map(|e| (x, y, e))
            })
        })
    }

    /// Accessible and closed under union.
    ///
    /// On accessible families these two conditions are equivalent to the
    /// exchange axiom and to the interval property; debug builds assert that
    /// agreement for families of up to 2048 sets.
    pub fn is_antimatroid(&self) -> bool {
        if !self.is_accessible() {
            return false;
        }
        let union_closed = self.is_union_closed();
        if cfg!(debug_assertions) && self.len() <= CROSS_CHECK_LIMIT {
            debug_assert_eq!(union_closed, self.satisfies_exchange());
            debug_assert_eq!(union_closed, self.has_interval_property());
        }
        union_closed
    }

    /// Feasible continuations `Γ(X) = {x ∈ E − X : X ∪ x ∈ F}`.
    pub fn feasible_continuations(&self, x: Subset) -> Result<Subset> {
        if !self.contains(x) {
            return Err(Error::Infeasible(x));
        }
        Ok(self.continuations_unchecked(x))
    }

    pub(crate) fn continuations_unchecked(&self, x: Subset) -> Subset {
        self.ground
            .full()
            .difference(x)
            .iter()
            .filter(|&e| self.contains(x.with(e)))
            .collect()
    }

    /// The basis `B_X`: the unique maximal feasible subset of `X`.
    pub fn basis_of(&self, x: Subset) -> Result<Subset> {
        if !self.is_union_closed() {
            return Err(Error::NotUnionClosed);
        }
        Ok(self.basis_unchecked(x))
    }

    /// Union of all feasible subsets of `x`; the basis when the family is
    /// union-closed.
    pub(crate) fn basis_unchecked(&self, x: Subset) -> Subset {
        self.sets
            .iter()
            .filter(|s| s.is_subset(x))
            .fold(Subset::EMPTY, |acc, &s| acc.union(s))
    }

    /// `ϱ(X)`: size of the largest feasible subset of `X` (0 when none).
    pub fn rank_of(&self, x: Subset) -> usize {
        self.sets
            .iter()
            .filter(|s| s.is_subset(x))
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
    }

    /// Rank of the family, `ϱ(E)`.
    pub fn rank(&self) -> usize {
        self.rank_of(self.ground.full())
    }

    /// `E_F`, the union of all feasible sets.
    pub fn max_feasible(&self) -> Result<Subset> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if !self.is_union_closed() {
            return Err(Error::NotUnionClosed);
        }
        Ok(self.union_of_all())
    }

    pub(crate) fn union_of_all(&self) -> Subset {
        self.sets.iter().fold(Subset::EMPTY, |acc, &s| acc.union(s))
    }

    /// `F_k`: the feasible sets with at most `k` elements.
    pub fn truncate(&self, k: usize) -> SetFamily {
        SetFamily {
            ground: self.ground.clone(),
            sets: self.sets.iter().copied().filter(|s| s.len() <= k).collect(),
        }
    }

    /// `Ω`: all unions of members of the family.
    pub fn close_under_union(&self) -> SetFamily {
        let mut seen: HashSet<Subset> = self.sets.iter().copied().collect();
        let mut all: Vec<Subset> = self.sets.clone();
        let mut frontier: Vec<Subset> = self.sets.clone();
        while let Some(s) = frontier.pop() {
            let mut fresh = Vec::new();
            for &t in &all {
                let u = s.union(t);
                if seen.insert(u) {
                    fresh.push(u);
                }
            }
            all.extend_from_slice(&fresh);
            frontier.extend(fresh);
        }
        all.sort_unstable();
        SetFamily {
            ground: self.ground.clone(),
            sets: all,
        }
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn fam(n: usize, lists: &[&[Element]]) -> SetFamily {
        SetFamily::from_lists(GroundSet::new(n).unwrap(), lists).unwrap()
    }

    fn s(xs: &[Element]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    #[test]
    fn accessibility() {
        assert!(fam(2, &[&[], &[1], &[1, 2]]).is_accessible());
        assert!(!fam(2, &[&[], &[1, 2]]).is_accessible());
        assert!(fixtures::p3_family().is_accessible());
        assert!(!fam(2, &[]).is_accessible());
        assert!(!fam(2, &[&[1]]).is_accessible());
    }

    #[test]
    fn exchange_axiom() {
        assert!(!fam(2, &[&[], &[1], &[2]]).satisfies_exchange());
        assert!(fam(2, &[&[], &[1], &[2], &[1, 2]]).satisfies_exchange());
        assert!(fixtures::p3_family().satisfies_exchange());
    }

    #[test]
    fn union_closure_predicate() {
        assert!(!fam(2, &[&[], &[1], &[2]]).is_union_closed());
        assert!(fam(2, &[&[]]).is_union_closed());
        assert!(fixtures::p3_family().is_union_closed());
    }

    #[test]
    fn interval_property() {
        assert!(!fam(2, &[&[], &[1], &[2]]).has_interval_property());
        assert!(SetFamily::power_set(GroundSet::new(2).unwrap()).has_interval_property());
        assert!(fixtures::p3_family().has_interval_property());
    }

    #[test]
    fn witnesses() {
        let f = fam(2, &[&[], &[1], &[2]]);
        assert_eq!(f.union_witness(), Some((s(&[1]), s(&[2]))));
        assert_eq!(f.exchange_witness(), Some((s(&[1]), s(&[2]))));
        assert_eq!(f.interval_witness(), Some((s(&[]), s(&[1]), 2)));
        assert_eq!(f.accessibility_witness(), None);
        assert_eq!(fam(2, &[&[], &[1, 2]]).accessibility_witness(), Some(s(&[1, 2])));
        assert_eq!(fam(2, &[&[1]]).accessibility_witness(), Some(s(&[])));
        assert_eq!(fixtures::p3_family().union_witness(), None);
    }

    #[test]
    fn antimatroid_predicate() {
        assert!(fixtures::p3_family().is_antimatroid());
        assert!(!fam(2, &[&[], &[1], &[2]]).is_antimatroid());
        assert!(!fam(2, &[&[], &[1, 2]]).is_antimatroid());
    }

    #[test]
    fn continuations() {
        let p3 = fixtures::p3_family();
        assert_eq!(p3.feasible_continuations(s(&[])).unwrap(), s(&[1]));
        assert_eq!(p3.feasible_continuations(s(&[1])).unwrap(), s(&[2, 3]));
        assert_eq!(p3.feasible_continuations(s(&[1, 2, 3])).unwrap(), s(&[]));
        assert_eq!(
            p3.feasible_continuations(s(&[2])),
            Err(Error::Infeasible(s(&[2])))
        );
    }

    #[test]
    fn bases() {
        let p3 = fixtures::p3_family();
        assert_eq!(p3.basis_of(s(&[2, 3])).unwrap(), s(&[]));
        assert_eq!(p3.basis_of(s(&[1, 2])).unwrap(), s(&[1, 2]));
        assert_eq!(p3.basis_of(s(&[2])).unwrap(), s(&[]));
        assert_eq!(
            fam(2, &[&[], &[1], &[2]]).basis_of(s(&[1, 2])),
            Err(Error::NotUnionClosed)
        );
    }

    #[test]
    fn ranks() {
        let p3 = fixtures::p3_family();
        assert_eq!(p3.rank_of(s(&[2, 3])), 0);
        assert_eq!(p3.rank(), 3);
        assert_eq!(p3.truncate(2).rank(), 2);
    }

    #[test]
    fn maximal_feasible_set() {
        assert_eq!(fixtures::p3_family().max_feasible().unwrap(), s(&[1, 2, 3]));
        assert_eq!(fam(3, &[&[], &[1], &[1, 3]]).max_feasible().unwrap(), s(&[1, 3]));
        assert_eq!(fam(3, &[&[]]).max_feasible().unwrap(), s(&[]));
        assert_eq!(fam(3, &[&[], &[1], &[2]]).max_feasible(), Err(Error::NotUnionClosed));
        assert_eq!(fam(3, &[]).max_feasible(), Err(Error::EmptyFamily));
    }

    #[test]
    fn truncation() {
        let p3 = fixtures::p3_family();
        assert_eq!(p3.truncate(2), fam(3, &[&[], &[1], &[1, 2], &[1, 3]]));
        assert_eq!(p3.truncate(0), fam(3, &[&[]]));
        assert_eq!(p3.truncate(3), p3);
    }

    #[test]
    fn union_closure() {
        assert_eq!(
            fam(3, &[&[], &[1], &[1, 2], &[1, 3]]).close_under_union(),
            fixtures::p3_family()
        );
        assert_eq!(fixtures::p3_family().close_under_union(), fixtures::p3_family());
        assert_eq!(
            fam(2, &[&[], &[1], &[2]]).close_under_union(),
            fam(2, &[&[], &[1], &[2], &[1, 2]])
        );
    }

    #[test]
    fn canonical_storage_order() {
        let f = fam(3, &[&[1, 2, 3], &[1, 3], &[], &[1, 2], &[1], &[1]]);
        let rendered: Vec<String> = f.iter().map(|x| x.to_string()).collect();
        assert_eq!(rendered, ["{}", "{1}", "{1,2}", "{1,3}", "{1,2,3}"]);
    }

    fn arb_family(n: usize) -> impl Strategy<Value = SetFamily> {
        let size = 1usize << n;
        proptest::collection::vec(0..size as u64, 0..size).prop_map(move |bits| {
            SetFamily::new(
                GroundSet::new(n).unwrap(),
                bits.into_iter().map(Subset::from_bits),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn closure_is_idempotent_and_monotone(f in arb_family(4)) {
            let c = f.close_under_union();
            prop_assert!(f.is_subfamily(&c));
            prop_assert!(c.is_union_closed());
            prop_assert_eq!(c.close_under_union(), c.clone());
        }

        #[test]
        fn truncation_is_a_subfamily(f in arb_family(4), k in 0usize..5) {
            let t = f.truncate(k);
            prop_assert!(t.is_subfamily(&f));
            prop_assert!(t.iter().all(|s| s.len() <= k));
        }

        #[test]
        fn rank_is_max_size(f in arb_family(4)) {
            let max = f.iter().map(|s| s.len()).max().unwrap_or(0);
            prop_assert_eq!(f.rank(), max);
        }

        #[test]
        fn basis_contains_every_feasible_subset(f in arb_family(4), x in 0u64..16) {
            let f = f.close_under_union();
            let x = Subset::from_bits(x);
            let b = f.basis_of(x).unwrap();
            prop_assert!(b.is_subset(x));
            prop_assert!(b.is_empty() || f.contains(b));
            for &y in f.iter().filter(|y| y.is_subset(x)) {
                prop_assert!(y.is_subset(b));
            }
        }

        #[test]
        fn continuations_are_isotone_on_antimatroids(seed in any::<u64>(), n in 1usize..=5) {
            let f = crate::oracle::random_isotone_operator(seed, n).unwrap().family();
            let outside = f.ground().full();
            for &x in f.iter() {
                for &y in f.iter().filter(|y| x.is_subset(**y)) {
                    let gx = f.feasible_continuations(x).unwrap();
                    let gy = f.feasible_continuations(y).unwrap();
                    prop_assert!(gx.intersection(outside.difference(y)).is_subset(gy));
                }
            }
        }
    }
}
