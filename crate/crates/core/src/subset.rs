//! Ground sets and bit-characteristic subsets.
//!
//! Elements are the identifiers `1..=n`; element `x` occupies bit `x - 1` of a
//! `u64`, so ground sets hold at most 64 elements. Subsets order canonically
//! by size first and then lexicographically by their sorted element lists, so
//! `{} < {1} < {2} < {1,2} < {1,3} < {2,3} < {1,2,3}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Element = usize;

pub const MAX_GROUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize(n));
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(n: usize, labels: Vec<String>) -> Result<Self> {
        let mut ground = GroundSet::new(n)?;
        if labels.len() != n {
            return Err(Error::Labels(format!(
                "expected {n} labels, found {}",
                labels.len()
            )));
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Labels(format!("duplicate label {:?}", w[0])));
        }
        ground.labels = Some(labels);
        Ok(ground)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `x`: its label when labels are present, else the identifier.
    pub fn label(&self, x: Element) -> String {
        match &self.labels {
            Some(labels) if (1..=self.n).contains(&x) => labels[x - 1].clone(),
            _ => x.to_string(),
        }
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<Element> {
        1..=self.n
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        if x == 0 || x > self.n {
            Err(Error::ElementOutOfRange {
                element: x,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn check(&self, s: Subset) -> Result<()> {
        match s.difference(self.full()).min() {
            Some(x) => Err(Error::ElementOutOfRange {
                element: x,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    /// Builds a subset from identifiers, rejecting any outside `1..=n`.
    pub fn subset<I: IntoIterator<Item = Element>>(&self, elements: I) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        for x in elements {
            self.check_element(x)?;
            s = s.with(x);
        }
        Ok(s)
    }

    /// Every subset of the ground set in canonical order.
    pub fn all_subsets(&self) -> Vec<Subset> {
        let mut all: Vec<Subset> = self.full().subsets().collect();
        all.sort();
        all
    }
}

/// A subset of the ground set, stored as its characteristic bit vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_GROUND, "ground set larger than {MAX_GROUND}");
        if n == MAX_GROUND {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: Element) -> Subset {
        assert!((1..=MAX_GROUND).contains(&x), "element {x} out of range");
        Subset(1u64 << (x - 1))
    }

    /// Panics on identifiers outside `1..=64`; use [`GroundSet::subset`] for
    /// untrusted input.
    pub fn from_elements<I: IntoIterator<Item = Element>>(elements: I) -> Subset {
        elements
            .into_iter()
            .fold(Subset::EMPTY, |s, x| s.union(Subset::singleton(x)))
    }

    pub const fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: Element) -> bool {
        (1..=MAX_GROUND).contains(&x) && self.0 & (1u64 << (x - 1)) != 0
    }

    pub fn with(self, x: Element) -> Subset {
        self.union(Subset::singleton(x))
    }

    pub fn without(self, x: Element) -> Subset {
        self.difference(Subset::singleton(x))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Element + 1)
    }

    pub fn max(self) -> Option<Element> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as Element)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self` (carry-rippler order, starting at the empty set).
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: 0,
            done: false,
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // the lowest differing element belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<Element> for Subset {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

impl IntoIterator for Subset {
    type Item = Element;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as Element + 1;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Subsets {
    set: u64,
    next: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let current = self.next;
        self.next = self.next.wrapping_sub(self.set) & self.set;
        self.done = self.next == 0;
        Some(Subset(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(xs: &[Element]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    #[test]
    fn canonical_order_on_three_elements() {
        let ground = GroundSet::new(3).unwrap();
        let rendered: Vec<String> = ground.all_subsets().iter().map(|x| x.to_string()).collect();
        assert_eq!(
            rendered,
            ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
    }

    #[test]
    fn full_and_extremes() {
        assert_eq!(Subset::full(64).len(), 64);
        assert_eq!(Subset::full(0), Subset::EMPTY);
        assert_eq!(s(&[3, 7]).min(), Some(3));
        assert_eq!(s(&[3, 7]).max(), Some(7));
        assert_eq!(Subset::EMPTY.max(), None);
        assert!(Subset::singleton(64).contains(64));
        assert!(!s(&[1]).contains(0));
    }

    #[test]
    fn ground_rejects_bad_input() {
        assert_eq!(GroundSet::new(0), Err(Error::GroundSize(0)));
        assert_eq!(GroundSet::new(65), Err(Error::GroundSize(65)));
        let g = GroundSet::new(3).unwrap();
        assert!(g.subset([1, 4]).is_err());
        assert!(g.subset([0]).is_err());
        assert!(g.check(s(&[4])).is_err());
        assert!(GroundSet::with_labels(2, vec!["a".into(), "a".into()]).is_err());
        assert!(GroundSet::with_labels(2, vec!["a".into()]).is_err());
        let labelled = GroundSet::with_labels(2, vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(labelled.label(2), "b");
    }

    #[test]
    fn subsets_enumerates_everything_once() {
        let all: Vec<Subset> = s(&[1, 3, 4]).subsets().collect();
        assert_eq!(all.len(), 8);
        let mut bits: Vec<u64> = all.iter().map(|x| x.bits()).collect();
        bits.sort();
        bits.dedup();
        assert_eq!(bits.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(s(&[1, 3, 4]))));
    }

    proptest! {
        #[test]
        fn order_is_total_and_size_first(a in any::<u64>(), b in any::<u64>()) {
            let (x, y) = (Subset::from_bits(a), Subset::from_bits(b));
            prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
            prop_assert_eq!(x.cmp(&y) == Ordering::Equal, a == b);
            if x.len() < y.len() {
                prop_assert!(x < y);
            }
        }

        #[test]
        fn order_matches_sorted_element_lists(a in 0u64..1024, b in 0u64..1024) {
            let (x, y) = (Subset::from_bits(a), Subset::from_bits(b));
            let lx: Vec<Element> = x.iter().collect();
            let ly: Vec<Element> = y.iter().collect();
            let expected = lx.len().cmp(&ly.len()).then_with(|| lx.cmp(&ly));
            prop_assert_eq!(x.cmp(&y), expected);
        }
    }
}
