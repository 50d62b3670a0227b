use crate::error::{Error, Result};
use crate::subset::{Element, GroundSet, Subset};

/// A partial order on the ground set given by cover pairs `(a, b)`, `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    ground: GroundSet,
    covers: Vec<(Element, Element)>,
    /// `below[y - 1]`: every element strictly below `y`.
    below: Vec<Subset>,
}

impl Poset {
    pub fn new(ground: GroundSet, covers: Vec<(Element, Element)>) -> Result<Self> {
        let n = ground.len();
        let mut below = vec![Subset::EMPTY; n];
        for &(a, b) in &covers {
            ground.check_element(a)?;
            ground.check_element(b)?;
            below[b - 1] = below[b - 1].with(a);
        }
        // transitive closure by fixpoint
        loop {
            let mut changed = false;
            for y in 0..n {
                let grown = below[y]
                    .iter()
                    .fold(below[y], |acc, z| acc.union(below[z - 1]));
                if grown != below[y] {
                    below[y] = grown;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(y) = (1..=n).find(|&y| below[y - 1].contains(y)) {
            return Err(Error::PosetCycle(y));
        }
        Ok(Poset {
            ground,
            covers,
            below,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn covers(&self) -> &[(Element, Element)] {
        &self.covers
    }

    /// Strict comparison `a < b` in the transitive closure.
    pub fn less(&self, a: Element, b: Element) -> bool {
        (1..=self.ground.len()).contains(&b) && self.below[b - 1].contains(a)
    }

    /// Elements of `s` with nothing of `s` strictly below them.
    pub fn minimal_elements(&self, s: Subset) -> Subset {
        s.iter()
            .filter(|&y| self.below[y - 1].is_disjoint(s))
            .collect()
    }

    /// Whether `s` is an order ideal (down-closed).
    pub fn is_ideal(&self, s: Subset) -> bool {
        s.iter().all(|y| self.below[y - 1].is_subset(s))
    }
}
