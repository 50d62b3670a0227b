//! Small canonical instances shared by tests, examples and the CLI goldens.

use crate::family::SetFamily;
use crate::linkage::LinkageSpec;
use crate::operator::OperatorSpec;
use crate::poset::Poset;
use crate::subset::{GroundSet, Subset};

fn ground3() -> GroundSet {
    GroundSet::new(3).expect("n = 3 is valid")
}

/// Poset-minimum operator on `{1,2,3}` with `1 < 2` and `1 < 3`.
pub fn p3_operator() -> OperatorSpec {
    let poset = Poset::new(ground3(), vec![(1, 2), (1, 3)]).expect("acyclic");
    OperatorSpec::poset_min(poset)
}

/// `{∅, {1}, {1,2}, {1,3}, {1,2,3}}`, the family generated by [`p3_operator`].
pub fn p3_family() -> SetFamily {
    SetFamily::from_lists(ground3(), &[&[], &[1], &[1, 2], &[1, 3], &[1, 2, 3]])
        .expect("valid fixture")
}

/// `π(x, X) = w_x − |X|` with `w = (1, 6, 3)`.
pub fn w136() -> LinkageSpec {
    LinkageSpec::weight_minus_size(ground3(), vec![1.0, 6.0, 3.0]).expect("valid fixture")
}

/// A non-isotone table operator on `{1,2,3}`; its first witness is `(∅, {2}, 1)`.
pub fn n3_operator() -> OperatorSpec {
    let s = |xs: &[usize]| Subset::from_elements(xs.iter().copied());
    OperatorSpec::table(
        ground3(),
        [
            (s(&[]), s(&[1, 2])),
            (s(&[1]), s(&[2, 3])),
            (s(&[2]), s(&[3])),
            (s(&[1, 2]), s(&[3])),
            (s(&[1, 3]), s(&[2])),
            (s(&[2, 3]), s(&[1])),
        ],
    )
    .expect("valid fixture")
}

/// Single linkage on three points with `d₁₂ = 1`, `d₁₃ = 4`, `d₂₃ = 2`.
pub fn single_linkage3() -> LinkageSpec {
    LinkageSpec::single_linkage(
        ground3(),
        vec![
            vec![0.0, 1.0, 4.0],
            vec![1.0, 0.0, 2.0],
            vec![4.0, 2.0, 0.0],
        ],
        None,
    )
    .expect("valid fixture")
}
