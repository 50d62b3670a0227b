use thiserror::Error;

use crate::subset::{Element, Subset};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..=64")]
    GroundSize(usize),

    #[error("element {element} is outside the ground set 1..={n}")]
    ElementOutOfRange { element: Element, n: usize },

    #[error("labels: {0}")]
    Labels(String),

    #[error("set {0} is not feasible")]
    Infeasible(Subset),

    #[error("family is not closed under union")]
    NotUnionClosed,

    #[error("family is empty")]
    EmptyFamily,

    #[error("not an antimatroid: {0}")]
    NotAntimatroid(String),

    #[error("poset covers contain a cycle through element {0}")]
    PosetCycle(Element),

    #[error("operator value {value} at {set} intersects the set")]
    ZeroViolation { set: Subset, value: Subset },

    #[error("duplicate table entry for {0}")]
    DuplicateEntry(String),

    #[error("{what} over n={n} exceeds the exhaustive limit {limit}; {hint}")]
    ScopeTooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("linkage is undefined at ({element}, {set}): element belongs to the set")]
    LinkageDomain { element: Element, set: Subset },

    #[error("linkage table has no entry for ({element}, {set})")]
    MissingLinkage { element: Element, set: Subset },

    #[error("invalid linkage: {0}")]
    InvalidLinkage(String),

    #[error("linkage not monotone: pi({element}, {smaller}) < pi({element}, {larger})")]
    NotMonotone {
        element: Element,
        smaller: Subset,
        larger: Subset,
    },

    #[error("objective undefined at {0}: no candidate elements")]
    EmptyMinimum(Subset),

    #[error("operator is empty at non-maximal feasible set {0}")]
    Stuck(Subset),

    #[error("not a witness for this operator: {0}")]
    BadWitness(String),

    #[error("word {0} is not simple or not over the ground set")]
    BadWord(String),

    #[error("language does not contain the empty word")]
    MissingEmptyWord,

    #[error("not an antimatroid language: {0}")]
    NotAntimatroidLanguage(String),

    #[error("word length {k} exceeds the rank {rank}")]
    RankExceeded { k: usize, rank: usize },

    #[error("empty word")]
    EmptyWord,

    #[error("operator is not isotone: {0}")]
    NotIsotone(String),

    #[error("oracle budget exceeded: {0}")]
    Budget(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
