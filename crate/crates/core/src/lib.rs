//! Antimatroids through three lenses: union-closed accessible set families,
//! isotone operators that generate them, and antimatroid languages.
//!
//! Elements are `1..=n` with `n ≤ 64`; subsets are bitmasks ([`Subset`]).
//! The chain algorithm ([`chain::run_chain`]) maximizes `F_Ψ` for an
//! isotone operator and a monotone linkage function, and
//! [`correspondence::verify_correspondence`] checks its link to the greedy
//! solution of the minimax nesting problem.

pub mod chain;
pub mod correspondence;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod instance;
pub mod language;
pub mod linkage;
pub mod operator;
pub mod oracle;
pub mod poset;
pub mod subset;

pub use chain::{run_chain, run_chain_from, run_chain_nonempty, ChainStep, ChainTrace, OptResult};
pub use correspondence::{bridge_f_from_pi, shortest_critical_prefix, verify_correspondence, BridgedNesting, CorrespondenceReport};
pub use error::{Error, Result};
pub use family::SetFamily;
pub use instance::{Instance, InstanceError};
pub use language::{greedy_minimax, nesting_w, NestingFunction, SimpleLanguage, Word};
pub use linkage::{failure_linkage, FailureParams, LinkageSpec, MonotoneWitness};
pub use operator::{GenerationTrace, IsotoneScope, IsotoneWitness, KIsotoneWitness, OperatorSpec};
pub use poset::Poset;
pub use subset::{Element, GroundSet, Subset};
