//! Ordinal submodularity on finite Boolean lattices.
//!
//! A [`SetFunction`] assigns every subset of a small ground set a value in a
//! totally ordered codomain (integers, exact rationals or ordered labels).
//! The crate decides membership in the ordinal submodularity classes
//! ([`class`]), finds and certifies minimizers through interval-local
//! optimality ([`minimize`]), builds the level-set chain of a function
//! ([`hierarchy`]), and enumerates small functions exhaustively to check the
//! relationships between all of these ([`gen`], [`verify`]).
//!
//! ```
//! use ordsub::{classify, certify_global_min, ConditionId, SetFunction, Subset};
//!
//! // f(∅) = 1, f({a}) = 0, f({b}) = 2, f({a,b}) = 3
//! let f = SetFunction::ints(&[1, 0, 2, 3]).unwrap();
//! let report = classify(&f);
//! assert!(report.holds(ConditionId::Q4));
//! assert!(!report.holds(ConditionId::Q3));
//!
//! let cert = certify_global_min(&f, Subset(0b01)).unwrap();
//! assert!(cert.global());
//! ```

pub mod class;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gen;
pub mod hierarchy;
pub mod minimize;
mod par;
pub mod predicate;
pub mod setfn;
pub mod subset;
pub mod value;
pub mod verify;

pub use class::{
    check_condition, check_condition_par, classify, classify_par, holds_at_pair, is_injective,
    is_ordinary_submodular, pairwise_q3_equivalence, ClassReport, ConditionId, ConditionWitness, Outcome,
};
pub use error::{Error, Result};
pub use hierarchy::{check_qh, family_chain, level_family, levels, qh_from_chain, LevelChain, LevelValues};
pub use minimize::{
    argmin, argmin_lattice_closure, certify_global_min, constrained_minimize, interval_descent,
    is_interval_local_min, is_lower_interval_min, lift_to_global, ArgminSet, DescentTrace, Hypothesis,
    MinimalityCertificate,
};
pub use predicate::Predicate;
pub use setfn::SetFunction;
pub use subset::{GroundSet, Interval, Subset};
pub use value::{Codomain, OrdinalValue};
