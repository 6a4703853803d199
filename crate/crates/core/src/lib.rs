//! Formal auditing of individual decisions made by Boolean classifiers.
//!
//! The crate computes subset-minimal abductive explanations (sufficient
//! reasons) for a decision, optionally restricted to the individuals allowed
//! by propositional background knowledge, and builds three audits on top of
//! them:
//!
//! * explicit bias: every minimal explanation mentions the protected feature;
//! * proxy discrimination: the explanations that avoid the protected feature
//!   still pin its value once the background knowledge is taken into account;
//! * individual fairness: some explanation has a counterpart in the other
//!   subgroup, obtained through a user-supplied mapping, that is sufficient
//!   for the same decision.
//!
//! Everything is exhaustive over at most [`MAX_FEATURES`] Boolean features.
//! The crate is `no_std` and only needs `alloc`; file formats and the command
//! line live in the `fairxp` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod bias;
pub mod explain;
pub mod fairness;
pub mod knowledge;
pub mod logic;
pub mod model;

pub use error::Error;
pub use logic::{
    FeatureId, FeatureSpace, Formula, Individual, Literal, PartialAssignment, MAX_FEATURES,
};
pub use model::{Classifier, Decision, DecisionModel, ModelOverride};

pub type Result<T, E = Error> = core::result::Result<T, E>;
