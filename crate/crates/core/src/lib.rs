//! Credibility functions over finite frames and the pignistic decision
//! pipeline of the transferable belief model.
//!
//! A credibility function ([`capacity::Capacity`]) holds one value per
//! subset of a [`frame::Frame`]. It can be built from basic belief masses,
//! probabilities or possibility distributions, converted to and from its
//! Möbius transforms ([`moebius`]), combined and conditioned
//! ([`calculus`]), and turned into the pignistic probability
//! ([`pignistic`]) that drives expected-utility decisions ([`decision`]).

pub mod calculus;
pub mod capacity;
pub mod cli;
pub mod decision;
pub mod error;
pub mod frame;
pub mod moebius;
pub mod oracle;
pub mod pignistic;

pub use capacity::{Capacity, CapacityKind, MassFunction, PossibilityDistribution};
pub use error::{Error, Result};
pub use frame::{Frame, Permutation, Subset, SubsetFilter};
pub use pignistic::{gamma, PignisticResult, Route};

/// Absolute tolerance for construction and validation checks.
pub const EPS: f64 = 1e-9;

/// Absolute tolerance for identity checks (null atoms, sign tests).
pub const EPS_IDENTITY: f64 = 1e-12;
