//! Executable algebra of hyperrings and fuzzy rings.
//!
//! Finite hyperrings and hyperfields, Dress fuzzy rings, the powerset
//! functor `F` from hyperrings to fuzzy rings and its quasi-inverse `G` on
//! field-like fuzzy rings, the reduced functor on doubly distributive
//! hyperfields, the ordered-group hyperfield `H_Z` and fuzzy ring `K_Z` on
//! finite windows, and Grassmann-Pluecker functions with coefficients.
//!
//! Every structure lives on a carrier `{0, .., n-1}` with `0` the additive
//! and `1` the multiplicative identity.

pub mod carrier;
pub mod ddhyper;
pub mod error;
pub mod functors;
pub mod fuzzy;
pub mod hyper;
pub mod io;
pub mod matroid;
pub mod ordgrp;
pub mod report;
pub mod ring;

pub use carrier::{extend_hyperop, iterated_hypersum, ElementIndex, HyperAddTable, SubsetMask};
pub use error::{Error, Result};
pub use functors::PowersetFuzzyRing;
pub use fuzzy::{ClosureCertificate, FiniteFuzzyRing, FuzzyRing, MorphismKind, MorphismTable};
pub use hyper::{AbelianGroup, FiniteHyperring};
pub use report::{AxiomReport, Violation};
pub use ring::FiniteRing;

/// Closed rational intervals, the values of the triangle hyperfield.
pub type RationalInterval = ddhyper::Interval<num_rational::Ratio<i64>>;
/// `H_Z`: elements of the hyperfield of the ordered group `(Z, +)`.
pub type HZ = ordgrp::OGElem<i64>;
/// `K_Z`: elements of the Dress-Wenzel fuzzy ring of `(Z, +)`.
pub type KZ = ordgrp::OGSubset<i64>;
