use thiserror::Error;

use crate::report::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("carrier must be nonempty")]
    EmptyCarrier,
    #[error("carrier size {size} exceeds the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("powerset construction on a carrier of size {size} exceeds the cap of {cap}")]
    PowersetCapExceeded { size: usize, cap: usize },
    #[error("table {table} has the wrong shape: expected {expected} entries, found {found}")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("index {index} in table {table} is out of range for a carrier of size {size}")]
    IndexOutOfRange {
        table: &'static str,
        index: usize,
        size: usize,
    },
    #[error("element {elem} has no unique additive inverse ({count} candidates)")]
    NoUniqueInverse { elem: usize, count: usize },
    #[error("could not locate epsilon: {count} units u satisfy 1 + u null")]
    EpsilonNotUnique { count: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("subset is not a multiplicative subgroup of the units: {0}")]
    NotASubgroup(String),
    #[error("map is not multiplicative on units: f({a})f({b}) != f({a}{b})")]
    NotMultiplicative { a: usize, b: usize },
    #[error("hyperfield is not doubly distributive ({0})")]
    NotDoublyDistributive(Violation),
    #[error("sum closure is not closed under multiplication ({0})")]
    NotMultiplicativelyClosed(Violation),
    #[error("partial demifield fails the iterated-sum compatibility condition ({0})")]
    NotInEssentialImage(Violation),
    #[error("window bound {0} is outside the supported range 1..=9")]
    WindowOutOfRange(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
