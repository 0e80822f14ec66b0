//! Exact-arithmetic engine for the degree-1 weight modules `N(a1, a2)` of
//! `sl(2n)` and the branching of their restriction to the dual pair
//! `(sl2, sln)`.
//!
//! Everything here is computed over exact rationals: there is no floating
//! point anywhere in the crate. Module parameters `a1`, `a2` are non-integer
//! rationals; this is a restriction of the general complex-parameter setting,
//! but every vanishing condition the correspondence depends on (expressions
//! like `a1 + b + j` or `a1 - a2 + 2b + c - (n - 2)`) is decided exactly
//! over the rationals, so no phenomenon is lost at desk scale.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod branching;
pub mod dualpair;
pub mod linalg;
pub mod scalar;
pub mod singular;
pub mod verify;
pub mod weyl;

pub use scalar::Scalar;
pub use weyl::{BasisIndex, ModuleParams, Operator, WeightVector};

use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rational with denominator zero.
    ZeroDenominator,
    /// Division by an exactly-zero scalar.
    DivisionByZero,
    /// A module parameter slot received an integer value.
    IntegerParameter(String),
    /// Generator position outside `0..2n`.
    IndexOutOfRange { index: usize, len: usize },
    /// Offset vector of the wrong length or violating a sign constraint.
    BadIndex(String),
    /// The zero vector has no weight.
    ZeroVector,
    /// Terms of the vector carry different weights.
    NotWeightVector,
    /// Vector is not a simultaneous eigenvector of the requested operators.
    NotEigenvector(String),
    /// Joint kernel dimension differs from the expected value.
    KernelDimension { expected: usize, found: usize },
    /// The Z-intertwiner check did not reproduce the predicted multiple.
    IntertwinerMismatch(String),
    /// `n < 2` or a similarly unusable parameter set.
    BadParams(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "denominator must be nonzero"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::IntegerParameter(slot) => {
                write!(f, "parameter {slot} must be a non-integer rational")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "generator position {index} out of range 0..{len}")
            }
            Error::BadIndex(msg) => write!(f, "bad basis index: {msg}"),
            Error::ZeroVector => write!(f, "the zero vector has no weight"),
            Error::NotWeightVector => write!(f, "not a weight vector"),
            Error::NotEigenvector(op) => write!(f, "not an eigenvector of {op}"),
            Error::KernelDimension { expected, found } => {
                write!(f, "kernel dimension {found}, expected {expected}")
            }
            Error::IntertwinerMismatch(msg) => write!(f, "Z-intertwiner mismatch: {msg}"),
            Error::BadParams(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}
