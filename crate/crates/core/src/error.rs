// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be a unit vector (norm is {norm})")]
    NonUnitVector { what: &'static str, norm: f64 },

    #[error("{0} must be non-zero")]
    ZeroVector(&'static str),

    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),

    #[error("{0} must be finite")]
    NonFinite(&'static str),

    #[error("trial count must be at least 1")]
    InvalidTrials,

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("exponential series did not converge within {terms} terms")]
    SeriesNotConverged { terms: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("transform is not in the image of the spin group (imaginary trace residue {0:e})")]
    NotInSpinGroup(f64),

    #[error("generator does not square to -1 (residual {0:e})")]
    BadGenerator(f64),

    #[error("closed-form factors do not reproduce the element (residual {0:e})")]
    FactorMismatch(f64),

    #[error("W W^dagger is not positive definite")]
    NotPositiveDefinite,

    #[error("every canonical seed projects to a null bispinor")]
    DegenerateProjector,
}

pub type Result<T> = std::result::Result<T, Error>;
