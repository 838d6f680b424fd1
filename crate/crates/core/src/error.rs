// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid mode index {mode}: expected 1..={num_modes}")]
    InvalidMode { mode: usize, num_modes: usize },

    #[error("state {0} is not in the basis")]
    StateNotInBasis(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (max |H - H†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("step size {dt:e} exceeds the allowed maximum {max:e}")]
    StepTooLarge { dt: f64, max: f64 },

    #[error("positivity lost during integration: minimum eigenvalue {min_eigenvalue:e}")]
    PositivityViolation { min_eigenvalue: f64 },

    #[error("quadrature did not converge: grid halving changed the result by {change:e}")]
    QuadratureNotConverged { change: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}
