// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! Simulation of photonic logic gates whose two-photon failure events are
//! suppressed by the quantum Zeno effect.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`]: two-mode bosonic Fock space and operator matrices.
//! * [`linalg`]: small dense complex linear algebra (matrix exponential,
//!   Hermiticity and unitarity checks).
//! * [`dynamics`]: Schrödinger evolution, no-double-occupancy projections and
//!   density-matrix evolution with two-photon absorption.
//! * [`gate`]: the coupled-fiber √SWAP′ gate, error curves and the
//!   controlled-Z composition.
//! * [`fermion`]: the non-interacting fermion twin system and time-averaged
//!   dressed operators.
//! * [`absorption`]: physical two-photon absorption rate estimates.
//! * [`encoding`]: two-photon logical encoding and its failure threshold.
//!
//! Time in [`dynamics`], [`gate`] and [`fermion`] is dimensionless, measured in
//! units of ħ/ε where ε is the inter-core coupling energy.

// Negated comparisons are how NaN parameters get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod absorption;
pub mod dynamics;
pub mod encoding;
pub mod error;
pub mod fermion;
pub mod fock;
pub mod gate;
pub mod linalg;

pub use error::{Error, Result};
pub use fock::{FockBasis, FockState, StateVector};
pub use linalg::ComplexMatrix;

pub use num_complex::Complex64;
