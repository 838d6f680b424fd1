// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! State propagation for the coupled-core system.
//!
//! Three evolutions are provided:
//!
//! * [`evolve_state`]: closed Schrödinger evolution `exp(-iHt)|ψ⟩` (ħ = 1).
//! * [`project_no_double_occupancy`]: an ideal measurement that asks whether
//!   any core holds two photons and keeps the "no" branch.
//! * [`evolve_density_matrix`]: fixed-step RK4 integration of
//!   `ρ̇ = -i[H, ρ] - D(ρ)` where `D` removes population from doubly
//!   occupied states at rate `1/τ_D`.
//!
//! The absorption term is written as an amplitude decay: each absorbed state
//! `d` carries rate `γ_d = 1/τ_D`, and `D(ρ)_ij = (γ_i + γ_j)/2 · ρ_ij`.
//! Populations of absorbed states therefore decay at `1/τ_D`, and coherences
//! between an absorbed and an unabsorbed state at `1/(2τ_D)`. Equivalently
//! `ρ̇ = Kρ + ρK†` with `K = -iH - Γ/2`. The absorbed probability leaves the
//! simulated space and is tallied in [`DensityEvolution::absorbed`].

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockBasis, StateVector};
use crate::linalg::{self, ComplexMatrix, I};

/// Success probabilities at or below this are treated as an empty branch.
pub const UNDEFINED_BRANCH_PROBABILITY: f64 = 1e-24;

/// Largest RK4 step allowed regardless of the absorption time.
pub const MAX_STEP: f64 = 0.01;

const HERMITIAN_TOLERANCE: f64 = 1e-12;
const DENSITY_HERMITIAN_TOLERANCE: f64 = 1e-10;
const DENSITY_EIGENVALUE_TOLERANCE: f64 = 1e-9;
const DENSITY_TRACE_TOLERANCE: f64 = 1e-9;
const POSITIVITY_DIAGNOSTIC_TOLERANCE: f64 = 1e-6;

fn check_hamiltonian(h: &ComplexMatrix, dim: usize) -> Result<()> {
    if h.nrows() != dim || h.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: h.nrows(),
        });
    }
    if !linalg::all_finite(h) {
        return Err(Error::NonFinite("Hamiltonian"));
    }
    let deviation = linalg::hermitian_deviation(h);
    if deviation > HERMITIAN_TOLERANCE * linalg::max_abs(h).max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// `exp(-iHt)` for Hermitian `h`.
pub fn unitary_propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    check_hamiltonian(h, h.nrows())?;
    Ok(linalg::matrix_exponential(h, -I * t))
}

/// `exp(-iHt)|ψ₀⟩`.
pub fn evolve_state(h: &ComplexMatrix, psi0: &StateVector, t: f64) -> Result<StateVector> {
    check_hamiltonian(h, psi0.basis().dim())?;
    psi0.apply(&linalg::matrix_exponential(h, -I * t))
}

/// Outcome of a no-double-occupancy measurement.
#[derive(Debug, Clone)]
pub struct Projection {
    /// The projected state before renormalisation.
    pub survivor: StateVector,
    /// Squared norm of `survivor`; the failure probability is `1 - success`.
    pub success_probability: f64,
    /// The renormalised post-measurement state, or `None` when the
    /// surviving branch is empty.
    pub state: Option<StateVector>,
}

impl Projection {
    pub fn failure_probability(&self) -> f64 {
        1.0 - self.success_probability
    }

    pub fn is_undefined(&self) -> bool {
        self.state.is_none()
    }
}

/// Zeroes amplitudes on doubly occupied states and reports the surviving norm.
pub fn project_no_double_occupancy(psi: &StateVector) -> Projection {
    let mut amplitudes = psi.amplitudes().clone();
    for idx in psi.basis().double_occupancy_indices() {
        amplitudes[idx] = Complex64::from(0.0);
    }
    let success_probability: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    let survivor = psi.with_amplitudes(amplitudes);
    let state = (success_probability > UNDEFINED_BRANCH_PROBABILITY).then(|| {
        let scale = Complex64::from(1.0 / success_probability.sqrt());
        survivor.with_amplitudes(survivor.amplitudes() * scale)
    });
    Projection {
        survivor,
        success_probability,
        state,
    }
}

/// Hermitian, positive semidefinite operator with trace ≤ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    basis: FockBasis,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(basis: FockBasis, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                actual: matrix.nrows(),
            });
        }
        if !linalg::all_finite(&matrix) {
            return Err(Error::NonFinite("density matrix"));
        }
        let deviation = linalg::hermitian_deviation(&matrix);
        if deviation > DENSITY_HERMITIAN_TOLERANCE {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (max |ρ - ρ†| = {deviation:e})"
            )));
        }
        let trace = linalg::trace(&matrix).re;
        if !(-DENSITY_TRACE_TOLERANCE..=1.0 + DENSITY_TRACE_TOLERANCE).contains(&trace) {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace} outside [0, 1]")));
        }
        let min_eigenvalue = linalg::hermitian_eigenvalues(&matrix)[0];
        if min_eigenvalue < -DENSITY_EIGENVALUE_TOLERANCE {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eigenvalue:e}"
            )));
        }
        Ok(Self { basis, matrix })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let v = psi.amplitudes();
        Self::new(psi.basis().clone(), v * v.adjoint())
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.matrix).re
    }

    pub fn population(&self, state: &crate::fock::FockState) -> Result<f64> {
        let idx = self.basis.require_index(state)?;
        Ok(self.matrix[(idx, idx)].re)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigenvalues(&self.matrix)[0]
    }
}

/// Two-photon absorption acting on every doubly occupied state.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionChannel {
    tau_d: f64,
    absorbed_states: Vec<usize>,
}

impl AbsorptionChannel {
    /// Channel with decay time `tau_d` (ħ/ε units). `f64::INFINITY` disables
    /// absorption.
    pub fn two_photon(basis: &FockBasis, tau_d: f64) -> Result<Self> {
        if tau_d.is_nan() || tau_d <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "tau_d",
                reason: format!("must be positive, got {tau_d}"),
            });
        }
        Ok(Self {
            tau_d,
            absorbed_states: basis.double_occupancy_indices(),
        })
    }

    pub fn disabled(basis: &FockBasis) -> Self {
        Self {
            tau_d: f64::INFINITY,
            absorbed_states: basis.double_occupancy_indices(),
        }
    }

    pub fn tau_d(&self) -> f64 {
        self.tau_d
    }

    pub fn absorbed_states(&self) -> &[usize] {
        &self.absorbed_states
    }

    /// Population decay rate `1/τ_D` (zero when disabled).
    pub fn rate(&self) -> f64 {
        if self.tau_d.is_infinite() {
            0.0
        } else {
            1.0 / self.tau_d
        }
    }

    /// `min(0.01, τ_D/10)`.
    pub fn max_step(&self) -> f64 {
        MAX_STEP.min(self.tau_d / 10.0)
    }

    /// `min(0.01, τ_D/10, duration/1000)`.
    pub fn default_step(&self, duration: f64) -> f64 {
        let step = self.max_step();
        if duration > 0.0 {
            step.min(duration / 1000.0)
        } else {
            step
        }
    }
}

/// Result of [`evolve_density_matrix`].
#[derive(Debug, Clone)]
pub struct DensityEvolution {
    pub rho: DensityMatrix,
    /// Probability removed by absorption, integrated alongside ρ.
    pub absorbed: f64,
    pub steps: usize,
    pub step_size: f64,
}

/// Integrates the absorbing master equation for `duration` with RK4.
///
/// `dt` is an upper bound; the step actually used divides `duration`
/// evenly. It must not exceed [`AbsorptionChannel::max_step`].
pub fn evolve_density_matrix(
    h: &ComplexMatrix,
    rho0: &DensityMatrix,
    duration: f64,
    channel: &AbsorptionChannel,
    dt: f64,
) -> Result<DensityEvolution> {
    let dim = rho0.basis().dim();
    check_hamiltonian(h, dim)?;
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("must be positive, got {dt}"),
        });
    }
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(Error::InvalidParameter {
            name: "duration",
            reason: format!("must be finite and nonnegative, got {duration}"),
        });
    }
    let max = channel.max_step();
    if dt > max {
        return Err(Error::StepTooLarge { dt, max });
    }

    let steps = (duration / dt).ceil() as usize;
    let step_size = if steps == 0 { 0.0 } else { duration / steps as f64 };

    let rate = channel.rate();
    let mut gamma = DVector::from_element(dim, 0.0);
    for &idx in channel.absorbed_states() {
        gamma[idx] = rate;
    }
    let mut generator = h * (-I);
    for i in 0..dim {
        generator[(i, i)] -= Complex64::from(0.5 * gamma[i]);
    }
    let generator_adj = generator.adjoint();

    let rhs = |rho: &ComplexMatrix| -> (ComplexMatrix, f64) {
        let d_rho = &generator * rho + rho * &generator_adj;
        let d_absorbed = (0..dim).map(|i| gamma[i] * rho[(i, i)].re).sum();
        (d_rho, d_absorbed)
    };

    let mut rho = rho0.matrix().clone();
    let mut absorbed = 0.0;
    let h_c = Complex64::from(step_size);
    let half = Complex64::from(0.5 * step_size);
    let sixth = Complex64::from(step_size / 6.0);
    for _ in 0..steps {
        let (k1, a1) = rhs(&rho);
        let (k2, a2) = rhs(&(&rho + &k1 * half));
        let (k3, a3) = rhs(&(&rho + &k2 * half));
        let (k4, a4) = rhs(&(&rho + &k3 * h_c));
        rho += (k1 + (k2 + k3) * Complex64::from(2.0) + k4) * sixth;
        absorbed += step_size / 6.0 * (a1 + 2.0 * (a2 + a3) + a4);
    }

    if !linalg::all_finite(&rho) {
        return Err(Error::NonFinite("evolved density matrix"));
    }
    let min_eigenvalue = linalg::hermitian_eigenvalues(&rho)[0];
    if min_eigenvalue < -POSITIVITY_DIAGNOSTIC_TOLERANCE {
        return Err(Error::PositivityViolation { min_eigenvalue });
    }

    Ok(DensityEvolution {
        rho: DensityMatrix {
            basis: rho0.basis().clone(),
            matrix: rho,
        },
        absorbed,
        steps,
        step_size,
    })
}
