// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! The coupled-fiber √SWAP′ gate.
//!
//! Two cores coupled for `Δt = π/4` (in ħ/ε units) act as a 50/50 beam
//! splitter. With one photon in each core the photons always leave together,
//! which is an invalid logical output. Suppressing double occupancy, either
//! with `N` equally spaced measurements or with two-photon absorption of
//! decay time `τ_D`, removes that failure. Matching the two protocols uses
//! `N = Δt / (4 τ_D)`.
//!
//! The computational basis is `{|00⟩, |01⟩, |10⟩, |11⟩}` with `|q₁q₂⟩` the
//! Fock state holding `q₁` photons in core 1 and `q₂` in core 2. After the
//! coupler each output port receives a phase of π/4 per photon.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::{
    self, AbsorptionChannel, DensityMatrix, UNDEFINED_BRANCH_PROBABILITY,
};
use crate::error::{Error, Result};
use crate::fock::{self, FockBasis, FockState, StateVector};
use crate::linalg::{self, ComplexMatrix, I, ONE, ZERO};

/// Time spent in the coupler for the √SWAP′ operation.
pub const INTERACTION_TIME: f64 = FRAC_PI_4;

/// Phase per photon added in each output port.
pub const OUTPUT_PHASE: f64 = FRAC_PI_4;

/// Logical inputs in matrix order.
pub const COMPUTATIONAL_STATES: [(u32, u32); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// Fock basis with up to two photons across both cores.
pub fn two_mode_basis() -> FockBasis {
    fock::enumerate_basis(2, 2).expect("two modes is a valid basis")
}

fn computational_indices(basis: &FockBasis) -> [usize; 4] {
    COMPUTATIONAL_STATES.map(|(a, b)| {
        basis
            .index_of(&FockState::pair(a, b))
            .expect("computational states lie in the two-photon basis")
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProtocolKind {
    /// `measurements` equally spaced no-double-occupancy measurements.
    Discrete { measurements: u32 },
    /// Continuous two-photon absorption with decay time `tau_d`.
    Absorption { tau_d: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoProtocol {
    pub kind: ProtocolKind,
    pub interaction_time: f64,
    pub output_phase: f64,
}

impl ZenoProtocol {
    pub fn discrete(measurements: u32) -> Result<Self> {
        if measurements == 0 {
            return Err(Error::InvalidParameter {
                name: "measurements",
                reason: "at least one measurement is required".into(),
            });
        }
        Ok(Self {
            kind: ProtocolKind::Discrete { measurements },
            interaction_time: INTERACTION_TIME,
            output_phase: OUTPUT_PHASE,
        })
    }

    pub fn absorption(tau_d: f64) -> Result<Self> {
        if !(tau_d > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tau_d",
                reason: format!("must be positive, got {tau_d}"),
            });
        }
        Ok(Self {
            kind: ProtocolKind::Absorption { tau_d },
            interaction_time: INTERACTION_TIME,
            output_phase: OUTPUT_PHASE,
        })
    }

    /// Absorption protocol whose strength corresponds to `n` measurements.
    pub fn absorption_matched(n: f64) -> Result<Self> {
        Self::absorption(matched_tau_d(n, INTERACTION_TIME))
    }

    pub fn with_interaction_time(mut self, interaction_time: f64) -> Result<Self> {
        if !(interaction_time > 0.0) {
            return Err(Error::InvalidParameter {
                name: "interaction_time",
                reason: format!("must be positive, got {interaction_time}"),
            });
        }
        self.interaction_time = interaction_time;
        Ok(self)
    }

    pub fn with_output_phase(mut self, output_phase: f64) -> Self {
        self.output_phase = output_phase;
        self
    }

    /// Measurement count, or `Δt / (4 τ_D)` for absorption.
    pub fn effective_measurements(&self) -> f64 {
        match self.kind {
            ProtocolKind::Discrete { measurements } => measurements as f64,
            ProtocolKind::Absorption { tau_d } => self.interaction_time / (4.0 * tau_d),
        }
    }
}

/// `τ_D = Δt / (4N)`.
pub fn matched_tau_d(n: f64, interaction_time: f64) -> f64 {
    interaction_time / (4.0 * n)
}

/// `P_E = 1 - cos^{2N}(π / 2N)`.
pub fn closed_form_error(n: u32) -> f64 {
    assert!(n >= 1, "closed_form_error needs N >= 1");
    let c = (FRAC_PI_2 / n as f64).cos();
    1.0 - c.powi(2 * n as i32)
}

/// Multiplies each amplitude by `exp(i · phase · n_total)`.
pub fn apply_output_phase(state: &StateVector, phase_per_photon: f64) -> StateVector {
    let amplitudes = DVector::from_iterator(
        state.basis().dim(),
        state
            .basis()
            .states()
            .iter()
            .zip(state.amplitudes().iter())
            .map(|(s, a)| a * Complex64::from_polar(1.0, phase_per_photon * s.total() as f64)),
    );
    StateVector::new(state.basis().clone(), amplitudes).expect("phases keep the state finite")
}

/// Trajectory of the discrete measurement protocol.
#[derive(Debug, Clone)]
pub struct DiscreteRun {
    /// Success probability of each measurement, conditioned on the previous ones.
    pub step_success: Vec<f64>,
    /// Product of `step_success`.
    pub success_probability: f64,
    /// Amplitude of the all-success branch (norm² = `success_probability`).
    pub survivor: StateVector,
    /// Renormalised final state, `None` if the success branch is empty.
    pub state: Option<StateVector>,
}

/// Runs `n` evolve-then-measure rounds over [`INTERACTION_TIME`].
pub fn run_discrete_protocol(n: u32, input: &FockState) -> Result<DiscreteRun> {
    run_discrete(n, INTERACTION_TIME, input)
}

pub fn run_discrete(n: u32, interaction_time: f64, input: &FockState) -> Result<DiscreteRun> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "measurements",
            reason: "at least one measurement is required".into(),
        });
    }
    let basis = two_mode_basis();
    let h = fock::coupling_hamiltonian(1.0, &basis)?;
    let step = dynamics::unitary_propagator(&h, interaction_time / n as f64)?;

    let initial = StateVector::basis_state(&basis, input)?;
    let mut current = Some(initial.clone());
    let mut survivor = initial;
    let mut success_probability = 1.0;
    let mut step_success = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let Some(psi) = current.take() else {
            step_success.push(0.0);
            continue;
        };
        let projection = dynamics::project_no_double_occupancy(&psi.apply(&step)?);
        success_probability *= projection.success_probability;
        step_success.push(projection.success_probability);
        current = projection.state;
        survivor = match &current {
            Some(state) => {
                let scale = Complex64::from(success_probability.sqrt());
                StateVector::new(basis.clone(), state.amplitudes() * scale)?
            }
            None => projection.survivor,
        };
    }
    Ok(DiscreteRun {
        step_success,
        success_probability,
        survivor,
        state: current,
    })
}

/// Final state of the absorption protocol.
#[derive(Debug, Clone)]
pub struct AbsorptionRun {
    pub rho: DensityMatrix,
    /// Trace of `rho`: probability that nothing was absorbed.
    pub survival: f64,
    pub absorbed: f64,
    /// `rho / survival`, `None` if everything was absorbed.
    pub conditional: Option<DensityMatrix>,
}

impl AbsorptionRun {
    pub fn error_probability(&self) -> f64 {
        1.0 - self.survival
    }
}

/// Runs the absorption protocol over [`INTERACTION_TIME`] with the default step.
pub fn run_absorption_protocol(tau_d: f64, input: &FockState) -> Result<AbsorptionRun> {
    run_absorption(tau_d, INTERACTION_TIME, input, None)
}

/// Absorption protocol with an optional RK4 step bound.
pub fn run_absorption(
    tau_d: f64,
    interaction_time: f64,
    input: &FockState,
    dt: Option<f64>,
) -> Result<AbsorptionRun> {
    let basis = two_mode_basis();
    let rho0 = DensityMatrix::from_pure(&StateVector::basis_state(&basis, input)?)?;
    absorb(&basis, &rho0, tau_d, interaction_time, dt).map(|(rho, absorbed)| {
        let survival = rho.trace();
        let conditional = (survival > UNDEFINED_BRANCH_PROBABILITY).then(|| {
            let scaled = rho.matrix() / Complex64::from(survival);
            DensityMatrix::new(basis.clone(), scaled).expect("rescaled state stays valid")
        });
        AbsorptionRun {
            rho,
            survival,
            absorbed,
            conditional,
        }
    })
}

fn absorb(
    basis: &FockBasis,
    rho0: &DensityMatrix,
    tau_d: f64,
    interaction_time: f64,
    dt: Option<f64>,
) -> Result<(DensityMatrix, f64)> {
    let h = fock::coupling_hamiltonian(1.0, basis)?;
    let channel = AbsorptionChannel::two_photon(basis, tau_d)?;
    let dt = dt.unwrap_or_else(|| channel.default_step(interaction_time));
    let out = dynamics::evolve_density_matrix(&h, rho0, interaction_time, &channel, dt)?;
    Ok((out.rho, out.absorbed))
}

/// Failure probability for the `|11⟩` input.
pub fn error_probability(protocol: &ZenoProtocol) -> Result<f64> {
    let input = FockState::pair(1, 1);
    match protocol.kind {
        ProtocolKind::Discrete { measurements } => {
            let run = run_discrete(measurements, protocol.interaction_time, &input)?;
            Ok(1.0 - run.success_probability)
        }
        ProtocolKind::Absorption { tau_d } => {
            let run = run_absorption(tau_d, protocol.interaction_time, &input, None)?;
            Ok(run.error_probability())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProtocolFamily {
    Discrete,
    Absorption,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPoint {
    /// Measurement count, or `Δt / (4 τ_D)` for absorption.
    pub n: f64,
    pub error: f64,
}

/// Error probability on a grid of `N`; absorption points use `τ_D = Δt/(4N)`.
/// Points are evaluated in parallel and returned in grid order.
pub fn error_curve(family: ProtocolFamily, grid: &[u32]) -> Result<Vec<ErrorPoint>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "at least one point is required".into(),
        });
    }
    grid.par_iter()
        .map(|&n| {
            let protocol = match family {
                ProtocolFamily::Discrete => ZenoProtocol::discrete(n)?,
                ProtocolFamily::Absorption => {
                    if n == 0 {
                        return Err(Error::InvalidParameter {
                            name: "grid",
                            reason: "N must be positive".into(),
                        });
                    }
                    ZenoProtocol::absorption_matched(n as f64)?
                }
            };
            Ok(ErrorPoint {
                n: n as f64,
                error: error_probability(&protocol)?,
            })
        })
        .collect()
}

/// `P₁₁(t)` for one photon in each core without any measurement.
pub fn hom_curve(times: &[f64]) -> Result<Vec<(f64, f64)>> {
    occupation_curve(times, FockState::pair(1, 1), FockState::pair(1, 1))
}

/// Probability of finding a single photon launched in core 1 still in core 1.
pub fn rabi_curve(times: &[f64]) -> Result<Vec<(f64, f64)>> {
    occupation_curve(times, FockState::pair(1, 0), FockState::pair(1, 0))
}

fn occupation_curve(times: &[f64], input: FockState, probe: FockState) -> Result<Vec<(f64, f64)>> {
    let basis = two_mode_basis();
    let h = fock::coupling_hamiltonian(1.0, &basis)?;
    let psi0 = StateVector::basis_state(&basis, &input)?;
    times
        .iter()
        .map(|&t| {
            let psi = dynamics::evolve_state(&h, &psi0, t)?;
            Ok((t, psi.probability(&probe)?))
        })
        .collect()
}

/// The gate realised by a protocol, compared with √SWAP′.
#[derive(Debug, Clone)]
pub struct GateReport {
    pub protocol: ZenoProtocol,
    /// Post-selected map: column `j` is the normalised computational-basis
    /// output for input `j` (zero if that input always fails).
    pub conditional_map: ComplexMatrix,
    /// Amplitudes of the successful branch without renormalisation.
    pub unconditional_map: ComplexMatrix,
    /// Probability that input `j` is not destroyed (no failed measurement,
    /// nothing absorbed).
    pub success_probability: [f64; 4],
    /// Failure probability for `|11⟩`.
    pub error_probability: f64,
    /// `|tr(M†T)|/4` for the conditional map against √SWAP′.
    pub fidelity_to_target: f64,
    /// Same overlap for the unconditional map.
    pub unconditional_fidelity: f64,
    /// Probability that input `j` does not end in the computational basis.
    pub leakage: [f64; 4],
}

impl GateReport {
    /// Largest entrywise distance of the conditional map from √SWAP′.
    pub fn max_entry_error(&self) -> f64 {
        linalg::max_abs_diff(&self.conditional_map, &sqrt_swap_prime())
    }
}

/// `|tr(M†T)| / d`.
pub fn gate_fidelity(map: &ComplexMatrix, target: &ComplexMatrix) -> f64 {
    linalg::trace(&(map.adjoint() * target)).norm() / target.nrows() as f64
}

/// Runs `protocol` on every computational input and assembles the 4×4 map.
pub fn extract_gate(protocol: &ZenoProtocol) -> Result<GateReport> {
    let basis = two_mode_basis();
    let comp = computational_indices(&basis);

    let columns: Vec<DVector<Complex64>> = match protocol.kind {
        ProtocolKind::Discrete { measurements } => COMPUTATIONAL_STATES
            .iter()
            .map(|&(a, b)| {
                let run = run_discrete(measurements, protocol.interaction_time, &FockState::pair(a, b))?;
                Ok(run.survivor.into_amplitudes())
            })
            .collect::<Result<_>>()?,
        ProtocolKind::Absorption { tau_d } => COMPUTATIONAL_STATES
            .iter()
            .map(|&(a, b)| absorption_column(&basis, FockState::pair(a, b), tau_d, protocol.interaction_time))
            .collect::<Result<_>>()?,
    };

    let mut conditional = ComplexMatrix::zeros(4, 4);
    let mut unconditional = ComplexMatrix::zeros(4, 4);
    let mut success_probability = [0.0; 4];
    let mut leakage = [0.0; 4];
    for (j, raw) in columns.into_iter().enumerate() {
        let out = apply_output_phase(&StateVector::new(basis.clone(), raw)?, protocol.output_phase);
        let amps = out.amplitudes();
        success_probability[j] = out.norm_sqr();
        let logical: Vec<Complex64> = comp.iter().map(|&k| amps[k]).collect();
        let logical_norm_sqr: f64 = logical.iter().map(|z| z.norm_sqr()).sum();
        leakage[j] = (1.0 - logical_norm_sqr).max(0.0);
        for (i, z) in logical.iter().enumerate() {
            unconditional[(i, j)] = *z;
        }
        if logical_norm_sqr > UNDEFINED_BRANCH_PROBABILITY {
            let scale = 1.0 / logical_norm_sqr.sqrt();
            for (i, z) in logical.iter().enumerate() {
                conditional[(i, j)] = z * scale;
            }
        }
    }

    let target = sqrt_swap_prime();
    Ok(GateReport {
        protocol: *protocol,
        fidelity_to_target: gate_fidelity(&conditional, &target),
        unconditional_fidelity: gate_fidelity(&unconditional, &target),
        conditional_map: conditional,
        unconditional_map: unconditional,
        error_probability: 1.0 - success_probability[3],
        success_probability,
        leakage,
    })
}

// The absorbing evolution is ρ ↦ VρV† with V = exp(-iH_eff t) and V|00⟩ = |00⟩.
// Starting from (|00⟩ + |j⟩)/√2, the vacuum column of ρ(t) is (|00⟩ + V|j⟩)/2,
// which recovers V|j⟩ with its phase referenced to the vacuum.
fn absorption_column(
    basis: &FockBasis,
    input: FockState,
    tau_d: f64,
    interaction_time: f64,
) -> Result<DVector<Complex64>> {
    let vacuum = basis.require_index(&FockState::pair(0, 0))?;
    let target = basis.require_index(&input)?;
    if target == vacuum {
        return Ok(StateVector::basis_state(basis, &input)?.into_amplitudes());
    }
    let mut amps = DVector::from_element(basis.dim(), ZERO);
    amps[vacuum] = Complex64::from(FRAC_1_SQRT_2);
    amps[target] = Complex64::from(FRAC_1_SQRT_2);
    let rho0 = DensityMatrix::from_pure(&StateVector::new(basis.clone(), amps)?)?;
    let (rho, _) = absorb(basis, &rho0, tau_d, interaction_time, None)?;
    let mut column = rho.matrix().column(vacuum) * Complex64::from(2.0);
    column[vacuum] = ZERO;
    Ok(column)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Standard √SWAP.
pub fn sqrt_swap() -> ComplexMatrix {
    let mut m = sqrt_swap_prime();
    m[(3, 3)] = ONE;
    m
}

/// √SWAP with an extra factor `i` on `|11⟩`; the large-N limit of the gate.
pub fn sqrt_swap_prime() -> ComplexMatrix {
    let p = c(0.5, 0.5);
    let q = c(0.5, -0.5);
    ComplexMatrix::from_row_slice(
        4,
        4,
        &[
            ONE, ZERO, ZERO, ZERO, //
            ZERO, p, q, ZERO, //
            ZERO, q, p, ZERO, //
            ZERO, ZERO, ZERO, I,
        ],
    )
}

/// SWAP with a sign flip on `|11⟩`.
pub fn swap_prime() -> ComplexMatrix {
    let mut m = swap();
    m[(3, 3)] = -ONE;
    m
}

/// Mode interchange, i.e. crossing the two fibers.
pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        4,
        4,
        &[
            ONE, ZERO, ZERO, ZERO, //
            ZERO, ZERO, ONE, ZERO, //
            ZERO, ONE, ZERO, ZERO, //
            ZERO, ZERO, ZERO, ONE,
        ],
    )
}

pub fn controlled_z() -> ComplexMatrix {
    let mut m = linalg::identity(4);
    m[(3, 3)] = -ONE;
    m
}

/// Hadamard on the second qubit.
pub fn hadamard_on_target() -> ComplexMatrix {
    let h = Complex64::from(FRAC_1_SQRT_2);
    let single = ComplexMatrix::from_row_slice(2, 2, &[h, h, h, -h]);
    linalg::identity(2).kronecker(&single)
}

/// CNOT with the first qubit as control.
pub fn cnot() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for (row, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(row, col)] = ONE;
    }
    m
}

/// SWAP′ followed by SWAP.
pub fn compose_controlled_z() -> ComplexMatrix {
    swap() * swap_prime()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_values() {
        assert!((closed_form_error(1) - 1.0).abs() < 1e-15);
        // cos⁴(π/4) = 1/4
        assert!((closed_form_error(2) - 0.75).abs() < 1e-15);
        let n = 100_000;
        assert!((n as f64 * closed_form_error(n) - PI * PI / 4.0).abs() < 1e-3);
    }

    #[test]
    fn two_step_brute_force() {
        // Two rounds of exp(-iH π/8) followed by projection, done by hand in
        // the |11⟩,|20⟩,|02⟩ sector: each round keeps cos(π/4) of |11⟩.
        let run = run_discrete_protocol(2, &FockState::pair(1, 1)).unwrap();
        assert_eq!(run.step_success.len(), 2);
        for p in &run.step_success {
            assert!((p - 0.5).abs() < 1e-14);
        }
        assert!((1.0 - run.success_probability - 0.75).abs() < 1e-14);
    }

    #[test]
    fn single_measurement_always_fails() {
        let run = run_discrete_protocol(1, &FockState::pair(1, 1)).unwrap();
        assert!(run.success_probability < 1e-12);
        assert!(run.state.is_none());
    }

    #[test]
    fn single_photon_never_fails() {
        for n in [1, 2, 7, 50] {
            let run = run_discrete_protocol(n, &FockState::pair(1, 0)).unwrap();
            assert!(run.step_success.iter().all(|&p| (p - 1.0).abs() < 1e-12));
            let state = run.state.unwrap();
            let r = FRAC_1_SQRT_2;
            assert!((state.amplitude(&FockState::pair(1, 0)).unwrap() - c(r, 0.0)).norm() < 1e-12);
            assert!((state.amplitude(&FockState::pair(0, 1)).unwrap() - c(0.0, -r)).norm() < 1e-12);
        }
    }

    #[test]
    fn hundred_measurements_match_closed_form() {
        let run = run_discrete_protocol(100, &FockState::pair(1, 1)).unwrap();
        let expected = (PI / 200.0).cos().powi(200);
        assert!((run.success_probability - expected).abs() < 1e-10);
    }

    #[test]
    fn output_phase_per_photon() {
        let basis = two_mode_basis();
        let ket = |a, b| StateVector::basis_state(&basis, &FockState::pair(a, b)).unwrap();
        let vac = apply_output_phase(&ket(0, 0), OUTPUT_PHASE);
        assert_eq!(vac, ket(0, 0));
        let one = apply_output_phase(&ket(1, 0), OUTPUT_PHASE);
        let expected = Complex64::from_polar(1.0, FRAC_PI_4);
        assert!((one.amplitude(&FockState::pair(1, 0)).unwrap() - expected).norm() < 1e-15);
        let two = apply_output_phase(&ket(1, 1), OUTPUT_PHASE);
        assert!((two.amplitude(&FockState::pair(1, 1)).unwrap() - I).norm() < 1e-15);
    }

    #[test]
    fn absorption_leaves_single_photons_alone() {
        for tau in [0.01, 0.1, 1.0] {
            let run = run_absorption_protocol(tau, &FockState::pair(1, 0)).unwrap();
            assert!((run.survival - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn weak_absorption_reproduces_hom_loss() {
        let run = run_absorption_protocol(1e9, &FockState::pair(1, 1)).unwrap();
        assert!(run.rho.population(&FockState::pair(1, 1)).unwrap() < 1e-9);
        assert!((run.survival - 1.0).abs() < 1e-6);
    }

    #[test]
    fn matched_absorption_tracks_discrete() {
        let n = 50;
        let tau = matched_tau_d(n as f64, INTERACTION_TIME);
        let run = run_absorption_protocol(tau, &FockState::pair(1, 1)).unwrap();
        let discrete = closed_form_error(n);
        assert!((run.error_probability() - discrete).abs() < 0.1 * discrete);
    }

    #[test]
    fn error_curve_discrete_points() {
        let curve = error_curve(ProtocolFamily::Discrete, &[1, 2, 20]).unwrap();
        assert_eq!(curve[0].n, 1.0);
        assert!((curve[0].error - 1.0).abs() < 1e-12);
        assert!((curve[1].error - 0.75).abs() < 1e-12);
        let expected = 1.0 - (PI / 40.0).cos().powi(40);
        assert!((curve[2].error - expected).abs() < 1e-12);
    }

    #[test]
    fn error_curve_rejects_empty_grid() {
        assert!(error_curve(ProtocolFamily::Discrete, &[]).is_err());
        assert!(error_curve(ProtocolFamily::Absorption, &[0]).is_err());
    }

    #[test]
    fn hom_curve_points() {
        let curve = hom_curve(&[0.0, PI / 8.0, FRAC_PI_4]).unwrap();
        assert!((curve[0].1 - 1.0).abs() < 1e-12);
        assert!((curve[1].1 - 0.5).abs() < 1e-12);
        assert!(curve[2].1 < 1e-12);
    }

    #[test]
    fn gate_at_one_measurement_loses_11() {
        let report = extract_gate(&ZenoProtocol::discrete(1).unwrap()).unwrap();
        assert!(report.conditional_map[(3, 3)].norm() < 1e-12);
        assert!((report.leakage[3] - 1.0).abs() < 1e-12);
        assert!((report.error_probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gate_single_photon_block_independent_of_n() {
        let target = sqrt_swap_prime();
        for n in [1, 2, 5, 100] {
            let report = extract_gate(&ZenoProtocol::discrete(n).unwrap()).unwrap();
            for r in 0..3 {
                for col in 0..3 {
                    assert!((report.conditional_map[(r, col)] - target[(r, col)]).norm() < 1e-12);
                    assert!((report.unconditional_map[(r, col)] - target[(r, col)]).norm() < 1e-12);
                }
                assert!((report.success_probability[r] - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn absorption_gate_converges() {
        let report = extract_gate(&ZenoProtocol::absorption_matched(200.0).unwrap()).unwrap();
        assert!(report.max_entry_error() < 5e-3);
        assert!(report.unconditional_fidelity > 0.99);
        for j in 0..3 {
            assert!((report.success_probability[j] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn controlled_z_composition() {
        assert_eq!(compose_controlled_z(), controlled_z());
        let squared = sqrt_swap_prime() * sqrt_swap_prime();
        assert!(max_abs_diff(&squared, &swap_prime()) < 1e-12);
        let squared = sqrt_swap() * sqrt_swap();
        assert!(max_abs_diff(&squared, &swap()) < 1e-12);
        let h = hadamard_on_target();
        assert!(max_abs_diff(&(&h * compose_controlled_z() * &h), &cnot()) < 1e-12);
    }

    #[test]
    fn protocol_validation() {
        assert!(ZenoProtocol::discrete(0).is_err());
        assert!(ZenoProtocol::absorption(0.0).is_err());
        assert!(ZenoProtocol::absorption(f64::NAN).is_err());
        let p = ZenoProtocol::absorption_matched(25.0).unwrap();
        assert!((p.effective_measurements() - 25.0).abs() < 1e-12);
    }
}
