// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! Non-interacting fermions in the coupled-core device, and photons whose
//! double occupancy is suppressed strongly enough to behave like them.
//!
//! Fermionic operators use a Jordan–Wigner ordering with mode 1 first:
//! `|n₁ n₂⟩ = (b₁†)^{n₁} (b₂†)^{n₂} |0⟩`, so `b₂†` picks up a sign when mode 1
//! is occupied. States are ordered `(0,0), (0,1), (1,0), (1,1)`, the same
//! order as the logical basis of [`crate::gate`].
//!
//! Dressed operators are conjugated by a free generator `H₀` that carries
//! two-photon absorption as a non-Hermitian term `-i/(2τ_D)` on `|2⟩`:
//! `Ô(t) = exp(iH₀†t) Ô exp(-iH₀t)`. With that bi-orthogonal form every
//! matrix element leading into `|2⟩` decays as `exp(-t/(2τ_D))`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{self, OUTPUT_PHASE};
use crate::linalg::{self, ComplexMatrix, I, ONE, ZERO};

/// The four occupation states of two fermionic modes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FermionBasis;

impl FermionBasis {
    pub const STATES: [(u32, u32); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

    pub fn dim(&self) -> usize {
        Self::STATES.len()
    }

    pub fn index_of(&self, n1: u32, n2: u32) -> Result<usize> {
        if n1 > 1 || n2 > 1 {
            return Err(Error::StateNotInBasis(format!("|{n1}{n2}⟩ (fermionic)")));
        }
        Ok((2 * n1 + n2) as usize)
    }

    pub fn basis_vector(&self, n1: u32, n2: u32) -> Result<DVector<Complex64>> {
        let mut v = DVector::from_element(4, ZERO);
        v[self.index_of(n1, n2)?] = ONE;
        Ok(v)
    }
}

/// `b₁†, b₂†` and their adjoints on [`FermionBasis`].
#[derive(Debug, Clone)]
pub struct FermionOperators {
    creation: [ComplexMatrix; 2],
}

impl FermionOperators {
    /// `b†` for 1-based `mode`.
    pub fn creation(&self, mode: usize) -> &ComplexMatrix {
        &self.creation[mode - 1]
    }

    pub fn annihilation(&self, mode: usize) -> ComplexMatrix {
        self.creation[mode - 1].adjoint()
    }
}

pub fn fermion_operator_matrices() -> FermionOperators {
    let basis = FermionBasis;
    let mut b1 = ComplexMatrix::zeros(4, 4);
    let mut b2 = ComplexMatrix::zeros(4, 4);
    for &(n1, n2) in &FermionBasis::STATES {
        let col = basis.index_of(n1, n2).unwrap();
        if n1 == 0 {
            b1[(basis.index_of(1, n2).unwrap(), col)] = ONE;
        }
        if n2 == 0 {
            let sign = if n1 == 1 { -ONE } else { ONE };
            b2[(basis.index_of(n1, 1).unwrap(), col)] = sign;
        }
    }
    FermionOperators { creation: [b1, b2] }
}

/// `ε (b₁†b₂ + b₂†b₁)`.
pub fn fermion_hamiltonian(epsilon: f64) -> ComplexMatrix {
    let ops = fermion_operator_matrices();
    let hop = ops.creation(1) * ops.annihilation(2);
    (&hop + hop.adjoint()) * Complex64::from(epsilon)
}

/// `exp(-iH't)` applied to the occupation state `input`.
pub fn evolve_fermions(epsilon: f64, t: f64, input: (u32, u32)) -> Result<DVector<Complex64>> {
    let psi0 = FermionBasis.basis_vector(input.0, input.1)?;
    Ok(linalg::matrix_exponential(&fermion_hamiltonian(epsilon), -I * t) * psi0)
}

/// Exchange statistics of the particles in the two paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Boson,
    Fermion,
}

/// Matrix of the path interchange on the four occupation states.
///
/// For fermions the image of `(b₁†)^{n₁}(b₂†)^{n₂}|0⟩` is built as
/// `(b₂†)^{n₁}(b₁†)^{n₂}|0⟩` from the Jordan–Wigner matrices, so the sign on
/// `|11⟩` comes out of the operator algebra.
pub fn interchange_matrix(statistics: Statistics) -> ComplexMatrix {
    match statistics {
        Statistics::Boson => gate::swap(),
        Statistics::Fermion => {
            let ops = fermion_operator_matrices();
            let vacuum = FermionBasis.basis_vector(0, 0).unwrap();
            let mut m = ComplexMatrix::zeros(4, 4);
            for &(n1, n2) in &FermionBasis::STATES {
                let mut image = vacuum.clone();
                // Rightmost factor acts first.
                for _ in 0..n2 {
                    image = ops.creation(1) * image;
                }
                for _ in 0..n1 {
                    image = ops.creation(2) * image;
                }
                m.set_column(FermionBasis.index_of(n1, n2).unwrap(), &image);
            }
            m
        }
    }
}

pub fn mode_interchange(state: &DVector<Complex64>, statistics: Statistics) -> Result<DVector<Complex64>> {
    if state.len() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: state.len(),
        });
    }
    Ok(interchange_matrix(statistics) * state)
}

/// Deviation between fermion dynamics and Zeno-suppressed photon dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub epsilon: f64,
    pub time: f64,
    pub measurements: u32,
    /// Max amplitude deviation per input, in [`FermionBasis::STATES`] order.
    pub deviation: [f64; 4],
}

impl EquivalenceReport {
    pub fn single_particle(&self) -> f64 {
        self.deviation[1].max(self.deviation[2])
    }

    pub fn two_particle(&self) -> f64 {
        self.deviation[3]
    }
}

/// Compares `exp(-iH't)` for fermions with the success branch of `n`
/// equally spaced measurements on photons, input by input.
///
/// The photon amplitudes are not renormalised, so the `|11⟩` deviation is
/// `1 - cos^N(π/2N)`-like and vanishes only as `N → ∞`.
pub fn compare_to_zeno_photons(epsilon: f64, t: f64, n: u32) -> Result<EquivalenceReport> {
    let photon_basis = gate::two_mode_basis();
    let mut deviation = [0.0; 4];
    for (slot, &(n1, n2)) in deviation.iter_mut().zip(FermionBasis::STATES.iter()) {
        let fermions = evolve_fermions(epsilon, t, (n1, n2))?;
        let photons = gate::run_discrete(n, epsilon * t, &crate::fock::FockState::pair(n1, n2))?;
        let mut worst: f64 = 0.0;
        for &(m1, m2) in &FermionBasis::STATES {
            let f = fermions[FermionBasis.index_of(m1, m2)?];
            let p = photons.survivor.amplitudes()
                [photon_basis.require_index(&crate::fock::FockState::pair(m1, m2))?];
            worst = worst.max((f - p).norm());
        }
        // Probability the photons left the single-occupancy space.
        let leaked: f64 = photon_basis
            .double_occupancy_indices()
            .iter()
            .map(|&k| photons.survivor.amplitudes()[k].norm())
            .fold(0.0, f64::max);
        *slot = worst.max(leaked);
    }
    Ok(EquivalenceReport {
        epsilon,
        time: t,
        measurements: n,
        deviation,
    })
}

/// √SWAP′ realised by fermions in the coupled device with the output phases.
pub fn fermion_sqrt_swap_prime() -> ComplexMatrix {
    let u = linalg::matrix_exponential(&fermion_hamiltonian(1.0), -I * gate::INTERACTION_TIME);
    let phases = DVector::from_iterator(
        4,
        FermionBasis::STATES
            .iter()
            .map(|&(a, b)| Complex64::from_polar(1.0, OUTPUT_PHASE * (a + b) as f64)),
    );
    ComplexMatrix::from_diagonal(&phases) * u
}

/// Controlled-Z circuit (two device passes, then a path interchange) run
/// with each statistics.
#[derive(Debug, Clone)]
pub struct NoGoReport {
    /// Two passes through the coupled device (SWAP′).
    pub device_swap_prime: ComplexMatrix,
    /// Device SWAP′ followed by a fermionic path interchange.
    pub fermionic: ComplexMatrix,
    /// Device SWAP′ followed by a bosonic path interchange.
    pub bosonic: ComplexMatrix,
}

/// Fermions turn the controlled-Z circuit into the identity; bosonic
/// interchange recovers the controlled-Z.
pub fn no_go_report() -> NoGoReport {
    let root = fermion_sqrt_swap_prime();
    let device = &root * &root;
    NoGoReport {
        fermionic: interchange_matrix(Statistics::Fermion) * &device,
        bosonic: interchange_matrix(Statistics::Boson) * &device,
        device_swap_prime: device,
    }
}

/// The fermionic circuit product; equals the identity.
pub fn no_go_demo() -> ComplexMatrix {
    no_go_report().fermionic
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Annihilation,
    Creation,
}

/// A ladder operator of one fiber, dressed by absorption of decay time `tau_d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedOperatorSpec {
    pub kind: LadderKind,
    /// 1 or 2.
    pub mode: usize,
    pub tau_d: f64,
    /// Photon energy in the free generator. Zero neglects it (resonant case).
    pub photon_energy: f64,
}

impl DressedOperatorSpec {
    pub fn annihilation(mode: usize, tau_d: f64) -> Self {
        Self {
            kind: LadderKind::Annihilation,
            mode,
            tau_d,
            photon_energy: 0.0,
        }
    }

    pub fn creation(mode: usize, tau_d: f64) -> Self {
        Self {
            kind: LadderKind::Creation,
            ..Self::annihilation(mode, tau_d)
        }
    }

    pub fn with_photon_energy(mut self, photon_energy: f64) -> Self {
        self.photon_energy = photon_energy;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.mode != 1 && self.mode != 2 {
            return Err(Error::InvalidMode {
                mode: self.mode,
                num_modes: 2,
            });
        }
        if !(self.tau_d > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tau_d",
                reason: format!("must be positive, got {}", self.tau_d),
            });
        }
        Ok(())
    }
}

/// Occupations kept per fiber: `|0⟩, |1⟩, |2⟩`.
pub const LEVELS_PER_MODE: usize = 3;

/// `a` on `{|0⟩, |1⟩, |2⟩}`.
pub fn truncated_annihilation() -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(LEVELS_PER_MODE, LEVELS_PER_MODE);
    for n in 1..LEVELS_PER_MODE {
        a[(n - 1, n)] = Complex64::from((n as f64).sqrt());
    }
    a
}

/// Single-fiber free generator `ω n̂ - i/(2τ_D) |2⟩⟨2|`.
pub fn dressing_generator(tau_d: f64, photon_energy: f64) -> ComplexMatrix {
    let decay = if tau_d.is_infinite() { 0.0 } else { 0.5 / tau_d };
    let mut h0 = ComplexMatrix::zeros(LEVELS_PER_MODE, LEVELS_PER_MODE);
    for n in 0..LEVELS_PER_MODE {
        h0[(n, n)] = Complex64::from(photon_energy * n as f64);
    }
    h0[(2, 2)] -= I * decay;
    h0
}

/// Operator space for a set of dressed operators: one fiber, or two.
struct DressedSpace {
    modes: usize,
    generator: ComplexMatrix,
}

impl DressedSpace {
    fn for_specs(specs: &[DressedOperatorSpec]) -> Result<Self> {
        for s in specs {
            s.validate()?;
        }
        let modes = if specs.iter().all(|s| s.mode == specs[0].mode) { 1 } else { 2 };
        let per_mode = |mode: usize| -> Result<ComplexMatrix> {
            let relevant: Vec<_> = specs.iter().filter(|s| modes == 1 || s.mode == mode).collect();
            let first = relevant[0];
            if relevant
                .iter()
                .any(|s| s.tau_d != first.tau_d || s.photon_energy != first.photon_energy)
            {
                return Err(Error::InvalidParameter {
                    name: "tau_d",
                    reason: "operators on the same fiber must share the dressing".into(),
                });
            }
            Ok(dressing_generator(first.tau_d, first.photon_energy))
        };
        let generator = if modes == 1 {
            per_mode(specs[0].mode)?
        } else {
            let id = linalg::identity(LEVELS_PER_MODE);
            per_mode(1)?.kronecker(&id) + id.kronecker(&per_mode(2)?)
        };
        Ok(Self { modes, generator })
    }

    fn schrodinger(&self, spec: &DressedOperatorSpec) -> ComplexMatrix {
        let a = match spec.kind {
            LadderKind::Annihilation => truncated_annihilation(),
            LadderKind::Creation => truncated_annihilation().adjoint(),
        };
        if self.modes == 1 {
            return a;
        }
        let id = linalg::identity(LEVELS_PER_MODE);
        if spec.mode == 1 {
            a.kronecker(&id)
        } else {
            id.kronecker(&a)
        }
    }
}

/// `Ô(t) = exp(iH₀†t) Ô exp(-iH₀t)` on the space of `spec` alone.
pub fn dressed_operator(spec: &DressedOperatorSpec, t: f64) -> Result<ComplexMatrix> {
    let space = DressedSpace::for_specs(std::slice::from_ref(spec))?;
    let left = linalg::matrix_exponential(&space.generator.adjoint(), I * t);
    let right = linalg::matrix_exponential(&space.generator, -I * t);
    Ok(left * space.schrodinger(spec) * right)
}

/// Grid resolution: intervals per `τ_D`, per unit of `1/ω`, and at least this many overall.
const POINTS_PER_DECAY_TIME: f64 = 100.0;
const POINTS_PER_RADIAN: f64 = 100.0;
const MIN_INTERVALS: usize = 512;
/// Grid halving may change no entry by more than this.
pub const QUADRATURE_TOLERANCE: f64 = 1e-6;

/// `(2/τ²) ∫₀^τ dt' ∫₀^{t'} dt'' Â(t') B̂(t'')`, by nested trapezoid rules.
///
/// The result is computed on a grid and on one twice as fine; it is an error
/// if they differ by more than [`QUADRATURE_TOLERANCE`]. Both rules are
/// second order, so the pair is Richardson-extrapolated. One-fiber products act on `{|0⟩,|1⟩,|2⟩}`; products across
/// fibers act on the 9-state tensor product, mode 1 first.
pub fn time_averaged_product(
    a: &DressedOperatorSpec,
    b: &DressedOperatorSpec,
    tau: f64,
) -> Result<ComplexMatrix> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParameter {
            name: "tau",
            reason: format!("must be positive and finite, got {tau}"),
        });
    }
    let space = DressedSpace::for_specs(&[*a, *b])?;
    let rate = [a, b]
        .iter()
        .map(|s| {
            let decay = if s.tau_d.is_infinite() { 0.0 } else { POINTS_PER_DECAY_TIME / s.tau_d };
            decay.max(POINTS_PER_RADIAN * s.photon_energy.abs())
        })
        .fold(0.0, f64::max);
    let intervals = ((rate * tau).ceil() as usize).max(MIN_INTERVALS);

    let coarse = nested_trapezoid(&space, a, b, tau, intervals);
    let fine = nested_trapezoid(&space, a, b, tau, 2 * intervals);
    let change = linalg::max_abs_diff(&coarse, &fine);
    if change > QUADRATURE_TOLERANCE {
        return Err(Error::QuadratureNotConverged { change });
    }
    Ok((&fine * Complex64::from(4.0) - coarse) / Complex64::from(3.0))
}

fn nested_trapezoid(
    space: &DressedSpace,
    a: &DressedOperatorSpec,
    b: &DressedOperatorSpec,
    tau: f64,
    intervals: usize,
) -> ComplexMatrix {
    let h = tau / intervals as f64;
    let left_step = linalg::matrix_exponential(&space.generator.adjoint(), I * h);
    let right_step = linalg::matrix_exponential(&space.generator, -I * h);
    let a_s = space.schrodinger(a);
    let b_s = space.schrodinger(b);
    let dim = a_s.nrows();

    let mut left = linalg::identity(dim);
    let mut right = linalg::identity(dim);
    let half = Complex64::from(0.5 * h);
    let mut inner = ComplexMatrix::zeros(dim, dim);
    let mut outer = ComplexMatrix::zeros(dim, dim);
    let mut prev_b = b_s.clone();
    for k in 0..=intervals {
        if k > 0 {
            left = &left * &left_step;
            right = &right * &right_step;
        }
        let a_t = &left * &a_s * &right;
        let b_t = &left * &b_s * &right;
        if k > 0 {
            inner += (&prev_b + &b_t) * half;
        }
        let weight = if k == 0 || k == intervals { 0.5 * h } else { h };
        outer += a_t * &inner * Complex64::from(weight);
        prev_b = b_t;
    }
    outer * Complex64::from(2.0 / (tau * tau))
}

/// Time-averaged (anti)commutators of dressed fields.
#[derive(Debug, Clone)]
pub struct AnticommutatorReport {
    pub tau_d: f64,
    pub tau: f64,
    /// `avg(ÂÂ†) + avg(Â†Â)` on `{|0⟩,|1⟩,|2⟩}`.
    pub anticommutator: ComplexMatrix,
    /// `⟨1| avg(ÂÂ†) |1⟩`; vanishes for strong suppression.
    pub a_adag_on_one: f64,
    pub a_adag_on_zero: f64,
    pub adag_a_on_one: f64,
    pub adag_a_on_zero: f64,
    /// Max |avg{Â,Â†} - I| on `{|0⟩, |1⟩}`.
    pub deviation: f64,
    /// `avg(Â₁Â₂†) - avg(Â₂†Â₁)` on the two-fiber space.
    pub cross_commutator: ComplexMatrix,
    /// Max entry of the cross commutator between states with at most one
    /// photon per fiber.
    pub cross_deviation: f64,
    /// Max entry of the cross commutator over the whole truncated space,
    /// including transitions into double occupancy.
    pub cross_deviation_full: f64,
}

pub fn anticommutator_report(tau_d: f64, tau: f64) -> Result<AnticommutatorReport> {
    if !(tau_d < tau) {
        return Err(Error::InvalidParameter {
            name: "tau_d",
            reason: format!("must be shorter than the averaging window ({tau_d} >= {tau})"),
        });
    }
    let a = DressedOperatorSpec::annihilation(1, tau_d);
    let a_dag = DressedOperatorSpec::creation(1, tau_d);
    let a_adag = time_averaged_product(&a, &a_dag, tau)?;
    let adag_a = time_averaged_product(&a_dag, &a, tau)?;
    let anticommutator = &a_adag + &adag_a;
    let allowed = linalg::submatrix(&anticommutator, &[0, 1]);
    let deviation = linalg::max_abs_diff(&allowed, &linalg::identity(2));

    let a1 = DressedOperatorSpec::annihilation(1, tau_d);
    let a2_dag = DressedOperatorSpec::creation(2, tau_d);
    let cross_commutator =
        time_averaged_product(&a1, &a2_dag, tau)? - time_averaged_product(&a2_dag, &a1, tau)?;
    // |n₁n₂⟩ ↦ 3n₁ + n₂; keep n₁, n₂ ≤ 1.
    let single_occupancy = [0, 1, 3, 4];
    let cross_deviation = linalg::max_abs(&linalg::submatrix(&cross_commutator, &single_occupancy));

    Ok(AnticommutatorReport {
        tau_d,
        tau,
        a_adag_on_one: a_adag[(1, 1)].re,
        a_adag_on_zero: a_adag[(0, 0)].re,
        adag_a_on_one: adag_a[(1, 1)].re,
        adag_a_on_zero: adag_a[(0, 0)].re,
        deviation,
        cross_deviation,
        cross_deviation_full: linalg::max_abs(&cross_commutator),
        anticommutator,
        cross_commutator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock;
    use crate::linalg::{anticommutator, max_abs, max_abs_diff, submatrix};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    /// Closed form of `(2/τ²)∫∫_{t''<t'} 2 e^{-(t'+t'')/(2τ_D)}`: the
    /// integrand is symmetric, so the ordered integral is half the square of
    /// `∫₀^τ e^{-t/(2τ_D)} dt`.
    fn a_adag_on_one_oracle(tau_d: f64, tau: f64) -> f64 {
        let a = 2.0 * tau_d;
        let single = a * (1.0 - (-tau / a).exp());
        (2.0 / (tau * tau)) * 2.0 * 0.5 * single * single
    }

    #[test]
    fn canonical_anticommutation_relations() {
        let ops = fermion_operator_matrices();
        let id = linalg::identity(4);
        for i in 1..=2 {
            for j in 1..=2 {
                let ac = anticommutator(&ops.annihilation(i), ops.creation(j));
                let expected = if i == j { id.clone() } else { ComplexMatrix::zeros(4, 4) };
                assert_eq!(ac, expected, "{{b{i}, b{j}†}}");
                assert_eq!(max_abs(&anticommutator(ops.creation(i), ops.creation(j))), 0.0);
            }
            assert_eq!(max_abs(&(ops.creation(i) * ops.creation(i))), 0.0);
        }
    }

    #[test]
    fn single_particle_block_matches_bosons() {
        let eps = 0.8;
        let hf = fermion_hamiltonian(eps);
        let fb = FermionBasis;
        let fermion_block = submatrix(
            &hf,
            &[fb.index_of(1, 0).unwrap(), fb.index_of(0, 1).unwrap()],
        );
        let basis = gate::two_mode_basis();
        let hb = fock::coupling_hamiltonian(eps, &basis).unwrap();
        let idx = |a, b| basis.index_of(&fock::FockState::pair(a, b)).unwrap();
        let boson_block = submatrix(&hb, &[idx(1, 0), idx(0, 1)]);
        assert_eq!(fermion_block, boson_block);
        assert_eq!(fermion_block[(0, 1)], Complex64::from(eps));
    }

    #[test]
    fn single_fermion_transfers() {
        let psi = evolve_fermions(1.0, FRAC_PI_2, (1, 0)).unwrap();
        assert!(psi[2].norm() < 1e-12);
        assert!((psi[1] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn two_fermions_do_not_move() {
        for &t in &[0.0, 0.3, FRAC_PI_4, 2.0, 10.0] {
            let psi = evolve_fermions(1.0, t, (1, 1)).unwrap();
            assert!((psi[3].norm() - 1.0).abs() < 1e-14);
            assert!(psi.iter().take(3).all(|z| z.norm() < 1e-14));
        }
    }

    #[test]
    fn zero_time_is_identity() {
        for &(a, b) in &FermionBasis::STATES {
            let psi = evolve_fermions(1.0, 0.0, (a, b)).unwrap();
            assert_eq!(psi, FermionBasis.basis_vector(a, b).unwrap());
        }
    }

    #[test]
    fn fermion_basis_rejects_double_occupancy() {
        assert!(FermionBasis.index_of(2, 0).is_err());
        assert!(evolve_fermions(1.0, 1.0, (0, 2)).is_err());
    }

    #[test]
    fn interchange_signs() {
        let fb = FermionBasis;
        let both = fb.basis_vector(1, 1).unwrap();
        let swapped = mode_interchange(&both, Statistics::Fermion).unwrap();
        assert_eq!(swapped, -both.clone());
        assert_eq!(mode_interchange(&both, Statistics::Boson).unwrap(), both);
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let moved = mode_interchange(&fb.basis_vector(1, 0).unwrap(), stats).unwrap();
            assert_eq!(moved, fb.basis_vector(0, 1).unwrap());
        }
        assert_eq!(interchange_matrix(Statistics::Fermion), gate::swap_prime());
    }

    #[test]
    fn single_particle_equivalence_is_exact() {
        for n in [1, 3, 40] {
            let report = compare_to_zeno_photons(1.0, FRAC_PI_4, n).unwrap();
            assert!(report.single_particle() < 1e-12);
            assert!(report.deviation[0] < 1e-12);
        }
    }

    #[test]
    fn two_particle_equivalence_needs_zeno() {
        let weak = compare_to_zeno_photons(1.0, FRAC_PI_4, 1).unwrap();
        assert!(weak.two_particle() > 0.5);
        let strong = compare_to_zeno_photons(1.0, FRAC_PI_4, 1000).unwrap();
        assert!(strong.two_particle() < 5e-3);
    }

    #[test]
    fn no_go_products() {
        let report = no_go_report();
        assert!(max_abs_diff(&report.device_swap_prime, &gate::swap_prime()) < 1e-12);
        assert!(max_abs_diff(&report.fermionic, &linalg::identity(4)) < 1e-12);
        assert!(max_abs_diff(&report.bosonic, &gate::controlled_z()) < 1e-12);
        // Exact version on the ideal matrices.
        let exact = interchange_matrix(Statistics::Fermion) * gate::swap_prime();
        assert_eq!(exact, linalg::identity(4));
        // Statistics only touch |11⟩.
        let diff = &report.fermionic - &report.bosonic;
        for r in 0..4 {
            for col in 0..4 {
                if (r, col) != (3, 3) {
                    assert!(diff[(r, col)].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn dressed_operator_decays_into_two() {
        let tau_d = 0.3;
        let t = 0.45;
        let a = dressed_operator(&DressedOperatorSpec::annihilation(1, tau_d), t).unwrap();
        assert!((a[(0, 1)] - ONE).norm() < 1e-14);
        let expected = 2f64.sqrt() * (-t / (2.0 * tau_d)).exp();
        assert!((a[(1, 2)].re - expected).abs() < 1e-13);
    }

    #[test]
    fn equal_time_commutator_invariant_for_hermitian_generator() {
        let spec = DressedOperatorSpec::annihilation(1, f64::INFINITY).with_photon_energy(1.3);
        let dag = DressedOperatorSpec::creation(1, f64::INFINITY).with_photon_energy(1.3);
        let a = truncated_annihilation();
        let bare = linalg::commutator(&a, &a.adjoint());
        for &t in &[0.0, 0.2, 1.7, 5.0] {
            let at = dressed_operator(&spec, t).unwrap();
            let adt = dressed_operator(&dag, t).unwrap();
            assert!(max_abs_diff(&linalg::commutator(&at, &adt), &bare) < 1e-12);
        }
    }

    #[test]
    fn time_averages_of_allowed_products_are_exact() {
        let report = anticommutator_report(0.01, 1.0).unwrap();
        assert!((report.a_adag_on_zero - 1.0).abs() < 1e-12);
        assert!((report.adag_a_on_one - 1.0).abs() < 1e-12);
        assert!(report.adag_a_on_zero.abs() < 1e-12);
    }

    #[test]
    fn a_adag_on_one_matches_closed_form() {
        for &(tau_d, tau) in &[(0.01, 1.0), (0.005, 1.0), (0.1, 1.0), (0.3, 2.0)] {
            let a = DressedOperatorSpec::annihilation(1, tau_d);
            let ad = DressedOperatorSpec::creation(1, tau_d);
            let avg = time_averaged_product(&a, &ad, tau).unwrap();
            let oracle = a_adag_on_one_oracle(tau_d, tau);
            assert!((avg[(1, 1)].re - oracle).abs() < 1e-7, "{tau_d}: {} vs {oracle}", avg[(1, 1)].re);
        }
        // Frozen: 8e-4 · (1 - e^{-50})² at τ_D/τ = 0.01.
        assert!((a_adag_on_one_oracle(0.01, 1.0) - 8.0e-4).abs() < 1e-15);
    }

    #[test]
    fn anticommutator_deviation_is_quadratic() {
        let r1 = anticommutator_report(0.01, 1.0).unwrap();
        let r2 = anticommutator_report(0.005, 1.0).unwrap();
        assert!(r1.deviation < 2e-3);
        let ratio = r1.deviation / r2.deviation;
        assert!((ratio - 4.0).abs() < 0.5, "ratio {ratio}");
        assert!(r1.cross_deviation < 1e-6);
    }

    #[test]
    fn averaging_rejects_bad_inputs() {
        let a = DressedOperatorSpec::annihilation(1, 0.1);
        assert!(time_averaged_product(&a, &a, 0.0).is_err());
        assert!(time_averaged_product(&DressedOperatorSpec::annihilation(3, 0.1), &a, 1.0).is_err());
        let other = DressedOperatorSpec::creation(1, 0.2);
        assert!(time_averaged_product(&a, &other, 1.0).is_err());
        assert!(anticommutator_report(2.0, 1.0).is_err());
    }
}
