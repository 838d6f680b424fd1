// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bosonic Fock space for a small number of optical modes.
//!
//! The coupled-fiber Hamiltonian is written for a single wave-packet mode per
//! core, `H' = ε (a₁†a₂ + a₂†a₁)`. The free photon energies ħω_k and the
//! longitudinal wave vector are removed by moving to the interaction picture
//! under a narrowband assumption (ε independent of k), so neither appears
//! here. The zero-point energy is likewise dropped.
//!
//! Modes are indexed from 1, matching the usual a₁/a₂ labels. Operators act
//! on every occupation vector with total photon number ≤ `max_total`; a
//! creation operator that would leave that space maps to zero. Because `H'`
//! conserves photon number this truncation is exact inside each number
//! sector.

use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ONE, ZERO};

/// Occupation numbers, one per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    occupations: Vec<u32>,
}

impl FockState {
    pub fn new(occupations: Vec<u32>) -> Self {
        Self { occupations }
    }

    /// Two-mode state |n₁ n₂⟩.
    pub fn pair(n1: u32, n2: u32) -> Self {
        Self::new(vec![n1, n2])
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occupations
    }

    /// Occupation of 1-based `mode`.
    pub fn occupation(&self, mode: usize) -> u32 {
        self.occupations[mode - 1]
    }

    pub fn num_modes(&self) -> usize {
        self.occupations.len()
    }

    pub fn total(&self) -> u32 {
        self.occupations.iter().sum()
    }

    /// True when some mode holds two or more photons.
    pub fn has_double_occupancy(&self) -> bool {
        self.occupations.iter().any(|&n| n >= 2)
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for n in &self.occupations {
            write!(f, "{n}")?;
        }
        write!(f, "⟩")
    }
}

/// All occupation vectors over `num_modes` modes with total ≤ `max_total`,
/// in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    num_modes: usize,
    max_total: u32,
    states: Vec<FockState>,
}

impl FockBasis {
    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn max_total(&self) -> u32 {
        self.max_total
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, state: &FockState) -> Option<usize> {
        self.states.binary_search(state).ok()
    }

    pub fn require_index(&self, state: &FockState) -> Result<usize> {
        self.index_of(state)
            .ok_or_else(|| Error::StateNotInBasis(state.to_string()))
    }

    /// Indices of states with two or more photons in one mode.
    pub fn double_occupancy_indices(&self) -> Vec<usize> {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.has_double_occupancy())
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices of states with exactly `total` photons.
    pub fn sector_indices(&self, total: u32) -> Vec<usize> {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.total() == total)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode == 0 || mode > self.num_modes {
            return Err(Error::InvalidMode {
                mode,
                num_modes: self.num_modes,
            });
        }
        Ok(())
    }
}

/// Enumerates the canonical basis. `num_modes` must be positive.
pub fn enumerate_basis(num_modes: usize, max_total: u32) -> Result<FockBasis> {
    if num_modes == 0 {
        return Err(Error::InvalidParameter {
            name: "num_modes",
            reason: "must be at least 1".into(),
        });
    }
    let mut states = Vec::new();
    let mut current = vec![0u32; num_modes];
    fill(&mut current, 0, max_total, &mut states);
    Ok(FockBasis {
        num_modes,
        max_total,
        states,
    })
}

// Depth-first over modes with ascending occupations yields lexicographic order.
fn fill(current: &mut Vec<u32>, mode: usize, remaining: u32, out: &mut Vec<FockState>) {
    if mode == current.len() {
        out.push(FockState::new(current.clone()));
        return;
    }
    for n in 0..=remaining {
        current[mode] = n;
        fill(current, mode + 1, remaining - n, out);
    }
    current[mode] = 0;
}

/// Matrix of a†_mode. Entries ⟨n+1|a†|n⟩ = √(n+1); transitions beyond
/// `max_total` are dropped.
pub fn creation_matrix(mode: usize, basis: &FockBasis) -> Result<ComplexMatrix> {
    basis.check_mode(mode)?;
    let dim = basis.dim();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (col, state) in basis.states().iter().enumerate() {
        let n = state.occupation(mode);
        let mut raised = state.occupations().to_vec();
        raised[mode - 1] += 1;
        if let Some(row) = basis.index_of(&FockState::new(raised)) {
            m[(row, col)] = Complex64::from(((n + 1) as f64).sqrt());
        }
    }
    Ok(m)
}

pub fn annihilation_matrix(mode: usize, basis: &FockBasis) -> Result<ComplexMatrix> {
    Ok(creation_matrix(mode, basis)?.adjoint())
}

/// Diagonal photon-number operator for one mode.
pub fn number_matrix(mode: usize, basis: &FockBasis) -> Result<ComplexMatrix> {
    basis.check_mode(mode)?;
    let diag: Vec<Complex64> = basis
        .states()
        .iter()
        .map(|s| Complex64::from(s.occupation(mode) as f64))
        .collect();
    Ok(ComplexMatrix::from_diagonal(&DVector::from_vec(diag)))
}

/// Total photon number summed over all modes.
pub fn total_number_matrix(basis: &FockBasis) -> ComplexMatrix {
    let diag: Vec<Complex64> = basis
        .states()
        .iter()
        .map(|s| Complex64::from(s.total() as f64))
        .collect();
    ComplexMatrix::from_diagonal(&DVector::from_vec(diag))
}

/// Inter-core coupling `ε (a₁†a₂ + a₂†a₁)` in a two-mode basis.
pub fn coupling_hamiltonian(epsilon: f64, basis: &FockBasis) -> Result<ComplexMatrix> {
    if basis.num_modes() != 2 {
        return Err(Error::InvalidParameter {
            name: "basis",
            reason: format!("coupling needs 2 modes, basis has {}", basis.num_modes()),
        });
    }
    let a1_dag = creation_matrix(1, basis)?;
    let a2_dag = creation_matrix(2, basis)?;
    let hop = &a1_dag * a2_dag.adjoint();
    Ok((&hop + hop.adjoint()) * Complex64::from(epsilon))
}

/// Amplitudes over a [`FockBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: FockBasis,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(basis: FockBasis, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                actual: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(Self { basis, amplitudes })
    }

    /// The normalised basis vector for `state`.
    pub fn basis_state(basis: &FockBasis, state: &FockState) -> Result<Self> {
        let idx = basis.require_index(state)?;
        let mut amplitudes = DVector::from_element(basis.dim(), ZERO);
        amplitudes[idx] = ONE;
        Ok(Self {
            basis: basis.clone(),
            amplitudes,
        })
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, state: &FockState) -> Result<Complex64> {
        Ok(self.amplitudes[self.basis.require_index(state)?])
    }

    pub fn probability(&self, state: &FockState) -> Result<f64> {
        Ok(self.amplitude(state)?.norm_sqr())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub(crate) fn with_amplitudes(&self, amplitudes: DVector<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), self.basis.dim());
        Self {
            basis: self.basis.clone(),
            amplitudes,
        }
    }

    /// `op |ψ⟩`.
    pub fn apply(&self, op: &ComplexMatrix) -> Result<Self> {
        if op.nrows() != self.basis.dim() || op.ncols() != self.basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.dim(),
                actual: op.nrows(),
            });
        }
        Ok(self.with_amplitudes(op * &self.amplitudes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, hermitian_deviation, max_abs, submatrix};

    fn two_mode(max_total: u32) -> FockBasis {
        enumerate_basis(2, max_total).unwrap()
    }

    fn labels(basis: &FockBasis) -> Vec<Vec<u32>> {
        basis.states().iter().map(|s| s.occupations().to_vec()).collect()
    }

    #[test]
    fn enumerates_two_modes_up_to_two_photons() {
        assert_eq!(
            labels(&two_mode(2)),
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![2, 0]]
        );
    }

    #[test]
    fn enumerates_vacuum_only() {
        let b = enumerate_basis(1, 0).unwrap();
        assert_eq!(labels(&b), vec![vec![0]]);
    }

    #[test]
    fn enumerates_single_photon_space() {
        assert_eq!(labels(&two_mode(1)), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn basis_size_is_binomial() {
        // C(max_total + modes, modes)
        assert_eq!(enumerate_basis(3, 4).unwrap().dim(), 35);
        assert_eq!(enumerate_basis(2, 5).unwrap().dim(), 21);
    }

    #[test]
    fn zero_modes_rejected() {
        assert!(enumerate_basis(0, 2).is_err());
    }

    #[test]
    fn enumeration_is_deterministic() {
        assert_eq!(enumerate_basis(3, 3).unwrap(), enumerate_basis(3, 3).unwrap());
    }

    #[test]
    fn creation_matrix_elements() {
        let b = two_mode(2);
        let a1 = creation_matrix(1, &b).unwrap();
        let idx = |n1, n2| b.index_of(&FockState::pair(n1, n2)).unwrap();
        assert_eq!(a1[(idx(1, 0), idx(0, 0))], ONE);
        assert!((a1[(idx(2, 0), idx(1, 0))].re - 2f64.sqrt()).abs() < 1e-15);
        // Creating a third photon leaves the space.
        assert!(a1.column(idx(2, 0)).iter().all(|z| *z == ZERO));
    }

    #[test]
    fn invalid_mode_rejected() {
        let b = two_mode(2);
        assert_eq!(
            creation_matrix(3, &b).unwrap_err(),
            Error::InvalidMode { mode: 3, num_modes: 2 }
        );
        assert!(creation_matrix(0, &b).is_err());
    }

    #[test]
    fn single_photon_block_is_rabi_coupling() {
        let b = two_mode(2);
        let eps = 0.37;
        let h = coupling_hamiltonian(eps, &b).unwrap();
        let order = [
            b.index_of(&FockState::pair(1, 0)).unwrap(),
            b.index_of(&FockState::pair(0, 1)).unwrap(),
        ];
        let block = submatrix(&h, &order);
        let expected = ComplexMatrix::from_row_slice(
            2,
            2,
            &[ZERO, Complex64::from(eps), Complex64::from(eps), ZERO],
        );
        assert!(crate::linalg::max_abs_diff(&block, &expected) < 1e-15);
    }

    #[test]
    fn two_photon_block_in_11_20_02_order() {
        let b = two_mode(2);
        let h = coupling_hamiltonian(1.0, &b).unwrap();
        let order = [
            b.index_of(&FockState::pair(1, 1)).unwrap(),
            b.index_of(&FockState::pair(2, 0)).unwrap(),
            b.index_of(&FockState::pair(0, 2)).unwrap(),
        ];
        let block = submatrix(&h, &order);
        let s = Complex64::from(2f64.sqrt());
        let expected = ComplexMatrix::from_row_slice(
            3,
            3,
            &[ZERO, s, s, s, ZERO, ZERO, s, ZERO, ZERO],
        );
        assert!(crate::linalg::max_abs_diff(&block, &expected) < 1e-15);
    }

    #[test]
    fn zero_coupling_is_zero_matrix() {
        let h = coupling_hamiltonian(0.0, &two_mode(2)).unwrap();
        assert_eq!(max_abs(&h), 0.0);
    }

    #[test]
    fn coupling_is_hermitian_and_number_conserving() {
        for max_total in 0..=4 {
            let b = two_mode(max_total);
            let h = coupling_hamiltonian(1.7, &b).unwrap();
            assert!(hermitian_deviation(&h) < 1e-12);
            let n = total_number_matrix(&b);
            assert!(max_abs(&commutator(&h, &n)) < 1e-12);
        }
    }

    #[test]
    fn number_operator_from_ladder() {
        let b = two_mode(3);
        let a = annihilation_matrix(2, &b).unwrap();
        let n = creation_matrix(2, &b).unwrap() * a;
        assert!(crate::linalg::max_abs_diff(&n, &number_matrix(2, &b).unwrap()) < 1e-14);
    }

    #[test]
    fn state_vector_checks_dimension() {
        let b = two_mode(1);
        let amps = DVector::from_element(2, ONE);
        assert!(matches!(
            StateVector::new(b, amps),
            Err(Error::DimensionMismatch { expected: 3, actual: 2 })
        ));
    }

    #[test]
    fn display_is_ket() {
        assert_eq!(FockState::pair(2, 0).to_string(), "|20⟩");
    }
}
