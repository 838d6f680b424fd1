// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra for the few-dimensional operators used here.
//!
//! Every operator in this crate acts on at most a handful of basis states, so
//! matrices are plain heap-allocated [`DMatrix`] values and no sparsity is
//! exploited.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Square complex matrix. All constructors in this crate produce finite
/// entries; [`all_finite`] checks the invariant for external input.
pub type ComplexMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Norm bound the scaled argument must satisfy before the Taylor series is
/// summed. At 0.5 the series reaches double precision in under 25 terms.
const TAYLOR_NORM_BOUND: f64 = 0.5;
const TAYLOR_MAX_TERMS: usize = 40;

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn all_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Largest entry modulus.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// max |M - M†|.
pub fn hermitian_deviation(m: &ComplexMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// max |U†U - I|.
pub fn unitarity_deviation(u: &ComplexMatrix) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// Maximum absolute column sum.
fn one_norm(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(scale * m)` by scaling and squaring around a truncated Taylor series.
///
/// The argument is halved `s` times until its 1-norm is below 0.5, the
/// series is summed to convergence, and the result is squared `s` times.
/// For the ≤ 9-dimensional matrices in this crate the relative error is at
/// the 1e-14 level.
pub fn matrix_exponential(m: &ComplexMatrix, scale: Complex64) -> ComplexMatrix {
    assert!(m.is_square(), "matrix_exponential requires a square matrix");
    let dim = m.nrows();
    let a = m * scale;
    let norm = one_norm(&a);
    if norm == 0.0 {
        return identity(dim);
    }

    let squarings = if norm > TAYLOR_NORM_BOUND {
        (norm / TAYLOR_NORM_BOUND).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / Complex64::from(2f64.powi(squarings as i32));

    let mut sum = identity(dim);
    let mut term = identity(dim);
    for k in 1..=TAYLOR_MAX_TERMS {
        term = &term * &scaled / Complex64::from(k as f64);
        sum += &term;
        if one_norm(&term) <= f64::EPSILON * 1e-2 * one_norm(&sum) {
            break;
        }
    }

    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    // Symmetrise so roundoff in the anti-Hermitian part cannot leak in.
    let sym = (m + m.adjoint()) * Complex64::from(0.5);
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Trace as a complex number.
pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Principal submatrix picking rows and columns `indices`, in that order.
pub fn submatrix(m: &ComplexMatrix, indices: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(indices.len(), indices.len(), |r, c| m[(indices[r], indices[c])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn random_hermitian(dim: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
        let raw = ComplexMatrix::from_fn(dim, dim, |r, c| {
            let (re, im) = entries[r * dim + c];
            Complex64::new(re, im)
        });
        (&raw + raw.adjoint()) * Complex64::from(0.5)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let m = ComplexMatrix::from_fn(3, 3, |r, c| Complex64::new(r as f64, c as f64));
        let e = matrix_exponential(&m, ZERO);
        assert_eq!(e, identity(3));
    }

    #[test]
    fn exp_of_diagonal_is_elementwise() {
        let diag = [Complex64::new(0.3, -1.2), Complex64::new(-2.0, 0.5), Complex64::new(4.0, 3.0)];
        let m = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&diag));
        let e = matrix_exponential(&m, ONE);
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c { diag[r].exp() } else { ZERO };
                assert!((e[(r, c)] - expected).norm() <= 1e-12 * expected.norm().max(1.0));
            }
        }
    }

    #[test]
    fn rabi_rotation_closed_form() {
        // exp(-i t σx) (1,0)ᵀ = (cos t, -i sin t)ᵀ
        let h = ComplexMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        for &t in &[0.1, 0.7, 1.3, std::f64::consts::FRAC_PI_2, 5.0, 40.0] {
            let u = matrix_exponential(&h, -I * t);
            assert!((u[(0, 0)] - Complex64::from(t.cos())).norm() < 1e-12);
            assert!((u[(1, 0)] - Complex64::new(0.0, -t.sin())).norm() < 1e-12);
        }
    }

    #[test]
    fn agrees_with_nalgebra_exp() {
        // Independent route: nalgebra's Padé implementation.
        let m = ComplexMatrix::from_fn(5, 5, |r, c| {
            Complex64::new(((r * 7 + c * 3) % 5) as f64 - 2.0, ((r + 2 * c) % 3) as f64 - 1.0)
        });
        let ours = matrix_exponential(&m, Complex64::new(0.0, -0.8));
        let theirs = (&m * Complex64::new(0.0, -0.8)).exp();
        let scale = max_abs(&theirs);
        assert!(max_abs_diff(&ours, &theirs) <= 1e-12 * scale);
    }

    #[test]
    fn submatrix_reorders() {
        let m = ComplexMatrix::from_fn(3, 3, |r, c| Complex64::from((10 * r + c) as f64));
        let s = submatrix(&m, &[2, 0]);
        assert_eq!(s[(0, 0)], Complex64::from(22.0));
        assert_eq!(s[(0, 1)], Complex64::from(20.0));
        assert_eq!(s[(1, 0)], Complex64::from(2.0));
    }

    #[test]
    fn eigenvalues_of_pauli_x() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let ev = hermitian_eigenvalues(&m);
        assert_relative_eq!(ev[0], -1.0, epsilon = 1e-14);
        assert_relative_eq!(ev[1], 1.0, epsilon = 1e-14);
    }

    proptest! {
        #[test]
        fn exp_of_anti_hermitian_is_unitary(
            entries in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 36),
            t in -10.0f64..10.0,
        ) {
            let h = random_hermitian(6, &entries);
            let u = matrix_exponential(&h, -I * t);
            prop_assert!(unitarity_deviation(&u) < 1e-10);
        }

        #[test]
        fn exp_group_property(
            entries in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 9),
            s in -2.0f64..2.0,
            t in -2.0f64..2.0,
        ) {
            let h = random_hermitian(3, &entries);
            let lhs = matrix_exponential(&h, -I * (s + t));
            let rhs = matrix_exponential(&h, -I * s) * matrix_exponential(&h, -I * t);
            prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-11);
        }
    }
}
