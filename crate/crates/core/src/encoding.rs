// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! Failure bookkeeping for a logical CNOT between two-photon encoded qubits.
//!
//! Each logical CNOT uses two physical CNOTs. A physical failure measures the
//! two qubits it acts on; each measured qubit is replaced and re-entangled by
//! a corrective CNOT. A corrective failure is not corrected again, so the
//! logical gate fails iff some corrective CNOT fails. To leading order this
//! happens with probability `4p²`, which beats `p` for `p < 1/4`.
//!
//! Sampling uses ChaCha8 streams: trials are split into fixed chunks of
//! [`CHUNK_TRIALS`], chunk `k` draws from stream `k` of the generator seeded
//! with the run seed, so results do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Above this the leading-order analysis is no longer meaningful.
pub const ANALYSIS_LIMIT: f64 = 0.25;
/// The fixed point of `p ↦ 4p²`.
pub const THRESHOLD: f64 = 0.25;
pub const CHUNK_TRIALS: u64 = 1 << 16;

/// Physical CNOTs in the event tree: the two primary gates, each followed by
/// two corrective gates that only run if it failed.
pub const TREE_GATES: usize = 6;

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must lie in [0, 1], got {p}"),
        });
    }
    Ok(())
}

/// `4p²`.
pub fn analytic_logical_failure(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    if p > ANALYSIS_LIMIT {
        log::warn!("p = {p} is outside the small-p regime of the 4p² estimate");
    }
    Ok(4.0 * p * p)
}

/// Whether one outcome of the six gates is a logical failure.
///
/// Bits 0..3 are the first primary gate and its correctives, bits 3..6 the
/// second. Correctives of a primary gate that succeeded never run.
fn outcome_fails(failed: [bool; TREE_GATES]) -> bool {
    (failed[0] && (failed[1] || failed[2])) || (failed[3] && (failed[4] || failed[5]))
}

/// Logical failure probability, summed over all `2⁶` gate outcomes.
pub fn exact_tree_probability(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    let mut total = 0.0;
    for mask in 0u32..(1 << TREE_GATES) {
        let mut failed = [false; TREE_GATES];
        let mut weight = 1.0;
        for (g, f) in failed.iter_mut().enumerate() {
            *f = mask >> g & 1 == 1;
            weight *= if *f { p } else { 1.0 - p };
        }
        if outcome_fails(failed) {
            total += weight;
        }
    }
    Ok(total)
}

/// `(tree(p) - 4p²)/p³`; tends to -2 as `p → 0`.
pub fn cubic_coefficient(p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: format!("must be positive, got {p}"),
        });
    }
    Ok((exact_tree_probability(p)? - 4.0 * p * p) / (p * p * p))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub p: f64,
    pub analytic_p_logical: f64,
    pub exact_tree: f64,
    pub mc_estimate: f64,
    /// `√(q(1-q)/trials)` at the estimate `q`.
    pub mc_stderr: f64,
    pub failures: u64,
    pub trials: u64,
    pub seed: u64,
}

impl ThresholdReport {
    /// `sign(P_F′ - P_F)` of the analytic estimate: -1 below threshold.
    pub fn threshold_sign(&self) -> i8 {
        let d = self.analytic_p_logical - self.p;
        if d > 0.0 {
            1
        } else if d < 0.0 {
            -1
        } else {
            0
        }
    }
}

fn sample_chunk(p: f64, seed: u64, chunk: u64, trials: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut failures = 0;
    for _ in 0..trials {
        let mut failed = [false; TREE_GATES];
        for f in failed.iter_mut() {
            *f = rng.random::<f64>() < p;
        }
        failures += outcome_fails(failed) as u64;
    }
    failures
}

pub fn monte_carlo_logical_failure(p: f64, trials: u64, seed: u64) -> Result<ThresholdReport> {
    check_probability("p", p)?;
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            reason: "must be at least 1".into(),
        });
    }
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let failures: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let n = CHUNK_TRIALS.min(trials - k * CHUNK_TRIALS);
            sample_chunk(p, seed, k, n)
        })
        .sum();
    let estimate = failures as f64 / trials as f64;
    Ok(ThresholdReport {
        p,
        analytic_p_logical: analytic_logical_failure(p)?,
        exact_tree: exact_tree_probability(p)?,
        mc_estimate: estimate,
        mc_stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        failures,
        trials,
        seed,
    })
}

/// `[p₁, …, p_levels]` with `p_{k+1} = 4p_k²`; `p0` itself is not included.
pub fn concatenate(p0: f64, levels: usize) -> Result<Vec<f64>> {
    check_probability("p0", p0)?;
    if levels == 0 {
        return Err(Error::InvalidParameter {
            name: "levels",
            reason: "must be at least 1".into(),
        });
    }
    let mut out = Vec::with_capacity(levels);
    let mut p = p0;
    for _ in 0..levels {
        p = 4.0 * p * p;
        out.push(p);
    }
    Ok(out)
}

/// One [`ThresholdReport`] per grid point, all with the same seed.
pub fn threshold_sweep(grid: &[f64], trials: u64, seed: u64) -> Result<Vec<ThresholdReport>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "must not be empty".into(),
        });
    }
    if let Some(&bad) = grid.iter().find(|&&p| !(p > 0.0 && p < 1.0)) {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: format!("points must lie in (0, 1), got {bad}"),
        });
    }
    grid.iter()
        .map(|&p| monte_carlo_logical_failure(p, trials, seed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tree_closed_form(p: f64) -> f64 {
        let q = p * (1.0 - (1.0 - p) * (1.0 - p));
        1.0 - (1.0 - q) * (1.0 - q)
    }

    #[test]
    fn analytic_values() {
        assert_relative_eq!(analytic_logical_failure(0.1).unwrap(), 0.04, max_relative = 1e-15);
        assert_eq!(analytic_logical_failure(0.25).unwrap(), 0.25);
        assert_eq!(analytic_logical_failure(0.0).unwrap(), 0.0);
        assert!(analytic_logical_failure(1.2).is_err());
    }

    #[test]
    fn tree_matches_closed_form() {
        for &p in &[0.0, 0.01, 0.1, 0.25, 0.5, 0.9, 1.0] {
            assert!((exact_tree_probability(p).unwrap() - tree_closed_form(p)).abs() < 1e-15);
        }
        assert_relative_eq!(exact_tree_probability(0.1).unwrap(), 0.037_639, max_relative = 1e-12);
        assert_eq!(exact_tree_probability(1.0).unwrap(), 1.0);
    }

    #[test]
    fn tree_is_four_p_squared_to_leading_order() {
        let c = cubic_coefficient(1e-3).unwrap();
        assert!((c + 2.0).abs() < 0.01, "{c}");
        for &p in &[1e-3, 1e-2, 0.05] {
            let residual = (exact_tree_probability(p).unwrap() - 4.0 * p * p).abs();
            assert!(residual <= 3.0 * p * p * p);
        }
    }

    #[test]
    fn monte_carlo_edges() {
        let zero = monte_carlo_logical_failure(0.0, 10_000, 1).unwrap();
        assert_eq!(zero.failures, 0);
        let one = monte_carlo_logical_failure(1.0, 10_000, 1).unwrap();
        assert_eq!(one.mc_estimate, 1.0);
        assert_eq!(one.mc_stderr, 0.0);
        assert!(monte_carlo_logical_failure(0.1, 0, 1).is_err());
    }

    #[test]
    fn monte_carlo_matches_tree() {
        let r = monte_carlo_logical_failure(0.1, 200_000, 7).unwrap();
        assert!((r.mc_estimate - r.exact_tree).abs() < 4.0 * r.mc_stderr);
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let a = monte_carlo_logical_failure(0.2, 150_000, 42).unwrap();
        let b = monte_carlo_logical_failure(0.2, 150_000, 42).unwrap();
        assert_eq!(a, b);
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = single.install(|| monte_carlo_logical_failure(0.2, 150_000, 42).unwrap());
        assert_eq!(a, c);
        let d = monte_carlo_logical_failure(0.2, 150_000, 43).unwrap();
        assert_ne!(a.failures, d.failures);
    }

    #[test]
    fn concatenation() {
        let levels = concatenate(0.1, 2).unwrap();
        assert_relative_eq!(levels[0], 0.04, max_relative = 1e-15);
        assert_relative_eq!(levels[1], 0.0064, max_relative = 1e-14);
        assert!(concatenate(0.25, 5).unwrap().iter().all(|&p| p == 0.25));
        let above = concatenate(0.3, 4).unwrap();
        assert!(above[0] > 0.3 && above.windows(2).all(|w| w[1] > w[0]));
        assert!(concatenate(0.1, 0).is_err());
    }

    #[test]
    fn sweep_signs() {
        let rows = threshold_sweep(&[0.2, 0.25, 0.3], 1000, 3).unwrap();
        assert_relative_eq!(rows[0].analytic_p_logical, 0.16, max_relative = 1e-14);
        assert_eq!(rows[0].threshold_sign(), -1);
        assert_eq!(rows[1].threshold_sign(), 0);
        assert_relative_eq!(rows[2].analytic_p_logical, 0.36, max_relative = 1e-14);
        assert_eq!(rows[2].threshold_sign(), 1);
        assert!(threshold_sweep(&[0.0], 10, 1).is_err());
        assert!(threshold_sweep(&[], 10, 1).is_err());
    }
}
