// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use anyhow::{bail, Result};
use serde::Serialize;
use zeno_core::absorption;
use zeno_core::encoding;
use zeno_core::fermion;
use zeno_core::gate::{self, GateReport, ProtocolFamily, ProtocolKind, ZenoProtocol};
use zeno_core::linalg;

use crate::output::{self, matrix_json, render_json, render_table, Cell, Format, Header, Table};
use crate::params;

type Matrix = Vec<Vec<[f64; 2]>>;
type Curve = fn(&[f64]) -> zeno_core::Result<Vec<(f64, f64)>>;

fn check_report_format(format: Format, subcommand: &str) -> Result<()> {
    if format == Format::Csv {
        bail!("{subcommand} emits a structured report; use --format json");
    }
    Ok(())
}

fn time_grid(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if t_max.is_nan() || t_max <= 0.0 || t_max.is_infinite() {
        bail!("--t-max must be positive and finite, got {t_max}");
    }
    if steps < 2 {
        bail!("--steps must be at least 2, got {steps}");
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|k| t_max * k as f64 / last).collect())
}

fn curve(
    name: &'static str,
    column: &'static str,
    t_max: f64,
    steps: usize,
    format: Format,
    f: Curve,
) -> Result<String> {
    let times = time_grid(t_max, steps)?;
    let mut table = Table::new(vec!["t", column]);
    for (t, p) in f(&times)? {
        table.push(vec![Cell::Num(t), Cell::Num(p)]);
    }
    let header = Header::new(name)
        .param("t_max", output::format_number(t_max))
        .param("steps", steps);
    render_table(&header, &table, format)
}

pub fn rabi(t_max: f64, steps: usize, format: Format) -> Result<String> {
    curve("rabi", "p1", t_max, steps, format, gate::rabi_curve)
}

pub fn hom(t_max: f64, steps: usize, format: Format) -> Result<String> {
    curve("hom", "p11", t_max, steps, format, gate::hom_curve)
}

pub fn zeno_sweep(family: ProtocolFamily, grid: &[u32], format: Format) -> Result<String> {
    if grid.is_empty() {
        bail!("--n needs at least one value");
    }
    if grid.contains(&0) {
        bail!("--n values must be positive");
    }
    let points = gate::error_curve(family, grid)?;
    let mut table = Table::new(vec!["n", "p_e"]);
    for pt in points {
        table.push(vec![Cell::Num(pt.n), Cell::Num(pt.error)]);
    }
    let mode = match family {
        ProtocolFamily::Discrete => "discrete",
        ProtocolFamily::Absorption => "absorption",
    };
    let list: Vec<String> = grid.iter().map(u32::to_string).collect();
    let header = Header::new("zeno-sweep").param("mode", mode).param("n", list.join(","));
    render_table(&header, &table, format)
}

#[derive(Serialize)]
struct GateJson {
    protocol: &'static str,
    measurements: Option<u32>,
    tau_d: Option<f64>,
    effective_measurements: f64,
    interaction_time: f64,
    output_phase: f64,
    target: Matrix,
    conditional_map: Matrix,
    unconditional_map: Matrix,
    success_probability: [f64; 4],
    error_probability: f64,
    leakage: [f64; 4],
    fidelity_to_target: f64,
    unconditional_fidelity: f64,
    max_entry_error: f64,
}

impl From<&GateReport> for GateJson {
    fn from(r: &GateReport) -> Self {
        let (protocol, measurements, tau_d) = match r.protocol.kind {
            ProtocolKind::Discrete { measurements } => ("discrete", Some(measurements), None),
            ProtocolKind::Absorption { tau_d } => ("absorption", None, Some(tau_d)),
        };
        Self {
            protocol,
            measurements,
            tau_d,
            effective_measurements: r.protocol.effective_measurements(),
            interaction_time: r.protocol.interaction_time,
            output_phase: r.protocol.output_phase,
            target: matrix_json(&gate::sqrt_swap_prime()),
            conditional_map: matrix_json(&r.conditional_map),
            unconditional_map: matrix_json(&r.unconditional_map),
            success_probability: r.success_probability,
            error_probability: r.error_probability,
            leakage: r.leakage,
            fidelity_to_target: r.fidelity_to_target,
            unconditional_fidelity: r.unconditional_fidelity,
            max_entry_error: r.max_entry_error(),
        }
    }
}

/// How `gate` chooses its protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateChoice {
    Measurements(u32),
    TauD(f64),
    Matched(f64),
}

pub fn gate(choice: GateChoice, format: Format) -> Result<String> {
    check_report_format(format, "gate")?;
    let (protocol, header) = match choice {
        GateChoice::Measurements(n) => (
            ZenoProtocol::discrete(n)?,
            Header::new("gate").param("measurements", n),
        ),
        GateChoice::TauD(tau_d) => (
            ZenoProtocol::absorption(tau_d)?,
            Header::new("gate").param("tau_d", output::format_number(tau_d)),
        ),
        GateChoice::Matched(n) => (
            ZenoProtocol::absorption_matched(n)?,
            Header::new("gate").param("matched", output::format_number(n)),
        ),
    };
    let report = gate::extract_gate(&protocol)?;
    render_json(&header, &GateJson::from(&report))
}

#[derive(Serialize)]
struct EquivalenceJson {
    epsilon: f64,
    time: f64,
    measurements: u32,
    /// Keyed by input occupation, e.g. "11".
    deviation: Vec<(String, f64)>,
    single_particle: f64,
    two_particle: f64,
}

#[derive(Serialize)]
struct AnticommutatorJson {
    tau_d: f64,
    tau: f64,
    deviation: f64,
    a_adag_on_zero: f64,
    a_adag_on_one: f64,
    adag_a_on_zero: f64,
    adag_a_on_one: f64,
    anticommutator: Matrix,
    cross_deviation: f64,
    cross_deviation_full: f64,
}

#[derive(Serialize)]
struct NoGoJson {
    device_swap_prime: Matrix,
    fermionic: Matrix,
    bosonic: Matrix,
    fermionic_identity_error: f64,
    bosonic_controlled_z_error: f64,
}

#[derive(Serialize)]
struct FermionJson {
    equivalence: EquivalenceJson,
    anticommutator: AnticommutatorJson,
    no_go: NoGoJson,
}

pub struct FermionArgs {
    pub tau_d: f64,
    pub tau: f64,
    pub measurements: u32,
    pub epsilon: f64,
    pub time: f64,
}

pub fn fermion_report(args: &FermionArgs, format: Format) -> Result<String> {
    check_report_format(format, "fermion-report")?;
    let eq = fermion::compare_to_zeno_photons(args.epsilon, args.time, args.measurements)?;
    let ac = fermion::anticommutator_report(args.tau_d, args.tau)?;
    let ng = fermion::no_go_report();
    let data = FermionJson {
        equivalence: EquivalenceJson {
            epsilon: eq.epsilon,
            time: eq.time,
            measurements: eq.measurements,
            deviation: fermion::FermionBasis::STATES
                .iter()
                .zip(eq.deviation)
                .map(|(&(a, b), d)| (format!("{a}{b}"), d))
                .collect(),
            single_particle: eq.single_particle(),
            two_particle: eq.two_particle(),
        },
        anticommutator: AnticommutatorJson {
            tau_d: ac.tau_d,
            tau: ac.tau,
            deviation: ac.deviation,
            a_adag_on_zero: ac.a_adag_on_zero,
            a_adag_on_one: ac.a_adag_on_one,
            adag_a_on_zero: ac.adag_a_on_zero,
            adag_a_on_one: ac.adag_a_on_one,
            anticommutator: matrix_json(&ac.anticommutator),
            cross_deviation: ac.cross_deviation,
            cross_deviation_full: ac.cross_deviation_full,
        },
        no_go: NoGoJson {
            fermionic_identity_error: linalg::max_abs_diff(&ng.fermionic, &linalg::identity(4)),
            bosonic_controlled_z_error: linalg::max_abs_diff(&ng.bosonic, &gate::controlled_z()),
            device_swap_prime: matrix_json(&ng.device_swap_prime),
            fermionic: matrix_json(&ng.fermionic),
            bosonic: matrix_json(&ng.bosonic),
        },
    };
    let header = Header::new("fermion-report")
        .param("tau_d", output::format_number(args.tau_d))
        .param("tau", output::format_number(args.tau))
        .param("measurements", args.measurements)
        .param("epsilon", output::format_number(args.epsilon))
        .param("time", output::format_number(args.time));
    render_json(&header, &data)
}

#[derive(Serialize)]
struct RateJson {
    sigma0: f64,
    core_area: f64,
    sigma_ratio: f64,
    f_delta: f64,
    f_c: f64,
    f_p: f64,
    r2: f64,
    r2_tau_r: f64,
    l2: f64,
    device_length: f64,
    loss_scaling: f64,
    warnings: Vec<String>,
}

pub fn rate(path: &Path, format: Format) -> Result<String> {
    check_report_format(format, "rate")?;
    let p = params::read_rate_params(path)?;
    let r = absorption::two_photon_rate(&p)?;
    let mut header = Header::new("rate").param("params", path.display());
    for (key, value) in params::RATE_KEYS.iter().zip(params::rate_values(&p)) {
        header = header.param(key, format!("{value:e}"));
    }
    let data = RateJson {
        r2_tau_r: r.r2 * p.tau_r,
        sigma0: r.sigma0,
        core_area: r.core_area,
        sigma_ratio: r.sigma_ratio,
        f_delta: r.f_delta,
        f_c: r.f_c,
        f_p: r.f_p,
        r2: r.r2,
        l2: r.l2,
        device_length: r.device_length,
        loss_scaling: r.loss_scaling,
        warnings: r.warnings,
    };
    render_json(&header, &data)
}

pub fn threshold(grid: &[f64], trials: u64, seed: u64, format: Format) -> Result<String> {
    if grid.is_empty() {
        bail!("--p needs at least one value");
    }
    let rows = encoding::threshold_sweep(grid, trials, seed)?;
    let mut table = Table::new(vec!["p", "analytic", "exact_tree", "mc_estimate", "mc_stderr", "trials", "seed"]);
    for r in rows {
        table.push(vec![
            Cell::Num(r.p),
            Cell::Num(r.analytic_p_logical),
            Cell::Num(r.exact_tree),
            Cell::Num(r.mc_estimate),
            Cell::Num(r.mc_stderr),
            Cell::UInt(r.trials),
            Cell::UInt(r.seed),
        ]);
    }
    let list: Vec<String> = grid.iter().map(|&p| output::format_number(p)).collect();
    let header = Header::new("threshold")
        .seed(seed)
        .param("p", list.join(","))
        .param("trials", trials)
        .param(
            "rng",
            format!("ChaCha8; stream k draws trials k*{0} to (k+1)*{0}-1", encoding::CHUNK_TRIALS),
        );
    render_table(&header, &table, format)
}
