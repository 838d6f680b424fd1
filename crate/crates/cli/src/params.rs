// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! Flat `key = value` parameter files in SI units. `#` starts a comment.

use std::path::Path;

use anyhow::{bail, Context, Result};
use zeno_core::absorption::AbsorptionParams;

/// Keys accepted in a rate parameter file, in the order they are echoed.
pub const RATE_KEYS: [&str; 10] = [
    "wavelength",
    "tau_r",
    "tau_c",
    "detuning",
    "m21",
    "packet_length",
    "core_diameter",
    "n_atoms",
    "finesse",
    "target_error",
];

/// Parsed `key = value` pairs in file order.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, f64)>> {
    let mut pairs: Vec<(String, f64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {line_no}: expected `key = value`, got `{line}`");
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            bail!("line {line_no}: missing key");
        }
        if !RATE_KEYS.contains(&key) {
            bail!("line {line_no}: unknown key `{key}`");
        }
        if pairs.iter().any(|(k, _)| k == key) {
            bail!("line {line_no}: duplicate key `{key}`");
        }
        let number: f64 = value
            .parse()
            .map_err(|_| anyhow::anyhow!("line {line_no}: `{value}` is not a number for `{key}`"))?;
        if !number.is_finite() {
            bail!("line {line_no}: `{key}` must be finite");
        }
        pairs.push((key.to_string(), number));
    }
    Ok(pairs)
}

pub fn parse_rate_params(text: &str) -> Result<AbsorptionParams> {
    let pairs = parse_pairs(text)?;
    let get = |key: &str| -> Result<f64> {
        pairs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .with_context(|| format!("missing key `{key}`"))
    };
    Ok(AbsorptionParams {
        wavelength: get("wavelength")?,
        tau_r: get("tau_r")?,
        tau_c: get("tau_c")?,
        detuning: get("detuning")?,
        m21: get("m21")?,
        packet_length: get("packet_length")?,
        core_diameter: get("core_diameter")?,
        n_atoms: get("n_atoms")?,
        finesse: get("finesse")?,
        target_error: get("target_error")?,
    })
}

pub fn read_rate_params(path: &Path) -> Result<AbsorptionParams> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_rate_params(&text).with_context(|| format!("{}", path.display()))
}

/// Values of `params` in [`RATE_KEYS`] order.
pub fn rate_values(p: &AbsorptionParams) -> [f64; 10] {
    [
        p.wavelength,
        p.tau_r,
        p.tau_c,
        p.detuning,
        p.m21,
        p.packet_length,
        p.core_diameter,
        p.n_atoms,
        p.finesse,
        p.target_error,
    ]
}
