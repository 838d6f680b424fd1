// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-photon absorption rate of an atomic vapor in a fiber core, in SI units.
//!
//! Detuning and transition matrix element only enter as a ratio, so any
//! common energy unit works for them.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Core diameter, in wavelengths, at which the resonant cross section
/// fills the core area.
pub const UNITY_MODE_DIAMETER: f64 = 0.78;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionParams {
    /// m
    pub wavelength: f64,
    /// Radiative lifetime, s.
    pub tau_r: f64,
    /// Collisional lifetime, s.
    pub tau_c: f64,
    /// Detuning of the intermediate level.
    pub detuning: f64,
    /// Transition matrix element, same units as `detuning`.
    pub m21: f64,
    /// Wave-packet length, m.
    pub packet_length: f64,
    /// m
    pub core_diameter: f64,
    /// Atoms within a length `c·τ_R` of the core.
    pub n_atoms: f64,
    /// Cavity finesse, at least 1.
    pub finesse: f64,
    /// Error probability the device is sized for, in (0, 1].
    pub target_error: f64,
}

impl AbsorptionParams {
    /// A parameter set where every suppression factor is cancelled:
    /// `N_A f_δ = 1`, `f_C f_P = 1` and `σ₀/A = 1`.
    pub fn canonical(wavelength: f64, tau_r: f64) -> Self {
        let ratio: f64 = 0.1;
        let tau_c = 0.1 * tau_r;
        let sigma0 = resonant_cross_section(wavelength);
        Self {
            wavelength,
            tau_r,
            tau_c,
            detuning: 1.0,
            m21: ratio,
            packet_length: SPEED_OF_LIGHT * tau_c,
            core_diameter: 2.0 * (sigma0 / PI).sqrt(),
            n_atoms: 1.0 / (ratio * ratio),
            finesse: 1.0,
            target_error: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wavelength", self.wavelength),
            ("tau_r", self.tau_r),
            ("tau_c", self.tau_c),
            ("m21", self.m21),
            ("packet_length", self.packet_length),
            ("core_diameter", self.core_diameter),
            ("n_atoms", self.n_atoms),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be positive and finite, got {value}"),
                });
            }
        }
        if self.detuning == 0.0 {
            return Err(Error::InvalidParameter {
                name: "detuning",
                reason: "zero detuning is the resonant case, outside the off-resonant rate model".into(),
            });
        }
        if !(self.detuning > 0.0) || !self.detuning.is_finite() {
            return Err(Error::InvalidParameter {
                name: "detuning",
                reason: format!("must be positive and finite, got {}", self.detuning),
            });
        }
        if !(self.finesse >= 1.0) || !self.finesse.is_finite() {
            return Err(Error::InvalidParameter {
                name: "finesse",
                reason: format!("must be at least 1, got {}", self.finesse),
            });
        }
        check_target_error(self.target_error)?;
        Ok(())
    }

    /// Operating-regime warnings; these do not invalidate the parameters.
    pub fn regime_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        if self.tau_c > self.tau_r {
            warnings.push(format!(
                "tau_c = {} s exceeds tau_r = {} s; the collisional broadening regime assumes tau_c << tau_r",
                self.tau_c, self.tau_r
            ));
        }
        if self.m21 >= self.detuning {
            warnings.push(format!(
                "m21/detuning = {} is not small; the far-detuned factor is unreliable",
                self.m21 / self.detuning
            ));
        }
        for w in &warnings {
            log::warn!("{w}");
        }
        warnings
    }
}

fn check_target_error(p: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "target_error",
            reason: format!("must lie in (0, 1], got {p}"),
        });
    }
    Ok(())
}

/// `σ₀ = 3λ²/(2π)`.
pub fn resonant_cross_section(wavelength: f64) -> f64 {
    3.0 * wavelength * wavelength / (2.0 * PI)
}

/// Area of a circular core.
pub fn core_area(core_diameter: f64) -> f64 {
    let r = 0.5 * core_diameter;
    PI * r * r
}

/// `σ₀/A`.
pub fn unity_mode_check(wavelength: f64, core_diameter: f64) -> Result<f64> {
    for (name, value) in [("wavelength", wavelength), ("core_diameter", core_diameter)] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must be positive and finite, got {value}"),
            });
        }
    }
    Ok(resonant_cross_section(wavelength) / core_area(core_diameter))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factors {
    /// `(M₂₁/δ)²`
    pub f_delta: f64,
    /// `τ_C/τ_R`
    pub f_c: f64,
    /// `cτ_R/L_p`
    pub f_p: f64,
}

pub fn factor_breakdown(params: &AbsorptionParams) -> Result<Factors> {
    params.validate()?;
    let ratio = params.m21 / params.detuning;
    Ok(Factors {
        f_delta: ratio * ratio,
        f_c: params.tau_c / params.tau_r,
        f_p: SPEED_OF_LIGHT * params.tau_r / params.packet_length,
    })
}

/// Distance over which the two-photon amplitude falls by `1/e`, `c/R₂`.
pub fn absorption_length(rate: f64) -> f64 {
    SPEED_OF_LIGHT / rate
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceLength {
    /// m
    pub length: f64,
    /// Single-photon loss relative to a bare fiber, `1/f`.
    pub loss_scaling: f64,
}

/// `L = (l₂/P_E)/f²`.
pub fn device_length(target_error: f64, l2: f64, finesse: f64) -> Result<DeviceLength> {
    check_target_error(target_error)?;
    if !(l2 > 0.0) || !l2.is_finite() {
        return Err(Error::InvalidParameter {
            name: "l2",
            reason: format!("must be positive and finite, got {l2}"),
        });
    }
    if !(finesse >= 1.0) || !finesse.is_finite() {
        return Err(Error::InvalidParameter {
            name: "finesse",
            reason: format!("must be at least 1, got {finesse}"),
        });
    }
    Ok(DeviceLength {
        length: l2 / target_error / (finesse * finesse),
        loss_scaling: 1.0 / finesse,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    /// m²
    pub sigma0: f64,
    /// m²
    pub core_area: f64,
    pub sigma_ratio: f64,
    pub f_delta: f64,
    pub f_c: f64,
    pub f_p: f64,
    /// 1/s
    pub r2: f64,
    /// m
    pub l2: f64,
    /// m
    pub device_length: f64,
    pub loss_scaling: f64,
    pub warnings: Vec<String>,
}

/// `R₂ = √(2/π) N_A f_δ f_C f_P (σ₀/A) / τ_R`, with the derived lengths.
pub fn two_photon_rate(params: &AbsorptionParams) -> Result<RateReport> {
    let factors = factor_breakdown(params)?;
    let sigma0 = resonant_cross_section(params.wavelength);
    let area = core_area(params.core_diameter);
    let sigma_ratio = sigma0 / area;
    let r2 = (2.0 / PI).sqrt()
        * params.n_atoms
        * factors.f_delta
        * factors.f_c
        * factors.f_p
        * sigma_ratio
        / params.tau_r;
    let l2 = absorption_length(r2);
    let device = device_length(params.target_error, l2, params.finesse)?;
    Ok(RateReport {
        sigma0,
        core_area: area,
        sigma_ratio,
        f_delta: factors.f_delta,
        f_c: factors.f_c,
        f_p: factors.f_p,
        r2,
        l2,
        device_length: device.length,
        loss_scaling: device.loss_scaling,
        warnings: params.regime_warnings(),
    })
}
