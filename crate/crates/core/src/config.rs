//! System parameters.
//!
//! Config files are TOML with flat keys. Key names mirror the field names of
//! [`SystemConfig`] exactly (including the symbol suffixes such as
//! `bandwidth_B` or `num_aps_N`). Every key is optional; a missing key takes
//! the default listed on the field. Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Largest number of UEs per AP. 12! sequences is the most the
/// sequence-index space is allowed to hold.
pub const MAX_UES_PER_AP: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemConfig {
    /// Carrier frequency in Hz. Default 60 GHz.
    pub carrier_frequency: f64,
    /// System bandwidth in Hz. Default 500 MHz.
    #[serde(rename = "bandwidth_B")]
    pub bandwidth: f64,
    /// AP transmit power in dBm. Default 30 dBm.
    pub total_tx_power: f64,
    /// AP spacing in meters. Default 400 m.
    pub inter_cell_distance: f64,
    /// Default 2.
    #[serde(rename = "num_aps_N")]
    pub num_aps: usize,
    /// Default 5.
    #[serde(rename = "num_ues_per_ap_M")]
    pub num_ues_per_ap: usize,
    /// Default 8.
    #[serde(rename = "num_tx_antennas_Nt")]
    pub num_tx_antennas: usize,
    /// Default 16.
    #[serde(rename = "codebook_size_C")]
    pub codebook_size: usize,
    /// Multipath components per link. Default 3.
    #[serde(rename = "num_paths_L")]
    pub num_paths: usize,
    /// Kelvin. Default 300 K.
    #[serde(rename = "noise_temperature_T")]
    pub noise_temperature: f64,
    /// ULA element spacing in meters. Defaults to half a wavelength.
    #[serde(rename = "antenna_spacing_D", skip_serializing_if = "Option::is_none")]
    pub antenna_spacing: Option<f64>,
    /// Default 2.5.
    pub path_loss_exponent: f64,
    /// UE placement radius around each AP. Defaults to half the inter-cell distance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell_radius: Option<f64>,
    /// Learning-automaton step size, in (0, 1). Default 0.15.
    #[serde(rename = "learning_weight_w")]
    pub learning_weight: f64,
    /// Default 200.
    #[serde(rename = "max_learning_iters_T")]
    pub max_learning_iters: usize,
    /// Default 10.
    #[serde(rename = "greedy_iters_NDG")]
    pub greedy_iters: usize,
    /// Default 1.
    pub rng_seed: u64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            carrier_frequency: 60e9,
            bandwidth: 500e6,
            total_tx_power: 30.0,
            inter_cell_distance: 400.0,
            num_aps: 2,
            num_ues_per_ap: 5,
            num_tx_antennas: 8,
            codebook_size: 16,
            num_paths: 3,
            noise_temperature: 300.0,
            antenna_spacing: None,
            path_loss_exponent: 2.5,
            cell_radius: None,
            learning_weight: 0.15,
            max_learning_iters: 200,
            greedy_iters: 10,
            rng_seed: 1,
        }
    }
}

impl SystemConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: SystemConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("SystemConfig always serializes")
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_frequency
    }

    pub fn antenna_spacing(&self) -> f64 {
        self.antenna_spacing.unwrap_or_else(|| self.wavelength() / 2.0)
    }

    pub fn cell_radius(&self) -> f64 {
        self.cell_radius.unwrap_or(self.inter_cell_distance / 2.0)
    }

    /// Transmit power in watts.
    pub fn tx_power_watts(&self) -> f64 {
        dbm_to_watts(self.total_tx_power)
    }

    /// M!, the number of beam sequences per AP.
    pub fn sequences_per_ap(&self) -> u64 {
        factorial(self.num_ues_per_ap)
    }

    /// (M!)^N, the size of the joint schedule space. Saturates at `u128::MAX`.
    pub fn joint_schedule_count(&self) -> u128 {
        let per_ap = self.sequences_per_ap() as u128;
        (0..self.num_aps).fold(1u128, |acc, _| acc.saturating_mul(per_ap))
    }

    pub fn validate(&self) -> Result<()> {
        fn require(ok: bool, msg: impl Into<String>) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidConfig(msg.into()))
            }
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;

        require(self.num_aps >= 1, "num_aps_N must be at least 1")?;
        require(self.num_ues_per_ap >= 1, "num_ues_per_ap_M must be at least 1")?;
        require(
            self.num_ues_per_ap <= MAX_UES_PER_AP,
            format!(
                "num_ues_per_ap_M = {} exceeds the maximum of {MAX_UES_PER_AP}",
                self.num_ues_per_ap
            ),
        )?;
        require(self.num_tx_antennas >= 1, "num_tx_antennas_Nt must be at least 1")?;
        require(self.codebook_size >= 1, "codebook_size_C must be at least 1")?;
        require(self.num_paths >= 1, "num_paths_L must be at least 1")?;
        require(positive(self.carrier_frequency), "carrier_frequency must be > 0")?;
        require(positive(self.bandwidth), "bandwidth_B must be > 0")?;
        require(positive(self.noise_temperature), "noise_temperature_T must be > 0")?;
        require(self.total_tx_power.is_finite(), "total_tx_power must be finite")?;
        require(positive(self.inter_cell_distance), "inter_cell_distance must be > 0")?;
        require(
            self.path_loss_exponent.is_finite() && self.path_loss_exponent >= 0.0,
            "path_loss_exponent must be finite and >= 0",
        )?;
        if let Some(d) = self.antenna_spacing {
            require(positive(d), "antenna_spacing_D must be > 0")?;
        }
        // UEs are re-drawn until at least 1 m from their AP, so the disc must extend past that.
        require(
            self.cell_radius().is_finite() && self.cell_radius() > 1.0,
            "cell_radius must exceed 1 m",
        )?;
        require(
            self.learning_weight > 0.0 && self.learning_weight < 1.0,
            "learning_weight_w must lie in (0, 1)",
        )?;
        require(self.max_learning_iters >= 1, "max_learning_iters_T must be at least 1")?;
        require(self.greedy_iters >= 1, "greedy_iters_NDG must be at least 1")?;
        Ok(())
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
