//! Beam sequences, received power and spectral-efficiency utilities.
//!
//! A slot's SINR at the UE served by AP `n` counts interference from every
//! other AP `a`, each transmitting on the beam toward the UE that `a` itself
//! schedules in that slot. This coupling is what makes sequence order matter.

use std::fmt;
use std::io::Write;

use num_complex::Complex64;

use crate::beamforming::beamforming_gain;
use crate::channel::{path_loss_db, ChannelSet};
use crate::config::SystemConfig;
use crate::deployment::{Deployment, UeId};
use crate::error::{Error, Result};

/// Serving order of an AP's UEs over one scheduling cycle: slot `s` serves UE
/// `order[s]`. Always a permutation of `0..M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeamSequence(Vec<usize>);

impl BeamSequence {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &ue in &order {
            if ue >= order.len() || std::mem::replace(&mut seen[ue], true) {
                return Err(Error::InvalidConfig(format!(
                    "{order:?} is not a permutation of 0..{}",
                    order.len()
                )));
            }
        }
        Ok(Self(order))
    }

    pub fn identity(m: usize) -> Self {
        Self((0..m).collect())
    }

    pub(crate) fn new_unchecked(order: Vec<usize>) -> Self {
        Self(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BeamSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|u| u.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One beam sequence per AP.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JointSchedule(Vec<BeamSequence>);

impl JointSchedule {
    pub fn new(sequences: Vec<BeamSequence>) -> Result<Self> {
        if let Some(first) = sequences.first() {
            if sequences.iter().any(|s| s.len() != first.len()) {
                return Err(Error::InvalidConfig(
                    "all APs need sequences of the same length".into(),
                ));
            }
        }
        Ok(Self(sequences))
    }

    pub fn sequences(&self) -> &[BeamSequence] {
        &self.0
    }

    pub fn sequence(&self, ap: usize) -> &BeamSequence {
        &self.0[ap]
    }

    pub fn set(&mut self, ap: usize, seq: BeamSequence) {
        self.0[ap] = seq;
    }

    pub fn num_aps(&self) -> usize {
        self.0.len()
    }

    pub(crate) fn orders(&self) -> Vec<&[usize]> {
        self.0.iter().map(|s| s.order()).collect()
    }
}

/// Power received at `victim` from `tx_ap` transmitting on `beam`, in watts:
/// `P · |beam^H h|² · 10^(−PL/10)`. Serving and interfering links use the same law.
pub fn received_power_watts(
    tx_ap: usize,
    victim: UeId,
    beam: &[Complex64],
    channels: &ChannelSet,
    deployment: &Deployment,
    config: &SystemConfig,
) -> Result<f64> {
    let h = channels.h(tx_ap, victim)?;
    let gain = beamforming_gain(beam, h)?;
    let loss_db = path_loss_db(deployment.distance(tx_ap, victim)?, config)?;
    Ok(config.tx_power_watts() * gain * 10f64.powf(-loss_db / 10.0))
}

/// Per-slot and per-cycle figures for one joint schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct UtilityReport {
    /// `slot_sinr[n][s]`, linear.
    pub slot_sinr: Vec<Vec<f64>>,
    /// `slot_se[n][s]`, bits/s/Hz.
    pub slot_se: Vec<Vec<f64>>,
    /// UE served by AP `n` in slot `s`.
    pub served: Vec<Vec<usize>>,
    pub cycle_utility: Vec<f64>,
    pub network_utility: f64,
}

impl UtilityReport {
    /// Rows `kind,ap,slot,ue,sinr,spectral_efficiency`: one `slot` row per
    /// (AP, slot), then one `cycle` row per AP and a final `network` row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["kind", "ap", "slot", "ue", "sinr", "spectral_efficiency"])?;
        for (n, (sinrs, ses)) in self.slot_sinr.iter().zip(&self.slot_se).enumerate() {
            for (s, (sinr, se)) in sinrs.iter().zip(ses).enumerate() {
                w.write_record([
                    "slot".to_string(),
                    n.to_string(),
                    s.to_string(),
                    self.served[n][s].to_string(),
                    sinr.to_string(),
                    se.to_string(),
                ])?;
            }
        }
        for (n, u) in self.cycle_utility.iter().enumerate() {
            w.write_record(["cycle", &n.to_string(), "", "", "", &u.to_string()])?;
        }
        w.write_record(["network", "", "", "", "", &self.network_utility.to_string()])?;
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn spectral_efficiency(sinr: f64) -> f64 {
    (1.0 + sinr).log2()
}

pub(crate) fn mean(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    values.sum::<f64>() / n as f64
}

pub(crate) fn check_joint(joint: &JointSchedule, num_aps: usize, ues_per_ap: usize) -> Result<()> {
    if joint.num_aps() != num_aps {
        return Err(Error::InvalidConfig(format!(
            "joint schedule has {} APs, scenario has {num_aps}",
            joint.num_aps()
        )));
    }
    for s in joint.sequences() {
        if s.len() != ues_per_ap {
            return Err(Error::InvalidConfig(format!(
                "sequence {s} has length {}, expected {ues_per_ap}",
                s.len()
            )));
        }
    }
    Ok(())
}
