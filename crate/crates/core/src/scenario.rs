//! One trial's frozen inputs: geometry, channels, codebook and beam table.
//!
//! Utilities are evaluated against a table of received powers
//! `rx[a][j][victim]`: the power at `victim` when AP `a` beams toward its own
//! UE `j`. Every table entry comes from [`received_power_watts`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::beamforming::{BeamTable, Codebook};
use crate::channel::{noise_power_watts, ChannelSet};
use crate::config::SystemConfig;
use crate::deployment::{generate_deployment, Deployment, UeId};
use crate::error::{check_index, Result};
use crate::utility::{
    check_joint, mean, received_power_watts, spectral_efficiency, BeamSequence, JointSchedule,
    UtilityReport,
};

/// ChaCha stream ids carved out of a trial seed.
pub mod streams {
    pub const DEPLOYMENT: u64 = 0;
    pub const CHANNELS: u64 = 1;
    pub const RANDOM: u64 = 2;
    pub const GREEDY: u64 = 3;
    pub const LEARNING: u64 = 4;
}

/// RNG for one purpose within a trial.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Debug)]
pub struct Scenario {
    config: SystemConfig,
    deployment: Deployment,
    channels: ChannelSet,
    codebook: Codebook,
    beams: BeamTable,
    noise: f64,
    rx: Vec<f64>,
}

impl Scenario {
    /// Draws deployment and channels from independent streams of `seed`.
    pub fn generate(config: &SystemConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let deployment = generate_deployment(config, &mut stream_rng(seed, streams::DEPLOYMENT))?;
        let channels = ChannelSet::generate(&mut stream_rng(seed, streams::CHANNELS), config);
        Self::new(config.clone(), deployment, channels)
    }

    pub fn new(config: SystemConfig, deployment: Deployment, channels: ChannelSet) -> Result<Self> {
        config.validate()?;
        let codebook = Codebook::build(&config);
        let beams = BeamTable::select(&codebook, &channels)?;
        let (n, m) = (deployment.num_aps(), deployment.ues_per_ap());
        let mut rx = Vec::with_capacity(n * m * n * m);
        for a in 0..n {
            for j in 0..m {
                let beam = codebook.entry(beams.index(UeId::new(a, j)));
                for vn in 0..n {
                    for vm in 0..m {
                        rx.push(received_power_watts(
                            a,
                            UeId::new(vn, vm),
                            beam,
                            &channels,
                            &deployment,
                            &config,
                        )?);
                    }
                }
            }
        }
        Ok(Self {
            noise: noise_power_watts(&config),
            config,
            deployment,
            channels,
            codebook,
            beams,
            rx,
        })
    }

    pub fn config(&self) -> &SystemConfig {
        &self.config
    }

    pub fn deployment(&self) -> &Deployment {
        &self.deployment
    }

    pub fn channels(&self) -> &ChannelSet {
        &self.channels
    }

    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    pub fn beams(&self) -> &BeamTable {
        &self.beams
    }

    pub fn noise_power(&self) -> f64 {
        self.noise
    }

    pub fn num_aps(&self) -> usize {
        self.deployment.num_aps()
    }

    pub fn ues_per_ap(&self) -> usize {
        self.deployment.ues_per_ap()
    }

    /// Same links and beams restricted to the listed APs.
    pub fn subset(&self, aps: &[usize]) -> Result<Self> {
        for &a in aps {
            check_index("ap", a, self.num_aps())?;
        }
        let config = SystemConfig {
            num_aps: aps.len(),
            ..self.config.clone()
        };
        config.validate()?;
        Self::new(config, self.deployment.subset(aps), self.channels.subset(aps))
    }

    #[inline]
    fn rx(&self, tx_ap: usize, toward: usize, victim: UeId) -> f64 {
        let (n, m) = (self.num_aps(), self.ues_per_ap());
        self.rx[(tx_ap * m + toward) * n * m + victim.ap * m + victim.ue]
    }

    /// Signal and summed interference at AP `ap`'s UE in `slot`.
    #[inline]
    fn slot_terms(&self, orders: &[&[usize]], ap: usize, slot: usize) -> (f64, f64) {
        let victim = UeId::new(ap, orders[ap][slot]);
        let signal = self.rx(ap, victim.ue, victim);
        let interference = (0..orders.len())
            .filter(|&a| a != ap)
            .map(|a| self.rx(a, orders[a][slot], victim))
            .sum();
        (signal, interference)
    }

    #[inline]
    fn slot_sinr_raw(&self, orders: &[&[usize]], ap: usize, slot: usize) -> f64 {
        let (s, i) = self.slot_terms(orders, ap, slot);
        s / (i + self.noise)
    }

    pub(crate) fn cycle_utility_raw(&self, orders: &[&[usize]], ap: usize) -> f64 {
        mean((0..self.ues_per_ap()).map(|slot| spectral_efficiency(self.slot_sinr_raw(orders, ap, slot))))
    }

    pub(crate) fn network_utility_raw(&self, orders: &[&[usize]]) -> f64 {
        mean((0..orders.len()).map(|ap| self.cycle_utility_raw(orders, ap)))
    }

    /// AP `ap`'s cycle utility if it used `own` while every other AP keeps its
    /// sequence from `joint`.
    pub(crate) fn cycle_utility_with(&self, joint: &[&[usize]], ap: usize, own: &[usize]) -> f64 {
        let mut orders = joint.to_vec();
        orders[ap] = own;
        self.cycle_utility_raw(&orders, ap)
    }

    /// Spectral efficiency (bits/s/Hz) at the UE AP `ap` serves in `slot`.
    pub fn slot_utility(&self, joint: &JointSchedule, slot: usize, ap: usize) -> Result<f64> {
        check_joint(joint, self.num_aps(), self.ues_per_ap())?;
        check_index("ap", ap, self.num_aps())?;
        check_index("slot", slot, self.ues_per_ap())?;
        Ok(spectral_efficiency(self.slot_sinr_raw(&joint.orders(), ap, slot)))
    }

    /// Mean slot utility of AP `ap` over the cycle.
    pub fn cycle_utility(&self, joint: &JointSchedule, ap: usize) -> Result<f64> {
        check_joint(joint, self.num_aps(), self.ues_per_ap())?;
        check_index("ap", ap, self.num_aps())?;
        Ok(self.cycle_utility_raw(&joint.orders(), ap))
    }

    /// Mean cycle utility over all APs.
    pub fn network_utility(&self, joint: &JointSchedule) -> Result<f64> {
        check_joint(joint, self.num_aps(), self.ues_per_ap())?;
        Ok(self.network_utility_raw(&joint.orders()))
    }

    pub fn report(&self, joint: &JointSchedule) -> Result<UtilityReport> {
        check_joint(joint, self.num_aps(), self.ues_per_ap())?;
        let orders = joint.orders();
        let (n, m) = (self.num_aps(), self.ues_per_ap());
        let slot_sinr: Vec<Vec<f64>> = (0..n)
            .map(|ap| (0..m).map(|s| self.slot_sinr_raw(&orders, ap, s)).collect())
            .collect();
        let slot_se: Vec<Vec<f64>> = slot_sinr
            .iter()
            .map(|row| row.iter().map(|&x| spectral_efficiency(x)).collect())
            .collect();
        let cycle_utility: Vec<f64> = (0..n).map(|ap| self.cycle_utility_raw(&orders, ap)).collect();
        Ok(UtilityReport {
            slot_sinr,
            slot_se,
            served: orders.iter().map(|o| o.to_vec()).collect(),
            network_utility: self.network_utility_raw(&orders),
            cycle_utility,
        })
    }

    /// Every AP on the identity order.
    pub fn identity_schedule(&self) -> JointSchedule {
        JointSchedule::new(vec![BeamSequence::identity(self.ues_per_ap()); self.num_aps()])
            .expect("uniform lengths")
    }
}
