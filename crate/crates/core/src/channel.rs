//! Multipath link channels, path loss and thermal noise.
//!
//! Every link is a sum of `L` plane waves seen by the AP's uniform linear
//! array. The UE has a single antenna, so its array response is the scalar 1
//! and the arrival angles only matter as recorded path parameters.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::io::Write;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::config::{SystemConfig, BOLTZMANN};
use crate::deployment::{UeId, MIN_LINK_DISTANCE};
use crate::error::{check_index, Error, Result};

/// Reference loss is free space at 1 m; the `32.4` term absorbs `20·log10(4π/c)`
/// with the frequency in GHz.
const FREE_SPACE_1M_DB: f64 = 32.4;

/// ULA steering vector: entry `k` is `exp(j·k·(2π/λ)·D·sin(angle)) / √N_t`.
pub fn array_response_ap(angle: f64, config: &SystemConfig) -> Vec<Complex64> {
    let n = config.num_tx_antennas;
    let phase_step = TAU / config.wavelength() * config.antenna_spacing() * angle.sin();
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|k| Complex64::from_polar(scale, k as f64 * phase_step))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathParams {
    /// Complex path gain.
    pub gain: Complex64,
    /// Departure angle at the AP, radians in [0, 2π).
    pub departure: f64,
    /// Arrival angle at the UE, radians in [0, 2π).
    pub arrival: f64,
}

impl PathParams {
    /// Unit-variance circularly-symmetric complex Gaussian gain, uniform angles.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let angle = Uniform::new(0.0, TAU).expect("valid range");
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Self {
            gain: Complex64::new(re, im) * FRAC_1_SQRT_2,
            departure: angle.sample(rng),
            arrival: angle.sample(rng),
        }
    }
}

/// `h = √(N_t/L) · Σ_l α_l · a_UE · conj(a_AP(γ_l^AP))` with `a_UE = 1`.
pub fn channel_from_paths(paths: &[PathParams], config: &SystemConfig) -> Vec<Complex64> {
    let mut h = vec![Complex64::new(0.0, 0.0); config.num_tx_antennas];
    if paths.is_empty() {
        return h;
    }
    for path in paths {
        for (hk, ak) in h.iter_mut().zip(array_response_ap(path.departure, config)) {
            *hk += path.gain * ak.conj();
        }
    }
    let scale = (config.num_tx_antennas as f64 / paths.len() as f64).sqrt();
    h.iter_mut().for_each(|hk| *hk *= scale);
    h
}

#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub paths: Vec<PathParams>,
    pub h: Vec<Complex64>,
}

impl Link {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, config: &SystemConfig) -> Self {
        let paths: Vec<PathParams> = (0..config.num_paths).map(|_| PathParams::sample(rng)).collect();
        let h = channel_from_paths(&paths, config);
        Self { paths, h }
    }
}

/// Draws one link channel vector of length `N_t`.
pub fn generate_channel<R: Rng + ?Sized>(rng: &mut R, config: &SystemConfig) -> Vec<Complex64> {
    Link::sample(rng, config).h
}

/// Channels from every AP to every UE, cross links included.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSet {
    num_aps: usize,
    ues_per_ap: usize,
    /// `links[a][n * M + m]`: AP `a` to UE `m` of AP `n`.
    links: Vec<Vec<Link>>,
}

impl ChannelSet {
    /// Links are drawn AP-major, then by victim AP, then by UE, each with
    /// independent path draws.
    pub fn generate<R: Rng + ?Sized>(rng: &mut R, config: &SystemConfig) -> Self {
        let (n, m) = (config.num_aps, config.num_ues_per_ap);
        let links = (0..n)
            .map(|_| (0..n * m).map(|_| Link::sample(rng, config)).collect())
            .collect();
        Self {
            num_aps: n,
            ues_per_ap: m,
            links,
        }
    }

    pub fn num_aps(&self) -> usize {
        self.num_aps
    }

    pub fn ues_per_ap(&self) -> usize {
        self.ues_per_ap
    }

    pub fn link(&self, ap: usize, ue: UeId) -> Result<&Link> {
        check_index("ap", ap, self.num_aps)?;
        check_index("ue.ap", ue.ap, self.num_aps)?;
        check_index("ue.ue", ue.ue, self.ues_per_ap)?;
        Ok(&self.links[ap][ue.ap * self.ues_per_ap + ue.ue])
    }

    pub fn h(&self, ap: usize, ue: UeId) -> Result<&[Complex64]> {
        self.link(ap, ue).map(|l| l.h.as_slice())
    }

    pub(crate) fn subset(&self, aps: &[usize]) -> Self {
        let m = self.ues_per_ap;
        let links = aps
            .iter()
            .map(|&a| {
                aps.iter()
                    .flat_map(|&n| self.links[a][n * m..(n + 1) * m].iter().cloned())
                    .collect()
            })
            .collect();
        Self {
            num_aps: aps.len(),
            ues_per_ap: m,
            links,
        }
    }

    /// Writes one row per channel vector entry:
    /// `tx_ap,rx_ap,rx_ue,antenna,re,im`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["tx_ap", "rx_ap", "rx_ue", "antenna", "re", "im"])?;
        for (a, row) in self.links.iter().enumerate() {
            for (idx, link) in row.iter().enumerate() {
                let (n, m) = (idx / self.ues_per_ap, idx % self.ues_per_ap);
                for (k, v) in link.h.iter().enumerate() {
                    w.write_record([
                        a.to_string(),
                        n.to_string(),
                        m.to_string(),
                        k.to_string(),
                        v.re.to_string(),
                        v.im.to_string(),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Close-in log-distance path loss in dB:
/// `32.4 + 20·log10(f_GHz) + 10·n·log10(d)`.
pub fn path_loss_db(distance: f64, config: &SystemConfig) -> Result<f64> {
    if !(distance >= MIN_LINK_DISTANCE) {
        return Err(Error::DistanceTooSmall(distance));
    }
    let f_ghz = config.carrier_frequency / 1e9;
    Ok(FREE_SPACE_1M_DB + 20.0 * f_ghz.log10() + 10.0 * config.path_loss_exponent * distance.log10())
}

/// Thermal noise `K_B·T·B` in watts.
pub fn noise_power_watts(config: &SystemConfig) -> f64 {
    BOLTZMANN * config.noise_temperature * config.bandwidth
}
