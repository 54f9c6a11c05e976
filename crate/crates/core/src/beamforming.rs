//! Codebook construction, per-UE beam selection and beamforming gain.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::channel::{array_response_ap, ChannelSet};
use crate::config::SystemConfig;
use crate::deployment::UeId;
use crate::error::{Error, Result};

/// `w^H h`.
pub fn inner(w: &[Complex64], h: &[Complex64]) -> Result<Complex64> {
    if w.len() != h.len() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: h.len(),
        });
    }
    Ok(w.iter().zip(h).map(|(a, b)| a.conj() * b).sum())
}

/// `|w^H h|²`.
pub fn beamforming_gain(w: &[Complex64], h: &[Complex64]) -> Result<f64> {
    inner(w, h).map(|z| z.norm_sqr())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Codebook {
    entries: Vec<Vec<Complex64>>,
}

impl Codebook {
    /// `C` ULA steering vectors at azimuths `2π·i/C`, `i = 0..C`.
    pub fn build(config: &SystemConfig) -> Self {
        let c = config.codebook_size;
        let entries = (0..c)
            .map(|i| array_response_ap(TAU * i as f64 / c as f64, config))
            .collect();
        Self { entries }
    }

    pub fn from_entries(entries: Vec<Vec<Complex64>>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, index: usize) -> &[Complex64] {
        &self.entries[index]
    }

    pub fn entries(&self) -> &[Vec<Complex64>] {
        &self.entries
    }

    /// Index maximizing `|v_i^H h|²`; ties go to the smallest index.
    pub fn select(&self, h: &[Complex64]) -> Result<usize> {
        if h.iter().all(|x| x.norm_sqr() == 0.0) {
            return Err(Error::ZeroChannel);
        }
        let mut best = (0, f64::NEG_INFINITY);
        for (i, v) in self.entries.iter().enumerate() {
            let g = beamforming_gain(v, h)?;
            if g > best.1 {
                best = (i, g);
            }
        }
        Ok(best.0)
    }
}

pub fn build_codebook(config: &SystemConfig) -> Codebook {
    Codebook::build(config)
}

pub fn select_beam(codebook: &Codebook, h: &[Complex64]) -> Result<usize> {
    codebook.select(h)
}

/// Codebook index chosen for every serving link `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeamTable {
    ues_per_ap: usize,
    chosen: Vec<usize>,
}

impl BeamTable {
    /// Runs beam selection on each AP's channel to its own UEs.
    pub fn select(codebook: &Codebook, channels: &ChannelSet) -> Result<Self> {
        let m = channels.ues_per_ap();
        let mut chosen = Vec::with_capacity(channels.num_aps() * m);
        for n in 0..channels.num_aps() {
            for ue in 0..m {
                chosen.push(codebook.select(channels.h(n, UeId::new(n, ue))?)?);
            }
        }
        Ok(Self { ues_per_ap: m, chosen })
    }

    pub fn index(&self, ue: UeId) -> usize {
        self.chosen[ue.ap * self.ues_per_ap + ue.ue]
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::channel::generate_channel;

    fn norm_sqr(v: &[Complex64]) -> f64 {
        v.iter().map(|x| x.norm_sqr()).sum()
    }

    #[test]
    fn table_one_codebook() {
        let c = SystemConfig::default();
        let cb = build_codebook(&c);
        assert_eq!(cb.len(), 16);
        for (i, v) in cb.entries().iter().enumerate() {
            assert_eq!(v.len(), 8);
            assert!((norm_sqr(v) - 1.0).abs() < 1e-12);
            assert_eq!(v, &array_response_ap(i as f64 * 22.5f64.to_radians(), &c));
        }
    }

    #[test]
    fn single_entry_codebook() {
        let c = SystemConfig {
            codebook_size: 1,
            ..SystemConfig::default()
        };
        let cb = build_codebook(&c);
        assert_eq!(cb.len(), 1);
        for x in cb.entry(0) {
            assert!((x.re - 1.0 / 8f64.sqrt()).abs() < 1e-15 && x.im == 0.0);
        }
    }

    #[test]
    fn scaled_codeword_selects_itself() {
        // Distinct directions: azimuths with distinct sin() values.
        let c = SystemConfig::default();
        let cb = Codebook::from_entries(
            [0.0, 0.3, 0.7, 1.2, -0.5]
                .iter()
                .map(|&t| array_response_ap(t, &c))
                .collect(),
        );
        let h: Vec<Complex64> = cb.entry(2).iter().map(|x| x * Complex64::new(-2.0, 0.5)).collect();
        assert_eq!(select_beam(&cb, &h).unwrap(), 2);
    }

    #[test]
    fn orthogonal_to_first() {
        let cb = Codebook::from_entries(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)],
        ]);
        let h = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)];
        assert_eq!(select_beam(&cb, &h).unwrap(), 1);
    }

    #[test]
    fn ties_go_to_smallest_index() {
        let e = vec![Complex64::new(1.0, 0.0)];
        let cb = Codebook::from_entries(vec![e.clone(), e.clone(), e]);
        assert_eq!(select_beam(&cb, &[Complex64::new(0.0, 3.0)]).unwrap(), 0);
    }

    #[test]
    fn zero_channel_rejected() {
        let cb = build_codebook(&SystemConfig::default());
        assert!(matches!(
            select_beam(&cb, &[Complex64::default(); 8]),
            Err(Error::ZeroChannel)
        ));
    }

    #[test]
    fn selection_matches_full_scan() {
        let c = SystemConfig::default();
        let cb = build_codebook(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..1000 {
            let h = generate_channel(&mut rng, &c);
            let gains: Vec<f64> = cb
                .entries()
                .iter()
                .map(|v| v.iter().zip(&h).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr())
                .collect();
            let best = gains.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let expected = gains.iter().position(|&g| g == best).unwrap();
            assert_eq!(select_beam(&cb, &h).unwrap(), expected);
        }
    }

    #[test]
    fn gain_identities() {
        let c = SystemConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = generate_channel(&mut rng, &c);
        let norm = norm_sqr(&h).sqrt();
        let w: Vec<Complex64> = h.iter().map(|x| x / norm).collect();
        assert!((beamforming_gain(&w, &h).unwrap() - norm * norm).abs() < 1e-12);

        let a = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        let b = vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)];
        assert!(beamforming_gain(&a, &b).unwrap().abs() < 1e-15);

        let s = Complex64::new(rng.random(), rng.random());
        let sh: Vec<Complex64> = h.iter().map(|x| x * s).collect();
        let v = build_codebook(&c).entry(5).to_vec();
        let lhs = beamforming_gain(&v, &sh).unwrap();
        let rhs = s.norm_sqr() * beamforming_gain(&v, &h).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));

        assert!(matches!(
            beamforming_gain(&a, &h),
            Err(Error::LengthMismatch { left: 2, right: 8 })
        ));
    }

    #[test]
    fn beam_table_is_optimal_per_link() {
        let c = SystemConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let channels = ChannelSet::generate(&mut rng, &c);
        let cb = build_codebook(&c);
        let table = BeamTable::select(&cb, &channels).unwrap();
        for n in 0..2 {
            for m in 0..5 {
                let ue = UeId::new(n, m);
                let h = channels.h(n, ue).unwrap();
                let chosen = beamforming_gain(cb.entry(table.index(ue)), h).unwrap();
                for v in cb.entries() {
                    assert!(chosen >= beamforming_gain(v, h).unwrap());
                }
            }
        }
    }
}
