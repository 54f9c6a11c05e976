//! Network geometry: APs on a line, UEs uniform in a disc around their AP.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::SystemConfig;
use crate::error::{check_index, Error, Result};

/// UEs closer than this to any AP are re-drawn.
pub const MIN_LINK_DISTANCE: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance_to(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Identifies UE `ue` served by AP `ap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UeId {
    pub ap: usize,
    pub ue: usize,
}

impl UeId {
    pub fn new(ap: usize, ue: usize) -> Self {
        Self { ap, ue }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    ap_positions: Vec<Point>,
    /// `ue_positions[n][m]` is UE m of AP n.
    ue_positions: Vec<Vec<Point>>,
}

impl Deployment {
    /// Builds a deployment from explicit coordinates. Every AP needs the same
    /// (non-zero) number of UEs.
    pub fn from_positions(ap_positions: Vec<Point>, ue_positions: Vec<Vec<Point>>) -> Result<Self> {
        if ap_positions.is_empty() {
            return Err(Error::InvalidConfig("deployment needs at least one AP".into()));
        }
        if ue_positions.len() != ap_positions.len() {
            return Err(Error::InvalidConfig(format!(
                "{} APs but {} UE groups",
                ap_positions.len(),
                ue_positions.len()
            )));
        }
        let per_ap = ue_positions[0].len();
        if per_ap == 0 || ue_positions.iter().any(|ues| ues.len() != per_ap) {
            return Err(Error::InvalidConfig(
                "every AP needs the same non-zero number of UEs".into(),
            ));
        }
        Ok(Self {
            ap_positions,
            ue_positions,
        })
    }

    pub fn num_aps(&self) -> usize {
        self.ap_positions.len()
    }

    pub fn ues_per_ap(&self) -> usize {
        self.ue_positions[0].len()
    }

    pub fn ap_positions(&self) -> &[Point] {
        &self.ap_positions
    }

    pub fn ue_positions(&self, ap: usize) -> &[Point] {
        &self.ue_positions[ap]
    }

    pub fn ue_position(&self, ue: UeId) -> Point {
        self.ue_positions[ue.ap][ue.ue]
    }

    /// Distance from AP `ap` to UE `ue`, for serving and cross links alike.
    pub fn distance(&self, ap: usize, ue: UeId) -> Result<f64> {
        check_index("ap", ap, self.num_aps())?;
        check_index("ue.ap", ue.ap, self.num_aps())?;
        check_index("ue.ue", ue.ue, self.ues_per_ap())?;
        Ok(self.ap_positions[ap].distance_to(self.ue_position(ue)))
    }

    /// Keeps only the listed APs (and their UEs), in the given order.
    pub(crate) fn subset(&self, aps: &[usize]) -> Self {
        Self {
            ap_positions: aps.iter().map(|&a| self.ap_positions[a]).collect(),
            ue_positions: aps.iter().map(|&a| self.ue_positions[a].clone()).collect(),
        }
    }
}

/// Places `N` APs at `(n·inter_cell_distance, 0)` and `M` UEs per AP uniformly
/// in a disc of `cell_radius`, re-drawing any UE within 1 m of any AP.
pub fn generate_deployment<R: Rng + ?Sized>(config: &SystemConfig, rng: &mut R) -> Result<Deployment> {
    config.validate()?;
    let radius = config.cell_radius();
    let ap_positions: Vec<Point> = (0..config.num_aps)
        .map(|n| Point::new(n as f64 * config.inter_cell_distance, 0.0))
        .collect();
    let ue_positions = ap_positions
        .iter()
        .map(|&ap| {
            (0..config.num_ues_per_ap)
                .map(|_| loop {
                    // sqrt of a uniform radius fraction gives a uniform density over the disc
                    let r = radius * rng.random::<f64>().sqrt();
                    if r < MIN_LINK_DISTANCE {
                        continue;
                    }
                    let theta = TAU * rng.random::<f64>();
                    let p = Point::new(ap.x + r * theta.cos(), ap.y + r * theta.sin());
                    // cross links feed the same path-loss model, so they need the floor too
                    if ap_positions
                        .iter()
                        .all(|other| p.distance_to(*other) >= MIN_LINK_DISTANCE)
                    {
                        break p;
                    }
                })
                .collect()
        })
        .collect();
    Ok(Deployment {
        ap_positions,
        ue_positions,
    })
}
