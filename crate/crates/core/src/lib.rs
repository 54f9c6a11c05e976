//! System-level simulator of beam-sequence scheduling for coexisting mmWave
//! access points.
//!
//! Each AP serves its `M` UEs once per scheduling cycle, one beam per slot.
//! The order in which it does so (its beam sequence) decides which of its
//! beams collide with the neighbours' beams in each slot. The crate models
//! the links ([`channel`], [`beamforming`]), scores joint schedules by
//! spectral efficiency ([`utility`], [`Scenario`]) and searches the schedule
//! space with four schedulers ([`schedulers`]). [`harness`] runs seeded
//! Monte-Carlo experiments over random deployments.

pub mod beamforming;
pub mod channel;
pub mod config;
pub mod deployment;
pub mod error;
pub mod harness;
pub mod par;
pub mod scenario;
pub mod schedulers;
pub mod utility;

pub use config::SystemConfig;
pub use error::{Error, Result};
pub use par::Parallelism;
pub use scenario::Scenario;
pub use schedulers::{SchedulerKind, ScheduleOutcome};
pub use utility::{BeamSequence, JointSchedule};
