//! Result files.
//!
//! A run directory holds, for every scheduler `s`:
//!
//! * `s_cdf.csv`      `value,cumulative_fraction`
//! * `s_counters.csv` `trial,evaluations`
//! * `s_summary.csv`  `scheduler,trials,mean,variance,min,max,total_evaluations`
//! * `s_trace.csv`    per-step convergence rows (greedy and learning only)
//! * `s_report.csv`   per-slot utility report for trial 0's schedule
//!
//! plus `trials.csv` (`trial,seed,scheduler,network_utility,evaluations,sequences`)
//! and the effective `config.toml`. Floats are written in shortest
//! round-trip form, so re-reading reproduces every value exactly.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{empirical_cdf, ResultSet, Summary};
use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::schedulers::{SchedulerKind, Trace};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scheduler: String,
    pub trials: usize,
    pub mean: f64,
    pub variance: f64,
    pub min: f64,
    pub max: f64,
    pub total_evaluations: u64,
}

impl SummaryRow {
    fn new(kind: SchedulerKind, s: &Summary) -> Self {
        Self {
            scheduler: kind.name().to_string(),
            trials: s.trials,
            mean: s.mean,
            variance: s.variance,
            min: s.min,
            max: s.max,
            total_evaluations: s.total_evaluations,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TrialRow {
    trial: usize,
    seed: u64,
    scheduler: String,
    network_utility: f64,
    evaluations: u64,
    /// Space-separated canonical sequence index per AP.
    sequences: String,
}

fn writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    Ok(csv::Writer::from_writer(BufWriter::new(File::create(path)?)))
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl ResultSet {
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        fs::write(dir.join("config.toml"), self.config.to_toml_string())?;

        let mut trials = writer(&dir.join("trials.csv"))?;
        for t in &self.trials {
            for o in &t.outcomes {
                trials.serialize(TrialRow {
                    trial: t.trial,
                    seed: t.seed,
                    scheduler: o.kind.name().to_string(),
                    network_utility: o.network_utility,
                    evaluations: o.evaluations,
                    sequences: o.indices.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "),
                })?;
            }
        }
        trials.flush()?;

        for &kind in &self.schedulers {
            let name = kind.name();
            let outcomes = self.outcomes(kind);

            let mut cdf = writer(&dir.join(format!("{name}_cdf.csv")))?;
            cdf.write_record(["value", "cumulative_fraction"])?;
            for (v, f) in empirical_cdf(&self.utilities(kind))? {
                cdf.write_record([v.to_string(), f.to_string()])?;
            }
            cdf.flush()?;

            let mut counters = writer(&dir.join(format!("{name}_counters.csv")))?;
            counters.write_record(["trial", "evaluations"])?;
            for (t, o) in self.trials.iter().zip(&outcomes) {
                counters.write_record([t.trial.to_string(), o.evaluations.to_string()])?;
            }
            counters.flush()?;

            let summary = self.summary(kind).expect("scheduler is part of the run");
            let mut sw = writer(&dir.join(format!("{name}_summary.csv")))?;
            sw.serialize(SummaryRow::new(kind, &summary))?;
            sw.flush()?;

            self.write_trace(dir, kind)?;

            if let (Some(first), Some(o)) = (self.trials.first(), outcomes.first()) {
                let scenario = Scenario::generate(&self.config, first.seed)?;
                let file = BufWriter::new(File::create(dir.join(format!("{name}_report.csv")))?);
                scenario.report(&o.joint)?.write_csv(file)?;
            }
        }
        Ok(())
    }

    fn write_trace(&self, dir: &Path, kind: SchedulerKind) -> Result<()> {
        let outcomes = self.outcomes(kind);
        if outcomes.iter().all(|o| o.trace == Trace::None) {
            return Ok(());
        }
        let mut w = writer(&dir.join(format!("{}_trace.csv", kind.name())))?;
        w.write_record([
            "trial",
            "iteration",
            "ap",
            "index",
            "utility",
            "u_max",
            "max_probability",
            "network_utility",
        ])?;
        for (t, o) in self.trials.iter().zip(outcomes) {
            match &o.trace {
                Trace::None => {}
                Trace::Greedy(steps) => {
                    for s in steps {
                        w.write_record([
                            t.trial.to_string(),
                            s.iteration.to_string(),
                            s.ap.to_string(),
                            s.index.to_string(),
                            s.utility.to_string(),
                            opt(None),
                            opt(None),
                            s.network_utility.to_string(),
                        ])?;
                    }
                }
                Trace::Learning(steps) => {
                    for s in steps {
                        w.write_record([
                            t.trial.to_string(),
                            s.iteration.to_string(),
                            s.ap.to_string(),
                            s.index.to_string(),
                            s.utility.to_string(),
                            opt(Some(s.u_max)),
                            opt(Some(s.max_probability)),
                            s.network_utility.to_string(),
                        ])?;
                    }
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Per-scheduler utilities and counters read back from a run directory.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedResults {
    pub utilities: BTreeMap<String, Vec<f64>>,
    pub evaluations: BTreeMap<String, Vec<u64>>,
}

impl LoadedResults {
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let path = dir.as_ref().join("trials.csv");
        let mut rows: Vec<TrialRow> = csv::Reader::from_path(&path)?
            .deserialize()
            .collect::<std::result::Result<_, _>>()?;
        rows.sort_by_key(|r| r.trial);
        let mut utilities: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        let mut evaluations: BTreeMap<String, Vec<u64>> = BTreeMap::new();
        for r in rows {
            utilities.entry(r.scheduler.clone()).or_default().push(r.network_utility);
            evaluations.entry(r.scheduler).or_default().push(r.evaluations);
        }
        if utilities.is_empty() {
            return Err(Error::MalformedResults {
                path,
                reason: "no trial rows".into(),
            });
        }
        Ok(Self {
            utilities,
            evaluations,
        })
    }

    pub fn summary(&self, scheduler: &str) -> Option<SummaryRow> {
        let u = self.utilities.get(scheduler)?;
        let e = self.evaluations.get(scheduler)?;
        let kind: SchedulerKind = scheduler.parse().ok()?;
        Some(SummaryRow::new(kind, &Summary::from_samples(u, e)))
    }

    /// Reads a `<scheduler>_summary.csv` file.
    pub fn read_summary(path: impl AsRef<Path>) -> Result<SummaryRow> {
        let path: PathBuf = path.as_ref().to_path_buf();
        let mut reader = csv::Reader::from_path(&path)?;
        match reader.deserialize().next() {
            Some(row) => Ok(row?),
            None => Err(Error::MalformedResults {
                path,
                reason: "empty summary".into(),
            }),
        }
    }
}
