//! Named numerical experiments with pass/fail verdicts and machine-readable
//! reports.
//!
//! A run is described by an [`ExperimentConfig`]: the experiment name, a
//! key/value parameter file, tolerance overrides from its `[tolerances]`
//! section, the seed for randomised checks and whether to record timings.

pub mod config;
mod experiments;
pub mod report;

use std::path::Path;

pub use config::{parse_complex, KeyValueConfig};
pub use report::{emit, to_csv, to_json, Format, Profile, Report, Value, Verdict};

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Every runnable experiment, in the order `all` runs them.
pub const EXPERIMENTS: [&str; 10] = [
    "delta",
    "delta-domain",
    "conjugate",
    "commutator",
    "fock",
    "xi",
    "xi-filter",
    "propagate",
    "p-integral",
    "saddle-q",
];

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub params: KeyValueConfig,
    pub tolerances: Tolerances,
    pub timings: bool,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(experiment: &str) -> Result<Self> {
        Self::from_params(experiment, KeyValueConfig::default())
    }

    /// Reads `timings` and `seed` from the unnamed section and overrides
    /// from `[tolerances]`.
    pub fn from_params(experiment: &str, params: KeyValueConfig) -> Result<Self> {
        if experiment != "all" && !EXPERIMENTS.contains(&experiment) {
            return Err(Error::UnknownExperiment(experiment.to_string()));
        }
        let mut tolerances = Tolerances::default();
        for (k, v) in params.section("tolerances") {
            let value = v
                .parse()
                .map_err(|_| Error::Config(format!("[tolerances] {k} = {v} is not a number")))?;
            tolerances.set(k, value)?;
        }
        let seed = match params.raw("", "seed") {
            None => DEFAULT_SEED,
            Some(s) => s
                .parse()
                .map_err(|_| Error::Config(format!("seed = {s} is not an unsigned integer")))?,
        };
        Ok(Self {
            experiment: experiment.to_string(),
            timings: params.bool_or("", "timings", false)?,
            seed,
            tolerances,
            params,
        })
    }

    pub fn load(experiment: &str, path: &Path) -> Result<Self> {
        Self::from_params(experiment, KeyValueConfig::load(path)?)
    }

    fn for_experiment(&self, name: &str) -> Self {
        Self {
            experiment: name.to_string(),
            ..self.clone()
        }
    }
}

/// Runs the configured experiment. `all` runs every experiment and merges
/// the reports, prefixing each entry with its experiment name.
pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    let mut report = match cfg.experiment.as_str() {
        "all" => {
            let mut all = Report::new("all");
            for name in EXPERIMENTS {
                all.absorb(run_one(&cfg.for_experiment(name))?);
            }
            all
        }
        _ => run_one(cfg)?,
    };
    report.inputs = cfg
        .params
        .entries()
        .into_iter()
        .map(|(s, k, v)| (if s.is_empty() { k } else { format!("{s}.{k}") }, v))
        .collect();
    report.inputs.push(("seed".into(), cfg.seed.to_string()));
    report.tolerances = cfg.tolerances.iter().map(|(k, v)| (k.to_string(), v)).collect();
    Ok(report)
}

fn run_one(cfg: &ExperimentConfig) -> Result<Report> {
    match cfg.experiment.as_str() {
        "delta" => experiments::delta(cfg),
        "delta-domain" => experiments::delta_domain(cfg),
        "conjugate" => experiments::conjugate(cfg),
        "commutator" => experiments::commutator(cfg),
        "fock" => experiments::fock(cfg),
        "xi" => experiments::xi(cfg),
        "xi-filter" => experiments::xi_filter(cfg),
        "propagate" => experiments::propagate(cfg),
        "p-integral" => experiments::p_integral(cfg),
        "saddle-q" => experiments::saddle_q(cfg),
        other => Err(Error::UnknownExperiment(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(ExperimentConfig::new("nope"), Err(Error::UnknownExperiment(_))));
        let bad = KeyValueConfig::parse("[tolerances]\nfock.nothing = 1\n").unwrap();
        assert!(ExperimentConfig::from_params("fock", bad).is_err());
    }

    #[test]
    fn overrides_and_flags() {
        let p = KeyValueConfig::parse("seed = 7\ntimings = true\n[tolerances]\nsaddle.momentum = 1e-3\n").unwrap();
        let cfg = ExperimentConfig::from_params("saddle-q", p).unwrap();
        assert_eq!(cfg.seed, 7);
        assert!(cfg.timings);
        assert_eq!(cfg.tolerances.get("saddle.momentum"), 1e-3);
    }
}
