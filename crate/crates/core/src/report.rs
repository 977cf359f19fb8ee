//! Timing reports for solver runs.

use std::fmt::Write as _;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::integrator::StepRecord;

pub const HARDWARE_NOTE: &str =
    "wall-clock timings of the integrator loop only; values depend on hardware, thread count and build profile";

/// Global and per-step wall-clock timings, in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub global_time_mean: f64,
    pub global_time_std: f64,
    pub avg_local_time: f64,
    pub steps_taken: usize,
    pub repeats: usize,
}

impl RunReport {
    /// Report for one run whose integrator loop took `global`.
    pub fn single(global: Duration, steps: &[StepRecord]) -> Self {
        let avg_local = if steps.is_empty() {
            0.0
        } else {
            steps.iter().map(|s| s.elapsed.as_secs_f64()).sum::<f64>() / steps.len() as f64
        };
        RunReport {
            global_time_mean: global.as_secs_f64(),
            global_time_std: 0.0,
            avg_local_time: avg_local,
            steps_taken: steps.len(),
            repeats: 1,
        }
    }

    /// Mean and sample standard deviation of global time over repeated
    /// runs; the local time is averaged over all runs.
    pub fn aggregate(runs: &[RunReport]) -> Result<Self> {
        let first = runs
            .first()
            .ok_or_else(|| Error::Domain("cannot aggregate zero runs".into()))?;
        if let Some(r) = runs.iter().find(|r| r.steps_taken != first.steps_taken) {
            return Err(Error::Domain(format!(
                "runs disagree on step count ({} vs {})",
                first.steps_taken, r.steps_taken
            )));
        }
        let n = runs.len() as f64;
        let mean = runs.iter().map(|r| r.global_time_mean).sum::<f64>() / n;
        let std = if runs.len() > 1 {
            (runs
                .iter()
                .map(|r| (r.global_time_mean - mean).powi(2))
                .sum::<f64>()
                / (n - 1.0))
                .sqrt()
        } else {
            0.0
        };
        Ok(RunReport {
            global_time_mean: mean,
            global_time_std: std,
            avg_local_time: runs.iter().map(|r| r.avg_local_time).sum::<f64>() / n,
            steps_taken: first.steps_taken,
            repeats: runs.len(),
        })
    }

    /// `key = value` text, one field per line. `context` entries are
    /// written first.
    pub fn to_text(&self, context: &[(&str, String)]) -> String {
        let mut out = String::from("# levelset run report\n");
        for (k, v) in context {
            let _ = writeln!(out, "{k} = {v}");
        }
        let _ = writeln!(out, "global_time_mean = {}", self.global_time_mean);
        let _ = writeln!(out, "global_time_std = {}", self.global_time_std);
        let _ = writeln!(out, "avg_local_time = {}", self.avg_local_time);
        let _ = writeln!(out, "steps_taken = {}", self.steps_taken);
        let _ = writeln!(out, "repeats = {}", self.repeats);
        let _ = writeln!(out, "hardware_note = {HARDWARE_NOTE}");
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let kv = crate::config::parse_key_values(text)?;
        let get = |key: &str| {
            kv.iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::Config(format!("report is missing {key}")))
        };
        let num = |key: &str| -> Result<f64> {
            get(key)?
                .parse()
                .map_err(|_| Error::Config(format!("report field {key} is not a number")))
        };
        let int = |key: &str| -> Result<usize> {
            get(key)?
                .parse()
                .map_err(|_| Error::Config(format!("report field {key} is not an integer")))
        };
        Ok(RunReport {
            global_time_mean: num("global_time_mean")?,
            global_time_std: num("global_time_std")?,
            avg_local_time: num("avg_local_time")?,
            steps_taken: int("steps_taken")?,
            repeats: int("repeats")?,
        })
    }
}
