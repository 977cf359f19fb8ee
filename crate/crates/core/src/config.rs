//! Run configuration: flat `key = value` files plus command-line overrides.
//!
//! Every name is validated before any numerical work starts.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::derivatives::Scheme;
use crate::error::{Error, Result};
use crate::integrator::{TimeScheme, DEFAULT_CFL_FACTOR};
use crate::problems::rocket::{RocketForm, ROCKET_DESK_COUNTS};

pub const KEYS: [&str; 13] = [
    "problem",
    "grid_counts",
    "tspan",
    "checkpoints",
    "scheme",
    "integrator",
    "cfl_factor",
    "clamp",
    "output_dir",
    "seed",
    "repeats",
    "rocket_form",
    "periodic_theta",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Rockets,
    RigidRotation,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 2] = [ProblemKind::Rockets, ProblemKind::RigidRotation];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Rockets => "rockets",
            ProblemKind::RigidRotation => "rigid_rotation",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown problem {s:?}; valid problems: {}",
                    ProblemKind::ALL.map(ProblemKind::name).join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub grid_counts: usize,
    pub tspan: (f64, f64),
    pub checkpoints: usize,
    pub scheme: Scheme,
    pub integrator: TimeScheme,
    pub cfl_factor: f64,
    pub clamp: bool,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub repeats: usize,
    pub rocket_form: RocketForm,
    pub periodic_theta: bool,
}

impl RunConfig {
    /// Defaults for a problem: the desk-scale rocket tube, or one full
    /// revolution of the rotating circle.
    pub fn defaults(problem: ProblemKind) -> Self {
        match problem {
            ProblemKind::Rockets => RunConfig {
                problem,
                grid_counts: ROCKET_DESK_COUNTS,
                tspan: (-2.5, 0.0),
                checkpoints: 11,
                scheme: Scheme::Eno2,
                integrator: TimeScheme::Cfl3,
                cfl_factor: DEFAULT_CFL_FACTOR,
                clamp: true,
                output_dir: PathBuf::from("out"),
                seed: 0,
                repeats: 1,
                rocket_form: RocketForm::Printed,
                periodic_theta: false,
            },
            ProblemKind::RigidRotation => RunConfig {
                problem,
                grid_counts: 101,
                tspan: (0.0, 2.0 * PI),
                checkpoints: 5,
                scheme: Scheme::Weno5,
                integrator: TimeScheme::Cfl3,
                cfl_factor: DEFAULT_CFL_FACTOR,
                clamp: false,
                output_dir: PathBuf::from("out"),
                seed: 0,
                repeats: 1,
                rocket_form: RocketForm::Printed,
                periodic_theta: false,
            },
        }
    }

    /// Resolves raw `key -> value` pairs; keys absent from the map take the
    /// selected problem's defaults.
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::Config(format!(
                "unknown key {k:?}; valid keys: {}",
                KEYS.join(", ")
            )));
        }
        let problem = match map.get("problem") {
            Some(p) => p.parse()?,
            None => ProblemKind::Rockets,
        };
        let mut c = RunConfig::defaults(problem);
        // names first, numbers after
        if let Some(v) = map.get("scheme") {
            c.scheme = v.parse()?;
        }
        if let Some(v) = map.get("integrator") {
            c.integrator = v.parse()?;
        }
        if let Some(v) = map.get("rocket_form") {
            c.rocket_form = v.parse()?;
        }
        if let Some(v) = map.get("grid_counts") {
            c.grid_counts = parse_num("grid_counts", v)?;
        }
        if let Some(v) = map.get("tspan") {
            c.tspan = parse_tspan(v)?;
        }
        if let Some(v) = map.get("checkpoints") {
            c.checkpoints = parse_num("checkpoints", v)?;
        }
        if let Some(v) = map.get("cfl_factor") {
            c.cfl_factor = parse_num("cfl_factor", v)?;
        }
        if let Some(v) = map.get("clamp") {
            c.clamp = parse_bool("clamp", v)?;
        }
        if let Some(v) = map.get("periodic_theta") {
            c.periodic_theta = parse_bool("periodic_theta", v)?;
        }
        if let Some(v) = map.get("output_dir") {
            c.output_dir = PathBuf::from(v);
        }
        if let Some(v) = map.get("seed") {
            c.seed = parse_num("seed", v)?;
        }
        if let Some(v) = map.get("repeats") {
            c.repeats = parse_num("repeats", v)?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_counts < 7 {
            return Err(Error::Config(format!(
                "grid_counts must be at least 7, got {}",
                self.grid_counts
            )));
        }
        if self.checkpoints < 2 {
            return Err(Error::Config(format!(
                "checkpoints must be at least 2, got {}",
                self.checkpoints
            )));
        }
        if !(self.cfl_factor > 0.0 && self.cfl_factor <= 1.0) {
            return Err(Error::Config(format!(
                "cfl_factor must lie in (0, 1], got {}",
                self.cfl_factor
            )));
        }
        if self.repeats == 0 {
            return Err(Error::Config("repeats must be at least 1".into()));
        }
        let (t0, tf) = self.tspan;
        if !(t0.is_finite() && tf.is_finite()) {
            return Err(Error::Config(format!(
                "tspan must be finite, got ({t0}, {tf})"
            )));
        }
        Ok(())
    }

    /// `key = value` pairs describing this configuration.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("problem", self.problem.to_string()),
            ("grid_counts", self.grid_counts.to_string()),
            ("tspan", format!("{} {}", self.tspan.0, self.tspan.1)),
            ("checkpoints", self.checkpoints.to_string()),
            ("scheme", self.scheme.to_string()),
            ("integrator", self.integrator.to_string()),
            ("cfl_factor", self.cfl_factor.to_string()),
            ("clamp", self.clamp.to_string()),
            ("seed", self.seed.to_string()),
            ("rocket_form", self.rocket_form.to_string()),
            ("periodic_theta", self.periodic_theta.to_string()),
        ]
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!(
            "{key}: expected a boolean, got {v:?}"
        ))),
    }
}

/// Accepts `"t0 tf"` or `"t0, tf"`.
pub fn parse_tspan(v: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = v
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    match parts.as_slice() {
        [a, b] => Ok((parse_num("tspan", a)?, parse_num("tspan", b)?)),
        _ => Err(Error::Config(format!(
            "tspan: expected two numbers, got {v:?}"
        ))),
    }
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
        out.push((k.trim().to_owned(), v.trim().to_owned()));
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_key_values(&text)?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn rocket_defaults() {
        let c = RunConfig::from_map(&BTreeMap::new()).unwrap();
        assert_eq!(c.problem, ProblemKind::Rockets);
        assert_eq!(c.grid_counts, 50);
        assert_eq!(c.tspan, (-2.5, 0.0));
        assert_eq!(c.checkpoints, 11);
        assert_eq!(c.scheme, Scheme::Eno2);
        assert!(c.clamp);
    }

    #[test]
    fn rotation_defaults_and_overrides() {
        let c = RunConfig::from_map(&map(&[
            ("problem", "rigid_rotation"),
            ("tspan", "0, 1.5"),
            ("clamp", "on"),
        ]))
        .unwrap();
        assert_eq!(c.scheme, Scheme::Weno5);
        assert_eq!(c.tspan, (0.0, 1.5));
        assert!(c.clamp);
    }

    #[test]
    fn unknown_names_are_rejected() {
        let err = RunConfig::from_map(&map(&[("scheme", "eno7")]))
            .unwrap_err()
            .to_string();
        assert!(err.contains("first, eno2, eno3, weno5"), "{err}");
        assert!(RunConfig::from_map(&map(&[("problem", "air3d")])).is_err());
        assert!(RunConfig::from_map(&map(&[("integrator", "rk4")])).is_err());
        assert!(RunConfig::from_map(&map(&[("colour", "red")])).is_err());
        assert!(RunConfig::from_map(&map(&[("cfl_factor", "1.2")])).is_err());
        assert!(RunConfig::from_map(&map(&[("clamp", "maybe")])).is_err());
    }

    #[test]
    fn key_value_parsing() {
        let kv = parse_key_values("# comment\n\nproblem = rockets\n grid_counts=20 \n").unwrap();
        assert_eq!(
            kv,
            vec![
                ("problem".into(), "rockets".into()),
                ("grid_counts".into(), "20".into())
            ]
        );
        assert!(parse_key_values("no equals sign").is_err());
    }

    #[test]
    fn tspan_forms() {
        assert_eq!(parse_tspan("-2.5 0").unwrap(), (-2.5, 0.0));
        assert_eq!(parse_tspan("-2.5,0").unwrap(), (-2.5, 0.0));
        assert!(parse_tspan("1").is_err());
    }
}
