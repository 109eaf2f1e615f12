//! Scenario configuration. Rationals travel as `"p/q"` strings so that exact
//! values survive serialization.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qrf_core::scalar::format_rational;
use qrf_core::{parse_rational, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, RunnerError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExperimentId {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
}

impl ExperimentId {
    pub const ALL: [Self; 7] = [Self::E1, Self::E2, Self::E3, Self::E4, Self::E5, Self::E6, Self::E7];

    pub fn title(self) -> &'static str {
        match self {
            Self::E1 => "Bargmann cycle and mass-superposition phase",
            Self::E2 => "cyclic Galilean product on a grid state",
            Self::E3 => "frame-gauge acceleration sweep",
            Self::E4 => "composition phase law",
            Self::E5 => "two-body equivalence principle",
            Self::E6 => "three-body frames and double boost",
            Self::E7 => "decay model purity and visibility",
        }
    }

    /// Stream id mixed into the seed so that concurrent runs stay deterministic.
    pub fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ExperimentId {
    type Err = RunnerError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| RunnerError::Config(format!("unknown experiment {s:?} (expected E1..E7)")))
    }
}

/// An exact rational that (de)serializes as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Rat).map_err(serde::de::Error::custom)
    }
}

/// Experiment parameters. Unset fields fall back to each experiment's defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar: Option<Rat>,
    /// Translation distance of the cyclic sequence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Rat>,
    /// Boost velocity of the cyclic sequence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Rat>,
    /// Particle mass.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Rat>,
    /// Second mass of a mass superposition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<Rat>,
    /// Reference-frame mass in two-body runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub big_mass: Option<Rat>,
    /// `[M₁, M₂, m]` in three-body runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub masses: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_final: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<Rat>,
    /// Initial packet width.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Rat>,
    /// Amplitude `a` of one extra floating-point decay example, `b = √(1 − a²)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<usize>,
    /// Full grid length `x_max − x_min`, centred on zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_extent: Option<Rat>,
    /// Number of random draws in property sweeps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

fn one(value: &str) -> Result<Rat> {
    parse_rational(value)
        .map(Rat)
        .map_err(|e| RunnerError::Config(e.to_string()))
}

fn list(value: &str) -> Result<Vec<Rat>> {
    value.split(',').filter(|s| !s.trim().is_empty()).map(one).collect()
}

fn count(key: &str, value: &str) -> Result<usize> {
    value
        .trim()
        .parse()
        .map_err(|_| RunnerError::Config(format!("{key} expects a non-negative integer, got {value:?}")))
}

impl Params {
    /// Applies one `key=value` override; lists are comma separated.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "hbar" => self.hbar = Some(one(value)?),
            "a" => self.a = Some(one(value)?),
            "v" => self.v = Some(one(value)?),
            "m" => self.m = Some(one(value)?),
            "m2" => self.m2 = Some(one(value)?),
            "big_mass" | "M" => self.big_mass = Some(one(value)?),
            "masses" => self.masses = Some(list(value)?),
            "g" => self.g = Some(one(value)?),
            "alpha" => self.alpha = Some(list(value)?),
            "t_final" => self.t_final = Some(one(value)?),
            "dt" => self.dt = Some(one(value)?),
            "sigma" => self.sigma = Some(one(value)?),
            "amplitude" => self.amplitude = Some(one(value)?),
            "grid_n" => self.grid_n = Some(count(key, value)?),
            "grid_extent" => self.grid_extent = Some(one(value)?),
            "samples" => self.samples = Some(count(key, value)?),
            other => return Err(RunnerError::Config(format!("unknown parameter {other:?}"))),
        }
        Ok(())
    }

    /// Parses `key=value`.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| RunnerError::Config(format!("expected key=value, got {pair:?}")))?;
        self.set(k, v)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, r: &Option<Rat>| match r {
            Some(Rat(q)) if *q <= Rational::from_integer(0.into()) => {
                Err(RunnerError::Config(format!("{name} must be positive, got {}", format_rational(q))))
            }
            _ => Ok(()),
        };
        positive("hbar", &self.hbar)?;
        positive("m", &self.m)?;
        positive("m2", &self.m2)?;
        positive("big_mass", &self.big_mass)?;
        positive("t_final", &self.t_final)?;
        positive("dt", &self.dt)?;
        positive("sigma", &self.sigma)?;
        positive("grid_extent", &self.grid_extent)?;
        if let Some(ms) = &self.masses {
            if ms.len() != 3 {
                return Err(RunnerError::Config(format!("masses needs [M1, M2, m], got {} values", ms.len())));
            }
            for m in ms {
                positive("masses", &Some(m.clone()))?;
            }
        }
        if let Some(n) = self.grid_n {
            if !n.is_power_of_two() || n < 16 {
                return Err(RunnerError::Config(format!("grid_n must be a power of two ≥ 16, got {n}")));
            }
        }
        if let Some(Rat(a)) = &self.amplitude {
            if *a < Rational::from_integer(0.into()) || *a > Rational::from_integer(1.into()) {
                return Err(RunnerError::Config("amplitude must lie in [0, 1]".into()));
            }
        }
        Ok(())
    }
}

fn default_seed() -> u64 {
    20_240_521
}

/// One run: a set of experiments sharing parameters, seed and output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Empty means every experiment.
    #[serde(default)]
    pub experiments: Vec<ExperimentId>,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            experiments: Vec::new(),
            params: Params::default(),
            out: None,
            seed: default_seed(),
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| RunnerError::Config(e.to_string()))?;
        cfg.params.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn experiments(&self) -> Vec<ExperimentId> {
        if self.experiments.is_empty() {
            ExperimentId::ALL.to_vec()
        } else {
            let mut ids = self.experiments.clone();
            ids.sort();
            ids.dedup();
            ids
        }
    }
}
