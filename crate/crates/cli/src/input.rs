//! Configuration files, raw generator files and the word-cap override.

use std::fs;
use std::path::Path;

use funnelgroup::schottky::{
    build_extended_group, build_group, ExtendedSchottkyGroup, PingPong, PingPongSystem,
    SchottkyGroup,
};
use funnelgroup::words::{GeneratorSet, RawGenerators};
use funnelgroup::{BoundaryInterval, SchottkyConfig, DEFAULT_TOLERANCE, DEFAULT_WORD_CAP};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const WORD_CAP_VAR: &str = "FUNNELGROUP_WORD_CAP";

/// On-disk configuration: `{"rank", "intervals", "tolerance"?, "reversing"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub rank: usize,
    pub intervals: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reversing: Option<Vec<bool>>,
}

/// Raw generator file: `{"generators": [[a, b, c, d], ...], "tolerance"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFile {
    pub generators: Vec<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    Symmetric,
    Extended,
    Raw,
}

/// What the reports echo back about their input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub kind: InputKind,
    pub rank: usize,
    pub tolerance: f64,
    pub intervals: Option<Vec<BoundaryInterval>>,
    pub reversing: Option<Vec<bool>>,
    pub generators: Vec<[f64; 4]>,
}

pub enum Group {
    Symmetric(SchottkyGroup),
    Extended(ExtendedSchottkyGroup),
    Raw {
        raw: RawGenerators,
        /// Ping-pong data from isometric circles, or why there is none.
        system: Result<PingPongSystem, String>,
    },
}

pub struct LoadedInput {
    pub group: Group,
    pub tolerance: f64,
}

impl LoadedInput {
    pub fn rank(&self) -> usize {
        self.generators().rank()
    }

    pub fn generators(&self) -> &dyn GeneratorSet {
        match &self.group {
            Group::Symmetric(g) => g,
            Group::Extended(g) => g,
            Group::Raw { raw, .. } => raw,
        }
    }

    /// The ping-pong system behind the input. Raw sets without isometric
    /// circles have none, which is a check failure.
    pub fn ping_pong(&self) -> Result<&dyn PingPong, CliError> {
        match &self.group {
            Group::Symmetric(g) => Ok(g),
            Group::Extended(g) => Ok(g),
            Group::Raw { system: Ok(s), .. } => Ok(s),
            Group::Raw { system: Err(e), .. } => Err(CliError::Check(format!(
                "no ping-pong configuration for the raw generators: {e}"
            ))),
        }
    }

    pub fn symmetric(&self) -> Option<&SchottkyGroup> {
        match &self.group {
            Group::Symmetric(g) => Some(g),
            _ => None,
        }
    }

    pub fn summary(&self) -> InputSummary {
        let set = self.generators();
        let generators = (0..set.rank())
            .map(|k| set.generator(k).coefficients())
            .collect();
        let (kind, intervals, reversing) = match &self.group {
            Group::Symmetric(g) => (
                InputKind::Symmetric,
                Some(g.config().positive_intervals().to_vec()),
                None,
            ),
            Group::Extended(g) => (
                InputKind::Extended,
                Some(g.config().positive_intervals().to_vec()),
                Some(g.reversing().to_vec()),
            ),
            Group::Raw { .. } => (InputKind::Raw, None, None),
        };
        InputSummary {
            kind,
            rank: set.rank(),
            tolerance: self.tolerance,
            intervals,
            reversing,
            generators,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn tolerance(value: Option<f64>) -> Result<f64, CliError> {
    match value {
        None => Ok(DEFAULT_TOLERANCE),
        Some(t) if t.is_finite() && t > 0.0 => Ok(t),
        Some(t) => Err(CliError::Input(format!(
            "tolerance must be positive, got {t}"
        ))),
    }
}

pub fn parse_config(text: &str) -> Result<ConfigFile, CliError> {
    let file: ConfigFile = serde_json::from_str(text).map_err(CliError::input)?;
    if file.rank == 0 {
        return Err(CliError::Input("rank must be at least 1".into()));
    }
    if file.rank != file.intervals.len() {
        return Err(CliError::Input(format!(
            "rank {} does not match {} intervals",
            file.rank,
            file.intervals.len()
        )));
    }
    if let Some(flags) = &file.reversing {
        if flags.len() != file.rank {
            return Err(CliError::Input(format!(
                "{} reversing flags for rank {}",
                flags.len(),
                file.rank
            )));
        }
    }
    Ok(file)
}

pub fn load_config(path: &Path) -> Result<LoadedInput, CliError> {
    let file = parse_config(&read(path)?)?;
    let tolerance = tolerance(file.tolerance)?;
    let intervals = file
        .intervals
        .iter()
        .map(|&[a, b]| BoundaryInterval::new(a, b))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::input)?;
    let config = SchottkyConfig::new(intervals).map_err(CliError::input)?;
    let group = match file.reversing {
        Some(flags) if flags.iter().any(|&f| f) => {
            Group::Extended(build_extended_group(config, &flags).map_err(CliError::input)?)
        }
        _ => Group::Symmetric(build_group(config)),
    };
    Ok(LoadedInput { group, tolerance })
}

pub fn load_raw(path: &Path) -> Result<LoadedInput, CliError> {
    let file: RawFile = serde_json::from_str(&read(path)?).map_err(CliError::input)?;
    if file.generators.is_empty() {
        return Err(CliError::Input("no generators".into()));
    }
    let tolerance = tolerance(file.tolerance)?;
    let raw = RawGenerators::from_coefficients(&file.generators).map_err(CliError::input)?;
    let system = PingPongSystem::from_isometric_circles(&raw).map_err(|e| e.to_string());
    Ok(LoadedInput {
        group: Group::Raw { raw, system },
        tolerance,
    })
}

/// Loads exactly one of a configuration file or a raw generator file.
pub fn load(config: Option<&Path>, raw: Option<&Path>) -> Result<LoadedInput, CliError> {
    match (config, raw) {
        (Some(c), None) => load_config(c),
        (None, Some(r)) => load_raw(r),
        (None, None) => Err(CliError::Input(
            "a configuration file or --raw-generators is required".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Input(
            "give either a configuration file or --raw-generators, not both".into(),
        )),
    }
}

/// Word cap from the environment, defaulting to the library cap.
pub fn word_cap() -> Result<u64, CliError> {
    match std::env::var(WORD_CAP_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_WORD_CAP),
        Err(e) => Err(CliError::Input(format!("{WORD_CAP_VAR}: {e}"))),
        Ok(text) => match text.trim().parse::<u64>() {
            Ok(cap) if cap > 0 => Ok(cap),
            _ => Err(CliError::Input(format!(
                "{WORD_CAP_VAR} must be a positive integer, got {text:?}"
            ))),
        },
    }
}
