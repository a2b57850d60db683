//! Report records. Every report is pretty-printed JSON with a schema version,
//! and is only written after it has been read back and re-serialized to the
//! same bytes.

use std::fs;
use std::io::Write;
use std::path::Path;

use funnelgroup::limitset::{Cell, ConvergenceReport, SamplePoint};
use funnelgroup::schottky::{ClassificationReport, NielsenBoundary, VerificationReport};
use funnelgroup::surface::{
    ClassicalFunnelSet, CollarSpec, EndReport, FunnelBoundRow, PantsReport, SurfaceTopology,
};
use funnelgroup::{DimensionEstimate, Word};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::input::InputSummary;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreenessCheck {
    pub depth: usize,
    pub free: bool,
    /// First reduced word found within tolerance of the identity.
    pub identity_word: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrientationSubgroupCheck {
    pub depth: usize,
    pub words_checked: u64,
    pub all_hyperbolic: bool,
    pub first_offending: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: String,
    pub input: InputSummary,
    pub verification: Option<VerificationReport>,
    pub configuration_note: Option<String>,
    pub freeness: FreenessCheck,
    pub classification: Option<ClassificationReport>,
    pub orientation_subgroup: Option<OrientationSubgroupCheck>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerSummary {
    pub depth: usize,
    pub cells: usize,
    pub total_length: f64,
    pub max_cell_length: f64,
    pub unresolved_cells: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSetReport {
    pub schema_version: u32,
    pub command: String,
    pub input: InputSummary,
    pub depth: usize,
    pub layers: Vec<LayerSummary>,
    pub total_lengths: Vec<f64>,
    pub contraction_ratio: Option<f64>,
    pub nielsen: Option<NielsenBoundary>,
    pub cells: Vec<Cell>,
    pub sample_points: Vec<SamplePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub schema_version: u32,
    pub command: String,
    pub input: InputSummary,
    pub pressure: Option<DimensionEstimate>,
    pub box_counting: Option<DimensionEstimate>,
    pub cross_method_gap: Option<f64>,
    pub convergence: ConvergenceReport,
    /// Whether the estimate is at most 1/2; reported, never required.
    pub dimension_at_most_half: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub schema_version: u32,
    pub command: String,
    pub rank: u64,
    pub topology: SurfaceTopology,
    pub classical: ClassicalFunnelSet,
    pub funnel_bound: Option<FunnelBoundRow>,
    pub input: Option<InputSummary>,
    pub ends: Option<EndReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PantsFile {
    pub schema_version: u32,
    pub command: String,
    pub input: Option<InputSummary>,
    pub pants: PantsReport,
    /// Half-collar widths around the realized curves.
    pub collars: Vec<CollarSpec>,
}

/// Serializes `report`, checks that it survives a read-back unchanged, and
/// writes it to `out` or stdout.
pub fn emit<T>(report: &T, out: Option<&Path>) -> Result<String, CliError>
where
    T: Serialize + DeserializeOwned,
{
    let text = render_json(report)?;
    write_text(&text, out)?;
    Ok(text)
}

pub fn render_json<T>(report: &T) -> Result<String, CliError>
where
    T: Serialize + DeserializeOwned,
{
    let mut text = serde_json::to_string_pretty(report).map_err(CliError::check)?;
    text.push('\n');
    let back: T = serde_json::from_str(&text)
        .map_err(|e| CliError::Check(format!("report does not read back: {e}")))?;
    let mut again = serde_json::to_string_pretty(&back).map_err(CliError::check)?;
    again.push('\n');
    if again != text {
        return Err(CliError::Check(
            "report does not round-trip byte for byte".into(),
        ));
    }
    Ok(text)
}

pub fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}")))
        }
    }
}
