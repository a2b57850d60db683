//! One function per subcommand. Each writes its report (or drawing) and
//! returns whether all checks passed.

use std::path::Path;

use funnelgroup::limitset::{
    self, convergence_type_report, estimate_dimension_boxcount, estimate_dimension_pressure,
    DEFAULT_RESOLUTION, DEFAULT_STATE_DEPTH,
};
use funnelgroup::schottky::{
    is_fuchsian_schottky, nielsen_boundary, verify_schottky_condition, Candidate, PingPong,
};
use funnelgroup::surface::{
    classical_funnels, collar, end_decomposition, fuchsian_topology, funnel_bound_comparison,
    pants_report,
};
use funnelgroup::words::{self, layer_size};
use funnelgroup::{IsometryClass, Orientation};

use crate::error::CliError;
use crate::input::{self, Group, LoadedInput};
use crate::report::{
    emit, write_text, DimensionReport, FreenessCheck, LayerSummary, LimitSetReport,
    OrientationSubgroupCheck, PantsFile, TopologyReport, VerifyReport, SCHEMA_VERSION,
};
use crate::svg::{self, Scene};

pub const DEFAULT_DEPTH: usize = 6;
pub const DEFAULT_FREENESS_DEPTH: usize = 8;

/// A word depth that is either user-chosen (overflow is an error) or a
/// default that shrinks until a layer fits under the cap.
#[derive(Debug, Clone, Copy)]
pub enum DepthRequest {
    Explicit(usize),
    Default(usize),
}

impl DepthRequest {
    pub fn from_flag(flag: Option<usize>, default: usize) -> Self {
        flag.map_or(DepthRequest::Default(default), DepthRequest::Explicit)
    }

    fn resolve(self, rank: usize, cap: u64) -> Result<usize, CliError> {
        match self {
            DepthRequest::Explicit(0) => Err(CliError::Input("depth must be at least 1".into())),
            DepthRequest::Explicit(d) => Ok(d),
            DepthRequest::Default(d) => {
                let fits = |k: usize| layer_size(rank, k).is_some_and(|n| n <= cap);
                let depth = (1..=d).rev().find(|&k| fits(k)).unwrap_or(1);
                if depth < d {
                    eprintln!(
                        "note: word depth lowered from {d} to {depth} to stay under the word cap"
                    );
                }
                Ok(depth)
            }
        }
    }
}

pub struct VerifyArgs<'a> {
    pub input: &'a LoadedInput,
    pub depth: DepthRequest,
    pub freeness_depth: DepthRequest,
    pub out: Option<&'a Path>,
}

pub fn verify(args: VerifyArgs<'_>) -> Result<bool, CliError> {
    let input = args.input;
    let cap = input::word_cap()?;
    let eps = input.tolerance;
    let rank = input.rank();
    let depth = args.depth.resolve(rank, cap)?;
    let freeness_depth = args.freeness_depth.resolve(rank, cap)?;

    let identity_word = words::freeness_sample(input.generators(), freeness_depth, cap, eps)
        .map_err(CliError::check)?;
    let freeness = FreenessCheck {
        depth: freeness_depth,
        free: identity_word.is_none(),
        identity_word,
    };

    let pressure = |group: &dyn PingPong| {
        estimate_dimension_pressure(group, DEFAULT_RESOLUTION, DEFAULT_STATE_DEPTH, cap, eps)
            .ok()
            .map(|d| d.value)
    };

    let mut verification = None;
    let mut configuration_note = None;
    let mut classification = None;
    let mut orientation_subgroup = None;
    let checks_passed = match &input.group {
        Group::Symmetric(group) => {
            let report = verify_schottky_condition(group, eps);
            let dimension = if report.passed { pressure(group) } else { None };
            let class = is_fuchsian_schottky(Candidate::Group(group), depth, cap, eps, dimension)
                .map_err(CliError::check)?;
            let ok = report.passed && class.fuchsian_schottky;
            verification = Some(report);
            classification = Some(class);
            ok
        }
        Group::Extended(group) => {
            let report = verify_schottky_condition(group, eps);
            let mut words_checked = 0;
            let mut first_offending = None;
            words::for_each_word(group, depth, cap, |w, m| {
                if m.orientation() == Orientation::Preserving {
                    words_checked += 1;
                    if m.classify(eps) != IsometryClass::Hyperbolic {
                        first_offending = Some(w.clone());
                        return false;
                    }
                }
                true
            })
            .map_err(CliError::check)?;
            configuration_note = Some(
                "orientation-reversing generators: the orientation-preserving subgroup is checked for hyperbolicity"
                    .to_string(),
            );
            let check = OrientationSubgroupCheck {
                depth,
                words_checked,
                all_hyperbolic: first_offending.is_none(),
                first_offending,
            };
            let ok = report.passed && check.all_hyperbolic;
            verification = Some(report);
            orientation_subgroup = Some(check);
            ok
        }
        Group::Raw { raw, system } => {
            let mut dimension = None;
            match system {
                Ok(system) => {
                    let report = verify_schottky_condition(system, eps);
                    if report.passed {
                        dimension = pressure(system);
                    }
                    verification = Some(report);
                }
                Err(e) => configuration_note = Some(e.clone()),
            }
            let class = is_fuchsian_schottky(Candidate::Raw(raw), depth, cap, eps, dimension)
                .map_err(CliError::check)?;
            let ok = class.fuchsian_schottky && verification.as_ref().is_some_and(|v| v.passed);
            classification = Some(class);
            ok
        }
    };
    let passed = checks_passed && freeness.free;

    let report = VerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "verify".into(),
        input: input.summary(),
        verification,
        configuration_note,
        freeness,
        classification,
        orientation_subgroup,
        passed,
    };
    emit(&report, args.out)?;
    let verdict = match &report.classification {
        Some(c) if c.fuchsian_schottky => "Fuchsian Schottky".to_string(),
        Some(c) => format!(
            "not Fuchsian Schottky{}",
            c.note
                .as_ref()
                .map(|n| format!(" ({n})"))
                .unwrap_or_default()
        ),
        None => "extended group".to_string(),
    };
    eprintln!(
        "verify: rank {rank}, {verdict}, checks {}",
        if passed { "passed" } else { "failed" }
    );
    Ok(passed)
}

pub struct LimitSetArgs<'a> {
    pub input: &'a LoadedInput,
    pub depth: usize,
    pub svg: Option<&'a Path>,
    pub out: Option<&'a Path>,
}

fn check_depth(depth: usize) -> Result<(), CliError> {
    if depth == 0 {
        return Err(CliError::Input("depth must be at least 1".into()));
    }
    Ok(())
}

pub fn limitset(args: LimitSetArgs<'_>) -> Result<bool, CliError> {
    check_depth(args.depth)?;
    let cap = input::word_cap()?;
    let eps = args.input.tolerance;
    let group = args.input.ping_pong()?;
    let layers = limitset::refine_layers(group, args.depth, cap, eps).map_err(CliError::check)?;
    let sample = limitset::sample_points(group, args.depth, cap, eps).map_err(CliError::check)?;
    let nielsen = if group.rank() >= 2 {
        Some(nielsen_boundary(group, args.depth - 1, cap, eps).map_err(CliError::check)?)
    } else {
        None
    };
    let deepest = layers.last().expect("depth ≥ 1");
    let report = LimitSetReport {
        schema_version: SCHEMA_VERSION,
        command: "limitset".into(),
        input: args.input.summary(),
        depth: args.depth,
        layers: layers
            .iter()
            .map(|l| LayerSummary {
                depth: l.depth,
                cells: l.cells.len(),
                total_length: l.total_length,
                max_cell_length: l.max_cell_length(),
                unresolved_cells: l.unresolved_cells,
            })
            .collect(),
        total_lengths: layers.iter().map(|l| l.total_length).collect(),
        contraction_ratio: limitset::contraction_ratio(&layers),
        nielsen,
        cells: deepest.cells.clone(),
        sample_points: sample.points.clone(),
    };
    emit(&report, args.out)?;
    if let Some(path) = args.svg {
        let scene = Scene {
            title: format!(
                "limit set cells, rank {}, depth {}",
                group.rank(),
                args.depth
            ),
            group,
            nested: &[],
            ticks: Some(deepest),
            points: &sample.points,
        };
        write_text(&svg::render(&scene), Some(path))?;
    }
    eprintln!(
        "limitset: rank {}, depth {}, {} cells, total length {:.6e}",
        group.rank(),
        args.depth,
        deepest.cells.len(),
        deepest.total_length
    );
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Pressure,
    BoxCount,
    Both,
}

pub struct DimensionArgs<'a> {
    pub input: &'a LoadedInput,
    pub method: Method,
    pub depth: usize,
    pub resolution: f64,
    pub state_depth: usize,
    pub out: Option<&'a Path>,
}

pub fn dimension(args: DimensionArgs<'_>) -> Result<bool, CliError> {
    if !(args.resolution > 0.0 && args.resolution < 1.0) {
        return Err(CliError::Input(format!(
            "resolution must lie in (0, 1), got {}",
            args.resolution
        )));
    }
    if args.state_depth == 0 {
        return Err(CliError::Input("state depth must be at least 1".into()));
    }
    let wants_box = matches!(args.method, Method::BoxCount | Method::Both);
    if wants_box && args.depth < 3 {
        return Err(CliError::Input(format!(
            "box counting needs depth ≥ 3, got {}",
            args.depth
        )));
    }
    let cap = input::word_cap()?;
    let eps = args.input.tolerance;
    let group = args.input.ping_pong()?;
    let pressure = if matches!(args.method, Method::Pressure | Method::Both) {
        Some(
            estimate_dimension_pressure(group, args.resolution, args.state_depth, cap, eps)
                .map_err(CliError::check)?,
        )
    } else {
        None
    };
    let box_counting = if wants_box {
        Some(estimate_dimension_boxcount(group, args.depth, cap, eps).map_err(CliError::check)?)
    } else {
        None
    };
    let primary = pressure
        .as_ref()
        .or(box_counting.as_ref())
        .expect("a method ran");
    let convergence = convergence_type_report(primary);
    let cross_method_gap = match (&pressure, &box_counting) {
        (Some(p), Some(b)) => Some((p.value - b.value).abs()),
        _ => None,
    };
    let report = DimensionReport {
        schema_version: SCHEMA_VERSION,
        command: "dimension".into(),
        input: args.input.summary(),
        dimension_at_most_half: convergence.dimension_at_most_half,
        pressure,
        box_counting,
        cross_method_gap,
        convergence,
    };
    emit(&report, args.out)?;
    let fmt = |e: &Option<funnelgroup::DimensionEstimate>| {
        e.as_ref()
            .map_or("-".to_string(), |e| format!("{:.6}", e.value))
    };
    eprintln!(
        "dimension: pressure {}, box counting {}",
        fmt(&report.pressure),
        fmt(&report.box_counting)
    );
    Ok(true)
}

/// Rank from `--rank`, a configuration, or both when they agree.
fn surface_rank(rank: Option<u64>, input: Option<&LoadedInput>) -> Result<u64, CliError> {
    match (rank, input) {
        (Some(r), Some(i)) if r != i.rank() as u64 => Err(CliError::Input(format!(
            "--rank {r} disagrees with the configuration's rank {}",
            i.rank()
        ))),
        (Some(r), _) => Ok(r),
        (None, Some(i)) => Ok(i.rank() as u64),
        (None, None) => Err(CliError::Input(
            "give --rank or a configuration file".into(),
        )),
    }
}

pub fn topology(
    rank: Option<u64>,
    input: Option<&LoadedInput>,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    let rank = surface_rank(rank, input)?;
    let topology = fuchsian_topology(rank).map_err(CliError::input)?;
    let classical = classical_funnels(rank).map_err(CliError::input)?;
    let funnel_bound = if rank >= 2 {
        funnel_bound_comparison(rank..=rank)
            .map_err(CliError::input)?
            .pop()
    } else {
        None
    };
    let ends = match input.and_then(LoadedInput::symmetric) {
        Some(group) => Some(
            end_decomposition(group, &topology, input.expect("loaded").tolerance)
                .map_err(CliError::check)?,
        ),
        None => None,
    };
    let report = TopologyReport {
        schema_version: SCHEMA_VERSION,
        command: "topology".into(),
        rank,
        topology,
        classical,
        funnel_bound,
        input: input.map(LoadedInput::summary),
        ends,
    };
    emit(&report, out)?;
    let options: Vec<String> = report
        .classical
        .funnel_counts()
        .iter()
        .map(u64::to_string)
        .collect();
    eprintln!(
        "topology: rank {rank}, genus {}, {} funnel(s); classical funnel options: {}",
        report.topology.genus,
        report.topology.funnels,
        options.join(" or ")
    );
    Ok(true)
}

pub fn pants(
    rank: Option<u64>,
    input: Option<&LoadedInput>,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    let rank = surface_rank(rank, input)?;
    let eps = input.map_or(funnelgroup::DEFAULT_TOLERANCE, |i| i.tolerance);
    let group = input.and_then(LoadedInput::symmetric);
    let pants = pants_report(rank, group, eps).map_err(CliError::input)?;
    let collars = pants
        .curve_lengths
        .iter()
        .map(|c| collar(c.length))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::check)?;
    let report = PantsFile {
        schema_version: SCHEMA_VERSION,
        command: "pants".into(),
        input: input.map(LoadedInput::summary),
        pants,
        collars,
    };
    emit(&report, out)?;
    let p = &report.pants;
    eprintln!(
        "pants: rank {rank}, {} pants, {} twists, signature ({}, {})",
        p.num_pants, p.twist_count, p.signature[0], p.signature[1]
    );
    Ok(true)
}

pub struct RenderArgs<'a> {
    pub input: &'a LoadedInput,
    pub depth: usize,
    pub out: Option<&'a Path>,
}

pub fn render(args: RenderArgs<'_>) -> Result<bool, CliError> {
    check_depth(args.depth)?;
    let cap = input::word_cap()?;
    let eps = args.input.tolerance;
    let group = args.input.ping_pong()?;
    let layers = limitset::refine_layers(group, args.depth, cap, eps).map_err(CliError::check)?;
    let sample = limitset::sample_points(group, args.depth, cap, eps).map_err(CliError::check)?;
    let scene = Scene {
        title: format!(
            "fundamental domain and nested cells, rank {}, depth {}",
            group.rank(),
            args.depth
        ),
        group,
        nested: &layers[1..],
        ticks: layers.last(),
        points: &sample.points,
    };
    write_text(&svg::render(&scene), args.out)?;
    eprintln!("render: rank {}, depth {}", group.rank(), args.depth);
    Ok(true)
}
