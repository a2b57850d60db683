//! Symmetric semicircle configurations and the Fuchsian Schottky groups they
//! generate.
//!
//! The `k`-th generator pairs the semicircle over the mirrored interval
//! `(−b_k, −a_k)` with the semicircle over `(a_k, b_k)`. It is the reflection
//! in that mirrored semicircle followed by the reflection in the imaginary
//! axis, which on the boundary reads
//!
//! ```text
//! x ↦ (c·x + c² − r²) / (x + c),   c = (a+b)/2,  r = (b−a)/2
//! ```
//!
//! It sends `−b_k ↦ b_k`, `−a_k ↦ a_k`, maps the exterior of the mirrored
//! semicircle onto the interior of the positive one, and has its fixed points
//! at `±√(a_k b_k)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limitset::{self, LimitSetError};
use crate::mobius::{AxisData, BoundaryInterval, ExtendedMobiusMap, MobiusError, Orientation};
use crate::words::{self, GeneratorSet, HyperbolicSample, Letter, RawGenerators, Word, WordsError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchottkyError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no generator is flagged as orientation reversing; use the base builder")]
    UseBaseBuilder,
    #[error("rank-1 group: the limit set is the two points {0:?}")]
    DegenerateRankOne(AxisData),
    #[error("generator {0} has no isometric circle (c = 0)")]
    NoIsometricCircle(usize),
    #[error(transparent)]
    Mobius(#[from] MobiusError),
    #[error(transparent)]
    Words(#[from] WordsError),
    #[error(transparent)]
    LimitSet(#[from] Box<LimitSetError>),
}

/// A group whose generators play ping-pong on `2n` boundary intervals:
/// the map of letter `ℓ` sends the complement of `target(ℓ⁻¹)` into
/// `target(ℓ)`.
pub trait PingPong: GeneratorSet {
    fn target(&self, letter: Letter) -> BoundaryInterval;

    fn source(&self, letter: Letter) -> BoundaryInterval {
        self.target(letter.inverse())
    }

    /// All `2n` target intervals sorted along the boundary line.
    fn circle_order(&self) -> Vec<(Letter, BoundaryInterval)> {
        let mut out: Vec<_> = Letter::alphabet(self.rank())
            .into_iter()
            .map(|l| (l, self.target(l)))
            .collect();
        out.sort_by(|x, y| x.1.lo().total_cmp(&y.1.lo()));
        out
    }
}

/// `n` positive intervals `0 < a_1 < b_1 < a_2 < … < b_n`; the mirrored
/// family is derived on demand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchottkyConfig {
    positive_intervals: Vec<BoundaryInterval>,
}

impl SchottkyConfig {
    /// Rejects empty lists, nonpositive `a_1`, and overlapping or misordered
    /// intervals. Near-tangent gaps are accepted here and reported by
    /// [`verify_schottky_condition`].
    pub fn new(positive_intervals: Vec<BoundaryInterval>) -> Result<Self, SchottkyError> {
        let first = positive_intervals
            .first()
            .ok_or_else(|| SchottkyError::InvalidConfig("no intervals".into()))?;
        if !(first.lo() > 0.0) {
            return Err(SchottkyError::InvalidConfig(format!(
                "first interval {first} must lie to the right of 0"
            )));
        }
        for pair in positive_intervals.windows(2) {
            if !(pair[1].lo() > pair[0].hi()) {
                return Err(SchottkyError::InvalidConfig(format!(
                    "intervals {} and {} overlap or are out of order",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Self { positive_intervals })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self, SchottkyError> {
        let intervals = pairs
            .iter()
            .map(|&(a, b)| BoundaryInterval::new(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(intervals)
    }

    pub fn rank(&self) -> usize {
        self.positive_intervals.len()
    }

    pub fn positive_intervals(&self) -> &[BoundaryInterval] {
        &self.positive_intervals
    }

    pub fn positive(&self, k: usize) -> BoundaryInterval {
        self.positive_intervals[k]
    }

    pub fn mirrored(&self, k: usize) -> BoundaryInterval {
        self.positive_intervals[k].mirrored()
    }

    /// `[−b_n, b_n]`.
    pub fn hull_span(&self) -> BoundaryInterval {
        let outer = self.positive_intervals[self.rank() - 1].hi();
        BoundaryInterval::new(-outer, outer).expect("outer endpoint is positive")
    }

    /// Same configuration with every interval scaled about its own center.
    pub fn scaled(&self, factor: f64) -> Result<Self, SchottkyError> {
        let intervals = self
            .positive_intervals
            .iter()
            .map(|i| {
                let (c, r) = (i.center(), i.radius() * factor);
                BoundaryInterval::new(c - r, c + r)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(intervals)
    }
}

/// The marked group generated by a [`SchottkyConfig`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchottkyGroup {
    config: SchottkyConfig,
    generators: Vec<ExtendedMobiusMap>,
}

/// Pairing map for one interval: imaginary-axis reflection after the
/// reflection in the mirrored semicircle.
fn pairing_generator(interval: &BoundaryInterval) -> ExtendedMobiusMap {
    let mirrored = interval.mirrored();
    let inversion =
        ExtendedMobiusMap::reflection_in_semicircle(mirrored.center(), mirrored.radius())
            .expect("interval radius is positive");
    ExtendedMobiusMap::reflection_in_imaginary_axis().compose(&inversion)
}

pub fn build_group(config: SchottkyConfig) -> SchottkyGroup {
    let generators = config
        .positive_intervals
        .iter()
        .map(pairing_generator)
        .collect();
    SchottkyGroup { config, generators }
}

impl SchottkyGroup {
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self, SchottkyError> {
        Ok(build_group(SchottkyConfig::from_pairs(pairs)?))
    }

    pub fn config(&self) -> &SchottkyConfig {
        &self.config
    }

    pub fn generators(&self) -> &[ExtendedMobiusMap] {
        &self.generators
    }

    /// The same generators with their ping-pong intervals, detached from the
    /// symmetric configuration.
    pub fn ping_pong_system(&self) -> PingPongSystem {
        PingPongSystem::from_group(self)
    }
}

impl GeneratorSet for SchottkyGroup {
    fn rank(&self) -> usize {
        self.generators.len()
    }

    fn generator(&self, index: usize) -> &ExtendedMobiusMap {
        &self.generators[index]
    }
}

impl PingPong for SchottkyGroup {
    fn target(&self, letter: Letter) -> BoundaryInterval {
        if letter.inverse {
            self.config.mirrored(letter.generator)
        } else {
            self.config.positive(letter.generator)
        }
    }
}

/// Generic ping-pong data: generator maps plus one target interval per
/// letter (indexed by [`Letter::index`]).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PingPongSystem {
    generators: Vec<ExtendedMobiusMap>,
    targets: Vec<BoundaryInterval>,
}

impl PingPongSystem {
    pub fn from_group<P: PingPong + ?Sized>(group: &P) -> Self {
        let rank = group.rank();
        Self {
            generators: (0..rank).map(|k| *group.generator(k)).collect(),
            targets: Letter::alphabet(rank)
                .into_iter()
                .map(|l| group.target(l))
                .collect(),
        }
    }

    /// Uses isometric circles: the map of `ℓ` carries the exterior of its own
    /// isometric circle `|cx + d| = 1` onto the interior of the isometric
    /// circle of its inverse, so `target(ℓ)` is the latter's diameter.
    pub fn from_isometric_circles(raw: &RawGenerators) -> Result<Self, SchottkyError> {
        let rank = raw.rank();
        let mut targets = Vec::with_capacity(2 * rank);
        for letter in Letter::alphabet(rank) {
            let inverse = raw.letter_map(letter.inverse());
            let [_, _, c, d] = inverse.coefficients();
            if c == 0.0 {
                return Err(SchottkyError::NoIsometricCircle(letter.generator + 1));
            }
            let (center, radius) = (-d / c, 1.0 / c.abs());
            targets.push(BoundaryInterval::new(center - radius, center + radius)?);
        }
        Ok(Self {
            generators: raw.generators().to_vec(),
            targets,
        })
    }

    /// Conjugates every generator by `h` and carries the intervals along.
    /// `h` must keep its pole off every interval.
    pub fn conjugate_by(&self, h: &ExtendedMobiusMap, eps: f64) -> Result<Self, SchottkyError> {
        Ok(Self {
            generators: self.generators.iter().map(|g| g.conjugate_by(h)).collect(),
            targets: self
                .targets
                .iter()
                .map(|t| h.image_interval(t, eps))
                .collect::<Result<Vec<_>, _>>()?,
        })
    }
}

impl GeneratorSet for PingPongSystem {
    fn rank(&self) -> usize {
        self.generators.len()
    }

    fn generator(&self, index: usize) -> &ExtendedMobiusMap {
        &self.generators[index]
    }
}

impl PingPong for PingPongSystem {
    fn target(&self, letter: Letter) -> BoundaryInterval {
        self.targets[letter.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NestingCheck {
    pub letter: String,
    /// The configured interval being mapped, named by the letter it is the
    /// target of.
    pub interval_of: String,
    pub image: Option<BoundaryInterval>,
    /// `None` when the map's pole falls on the interval.
    pub margin: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rank: usize,
    pub min_gap: f64,
    pub disjoint: bool,
    pub nesting: Vec<NestingCheck>,
    pub nesting_ok: bool,
    pub tangency_margin: f64,
    pub non_tangent: bool,
    pub passed: bool,
}

/// Checks disjointness, ping-pong nesting and non-tangency. Failures are
/// recorded, never raised.
pub fn verify_schottky_condition<P: PingPong + ?Sized>(group: &P, eps: f64) -> VerificationReport {
    let order = group.circle_order();
    let min_gap = order
        .windows(2)
        .map(|p| p[1].1.lo() - p[0].1.hi())
        .fold(f64::INFINITY, f64::min);
    // A single interval pair always has a positive gap at the origin, so
    // `min_gap` is finite for rank ≥ 1.
    let min_gap = if min_gap.is_finite() { min_gap } else { 0.0 };

    let mut nesting = Vec::new();
    for letter in Letter::alphabet(group.rank()) {
        let map = group.letter_map(letter);
        let target = group.target(letter);
        for &(owner, interval) in &order {
            if owner == letter.inverse() {
                continue;
            }
            let (image, margin) = match map.image_interval(&interval, eps) {
                Ok(img) => (Some(img), Some(target.containment_margin(&img))),
                Err(_) => (None, None),
            };
            nesting.push(NestingCheck {
                letter: letter.to_string(),
                interval_of: owner.to_string(),
                image,
                margin,
                passed: margin.is_some_and(|m| m > eps),
            });
        }
    }
    let nesting_ok = nesting.iter().all(|c| c.passed);
    let disjoint = min_gap > 0.0;
    let non_tangent = min_gap > eps;
    VerificationReport {
        rank: group.rank(),
        min_gap,
        disjoint,
        nesting,
        nesting_ok,
        tangency_margin: min_gap,
        non_tangent,
        passed: disjoint && nesting_ok && non_tangent,
    }
}

/// A symmetric group where some generators are replaced by glide
/// reflections along their own axes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtendedSchottkyGroup {
    config: SchottkyConfig,
    generators: Vec<ExtendedMobiusMap>,
    reversing: Vec<bool>,
}

pub fn build_extended_group(
    config: SchottkyConfig,
    reversing: &[bool],
) -> Result<ExtendedSchottkyGroup, SchottkyError> {
    if reversing.len() != config.rank() {
        return Err(SchottkyError::InvalidConfig(format!(
            "{} reversing flags for rank {}",
            reversing.len(),
            config.rank()
        )));
    }
    if !reversing.iter().any(|&f| f) {
        return Err(SchottkyError::UseBaseBuilder);
    }
    let generators = config
        .positive_intervals
        .iter()
        .zip(reversing)
        .map(|(interval, &flag)| {
            let g = pairing_generator(interval);
            if flag {
                let p = (interval.lo() * interval.hi()).sqrt();
                Ok(g.compose(&ExtendedMobiusMap::reflection_in_geodesic(-p, p)?))
            } else {
                Ok(g)
            }
        })
        .collect::<Result<Vec<_>, SchottkyError>>()?;
    Ok(ExtendedSchottkyGroup {
        config,
        generators,
        reversing: reversing.to_vec(),
    })
}

impl ExtendedSchottkyGroup {
    pub fn config(&self) -> &SchottkyConfig {
        &self.config
    }

    pub fn reversing(&self) -> &[bool] {
        &self.reversing
    }

    /// Number of orientation-reversing letters in `word`.
    pub fn reversing_letters(&self, word: &Word) -> usize {
        word.letters()
            .iter()
            .filter(|l| self.reversing[l.generator])
            .count()
    }
}

impl GeneratorSet for ExtendedSchottkyGroup {
    fn rank(&self) -> usize {
        self.generators.len()
    }

    fn generator(&self, index: usize) -> &ExtendedMobiusMap {
        &self.generators[index]
    }
}

impl PingPong for ExtendedSchottkyGroup {
    fn target(&self, letter: Letter) -> BoundaryInterval {
        if letter.inverse {
            self.config.mirrored(letter.generator)
        } else {
            self.config.positive(letter.generator)
        }
    }
}

/// Reduced words of length `1..=depth` whose evaluation preserves orientation.
pub fn orientation_subgroup_sample(
    group: &ExtendedSchottkyGroup,
    depth: usize,
    cap: u64,
) -> Result<Vec<(Word, ExtendedMobiusMap)>, SchottkyError> {
    let mut out = Vec::new();
    words::for_each_word(group, depth, cap, |w, m| {
        if m.orientation() == Orientation::Preserving {
            out.push((w.clone(), *m));
        }
        true
    })?;
    Ok(out)
}

/// Gaps between refinement cells inside the hull span. Each gap carries the
/// geodesic standing on it; these geodesics bound the approximate Nielsen
/// region from outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NielsenBoundary {
    pub depth: usize,
    pub hull: BoundaryInterval,
    pub gaps: Vec<BoundaryInterval>,
}

impl NielsenBoundary {
    /// `(center, radius)` of each gap geodesic.
    pub fn geodesics(&self) -> Vec<(f64, f64)> {
        self.gaps.iter().map(|g| (g.center(), g.radius())).collect()
    }
}

/// Depth `d` uses the refinement layer of word length `d + 1`, so depth 0
/// works with the `2n` configured intervals. The region outside the hull
/// (through infinity) is always an additional complementary component.
pub fn nielsen_boundary<P: PingPong + ?Sized>(
    group: &P,
    depth: usize,
    cap: u64,
    eps: f64,
) -> Result<NielsenBoundary, SchottkyError> {
    if group.rank() == 1 {
        let axis = group.generator(0).axis(eps)?;
        return Err(SchottkyError::DegenerateRankOne(axis));
    }
    let layer = limitset::refine(group, depth + 1, cap, eps).map_err(Box::new)?;
    let mut intervals: Vec<BoundaryInterval> = layer.cells.iter().map(|c| c.interval).collect();
    intervals.sort_by(|x, y| x.lo().total_cmp(&y.lo()));
    let hull = BoundaryInterval::new(intervals[0].lo(), intervals[intervals.len() - 1].hi())?;
    let gaps = intervals
        .windows(2)
        .map(|p| BoundaryInterval::new(p[0].hi(), p[1].lo()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NielsenBoundary { depth, hull, gaps })
}

/// Either a symmetric group or a bare list of generators.
#[derive(Debug, Clone, Copy)]
pub enum Candidate<'a> {
    Group(&'a SchottkyGroup),
    Raw(&'a RawGenerators),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub rank: usize,
    pub purely_hyperbolic: HyperbolicSample,
    pub disjoint_semicircle_configuration: bool,
    pub dimension_estimate: Option<f64>,
    pub dimension_at_most_half: Option<bool>,
    pub fuchsian_schottky: bool,
    pub note: Option<String>,
}

/// Decides membership in the Fuchsian Schottky class on the evidence that
/// can be computed: a purely hyperbolic word sample and a disjoint
/// semicircle configuration. The dimension flag is reported, not required.
pub fn is_fuchsian_schottky(
    candidate: Candidate<'_>,
    depth: usize,
    cap: u64,
    eps: f64,
    dimension: Option<f64>,
) -> Result<ClassificationReport, SchottkyError> {
    let (rank, sample, configuration, mut note) = match candidate {
        Candidate::Group(group) => {
            let sample = words::purely_hyperbolic_sample(group, depth, cap, eps)?;
            let verified = verify_schottky_condition(group, eps).passed;
            (group.rank(), sample, verified, None)
        }
        Candidate::Raw(raw) => {
            let sample = words::purely_hyperbolic_sample(raw, depth, cap, eps)?;
            match PingPongSystem::from_isometric_circles(raw) {
                Ok(system) => {
                    let verified = verify_schottky_condition(&system, eps).passed;
                    (raw.rank(), sample, verified, None)
                }
                Err(e) => (raw.rank(), sample, false, Some(e.to_string())),
            }
        }
    };
    let verdict = sample.all_hyperbolic && configuration;
    if verdict && rank == 1 {
        note = Some("rank 1: holds trivially, the limit set is two conical limit points".into());
    }
    if let Some(off) = sample.first_offending.as_ref() {
        let reason = format!("word {} is {}", off.word, off.class);
        note = Some(match note {
            Some(n) => format!("{reason}; {n}"),
            None => reason,
        });
    }
    Ok(ClassificationReport {
        rank,
        purely_hyperbolic: sample,
        disjoint_semicircle_configuration: configuration,
        dimension_estimate: dimension,
        dimension_at_most_half: dimension.map(|d| d <= 0.5),
        fuchsian_schottky: verdict,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::{IsometryClass, DEFAULT_TOLERANCE as EPS};
    use crate::words::DEFAULT_WORD_CAP as CAP;

    fn worked() -> SchottkyGroup {
        SchottkyGroup::from_pairs(&[(2.0, 8.0), (10.0, 12.0)]).unwrap()
    }

    #[test]
    fn rank_one_generator_matches_composition_of_reflections() {
        let g = SchottkyGroup::from_pairs(&[(2.0, 8.0)]).unwrap();
        let expected = ExtendedMobiusMap::new(5.0, 16.0, 1.0, 5.0).unwrap();
        assert!(g.generators()[0].approx_eq(&expected, 1e-14));
        let axis = g.generators()[0].axis(EPS).unwrap();
        assert!((axis.attracting - 4.0).abs() < 1e-12);
        assert!((axis.repelling + 4.0).abs() < 1e-12);
        assert!((axis.translation_length - 2.0 * 3f64.ln()).abs() < 1e-12);
        assert!((g.generators()[0].apply(-8.0) - 8.0).abs() < 1e-12);
        assert!((g.generators()[0].apply(-2.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_and_ordering_rejected() {
        assert!(matches!(
            SchottkyConfig::from_pairs(&[(2.0, 8.0), (7.0, 9.0)]),
            Err(SchottkyError::InvalidConfig(_))
        ));
        assert!(SchottkyConfig::from_pairs(&[(10.0, 12.0), (2.0, 8.0)]).is_err());
        assert!(SchottkyConfig::from_pairs(&[(-1.0, 2.0)]).is_err());
        assert!(SchottkyConfig::from_pairs(&[]).is_err());
        assert!(SchottkyConfig::from_pairs(&[(3.0, 2.0)]).is_err());
    }

    #[test]
    fn worked_config_verifies() {
        let report = verify_schottky_condition(&worked(), EPS);
        assert!(report.passed);
        assert_eq!(report.nesting.len(), 4 * 3);
        assert!((report.min_gap - 2.0).abs() < 1e-12);
        let check = report
            .nesting
            .iter()
            .find(|c| c.letter == "+1" && c.interval_of == "+2")
            .unwrap();
        let img = check.image.unwrap();
        assert!((img.lo() - 4.4).abs() < 1e-12);
        assert!((img.hi() - 76.0 / 17.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_nesting_passes() {
        let g = SchottkyGroup::from_pairs(&[(2.0, 8.0)]).unwrap();
        assert!(verify_schottky_condition(&g, EPS).passed);
    }

    #[test]
    fn near_tangent_config_fails_verification() {
        let g = SchottkyGroup::from_pairs(&[(1.0, 2.0), (2.000_000_000_1, 3.0)]).unwrap();
        let report = verify_schottky_condition(&g, EPS);
        assert!(report.disjoint);
        assert!(!report.non_tangent);
        assert!(!report.passed);
    }

    #[test]
    fn extended_generator_is_a_glide_reflection() {
        let config = SchottkyConfig::from_pairs(&[(2.0, 8.0)]).unwrap();
        let ext = build_extended_group(config, &[true]).unwrap();
        let g = ext.generator(0);
        assert_eq!(g.classify(EPS), IsometryClass::GlideReflection);
        let axis = g.axis(EPS).unwrap();
        assert!((axis.attracting - 4.0).abs() < 1e-12);
        assert!((axis.repelling + 4.0).abs() < 1e-12);
        let sq = g.compose(g);
        assert_eq!(sq.classify(EPS), IsometryClass::Hyperbolic);
        let len = sq.axis(EPS).unwrap().translation_length;
        assert!((len - 4.0 * 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn extended_builder_requires_a_flag() {
        let config = SchottkyConfig::from_pairs(&[(2.0, 8.0)]).unwrap();
        assert_eq!(
            build_extended_group(config.clone(), &[false]),
            Err(SchottkyError::UseBaseBuilder)
        );
        assert!(matches!(
            build_extended_group(config, &[true, false]),
            Err(SchottkyError::InvalidConfig(_))
        ));
    }

    #[test]
    fn orientation_subgroup_of_rank_one() {
        let config = SchottkyConfig::from_pairs(&[(2.0, 8.0)]).unwrap();
        let ext = build_extended_group(config, &[true]).unwrap();
        assert!(orientation_subgroup_sample(&ext, 1, CAP)
            .unwrap()
            .is_empty());
        let depth_two = orientation_subgroup_sample(&ext, 2, CAP).unwrap();
        let names: Vec<String> = depth_two.iter().map(|(w, _)| w.to_string()).collect();
        assert_eq!(names, ["+1+1", "-1-1"]);
        let square = ext.generator(0).compose(ext.generator(0));
        assert!(depth_two[0].1.approx_eq(&square, 1e-12));
    }

    #[test]
    fn nielsen_rank_one_is_degenerate() {
        let g = SchottkyGroup::from_pairs(&[(2.0, 8.0)]).unwrap();
        match nielsen_boundary(&g, 0, CAP, EPS) {
            Err(SchottkyError::DegenerateRankOne(axis)) => {
                assert!((axis.attracting - 4.0).abs() < 1e-12);
                assert!((axis.repelling + 4.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nielsen_depth_zero_gaps() {
        let nb = nielsen_boundary(&worked(), 0, CAP, EPS).unwrap();
        let gaps: Vec<[f64; 2]> = nb.gaps.iter().map(|&g| g.into()).collect();
        assert_eq!(gaps, [[-10.0, -8.0], [-2.0, 2.0], [8.0, 10.0]]);
        assert_eq!(nb.hull, BoundaryInterval::new(-12.0, 12.0).unwrap());
        assert_eq!(nb.geodesics()[1], (0.0, 2.0));
    }

    #[test]
    fn gamma_two_is_not_fuchsian_schottky() {
        let raw = RawGenerators::from_coefficients(&[[1.0, 2.0, 0.0, 1.0], [1.0, 0.0, 2.0, 1.0]])
            .unwrap();
        let report = is_fuchsian_schottky(Candidate::Raw(&raw), 4, CAP, EPS, None).unwrap();
        assert!(!report.fuchsian_schottky);
        assert!(!report.purely_hyperbolic.all_hyperbolic);
        assert!(!report.disjoint_semicircle_configuration);
        let off = report.purely_hyperbolic.first_offending.unwrap();
        assert_eq!(off.word.to_string(), "+1");
        assert_eq!(off.class, IsometryClass::Parabolic);
    }

    #[test]
    fn rank_one_is_trivially_fuchsian_schottky() {
        let g = SchottkyGroup::from_pairs(&[(2.0, 8.0)]).unwrap();
        let report = is_fuchsian_schottky(Candidate::Group(&g), 6, CAP, EPS, Some(0.0)).unwrap();
        assert!(report.fuchsian_schottky);
        assert!(report.note.unwrap().contains("trivially"));
        assert_eq!(report.dimension_at_most_half, Some(true));
    }

    #[test]
    fn raw_copy_of_worked_group_passes_through_isometric_circles() {
        let g = worked();
        let raw = RawGenerators::new(g.generators().to_vec());
        let system = PingPongSystem::from_isometric_circles(&raw).unwrap();
        for l in Letter::alphabet(2) {
            let (x, y) = (system.target(l), g.target(l));
            assert!((x.lo() - y.lo()).abs() < 1e-12 && (x.hi() - y.hi()).abs() < 1e-12);
        }
        let report = is_fuchsian_schottky(Candidate::Raw(&raw), 5, CAP, EPS, None).unwrap();
        assert!(report.fuchsian_schottky);
    }
}
