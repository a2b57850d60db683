//! Topology of the quotient surface, funnel counts for both uniformizations,
//! pants decompositions and collar widths.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mobius::MobiusError;
use crate::schottky::{PingPong, SchottkyGroup};
use crate::words::{self, GeneratorSet, Letter, Word};

/// Upper bound on Bers' constant quoted for rank `n`: `31n + 21`.
pub fn bers_bound(rank: u64) -> u64 {
    31 * rank + 21
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("rank {rank} is below the minimum {min}")]
    RankTooSmall { rank: u64, min: u64 },
    #[error("empty rank range")]
    EmptyRange,
    #[error("boundary length must be positive, got {0}")]
    NonpositiveLength(f64),
    #[error("pairing of interval {0} does not reverse endpoints as expected")]
    UnexpectedPairing(String),
    #[error(transparent)]
    Mobius(#[from] MobiusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    HyperbolicCylinder,
    FiniteLochNessMonster,
    FiniteJacobsLadder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceTopology {
    pub rank: u64,
    pub genus: u64,
    pub funnels: u64,
    pub cusps: u64,
    pub euler: i64,
    pub kind: SurfaceKind,
}

/// Genus and funnel count by parity of the rank: rank 1 is the cylinder,
/// even rank `n` has `n/2` handles and one funnel, odd rank `n ≥ 3` has
/// `(n−1)/2` handles and two funnels.
pub fn fuchsian_topology(rank: u64) -> Result<SurfaceTopology, SurfaceError> {
    let (genus, funnels, kind) = match rank {
        0 => return Err(SurfaceError::RankTooSmall { rank, min: 1 }),
        1 => (0, 2, SurfaceKind::HyperbolicCylinder),
        n if n % 2 == 0 => (n / 2, 1, SurfaceKind::FiniteLochNessMonster),
        n => ((n - 1) / 2, 2, SurfaceKind::FiniteJacobsLadder),
    };
    let euler = 2 - 2 * genus as i64 - funnels as i64;
    Ok(SurfaceTopology {
        rank,
        genus,
        funnels,
        cusps: 0,
        euler,
        kind,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunnelOption {
    pub divisor: u64,
    pub funnels: u64,
    /// Whether `m = 2g + f − 1` holds for this row.
    pub relation_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalFunnelSet {
    pub rank: u64,
    pub genus: u64,
    pub options: Vec<FunnelOption>,
}

impl ClassicalFunnelSet {
    pub fn funnel_counts(&self) -> Vec<u64> {
        self.options.iter().map(|o| o.funnels).collect()
    }
}

pub fn proper_divisors(m: u64) -> Vec<u64> {
    (1..m).filter(|q| m % q == 0).collect()
}

pub fn is_prime(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// Funnel counts `m(m − (2q − 1))/q` over the proper divisors `q` of `m`.
/// Rank 1 is the cylinder: genus 0 and two funnels.
pub fn classical_funnels(rank: u64) -> Result<ClassicalFunnelSet, SurfaceError> {
    let relation = |genus: u64, f: u64| rank + 1 == 2 * genus + f;
    match rank {
        0 => Err(SurfaceError::RankTooSmall { rank, min: 1 }),
        1 => Ok(ClassicalFunnelSet {
            rank,
            genus: 0,
            options: vec![FunnelOption {
                divisor: 1,
                funnels: 2,
                relation_holds: relation(0, 2),
            }],
        }),
        m => Ok(ClassicalFunnelSet {
            rank: m,
            genus: m,
            options: proper_divisors(m)
                .into_iter()
                .map(|q| {
                    // q ≤ m/2, so m − 2q + 1 ≥ 1.
                    let funnels = (m / q) * (m + 1 - 2 * q);
                    FunnelOption {
                        divisor: q,
                        funnels,
                        relation_holds: relation(m, funnels),
                    }
                })
                .collect(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunnelBoundRow {
    pub rank: u64,
    pub fuchsian_funnels: u64,
    /// Largest Fuchsian funnel count over this rank and the next one, so
    /// both parities are covered.
    pub fuchsian_max: u64,
    pub classical_options: Vec<u64>,
    pub classical_min: u64,
    pub classical_max: u64,
    pub bound_equality: bool,
    pub prime: bool,
    /// For prime ranks: whether the option set is exactly `{p(p−1)}`.
    pub prime_option_set_matches: Option<bool>,
}

pub fn funnel_bound_comparison(
    ranks: RangeInclusive<u64>,
) -> Result<Vec<FunnelBoundRow>, SurfaceError> {
    if ranks.is_empty() {
        return Err(SurfaceError::EmptyRange);
    }
    if *ranks.start() < 2 {
        return Err(SurfaceError::RankTooSmall {
            rank: *ranks.start(),
            min: 2,
        });
    }
    ranks
        .map(|m| {
            let own = fuchsian_topology(m)?.funnels;
            let next = fuchsian_topology(m + 1)?.funnels;
            let classical = classical_funnels(m)?.funnel_counts();
            let classical_min = *classical.iter().min().expect("m ≥ 2 has divisor 1");
            let fuchsian_max = own.max(next);
            let prime = is_prime(m);
            Ok(FunnelBoundRow {
                rank: m,
                fuchsian_funnels: own,
                fuchsian_max,
                classical_min,
                classical_max: m * (m - 1),
                bound_equality: fuchsian_max == classical_min,
                prime,
                prime_option_set_matches: prime.then(|| classical == [m * (m - 1)]),
                classical_options: classical,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollarSpec {
    pub boundary_length: f64,
    pub width: f64,
}

/// Half-collar width `w = arcsinh(1 / sinh(l/2))`.
pub fn collar(boundary_length: f64) -> Result<CollarSpec, SurfaceError> {
    if !(boundary_length > 0.0) || !boundary_length.is_finite() {
        return Err(SurfaceError::NonpositiveLength(boundary_length));
    }
    Ok(CollarSpec {
        boundary_length,
        width: (1.0 / (0.5 * boundary_length).sinh()).asinh(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsPiece {
    pub name: String,
    pub boundaries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingEdge {
    pub left: String,
    pub right: String,
    pub left_boundary: String,
    pub right_boundary: String,
    pub twist: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveLength {
    pub curve: String,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyFlag {
    pub name: String,
    pub stated: i64,
    pub computed: i64,
    pub consistent: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PantsReport {
    pub rank: u64,
    pub num_pants: u64,
    pub twist_count: u64,
    /// `(genus, boundary components)`.
    pub signature: [u64; 2],
    pub fn_length_count: u64,
    pub fn_twist_count: u64,
    pub bers_bound: u64,
    pub pieces: Vec<PantsPiece>,
    pub gluing: Vec<GluingEdge>,
    pub unmatched_boundaries: Vec<String>,
    pub curve_lengths: Vec<CurveLength>,
    pub consistency_flags: Vec<ConsistencyFlag>,
}

/// Pairs of pieces glued along one boundary each, in twist order.
///
/// Rank 2 is one X-piece `Y1 + Y2`. Each further rank adds the X-piece
/// `Y_{2r−3} + Y_{2r−2}` and then joins it to the previous X-piece along two
/// curves between `Y_{2r−4}` and `Y_{2r−3}`. All X-piece seams come first,
/// then the cross seams.
fn gluing_pairs(rank: u64) -> Vec<(usize, usize)> {
    let pieces = (2 * rank - 2) as usize;
    let mut seams: Vec<(usize, usize)> = (0..pieces / 2).map(|x| (2 * x, 2 * x + 1)).collect();
    for x in 1..pieces / 2 {
        let (left, right) = (2 * x - 1, 2 * x);
        seams.push((left, right));
        seams.push((left, right));
    }
    seams
}

pub fn pants_report(
    rank: u64,
    group: Option<&SchottkyGroup>,
    eps: f64,
) -> Result<PantsReport, SurfaceError> {
    if rank < 2 {
        return Err(SurfaceError::RankTooSmall { rank, min: 2 });
    }
    let num_pants = 2 * (rank - 1);
    let twist_count = 3 * rank - 2;
    let fn_length_count = 3 * rank + 2;
    let fn_twist_count = 3 * rank - 2;

    let mut pieces: Vec<PantsPiece> = (1..=num_pants)
        .map(|j| PantsPiece {
            name: format!("Y{j}"),
            boundaries: (1..=3).map(|s| format!("Y{j}.b{s}")).collect(),
        })
        .collect();
    let mut used = vec![0usize; pieces.len()];
    let gluing: Vec<GluingEdge> = gluing_pairs(rank)
        .into_iter()
        .enumerate()
        .map(|(t, (l, r))| {
            let left_boundary = pieces[l].boundaries[used[l]].clone();
            let right_boundary = pieces[r].boundaries[used[r]].clone();
            used[l] += 1;
            used[r] += 1;
            GluingEdge {
                left: pieces[l].name.clone(),
                right: pieces[r].name.clone(),
                left_boundary,
                right_boundary,
                twist: format!("beta{}", t + 1),
            }
        })
        .collect();
    let unmatched_boundaries = pieces
        .iter_mut()
        .zip(&used)
        .flat_map(|(p, &u)| p.boundaries[u..].to_vec())
        .collect();

    let mut curve_lengths = Vec::new();
    if let Some(group) = group {
        let n = group.rank();
        for i in 0..n {
            let len = group.generator(i).axis(eps)?.translation_length;
            curve_lengths.push(CurveLength {
                curve: format!("g{}", i + 1),
                length: len,
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                let product = group.generator(i).compose(group.generator(j));
                curve_lengths.push(CurveLength {
                    curve: format!("g{}g{}", i + 1, j + 1),
                    length: product.axis(eps)?.translation_length,
                });
            }
        }
    }

    let r = rank as i64;
    let flag = |name: &str, stated: i64, computed: i64, note: &str| ConsistencyFlag {
        name: name.to_string(),
        stated,
        computed,
        consistent: stated == computed,
        note: note.to_string(),
    };
    let consistency_flags = vec![
        flag(
            "fenchel_nielsen_dimension",
            6 * r - 4,
            (fn_length_count + fn_twist_count) as i64,
            "ambient dimension 6n-4 vs (3n+2) lengths + (3n-2) twists",
        ),
        flag(
            "gluing_seams_vs_twist_parameters",
            twist_count as i64,
            gluing.len() as i64,
            "twist parameters 3n-2 vs seams in the gluing graph",
        ),
        flag(
            "euler_characteristic",
            1 - r,
            -(num_pants as i64),
            "quotient 1-n vs union of 2(n-1) pants",
        ),
    ];

    Ok(PantsReport {
        rank,
        num_pants,
        twist_count,
        signature: [rank - 2, 4],
        fn_length_count,
        fn_twist_count,
        bers_bound: bers_bound(rank),
        pieces,
        gluing,
        unmatched_boundaries,
        curve_lengths,
        consistency_flags,
    })
}

/// A free side of the fundamental domain: the boundary arc between two
/// consecutive intervals, possibly through infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeSide {
    pub from: f64,
    pub to: f64,
    pub through_infinity: bool,
}

/// One boundary component of the conformal boundary: a cycle of free sides
/// closed up by the peripheral element `word`, whose axis projects to the
/// closed geodesic bounding the funnel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCycle {
    pub sides: Vec<FreeSide>,
    pub word: Word,
    pub geodesic_length: f64,
}

/// Follows free sides around the boundary: arriving at the left endpoint of
/// an interval, apply its pairing map and continue from the partner's right
/// endpoint.
pub fn boundary_cycles<P: PingPong + ?Sized>(
    group: &P,
    eps: f64,
) -> Result<Vec<BoundaryCycle>, SurfaceError> {
    let order = group.circle_order();
    let count = order.len();
    let position = |letter: Letter| {
        order
            .iter()
            .position(|(l, _)| *l == letter)
            .expect("letter")
    };
    let side = |i: usize| FreeSide {
        from: order[i].1.hi(),
        to: order[(i + 1) % count].1.lo(),
        through_infinity: i + 1 == count,
    };
    let mut visited = vec![false; count];
    let mut cycles = Vec::new();
    for start in 0..count {
        if visited[start] {
            continue;
        }
        let mut sides = Vec::new();
        let mut word = Word::empty();
        let mut current = start;
        while !visited[current] {
            visited[current] = true;
            sides.push(side(current));
            let (owner, interval) = order[(current + 1) % count];
            let pairing = owner.inverse();
            let landed = group.letter_map(pairing).apply(interval.lo());
            let partner = group.target(pairing);
            if (landed - partner.hi()).abs() > eps * partner.hi().abs().max(1.0) {
                return Err(SurfaceError::UnexpectedPairing(interval.to_string()));
            }
            word = Word::new(vec![pairing]).expect("letter").concat(&word);
            current = position(pairing);
        }
        let element = words::evaluate(&word, group);
        cycles.push(BoundaryCycle {
            sides,
            geodesic_length: element.axis(eps)?.translation_length,
            word,
        });
    }
    Ok(cycles)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndReport {
    pub stated: SurfaceTopology,
    pub boundary_cycles: Vec<BoundaryCycle>,
    pub traced_funnels: u64,
    pub traced_genus: u64,
    pub euler: i64,
    pub cusps: u64,
    pub convex_cocompact: bool,
    /// Set for rank 1, where the compact core is a single closed geodesic.
    pub core_geodesic_length: Option<f64>,
    pub consistent_with_stated: bool,
}

/// Splits the quotient into its compact core and funnels. The funnel
/// boundaries are traced from the configuration and compared against the
/// stated topology rather than forced to agree.
pub fn end_decomposition(
    group: &SchottkyGroup,
    topology: &SurfaceTopology,
    eps: f64,
) -> Result<EndReport, SurfaceError> {
    let cycles = boundary_cycles(group, eps)?;
    let traced_funnels = cycles.len() as u64;
    let euler = 1 - group.rank() as i64;
    let traced_genus = ((2 - euler - traced_funnels as i64) / 2).max(0) as u64;
    let core_geodesic_length = if group.rank() == 1 {
        Some(group.generator(0).axis(eps)?.translation_length)
    } else {
        None
    };
    Ok(EndReport {
        stated: topology.clone(),
        consistent_with_stated: traced_funnels == topology.funnels
            && traced_genus == topology.genus,
        boundary_cycles: cycles,
        traced_funnels,
        traced_genus,
        euler,
        cusps: 0,
        convex_cocompact: true,
        core_geodesic_length,
    })
}
