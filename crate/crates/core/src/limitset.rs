//! Nested-interval approximations of the limit set and two independent
//! Hausdorff-dimension estimators.
//!
//! The depth-`k` cell of a reduced word `ℓ₁…ℓ_k` is the image of the target
//! interval of `ℓ_k` under `ℓ₁…ℓ_{k−1}`. Cells of one depth are disjoint and
//! every cell sits strictly inside its parent, so the union of depth-`k`
//! cells decreases to the limit set.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mobius::{BoundaryInterval, ExtendedMobiusMap, MobiusError};
use crate::schottky::PingPong;
use crate::words::{self, Letter, Word, WordsError};

/// Bisection domain for the critical exponent.
pub const PRESSURE_DOMAIN: (f64, f64) = (0.001, 0.999);
pub const DEFAULT_RESOLUTION: f64 = 1e-4;
/// Markov states are reduced words of this length.
pub const DEFAULT_STATE_DEPTH: usize = 2;

const POWER_ITERATION_TOL: f64 = 1e-13;
const POWER_ITERATION_MAX: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LimitSetError {
    #[error(transparent)]
    Words(#[from] WordsError),
    #[error(transparent)]
    Mobius(#[from] MobiusError),
    #[error("cell of word {0} is not strictly inside its parent; the configuration should fail verification")]
    NestingViolation(Word),
    #[error(
        "no sign change of the pressure on [{lo}, {hi}]: spectral radii {rho_lo} and {rho_hi}"
    )]
    NoBracket {
        lo: f64,
        hi: f64,
        rho_lo: f64,
        rho_hi: f64,
    },
    #[error("{0}")]
    InvalidDepth(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub word: Word,
    /// Endpoint images, rounded. When the cell is narrower than the float
    /// spacing at its position the endpoints collapse and `hi` is the next
    /// float above `lo`.
    pub interval: BoundaryInterval,
    /// Exact-formula length, accurate even for unresolved cells.
    pub length: f64,
    pub resolved: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementLayer {
    pub depth: usize,
    pub cells: Vec<Cell>,
    pub total_length: f64,
    /// Cells whose endpoints collapsed in floating point.
    pub unresolved_cells: usize,
}

impl RefinementLayer {
    fn from_cells(depth: usize, cells: Vec<Cell>) -> Self {
        let total_length = cells.iter().map(|c| c.length).sum();
        let unresolved_cells = cells.iter().filter(|c| !c.resolved).count();
        Self {
            depth,
            cells,
            total_length,
            unresolved_cells,
        }
    }

    pub fn max_cell_length(&self) -> f64 {
        self.cells.iter().map(|c| c.length).fold(0.0, f64::max)
    }
}

struct Node {
    word: Word,
    product: ExtendedMobiusMap,
    interval: BoundaryInterval,
    length: f64,
    resolved: bool,
}

// A cell counts as resolved when its length spans at least this many units
// in the last place at its position. Narrower cells have endpoint images
// whose rounding error is comparable to their width.
const RESOLVED_ULPS: f64 = 32.0;

fn ulp(x: f64) -> f64 {
    let x = x.abs();
    x.next_up() - x
}

/// Image cell of `target` under the parent's product, checked against the
/// parent. Resolved cells must sit strictly inside it; an unresolved cell
/// only has to land in the parent widened by `eps`.
fn child_cell(
    parent: &Node,
    target: &BoundaryInterval,
    word: &Word,
    eps: f64,
) -> Result<(BoundaryInterval, f64, bool), LimitSetError> {
    let product = &parent.product;
    let length = product.image_length(target);
    let (x, y) = match product.image_interval(target, eps) {
        Ok(iv) => (iv.lo(), iv.hi()),
        Err(MobiusError::InvalidInterval(x, y)) if x.is_finite() && x == y => (x, y),
        Err(e) => return Err(e.into()),
    };
    let resolved = length > RESOLVED_ULPS * ulp(x.abs().max(y.abs()));
    if resolved {
        let interval = BoundaryInterval::new(x, y)?;
        if !parent.interval.strictly_contains(&interval, 0.0) {
            return Err(LimitSetError::NestingViolation(word.clone()));
        }
        Ok((interval, length, true))
    } else {
        let slack = eps * x.abs().max(1.0);
        let p = &parent.interval;
        if x < p.lo() - slack || y > p.hi() + slack {
            return Err(LimitSetError::NestingViolation(word.clone()));
        }
        let interval = BoundaryInterval::new(x, y.max(x.next_up()))?;
        Ok((interval, length, false))
    }
}

/// Builds layers `1..=max_depth`, handing each to `sink` together with the
/// word products.
fn build_layers<P, F>(
    group: &P,
    max_depth: usize,
    cap: u64,
    eps: f64,
    mut sink: F,
) -> Result<(), LimitSetError>
where
    P: PingPong + ?Sized,
    F: FnMut(usize, &[Node]),
{
    if max_depth == 0 {
        return Err(LimitSetError::InvalidDepth(
            "depth must be at least 1".into(),
        ));
    }
    words::check_cap(group.rank(), max_depth, cap)?;
    let alphabet: Vec<(Letter, ExtendedMobiusMap, BoundaryInterval)> =
        Letter::alphabet(group.rank())
            .into_iter()
            .map(|l| (l, group.letter_map(l), group.target(l)))
            .collect();
    let mut layer: Vec<Node> = alphabet
        .iter()
        .map(|&(l, map, target)| Node {
            word: Word::new(vec![l]).expect("single letter"),
            product: map,
            interval: target,
            length: target.length(),
            resolved: true,
        })
        .collect();
    sink(1, &layer);
    for depth in 2..=max_depth {
        let mut next = Vec::with_capacity(layer.len() * (alphabet.len() - 1).max(1));
        for node in &layer {
            for &(l, map, target) in &alphabet {
                let Some(word) = node.word.extended(l) else {
                    continue;
                };
                let (interval, length, resolved) = child_cell(node, &target, &word, eps)?;
                next.push(Node {
                    word,
                    product: node.product.compose(&map),
                    interval,
                    length,
                    resolved,
                });
            }
        }
        layer = next;
        sink(depth, &layer);
    }
    Ok(())
}

fn to_layer(depth: usize, nodes: &[Node]) -> RefinementLayer {
    RefinementLayer::from_cells(
        depth,
        nodes
            .iter()
            .map(|n| Cell {
                word: n.word.clone(),
                interval: n.interval,
                length: n.length,
                resolved: n.resolved,
            })
            .collect(),
    )
}

/// The depth-`depth` refinement layer.
pub fn refine<P: PingPong + ?Sized>(
    group: &P,
    depth: usize,
    cap: u64,
    eps: f64,
) -> Result<RefinementLayer, LimitSetError> {
    let mut out = None;
    build_layers(group, depth, cap, eps, |k, nodes| {
        if k == depth {
            out = Some(to_layer(k, nodes));
        }
    })?;
    Ok(out.expect("final layer is always produced"))
}

/// Layers `1..=max_depth`.
pub fn refine_layers<P: PingPong + ?Sized>(
    group: &P,
    max_depth: usize,
    cap: u64,
    eps: f64,
) -> Result<Vec<RefinementLayer>, LimitSetError> {
    let mut out = Vec::with_capacity(max_depth);
    build_layers(group, max_depth, cap, eps, |k, nodes| {
        out.push(to_layer(k, nodes))
    })?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub word: Word,
    pub point: f64,
    pub cell: BoundaryInterval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSetSample {
    pub depth: usize,
    pub points: Vec<SamplePoint>,
}

/// One limit point inside the cell of `word`. For a cyclically reduced word
/// this is the attracting fixed point of its evaluation. Otherwise that
/// fixed point escapes the cell, and the point used is the image of the
/// last letter's attracting fixed point, i.e. the attracting fixed point of
/// `w′ ℓ_k w′⁻¹`.
fn cell_point<P: PingPong + ?Sized>(
    group: &P,
    node: &Node,
    eps: f64,
) -> Result<f64, LimitSetError> {
    if node.word.is_cyclically_reduced() {
        Ok(node.product.axis(eps)?.attracting)
    } else {
        let last = node.word.last().expect("nonempty word");
        let fixed = group.letter_map(last).axis(eps)?.attracting;
        Ok(node.product.apply(fixed))
    }
}

pub fn sample_points<P: PingPong + ?Sized>(
    group: &P,
    depth: usize,
    cap: u64,
    eps: f64,
) -> Result<LimitSetSample, LimitSetError> {
    let mut result = None;
    build_layers(group, depth, cap, eps, |k, nodes| {
        if k == depth {
            result = Some(
                nodes
                    .iter()
                    .map(|n| {
                        Ok(SamplePoint {
                            word: n.word.clone(),
                            point: cell_point(group, n, eps)?,
                            cell: n.interval,
                        })
                    })
                    .collect::<Result<Vec<_>, LimitSetError>>(),
            );
        }
    })?;
    Ok(LimitSetSample {
        depth,
        points: result.expect("final layer is always produced")?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionMethod {
    SpectralPressure,
    BoxCounting,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxCountRow {
    pub layer: usize,
    pub epsilon: f64,
    pub cover_count: u64,
    pub log_inv_epsilon: f64,
    pub log_count: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub method: DimensionMethod,
    pub value: f64,
    /// Final bisection interval (pressure method only).
    pub bracket: Option<[f64; 2]>,
    /// Markov state depth (pressure) or deepest layer (box counting).
    pub depth: usize,
    pub table: Vec<BoxCountRow>,
}

/// Transfer matrix over Markov states, the depth-`m` cells. Letter `ℓ` acts
/// on state `w` (when `ℓ` does not cancel `w`'s first letter) by moving to the
/// state of `ℓw` truncated to length `m`, with weight `|g_ℓ′(x_w)|^s` where
/// `x_w` is the sample point of `w`'s cell.
#[derive(Debug, Clone)]
pub struct PressureOperator {
    states: usize,
    // (to, from, ln |g′(x)|)
    transitions: Vec<(usize, usize, f64)>,
}

impl PressureOperator {
    pub fn new<P: PingPong + ?Sized>(
        group: &P,
        state_depth: usize,
        cap: u64,
        eps: f64,
    ) -> Result<Self, LimitSetError> {
        let mut states: Vec<(Word, f64)> = Vec::new();
        let mut failure = None;
        build_layers(group, state_depth, cap, eps, |k, nodes| {
            if k == state_depth {
                for n in nodes {
                    match cell_point(group, n, eps) {
                        Ok(x) => states.push((n.word.clone(), x)),
                        Err(e) => {
                            failure.get_or_insert(e);
                        }
                    }
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        let index: std::collections::HashMap<&Word, usize> = states
            .iter()
            .enumerate()
            .map(|(i, (w, _))| (w, i))
            .collect();
        let mut transitions = Vec::new();
        for (from, (word, x)) in states.iter().enumerate() {
            for letter in Letter::alphabet(group.rank()) {
                if word.first().is_some_and(|f| f.cancels(letter)) {
                    continue;
                }
                let mut letters = Vec::with_capacity(state_depth);
                letters.push(letter);
                letters.extend_from_slice(&word.letters()[..state_depth - 1]);
                let next = Word::new(letters).expect("prefixing a non-cancelling letter");
                let to = index[&next];
                let weight = group.letter_map(letter).derivative_abs(*x).ln();
                transitions.push((to, from, weight));
            }
        }
        Ok(Self {
            states: states.len(),
            transitions,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// Dense row-major matrix `M(s)`.
    pub fn dense_matrix(&self, s: f64) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.states]; self.states];
        for &(to, from, w) in &self.transitions {
            m[to][from] += (s * w).exp();
        }
        m
    }

    /// Spectral radius of `M(s)` by power iteration on the positive cone.
    pub fn spectral_radius(&self, s: f64) -> f64 {
        let weights: Vec<f64> = self.transitions.iter().map(|t| (s * t.2).exp()).collect();
        let mut v = vec![1.0 / self.states as f64; self.states];
        let mut next = vec![0.0; self.states];
        let mut lambda = 0.0;
        for _ in 0..POWER_ITERATION_MAX {
            next.iter_mut().for_each(|x| *x = 0.0);
            for (&(to, from, _), w) in self.transitions.iter().zip(&weights) {
                next[to] += w * v[from];
            }
            let norm: f64 = next.iter().sum();
            let estimate = norm / v.iter().sum::<f64>();
            for (x, y) in v.iter_mut().zip(&next) {
                *x = y / norm;
            }
            if (estimate - lambda).abs() <= POWER_ITERATION_TOL * estimate {
                return estimate;
            }
            lambda = estimate;
        }
        lambda
    }
}

fn rank_one_estimate(method: DimensionMethod, depth: usize) -> DimensionEstimate {
    DimensionEstimate {
        method,
        value: 0.0,
        bracket: matches!(method, DimensionMethod::SpectralPressure).then_some([0.0, 0.0]),
        depth,
        table: Vec::new(),
    }
}

/// Critical exponent by bisection on `ρ(M(s)) = 1`. Rank 1 returns exactly 0.
pub fn estimate_dimension_pressure<P: PingPong + ?Sized>(
    group: &P,
    resolution: f64,
    state_depth: usize,
    cap: u64,
    eps: f64,
) -> Result<DimensionEstimate, LimitSetError> {
    if group.rank() == 1 {
        return Ok(rank_one_estimate(
            DimensionMethod::SpectralPressure,
            state_depth,
        ));
    }
    if !(resolution > 0.0) {
        return Err(LimitSetError::InvalidDepth(format!(
            "resolution must be positive, got {resolution}"
        )));
    }
    let operator = PressureOperator::new(group, state_depth, cap, eps)?;
    let (mut lo, mut hi) = PRESSURE_DOMAIN;
    let (rho_lo, rho_hi) = (operator.spectral_radius(lo), operator.spectral_radius(hi));
    if !(rho_lo > 1.0 && rho_hi < 1.0) {
        return Err(LimitSetError::NoBracket {
            lo,
            hi,
            rho_lo,
            rho_hi,
        });
    }
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if operator.spectral_radius(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(DimensionEstimate {
        method: DimensionMethod::SpectralPressure,
        value: 0.5 * (lo + hi),
        bracket: Some([lo, hi]),
        depth: state_depth,
        table: Vec::new(),
    })
}

/// Minimal number of closed intervals of length `epsilon` covering the
/// union of `sorted` (sorted by left endpoint). Greedy is optimal on a line.
fn cover_count(sorted: &[BoundaryInterval], epsilon: f64) -> u64 {
    let mut count = 0u64;
    let mut covered_to = f64::NEG_INFINITY;
    for iv in sorted {
        if iv.hi() <= covered_to {
            continue;
        }
        let start = iv.lo().max(covered_to);
        let pieces = ((iv.hi() - start) / epsilon).ceil().max(1.0);
        count += pieces as u64;
        covered_to = start + pieces * epsilon;
    }
    count
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Box-counting slope over layers `2..=depth`. At layer `k` the scale is the
/// largest depth-`k` cell length, and the count is the size of a minimal
/// cover of the depth-`depth` cells at that scale.
pub fn estimate_dimension_boxcount<P: PingPong + ?Sized>(
    group: &P,
    depth: usize,
    cap: u64,
    eps: f64,
) -> Result<DimensionEstimate, LimitSetError> {
    if group.rank() == 1 {
        return Ok(rank_one_estimate(DimensionMethod::BoxCounting, depth));
    }
    if depth < 3 {
        return Err(LimitSetError::InvalidDepth(format!(
            "box counting needs depth ≥ 3, got {depth}"
        )));
    }
    let layers = refine_layers(group, depth, cap, eps)?;
    let mut deepest: Vec<BoundaryInterval> =
        layers[depth - 1].cells.iter().map(|c| c.interval).collect();
    deepest.sort_by(|x, y| x.lo().total_cmp(&y.lo()));
    let table: Vec<BoxCountRow> = layers[1..]
        .iter()
        .map(|layer| {
            let epsilon = layer.max_cell_length();
            let cover = cover_count(&deepest, epsilon);
            BoxCountRow {
                layer: layer.depth,
                epsilon,
                cover_count: cover,
                log_inv_epsilon: -epsilon.ln(),
                log_count: (cover as f64).ln(),
            }
        })
        .collect();
    let xs: Vec<f64> = table.iter().map(|r| r.log_inv_epsilon).collect();
    let ys: Vec<f64> = table.iter().map(|r| r.log_count).collect();
    Ok(DimensionEstimate {
        method: DimensionMethod::BoxCounting,
        value: least_squares_slope(&xs, &ys),
        bracket: None,
        depth,
        table,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub exponent: f64,
    pub convergence_type: bool,
    pub green_function_exists: bool,
    pub dimension_at_most_half: bool,
}

/// Groups whose critical exponent is below 1 are of convergence type, which
/// in turn gives a Green function on the quotient.
pub fn convergence_type_report(estimate: &DimensionEstimate) -> ConvergenceReport {
    let convergence_type = estimate.value < 1.0;
    ConvergenceReport {
        exponent: estimate.value,
        convergence_type,
        green_function_exists: convergence_type,
        dimension_at_most_half: estimate.value <= 0.5,
    }
}

/// Largest ratio `total_length(k) / total_length(k−1)` across the layers.
pub fn contraction_ratio(layers: &[RefinementLayer]) -> Option<f64> {
    layers
        .windows(2)
        .map(|p| p[1].total_length / p[0].total_length)
        .reduce(f64::max)
}
