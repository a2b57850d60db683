//! Real Möbius maps and their orientation-reversing extensions.
//!
//! An [`ExtendedMobiusMap`] is a real 2×2 coefficient record acting on the
//! upper half-plane either as `z ↦ (az+b)/(cz+d)` (determinant `+1`) or as
//! `z ↦ (a z̄+b)/(c z̄+d)` (determinant `−1`). On the real boundary line both
//! act by the same rational function, so composition is the matrix product
//! and the orientation is the sign of the determinant.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default global tolerance for all banded comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

// Coefficients below this magnitude are treated as zero when fixing the sign.
const SIGN_ZERO: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MobiusError {
    #[error("degenerate coefficient record: determinant {0}")]
    Degenerate(f64),
    #[error("map is not hyperbolic (classified as {0})")]
    NotHyperbolic(IsometryClass),
    #[error("a fixed point lies at infinity")]
    InfiniteFixedPoint,
    #[error("boundary point {0} is a pole of the map")]
    PoleHit(f64),
    #[error("pole {pole} lies inside the closed interval [{lo}, {hi}]")]
    PoleInsideInterval { pole: f64, lo: f64, hi: f64 },
    #[error("invalid boundary interval ({0}, {1}): need finite lo < hi")]
    InvalidInterval(f64, f64),
    #[error("radius must be positive, got {0}")]
    NonpositiveRadius(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Preserving => 1,
            Orientation::Reversing => -1,
        }
    }

    fn from_determinant(det: f64) -> Self {
        if det > 0.0 {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }
}

impl Mul for Orientation {
    type Output = Orientation;

    fn mul(self, rhs: Orientation) -> Orientation {
        if self == rhs {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryClass {
    Identity,
    Hyperbolic,
    Parabolic,
    Elliptic,
    Reflection,
    GlideReflection,
}

impl fmt::Display for IsometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Hyperbolic => "hyperbolic",
            IsometryClass::Parabolic => "parabolic",
            IsometryClass::Elliptic => "elliptic",
            IsometryClass::Reflection => "reflection",
            IsometryClass::GlideReflection => "glide reflection",
        };
        f.write_str(name)
    }
}

/// Fixed-point data of a hyperbolic map or glide reflection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisData {
    pub repelling: f64,
    pub attracting: f64,
    pub translation_length: f64,
}

/// An open interval `(lo, hi)` of the real boundary line. Infinity is never
/// an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct BoundaryInterval {
    lo: f64,
    hi: f64,
}

impl BoundaryInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, MobiusError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(MobiusError::InvalidInterval(lo, hi))
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Euclidean radius of the semicircle standing on this interval.
    pub fn radius(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    /// The reflection `(−hi, −lo)` in the imaginary axis.
    pub fn mirrored(&self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn contains_point(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    /// Smallest distance from an endpoint of `inner` to the corresponding
    /// endpoint of `self`; positive iff `inner` sits strictly inside.
    pub fn containment_margin(&self, inner: &BoundaryInterval) -> f64 {
        (inner.lo - self.lo).min(self.hi - inner.hi)
    }

    /// True when `inner` lies inside `self` with both endpoint gaps above `margin`.
    pub fn strictly_contains(&self, inner: &BoundaryInterval, margin: f64) -> bool {
        self.containment_margin(inner) > margin
    }

    /// Signed gap between the two closed intervals: positive when disjoint.
    pub fn gap_to(&self, other: &BoundaryInterval) -> f64 {
        if self.hi <= other.lo {
            other.lo - self.hi
        } else if other.hi <= self.lo {
            self.lo - other.hi
        } else {
            -(self.hi.min(other.hi) - self.lo.max(other.lo))
        }
    }
}

impl TryFrom<[f64; 2]> for BoundaryInterval {
    type Error = MobiusError;

    fn try_from(value: [f64; 2]) -> Result<Self, Self::Error> {
        BoundaryInterval::new(value[0], value[1])
    }
}

impl From<BoundaryInterval> for [f64; 2] {
    fn from(value: BoundaryInterval) -> Self {
        [value.lo, value.hi]
    }
}

impl fmt::Display for BoundaryInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A normalized real coefficient record with an orientation flag.
///
/// Normalization divides by `√|det|` and flips the overall sign so that the
/// first coefficient (in the order a, b, c, d) that is not zero is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtendedMobiusMap {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    orientation: Orientation,
}

impl ExtendedMobiusMap {
    /// Builds a map from raw coefficients. The orientation is the sign of
    /// `ad − bc`.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MobiusError> {
        let det = a * d - b * c;
        if !det.is_finite() || det == 0.0 {
            return Err(MobiusError::Degenerate(det));
        }
        Ok(Self::normalized(a, b, c, d, det))
    }

    pub fn identity() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
            orientation: Orientation::Preserving,
        }
    }

    /// Reflection in the geodesic standing on `(center − radius, center + radius)`;
    /// on the boundary `x ↦ center + radius²/(x − center)`.
    pub fn reflection_in_semicircle(center: f64, radius: f64) -> Result<Self, MobiusError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(MobiusError::NonpositiveRadius(radius));
        }
        Self::new(center, radius * radius - center * center, 1.0, -center)
    }

    /// Reflection in the imaginary axis, `x ↦ −x`.
    pub fn reflection_in_imaginary_axis() -> Self {
        Self::normalized(-1.0, 0.0, 0.0, 1.0, -1.0)
    }

    /// Reflection in the geodesic joining two finite boundary points.
    pub fn reflection_in_geodesic(p: f64, q: f64) -> Result<Self, MobiusError> {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        let span = BoundaryInterval::new(lo, hi)?;
        Self::reflection_in_semicircle(span.center(), span.radius())
    }

    fn normalized(a: f64, b: f64, c: f64, d: f64, det: f64) -> Self {
        let scale = 1.0 / det.abs().sqrt();
        Self::sign_fixed(
            a * scale,
            b * scale,
            c * scale,
            d * scale,
            Orientation::from_determinant(det),
        )
    }

    /// Applies the sign convention to coefficients already scaled to
    /// `|det| = 1`. Products and inverses of normalized records stay
    /// normalized, and recomputing `ad − bc` for them would cancel badly
    /// once the entries grow along long words.
    fn sign_fixed(a: f64, b: f64, c: f64, d: f64, orientation: Orientation) -> Self {
        let mut coeffs = [a, b, c, d];
        let leading = coeffs
            .iter()
            .copied()
            .find(|x| x.abs() > SIGN_ZERO)
            .unwrap_or(0.0);
        if leading < 0.0 {
            for x in &mut coeffs {
                *x = -*x;
            }
        }
        let [a, b, c, d] = coeffs;
        Self {
            a,
            b,
            c,
            d,
            orientation,
        }
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ExtendedMobiusMap) -> ExtendedMobiusMap {
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.c * other.b + self.d * other.d;
        Self::sign_fixed(a, b, c, d, self.orientation * other.orientation)
    }

    pub fn inverse(&self) -> ExtendedMobiusMap {
        Self::sign_fixed(self.d, -self.b, -self.c, self.a, self.orientation)
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &ExtendedMobiusMap) -> ExtendedMobiusMap {
        h.compose(self).compose(&h.inverse())
    }

    /// Coefficient-wise comparison, insensitive to the overall sign.
    pub fn approx_eq(&self, other: &ExtendedMobiusMap, eps: f64) -> bool {
        if self.orientation != other.orientation {
            return false;
        }
        let x = self.coefficients();
        let y = other.coefficients();
        let same = x.iter().zip(&y).all(|(p, q)| (p - q).abs() <= eps);
        let negated = x.iter().zip(&y).all(|(p, q)| (p + q).abs() <= eps);
        same || negated
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        self.approx_eq(&Self::identity(), eps)
    }

    pub fn classify(&self, eps: f64) -> IsometryClass {
        match self.orientation {
            Orientation::Preserving => {
                if self.is_identity(eps) {
                    return IsometryClass::Identity;
                }
                let t = self.trace().abs();
                if t > 2.0 + eps {
                    IsometryClass::Hyperbolic
                } else if (t - 2.0).abs() <= eps {
                    IsometryClass::Parabolic
                } else {
                    IsometryClass::Elliptic
                }
            }
            Orientation::Reversing => {
                if self.compose(self).is_identity(eps) {
                    IsometryClass::Reflection
                } else {
                    IsometryClass::GlideReflection
                }
            }
        }
    }

    /// Evaluates the boundary action without checking for the pole.
    pub fn apply(&self, x: f64) -> f64 {
        (self.a * x + self.b) / (self.c * x + self.d)
    }

    pub fn apply_boundary(&self, x: f64, eps: f64) -> Result<f64, MobiusError> {
        let denominator = self.c * x + self.d;
        if denominator.abs() <= eps {
            return Err(MobiusError::PoleHit(x));
        }
        Ok((self.a * x + self.b) / denominator)
    }

    /// `|f′(x)| = 1/(cx+d)²` for a normalized record.
    pub fn derivative_abs(&self, x: f64) -> f64 {
        let denominator = self.c * x + self.d;
        1.0 / (denominator * denominator)
    }

    /// The boundary point sent to infinity, if finite.
    pub fn pole(&self) -> Option<f64> {
        if self.c.abs() <= SIGN_ZERO {
            None
        } else {
            Some(-self.d / self.c)
        }
    }

    /// Image of an interval whose closure avoids the pole. The map is
    /// monotone there, so the image is spanned by the endpoint images.
    pub fn image_interval(
        &self,
        interval: &BoundaryInterval,
        eps: f64,
    ) -> Result<BoundaryInterval, MobiusError> {
        if let Some(pole) = self.pole() {
            if pole >= interval.lo() - eps && pole <= interval.hi() + eps {
                return Err(MobiusError::PoleInsideInterval {
                    pole,
                    lo: interval.lo(),
                    hi: interval.hi(),
                });
            }
        }
        let x = self.apply(interval.lo());
        let y = self.apply(interval.hi());
        BoundaryInterval::new(x.min(y), x.max(y))
    }

    /// Length of the image of an interval avoiding the pole, from
    /// `|M(v) − M(u)| = |v − u| / |(cu + d)(cv + d)|`. Unlike the difference of
    /// the endpoint images this keeps full relative precision for tiny images.
    pub fn image_length(&self, interval: &BoundaryInterval) -> f64 {
        let den = (self.c * interval.lo() + self.d) * (self.c * interval.hi() + self.d);
        interval.length() / den.abs()
    }

    /// Both real roots of `cz² + (d − a)z − b = 0`.
    fn boundary_fixed_points(&self) -> Result<(f64, f64), MobiusError> {
        if self.c.abs() <= SIGN_ZERO {
            return Err(MobiusError::InfiniteFixedPoint);
        }
        let p = self.d - self.a;
        let disc = p * p + 4.0 * self.b * self.c;
        let root = disc.max(0.0).sqrt();
        // Stable form of the quadratic formula.
        let q = -0.5 * (p + if p >= 0.0 { root } else { -root });
        if q == 0.0 {
            return Err(MobiusError::InfiniteFixedPoint);
        }
        Ok((q / self.c, -self.b / q))
    }

    /// Fixed points and translation length of a hyperbolic map or a glide
    /// reflection.
    pub fn axis(&self, eps: f64) -> Result<AxisData, MobiusError> {
        let class = self.classify(eps);
        let translation_length = match class {
            IsometryClass::Hyperbolic => 2.0 * (0.5 * self.trace().abs()).acosh(),
            IsometryClass::GlideReflection => 2.0 * (0.5 * self.trace().abs()).asinh(),
            other => return Err(MobiusError::NotHyperbolic(other)),
        };
        let (u, v) = self.boundary_fixed_points()?;
        let (attracting, repelling) = if self.derivative_abs(u) < self.derivative_abs(v) {
            (u, v)
        } else {
            (v, u)
        };
        Ok(AxisData {
            repelling,
            attracting,
            translation_length,
        })
    }
}

impl Default for ExtendedMobiusMap {
    fn default() -> Self {
        Self::identity()
    }
}

impl fmt::Display for ExtendedMobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}; {}, {}]{}",
            self.a,
            self.b,
            self.c,
            self.d,
            match self.orientation {
                Orientation::Preserving => "",
                Orientation::Reversing => "*",
            }
        )
    }
}
