//! Construction and analysis of rank-n Fuchsian Schottky groups.
//!
//! - [`mobius`]: real Möbius maps, reflections, classification and axes.
//! - [`schottky`]: symmetric semicircle configurations, the generated
//!   groups, ping-pong verification and class membership.
//! - [`words`]: reduced-word enumeration and evaluation.
//! - [`limitset`]: refinement layers of the Cantor limit set and two
//!   dimension estimators.
//! - [`surface`]: quotient topology, funnel counts, pants decompositions
//!   and collars.

pub mod limitset;
pub mod mobius;
pub mod schottky;
pub mod surface;
pub mod words;

pub use limitset::{DimensionEstimate, RefinementLayer};
pub use mobius::{
    BoundaryInterval, ExtendedMobiusMap, IsometryClass, Orientation, DEFAULT_TOLERANCE,
};
pub use schottky::{PingPong, SchottkyConfig, SchottkyGroup};
pub use words::{GeneratorSet, Letter, Word, DEFAULT_WORD_CAP};
