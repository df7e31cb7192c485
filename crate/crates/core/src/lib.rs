//! Flat-foldability of orthogonal crease patterns under simple folds.
//!
//! * [`characterize`]: linear-time decision and fold sequences for fully
//!   assigned 1D patterns.
//! * [`mixed_assign`]: completing a partially assigned 1D pattern.
//! * [`all_layers`]: 1D decisions when every fold takes all layers.
//! * [`rect`]: one-layer decisions on rectangular paper.
//! * [`oracle`]: exhaustive fold search, the ground truth for the above.
//! * [`gadgets`]: hardness-reduction instances.
//!
//! All geometry is exact ([`Rational`]).

pub mod all_layers;
pub mod characterize;
pub mod envelope;
pub mod error;
pub mod fold_export;
pub mod formats;
pub mod gadgets;
pub mod mixed_assign;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod rect;

pub use error::{Error, Result};
pub use model::{Assignment, Crease, CreasePattern1D, Interval};
pub use rational::Rational;
