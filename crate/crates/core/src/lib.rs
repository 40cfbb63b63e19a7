//! Exact computations with measure-preserving maps of `[0,1)`.
//!
//! - [`rat`], [`interval`], [`partition`], [`step`]: exact rationals, half-open
//!   intervals, dyadic partitions and step functions.
//! - [`transform`]: invertible piecewise translations and piecewise-affine
//!   Lebesgue-preserving maps with their Koopman action.
//! - [`koopman`]: dyadic Koopman matrices, the transfer operator, range
//!   distances and a strong-operator metric.
//! - [`realize`]: first-fit realization of a doubly stochastic matrix as an
//!   invertible piecewise translation, and the approximation sequence built
//!   from it.
//!
//! Everything is exact; floats only appear in rooted distances and metric
//! sums meant for display.

pub mod decimal;
pub mod error;
pub mod interval;
pub mod koopman;
pub mod par;
pub mod partition;
pub mod rat;
pub mod realize;
pub mod step;
pub mod transform;

pub use error::{Error, Result};
pub use interval::Interval;
pub use koopman::{
    koopman_matrix, op_metric, range_distance_sq, transfer_apply, weak_defect, DoublyStochasticMatrix,
    MetricBasis, MetricReport,
};
pub use par::Exec;
pub use partition::{dyadic_partition, Level, Limits};
pub use rat::Rat;
pub use realize::{birkhoff_combination, realize_iet, Permutation};
pub use step::{step_inner, step_l2_dist, L2Distance, StepFunction};
pub use transform::{AnyMap, PiecewiseAffineMap, PiecewiseTranslation, Transformation};
