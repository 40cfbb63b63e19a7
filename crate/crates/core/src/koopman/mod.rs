//! Operator-theoretic layer: Koopman block matrices, the transfer operator,
//! range distances and the strong-operator metric.

mod matrix;
mod metric;
mod operators;

pub use matrix::{koopman_matrix, koopman_matrix_with, weak_defect, DoublyStochasticMatrix};
pub use metric::{op_metric, op_metric_with, MetricBasis, MetricReport, MetricTerm, DEFAULT_BASIS_LEVEL};
pub use operators::{range_distance_sq, transfer_apply};
