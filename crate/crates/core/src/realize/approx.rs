//! Approximating a non-invertible map by the realizations of its own
//! Koopman matrices at increasing levels.

use crate::error::Result;
use crate::koopman::{koopman_matrix, op_metric_with, DoublyStochasticMatrix, MetricBasis, MetricReport};
use crate::par::Exec;
use crate::partition::Level;
use crate::rat::Rat;
use crate::transform::{PiecewiseTranslation, Transformation};

#[derive(Clone, Debug)]
pub struct ApproxRow {
    pub n: u32,
    pub map: PiecewiseTranslation,
    /// `weak_defect(T_n, S, m)` for `m = 1..=n`.
    pub weak_defects: Vec<Rat>,
    pub metric: MetricReport,
}

#[derive(Clone, Debug)]
pub struct MatrixApproxRow {
    pub n: u32,
    pub map: PiecewiseTranslation,
    /// Entrywise defect against the target coarsened to `m = 1..=n`.
    pub weak_defects: Vec<Rat>,
}

/// `T_n = realize(K_S(n))` for `n = 1..=n_max`, with weak defects and the
/// metric distance to `target`.
pub fn approximation_sequence<S: Transformation + ?Sized>(
    target: &S,
    n_max: Level,
    basis: &MetricBasis,
) -> Result<Vec<ApproxRow>> {
    approximation_sequence_with(target, n_max, basis, Exec::default())
}

/// Rows are computed independently; with [`Exec::Parallel`] the levels run
/// concurrently while each row's metric runs sequentially.
pub fn approximation_sequence_with<S: Transformation + ?Sized>(
    target: &S,
    n_max: Level,
    basis: &MetricBasis,
    exec: Exec,
) -> Result<Vec<ApproxRow>> {
    let levels: Vec<Level> = n_max.up_to().skip(1).collect();
    let inner = if exec.is_parallel() { Exec::Sequential } else { exec };
    exec.map(levels.len(), |i| {
        let level = levels[i];
        let map = super::realize_iet(&koopman_matrix(target, level))?;
        let weak_defects = level
            .up_to()
            .skip(1)
            .map(|m| {
                koopman_matrix(&map, m)
                    .max_abs_diff(&koopman_matrix(target, m))
                    .expect("same level")
            })
            .collect();
        let metric = op_metric_with(&map, target, basis, inner);
        Ok(ApproxRow {
            n: level.get(),
            map,
            weak_defects,
            metric,
        })
    })
    .into_iter()
    .collect()
}

/// For a bare matrix target only the weak defects are defined.
pub fn approximate_matrix(target: &DoublyStochasticMatrix) -> Result<Vec<MatrixApproxRow>> {
    let coarse: Vec<DoublyStochasticMatrix> = (0..=target.level())
        .map(|m| target.coarsen(m))
        .collect::<Result<_>>()?;
    (1..=target.level())
        .map(|n| {
            let map = super::realize_iet(&coarse[n as usize])?;
            let weak_defects = (1..=n)
                .map(|m| {
                    koopman_matrix(&map, Level::new(m)?)
                        .max_abs_diff(&coarse[m as usize])
                })
                .collect::<Result<_>>()?;
            Ok(MatrixApproxRow { n, map, weak_defects })
        })
        .collect()
}
