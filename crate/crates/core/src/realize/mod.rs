//! Invertible piecewise translations realizing doubly stochastic matrices.
//!
//! For a level-`n` matrix `M`, each cell `I_j` is cut left to right into
//! pieces of length `M[j][k] / 2^n`, `k = 1..2^n`. The piece for target `k`
//! is translated to the leftmost uncovered point of `I_k`. Cells are
//! processed in order, so the schedule is deterministic.

mod approx;
mod birkhoff;

pub use approx::{approximate_matrix, approximation_sequence, approximation_sequence_with, ApproxRow, MatrixApproxRow};
pub use birkhoff::{birkhoff_combination, random_birkhoff, random_translation, Permutation};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::koopman::DoublyStochasticMatrix;
use crate::partition::Limits;
use crate::rat::Rat;
use crate::transform::{Piece, PiecewiseTranslation};

/// How much of each target cell has been covered so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementState {
    level: u32,
    fill: Vec<Rat>,
}

impl PlacementState {
    fn new(level: u32) -> PlacementState {
        PlacementState {
            level,
            fill: vec![Rat::zero(); 1 << level],
        }
    }

    pub fn fill(&self) -> &[Rat] {
        &self.fill
    }

    /// Every target cell is exactly covered.
    pub fn is_complete(&self) -> bool {
        let width = Rat::dyadic(self.level);
        self.fill.iter().all(|f| f == &width)
    }

    /// Reserves `length` at the left end of the uncovered part of cell `k`
    /// and returns where it starts.
    fn place(&mut self, k: usize, length: &Rat) -> Rat {
        let start = Rat::int(k as i64).shr(self.level) + &self.fill[k];
        self.fill[k] += length;
        debug_assert!(self.fill[k] <= Rat::dyadic(self.level));
        start
    }
}

/// A realization together with its final placement state.
#[derive(Clone, Debug)]
pub struct Realization {
    pub map: PiecewiseTranslation,
    pub placement: PlacementState,
    /// Pieces before merging equal offsets.
    pub raw_pieces: usize,
}

pub fn realize_iet(matrix: &DoublyStochasticMatrix) -> Result<PiecewiseTranslation> {
    realize_traced(matrix, &Limits::default()).map(|r| r.map)
}

pub fn realize_iet_with_limits(matrix: &DoublyStochasticMatrix, limits: &Limits) -> Result<PiecewiseTranslation> {
    realize_traced(matrix, limits).map(|r| r.map)
}

pub fn realize_traced(matrix: &DoublyStochasticMatrix, limits: &Limits) -> Result<Realization> {
    let level = limits.level(matrix.level())?;
    // the type guarantees stochasticity unless it came from a bad path
    let matrix = DoublyStochasticMatrix::new(matrix.entries().to_vec())?;
    let n = level.get();
    let size = level.cells();

    let mut placement = PlacementState::new(n);
    let mut pieces = Vec::new();
    for j in 0..size {
        let mut cursor = Rat::int(j as i64).shr(n);
        for k in 0..size {
            let length = matrix.block_mass(j, k);
            if length.is_zero() {
                continue;
            }
            let target = placement.place(k, &length);
            let end = &cursor + &length;
            let offset = &target - &cursor;
            pieces.push(Piece::new(Interval::new_unchecked(cursor, end.clone()), offset));
            cursor = end;
        }
    }
    if !placement.is_complete() {
        return Err(Error::Matrix("placement left target cells uncovered".into()));
    }
    let raw_pieces = pieces.len();
    let map = PiecewiseTranslation::from_pieces_unchecked(pieces);
    Ok(Realization { map, placement, raw_pieces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koopman::koopman_matrix;
    use crate::partition::Level;

    fn m(rows: &[&[(i64, i64)]]) -> DoublyStochasticMatrix {
        DoublyStochasticMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| Rat::new(a, b)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn piece(a: i64, b: i64, d: i64, off: Rat) -> Piece {
        Piece::new(Interval::new(Rat::new(a, d), Rat::new(b, d)).unwrap(), off)
    }

    #[test]
    fn identity_realizes_identity() {
        for n in 0..=4 {
            let id = DoublyStochasticMatrix::identity(Level::new(n).unwrap());
            assert!(realize_iet(&id).unwrap().is_identity());
        }
    }

    #[test]
    fn swap_matrix() {
        let t = realize_iet(&m(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]])).unwrap();
        assert_eq!(t, PiecewiseTranslation::half_swap());
    }

    #[test]
    fn uniform_two_by_two() {
        let r = realize_traced(&m(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]), &Limits::default()).unwrap();
        assert_eq!(r.raw_pieces, 4);
        assert_eq!(
            r.map.pieces(),
            &[
                piece(0, 1, 4, Rat::zero()),
                piece(1, 2, 4, Rat::new(1, 4)),
                piece(2, 3, 4, Rat::new(-1, 4)),
                piece(3, 4, 4, Rat::zero()),
            ]
        );
        assert!(r.placement.is_complete());
        assert_eq!(r.map.compose(&r.map.invert()), PiecewiseTranslation::identity());
    }

    #[test]
    fn round_trip_small() {
        let third = m(&[
            &[(1, 3), (2, 3), (0, 1), (0, 1)],
            &[(2, 3), (1, 6), (1, 6), (0, 1)],
            &[(0, 1), (1, 6), (1, 3), (1, 2)],
            &[(0, 1), (0, 1), (1, 2), (1, 2)],
        ]);
        let t = realize_iet(&third).unwrap();
        t.verify().unwrap();
        assert!(t.piece_count() <= 16);
        assert_eq!(koopman_matrix(&t, Level::new(2).unwrap()), third);
    }

    #[test]
    fn level_limit() {
        let id = DoublyStochasticMatrix::identity(Level::new(3).unwrap());
        let err = realize_iet_with_limits(&id, &Limits::with_max_level(2)).unwrap_err();
        assert!(err.is_resource_limit());
    }
}
