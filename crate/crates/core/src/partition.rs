//! Dyadic levels, resource limits and the dyadic partition of `[0,1)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::interval::Interval;

pub const DEFAULT_MAX_LEVEL: u32 = 16;
pub const DEFAULT_MAX_PIECES: usize = 1 << 20;
pub const MAX_LEVEL_ENV: &str = "KOOPMAN_FORGE_MAX_LEVEL";

/// Caps on the size of exact objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_level: u32,
    /// Upper bound on pieces produced by repeated composition.
    pub max_pieces: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_level: DEFAULT_MAX_LEVEL,
            max_pieces: DEFAULT_MAX_PIECES,
        }
    }
}

impl Limits {
    pub fn with_max_level(max_level: u32) -> Limits {
        Limits { max_level, ..Limits::default() }
    }

    pub fn level(&self, n: u32) -> Result<Level> {
        if n > self.max_level {
            return Err(Error::ResourceLimit {
                what: "level",
                requested: n as usize,
                limit: self.max_level as usize,
            });
        }
        Ok(Level(n))
    }

    pub(crate) fn check_pieces(&self, count: usize) -> Result<()> {
        if count > self.max_pieces {
            return Err(Error::ResourceLimit {
                what: "pieces",
                requested: count,
                limit: self.max_pieces,
            });
        }
        Ok(())
    }
}

/// A dyadic level `n` that has passed a resource check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(u32);

impl Level {
    /// Checked against the default limits.
    pub fn new(n: u32) -> Result<Level> {
        Limits::default().level(n)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of cells, `2^n`.
    pub fn cells(self) -> usize {
        1usize << self.0
    }

    /// All levels `0..=self`.
    pub fn up_to(self) -> impl Iterator<Item = Level> {
        (0..=self.0).map(Level)
    }

    /// `I_1, ..., I_{2^n}`.
    pub fn partition(self) -> Vec<Interval> {
        (0..self.cells()).map(|i| Interval::dyadic_index(self.0, i)).collect()
    }

    /// Zero-based index of the cell containing the dyadic point `x` or the cell
    /// whose left endpoint is `x`.
    pub(crate) fn cell_of(self, x: &crate::rat::Rat) -> usize {
        let idx = x.shl(self.0).floor();
        let idx: i64 = idx.try_into().unwrap_or(i64::MAX);
        idx.clamp(0, self.cells() as i64 - 1) as usize
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The `2^n` half-open dyadic cells of level `n`, left to right.
pub fn dyadic_partition(n: u32, limits: &Limits) -> Result<Vec<Interval>> {
    Ok(limits.level(n)?.partition())
}
