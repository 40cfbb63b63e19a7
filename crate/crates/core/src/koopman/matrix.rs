//! Dyadic Koopman block matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::partition::Level;
use crate::rat::Rat;
use crate::transform::Transformation;

/// A `2^n × 2^n` doubly stochastic matrix of exact rationals.
///
/// Entry `[j][k]` is the normalized mass `2^n · μ(I_j ∩ T⁻¹ I_k)` flowing
/// from cell `j` to cell `k`; the raw block mass is `entries[j][k] / 2^n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct DoublyStochasticMatrix {
    level: u32,
    entries: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    n: u32,
    entries: Vec<Vec<Rat>>,
}

impl TryFrom<MatrixJson> for DoublyStochasticMatrix {
    type Error = Error;
    fn try_from(json: MatrixJson) -> Result<DoublyStochasticMatrix> {
        let m = DoublyStochasticMatrix::new(json.entries)?;
        if m.level != json.n {
            return Err(Error::Matrix(format!(
                "declared n = {} but matrix is {}×{}",
                json.n,
                m.size(),
                m.size()
            )));
        }
        Ok(m)
    }
}

impl From<DoublyStochasticMatrix> for MatrixJson {
    fn from(m: DoublyStochasticMatrix) -> MatrixJson {
        MatrixJson { n: m.level, entries: m.entries }
    }
}

impl DoublyStochasticMatrix {
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<DoublyStochasticMatrix> {
        let fail = |msg: String| Err(Error::Matrix(msg));
        let size = entries.len();
        if size == 0 || !size.is_power_of_two() {
            return fail(format!("matrix size must be 2^n, got {size} rows"));
        }
        if let Some((j, row)) = entries.iter().enumerate().find(|(_, r)| r.len() != size) {
            return fail(format!("row {} has {} entries, expected {size}", j + 1, row.len()));
        }
        for (j, row) in entries.iter().enumerate() {
            if let Some(k) = row.iter().position(Rat::is_negative) {
                return fail(format!("negative entry at ({}, {})", j + 1, k + 1));
            }
            let sum: Rat = row.iter().sum();
            if sum != Rat::one() {
                return fail(format!("row {} sums to {sum}", j + 1));
            }
        }
        for k in 0..size {
            let sum: Rat = entries.iter().map(|r| &r[k]).sum();
            if sum != Rat::one() {
                return fail(format!("column {} sums to {sum}", k + 1));
            }
        }
        Ok(DoublyStochasticMatrix {
            level: size.trailing_zeros(),
            entries,
        })
    }

    /// Caller guarantees the invariants.
    pub(crate) fn new_unchecked(level: u32, entries: Vec<Vec<Rat>>) -> DoublyStochasticMatrix {
        debug_assert!(DoublyStochasticMatrix::new(entries.clone()).is_ok());
        DoublyStochasticMatrix { level, entries }
    }

    pub fn identity(level: Level) -> DoublyStochasticMatrix {
        let size = level.cells();
        let entries = (0..size)
            .map(|j| (0..size).map(|k| if j == k { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        DoublyStochasticMatrix { level: level.get(), entries }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn get(&self, j: usize, k: usize) -> &Rat {
        &self.entries[j][k]
    }

    /// Unnormalized block mass `a_jk = entries[j][k] / 2^n`.
    pub fn block_mass(&self, j: usize, k: usize) -> Rat {
        self.entries[j][k].shr(self.level)
    }

    pub fn transpose(&self) -> DoublyStochasticMatrix {
        let size = self.size();
        let entries = (0..size)
            .map(|j| (0..size).map(|k| self.entries[k][j].clone()).collect())
            .collect();
        DoublyStochasticMatrix { level: self.level, entries }
    }

    /// The matrix of the same flow on the coarser partition of level `m`.
    pub fn coarsen(&self, m: u32) -> Result<DoublyStochasticMatrix> {
        if m > self.level {
            return Err(Error::Matrix(format!(
                "cannot coarsen level {} to finer level {m}",
                self.level
            )));
        }
        let shift = self.level - m;
        let block = 1usize << shift;
        let size = 1usize << m;
        let entries = (0..size)
            .map(|jj| {
                (0..size)
                    .map(|kk| {
                        let mut sum = Rat::zero();
                        for j in jj * block..(jj + 1) * block {
                            for k in kk * block..(kk + 1) * block {
                                sum += &self.entries[j][k];
                            }
                        }
                        sum.shr(shift)
                    })
                    .collect()
            })
            .collect();
        Ok(DoublyStochasticMatrix { level: m, entries })
    }

    /// Largest entrywise `|self - other|`.
    pub fn max_abs_diff(&self, other: &DoublyStochasticMatrix) -> Result<Rat> {
        if self.level != other.level {
            return Err(Error::Matrix(format!(
                "level mismatch: {} vs {}",
                self.level, other.level
            )));
        }
        Ok(self
            .entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Rat::zero))
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<Rat> {
        (0..self.size())
            .map(|k| self.entries.iter().map(|r| &r[k]).sum())
            .collect()
    }

    /// Aligned text table.
    pub fn to_table(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(Rat::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for DoublyStochasticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DoublyStochasticMatrix(n = {})", self.level)?;
        f.write_str(&self.to_table())
    }
}

/// Normalized cell-to-cell mass matrix of `map` at `level`, using the
/// default execution mode.
pub fn koopman_matrix<T: Transformation + ?Sized>(map: &T, level: Level) -> DoublyStochasticMatrix {
    koopman_matrix_with(map, level, Exec::default())
}

/// Rows are independent; each row walks only the branches meeting its cell.
pub fn koopman_matrix_with<T: Transformation + ?Sized>(
    map: &T,
    level: Level,
    exec: Exec,
) -> DoublyStochasticMatrix {
    let branches = map.branches();
    let branches = &*branches;
    let n = level.get();
    let size = level.cells();
    let entries = exec.map(size, |j| {
        let cell = crate::interval::Interval::dyadic_index(n, j);
        let mut row = vec![Rat::zero(); size];
        let start = branches
            .partition_point(|b| b.source.hi() <= cell.lo());
        for b in branches[start..].iter().take_while(|b| b.source.lo() < cell.hi()) {
            let Some(sub) = b.source.intersect(&cell) else { continue };
            let (ylo, yhi) = b.image_of(sub.lo(), sub.hi());
            let weight = b.slope.abs().recip();
            let mut k = level.cell_of(&ylo);
            while k < size {
                let target = crate::interval::Interval::dyadic_index(n, k);
                if target.lo() >= &yhi {
                    break;
                }
                let lo = (&ylo).max(target.lo());
                let hi = (&yhi).min(target.hi());
                if lo < hi {
                    row[k] += (hi - lo) * &weight;
                }
                k += 1;
            }
        }
        row.into_iter().map(|v| v.shl(n)).collect()
    });
    DoublyStochasticMatrix::new_unchecked(n, entries)
}

/// `max_{j,k} |K_T[j][k] - K_S[j][k]|` at `level`; zero iff `T` and `S`
/// agree weakly on all dyadic functions of that degree.
pub fn weak_defect<T, S>(t: &T, s: &S, level: Level) -> Rat
where
    T: Transformation + ?Sized,
    S: Transformation + ?Sized,
{
    koopman_matrix(t, level)
        .max_abs_diff(&koopman_matrix(s, level))
        .expect("same level")
}
