//! Convex combinations of permutation matrices, used to generate test
//! matrices.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::koopman::DoublyStochasticMatrix;
use crate::partition::Level;
use crate::rat::Rat;
use crate::transform::PiecewiseTranslation;

/// A permutation of `{0, ..., size-1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Permutation(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// From images in `{1, ..., size}`.
    pub fn from_one_based(images: &[usize]) -> Result<Permutation> {
        if images.contains(&0) {
            return Err(Error::Permutation(format!("{images:?} is not one-based")));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(size: usize) -> Permutation {
        Permutation((0..size).collect())
    }

    pub fn random<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Permutation {
        let mut images: Vec<usize> = (0..size).collect();
        images.shuffle(rng);
        Permutation(images)
    }

    /// Every permutation of `size` elements, in lexicographic order.
    pub fn all(size: usize) -> Vec<Permutation> {
        fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    go(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::with_capacity(size), &mut vec![false; size], &mut out);
        out
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn matrix(&self) -> Result<DoublyStochasticMatrix> {
        birkhoff_combination(std::slice::from_ref(self), &[Rat::one()])
    }
}

/// `Σ weight_i · P_{σ_i}`.
pub fn birkhoff_combination(perms: &[Permutation], weights: &[Rat]) -> Result<DoublyStochasticMatrix> {
    if perms.len() != weights.len() {
        return Err(Error::Matrix(format!(
            "{} permutations but {} weights",
            perms.len(),
            weights.len()
        )));
    }
    let sum: Rat = weights.iter().sum();
    if sum != Rat::one() || weights.iter().any(Rat::is_negative) {
        return Err(Error::WeightSum(sum));
    }
    let size = perms[0].size();
    if !size.is_power_of_two() {
        return Err(Error::Matrix(format!("matrix size must be 2^n, got {size}")));
    }
    if perms.iter().any(|p| p.size() != size) {
        return Err(Error::Permutation("permutations differ in size".into()));
    }
    let mut entries = vec![vec![Rat::zero(); size]; size];
    for (p, w) in perms.iter().zip(weights) {
        for (j, row) in entries.iter_mut().enumerate() {
            row[p.image(j)] += w;
        }
    }
    Ok(DoublyStochasticMatrix::new_unchecked(size.trailing_zeros(), entries))
}

/// A random convex combination of `terms` random permutations at `level`,
/// with small positive integer weights normalized to sum 1.
pub fn random_birkhoff<R: Rng + ?Sized>(level: Level, terms: usize, rng: &mut R) -> DoublyStochasticMatrix {
    let terms = terms.max(1);
    let perms: Vec<Permutation> = (0..terms).map(|_| Permutation::random(level.cells(), rng)).collect();
    let raw: Vec<i64> = (0..terms).map(|_| rng.random_range(1..=12)).collect();
    let total: i64 = raw.iter().sum();
    let weights: Vec<Rat> = raw.iter().map(|&w| Rat::new(w, total)).collect();
    birkhoff_combination(&perms, &weights).expect("weights sum to 1")
}

/// The realization of a random Birkhoff combination.
pub fn random_translation<R: Rng + ?Sized>(level: Level, terms: usize, rng: &mut R) -> PiecewiseTranslation {
    super::realize_iet(&random_birkhoff(level, terms, rng)).expect("valid matrix")
}
