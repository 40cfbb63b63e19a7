#![allow(dead_code)]

use koopman_forge::realize::random_translation;
use koopman_forge::{AnyMap, Interval, Level, PiecewiseAffineMap, PiecewiseTranslation, Rat, StepFunction};
use rand::Rng;

pub fn lvl(n: u32) -> Level {
    Level::new(n).unwrap()
}

pub fn iv(a: i64, b: i64, d: i64) -> Interval {
    Interval::new(Rat::new(a, d), Rat::new(b, d)).unwrap()
}

pub fn ind(a: i64, b: i64, d: i64) -> StepFunction {
    StepFunction::indicator(&iv(a, b, d))
}

/// Random step function with breakpoints on the grid of level `max_level`
/// and small integer-over-small-denominator values.
pub fn random_step<R: Rng>(rng: &mut R, max_level: u32, nonnegative: bool) -> StepFunction {
    let cells = 1i64 << max_level;
    let mut cuts: Vec<i64> = (1..cells).filter(|_| rng.random_bool(0.3)).collect();
    cuts.dedup();
    let mut breakpoints = vec![Rat::zero()];
    breakpoints.extend(cuts.iter().map(|&c| Rat::new(c, cells)));
    breakpoints.push(Rat::one());
    let values = (0..breakpoints.len() - 1)
        .map(|_| {
            let lo = if nonnegative { 0 } else { -4 };
            Rat::new(rng.random_range(lo..=4), rng.random_range(1..=3))
        })
        .collect();
    StepFunction::new(breakpoints, values).unwrap()
}

pub fn random_invertible<R: Rng>(rng: &mut R) -> PiecewiseTranslation {
    match rng.random_range(0..3) {
        0 => PiecewiseTranslation::rotation(&Rat::new(rng.random_range(0..16), 16)),
        _ => {
            let n = rng.random_range(1..=3);
            let terms = rng.random_range(1..=4);
            random_translation(lvl(n), terms, rng)
        }
    }
}

/// A mix of the built-in non-invertible maps and random translations.
pub fn random_map<R: Rng>(rng: &mut R) -> AnyMap {
    match rng.random_range(0..6) {
        0 => PiecewiseAffineMap::doubling().into(),
        1 => PiecewiseAffineMap::tent().into(),
        2 => PiecewiseAffineMap::multiplication(rng.random_range(3..=4)).into(),
        _ => random_invertible(rng).into(),
    }
}

/// `f∘T` evaluated at the midpoints of a level-`fine` grid and summed.
/// For maps and functions whose data live on coarser dyadic grids this
/// computes `‖f∘T - f∘S‖²` exactly without going through `koopman_apply`.
pub fn grid_dist_sq<T, S>(t: &T, s: &S, f: &StepFunction, fine: u32) -> Rat
where
    T: koopman_forge::Transformation,
    S: koopman_forge::Transformation,
{
    let cells = 1i64 << fine;
    (0..cells)
        .map(|i| {
            let mid = Rat::new(2 * i + 1, 2 * cells);
            let a = f.eval(&t.apply(&mid).unwrap()).unwrap().clone();
            let b = f.eval(&s.apply(&mid).unwrap()).unwrap().clone();
            let d = a - b;
            &d * &d
        })
        .sum::<Rat>()
        .shr(fine)
}

/// Maps whose breakpoints and offsets all lie on the level-4 dyadic grid.
pub fn random_dyadic_map<R: Rng>(rng: &mut R) -> AnyMap {
    use koopman_forge::realize::{birkhoff_combination, Permutation};
    match rng.random_range(0..5) {
        0 => PiecewiseAffineMap::doubling().into(),
        1 => PiecewiseAffineMap::tent().into(),
        2 => PiecewiseTranslation::rotation(&Rat::new(rng.random_range(0..16), 16)).into(),
        _ => {
            let n = rng.random_range(1..=2);
            let perms: Vec<Permutation> = (0..2).map(|_| Permutation::random(1 << n, rng)).collect();
            let half = Rat::new(1, 2);
            let m = birkhoff_combination(&perms, &[half.clone(), half]).unwrap();
            koopman_forge::realize_iet(&m).unwrap().into()
        }
    }
}
