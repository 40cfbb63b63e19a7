//! Step functions on `[0,1)` with rational breakpoints and values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rat::Rat;

/// `f(x) = values[i]` on `[breakpoints[i], breakpoints[i+1])`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawStep")]
pub struct StepFunction {
    breakpoints: Vec<Rat>,
    values: Vec<Rat>,
}

#[derive(Deserialize)]
struct RawStep {
    breakpoints: Vec<Rat>,
    values: Vec<Rat>,
}

impl TryFrom<RawStep> for StepFunction {
    type Error = Error;
    fn try_from(raw: RawStep) -> Result<StepFunction> {
        StepFunction::new(raw.breakpoints, raw.values)
    }
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Rat>, values: Vec<Rat>) -> Result<StepFunction> {
        let fail = |msg: &str| Err(Error::StepFunction(msg.to_string()));
        if breakpoints.len() < 2 {
            return fail("need at least the breakpoints 0 and 1");
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != Rat::one() {
            return fail("breakpoints must start at 0 and end at 1");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return fail("breakpoints must be strictly increasing");
        }
        if values.len() + 1 != breakpoints.len() {
            return fail("need exactly one value per piece");
        }
        Ok(StepFunction { breakpoints, values })
    }

    pub fn constant(c: Rat) -> StepFunction {
        StepFunction {
            breakpoints: vec![Rat::zero(), Rat::one()],
            values: vec![c],
        }
    }

    pub fn zero() -> StepFunction {
        StepFunction::constant(Rat::zero())
    }

    pub fn one() -> StepFunction {
        StepFunction::constant(Rat::one())
    }

    /// Characteristic function of `iv`.
    pub fn indicator(iv: &Interval) -> StepFunction {
        if iv.is_empty() {
            return StepFunction::zero();
        }
        let mut breakpoints = vec![Rat::zero()];
        let mut values = Vec::with_capacity(3);
        if iv.lo().is_positive() {
            breakpoints.push(iv.lo().clone());
            values.push(Rat::zero());
        }
        values.push(Rat::one());
        breakpoints.push(iv.hi().clone());
        if iv.hi() < &Rat::one() {
            breakpoints.push(Rat::one());
            values.push(Rat::zero());
        }
        StepFunction { breakpoints, values }
    }

    /// `1_{[0,1/2)} - 1_{[1/2,1)}`.
    pub fn rademacher() -> StepFunction {
        StepFunction {
            breakpoints: vec![Rat::zero(), Rat::new(1, 2), Rat::one()],
            values: vec![Rat::one(), Rat::int(-1)],
        }
    }

    /// Builds from pieces that are sorted, abutting and cover `[0,1)`.
    /// Empty pieces are skipped.
    pub(crate) fn from_sorted_pieces(pieces: impl IntoIterator<Item = (Rat, Rat, Rat)>) -> StepFunction {
        let mut breakpoints = vec![Rat::zero()];
        let mut values = Vec::new();
        for (lo, hi, v) in pieces {
            if lo >= hi {
                continue;
            }
            debug_assert_eq!(breakpoints.last(), Some(&lo), "pieces must abut");
            breakpoints.push(hi);
            values.push(v);
        }
        debug_assert_eq!(breakpoints.last(), Some(&Rat::one()));
        StepFunction { breakpoints, values }.canonical()
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn piece_count(&self) -> usize {
        self.values.len()
    }

    /// `(lo, hi, value)` for each piece.
    pub fn pieces(&self) -> impl Iterator<Item = (&Rat, &Rat, &Rat)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| (&w[0], &w[1], v))
    }

    /// Index of the piece containing `x`, for `x` in `[0,1)`.
    pub(crate) fn piece_index(&self, x: &Rat) -> usize {
        // first breakpoint strictly greater than x, minus one
        let pos = self.breakpoints.partition_point(|b| b <= x);
        pos.saturating_sub(1).min(self.values.len() - 1)
    }

    pub fn eval(&self, x: &Rat) -> Result<&Rat> {
        if x.is_negative() || x >= &Rat::one() {
            return Err(Error::Domain(x.clone()));
        }
        Ok(&self.values[self.piece_index(x)])
    }

    /// Merges adjacent pieces with equal values.
    pub fn canonical(&self) -> StepFunction {
        let mut breakpoints = vec![Rat::zero()];
        let mut values: Vec<Rat> = Vec::with_capacity(self.values.len());
        for (_, hi, v) in self.pieces() {
            if values.last() == Some(v) {
                *breakpoints.last_mut().unwrap() = hi.clone();
            } else {
                values.push(v.clone());
                breakpoints.push(hi.clone());
            }
        }
        StepFunction { breakpoints, values }
    }

    pub fn is_canonical(&self) -> bool {
        self.values.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rat::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    /// Walks the common refinement of both breakpoint lists, yielding
    /// `(length, f-value, g-value)` per cell.
    fn refine<'a>(&'a self, other: &'a StepFunction) -> Refinement<'a> {
        Refinement {
            f: self,
            g: other,
            i: 0,
            j: 0,
            at: Rat::zero(),
        }
    }

    fn zip_with(&self, other: &StepFunction, op: impl Fn(&Rat, &Rat) -> Rat) -> StepFunction {
        let mut breakpoints = vec![Rat::zero()];
        let mut values = Vec::new();
        for cell in self.refine(other) {
            breakpoints.push(cell.hi);
            values.push(op(cell.f, cell.g));
        }
        StepFunction { breakpoints, values }.canonical()
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rat) -> StepFunction {
        StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
        .canonical()
    }

    /// `∫ f g` over `[0,1)`.
    pub fn inner(&self, other: &StepFunction) -> Rat {
        self.refine(other)
            .filter(|c| !c.f.is_zero() && !c.g.is_zero())
            .map(|c| c.f * c.g * (c.hi - c.lo))
            .sum()
    }

    pub fn norm_sq(&self) -> Rat {
        self.pieces().map(|(lo, hi, v)| v * v * (hi - lo)).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }

    pub fn l2_dist(&self, other: &StepFunction) -> L2Distance {
        let squared = self
            .refine(other)
            .map(|c| {
                let d = c.f - c.g;
                &d * &d * (c.hi - c.lo)
            })
            .sum();
        L2Distance { squared }
    }
}

/// Inner product of two step functions.
pub fn step_inner(f: &StepFunction, g: &StepFunction) -> Rat {
    f.inner(g)
}

/// `‖f - g‖₂`, exact in squared form.
pub fn step_l2_dist(f: &StepFunction, g: &StepFunction) -> L2Distance {
    f.l2_dist(g)
}

/// An L² distance: the square is exact, the root is a float.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L2Distance {
    pub squared: Rat,
}

impl L2Distance {
    pub fn value(&self) -> f64 {
        self.squared.to_f64().sqrt()
    }
}

struct Cell<'a> {
    lo: Rat,
    hi: Rat,
    f: &'a Rat,
    g: &'a Rat,
}

struct Refinement<'a> {
    f: &'a StepFunction,
    g: &'a StepFunction,
    i: usize,
    j: usize,
    at: Rat,
}

impl<'a> Iterator for Refinement<'a> {
    type Item = Cell<'a>;

    fn next(&mut self) -> Option<Cell<'a>> {
        if self.i >= self.f.values.len() || self.j >= self.g.values.len() {
            return None;
        }
        let fh = &self.f.breakpoints[self.i + 1];
        let gh = &self.g.breakpoints[self.j + 1];
        let hi = fh.min(gh).clone();
        let cell = Cell {
            lo: std::mem::replace(&mut self.at, hi.clone()),
            hi: hi.clone(),
            f: &self.f.values[self.i],
            g: &self.g.values[self.j],
        };
        if fh == &hi {
            self.i += 1;
        }
        if gh == &hi {
            self.j += 1;
        }
        Some(cell)
    }
}

impl PartialEq for StepFunction {
    fn eq(&self, other: &StepFunction) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.breakpoints == b.breakpoints && a.values == b.values
    }
}

impl Eq for StepFunction {}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (lo, hi, v) in self.pieces() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "[{lo},{hi}):{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(a: i64, b: i64, d: i64) -> StepFunction {
        StepFunction::indicator(&Interval::new(Rat::new(a, d), Rat::new(b, d)).unwrap())
    }

    #[test]
    fn validation() {
        let r = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| Rat::new(a, b)).collect::<Vec<_>>();
        assert!(StepFunction::new(r(&[(0, 1), (1, 1)]), r(&[(2, 1)])).is_ok());
        assert!(StepFunction::new(r(&[(0, 1), (1, 2)]), r(&[(2, 1)])).is_err());
        assert!(StepFunction::new(r(&[(0, 1), (1, 2), (1, 2), (1, 1)]), r(&[(1, 1), (1, 1), (1, 1)])).is_err());
        assert!(StepFunction::new(r(&[(0, 1), (1, 1)]), vec![]).is_err());
        assert!(StepFunction::new(r(&[(0, 1)]), vec![]).is_err());
    }

    #[test]
    fn inner_examples() {
        assert_eq!(step_inner(&StepFunction::one(), &StepFunction::one()), Rat::one());
        assert_eq!(step_inner(&ind(0, 1, 2), &ind(1, 4, 4)), Rat::new(1, 4));
        let r = StepFunction::rademacher();
        assert_eq!(step_inner(&r, &r), Rat::one());
        assert_eq!(r, ind(0, 1, 2).sub(&ind(1, 2, 2)));
    }

    #[test]
    fn distance_examples() {
        let f = ind(1, 3, 8);
        assert_eq!(step_l2_dist(&f, &f).squared, Rat::zero());
        assert_eq!(step_l2_dist(&StepFunction::one(), &StepFunction::zero()).squared, Rat::one());
        let d = step_l2_dist(&ind(0, 1, 2), &ind(1, 2, 2));
        assert_eq!(d.squared, Rat::one());
        assert_eq!(d.value(), 1.0);
    }

    #[test]
    fn canonical_merges() {
        let f = ind(0, 1, 4).add(&ind(1, 2, 4));
        assert!(f.is_canonical());
        assert_eq!(f.breakpoints(), &[Rat::zero(), Rat::new(1, 2), Rat::one()]);
        assert_eq!(f, ind(0, 1, 2));
        assert!(ind(1, 3, 4).sub(&ind(1, 3, 4)).is_zero());
        assert_eq!(ind(0, 0, 4), StepFunction::zero());
        assert_eq!(ind(0, 4, 4), StepFunction::one());
    }

    #[test]
    fn eval_and_domain() {
        let r = StepFunction::rademacher();
        assert_eq!(r.eval(&Rat::new(1, 2)).unwrap(), &Rat::int(-1));
        assert_eq!(r.eval(&Rat::zero()).unwrap(), &Rat::one());
        assert!(r.eval(&Rat::one()).is_err());
        assert!(r.eval(&Rat::new(-1, 3)).is_err());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&ind(1, 2, 4)).unwrap();
        assert_eq!(s, r#"{"breakpoints":["0/1","1/4","1/2","1/1"],"values":["0/1","1/1","0/1"]}"#);
        let back: StepFunction = serde_json::from_str(r#"{"breakpoints":["0","1/4","1/2","1"],"values":["0","1","0"]}"#).unwrap();
        assert_eq!(back, ind(1, 2, 4));
        assert!(serde_json::from_str::<StepFunction>(r#"{"breakpoints":["0","1/2"],"values":["1"]}"#).is_err());
    }
}
