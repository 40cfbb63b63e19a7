use serde::{Deserialize, Serialize};

use crate::interval::Interval;
use crate::rat::Rat;

/// One affine branch `x ↦ slope·x + intercept` on a half-open source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineBranch {
    #[serde(flatten)]
    pub source: Interval,
    pub slope: Rat,
    pub intercept: Rat,
}

impl AffineBranch {
    pub fn eval(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.intercept
    }

    pub fn inverse_point(&self, y: &Rat) -> Rat {
        (y - &self.intercept) / &self.slope
    }

    pub fn is_increasing(&self) -> bool {
        self.slope.is_positive()
    }

    /// Endpoints `(lo, hi)` of the image, up to the endpoint convention of
    /// orientation-reversing branches. Not validated against `[0,1]`.
    pub fn image_bounds(&self) -> (Rat, Rat) {
        let a = self.eval(self.source.lo());
        let b = self.eval(self.source.hi());
        if self.is_increasing() {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Image of the sub-interval `[x0, x1)` of the source, as `(lo, hi)`.
    pub(crate) fn image_of(&self, x0: &Rat, x1: &Rat) -> (Rat, Rat) {
        let a = self.eval(x0);
        let b = self.eval(x1);
        if self.is_increasing() {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// The part of the source mapped into `target`. For decreasing branches
    /// the result agrees with the true preimage up to its two endpoints.
    pub fn preimage_of(&self, target: &Interval) -> Option<Interval> {
        let a = self.inverse_point(target.lo());
        let b = self.inverse_point(target.hi());
        let (lo, hi) = if self.is_increasing() { (a, b) } else { (b, a) };
        let lo = lo.max(self.source.lo().clone());
        let hi = hi.min(self.source.hi().clone());
        (lo < hi).then(|| Interval::new_unchecked(lo, hi))
    }
}
