//! Measure-preserving transformations of `[0,1)` and their Koopman action.

mod affine;
mod branch;
mod translation;

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

pub use affine::PiecewiseAffineMap;
pub use branch::AffineBranch;
pub use translation::{Piece, PiecewiseTranslation};

use crate::error::{Error, Result};
use crate::interval::{merge_intervals, Interval};
use crate::rat::Rat;
use crate::step::StepFunction;

/// A Lebesgue-preserving map of `[0,1)` described by affine branches whose
/// sources are sorted and tile `[0,1)`.
pub trait Transformation: Sync {
    fn branches(&self) -> Cow<'_, [AffineBranch]>;

    /// `Some` when the map is a piecewise translation, hence invertible.
    fn as_translation(&self) -> Option<Cow<'_, PiecewiseTranslation>> {
        None
    }

    fn apply(&self, x: &Rat) -> Result<Rat> {
        apply(self, x)
    }

    fn preimage(&self, target: &Interval) -> Vec<Interval> {
        preimage(self, target)
    }

    fn koopman_apply(&self, f: &StepFunction) -> StepFunction {
        koopman_apply(self, f)
    }
}

impl Transformation for PiecewiseTranslation {
    fn branches(&self) -> Cow<'_, [AffineBranch]> {
        Cow::Owned(self.as_branches())
    }

    fn as_translation(&self) -> Option<Cow<'_, PiecewiseTranslation>> {
        Some(Cow::Borrowed(self))
    }

    fn apply(&self, x: &Rat) -> Result<Rat> {
        check_domain(x)?;
        Ok(self.apply_unchecked(x))
    }
}

impl Transformation for PiecewiseAffineMap {
    fn branches(&self) -> Cow<'_, [AffineBranch]> {
        Cow::Borrowed(PiecewiseAffineMap::branches(self))
    }
}

/// Either kind of map; the JSON form is distinguished by its top-level key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyMap {
    Translation(PiecewiseTranslation),
    Affine(PiecewiseAffineMap),
}

impl AnyMap {
    pub fn piece_count(&self) -> usize {
        match self {
            AnyMap::Translation(t) => t.piece_count(),
            AnyMap::Affine(a) => a.branches().len(),
        }
    }

    pub fn from_json(json: &str) -> Result<AnyMap> {
        let value: serde_json::Value =
            serde_json::from_str(json).map_err(|e| Error::Map(e.to_string()))?;
        let result = if value.get("pieces").is_some() {
            serde_json::from_value(value).map(AnyMap::Translation)
        } else if value.get("branches").is_some() {
            serde_json::from_value(value).map(AnyMap::Affine)
        } else {
            return Err(Error::Map("expected a \"pieces\" or \"branches\" key".into()));
        };
        result.map_err(|e| Error::Map(e.to_string()))
    }
}

impl Transformation for AnyMap {
    fn branches(&self) -> Cow<'_, [AffineBranch]> {
        match self {
            AnyMap::Translation(t) => t.branches(),
            AnyMap::Affine(a) => Transformation::branches(a),
        }
    }

    fn as_translation(&self) -> Option<Cow<'_, PiecewiseTranslation>> {
        match self {
            AnyMap::Translation(t) => Some(Cow::Borrowed(t)),
            AnyMap::Affine(a) => a.as_translation().map(Cow::Owned),
        }
    }

    fn apply(&self, x: &Rat) -> Result<Rat> {
        match self {
            AnyMap::Translation(t) => t.apply(x),
            AnyMap::Affine(a) => a.apply(x),
        }
    }
}

impl From<PiecewiseTranslation> for AnyMap {
    fn from(t: PiecewiseTranslation) -> AnyMap {
        AnyMap::Translation(t)
    }
}

impl From<PiecewiseAffineMap> for AnyMap {
    fn from(a: PiecewiseAffineMap) -> AnyMap {
        AnyMap::Affine(a)
    }
}

fn check_domain(x: &Rat) -> Result<()> {
    if x.is_negative() || x >= &Rat::one() {
        return Err(Error::Domain(x.clone()));
    }
    Ok(())
}

fn branch_index(branches: &[AffineBranch], x: &Rat) -> usize {
    branches
        .partition_point(|b| b.source.lo() <= x)
        .saturating_sub(1)
}

/// Image of `x`. Orientation-reversing branches can hit 1 at their left
/// endpoint; that single point is sent to 0 (mod 1).
pub fn apply<T: Transformation + ?Sized>(map: &T, x: &Rat) -> Result<Rat> {
    check_domain(x)?;
    let branches = map.branches();
    let y = branches[branch_index(&branches, x)].eval(x);
    Ok(if y == Rat::one() { Rat::zero() } else { y })
}

/// `T⁻¹(J)` as sorted disjoint intervals. Exact up to finitely many
/// endpoints, so the total length equals `length(J)`.
pub fn preimage<T: Transformation + ?Sized>(map: &T, target: &Interval) -> Vec<Interval> {
    let pieces = map
        .branches()
        .iter()
        .filter_map(|b| b.preimage_of(target))
        .collect();
    let out = merge_intervals(pieces);
    debug_assert_eq!(out.iter().map(Interval::length).sum::<Rat>(), target.length());
    out
}

/// `f ∘ T`. Values are taken at piece midpoints, which is exact as an
/// element of L² and exact pointwise for increasing branches.
pub fn koopman_apply<T: Transformation + ?Sized>(map: &T, f: &StepFunction) -> StepFunction {
    let branches = map.branches();
    let bps = f.breakpoints();
    let mut pieces: Vec<(Rat, Rat, Rat)> = Vec::with_capacity(branches.len() + bps.len());
    for b in branches.iter() {
        let (ilo, ihi) = b.image_bounds();
        // breakpoints of f strictly inside the image
        let first = bps.partition_point(|y| y <= &ilo);
        let last = bps.partition_point(|y| y < &ihi);
        let mut cuts: Vec<Rat> = bps[first..last.max(first)]
            .iter()
            .map(|y| b.inverse_point(y))
            .collect();
        if !b.is_increasing() {
            cuts.reverse();
        }
        let mut lo = b.source.lo().clone();
        for hi in cuts.into_iter().chain(std::iter::once(b.source.hi().clone())) {
            let mid = (&lo + &hi) / Rat::int(2);
            let v = f.values()[f.piece_index(&b.eval(&mid))].clone();
            pieces.push((lo, hi.clone(), v));
            lo = hi;
        }
    }
    StepFunction::from_sorted_pieces(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64, d: i64) -> Interval {
        Interval::new(Rat::new(a, d), Rat::new(b, d)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let x = Rat::new(1, 3);
        assert_eq!(PiecewiseTranslation::identity().apply(&x).unwrap(), x);
        assert_eq!(PiecewiseAffineMap::identity().apply(&x).unwrap(), x);
        assert_eq!(
            PiecewiseAffineMap::doubling().apply(&Rat::new(3, 8)).unwrap(),
            Rat::new(3, 4)
        );
        assert_eq!(
            PiecewiseTranslation::half_swap().apply(&Rat::new(1, 4)).unwrap(),
            Rat::new(3, 4)
        );
        assert_eq!(PiecewiseAffineMap::tent().apply(&Rat::new(3, 4)).unwrap(), Rat::new(1, 2));
        assert_eq!(PiecewiseAffineMap::tent().apply(&Rat::new(1, 2)).unwrap(), Rat::zero());
        assert!(PiecewiseAffineMap::doubling().apply(&Rat::one()).is_err());
        assert!(PiecewiseTranslation::identity().apply(&Rat::new(-1, 2)).is_err());
    }

    #[test]
    fn preimage_examples() {
        let d = PiecewiseAffineMap::doubling();
        assert_eq!(d.preimage(&iv(0, 1, 2)), vec![iv(0, 1, 4), iv(2, 3, 4)]);
        assert_eq!(PiecewiseTranslation::identity().preimage(&iv(1, 2, 4)), vec![iv(1, 2, 4)]);
        assert_eq!(PiecewiseTranslation::half_swap().preimage(&iv(0, 1, 2)), vec![iv(1, 2, 2)]);
        // tent: 2x ∈ [0,1/2) or 2 - 2x ∈ [0,1/2)
        assert_eq!(PiecewiseAffineMap::tent().preimage(&iv(0, 1, 2)), vec![iv(0, 1, 4), iv(3, 4, 4)]);
    }

    #[test]
    fn koopman_examples() {
        let f = StepFunction::indicator(&iv(0, 1, 2));
        assert_eq!(PiecewiseTranslation::identity().koopman_apply(&f), f);
        let expected = StepFunction::indicator(&iv(0, 1, 4)).add(&StepFunction::indicator(&iv(2, 3, 4)));
        assert_eq!(PiecewiseAffineMap::doubling().koopman_apply(&f), expected);
        assert_eq!(
            PiecewiseTranslation::half_swap().koopman_apply(&f),
            StepFunction::indicator(&iv(1, 2, 2))
        );
        // tent reverses the second half
        let g = StepFunction::indicator(&iv(0, 1, 4));
        let expected = StepFunction::indicator(&iv(0, 1, 8)).add(&StepFunction::indicator(&iv(7, 8, 8)));
        assert_eq!(PiecewiseAffineMap::tent().koopman_apply(&g), expected);
    }

    #[test]
    fn any_map_json_dispatch() {
        let t = AnyMap::from_json(&serde_json::to_string(&PiecewiseTranslation::half_swap()).unwrap()).unwrap();
        assert!(matches!(t, AnyMap::Translation(_)));
        let a = AnyMap::from_json(&serde_json::to_string(&PiecewiseAffineMap::doubling()).unwrap()).unwrap();
        assert!(matches!(a, AnyMap::Affine(_)));
        assert!(AnyMap::from_json("{}").is_err());
        assert!(AnyMap::from_json(r#"{"pieces":[]}"#).is_err());
    }
}
