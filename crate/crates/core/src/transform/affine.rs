//! Piecewise-affine Lebesgue-preserving maps, possibly non-invertible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rat::Rat;
use crate::transform::{AffineBranch, PiecewiseTranslation};

/// A map of `[0,1)` given by affine branches on a partition.
///
/// Construction checks that the branch images stay in `[0,1]` and that
/// the image density `Σ 1/|slope|` over branches covering a point equals 1
/// almost everywhere, which is exactly Lebesgue-measure preservation for
/// this class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AffineJson", into = "AffineJson")]
pub struct PiecewiseAffineMap {
    branches: Vec<AffineBranch>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AffineJson {
    branches: Vec<AffineBranch>,
}

impl TryFrom<AffineJson> for PiecewiseAffineMap {
    type Error = Error;
    fn try_from(json: AffineJson) -> Result<PiecewiseAffineMap> {
        PiecewiseAffineMap::new(json.branches)
    }
}

impl From<PiecewiseAffineMap> for AffineJson {
    fn from(m: PiecewiseAffineMap) -> AffineJson {
        AffineJson { branches: m.branches }
    }
}

impl PiecewiseAffineMap {
    pub fn new(mut branches: Vec<AffineBranch>) -> Result<PiecewiseAffineMap> {
        let fail = |msg: String| Err(Error::Map(msg));
        branches.sort_by(|a, b| a.source.lo().cmp(b.source.lo()));
        if branches.is_empty() {
            return fail("no branches".into());
        }
        let mut at = Rat::zero();
        for b in &branches {
            if b.source.is_empty() {
                return fail(format!("empty source {}", b.source));
            }
            if b.source.lo() != &at {
                return fail(format!("sources do not tile [0,1): gap or overlap at {at}"));
            }
            if b.slope.is_zero() {
                return fail(format!("zero slope on {}", b.source));
            }
            let (lo, hi) = b.image_bounds();
            if lo.is_negative() || hi > Rat::one() {
                return fail(format!("branch on {} maps onto [{lo}, {hi}), outside [0,1]", b.source));
            }
            at = b.source.hi().clone();
        }
        if at != Rat::one() {
            return fail(format!("sources end at {at}, not 1"));
        }
        check_density(&branches)?;
        Ok(PiecewiseAffineMap { branches })
    }

    pub fn branches(&self) -> &[AffineBranch] {
        &self.branches
    }

    pub fn identity() -> PiecewiseAffineMap {
        PiecewiseAffineMap::from(&PiecewiseTranslation::identity())
    }

    /// `x ↦ k·x mod 1` for `k >= 1`.
    pub fn multiplication(k: u32) -> PiecewiseAffineMap {
        assert!(k >= 1, "multiplier must be positive");
        let k = i64::from(k);
        let branches = (0..k)
            .map(|i| AffineBranch {
                source: Interval::new_unchecked(Rat::new(i, k), Rat::new(i + 1, k)),
                slope: Rat::int(k),
                intercept: Rat::int(-i),
            })
            .collect();
        PiecewiseAffineMap { branches }
    }

    /// `x ↦ 2x mod 1`.
    pub fn doubling() -> PiecewiseAffineMap {
        PiecewiseAffineMap::multiplication(2)
    }

    /// `2x` on `[0,1/2)`, `2 - 2x` on `[1/2,1)`.
    pub fn tent() -> PiecewiseAffineMap {
        let half = Rat::new(1, 2);
        PiecewiseAffineMap {
            branches: vec![
                AffineBranch {
                    source: Interval::new_unchecked(Rat::zero(), half.clone()),
                    slope: Rat::int(2),
                    intercept: Rat::zero(),
                },
                AffineBranch {
                    source: Interval::new_unchecked(half, Rat::one()),
                    slope: Rat::int(-2),
                    intercept: Rat::int(2),
                },
            ],
        }
    }

    /// Some translation equal to this map, if every slope is 1 and the
    /// images tile `[0,1)`.
    pub fn as_translation(&self) -> Option<PiecewiseTranslation> {
        if self.branches.iter().any(|b| b.slope != Rat::one()) {
            return None;
        }
        let pieces = self
            .branches
            .iter()
            .map(|b| crate::transform::Piece::new(b.source.clone(), b.intercept.clone()))
            .collect();
        PiecewiseTranslation::new(pieces).ok()
    }
}

impl From<&PiecewiseTranslation> for PiecewiseAffineMap {
    fn from(t: &PiecewiseTranslation) -> PiecewiseAffineMap {
        PiecewiseAffineMap { branches: t.as_branches() }
    }
}

/// Sweeps the branch images and requires the summed density `1/|slope|`
/// to be exactly 1 on every cell between image endpoints.
fn check_density(branches: &[AffineBranch]) -> Result<()> {
    let mut events: Vec<(Rat, Rat)> = Vec::with_capacity(2 * branches.len() + 2);
    for b in branches {
        let (lo, hi) = b.image_bounds();
        let w = b.slope.abs().recip();
        events.push((lo, w.clone()));
        events.push((hi, -w));
    }
    events.push((Rat::zero(), Rat::zero()));
    events.push((Rat::one(), Rat::zero()));
    events.sort();
    let mut density = Rat::zero();
    let mut i = 0;
    while i < events.len() {
        let y = events[i].0.clone();
        while i < events.len() && events[i].0 == y {
            density += &events[i].1;
            i += 1;
        }
        if y < Rat::one() && density != Rat::one() {
            return Err(Error::Map(format!(
                "not measure preserving: preimage density {density} just right of {y}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn branch(a: i64, b: i64, d: i64, slope: Rat, intercept: Rat) -> AffineBranch {
        AffineBranch {
            source: Interval::new(Rat::new(a, d), Rat::new(b, d)).unwrap(),
            slope,
            intercept,
        }
    }

    #[test]
    fn builtins_validate() {
        for m in [
            PiecewiseAffineMap::identity(),
            PiecewiseAffineMap::doubling(),
            PiecewiseAffineMap::tent(),
            PiecewiseAffineMap::multiplication(3),
        ] {
            assert_eq!(PiecewiseAffineMap::new(m.branches().to_vec()).unwrap(), m);
        }
    }

    #[test]
    fn rejects_non_preserving() {
        // x ↦ x/2 squeezes everything into [0,1/2)
        let half = vec![branch(0, 1, 1, Rat::new(1, 2), Rat::zero())];
        assert!(PiecewiseAffineMap::new(half).is_err());
        // both halves onto [0,1/2)
        let fold = vec![
            branch(0, 1, 2, Rat::one(), Rat::zero()),
            branch(1, 2, 2, Rat::one(), Rat::new(-1, 2)),
        ];
        assert!(PiecewiseAffineMap::new(fold).is_err());
        // leaves [0,1]
        let out = vec![branch(0, 1, 1, Rat::int(2), Rat::zero())];
        assert!(PiecewiseAffineMap::new(out).is_err());
        let flat = vec![branch(0, 1, 1, Rat::zero(), Rat::zero())];
        assert!(PiecewiseAffineMap::new(flat).is_err());
    }

    #[test]
    fn mixed_slopes() {
        // densities 1/2 on [0,1/2) and 3/2 on [1/2,1)
        let lopsided = vec![
            branch(0, 1, 4, Rat::int(2), Rat::zero()),
            branch(1, 4, 4, Rat::new(2, 3), Rat::new(1, 3)),
        ];
        assert!(PiecewiseAffineMap::new(lopsided).is_err());
        // densities 1/4 + 3/4 everywhere
        let balanced = vec![
            branch(0, 1, 4, Rat::int(4), Rat::zero()),
            branch(1, 4, 4, Rat::new(4, 3), Rat::new(-1, 3)),
        ];
        assert!(PiecewiseAffineMap::new(balanced).is_ok());
    }

    #[test]
    fn translation_round_trip() {
        let swap = PiecewiseTranslation::half_swap();
        let affine = PiecewiseAffineMap::from(&swap);
        assert_eq!(affine.as_translation(), Some(swap));
        assert_eq!(PiecewiseAffineMap::doubling().as_translation(), None);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&PiecewiseAffineMap::tent()).unwrap();
        assert_eq!(
            s,
            r#"{"branches":[{"lo":"0/1","hi":"1/2","slope":"2/1","intercept":"0/1"},{"lo":"1/2","hi":"1/1","slope":"-2/1","intercept":"2/1"}]}"#
        );
        let back: PiecewiseAffineMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, PiecewiseAffineMap::tent());
        let bad = r#"{"branches":[{"lo":"0","hi":"1","slope":"1/2","intercept":"0"}]}"#;
        assert!(serde_json::from_str::<PiecewiseAffineMap>(bad).is_err());
    }
}
