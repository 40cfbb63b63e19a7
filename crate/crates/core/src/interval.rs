use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Half-open subinterval `[lo, hi)` of `[0,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

#[derive(Deserialize)]
struct RawInterval {
    lo: Rat,
    hi: Rat,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Interval> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Interval> {
        let reason = if lo.is_negative() || hi > Rat::one() {
            Some("endpoints must lie in [0,1]")
        } else if lo > hi {
            Some("lo must not exceed hi")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::Interval(format!("[{lo}, {hi}): {reason}"))),
            None => Ok(Interval { lo, hi }),
        }
    }

    /// Caller guarantees `0 <= lo <= hi <= 1`.
    pub(crate) fn new_unchecked(lo: Rat, hi: Rat) -> Interval {
        debug_assert!(!lo.is_negative() && lo <= hi && hi <= Rat::one());
        Interval { lo, hi }
    }

    pub fn unit() -> Interval {
        Interval { lo: Rat::zero(), hi: Rat::one() }
    }

    /// The dyadic cell `I_j = [(j-1)/2^n, j/2^n)`, with `j` counted from 1.
    pub fn dyadic(n: u32, j: u64) -> Result<Interval> {
        let cells = 1u128 << n;
        if j == 0 || u128::from(j) > cells {
            return Err(Error::Interval(format!("dyadic index {j} out of range 1..={cells}")));
        }
        Ok(Interval::dyadic_index(n, (j - 1) as usize))
    }

    /// Zero-based variant of [`Interval::dyadic`].
    pub(crate) fn dyadic_index(n: u32, idx: usize) -> Interval {
        let lo = Rat::int(idx as i64).shr(n);
        let hi = Rat::int(idx as i64 + 1).shr(n);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::int(2)
    }

    /// Possibly empty intersection.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn overlap_length(&self, other: &Interval) -> Rat {
        self.intersect(other).map(|i| i.length()).unwrap_or_else(Rat::zero)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sorts and joins abutting or overlapping intervals, dropping empty ones.
pub(crate) fn merge_intervals(mut intervals: Vec<Interval>) -> Vec<Interval> {
    intervals.retain(|i| !i.is_empty());
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64, d: i64) -> Interval {
        Interval::new(Rat::new(a, d), Rat::new(b, d)).unwrap()
    }

    #[test]
    fn rejects_bad_endpoints() {
        assert!(Interval::new(Rat::new(1, 2), Rat::new(1, 4)).is_err());
        assert!(Interval::new(Rat::new(-1, 2), Rat::new(1, 4)).is_err());
        assert!(Interval::new(Rat::zero(), Rat::new(5, 4)).is_err());
        assert!(Interval::new(Rat::new(1, 3), Rat::new(1, 3)).unwrap().is_empty());
    }

    #[test]
    fn half_open_membership() {
        let i = iv(1, 2, 4);
        assert!(i.contains(&Rat::new(1, 4)));
        assert!(!i.contains(&Rat::new(1, 2)));
    }

    #[test]
    fn dyadic_cells() {
        assert_eq!(Interval::dyadic(2, 3).unwrap(), iv(2, 3, 4));
        assert!(Interval::dyadic(2, 0).is_err());
        assert!(Interval::dyadic(2, 5).is_err());
    }

    #[test]
    fn intersections() {
        assert_eq!(iv(0, 2, 4).intersect(&iv(1, 4, 4)), Some(iv(1, 2, 4)));
        assert_eq!(iv(0, 1, 2).intersect(&iv(1, 2, 2)), None);
        assert_eq!(iv(0, 1, 2).overlap_length(&iv(1, 4, 4)), Rat::new(1, 4));
    }

    #[test]
    fn merging() {
        let merged = merge_intervals(vec![iv(2, 3, 4), iv(0, 1, 4), iv(1, 2, 4), iv(3, 3, 4)]);
        assert_eq!(merged, vec![iv(0, 3, 4)]);
    }

    #[test]
    fn deserialize_validates() {
        let ok: Interval = serde_json::from_str(r#"{"lo":"1/4","hi":"1/2"}"#).unwrap();
        assert_eq!(ok, iv(1, 2, 4));
        assert!(serde_json::from_str::<Interval>(r#"{"lo":"3/4","hi":"1/2"}"#).is_err());
    }
}
