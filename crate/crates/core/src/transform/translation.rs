//! Invertible piecewise translations (interval exchanges) of `[0,1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::partition::Limits;
use crate::rat::Rat;
use crate::transform::AffineBranch;

/// A translated piece: `x ↦ x + offset` on `source`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Piece {
    pub source: Interval,
    pub offset: Rat,
}

impl Piece {
    pub fn new(source: Interval, offset: Rat) -> Piece {
        Piece { source, offset }
    }

    /// `source + offset`, unchecked against `[0,1]`.
    pub fn image_bounds(&self) -> (Rat, Rat) {
        (self.source.lo() + &self.offset, self.source.hi() + &self.offset)
    }
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +({})", self.source, self.offset)
    }
}

/// A bijection of `[0,1)` that translates finitely many half-open pieces.
///
/// Always stored in canonical form: pieces sorted by source and adjacent
/// pieces with equal offsets merged. Two maps are equal iff they agree
/// pointwise.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TranslationJson", into = "TranslationJson")]
pub struct PiecewiseTranslation {
    pieces: Vec<Piece>,
}

impl PiecewiseTranslation {
    /// Validates that sources and images both tile `[0,1)`; rejects otherwise.
    pub fn new(pieces: Vec<Piece>) -> Result<PiecewiseTranslation> {
        let mut pieces = pieces;
        pieces.sort_by(|a, b| a.source.lo().cmp(b.source.lo()));
        check_tiling(&pieces)?;
        Ok(PiecewiseTranslation::canonicalize(pieces))
    }

    /// For constructions that are bijective by design. Sorts and merges
    /// but does not validate outside debug builds.
    pub(crate) fn from_pieces_unchecked(mut pieces: Vec<Piece>) -> PiecewiseTranslation {
        pieces.retain(|p| !p.source.is_empty());
        pieces.sort_by(|a, b| a.source.lo().cmp(b.source.lo()));
        debug_assert_eq!(check_tiling(&pieces), Ok(()));
        PiecewiseTranslation::canonicalize(pieces)
    }

    fn canonicalize(pieces: Vec<Piece>) -> PiecewiseTranslation {
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match out.last_mut() {
                Some(last) if last.offset == p.offset && last.source.hi() == p.source.lo() => {
                    last.source = Interval::new_unchecked(last.source.lo().clone(), p.source.hi().clone());
                }
                _ => out.push(p),
            }
        }
        PiecewiseTranslation { pieces: out }
    }

    /// Re-checks the invertibility certificate: sources tile `[0,1)` and
    /// images tile `[0,1)`.
    pub fn verify(&self) -> Result<()> {
        check_tiling(&self.pieces)
    }

    pub fn identity() -> PiecewiseTranslation {
        PiecewiseTranslation {
            pieces: vec![Piece::new(Interval::unit(), Rat::zero())],
        }
    }

    /// `x ↦ x + r mod 1`.
    pub fn rotation(r: &Rat) -> PiecewiseTranslation {
        let r = r - Rat::from_big(r.floor(), 1.into());
        if r.is_zero() {
            return PiecewiseTranslation::identity();
        }
        let cut = Rat::one() - &r;
        PiecewiseTranslation::from_pieces_unchecked(vec![
            Piece::new(Interval::new_unchecked(Rat::zero(), cut.clone()), r.clone()),
            Piece::new(Interval::new_unchecked(cut, Rat::one()), r - Rat::one()),
        ])
    }

    /// Swaps the two halves of `[0,1)`.
    pub fn half_swap() -> PiecewiseTranslation {
        PiecewiseTranslation::rotation(&Rat::new(1, 2))
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].offset.is_zero()
    }

    fn piece_index(&self, x: &Rat) -> usize {
        self.pieces
            .partition_point(|p| p.source.lo() <= x)
            .saturating_sub(1)
    }

    pub fn as_branches(&self) -> Vec<AffineBranch> {
        self.pieces
            .iter()
            .map(|p| AffineBranch {
                source: p.source.clone(),
                slope: Rat::one(),
                intercept: p.offset.clone(),
            })
            .collect()
    }

    pub fn invert(&self) -> PiecewiseTranslation {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let (lo, hi) = p.image_bounds();
                Piece::new(Interval::new_unchecked(lo, hi), -&p.offset)
            })
            .collect();
        PiecewiseTranslation::from_pieces_unchecked(pieces)
    }

    /// `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &PiecewiseTranslation) -> PiecewiseTranslation {
        let mut pieces = Vec::with_capacity(self.pieces.len() + inner.pieces.len());
        for p in &inner.pieces {
            let (ilo, ihi) = p.image_bounds();
            let mut k = self.piece_index(&ilo);
            while k < self.pieces.len() && self.pieces[k].source.lo() < &ihi {
                let q = &self.pieces[k];
                let lo = q.source.lo().clone().max(ilo.clone());
                let hi = q.source.hi().clone().min(ihi.clone());
                if lo < hi {
                    let source = Interval::new_unchecked(lo - &p.offset, hi - &p.offset);
                    pieces.push(Piece::new(source, &p.offset + &q.offset));
                }
                k += 1;
            }
        }
        PiecewiseTranslation::from_pieces_unchecked(pieces)
    }

    /// `self^m` for `m >= 0`, failing when the piece count exceeds the limit.
    pub fn power(&self, m: u32, limits: &Limits) -> Result<PiecewiseTranslation> {
        let mut acc = PiecewiseTranslation::identity();
        for _ in 0..m {
            acc = self.compose(&acc);
            limits.check_pieces(acc.piece_count())?;
        }
        Ok(acc)
    }

    pub(crate) fn apply_unchecked(&self, x: &Rat) -> Rat {
        x + &self.pieces[self.piece_index(x)].offset
    }
}

fn check_tiling(pieces: &[Piece]) -> Result<()> {
    let fail = |msg: String| Err(Error::Map(msg));
    if pieces.is_empty() {
        return fail("no pieces".into());
    }
    let mut at = Rat::zero();
    for p in pieces {
        if p.source.is_empty() {
            return fail(format!("empty source {}", p.source));
        }
        if p.source.lo() != &at {
            return fail(format!("sources do not tile [0,1): gap or overlap at {at}"));
        }
        at = p.source.hi().clone();
    }
    if at != Rat::one() {
        return fail(format!("sources end at {at}, not 1"));
    }

    let mut images: Vec<(Rat, Rat)> = pieces.iter().map(Piece::image_bounds).collect();
    if let Some((lo, hi)) = images.iter().find(|(lo, hi)| lo.is_negative() || hi > &Rat::one()) {
        return fail(format!("image [{lo}, {hi}) leaves [0,1)"));
    }
    images.sort();
    let mut at = Rat::zero();
    for (lo, hi) in images {
        if lo != at {
            return fail(format!("images do not tile [0,1): gap or overlap at {at}"));
        }
        at = hi;
    }
    if at != Rat::one() {
        return fail(format!("images end at {at}, not 1"));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct PieceJson {
    lo: Rat,
    hi: Rat,
    offset: Rat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TranslationJson {
    pieces: Vec<PieceJson>,
}

impl TryFrom<TranslationJson> for PiecewiseTranslation {
    type Error = Error;

    fn try_from(json: TranslationJson) -> Result<PiecewiseTranslation> {
        let pieces = json
            .pieces
            .into_iter()
            .map(|p| Ok(Piece::new(Interval::new(p.lo, p.hi)?, p.offset)))
            .collect::<Result<Vec<_>>>()?;
        PiecewiseTranslation::new(pieces)
    }
}

impl From<PiecewiseTranslation> for TranslationJson {
    fn from(t: PiecewiseTranslation) -> TranslationJson {
        TranslationJson {
            pieces: t
                .pieces
                .into_iter()
                .map(|p| PieceJson {
                    lo: p.source.lo().clone(),
                    hi: p.source.hi().clone(),
                    offset: p.offset,
                })
                .collect(),
        }
    }
}

impl fmt::Debug for PiecewiseTranslation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.pieces).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn piece(a: i64, b: i64, d: i64, off: Rat) -> Piece {
        Piece::new(Interval::new(Rat::new(a, d), Rat::new(b, d)).unwrap(), off)
    }

    #[test]
    fn rejects_non_bijections() {
        // overlapping images
        let bad = vec![piece(0, 1, 2, Rat::zero()), piece(1, 2, 2, Rat::new(-1, 2))];
        assert!(PiecewiseTranslation::new(bad).is_err());
        // image leaves [0,1)
        let bad = vec![piece(0, 1, 2, Rat::new(3, 4)), piece(1, 2, 2, Rat::new(-1, 2))];
        assert!(PiecewiseTranslation::new(bad).is_err());
        // sources do not cover
        assert!(PiecewiseTranslation::new(vec![piece(0, 1, 2, Rat::zero())]).is_err());
        assert!(PiecewiseTranslation::new(vec![]).is_err());
    }

    #[test]
    fn merges_equal_offsets() {
        let t = PiecewiseTranslation::new(vec![piece(1, 2, 2, Rat::zero()), piece(0, 1, 2, Rat::zero())]).unwrap();
        assert!(t.is_identity());
        assert_eq!(t, PiecewiseTranslation::identity());
    }

    #[test]
    fn rotation_and_inverse() {
        let quarter = PiecewiseTranslation::rotation(&Rat::new(1, 4));
        assert_eq!(
            quarter.pieces(),
            &[piece(0, 3, 4, Rat::new(1, 4)), piece(3, 4, 4, Rat::new(-3, 4))]
        );
        assert_eq!(quarter.invert(), PiecewiseTranslation::rotation(&Rat::new(3, 4)));
        assert_eq!(PiecewiseTranslation::rotation(&Rat::new(5, 4)), quarter);
        assert_eq!(PiecewiseTranslation::rotation(&Rat::int(2)), PiecewiseTranslation::identity());
    }

    #[test]
    fn group_laws_on_examples() {
        let id = PiecewiseTranslation::identity();
        let swap = PiecewiseTranslation::half_swap();
        assert_eq!(swap.compose(&swap), id);
        assert_eq!(swap.invert(), swap);
        assert_eq!(id.invert(), id);
        let rot = PiecewiseTranslation::rotation(&Rat::new(1, 3));
        assert_eq!(id.compose(&rot), rot);
        assert_eq!(rot.compose(&id), rot);
        assert_eq!(rot.power(3, &Limits::default()).unwrap(), id);
        assert_eq!(rot.compose(&rot.invert()), id);
    }

    #[test]
    fn power_piece_cap() {
        let rot = PiecewiseTranslation::rotation(&Rat::new(1, 7));
        let limits = Limits { max_pieces: 1, ..Limits::default() };
        assert!(rot.power(2, &limits).unwrap_err().is_resource_limit());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let swap = PiecewiseTranslation::half_swap();
        let s = serde_json::to_string(&swap).unwrap();
        assert_eq!(
            s,
            r#"{"pieces":[{"lo":"0/1","hi":"1/2","offset":"1/2"},{"lo":"1/2","hi":"1/1","offset":"-1/2"}]}"#
        );
        let back: PiecewiseTranslation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, swap);
        let bad = r#"{"pieces":[{"lo":"0","hi":"1/2","offset":"0"},{"lo":"1/2","hi":"1","offset":"-1/2"}]}"#;
        assert!(serde_json::from_str::<PiecewiseTranslation>(bad).is_err());
    }
}
