//! A truncated strong-operator metric
//! `d(T,S) = Σ_j ‖Tf_j - Sf_j‖ / (2^j ‖f_j‖)` over a fixed basis.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::par::Exec;
use crate::rat::Rat;
use crate::step::StepFunction;
use crate::transform::Transformation;

pub const DEFAULT_BASIS_LEVEL: u32 = 6;

/// Ordered nonzero test functions `f_1, f_2, ...` with weights `2^-j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricBasis {
    functions: Vec<StepFunction>,
}

impl MetricBasis {
    pub fn new(functions: Vec<StepFunction>) -> Result<MetricBasis> {
        if let Some(i) = functions.iter().position(StepFunction::is_zero) {
            return Err(Error::StepFunction(format!("basis function {} is zero", i + 1)));
        }
        Ok(MetricBasis { functions })
    }

    /// Indicators of all dyadic cells of levels `0..=max_level`, level by
    /// level, left to right.
    pub fn dyadic(max_level: u32) -> MetricBasis {
        let functions = (0..=max_level)
            .flat_map(|n| (0..1usize << n).map(move |i| StepFunction::indicator(&Interval::dyadic_index(n, i))))
            .collect();
        MetricBasis { functions }
    }

    pub fn functions(&self) -> &[StepFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Bound on the omitted terms `Σ_{j > N} 2·2^-j = 2^{1-N}`; each term is
    /// at most `2·2^-j` since Koopman operators are isometries.
    pub fn tail_bound(&self) -> Rat {
        let n = self.functions.len() as i64;
        if n == 0 {
            Rat::int(2)
        } else {
            Rat::dyadic((n - 1) as u32)
        }
    }
}

impl Default for MetricBasis {
    fn default() -> MetricBasis {
        MetricBasis::dyadic(DEFAULT_BASIS_LEVEL)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricTerm {
    /// One-based position `j` in the basis.
    pub index: usize,
    /// `‖Tf_j - Sf_j‖²`, exact.
    pub dist_sq: Rat,
    /// `‖f_j‖²`, exact.
    pub norm_sq: Rat,
    /// `‖Tf_j - Sf_j‖ / (2^j ‖f_j‖)`.
    pub value: f64,
}

impl MetricTerm {
    /// `(dist_sq / norm_sq) · 4^-j`, the exact square of [`MetricTerm::value`].
    pub fn value_sq(&self) -> Rat {
        (&self.dist_sq / &self.norm_sq).shr(2 * self.index as u32)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub terms: Vec<MetricTerm>,
    pub total: f64,
    pub tail_bound: Rat,
}

pub fn op_metric<T, S>(t: &T, s: &S, basis: &MetricBasis) -> MetricReport
where
    T: Transformation + ?Sized,
    S: Transformation + ?Sized,
{
    op_metric_with(t, s, basis, Exec::default())
}

pub fn op_metric_with<T, S>(t: &T, s: &S, basis: &MetricBasis, exec: Exec) -> MetricReport
where
    T: Transformation + ?Sized,
    S: Transformation + ?Sized,
{
    let terms = exec.map(basis.len(), |i| {
        let f = &basis.functions[i];
        let index = i + 1;
        let dist_sq = t.koopman_apply(f).l2_dist(&s.koopman_apply(f)).squared;
        let norm_sq = f.norm_sq();
        let ratio = (&dist_sq / &norm_sq).to_f64();
        let value = ratio.sqrt() * 0.5f64.powi(index as i32);
        MetricTerm { index, dist_sq, norm_sq, value }
    });
    let total = terms.iter().map(|t| t.value).sum();
    MetricReport {
        terms,
        total,
        tail_bound: basis.tail_bound(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{PiecewiseAffineMap, PiecewiseTranslation};

    #[test]
    fn basis_layout() {
        let b = MetricBasis::dyadic(1);
        assert_eq!(b.len(), 3);
        assert_eq!(b.functions()[0], StepFunction::one());
        assert_eq!(MetricBasis::default().len(), 127);
        assert_eq!(MetricBasis::dyadic(1).tail_bound(), Rat::new(1, 4));
        assert!(MetricBasis::new(vec![StepFunction::zero()]).is_err());
    }

    #[test]
    fn identity_vs_swap_level_one() {
        let report = op_metric(
            &PiecewiseTranslation::identity(),
            &PiecewiseTranslation::half_swap(),
            &MetricBasis::dyadic(1),
        );
        let dist: Vec<Rat> = report.terms.iter().map(|t| t.dist_sq.clone()).collect();
        assert_eq!(dist, vec![Rat::zero(), Rat::one(), Rat::one()]);
        assert_eq!(report.terms[1].value_sq(), Rat::new(2, 16));
        assert_eq!(report.terms[2].value_sq(), Rat::new(2, 64));
        let expected = 2f64.sqrt() * (0.25 + 0.125);
        assert!((report.total - expected).abs() < 1e-15);
    }

    #[test]
    fn zero_on_equal_maps() {
        let d = PiecewiseAffineMap::doubling();
        let r = op_metric(&d, &d, &MetricBasis::dyadic(3));
        assert_eq!(r.total, 0.0);
        assert!(r.terms.iter().all(|t| t.dist_sq.is_zero()));
    }
}
