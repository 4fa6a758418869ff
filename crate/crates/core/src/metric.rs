//! Closed-form translation of inner products and squared distances between
//! the original space and the pole-direction embedding, without performing
//! the embedding.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::{check_scale, one_plus_last, SINGULARITY_EPS};
use crate::linalg::{cosine, dot, norm_sq, sq_dist};

/// Which embedding the bridge formulas assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BridgeMode {
    /// `v = (0, ..., 0, 1)`.
    #[default]
    Simplified,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricContext {
    s: f64,
    mode: BridgeMode,
}

impl MetricContext {
    pub fn new(s: f64) -> Result<Self> {
        check_scale(s)?;
        Ok(Self {
            s,
            mode: BridgeMode::Simplified,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn mode(&self) -> BridgeMode {
        self.mode
    }

    fn denominators(&self, x: &[f64], y: &[f64]) -> f64 {
        let s2 = self.s * self.s;
        (norm_sq(x) + s2) * (norm_sq(y) + s2)
    }

    /// `<x^, y^> = 1 - 2 s^2 ||x - y||^2 / ((||x||^2 + s^2)(||y||^2 + s^2))`.
    pub fn dot_embedded(&self, x: &[f64], y: &[f64]) -> f64 {
        1.0 - 2.0 * self.s * self.s * sq_dist(x, y) / self.denominators(x, y)
    }

    /// `||x^ - y^||^2 = 4 s^2 ||x - y||^2 / ((||x||^2 + s^2)(||y||^2 + s^2))`.
    pub fn sqdist_embedded(&self, x: &[f64], y: &[f64]) -> f64 {
        4.0 * self.s * self.s * sq_dist(x, y) / self.denominators(x, y)
    }

    fn pole_factors(&self, xh: &[f64], yh: &[f64]) -> Result<(f64, f64)> {
        let fx = one_plus_last(xh);
        if fx < SINGULARITY_EPS {
            return Err(Error::PointAtSouthPole { index: 0 });
        }
        let fy = one_plus_last(yh);
        if fy < SINGULARITY_EPS {
            return Err(Error::PointAtSouthPole { index: 1 });
        }
        Ok((fx, fy))
    }

    /// `<x, y> = s^2 (<x^, y^> - x^_last y^_last) / ((1 + x^_last)(1 + y^_last))`.
    ///
    /// The numerator is summed over the first `d` coordinates only, which
    /// equals `<x^, y^> - x^_last y^_last` without the cancellation.
    ///
    /// A pole error reports index 0 for `xh` and 1 for `yh`.
    pub fn dot_original(&self, xh: &[f64], yh: &[f64]) -> Result<f64> {
        let (fx, fy) = self.pole_factors(xh, yh)?;
        let d = xh.len() - 1;
        Ok(self.s * self.s * dot(&xh[..d], &yh[..d]) / (fx * fy))
    }

    /// `||x - y||^2 = s^2 ||x^ - y^||^2 / ((1 + x^_last)(1 + y^_last))`.
    pub fn sqdist_original(&self, xh: &[f64], yh: &[f64]) -> Result<f64> {
        let (fx, fy) = self.pole_factors(xh, yh)?;
        let out = self.s * self.s * sq_dist(xh, yh) / (fx * fy);
        #[cfg(debug_assertions)]
        if is_unit(xh) && is_unit(yh) {
            let alt = self.sqdist_original_via_pole(xh, yh)?;
            debug_assert!(
                (alt - out).abs() <= 1e-6 * out.max(1.0),
                "distance forms disagree: {out} vs {alt}"
            );
        }
        Ok(out)
    }

    /// Second form of [`Self::sqdist_original`] written in terms of the
    /// direction `v`:
    /// `4 s^2 ||x^ - y^||^2 / ((4 - ||x^ - v||^2)(4 - ||y^ - v||^2))`.
    ///
    /// For unit vectors `4 - ||y - v||^2 = ||y + v||^2`; the right-hand side
    /// is used since the left one cancels near `-v`.
    pub fn sqdist_original_via_pole(&self, xh: &[f64], yh: &[f64]) -> Result<f64> {
        let complement = |y: &[f64]| {
            let d = y.len() - 1;
            norm_sq(&y[..d]) + (y[d] + 1.0) * (y[d] + 1.0)
        };
        let fx = complement(xh);
        if fx < SINGULARITY_EPS {
            return Err(Error::PointAtSouthPole { index: 0 });
        }
        let fy = complement(yh);
        if fy < SINGULARITY_EPS {
            return Err(Error::PointAtSouthPole { index: 1 });
        }
        Ok(4.0 * self.s * self.s * sq_dist(xh, yh) / (fx * fy))
    }

    /// `cos(x, y) / cos(x^, y^)`, where the embedded cosine is
    /// `(2 - ||x^ - y^||^2) / 2`. Diagnostic only.
    pub fn cosine_ratio(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let original = cosine(x, y).ok_or_else(|| {
            let index = if norm_sq(x) == 0.0 { 0 } else { 1 };
            Error::ZeroVector { index }
        })?;
        let embedded = (2.0 - self.sqdist_embedded(x, y)) / 2.0;
        if embedded.abs() < ZERO_COSINE {
            return Err(Error::ZeroEmbeddedCosine);
        }
        Ok(original / embedded)
    }
}

#[cfg(debug_assertions)]
fn is_unit(y: &[f64]) -> bool {
    (norm_sq(y) - 1.0).abs() <= 1e-9
}

/// Embedded cosines below this magnitude make [`MetricContext::cosine_ratio`]
/// undefined.
pub const ZERO_COSINE: f64 = 1e-12;

/// Smallest scale that puts every point of `x` on the closed hemisphere
/// facing the pole: `max ||x||`.
///
/// An all-origin dataset yields 0, which is not a valid scale; any positive
/// scale works for it.
pub fn hemisphere_min_scale(x: &Dataset) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(x.norms().into_iter().fold(0.0, f64::max))
}
