//! Angle-based intrinsic dimensionality (ABID) and the scale sweep built on it.
//!
//! The global ABID of a point set is `1 / E[cos(x, y)^2]` over distinct
//! pairs. Embedding with a tiny or huge scale collapses the data onto one
//! pole, which drives the estimate down to 1; a scale that spreads the data
//! over the sphere maximizes it. [`sweep_scale`] evaluates the estimate on a
//! logarithmic grid around the mean (or median) vector norm and picks the
//! maximizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::{check_scale, embed_simplified};
use crate::linalg::{dot, norm};

pub const DEFAULT_PAIR_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbidEstimate {
    /// `1 / mean(cos^2)`, at least 1.
    pub value: f64,
    /// Number of pairs the mean was taken over.
    pub n_pairs: usize,
    /// True when every distinct pair was used.
    pub exhaustive: bool,
    /// Zero vectors left out of the estimate.
    pub skipped_zero: usize,
}

/// Global ABID over distinct unordered pairs.
///
/// All pairs are used when there are at most `pair_budget` of them;
/// otherwise `pair_budget` pairs are drawn uniformly (with replacement) from
/// a generator seeded with `seed`. Zero vectors are skipped and counted.
pub fn abid(x: &Dataset, pair_budget: usize, seed: u64) -> Result<AbidEstimate> {
    if pair_budget == 0 {
        return Err(Error::InvalidParameter("pair budget must be positive".into()));
    }
    let dim = x.dim();
    let mut units = Vec::with_capacity(x.len() * dim);
    let mut skipped_zero = 0;
    for row in x.rows() {
        let n = norm(row);
        if n == 0.0 {
            skipped_zero += 1;
            continue;
        }
        units.extend(row.iter().map(|v| v / n));
    }
    let m = units.len() / dim;
    if m < 2 {
        return Err(Error::TooFewPoints { got: m });
    }
    let unit = |i: usize| &units[i * dim..(i + 1) * dim];
    let cos_sq = |i: usize, j: usize| {
        let c = dot(unit(i), unit(j));
        (c * c).min(1.0)
    };

    let total_pairs = (m as u128) * (m as u128 - 1) / 2;
    let (sum, n_pairs, exhaustive) = if total_pairs <= pair_budget as u128 {
        // per-row partial sums, reduced in index order
        let partial: Vec<f64> = (0..m)
            .into_par_iter()
            .map(|i| ((i + 1)..m).map(|j| cos_sq(i, j)).sum())
            .collect();
        (partial.iter().sum::<f64>(), total_pairs as usize, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(usize, usize)> = (0..pair_budget)
            .map(|_| {
                let i = rng.random_range(0..m);
                let mut j = rng.random_range(0..m - 1);
                if j >= i {
                    j += 1;
                }
                (i, j)
            })
            .collect();
        let sum: f64 = pairs.iter().map(|&(i, j)| cos_sq(i, j)).sum();
        (sum, pair_budget, false)
    };

    let mean = sum / n_pairs as f64;
    if mean == 0.0 {
        return Err(Error::AllCosinesZero);
    }
    Ok(AbidEstimate {
        value: 1.0 / mean,
        n_pairs,
        exhaustive,
        skipped_zero,
    })
}

/// ABID of the pole-direction embedding of `x` at scale `s`, with cosines
/// taken about the sphere's center.
pub fn abid_embedded(x: &Dataset, s: f64, pair_budget: usize, seed: u64) -> Result<AbidEstimate> {
    let embedded = embed_simplified(x, s)?;
    abid(embedded.as_dataset(), pair_budget, seed)
}

/// Subtracts the column means.
pub fn mean_center(x: &Dataset) -> Result<Dataset> {
    let mean = x.mean()?;
    x.map_rows(x.dim(), |_, row, out| {
        for ((o, v), m) in out.iter_mut().zip(row).zip(&mean) {
            *o = v - m;
        }
        Ok(())
    })
}

pub fn mean_norm(x: &Dataset) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(x.norms().iter().sum::<f64>() / x.len() as f64)
}

pub fn median_norm(x: &Dataset) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut norms = x.norms();
    norms.sort_by(f64::total_cmp);
    let n = norms.len();
    Ok(if n % 2 == 1 {
        norms[n / 2]
    } else {
        0.5 * (norms[n / 2 - 1] + norms[n / 2])
    })
}

/// Reference norm the sweep grid is centered on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormCenter {
    #[default]
    Mean,
    /// More robust when a few points have very large norms.
    Median,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub grid_size: usize,
    pub lo_factor: f64,
    pub hi_factor: f64,
    pub center: NormCenter,
    /// Mean-center the input before sweeping.
    pub mean_center: bool,
    pub pair_budget: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            grid_size: 20,
            lo_factor: 0.1,
            hi_factor: 10.0,
            center: NormCenter::Mean,
            mean_center: true,
            pair_budget: DEFAULT_PAIR_BUDGET,
            seed: 0,
        }
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        if self.grid_size < 2 {
            return Err(Error::InvalidParameter("grid size must be at least 2".into()));
        }
        if !(self.lo_factor > 0.0 && self.lo_factor < self.hi_factor && self.hi_factor.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < lo < hi, got lo={} hi={}",
                self.lo_factor, self.hi_factor
            )));
        }
        if self.pair_budget == 0 {
            return Err(Error::InvalidParameter("pair budget must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Strictly increasing scale values.
    pub grid: Vec<f64>,
    /// ABID of the embedding at each grid value; `None` where undefined.
    pub abid_curve: Vec<Option<f64>>,
    pub best_index: usize,
    pub best_s: f64,
    /// Mean vector norm of the (centered) input.
    pub mean_norm: f64,
    /// Norm the grid was centered on (mean or median).
    pub reference_norm: f64,
    /// ABID of the (centered) input itself, if defined.
    pub original_abid: Option<f64>,
}

impl SweepResult {
    pub fn best_abid(&self) -> f64 {
        self.abid_curve[self.best_index].expect("best grid point has a value")
    }
}

/// Log-spaced grid of `n` values from `lo * center` to `hi * center`.
pub fn log_grid(center: f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            center * (a + t * (b - a)).exp()
        })
        .collect()
}

/// Evaluates the embedded ABID over a log grid and returns the maximizer.
///
/// Every grid point uses the same pair sample (same seed), so the curve
/// compares scales on identical pairs. Grid points whose estimate is
/// undefined are recorded as `None` and never selected; exact ties go to
/// the value closest (in log scale) to the reference norm.
pub fn sweep_scale(x: &Dataset, config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    if x.len() < 2 {
        return Err(Error::TooFewPoints { got: x.len() });
    }
    let data = if config.mean_center {
        mean_center(x)?
    } else {
        x.clone()
    };
    let mean_norm = mean_norm(&data)?;
    let reference_norm = match config.center {
        NormCenter::Mean => mean_norm,
        NormCenter::Median => median_norm(&data)?,
    };
    check_scale(reference_norm).map_err(|_| {
        Error::InvalidParameter(format!("reference norm {reference_norm} is not positive"))
    })?;

    let grid = log_grid(reference_norm, config.lo_factor, config.hi_factor, config.grid_size);
    let abid_curve: Vec<Option<f64>> = grid
        .par_iter()
        .map(|&s| match abid_embedded(&data, s, config.pair_budget, config.seed) {
            Ok(est) => Some(est.value),
            Err(e) => {
                log::warn!("ABID undefined at s={s}: {e}");
                None
            }
        })
        .collect();

    let log_offset = |s: f64| (s / reference_norm).ln().abs();
    let best_index = abid_curve
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .fold(None::<(usize, f64)>, |best, (i, v)| match best {
            None => Some((i, v)),
            Some((bi, bv)) => {
                if v > bv || (v == bv && log_offset(grid[i]) < log_offset(grid[bi])) {
                    Some((i, v))
                } else {
                    Some((bi, bv))
                }
            }
        })
        .map(|(i, _)| i)
        .ok_or(Error::AllCosinesZero)?;

    let original_abid = abid(&data, config.pair_budget, config.seed)
        .ok()
        .map(|e| e.value);

    Ok(SweepResult {
        best_s: grid[best_index],
        grid,
        abid_curve,
        best_index,
        mean_norm,
        reference_norm,
        original_abid,
    })
}
