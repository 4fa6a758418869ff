use crate::dataset::{Dataset, EmbeddedDataset};
use crate::error::{Error, Result};
use crate::geometry::{check_scale, embed_simplified, one_plus_last, SINGULARITY_EPS};
use crate::linalg::norm;
use crate::scale::{mean_center, mean_norm, sweep_scale, SweepConfig, SweepResult};

use super::rotation::{align_mean_to_pole, PoleRotation};

/// How [`pipeline_embed`] chooses the scale.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalePolicy {
    /// Mean vector norm of the centered data.
    MeanNorm,
    /// Maximizer of the ABID sweep.
    Sweep(SweepConfig),
    Fixed(f64),
}

#[derive(Debug, Clone)]
pub struct PipelineEmbedding {
    pub embedded: EmbeddedDataset,
    pub s: f64,
    /// Column means subtracted before embedding.
    pub mean: Vec<f64>,
    pub sweep: Option<SweepResult>,
}

/// Mean-centers `x`, picks a scale and embeds with the pole direction.
pub fn pipeline_embed(x: &Dataset, policy: &ScalePolicy) -> Result<PipelineEmbedding> {
    let mean = x.mean()?;
    let centered = mean_center(x)?;
    let (s, sweep) = match policy {
        ScalePolicy::Fixed(s) => (*s, None),
        ScalePolicy::MeanNorm => (mean_norm(&centered)?, None),
        ScalePolicy::Sweep(config) => {
            let config = SweepConfig {
                mean_center: false,
                ..config.clone()
            };
            let result = sweep_scale(&centered, &config)?;
            (result.best_s, Some(result))
        }
    };
    check_scale(s)?;
    let embedded = embed_simplified(&centered, s)?;
    Ok(PipelineEmbedding {
        embedded,
        s,
        mean,
        sweep,
    })
}

#[derive(Debug, Clone)]
pub struct PipelineUnembedding {
    /// Unembedded points that survived, with their original ids.
    pub data: Dataset,
    pub rotation: PoleRotation,
    /// Ids of points that landed on the inversion pole after rotation.
    pub dropped: Vec<usize>,
}

/// Normalizes every point, rotates the mean direction onto the pole and
/// applies the pole-direction unembedding with scale `s`.
///
/// Points that end up at the south pole are dropped (never clamped) and
/// reported in [`PipelineUnembedding::dropped`].
pub fn pipeline_unembed(x: &Dataset, s: f64) -> Result<PipelineUnembedding> {
    check_scale(s)?;
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let normalized = x.map_rows(x.dim(), |i, row, out| {
        let n = norm(row);
        if n == 0.0 {
            return Err(Error::ZeroVector { index: i });
        }
        out.iter_mut().zip(row).for_each(|(o, v)| *o = v / n);
        Ok(())
    })?;
    let (rotated, rotation) = align_mean_to_pole(&normalized)?;

    let dim = rotated.dim();
    if dim < 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: dim });
    }
    let mut data = Vec::with_capacity(rotated.len() * (dim - 1));
    let mut ids = Vec::with_capacity(rotated.len());
    let mut dropped = Vec::new();
    for (row, &id) in rotated.rows().zip(rotated.ids()) {
        let denom = one_plus_last(row);
        if denom < SINGULARITY_EPS {
            dropped.push(id);
            continue;
        }
        data.extend(row[..dim - 1].iter().map(|y| s * y / denom));
        ids.push(id);
    }
    if !dropped.is_empty() {
        log::warn!("dropped {} point(s) at the inversion pole", dropped.len());
    }
    Ok(PipelineUnembedding {
        data: Dataset::from_parts_unchecked(dim - 1, data, ids),
        rotation,
        dropped,
    })
}
