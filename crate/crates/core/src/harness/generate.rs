use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::linalg::norm;

/// Half-width of the cube blob centers are drawn from.
const BLOB_CENTER_RANGE: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Uniform in the unit ball.
    UniformBall,
    /// Standard isotropic normal.
    Gaussian,
    /// Unit-variance normal blobs around centers uniform in `[-10, 10]^d`.
    Blobs,
    /// `Blobs` projected onto the unit sphere.
    NormalizedBlobs,
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform_ball" | "uniform-ball" => Ok(Self::UniformBall),
            "gaussian" => Ok(Self::Gaussian),
            "blobs" => Ok(Self::Blobs),
            "normalized_blobs" | "normalized-blobs" => Ok(Self::NormalizedBlobs),
            other => Err(Error::InvalidParameter(format!("unknown generator kind {other:?}"))),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::UniformBall => "uniform_ball",
            Self::Gaussian => "gaussian",
            Self::Blobs => "blobs",
            Self::NormalizedBlobs => "normalized_blobs",
        })
    }
}

fn gaussian_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.sample(StandardNormal)).collect()
}

/// Draws `n` points in `R^d`; output is a pure function of the arguments.
///
/// `n_blobs` is only read by the blob kinds, where points are assigned to
/// blobs round-robin.
pub fn generate(kind: GeneratorKind, d: usize, n: usize, n_blobs: usize, seed: u64) -> Result<Dataset> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("need d >= 1 and n >= 1, got d={d} n={n}")));
    }
    let blobs = matches!(kind, GeneratorKind::Blobs | GeneratorKind::NormalizedBlobs);
    if blobs && n_blobs == 0 {
        return Err(Error::InvalidParameter("n_blobs must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(n * d);
    match kind {
        GeneratorKind::Gaussian => {
            for _ in 0..n {
                data.extend(gaussian_vec(&mut rng, d));
            }
        }
        GeneratorKind::UniformBall => {
            for _ in 0..n {
                let g = loop {
                    let g = gaussian_vec(&mut rng, d);
                    if norm(&g) > 0.0 {
                        break g;
                    }
                };
                let radius = rng.random::<f64>().powf(1.0 / d as f64);
                let gn = norm(&g);
                data.extend(g.iter().map(|x| radius * x / gn));
            }
        }
        GeneratorKind::Blobs | GeneratorKind::NormalizedBlobs => {
            let centers: Vec<Vec<f64>> = (0..n_blobs)
                .map(|_| {
                    (0..d)
                        .map(|_| rng.random_range(-BLOB_CENTER_RANGE..BLOB_CENTER_RANGE))
                        .collect()
                })
                .collect();
            for i in 0..n {
                let center = &centers[i % n_blobs];
                let mut p: Vec<f64> = loop {
                    let p: Vec<f64> = center
                        .iter()
                        .zip(gaussian_vec(&mut rng, d))
                        .map(|(c, g)| c + g)
                        .collect();
                    if kind == GeneratorKind::Blobs || norm(&p) > 0.0 {
                        break p;
                    }
                };
                if kind == GeneratorKind::NormalizedBlobs {
                    let pn = norm(&p);
                    p.iter_mut().for_each(|x| *x /= pn);
                }
                data.extend(p);
            }
        }
    }
    Dataset::new(d, data)
}
