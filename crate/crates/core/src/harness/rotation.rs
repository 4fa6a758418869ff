use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm};

/// Orthogonal map sending a unit direction `u` to the last basis vector `e`.
///
/// Built from one Householder reflection `H = I - 2 w w^T` followed by a
/// coordinate sign flip, so the composite is a proper rotation. For
/// `u_last >= 0` the reflection sends `u` to `-e` (`w` along `u + e`) and
/// the last coordinate is negated; otherwise it sends `u` to `e` (`w` along
/// `u - e`) and the first coordinate is negated. Either way `w` is never
/// formed from a difference of nearly equal vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleRotation {
    dim: usize,
    reflector: Option<Vec<f64>>,
    flip: Option<usize>,
}

impl PoleRotation {
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            reflector: None,
            flip: None,
        }
    }

    /// Rotation taking the direction of `target` onto `(0, ..., 0, 1)`.
    pub fn to_pole(target: &[f64]) -> Result<Self> {
        let dim = target.len();
        let n = norm(target);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroMean);
        }
        let last = dim - 1;
        let mut w: Vec<f64> = target.iter().map(|x| x / n).collect();
        if w[..last].iter().all(|&x| x == 0.0) && w[last] > 0.0 {
            return Ok(Self::identity(dim));
        }
        let flip = if w[last] >= 0.0 {
            w[last] += 1.0;
            Some(last)
        } else {
            w[last] -= 1.0;
            (dim >= 2).then_some(0)
        };
        let wn = norm(&w);
        w.iter_mut().for_each(|x| *x /= wn);
        Ok(Self {
            dim,
            reflector: Some(w),
            flip,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_identity(&self) -> bool {
        self.reflector.is_none()
    }

    fn reflect(&self, x: &mut [f64]) {
        if let Some(w) = &self.reflector {
            let t = 2.0 * dot(w, x);
            x.iter_mut().zip(w).for_each(|(xi, wi)| *xi -= t * wi);
        }
    }

    pub fn apply(&self, x: &mut [f64]) {
        self.reflect(x);
        if let Some(i) = self.flip {
            x[i] = -x[i];
        }
    }

    pub fn apply_inverse(&self, x: &mut [f64]) {
        if let Some(i) = self.flip {
            x[i] = -x[i];
        }
        self.reflect(x);
    }

    pub fn apply_dataset(&self, x: &Dataset) -> Result<Dataset> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        x.map_rows(self.dim, |_, row, out| {
            out.copy_from_slice(row);
            self.apply(out);
            Ok(())
        })
    }
}

/// Rotates `x` so its mean vector points along `(0, ..., 0, 1)`.
pub fn align_mean_to_pole(x: &Dataset) -> Result<(Dataset, PoleRotation)> {
    let mean = x.mean()?;
    let rotation = PoleRotation::to_pole(&mean)?;
    let rotated = rotation.apply_dataset(x)?;
    Ok((rotated, rotation))
}
