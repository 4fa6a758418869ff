//! Inversion-based spherical embedding and its inverse.
//!
//! A point `x` in `R^d` is lifted onto the affine hyperplane `<x', v> = s`
//! in `R^(d+1)`, inverted through the unit sphere (which places it on the
//! sphere with center `v / 2s` and radius `1 / 2s`), and finally rescaled and
//! shifted onto the unit sphere. The lift and the inversion are exposed
//! separately so callers can inspect the intermediate geometry.
//!
//! With `v = (0, ..., 0, 1)` the whole pipeline collapses into the closed
//! forms of [`embed_simplified`] and [`unembed_simplified`], which are the
//! usual inverse stereographic projection and stereographic projection.

use crate::dataset::{Dataset, EmbeddedDataset};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm_sq};

/// Default guard on squared norms before dividing during unembedding.
pub const SINGULARITY_EPS: f64 = 1e-24;

/// Maximum deviation of `||v||` from 1 that is silently renormalized.
pub const DIRECTION_RENORM_TOL: f64 = 1e-9;

/// Inversion direction `v` in `R^(d+1)` and scale `s > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingParams {
    v: Vec<f64>,
    s: f64,
}

impl EmbeddingParams {
    /// Validates `v` and `s`.
    ///
    /// `v` is renormalized when its norm is within [`DIRECTION_RENORM_TOL`]
    /// of 1 and rejected otherwise. Its last coordinate must be non-zero.
    pub fn new(v: Vec<f64>, s: f64) -> Result<Self> {
        check_scale(s)?;
        if v.len() < 2 {
            return Err(Error::InvalidDirection(format!(
                "direction needs at least 2 coordinates, got {}",
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidDirection("non-finite coordinate".into()));
        }
        let n = norm_sq(&v).sqrt();
        if (n - 1.0).abs() > DIRECTION_RENORM_TOL {
            return Err(Error::InvalidDirection(format!("norm {n} is not 1")));
        }
        let v: Vec<f64> = v.iter().map(|x| x / n).collect();
        if v[v.len() - 1] == 0.0 {
            return Err(Error::InvalidDirection(
                "last coordinate of v must be non-zero".into(),
            ));
        }
        Ok(Self { v, s })
    }

    /// The pole direction `(0, ..., 0, 1)` for data of dimension `dim`.
    pub fn pole(dim: usize, s: f64) -> Result<Self> {
        let mut v = vec![0.0; dim + 1];
        v[dim] = 1.0;
        Self::new(v, s)
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Dimension of the original (unembedded) space.
    pub fn data_dim(&self) -> usize {
        self.v.len() - 1
    }

    /// True when `v` is exactly `(0, ..., 0, 1)`.
    pub fn is_pole(&self) -> bool {
        let d = self.data_dim();
        self.v[..d].iter().all(|&x| x == 0.0) && self.v[d] == 1.0
    }
}

pub(crate) fn check_scale(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidScale(s))
    }
}

fn check_dim(got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

fn lift_into(x: &[f64], params: &EmbeddingParams, out: &mut [f64]) {
    let d = params.data_dim();
    let v = &params.v;
    out[..d].copy_from_slice(x);
    out[d] = (params.s - dot(x, &v[..d])) / v[d];
}

fn invert_into(x: &[f64], params: &EmbeddingParams, out: &mut [f64]) {
    lift_into(x, params, out);
    let n2 = norm_sq(out);
    out.iter_mut().for_each(|c| *c /= n2);
}

fn embed_into(x: &[f64], params: &EmbeddingParams, out: &mut [f64]) {
    invert_into(x, params, out);
    let two_s = 2.0 * params.s;
    for (c, vi) in out.iter_mut().zip(&params.v) {
        *c = two_s * *c - vi;
    }
}

fn unembed_into(
    index: usize,
    y: &[f64],
    params: &EmbeddingParams,
    eps: f64,
    out: &mut [f64],
) -> Result<()> {
    let d = params.data_dim();
    let shifted_sq: f64 = y
        .iter()
        .zip(&params.v)
        .map(|(a, b)| (a + b) * (a + b))
        .sum();
    if shifted_sq < eps {
        return Err(Error::PointAtSouthPole { index });
    }
    let scale = 2.0 * params.s / shifted_sq;
    for i in 0..d {
        out[i] = scale * (y[i] + params.v[i]);
    }
    Ok(())
}

/// `1 + y_last` for a unit vector `y`.
///
/// On the lower hemisphere the sum cancels, so it is evaluated through
/// `1 - y_last^2 = ||y_(1..d)||^2` instead.
pub(crate) fn one_plus_last(y: &[f64]) -> f64 {
    let d = y.len() - 1;
    let last = y[d];
    if last >= 0.0 {
        1.0 + last
    } else {
        norm_sq(&y[..d]) / (1.0 - last)
    }
}

fn embed_simplified_into(x: &[f64], s: f64, out: &mut [f64]) {
    let d = x.len();
    let n2 = norm_sq(x);
    let denom = n2 + s * s;
    let two_s = 2.0 * s;
    for i in 0..d {
        out[i] = two_s * x[i] / denom;
    }
    out[d] = (s * s - n2) / denom;
}

fn unembed_simplified_into(index: usize, y: &[f64], s: f64, eps: f64, out: &mut [f64]) -> Result<()> {
    let d = y.len() - 1;
    let denom = one_plus_last(y);
    if denom < eps {
        return Err(Error::PointAtSouthPole { index });
    }
    for i in 0..d {
        out[i] = s * y[i] / denom;
    }
    Ok(())
}

/// Lifts every point onto the hyperplane `<x', v> = s` by appending
/// `(s - <x, v_(1..d)>) / v_(d+1)`.
pub fn embed_plane(x: &Dataset, params: &EmbeddingParams) -> Result<Dataset> {
    check_dim(x.dim(), params.data_dim())?;
    x.map_rows(x.dim() + 1, |_, row, out| {
        lift_into(row, params, out);
        Ok(())
    })
}

/// Inverts the lifted points through the unit sphere; the images lie on the
/// sphere with center `v / 2s` and radius `1 / 2s`.
pub fn embed_inversion_sphere(x: &Dataset, params: &EmbeddingParams) -> Result<Dataset> {
    check_dim(x.dim(), params.data_dim())?;
    x.map_rows(x.dim() + 1, |_, row, out| {
        invert_into(row, params, out);
        Ok(())
    })
}

/// Embeds every point onto the unit sphere in `R^(d+1)`.
pub fn embed(x: &Dataset, params: &EmbeddingParams) -> Result<EmbeddedDataset> {
    check_dim(x.dim(), params.data_dim())?;
    let out = x.map_rows(x.dim() + 1, |_, row, out| {
        embed_into(row, params, out);
        Ok(())
    })?;
    Ok(EmbeddedDataset::from_trusted(out))
}

/// Inverse of [`embed`] with the default singularity guard.
pub fn unembed(y: &EmbeddedDataset, params: &EmbeddingParams) -> Result<Dataset> {
    unembed_with_eps(y, params, SINGULARITY_EPS)
}

/// Inverse of [`embed`]; points with `||y + v||^2 < eps` are rejected as
/// [`Error::PointAtSouthPole`].
pub fn unembed_with_eps(y: &EmbeddedDataset, params: &EmbeddingParams, eps: f64) -> Result<Dataset> {
    check_dim(y.dim(), params.data_dim() + 1)?;
    y.map_rows(params.data_dim(), |i, row, out| {
        unembed_into(i, row, params, eps, out)
    })
}

/// Embedding with `v = (0, ..., 0, 1)`: `2s (x, s) / (||x||^2 + s^2) - v`.
pub fn embed_simplified(x: &Dataset, s: f64) -> Result<EmbeddedDataset> {
    check_scale(s)?;
    let out = x.map_rows(x.dim() + 1, |_, row, out| {
        embed_simplified_into(row, s, out);
        Ok(())
    })?;
    Ok(EmbeddedDataset::from_trusted(out))
}

/// Stereographic projection `s y_(1..d) / (1 + y_(d+1))`, default guard.
pub fn unembed_simplified(y: &EmbeddedDataset, s: f64) -> Result<Dataset> {
    unembed_simplified_with_eps(y, s, SINGULARITY_EPS)
}

pub fn unembed_simplified_with_eps(y: &EmbeddedDataset, s: f64, eps: f64) -> Result<Dataset> {
    check_scale(s)?;
    if y.dim() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: y.dim(),
        });
    }
    y.map_rows(y.dim() - 1, |i, row, out| {
        unembed_simplified_into(i, row, s, eps, out)
    })
}

/// Single-point form of [`embed`].
pub fn embed_point(x: &[f64], params: &EmbeddingParams) -> Result<Vec<f64>> {
    check_dim(x.len(), params.data_dim())?;
    let mut out = vec![0.0; x.len() + 1];
    embed_into(x, params, &mut out);
    Ok(out)
}

/// Single-point form of [`unembed`]; errors report index 0.
pub fn unembed_point(y: &[f64], params: &EmbeddingParams) -> Result<Vec<f64>> {
    check_dim(y.len(), params.data_dim() + 1)?;
    let mut out = vec![0.0; params.data_dim()];
    unembed_into(0, y, params, SINGULARITY_EPS, &mut out)?;
    Ok(out)
}

/// Single-point form of [`embed_simplified`].
pub fn embed_simplified_point(x: &[f64], s: f64) -> Result<Vec<f64>> {
    check_scale(s)?;
    let mut out = vec![0.0; x.len() + 1];
    embed_simplified_into(x, s, &mut out);
    Ok(out)
}

/// Single-point form of [`unembed_simplified`]; errors report index 0.
pub fn unembed_simplified_point(y: &[f64], s: f64) -> Result<Vec<f64>> {
    check_scale(s)?;
    if y.len() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: y.len(),
        });
    }
    let mut out = vec![0.0; y.len() - 1];
    unembed_simplified_into(0, y, s, SINGULARITY_EPS, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    fn ds(rows: &[&[f64]]) -> Dataset {
        Dataset::from_rows(rows).unwrap()
    }

    #[test]
    fn plane_examples() {
        let p = EmbeddingParams::pole(2, 1.0).unwrap();
        assert_eq!(embed_plane(&ds(&[&[0.0, 0.0]]), &p).unwrap().row(0), &[0.0, 0.0, 1.0]);
        let p = EmbeddingParams::pole(2, 5.0).unwrap();
        assert_eq!(embed_plane(&ds(&[&[3.0, 4.0]]), &p).unwrap().row(0), &[3.0, 4.0, 5.0]);
        let p = EmbeddingParams::new(vec![0.6, 0.8], 2.0).unwrap();
        let lifted = embed_plane(&ds(&[&[1.0]]), &p).unwrap();
        assert!(close(lifted.row(0), &[1.0, 1.75], 1e-15));
        assert!((dot(lifted.row(0), p.v()) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn plane_rejects_dimension_mismatch() {
        let p = EmbeddingParams::pole(3, 1.0).unwrap();
        assert!(matches!(
            embed_plane(&ds(&[&[1.0, 2.0]]), &p),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn direction_validation() {
        assert!(matches!(
            EmbeddingParams::new(vec![1.0, 0.0], 1.0),
            Err(Error::InvalidDirection(_))
        ));
        assert!(matches!(
            EmbeddingParams::new(vec![0.0, 2.0], 1.0),
            Err(Error::InvalidDirection(_))
        ));
        assert!(matches!(
            EmbeddingParams::new(vec![0.0, 1.0], 0.0),
            Err(Error::InvalidScale(_))
        ));
        let p = EmbeddingParams::new(vec![0.6, 0.8 + 5e-10], 1.0).unwrap();
        assert!((norm(p.v()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inversion_sphere_examples() {
        let p = EmbeddingParams::pole(2, 1.0).unwrap();
        let out = embed_inversion_sphere(&ds(&[&[0.0, 0.0]]), &p).unwrap();
        assert!(close(out.row(0), &[0.0, 0.0, 1.0], 1e-15));

        let p = EmbeddingParams::pole(2, 5.0).unwrap();
        let out = embed_inversion_sphere(&ds(&[&[3.0, 4.0]]), &p).unwrap();
        assert!(close(out.row(0), &[0.06, 0.08, 0.1], 1e-15));

        // x = s v_(1..d) lifts to s v, which inverts to v / s.
        let p = EmbeddingParams::new(vec![0.0, 0.6, 0.8], 2.0).unwrap();
        let out = embed_inversion_sphere(&ds(&[&[0.0, 1.2]]), &p).unwrap();
        assert!(close(out.row(0), &[0.0, 0.3, 0.4], 1e-15));
    }

    #[test]
    fn embed_examples() {
        let p = EmbeddingParams::pole(2, 5.0).unwrap();
        let out = embed(&ds(&[&[3.0, 4.0]]), &p).unwrap();
        assert!(close(out.row(0), &[0.6, 0.8, 0.0], 1e-15));

        let p = EmbeddingParams::pole(2, 1.0).unwrap();
        let out = embed(&ds(&[&[0.0, 0.0], &[1e6, 0.0]]), &p).unwrap();
        assert_eq!(out.row(0), &[0.0, 0.0, 1.0]);
        assert!(close(out.row(1), &[0.0, 0.0, -1.0], 1e-5));
    }

    #[test]
    fn embed_general_pole_preimage_maps_to_v() {
        let v = vec![0.36, 0.48, 0.8];
        let p = EmbeddingParams::new(v.clone(), 3.0).unwrap();
        let x = [3.0 * 0.36, 3.0 * 0.48];
        let y = embed_point(&x, &p).unwrap();
        assert!(close(&y, &v, 1e-12));
    }

    #[test]
    fn unembed_examples() {
        let p = EmbeddingParams::pole(2, 7.0).unwrap();
        assert!(close(&unembed_point(&[0.0, 0.0, 1.0], &p).unwrap(), &[0.0, 0.0], 0.0));

        let p = EmbeddingParams::pole(2, 5.0).unwrap();
        assert!(close(&unembed_point(&[0.6, 0.8, 0.0], &p).unwrap(), &[3.0, 4.0], 1e-14));

        let p = EmbeddingParams::new(vec![0.0, 0.6, 0.8], 1.0).unwrap();
        assert!(close(&unembed_point(&[1.0, 0.0, 0.0], &p).unwrap(), &[1.0, 0.6], 1e-15));
    }

    #[test]
    fn unembed_rejects_pole() {
        let p = EmbeddingParams::pole(2, 1.0).unwrap();
        let y = EmbeddedDataset::new(ds(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, -1.0]])).unwrap();
        assert_eq!(unembed(&y, &p).unwrap_err(), Error::PointAtSouthPole { index: 1 });
        assert_eq!(
            unembed_simplified(&y, 1.0).unwrap_err(),
            Error::PointAtSouthPole { index: 1 }
        );
    }

    #[test]
    fn simplified_examples() {
        assert_eq!(embed_simplified_point(&[0.0, 0.0], 1.0).unwrap(), vec![0.0, 0.0, 1.0]);
        assert!(close(&embed_simplified_point(&[3.0, 4.0], 5.0).unwrap(), &[0.6, 0.8, 0.0], 1e-15));
        assert!(close(&embed_simplified_point(&[1.0], 1.0).unwrap(), &[1.0, 0.0], 1e-15));

        assert_eq!(unembed_simplified_point(&[0.0, 0.0, 1.0], 3.0).unwrap(), vec![0.0, 0.0]);
        assert!(close(&unembed_simplified_point(&[1.0, 0.0], 1.0).unwrap(), &[1.0], 1e-15));
        assert!(close(&unembed_simplified_point(&[0.8, -0.6], 1.0).unwrap(), &[2.0], 1e-15));
    }

    #[test]
    fn one_plus_last_is_stable_near_south_pole() {
        // y_last = -cos(t), ||y_(1..d)|| = sin(t); 1 + y_last = 2 sin^2(t/2).
        let t: f64 = 1e-6;
        let y = [t.sin(), -t.cos()];
        let exact = 2.0 * (t / 2.0).sin().powi(2);
        assert!((one_plus_last(&y) - exact).abs() / exact < 1e-12);
    }
}
