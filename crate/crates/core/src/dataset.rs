//! Dense row-major point collections with stable per-point ids.

use std::collections::HashSet;
use std::ops::Deref;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;

/// Tolerance on `| ||y|| - 1 |` for points of an [`EmbeddedDataset`].
pub const SPHERE_TOLERANCE: f64 = 1e-9;

/// An indexed collection of `dim`-dimensional points stored row-major.
///
/// Every coordinate is finite. Ids default to `0..n` and are carried through
/// every per-point map unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    data: Vec<f64>,
    ids: Vec<usize>,
}

impl Dataset {
    /// Builds a dataset from a flat row-major buffer with ids `0..n`.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if !data.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: data.len() % dim,
            });
        }
        let n = data.len() / dim;
        Self::with_ids(dim, data, (0..n).collect())
    }

    pub fn with_ids(dim: usize, data: Vec<f64>, ids: Vec<usize>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if data.len() != ids.len() * dim {
            return Err(Error::Misaligned(format!(
                "{} ids for {} coordinates of dimension {}",
                ids.len(),
                data.len(),
                dim
            )));
        }
        if let Some(index) = data
            .chunks_exact(dim)
            .position(|row| row.iter().any(|x| !x.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        let mut seen = HashSet::with_capacity(ids.len());
        for &id in &ids {
            if !seen.insert(id) {
                return Err(Error::DuplicateId { id });
            }
        }
        Ok(Self { dim, data, ids })
    }

    /// Builds a dataset from explicit rows; all rows must share one length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyDataset)?;
        let dim = first.as_ref().len();
        let mut data = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.dim)
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_parts(self) -> (usize, Vec<f64>, Vec<usize>) {
        (self.dim, self.data, self.ids)
    }

    pub fn norms(&self) -> Vec<f64> {
        self.rows().map(linalg::norm).collect()
    }

    pub fn mean(&self) -> Result<Vec<f64>> {
        if self.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut mean = vec![0.0; self.dim];
        for row in self.rows() {
            for (m, x) in mean.iter_mut().zip(row) {
                *m += x;
            }
        }
        let n = self.len() as f64;
        mean.iter_mut().for_each(|m| *m /= n);
        Ok(mean)
    }

    /// Subset by row position, keeping the original ids.
    pub fn select(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.dim);
        let mut ids = Vec::with_capacity(rows.len());
        for &i in rows {
            data.extend_from_slice(self.row(i));
            ids.push(self.ids[i]);
        }
        Self {
            dim: self.dim,
            data,
            ids,
        }
    }

    /// Applies `f(row_index, input_row, output_row)` to every row, in parallel,
    /// producing a dataset of dimension `out_dim` with the same ids.
    ///
    /// When several rows fail, the error of the lowest row index is returned,
    /// so the outcome does not depend on scheduling.
    pub fn map_rows<F>(&self, out_dim: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, &[f64], &mut [f64]) -> Result<()> + Sync,
    {
        if out_dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        let mut out = vec![0.0; self.len() * out_dim];
        let first_err = out
            .par_chunks_mut(out_dim)
            .zip(self.data.par_chunks(self.dim))
            .enumerate()
            .filter_map(|(i, (o, x))| f(i, x, o).err().map(|e| (i, e)))
            .min_by_key(|(i, _)| *i);
        if let Some((_, e)) = first_err {
            return Err(e);
        }
        if let Some(index) = out
            .chunks_exact(out_dim)
            .position(|row| row.iter().any(|x| !x.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            dim: out_dim,
            data: out,
            ids: self.ids.clone(),
        })
    }

    pub(crate) fn from_parts_unchecked(dim: usize, data: Vec<f64>, ids: Vec<usize>) -> Self {
        debug_assert_eq!(data.len(), ids.len() * dim);
        Self { dim, data, ids }
    }
}

/// A dataset whose points lie on the unit sphere of its ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedDataset(Dataset);

impl EmbeddedDataset {
    /// Wraps `data` after checking every row has unit norm within `tol`.
    pub fn from_dataset(data: Dataset, tol: f64) -> Result<Self> {
        for (index, row) in data.rows().enumerate() {
            let norm = linalg::norm(row);
            if (norm - 1.0).abs() > tol {
                return Err(Error::NotOnSphere { index, norm });
            }
        }
        Ok(Self(data))
    }

    /// Wraps `data` with the default tolerance [`SPHERE_TOLERANCE`].
    pub fn new(data: Dataset) -> Result<Self> {
        Self::from_dataset(data, SPHERE_TOLERANCE)
    }

    pub(crate) fn from_trusted(data: Dataset) -> Self {
        Self(data)
    }

    pub fn as_dataset(&self) -> &Dataset {
        &self.0
    }

    pub fn into_dataset(self) -> Dataset {
        self.0
    }
}

impl Deref for EmbeddedDataset {
    type Target = Dataset;

    fn deref(&self) -> &Dataset {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        let err = Dataset::new(2, vec![0.0, 1.0, f64::NAN, 2.0]).unwrap_err();
        assert_eq!(err, Error::NonFinite { index: 1 });
    }

    #[test]
    fn rejects_duplicate_ids() {
        let err = Dataset::with_ids(1, vec![0.0, 1.0], vec![3, 3]).unwrap_err();
        assert_eq!(err, Error::DuplicateId { id: 3 });
    }

    #[test]
    fn ragged_rows() {
        let err = Dataset::from_rows(&[vec![1.0, 2.0], vec![1.0]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn map_rows_reports_lowest_failing_index() {
        let ds = Dataset::new(1, (0..1000).map(f64::from).collect()).unwrap();
        let err = ds
            .map_rows(1, |i, x, o| {
                if x[0] >= 500.0 {
                    Err(Error::ZeroVector { index: i })
                } else {
                    o[0] = x[0];
                    Ok(())
                }
            })
            .unwrap_err();
        assert_eq!(err, Error::ZeroVector { index: 500 });
    }

    #[test]
    fn map_rows_keeps_ids_and_order() {
        let ds = Dataset::with_ids(1, vec![1.0, 2.0, 3.0], vec![7, 5, 9]).unwrap();
        let out = ds
            .map_rows(2, |_, x, o| {
                o[0] = x[0];
                o[1] = -x[0];
                Ok(())
            })
            .unwrap();
        assert_eq!(out.ids(), &[7, 5, 9]);
        assert_eq!(out.row(2), &[3.0, -3.0]);
    }

    #[test]
    fn embedded_requires_unit_norm() {
        let ds = Dataset::from_rows(&[vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let err = EmbeddedDataset::new(ds).unwrap_err();
        assert!(matches!(err, Error::NotOnSphere { index: 1, .. }));
    }
}
