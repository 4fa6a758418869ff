use std::cmp::Ordering;
use std::collections::HashSet;

use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::linalg::{cosine, norm_sq, sq_dist};
use crate::metric::MetricContext;

/// Distance used by [`brute_force_knn`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KnnMetric {
    /// Squared Euclidean distance.
    Euclidean,
    /// `1 - cos(a, b)`.
    Cosine,
    /// Squared Euclidean distance of the unembedded points, computed directly
    /// on embedded (unit-norm) points through the metric bridge.
    BridgedOriginal(MetricContext),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnnResult {
    pub query_id: usize,
    /// Base ids, nearest first; equal distances are ordered by ascending id.
    pub neighbor_ids: Vec<usize>,
    pub distances: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecallReport {
    pub k: usize,
    pub recall: f64,
    pub n_queries: usize,
}

/// Errors name the offending record: index 0 for the query, 1 for the base
/// point; the caller maps them to dataset indices.
fn distance(metric: &KnnMetric, q: &[f64], b: &[f64]) -> Result<f64> {
    match metric {
        KnnMetric::Euclidean => Ok(sq_dist(q, b)),
        KnnMetric::Cosine => cosine(q, b).map(|c| 1.0 - c).ok_or_else(|| {
            let index = if norm_sq(q) == 0.0 { 0 } else { 1 };
            Error::ZeroVector { index }
        }),
        KnnMetric::BridgedOriginal(ctx) => ctx.sqdist_original(q, b),
    }
}

fn locate(e: Error, query: usize, base: usize) -> Error {
    let pick = |side: usize| if side == 0 { query } else { base };
    match e {
        Error::PointAtSouthPole { index } => Error::PointAtSouthPole { index: pick(index) },
        Error::ZeroVector { index } => Error::ZeroVector { index: pick(index) },
        other => other,
    }
}

fn by_distance_then_id(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// Exact k nearest neighbors of every query in `base`, by exhaustive scan.
///
/// Queries are processed in parallel; results are in query order.
pub fn brute_force_knn(base: &Dataset, queries: &Dataset, k: usize, metric: KnnMetric) -> Result<Vec<KnnResult>> {
    if base.dim() != queries.dim() {
        return Err(Error::DimensionMismatch {
            expected: base.dim(),
            got: queries.dim(),
        });
    }
    if k == 0 || k > base.len() {
        return Err(Error::KTooLarge { k, n: base.len() });
    }
    let results: Vec<Result<KnnResult>> = (0..queries.len())
        .into_par_iter()
        .map(|qi| {
            let q = queries.row(qi);
            let mut cand = Vec::with_capacity(base.len());
            for (bi, row) in base.rows().enumerate() {
                let d = distance(&metric, q, row).map_err(|e| locate(e, qi, bi))?;
                cand.push((d, base.ids()[bi]));
            }
            if k < cand.len() {
                cand.select_nth_unstable_by(k - 1, by_distance_then_id);
                cand.truncate(k);
            }
            cand.sort_by(by_distance_then_id);
            Ok(KnnResult {
                query_id: queries.ids()[qi],
                neighbor_ids: cand.iter().map(|c| c.1).collect(),
                distances: cand.iter().map(|c| c.0).collect(),
            })
        })
        .collect();
    results.into_iter().collect()
}

/// Mean over queries of `|retrieved ∩ truth| / k`, using the first `k`
/// entries of each list.
pub fn recall_at_k(retrieved: &[KnnResult], truth: &[KnnResult], k: usize) -> Result<RecallReport> {
    if retrieved.len() != truth.len() {
        return Err(Error::Misaligned(format!(
            "{} retrieved lists for {} queries",
            retrieved.len(),
            truth.len()
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if truth.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut total = 0.0;
    for (r, t) in retrieved.iter().zip(truth) {
        if r.query_id != t.query_id {
            return Err(Error::Misaligned(format!(
                "query {} paired with truth for query {}",
                r.query_id, t.query_id
            )));
        }
        if t.neighbor_ids.len() < k {
            return Err(Error::Misaligned(format!(
                "truth for query {} has {} < k neighbors",
                t.query_id,
                t.neighbor_ids.len()
            )));
        }
        let truth_set: HashSet<usize> = t.neighbor_ids[..k].iter().copied().collect();
        let hits = r
            .neighbor_ids
            .iter()
            .take(k)
            .filter(|id| truth_set.contains(id))
            .count();
        total += hits as f64 / k as f64;
    }
    Ok(RecallReport {
        k,
        recall: total / truth.len() as f64,
        n_queries: truth.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(q: usize, ids: &[usize]) -> KnnResult {
        KnnResult {
            query_id: q,
            neighbor_ids: ids.to_vec(),
            distances: vec![0.0; ids.len()],
        }
    }

    #[test]
    fn query_in_base_finds_itself() {
        let base = Dataset::from_rows(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![3.0, 0.0]]).unwrap();
        let q = base.select(&[1]);
        let res = brute_force_knn(&base, &q, 1, KnnMetric::Euclidean).unwrap();
        assert_eq!(res[0].neighbor_ids, vec![1]);
        assert_eq!(res[0].distances, vec![0.0]);
    }

    #[test]
    fn two_points_sorted() {
        let base = Dataset::from_rows(&[vec![5.0], vec![1.0]]).unwrap();
        let q = Dataset::from_rows(&[vec![0.0]]).unwrap();
        let res = brute_force_knn(&base, &q, 2, KnnMetric::Euclidean).unwrap();
        assert_eq!(res[0].neighbor_ids, vec![1, 0]);
        assert_eq!(res[0].distances, vec![1.0, 25.0]);
    }

    #[test]
    fn ties_break_by_ascending_id() {
        let base = Dataset::with_ids(1, vec![1.0, -1.0, 1.0, -1.0], vec![9, 4, 2, 7]).unwrap();
        let q = Dataset::from_rows(&[vec![0.0]]).unwrap();
        let res = brute_force_knn(&base, &q, 3, KnnMetric::Euclidean).unwrap();
        assert_eq!(res[0].neighbor_ids, vec![2, 4, 7]);
    }

    #[test]
    fn errors() {
        let base = Dataset::from_rows(&[vec![1.0, 0.0]]).unwrap();
        let q3 = Dataset::from_rows(&[vec![1.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(
            brute_force_knn(&base, &q3, 1, KnnMetric::Euclidean),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            brute_force_knn(&base, &base, 2, KnnMetric::Euclidean),
            Err(Error::KTooLarge { k: 2, n: 1 })
        );
        let zero = Dataset::from_rows(&[vec![0.0, 0.0]]).unwrap();
        assert_eq!(
            brute_force_knn(&base, &zero, 1, KnnMetric::Cosine),
            Err(Error::ZeroVector { index: 0 })
        );
    }

    #[test]
    fn recall_cases() {
        let truth: Vec<KnnResult> = (0..3).map(|q| result(q, &(0..10).collect::<Vec<_>>())).collect();
        assert_eq!(recall_at_k(&truth, &truth, 10).unwrap().recall, 1.0);
        let disjoint: Vec<KnnResult> = (0..3).map(|q| result(q, &(10..20).collect::<Vec<_>>())).collect();
        assert_eq!(recall_at_k(&disjoint, &truth, 10).unwrap().recall, 0.0);
        let half: Vec<KnnResult> = (0..3).map(|q| result(q, &(5..15).collect::<Vec<_>>())).collect();
        let rep = recall_at_k(&half, &truth, 10).unwrap();
        assert_eq!(rep.recall, 0.5);
        assert_eq!(rep.n_queries, 3);
        assert!(matches!(recall_at_k(&half[..2], &truth, 10), Err(Error::Misaligned(_))));
    }
}
