mod common;

use common::*;
use invsphere_core::{
    align_mean_to_pole, brute_force_knn, embed_simplified, generate, pipeline_embed, pipeline_unembed, recall_at_k,
    Dataset, GeneratorKind, KnnMetric, MetricContext, ScalePolicy, SweepConfig,
};
use proptest::prelude::*;

#[test]
fn bridged_knn_equals_euclidean_knn() {
    for (seed, d) in [(80u64, 2usize), (81, 10), (82, 32)] {
        let base = generate(GeneratorKind::Blobs, d, 2_000, 10, seed).unwrap();
        let queries = generate(GeneratorKind::Blobs, d, 50, 10, seed + 100).unwrap();
        let s = invsphere_core::scale::mean_norm(&base).unwrap();
        let eb = embed_simplified(&base, s).unwrap();
        let eq = embed_simplified(&queries, s).unwrap();
        let ctx = MetricContext::new(s).unwrap();
        for k in [1, 10, 100] {
            let truth = brute_force_knn(&base, &queries, k, KnnMetric::Euclidean).unwrap();
            let bridged = brute_force_knn(eb.as_dataset(), eq.as_dataset(), k, KnnMetric::BridgedOriginal(ctx)).unwrap();
            for (t, b) in truth.iter().zip(&bridged) {
                assert_eq!(t.neighbor_ids, b.neighbor_ids, "d={d} k={k} query {}", t.query_id);
                for (dt, db) in t.distances.iter().zip(&b.distances) {
                    assert!((dt - db).abs() <= 1e-9 * dt.max(1.0));
                }
            }
            assert_eq!(recall_at_k(&bridged, &truth, k).unwrap().recall, 1.0);
        }
    }
}

#[test]
fn cosine_and_euclidean_agree_on_the_sphere() {
    let base = generate(GeneratorKind::NormalizedBlobs, 8, 1_000, 10, 83).unwrap();
    let queries = generate(GeneratorKind::NormalizedBlobs, 8, 30, 10, 84).unwrap();
    let a = brute_force_knn(&base, &queries, 20, KnnMetric::Euclidean).unwrap();
    let b = brute_force_knn(&base, &queries, 20, KnnMetric::Cosine).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.neighbor_ids, y.neighbor_ids);
    }
}

#[test]
fn knn_results_are_sorted_and_deterministic() {
    let base = generate(GeneratorKind::Gaussian, 4, 500, 1, 85).unwrap();
    let queries = generate(GeneratorKind::Gaussian, 4, 40, 1, 86).unwrap();
    let a = brute_force_knn(&base, &queries, 15, KnnMetric::Euclidean).unwrap();
    let b = brute_force_knn(&base, &queries, 15, KnnMetric::Euclidean).unwrap();
    assert_eq!(a, b);
    for r in &a {
        assert_eq!(r.neighbor_ids.len(), 15);
        assert!(r.distances.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn generators_are_seeded() {
    for kind in [
        GeneratorKind::UniformBall,
        GeneratorKind::Gaussian,
        GeneratorKind::Blobs,
        GeneratorKind::NormalizedBlobs,
    ] {
        let a = generate(kind, 5, 300, 4, 1).unwrap();
        let b = generate(kind, 5, 300, 4, 1).unwrap();
        let c = generate(kind, 5, 300, 4, 2).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(generate(kind, 5, 1, 4, 1).unwrap().len(), 1);
    }
    let unit = generate(GeneratorKind::NormalizedBlobs, 7, 500, 10, 3).unwrap();
    assert!(unit.rows().all(|r| (norm(r) - 1.0).abs() <= 1e-12));
}

#[test]
fn rotation_preserves_distances() {
    let x = generate(GeneratorKind::NormalizedBlobs, 12, 300, 5, 87).unwrap();
    let (y, rot) = align_mean_to_pole(&x).unwrap();
    let m = y.mean().unwrap();
    let mn = norm(&m);
    assert!(m[..11].iter().all(|c| c.abs() <= 1e-9 * mn));
    assert!(m[11] > 0.0);
    for i in (0..x.len()).step_by(7) {
        for j in (0..x.len()).step_by(11) {
            assert!((dist(x.row(i), x.row(j)) - dist(y.row(i), y.row(j))).abs() <= 1e-9);
        }
        let mut back = y.row(i).to_vec();
        rot.apply_inverse(&mut back);
        assert!(dist(&back, x.row(i)) <= 1e-12);
    }
}

#[test]
fn pipeline_unembed_inverts_a_centered_embedding() {
    // +-pairs of points inside the unit ball keep the embedded mean on the
    // upper pole, so the alignment only rotates about the pole axis and the
    // unembedding is an isometry of the original points
    let mut rng = rng(88);
    let d = 6;
    let mut rows = Vec::new();
    for _ in 0..150 {
        let x: Vec<f64> = gaussian_vec(&mut rng, d).into_iter().map(|c| 0.2 * c).collect();
        rows.push(x.iter().map(|c| -c).collect::<Vec<f64>>());
        rows.push(x);
    }
    let y = Dataset::from_rows(&rows).unwrap();
    let embedded = embed_simplified(&y, 1.0).unwrap();
    assert!(embedded.mean().unwrap()[d] > 0.0);
    let out = pipeline_unembed(embedded.as_dataset(), 1.0).unwrap();
    assert!(out.dropped.is_empty());
    assert_eq!(out.data.len(), y.len());
    for i in (0..y.len()).step_by(5) {
        let (a, b) = (norm(out.data.row(i)), norm(y.row(i)));
        assert!((a - b).abs() <= 1e-9 * b.max(1.0), "{a} vs {b}");
        for j in (0..y.len()).step_by(13) {
            let want = dist(y.row(i), y.row(j));
            assert!((dist(out.data.row(i), out.data.row(j)) - want).abs() <= 1e-9 * want.max(1.0));
        }
    }
}

#[test]
fn pipeline_embed_policies() {
    let x = generate(GeneratorKind::Gaussian, 10, 300, 1, 89).unwrap();
    let cfg = SweepConfig::default();
    let swept = pipeline_embed(&x, &ScalePolicy::Sweep(cfg.clone())).unwrap();
    let direct = invsphere_core::sweep_scale(&x, &cfg).unwrap();
    assert_eq!(swept.s, direct.best_s);
    assert!(swept.embedded.rows().all(|r| (norm(r) - 1.0).abs() <= 1e-12));
    let by_norm = pipeline_embed(&x, &ScalePolicy::MeanNorm).unwrap();
    assert_eq!(by_norm.s, direct.mean_norm);
}

proptest! {
    #[test]
    fn recall_is_a_fraction(seed in any::<u64>(), k in 1usize..20) {
        let base = generate(GeneratorKind::Gaussian, 3, 60, 1, seed).unwrap();
        let q = generate(GeneratorKind::Gaussian, 3, 5, 1, seed ^ 1).unwrap();
        let truth = brute_force_knn(&base, &q, k, KnnMetric::Euclidean).unwrap();
        let other = brute_force_knn(&base, &q, k, KnnMetric::Cosine).unwrap();
        let rep = recall_at_k(&other, &truth, k).unwrap();
        prop_assert!((0.0..=1.0).contains(&rep.recall));
        prop_assert_eq!(recall_at_k(&truth, &truth, k).unwrap().recall, 1.0);
    }
}
