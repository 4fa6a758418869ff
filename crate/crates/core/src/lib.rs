//! Inversion-based spherical embeddings of Euclidean data.
//!
//! The crate maps points of `R^d` onto the unit sphere of `R^(d+1)` by
//! lifting them onto an affine hyperplane and inverting through the unit
//! sphere ([`geometry`]), converts between hyperspherical caps on that
//! sphere and balls or spheroids in the original space ([`duality`]),
//! translates inner products and squared distances between the two spaces in
//! closed form ([`metric`]), and picks the embedding scale by maximizing an
//! angle-based intrinsic dimensionality estimate ([`scale`]). The
//! [`harness`] module holds the data generators, exact k-NN search and the
//! preprocessing pipelines used to evaluate all of this.
//!
//! ```
//! use invsphere_core::{embed_simplified, unembed_simplified, Dataset};
//!
//! let x = Dataset::from_rows(&[vec![3.0, 4.0]]).unwrap();
//! let y = embed_simplified(&x, 5.0).unwrap();
//! assert!((y.row(0)[0] - 0.6).abs() < 1e-15);
//! let back = unembed_simplified(&y, 5.0).unwrap();
//! assert!((back.row(0)[1] - 4.0).abs() < 1e-12);
//! ```

pub mod dataset;
pub mod duality;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod metric;
pub mod scale;

pub use dataset::{Dataset, EmbeddedDataset, SPHERE_TOLERANCE};
pub use duality::{
    ball_contains, ball_to_cap, cap_contains, cap_to_ball, cap_to_spheroid, AxisAlignedSpheroid, Ball, Cap,
    DualityScalars,
};
pub use error::{Error, Result};
pub use geometry::{
    embed, embed_inversion_sphere, embed_plane, embed_simplified, unembed, unembed_simplified, EmbeddingParams,
    SINGULARITY_EPS,
};
pub use harness::{
    align_mean_to_pole, brute_force_knn, generate, pipeline_embed, pipeline_unembed, recall_at_k, GeneratorKind,
    KnnMetric, KnnResult, PoleRotation, RecallReport, ScalePolicy,
};
pub use metric::{hemisphere_min_scale, MetricContext};
pub use scale::{abid, mean_center, sweep_scale, AbidEstimate, NormCenter, SweepConfig, SweepResult};
