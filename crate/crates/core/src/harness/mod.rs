//! Synthetic data, exact k-NN search, recall measurement and the
//! preprocessing pipelines used to evaluate the embedding on search tasks.

mod generate;
mod knn;
mod pipeline;
mod rotation;

pub use generate::{generate, GeneratorKind};
pub use knn::{brute_force_knn, recall_at_k, KnnMetric, KnnResult, RecallReport};
pub use pipeline::{pipeline_embed, pipeline_unembed, PipelineEmbedding, PipelineUnembedding, ScalePolicy};
pub use rotation::{align_mean_to_pole, PoleRotation};
