//! Shared fixtures for the criterion benches.

use invsphere_core::{generate, Dataset, GeneratorKind};

pub fn gaussian(n: usize, d: usize, seed: u64) -> Dataset {
    generate(GeneratorKind::Gaussian, d, n, 0, seed).expect("valid generator parameters")
}
