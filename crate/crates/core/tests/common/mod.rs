#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

pub fn unit_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vec(rng, n);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Unit vector in `R^(d+1)` whose last coordinate has magnitude at least `min_last`.
pub fn direction(rng: &mut ChaCha8Rng, d: usize, min_last: f64) -> Vec<f64> {
    loop {
        let v = unit_vec(rng, d + 1);
        if v[d].abs() >= min_last {
            return v;
        }
    }
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Point on `{ y : ||y|| = 1, <y, p> = b }`.
pub fn cap_boundary_point(rng: &mut ChaCha8Rng, p: &[f64], b: f64) -> Vec<f64> {
    loop {
        let g = gaussian_vec(rng, p.len());
        let along: f64 = g.iter().zip(p).map(|(a, c)| a * c).sum();
        let t: Vec<f64> = g.iter().zip(p).map(|(a, c)| a - along * c).collect();
        let tn = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        if tn < 1e-6 {
            continue;
        }
        let w = (1.0 - b * b).sqrt();
        return p.iter().zip(&t).map(|(pi, ti)| b * pi + w * ti / tn).collect();
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn max_rel_err(got: &[f64], want: &[f64]) -> f64 {
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs() / w.abs().max(1.0))
        .fold(0.0, f64::max)
}
