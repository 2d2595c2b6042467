//! Scaling measurement: how per-sentence simplification time grows with
//! sentence length on right-branching synthetic trees.

use crate::engine::{simplify, EngineOptions};
use crate::synth::right_branching;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub tokens: usize,
    pub outputs: usize,
    pub median_ms: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log(median time) against log(token count).
    pub fitted_exponent: f64,
}

pub const DEFAULT_SIZES: [usize; 6] = [10, 20, 40, 80, 160, 320];

/// Runs the shipped ruleset over seeded right-branching trees of the given
/// token counts and fits a growth exponent to the median per-sentence times.
pub fn run_scaling_benchmark(sizes: &[usize], seed: u64, reps: usize) -> BenchReport {
    let rules = crate::default_ruleset();
    let opts = EngineOptions {
        max_generated: 8192,
        max_steps: 1_000_000,
        ..EngineOptions::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reps = reps.max(1);

    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let tree = right_branching(n, &mut rng);
        let mut outputs = 0;
        let mut times_ms: Vec<f64> = (0..reps)
            .map(|_| {
                let start = Instant::now();
                let result = simplify(&tree, rules, &opts);
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                assert!(result.error.is_none(), "benchmark tree tripped a budget");
                outputs = result.outputs.len();
                elapsed.max(1e-6)
            })
            .collect();
        times_ms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        rows.push(BenchRow {
            tokens: n,
            outputs,
            median_ms: times_ms[times_ms.len() / 2],
        });
    }

    BenchReport {
        seed,
        fitted_exponent: fit_exponent(&rows),
        rows,
    }
}

fn fit_exponent(rows: &[BenchRow]) -> f64 {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.tokens as f64).ln(), r.median_ms.ln()))
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let cov: f64 = points
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let var: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    cov / var
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_identical_across_runs_with_same_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for n in DEFAULT_SIZES {
            let ta = right_branching(n, &mut a);
            let tb = right_branching(n, &mut b);
            assert_eq!(ta, tb);
        }
    }

    #[test]
    fn fit_recovers_a_known_slope() {
        let rows: Vec<BenchRow> = [10usize, 20, 40, 80]
            .iter()
            .map(|&n| BenchRow {
                tokens: n,
                outputs: 0,
                median_ms: (n as f64).powi(2) * 0.001,
            })
            .collect();
        let got = fit_exponent(&rows);
        assert!((got - 2.0).abs() < 1e-9, "{got}");
    }
}
