//! Hypervolume and Pareto-filter reference implementations.
//!
//! Points are (cost, availability) pairs under minimize-cost /
//! maximize-availability orientation. The grid method decomposes the
//! dominated region into cells via coordinate compression; the Monte Carlo
//! method samples the bounding box. Both are deliberately different
//! algorithms from the production sorted sweep.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// O(n^2) Pareto filter with exact-duplicate deduplication.
pub fn pareto_filter_naive(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut kept: Vec<(f64, f64)> = Vec::new();
    'outer: for &(c, a) in points {
        for &(oc, oa) in points {
            let dominates = oc <= c && oa >= a && (oc < c || oa > a);
            if dominates {
                continue 'outer;
            }
        }
        if !kept.contains(&(c, a)) {
            kept.push((c, a));
        }
    }
    kept
}

/// Exact rectangle-union area via coordinate compression.
pub fn hypervolume_grid(front: &[(f64, f64)], ref_point: (f64, f64)) -> f64 {
    let (ref_cost, ref_avail) = ref_point;
    let eligible: Vec<(f64, f64)> = front
        .iter()
        .copied()
        .filter(|&(c, a)| c < ref_cost && a > ref_avail)
        .collect();
    if eligible.is_empty() {
        return 0.0;
    }

    let mut xs: Vec<f64> = eligible.iter().map(|p| p.0).collect();
    xs.push(ref_cost);
    let mut ys: Vec<f64> = eligible.iter().map(|p| p.1).collect();
    ys.push(ref_avail);
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup();

    let mut area = 0.0;
    for xi in 0..xs.len() - 1 {
        for yi in 0..ys.len() - 1 {
            let (x_lo, x_hi) = (xs[xi], xs[xi + 1]);
            let (y_lo, y_hi) = (ys[yi], ys[yi + 1]);
            let covered = eligible.iter().any(|&(c, a)| c <= x_lo && a >= y_hi);
            if covered {
                area += (x_hi - x_lo) * (y_hi - y_lo);
            }
        }
    }
    area
}

/// Monte Carlo estimate of the dominated area with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloArea {
    pub estimate: f64,
    pub std_error: f64,
}

pub fn hypervolume_monte_carlo(
    front: &[(f64, f64)],
    ref_point: (f64, f64),
    samples: u64,
    seed: u64,
) -> MonteCarloArea {
    let (ref_cost, ref_avail) = ref_point;
    let eligible: Vec<(f64, f64)> = front
        .iter()
        .copied()
        .filter(|&(c, a)| c < ref_cost && a > ref_avail)
        .collect();
    if eligible.is_empty() {
        return MonteCarloArea {
            estimate: 0.0,
            std_error: 0.0,
        };
    }
    let min_cost = eligible.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_avail = eligible
        .iter()
        .map(|p| p.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let box_area = (ref_cost - min_cost) * (max_avail - ref_avail);
    if box_area <= 0.0 {
        return MonteCarloArea {
            estimate: 0.0,
            std_error: 0.0,
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits: u64 = 0;
    for _ in 0..samples {
        let x = min_cost + rng.gen::<f64>() * (ref_cost - min_cost);
        let y = ref_avail + rng.gen::<f64>() * (max_avail - ref_avail);
        if eligible.iter().any(|&(c, a)| c <= x && a >= y) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    MonteCarloArea {
        estimate: p * box_area,
        std_error: box_area * (p * (1.0 - p) / samples as f64).sqrt(),
    }
}
