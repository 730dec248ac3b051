//! Solution-set quality indicators for the bi-objective problem.
//!
//! All functions use the minimize-cost / maximize-availability orientation.
//! Hypervolume is the area dominated by a front relative to a reference
//! point; the reference point for a problem is the componentwise worst of
//! the pooled Pareto-optimal solutions and is reused for every hypervolume
//! computed on that problem.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ctmc::StrategyKind;
use crate::moea::dominates_objectives;
use crate::rap::{Evaluation, Phenotype};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("empty pool: {0}")]
    EmptyPool(String),
    #[error("undefined metric: {0}")]
    UndefinedMetric(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// One point in objective space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectivePoint {
    pub cost: f64,
    pub availability: f64,
}

/// Reference point for hypervolume computation; weakly dominated by every
/// point of the pooled Pareto set it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferencePoint {
    pub cost: f64,
    pub availability: f64,
}

/// Maximal nondominated subset, with exact duplicates removed.
pub fn pareto_filter(points: &[ObjectivePoint]) -> Vec<ObjectivePoint> {
    let mut sorted: Vec<ObjectivePoint> = points.to_vec();
    // Sort by cost ascending, availability descending: a sweep keeping the
    // running best availability then yields the nondominated set.
    sorted.sort_by(|a, b| {
        a.cost
            .partial_cmp(&b.cost)
            .unwrap()
            .then(b.availability.partial_cmp(&a.availability).unwrap())
    });
    let mut front: Vec<ObjectivePoint> = Vec::new();
    let mut best_availability = f64::NEG_INFINITY;
    for p in sorted {
        if p.availability > best_availability {
            front.push(p);
            best_availability = p.availability;
        }
    }
    front
}

/// Dominated area between a front and a reference point, by sorted sweep.
/// The input is Pareto-filtered internally; points that do not strictly
/// dominate the reference point contribute nothing.
pub fn hypervolume_2d(points: &[ObjectivePoint], reference: ReferencePoint) -> f64 {
    let front: Vec<ObjectivePoint> = pareto_filter(points)
        .into_iter()
        .filter(|p| p.cost < reference.cost && p.availability > reference.availability)
        .collect();
    // Filtered front is sorted by cost ascending, availability ascending.
    let mut area = 0.0;
    for (i, p) in front.iter().enumerate() {
        let next_cost = if i + 1 < front.len() {
            front[i + 1].cost
        } else {
            reference.cost
        };
        area += (next_cost - p.cost) * (p.availability - reference.availability);
    }
    area
}

/// Componentwise worst of the pooled Pareto-optimal points: maximum cost and
/// minimum availability. The pool is Pareto-filtered first, so dominated
/// points never move the reference.
pub fn derive_reference(pool: &[ObjectivePoint]) -> Result<ReferencePoint, MetricsError> {
    if pool.is_empty() {
        return Err(MetricsError::EmptyPool(
            "cannot derive a reference point from an empty pool".into(),
        ));
    }
    let front = pareto_filter(pool);
    let cost = front.iter().map(|p| p.cost).fold(f64::NEG_INFINITY, f64::max);
    let availability = front
        .iter()
        .map(|p| p.availability)
        .fold(f64::INFINITY, f64::min);
    Ok(ReferencePoint { cost, availability })
}

/// Relative distance between a hypervolume and the best-found hypervolume:
/// `1 - hv / hv_best`, so 1e-2 means 99% of the best value.
pub fn relative_distance(hv: f64, hv_best: f64) -> Result<f64, MetricsError> {
    if !(hv_best > 0.0) {
        return Err(MetricsError::UndefinedMetric(
            "relative distance needs a positive best hypervolume".into(),
        ));
    }
    if hv < 0.0 || hv > hv_best {
        return Err(MetricsError::InvalidInput(format!(
            "hypervolume {hv} outside [0, {hv_best}]"
        )));
    }
    Ok(1.0 - hv / hv_best)
}

/// Which phenotypes a proportion tabulation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProportionScope {
    /// Every phenotype in the pool.
    All,
    /// Only phenotypes whose evaluations are nondominated within the pool.
    ParetoOnly,
}

/// Fraction of subsystem-level assignments per strategy, ordered
/// cold/warm/mixed/hot. Each phenotype contributes one assignment per
/// subsystem; fractions sum to one.
pub fn strategy_proportions(
    pool: &[(Phenotype, Evaluation)],
    scope: ProportionScope,
) -> Result<[f64; 4], MetricsError> {
    if pool.is_empty() {
        return Err(MetricsError::EmptyPool(
            "cannot tabulate strategies over an empty pool".into(),
        ));
    }
    let selected: Vec<&Phenotype> = match scope {
        ProportionScope::All => pool.iter().map(|(p, _)| p).collect(),
        ProportionScope::ParetoOnly => pool
            .iter()
            .enumerate()
            .filter(|(i, (_, eval))| {
                !pool
                    .iter()
                    .enumerate()
                    .any(|(j, (_, other))| j != *i && dominates_objectives(other, eval))
            })
            .map(|(_, (p, _))| p)
            .collect(),
    };
    let mut counts = [0u64; 4];
    for phenotype in &selected {
        for strategy in &phenotype.strategies {
            counts[strategy.code() as usize] += 1;
        }
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(MetricsError::EmptyPool("pool holds no assignments".into()));
    }
    Ok(counts.map(|c| c as f64 / total as f64))
}

/// Convenience accessor pairing strategies with their fractions.
pub fn proportions_by_strategy(fractions: [f64; 4]) -> [(StrategyKind, f64); 4] {
    [
        (StrategyKind::Cold, fractions[0]),
        (StrategyKind::Warm, fractions[1]),
        (StrategyKind::Mixed, fractions[2]),
        (StrategyKind::Hot, fractions[3]),
    ]
}
