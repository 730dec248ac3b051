//! Redundancy allocation problem instances, encodings, and evaluation.
//!
//! An instance fixes a topology, one parameter row per subsystem, and a
//! system weight limit. A solution assigns each subsystem a spare count
//! (0..=255) and a standby strategy; the objectives are total component cost
//! (minimize) and system availability (maximize) subject to the weight limit.
//!
//! Two genotype encodings are supported. The binary encoding packs each
//! subsystem into 10 bits: 8 spare-count bits (most significant first)
//! followed by 2 strategy bits (00 cold, 01 warm, 10 mixed, 11 hot). The real
//! encoding keeps one spare coordinate in [0, 255] and one strategy
//! coordinate in [-0.5, 3.5] per subsystem, decoded by rounding to the
//! nearest integer (ties round up) after clamping into range.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ctmc::{AvailabilityCache, CtmcError, StrategyKind, SubsystemParams};
use crate::structures::{AvailabilityVector, CaseStudyId, StructureError};

#[derive(Debug, Error)]
pub enum RapError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid genotype: {0}")]
    InvalidGenotype(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Ctmc(#[from] CtmcError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// One problem instance: topology, per-subsystem parameters, weight limit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(rename = "case_id")]
    pub case: CaseStudyId,
    #[serde(rename = "W")]
    pub weight_limit: f64,
    pub subsystems: Vec<SubsystemParams>,
}

impl InstanceSpec {
    /// Validates subsystem count, parameter ranges, and feasibility of the
    /// base configuration (no spares).
    pub fn validate(&self) -> Result<(), RapError> {
        let m = self.case.subsystem_count();
        if self.subsystems.len() != m {
            return Err(RapError::InvalidInstance(format!(
                "{} expects {m} subsystems, got {}",
                self.case,
                self.subsystems.len()
            )));
        }
        for (i, params) in self.subsystems.iter().enumerate() {
            params
                .validate()
                .map_err(|e| RapError::InvalidInstance(format!("subsystem {i}: {e}")))?;
        }
        if !(self.weight_limit > 0.0) {
            return Err(RapError::InvalidInstance(
                "weight limit must be positive".into(),
            ));
        }
        let base_weight: f64 = self
            .subsystems
            .iter()
            .map(|p| p.weight * f64::from(p.k))
            .sum();
        if base_weight > self.weight_limit {
            return Err(RapError::InvalidInstance(format!(
                "base configuration weighs {base_weight}, above the limit {}",
                self.weight_limit
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, RapError> {
        let inst: InstanceSpec = serde_json::from_str(text)
            .map_err(|e| RapError::InvalidInstance(format!("malformed instance JSON: {e}")))?;
        inst.validate()?;
        Ok(inst)
    }

    /// Number of subsystems.
    pub fn subsystem_count(&self) -> usize {
        self.subsystems.len()
    }

    /// Length of the binary genotype: 10 bits per subsystem.
    pub fn binary_length(&self) -> usize {
        10 * self.subsystems.len()
    }

    /// Short identifier such as `cs1_w60`.
    pub fn id(&self) -> String {
        format!(
            "{}_w{}",
            self.case.name().to_ascii_lowercase(),
            self.weight_limit
        )
    }
}

/// Weight limits published for each topology.
pub fn published_weight_limits(case: CaseStudyId) -> [f64; 4] {
    match case {
        CaseStudyId::Cs1 | CaseStudyId::Cs2 | CaseStudyId::Cs3 => [60.0, 80.0, 100.0, 120.0],
        CaseStudyId::Cs4 => [100.0, 120.0, 140.0, 160.0],
        CaseStudyId::Cs5 => [50.0, 60.0, 70.0, 80.0],
        CaseStudyId::Cs6 => [80.0, 100.0, 120.0, 140.0],
    }
}

macro_rules! bundled_table {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../instances/", $name, ".json")))),*]
    };
}

/// Bundled instance files, keyed by id.
pub const BUNDLED_INSTANCES: &[(&str, &str)] = bundled_table![
    "cs1_w60", "cs1_w80", "cs1_w100", "cs1_w120", //
    "cs2_w60", "cs2_w80", "cs2_w100", "cs2_w120", //
    "cs3_w60", "cs3_w80", "cs3_w100", "cs3_w120", //
    "cs4_w100", "cs4_w120", "cs4_w140", "cs4_w160", //
    "cs5_w50", "cs5_w60", "cs5_w70", "cs5_w80", //
    "cs6_w80", "cs6_w100", "cs6_w120", "cs6_w140",
];

/// Loads a bundled instance by id (e.g. `cs3_w100`) and checks that its
/// weight limit is one of the published values for the topology.
pub fn bundled_instance(id: &str) -> Result<InstanceSpec, RapError> {
    let (_, text) = BUNDLED_INSTANCES
        .iter()
        .find(|(name, _)| *name == id)
        .ok_or_else(|| {
            RapError::InvalidInstance(format!(
                "unknown bundled instance {id:?}; available: {}",
                BUNDLED_INSTANCES
                    .iter()
                    .map(|(n, _)| *n)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })?;
    let inst = InstanceSpec::from_json(text)?;
    if !published_weight_limits(inst.case).contains(&inst.weight_limit) {
        return Err(RapError::InvalidInstance(format!(
            "bundled instance {id} carries unpublished weight limit {}",
            inst.weight_limit
        )));
    }
    Ok(inst)
}

/// Binary genotype: 10 bits per subsystem.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryGenotype {
    pub bits: Vec<bool>,
}

impl BinaryGenotype {
    pub fn new(bits: Vec<bool>) -> Result<Self, RapError> {
        if bits.is_empty() || bits.len() % 10 != 0 {
            return Err(RapError::InvalidGenotype(format!(
                "binary genotype length {} is not a positive multiple of 10",
                bits.len()
            )));
        }
        Ok(BinaryGenotype { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Real-valued genotype: per subsystem one spare coordinate in [0, 255] and
/// one strategy coordinate in [-0.5, 3.5].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealGenotype {
    pub spares: Vec<f64>,
    pub strategy: Vec<f64>,
}

pub const SPARE_RANGE: (f64, f64) = (0.0, 255.0);
pub const STRATEGY_RANGE: (f64, f64) = (-0.5, 3.5);

/// A decoded solution: spare count and strategy per subsystem.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phenotype {
    pub spares: Vec<u8>,
    pub strategies: Vec<StrategyKind>,
}

impl Phenotype {
    pub fn len(&self) -> usize {
        self.spares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spares.is_empty()
    }

    /// Component count of subsystem `i`: the threshold plus the spares.
    pub fn component_count(&self, inst: &InstanceSpec, i: usize) -> u32 {
        inst.subsystems[i].k + u32::from(self.spares[i])
    }
}

/// Objective values of one phenotype.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub cost: f64,
    pub availability: f64,
    pub weight: f64,
    /// Weight-limit excess; zero iff the solution is feasible.
    pub violation: f64,
}

impl Evaluation {
    pub fn is_feasible(&self) -> bool {
        self.violation == 0.0
    }
}

/// Decodes a binary genotype: per subsystem, 8 spare bits (MSB first) and a
/// 2-bit strategy code.
pub fn decode_binary(genotype: &BinaryGenotype) -> Phenotype {
    let m = genotype.bits.len() / 10;
    let mut spares = Vec::with_capacity(m);
    let mut strategies = Vec::with_capacity(m);
    for chunk in genotype.bits.chunks_exact(10) {
        let mut value: u8 = 0;
        for &bit in &chunk[..8] {
            value = (value << 1) | u8::from(bit);
        }
        spares.push(value);
        let code = (u8::from(chunk[8]) << 1) | u8::from(chunk[9]);
        strategies.push(StrategyKind::from_code(code).expect("2-bit code is always valid"));
    }
    Phenotype { spares, strategies }
}

/// Inverse of `decode_binary`.
pub fn encode_binary(phenotype: &Phenotype) -> BinaryGenotype {
    let mut bits = Vec::with_capacity(phenotype.len() * 10);
    for i in 0..phenotype.len() {
        let spare = phenotype.spares[i];
        for shift in (0..8).rev() {
            bits.push(spare >> shift & 1 == 1);
        }
        let code = phenotype.strategies[i].code();
        bits.push(code >> 1 & 1 == 1);
        bits.push(code & 1 == 1);
    }
    BinaryGenotype { bits }
}

/// Rounds to the nearest integer with ties going up, then clamps.
fn round_clamped(x: f64, lo: f64, hi: f64, out_lo: i64, out_hi: i64) -> i64 {
    let clamped = x.clamp(lo, hi);
    let rounded = (clamped + 0.5).floor() as i64;
    rounded.clamp(out_lo, out_hi)
}

/// Decodes a real genotype by clamping each coordinate into its range and
/// rounding to the nearest integer (ties round up).
pub fn decode_real(genotype: &RealGenotype) -> Result<Phenotype, RapError> {
    if genotype.spares.len() != genotype.strategy.len() {
        return Err(RapError::InvalidGenotype(format!(
            "spare and strategy vectors differ in length: {} vs {}",
            genotype.spares.len(),
            genotype.strategy.len()
        )));
    }
    let spares = genotype
        .spares
        .iter()
        .map(|&x| round_clamped(x, SPARE_RANGE.0, SPARE_RANGE.1, 0, 255) as u8)
        .collect();
    let strategies = genotype
        .strategy
        .iter()
        .map(|&x| {
            let code = round_clamped(x, STRATEGY_RANGE.0, STRATEGY_RANGE.1, 0, 3) as u8;
            StrategyKind::from_code(code).expect("clamped code is always valid")
        })
        .collect();
    Ok(Phenotype { spares, strategies })
}

/// Objective evaluator with a shared availability memo.
///
/// Evaluation is a pure function of (instance, phenotype); the memo only
/// avoids repeated steady-state solves and never changes results. Clones
/// share the cache, so one evaluator can serve many concurrent runs on the
/// same parameter rows.
#[derive(Debug, Clone)]
pub struct Evaluator {
    inst: Arc<InstanceSpec>,
    cache: AvailabilityCache,
}

impl Evaluator {
    pub fn new(inst: InstanceSpec) -> Self {
        Evaluator {
            inst: Arc::new(inst),
            cache: AvailabilityCache::new(),
        }
    }

    /// Shares an existing availability cache (keyed by parameters, so
    /// instances with common subsystem rows reuse each other's solves).
    pub fn with_cache(inst: InstanceSpec, cache: AvailabilityCache) -> Self {
        Evaluator {
            inst: Arc::new(inst),
            cache,
        }
    }

    pub fn instance(&self) -> &InstanceSpec {
        &self.inst
    }

    pub fn cache(&self) -> &AvailabilityCache {
        &self.cache
    }

    /// Cost, system availability, weight, and constraint violation of a
    /// phenotype.
    pub fn evaluate(&self, phenotype: &Phenotype) -> Result<Evaluation, RapError> {
        let m = self.inst.subsystem_count();
        if phenotype.len() != m {
            return Err(RapError::InvalidGenotype(format!(
                "phenotype has {} subsystems, instance {} expects {m}",
                phenotype.len(),
                self.inst.case
            )));
        }
        let mut cost = 0.0;
        let mut weight = 0.0;
        let mut avail = Vec::with_capacity(m);
        for i in 0..m {
            let params = &self.inst.subsystems[i];
            let n = phenotype.component_count(&self.inst, i);
            cost += params.cost * f64::from(n);
            weight += params.weight * f64::from(n);
            avail.push(self.cache.availability(params, n, phenotype.strategies[i])?);
        }
        let availability = crate::structures::system_availability(
            self.inst.case,
            &AvailabilityVector::new(avail)?,
        )?;
        let violation = (weight - self.inst.weight_limit).max(0.0);
        Ok(Evaluation {
            cost,
            availability,
            weight,
            violation,
        })
    }

    /// Evaluates a batch in parallel; results keep input order.
    pub fn evaluate_batch(&self, phenotypes: &[Phenotype]) -> Result<Vec<Evaluation>, RapError> {
        phenotypes
            .par_iter()
            .map(|p| self.evaluate(p))
            .collect::<Result<Vec<_>, _>>()
    }
}

/// Scaled binomial initialization: individual `i` of `n_pop` draws every bit
/// as one with probability `i / (n_pop - 1)`, so the population ramps from
/// the all-zero to the all-one genotype.
pub fn sbi_init<R: Rng>(
    n_pop: usize,
    inst: &InstanceSpec,
    rng: &mut R,
) -> Result<Vec<BinaryGenotype>, RapError> {
    if n_pop < 2 {
        return Err(RapError::InvalidConfig(format!(
            "scaled binomial initialization needs at least 2 individuals, got {n_pop}"
        )));
    }
    let len = inst.binary_length();
    let mut population = Vec::with_capacity(n_pop);
    for i in 0..n_pop {
        let p = i as f64 / (n_pop - 1) as f64;
        let bits = (0..len).map(|_| rng.gen_bool(p)).collect();
        population.push(BinaryGenotype { bits });
    }
    Ok(population)
}

/// Uniform random binary population: every bit is a fair coin.
pub fn random_init_binary<R: Rng>(
    n_pop: usize,
    inst: &InstanceSpec,
    rng: &mut R,
) -> Vec<BinaryGenotype> {
    let len = inst.binary_length();
    (0..n_pop)
        .map(|_| BinaryGenotype {
            bits: (0..len).map(|_| rng.gen_bool(0.5)).collect(),
        })
        .collect()
}

/// Uniform random real population over the coordinate ranges.
pub fn random_init_real<R: Rng>(
    n_pop: usize,
    inst: &InstanceSpec,
    rng: &mut R,
) -> Vec<RealGenotype> {
    let m = inst.subsystem_count();
    (0..n_pop)
        .map(|_| RealGenotype {
            spares: (0..m)
                .map(|_| rng.gen_range(SPARE_RANGE.0..=SPARE_RANGE.1))
                .collect(),
            strategy: (0..m)
                .map(|_| rng.gen_range(STRATEGY_RANGE.0..=STRATEGY_RANGE.1))
                .collect(),
        })
        .collect()
}
