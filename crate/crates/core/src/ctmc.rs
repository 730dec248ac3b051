//! Continuous-time Markov chains for repairable k-out-of-n:G subsystems.
//!
//! A subsystem holds `n` homogeneous components of which at least `k` must be
//! active to function. Spares wait in one of four standby regimes:
//!
//! * **cold** — spares cannot fail while inactive, slow activation (`sigma_cold`);
//! * **warm** — spares fail at the reduced rate `lambda_standby`, faster
//!   activation (`sigma_warm`);
//! * **mixed** — one spare is kept active (k+1 active when possible), the rest
//!   wait in warm standby;
//! * **hot** — spares run at the active failure rate and switch over
//!   instantaneously.
//!
//! The chain state is the component-count triple (active, standby, failed).
//! Failed components are repaired at rate `mu` and return to the standby
//! pool (hot standby: directly back to service). Steady-state probabilities
//! come from a dense direct solve of the balance equations, and subsystem
//! availability is the probability mass on working states.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from model construction and steady-state solving.
#[derive(Debug, Error)]
pub enum CtmcError {
    #[error("invalid configuration: need n >= k >= 1, got n = {n}, k = {k}")]
    InvalidConfiguration { n: u32, k: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

/// Redundancy strategy of a subsystem. The integer codes are fixed and shared
/// with the genotype encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "StrategyRepr", into = "u8")]
pub enum StrategyKind {
    Cold = 0,
    Warm = 1,
    Mixed = 2,
    Hot = 3,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 4] = [
        StrategyKind::Cold,
        StrategyKind::Warm,
        StrategyKind::Mixed,
        StrategyKind::Hot,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Result<Self, CtmcError> {
        match code {
            0 => Ok(StrategyKind::Cold),
            1 => Ok(StrategyKind::Warm),
            2 => Ok(StrategyKind::Mixed),
            3 => Ok(StrategyKind::Hot),
            other => Err(CtmcError::InvalidParameters(format!(
                "strategy code {other} out of range 0..=3"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Cold => "cold",
            StrategyKind::Warm => "warm",
            StrategyKind::Mixed => "mixed",
            StrategyKind::Hot => "hot",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<StrategyKind> for u8 {
    fn from(s: StrategyKind) -> u8 {
        s.code()
    }
}

/// Accepts either the numeric code or the strategy name in serialized form.
#[derive(Deserialize)]
#[serde(untagged)]
enum StrategyRepr {
    Code(u8),
    Name(String),
}

impl TryFrom<StrategyRepr> for StrategyKind {
    type Error = String;

    fn try_from(repr: StrategyRepr) -> Result<Self, String> {
        match repr {
            StrategyRepr::Code(c) => StrategyKind::from_code(c).map_err(|e| e.to_string()),
            StrategyRepr::Name(s) => match s.as_str() {
                "cold" => Ok(StrategyKind::Cold),
                "warm" => Ok(StrategyKind::Warm),
                "mixed" => Ok(StrategyKind::Mixed),
                "hot" => Ok(StrategyKind::Hot),
                other => Err(format!("unknown strategy {other:?}")),
            },
        }
    }
}

/// Failure, switching, repair, cost, and weight parameters of one subsystem.
///
/// All rates are per unit time. `cost` and `weight` are the per-component
/// cost and weight used by the allocation objectives; they do not influence
/// availability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubsystemParams {
    /// Minimum number of active components for the subsystem to function.
    pub k: u32,
    /// Failure rate of an active component.
    pub lambda_working: f64,
    /// Failure rate of a warm standby component.
    pub lambda_standby: f64,
    /// Activation rate of a cold standby component.
    pub sigma_cold: f64,
    /// Activation rate of a warm standby component.
    pub sigma_warm: f64,
    /// Repair rate of a failed component.
    pub mu: f64,
    /// Unit cost of one component.
    #[serde(rename = "c")]
    pub cost: f64,
    /// Unit weight of one component.
    #[serde(rename = "w")]
    pub weight: f64,
}

impl SubsystemParams {
    /// Checks rate positivity and the standby orderings
    /// `lambda_working > lambda_standby` and `sigma_warm > sigma_cold`.
    pub fn validate(&self) -> Result<(), CtmcError> {
        if self.k < 1 {
            return Err(CtmcError::InvalidParameters("k must be >= 1".into()));
        }
        let rates = [
            ("lambda_working", self.lambda_working),
            ("lambda_standby", self.lambda_standby),
            ("sigma_cold", self.sigma_cold),
            ("sigma_warm", self.sigma_warm),
            ("mu", self.mu),
        ];
        for (name, value) in rates {
            if !(value > 0.0) || !value.is_finite() {
                return Err(CtmcError::InvalidParameters(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        if self.lambda_working <= self.lambda_standby {
            return Err(CtmcError::InvalidParameters(format!(
                "lambda_working ({}) must exceed lambda_standby ({})",
                self.lambda_working, self.lambda_standby
            )));
        }
        if self.sigma_warm <= self.sigma_cold {
            return Err(CtmcError::InvalidParameters(format!(
                "sigma_warm ({}) must exceed sigma_cold ({})",
                self.sigma_warm, self.sigma_cold
            )));
        }
        if !(self.cost >= 0.0) || !(self.weight >= 0.0) {
            return Err(CtmcError::InvalidParameters(
                "cost and weight must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// One chain state: component counts by condition. Counts always sum to `n`
/// of the owning model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MarkovState {
    pub active: u32,
    pub standby: u32,
    pub failed: u32,
}

/// Enumerated state space for one (strategy, n, k) combination.
///
/// States are listed working-first: first every state with k+1 active
/// components (mixed strategy only), then the states with exactly k active,
/// then the failure states with k-1 active. Hot standby collapses the triple
/// to (functioning, 0, failed) since switching is instantaneous.
#[derive(Debug, Clone)]
pub struct StateSpace {
    pub strategy: StrategyKind,
    pub n: u32,
    pub k: u32,
    states: Vec<MarkovState>,
    working_count: usize,
}

impl StateSpace {
    pub fn states(&self) -> &[MarkovState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of working states; these occupy the front of `states()`.
    pub fn working_count(&self) -> usize {
        self.working_count
    }

    /// A state is working iff at least k components are active.
    pub fn is_working(&self, index: usize) -> bool {
        index < self.working_count
    }
}

/// Enumerates the state space for a k-out-of-n:G subsystem under `strategy`.
///
/// State counts by strategy: cold/warm use n-k+1 working and n-k+2 failure
/// states, mixed uses 2(n-k)+1 working and n-k+2 failure states, hot uses
/// n-k+1 working states and a single failure state.
pub fn build_state_space(
    strategy: StrategyKind,
    n: u32,
    k: u32,
) -> Result<StateSpace, CtmcError> {
    if k < 1 || n < k {
        return Err(CtmcError::InvalidConfiguration { n, k });
    }
    let spare = n - k;
    let mut states = Vec::new();

    if strategy == StrategyKind::Hot {
        // (functioning, 0, failed) from n functioning down to k-1.
        for j in 0..=spare + 1 {
            states.push(MarkovState {
                active: n - j,
                standby: 0,
                failed: j,
            });
        }
        return Ok(StateSpace {
            strategy,
            n,
            k,
            states,
            working_count: (spare + 1) as usize,
        });
    }

    // Working states with k+1 active (mixed strategy only).
    if strategy == StrategyKind::Mixed {
        for j in 0..spare {
            states.push(MarkovState {
                active: k + 1,
                standby: j,
                failed: spare - j - 1,
            });
        }
    }
    // Working states with exactly k active.
    for j in 0..=spare {
        states.push(MarkovState {
            active: k,
            standby: j,
            failed: spare - j,
        });
    }
    let working_count = states.len();
    // Failure states with k-1 active.
    for j in 0..=spare + 1 {
        states.push(MarkovState {
            active: k - 1,
            standby: j,
            failed: spare - j + 1,
        });
    }

    Ok(StateSpace {
        strategy,
        n,
        k,
        states,
        working_count,
    })
}

/// Fills the transition-rate matrix for an enumerated state space.
///
/// Off-diagonal rates fall into four classes: failure of an active component
/// (`active * lambda_working`), failure of a warm standby component
/// (`standby * lambda_standby`; never fires for cold standby or from failure
/// states), activation of standby components
/// (`min(min(standby, 2), k+1-active) * sigma`), and repair
/// (`failed * mu`, returning the component to the standby pool). Hot standby
/// transitions reduce to failures at `functioning * lambda_working` and
/// repairs at `failed * mu` straight back into service. Diagonals are the
/// negative row sums.
pub fn build_transition_matrix(
    space: &StateSpace,
    params: &SubsystemParams,
) -> Result<DMatrix<f64>, CtmcError> {
    params.validate()?;
    if params.k != space.k {
        return Err(CtmcError::InvalidParameters(format!(
            "parameter k = {} does not match state space k = {}",
            params.k, space.k
        )));
    }

    let states = space.states();
    let dim = states.len();
    let mut q = DMatrix::zeros(dim, dim);
    let k = space.k;

    if space.strategy == StrategyKind::Hot {
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let (a, b) = (states[i], states[j]);
                if a.active == b.active + 1 && b.failed == a.failed + 1 {
                    q[(i, j)] = f64::from(a.active) * params.lambda_working;
                } else if a.failed == b.failed + 1 && b.active == a.active + 1 {
                    q[(i, j)] = f64::from(a.failed) * params.mu;
                }
            }
        }
    } else {
        let sigma = match space.strategy {
            StrategyKind::Cold => params.sigma_cold,
            _ => params.sigma_warm,
        };
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let (a, b) = (states[i], states[j]);
                let rate = if a.active == b.active + 1
                    && b.failed == a.failed + 1
                    && a.standby == b.standby
                {
                    // Failure of an active component.
                    f64::from(a.active) * params.lambda_working
                } else if a.standby == b.standby + 1
                    && b.failed == a.failed + 1
                    && a.active == b.active
                {
                    // Failure of a standby component. Impossible once the
                    // subsystem is down, and cold spares never fail.
                    if a.active + 1 == k || space.strategy == StrategyKind::Cold {
                        0.0
                    } else {
                        f64::from(a.standby) * params.lambda_standby
                    }
                } else if a.standby == b.standby + 1
                    && b.active == a.active + 1
                    && a.failed == b.failed
                {
                    // Activation of standby components; at most two switch
                    // concurrently and never beyond k+1 active.
                    let slots = (k + 1).saturating_sub(a.active);
                    f64::from(a.standby.min(2).min(slots)) * sigma
                } else if a.failed == b.failed + 1
                    && b.standby == a.standby + 1
                    && a.active == b.active
                {
                    // Repair of a failed component, back to the standby pool.
                    f64::from(a.failed) * params.mu
                } else {
                    0.0
                };
                q[(i, j)] = rate;
            }
        }
    }

    for i in 0..dim {
        let row_sum: f64 = q.row(i).sum();
        q[(i, i)] = -row_sum;
    }
    Ok(q)
}

/// A full Markov model: state space plus transition-rate matrix.
#[derive(Debug, Clone)]
pub struct MarkovModel {
    pub space: StateSpace,
    pub q: DMatrix<f64>,
}

impl MarkovModel {
    pub fn build(
        params: &SubsystemParams,
        n: u32,
        strategy: StrategyKind,
    ) -> Result<Self, CtmcError> {
        let space = build_state_space(strategy, n, params.k)?;
        let q = build_transition_matrix(&space, params)?;
        Ok(MarkovModel { space, q })
    }
}

/// Steady-state (ergodic) probabilities of a chain.
#[derive(Debug, Clone)]
pub struct SteadyState {
    pub pi: Vec<f64>,
}

/// Solves `pi * Q = 0` with the normalization `sum(pi) = 1`.
///
/// One balance equation is replaced by the normalization row and the
/// resulting dense system is solved directly with an LU factorization.
/// Probabilities in (-1e-9, 0) are clamped to zero and the vector is
/// renormalized; anything more negative is treated as a numerical failure.
pub fn steady_state(q: &DMatrix<f64>) -> Result<SteadyState, CtmcError> {
    let dim = q.nrows();
    if dim == 0 || q.ncols() != dim {
        return Err(CtmcError::NumericalFailure(
            "generator matrix must be square and nonempty".into(),
        ));
    }

    let mut a = q.transpose();
    for j in 0..dim {
        a[(dim - 1, j)] = 1.0;
    }
    let mut rhs = DVector::zeros(dim);
    rhs[dim - 1] = 1.0;

    let solution = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| CtmcError::NumericalFailure("singular balance system".into()))?;

    let mut pi: Vec<f64> = solution.iter().copied().collect();
    for p in &mut pi {
        if *p < 0.0 {
            if *p < -1e-9 {
                return Err(CtmcError::NumericalFailure(format!(
                    "steady-state probability {p} below tolerance"
                )));
            }
            *p = 0.0;
        }
    }
    let total: f64 = pi.iter().sum();
    if !total.is_finite() || total <= 0.0 {
        return Err(CtmcError::NumericalFailure(
            "steady-state probabilities do not normalize".into(),
        ));
    }
    for p in &mut pi {
        *p /= total;
    }
    Ok(SteadyState { pi })
}

/// Long-run availability of one subsystem: steady-state probability mass on
/// the working states.
pub fn subsystem_availability(
    params: &SubsystemParams,
    n: u32,
    strategy: StrategyKind,
) -> Result<f64, CtmcError> {
    let model = MarkovModel::build(params, n, strategy)?;
    let steady = steady_state(&model.q)?;
    let availability: f64 = steady
        .pi
        .iter()
        .take(model.space.working_count())
        .sum();
    Ok(availability.clamp(0.0, 1.0))
}

/// Cache key: the rate parameters that determine availability (cost and
/// weight excluded), the strategy, and the component count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct AvailabilityKey {
    strategy: StrategyKind,
    n: u32,
    k: u32,
    rates: [u64; 5],
}

impl AvailabilityKey {
    fn new(params: &SubsystemParams, n: u32, strategy: StrategyKind) -> Self {
        AvailabilityKey {
            strategy,
            n,
            k: params.k,
            rates: [
                params.lambda_working.to_bits(),
                params.lambda_standby.to_bits(),
                params.sigma_cold.to_bits(),
                params.sigma_warm.to_bits(),
                params.mu.to_bits(),
            ],
        }
    }
}

/// Shared memo for `subsystem_availability`.
///
/// Availability is a pure function of (rates, strategy, n), so concurrent
/// recomputation of the same key always stores the same value. Clones share
/// the underlying map.
#[derive(Debug, Clone, Default)]
pub struct AvailabilityCache {
    inner: Arc<RwLock<HashMap<AvailabilityKey, f64>>>,
}

impl AvailabilityCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cached wrapper around [`subsystem_availability`].
    pub fn availability(
        &self,
        params: &SubsystemParams,
        n: u32,
        strategy: StrategyKind,
    ) -> Result<f64, CtmcError> {
        let key = AvailabilityKey::new(params, n, strategy);
        if let Some(&hit) = self.inner.read().expect("cache lock poisoned").get(&key) {
            return Ok(hit);
        }
        let value = subsystem_availability(params, n, strategy)?;
        self.inner
            .write()
            .expect("cache lock poisoned")
            .insert(key, value);
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cs1_row1() -> SubsystemParams {
        SubsystemParams {
            k: 1,
            lambda_working: 0.75,
            lambda_standby: 0.50,
            sigma_cold: 5.30,
            sigma_warm: 9.99,
            mu: 1.14,
            cost: 6.50,
            weight: 3.56,
        }
    }

    fn random_params(rng: &mut ChaCha8Rng, k: u32) -> SubsystemParams {
        let lambda_standby = rng.gen_range(0.01..1.0);
        let lambda_working = lambda_standby + rng.gen_range(0.01..1.0);
        let sigma_cold = rng.gen_range(0.5..10.0);
        let sigma_warm = sigma_cold + rng.gen_range(0.1..10.0);
        SubsystemParams {
            k,
            lambda_working,
            lambda_standby,
            sigma_cold,
            sigma_warm,
            mu: rng.gen_range(0.1..5.0),
            cost: 1.0,
            weight: 1.0,
        }
    }

    fn expected_counts(strategy: StrategyKind, n: u32, k: u32) -> (usize, usize) {
        let s = (n - k) as usize;
        match strategy {
            StrategyKind::Cold | StrategyKind::Warm => (s + 1, s + 2),
            StrategyKind::Mixed => (2 * s + 1, s + 2),
            StrategyKind::Hot => (s + 1, 1),
        }
    }

    #[test]
    fn state_count_formulas_hold() {
        for strategy in StrategyKind::ALL {
            for k in [1, 2, 5] {
                for spare in 0..=12 {
                    let n = k + spare;
                    let space = build_state_space(strategy, n, k).unwrap();
                    let (working, failure) = expected_counts(strategy, n, k);
                    assert_eq!(space.working_count(), working, "{strategy} n={n} k={k}");
                    assert_eq!(space.len(), working + failure, "{strategy} n={n} k={k}");
                    for state in space.states() {
                        assert_eq!(state.active + state.standby + state.failed, n);
                    }
                }
            }
        }
    }

    #[test]
    fn state_count_examples() {
        let cold = build_state_space(StrategyKind::Cold, 3, 1).unwrap();
        assert_eq!((cold.working_count(), cold.len()), (3, 7));

        let mixed = build_state_space(StrategyKind::Mixed, 3, 1).unwrap();
        assert_eq!((mixed.working_count(), mixed.len()), (5, 9));

        let hot = build_state_space(StrategyKind::Hot, 1, 1).unwrap();
        assert_eq!((hot.working_count(), hot.len()), (1, 2));
    }

    #[test]
    fn invalid_configurations_rejected() {
        assert!(matches!(
            build_state_space(StrategyKind::Cold, 1, 2),
            Err(CtmcError::InvalidConfiguration { .. })
        ));
        assert!(matches!(
            build_state_space(StrategyKind::Hot, 3, 0),
            Err(CtmcError::InvalidConfiguration { .. })
        ));
    }

    #[test]
    fn invalid_parameters_rejected() {
        let mut p = cs1_row1();
        p.lambda_standby = 0.80; // above lambda_working
        let space = build_state_space(StrategyKind::Warm, 2, 1).unwrap();
        assert!(matches!(
            build_transition_matrix(&space, &p),
            Err(CtmcError::InvalidParameters(_))
        ));
    }

    #[test]
    fn hot_two_state_matrix_matches_rates() {
        let model = MarkovModel::build(&cs1_row1(), 1, StrategyKind::Hot).unwrap();
        let q = &model.q;
        assert_eq!(q.nrows(), 2);
        assert!((q[(0, 0)] - (-0.75)).abs() < 1e-15);
        assert!((q[(0, 1)] - 0.75).abs() < 1e-15);
        assert!((q[(1, 0)] - 1.14).abs() < 1e-15);
        assert!((q[(1, 1)] - (-1.14)).abs() < 1e-15);
    }

    #[test]
    fn warm_working_state_exits() {
        // n=2, k=1: from (active=1, standby=1, failed=0) the only exits are
        // one active failure and one standby failure; no switching target
        // with two active components exists.
        let model = MarkovModel::build(&cs1_row1(), 2, StrategyKind::Warm).unwrap();
        let space = &model.space;
        let idx = space
            .states()
            .iter()
            .position(|s| s.active == 1 && s.standby == 1)
            .unwrap();
        let exit: f64 = -model.q[(idx, idx)];
        assert!((exit - (0.75 + 0.50)).abs() < 1e-12);
    }

    #[test]
    fn cold_standby_never_fails() {
        let model = MarkovModel::build(&cs1_row1(), 4, StrategyKind::Cold).unwrap();
        let states = model.space.states();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                if a.standby == b.standby + 1 && b.failed == a.failed + 1 && a.active == b.active {
                    assert_eq!(model.q[(i, j)], 0.0, "standby failure fired for cold");
                }
            }
        }
    }

    fn assert_generator_valid(q: &DMatrix<f64>) {
        for i in 0..q.nrows() {
            let mut row_sum = 0.0;
            for j in 0..q.ncols() {
                if i != j {
                    assert!(q[(i, j)] >= 0.0, "negative off-diagonal at ({i},{j})");
                }
                row_sum += q[(i, j)];
            }
            assert!(q[(i, i)] <= 0.0);
            assert!(row_sum.abs() <= 1e-12, "row {i} sums to {row_sum}");
        }
    }

    fn assert_irreducible(q: &DMatrix<f64>) {
        let dim = q.nrows();
        let reach = |transpose: bool| {
            let mut seen = vec![false; dim];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..dim {
                    let rate = if transpose { q[(j, i)] } else { q[(i, j)] };
                    if i != j && rate > 0.0 && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        assert!(reach(false) && reach(true), "chain is not irreducible");
    }

    #[test]
    fn generator_validity_over_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let k = rng.gen_range(1..=4);
            let spare = rng.gen_range(0..=12);
            let strategy = StrategyKind::ALL[rng.gen_range(0..4)];
            let params = random_params(&mut rng, k);
            let model = MarkovModel::build(&params, k + spare, strategy).unwrap();
            assert_generator_valid(&model.q);
            assert_irreducible(&model.q);
        }
    }

    #[test]
    fn steady_state_two_state_closed_form() {
        let q = DMatrix::from_row_slice(2, 2, &[-0.75, 0.75, 1.14, -1.14]);
        let pi = steady_state(&q).unwrap().pi;
        assert!((pi[0] - 1.14 / 1.89).abs() < 1e-12);
        assert!((pi[1] - 0.75 / 1.89).abs() < 1e-12);

        let sym = DMatrix::from_row_slice(2, 2, &[-1.0, 1.0, 1.0, -1.0]);
        let pi = steady_state(&sym).unwrap().pi;
        assert!((pi[0] - 0.5).abs() < 1e-12 && (pi[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn steady_state_invariants_over_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k = rng.gen_range(1..=3);
            let spare = rng.gen_range(0..=10);
            let strategy = StrategyKind::ALL[rng.gen_range(0..4)];
            let params = random_params(&mut rng, k);
            let model = MarkovModel::build(&params, k + spare, strategy).unwrap();
            let pi = steady_state(&model.q).unwrap().pi;
            assert!(pi.iter().all(|&p| (0.0..=1.0).contains(&p)));
            let total: f64 = pi.iter().sum();
            assert!((total - 1.0).abs() <= 1e-12);
            // Residual of the balance equations.
            for j in 0..model.q.ncols() {
                let residual: f64 = (0..model.q.nrows()).map(|i| pi[i] * model.q[(i, j)]).sum();
                assert!(residual.abs() <= 1e-10, "residual {residual} at column {j}");
            }
        }
    }

    #[test]
    fn steady_state_rejects_reducible_chain() {
        // Two absorbing blocks; the balance system is singular.
        let q = DMatrix::from_row_slice(
            4,
            4,
            &[
                -1.0, 1.0, 0.0, 0.0, //
                1.0, -1.0, 0.0, 0.0, //
                0.0, 0.0, -2.0, 2.0, //
                0.0, 0.0, 2.0, -2.0,
            ],
        );
        assert!(steady_state(&q).is_err());
    }

    #[test]
    fn hot_availability_matches_birth_death_product_form() {
        use rapbench_testutil::birth_death_availability;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let k = rng.gen_range(1..=3);
            let spare = rng.gen_range(0..=10);
            let params = random_params(&mut rng, k);
            let a = subsystem_availability(&params, k + spare, StrategyKind::Hot).unwrap();
            let oracle = birth_death_availability(&params, k + spare);
            assert!(
                (a - oracle).abs() <= 1e-10,
                "ctmc {a} vs birth-death {oracle}"
            );
        }
    }

    #[test]
    fn hot_availability_nondecreasing_in_n() {
        use rapbench_testutil::birth_death_availability;
        let params = cs1_row1();
        let mut prev = 0.0;
        for n in 1..=7 {
            let a = subsystem_availability(&params, n, StrategyKind::Hot).unwrap();
            let oracle = birth_death_availability(&params, n);
            assert!((a - oracle).abs() <= 1e-10);
            assert!(a >= prev, "availability decreased at n = {n}");
            assert!(a > 0.0 && a < 1.0);
            prev = a;
        }
    }

    #[test]
    fn availability_nondecreasing_in_repair_rate() {
        for strategy in StrategyKind::ALL {
            let mut prev = 0.0;
            for step in 1..=8 {
                let mut params = cs1_row1();
                params.mu = 0.25 * f64::from(step);
                let a = subsystem_availability(&params, 4, strategy).unwrap();
                assert!(
                    a >= prev - 1e-12,
                    "{strategy}: availability fell when mu rose to {}",
                    params.mu
                );
                prev = a;
            }
        }
    }

    #[test]
    fn two_state_hot_availability_example() {
        let a = subsystem_availability(&cs1_row1(), 1, StrategyKind::Hot).unwrap();
        assert!((a - 1.14 / 1.89).abs() < 1e-12); // 0.6031746...
    }

    #[test]
    fn cache_returns_identical_values() {
        let cache = AvailabilityCache::new();
        let params = cs1_row1();
        let direct = subsystem_availability(&params, 3, StrategyKind::Mixed).unwrap();
        let first = cache.availability(&params, 3, StrategyKind::Mixed).unwrap();
        let second = cache.availability(&params, 3, StrategyKind::Mixed).unwrap();
        assert_eq!(direct.to_bits(), first.to_bits());
        assert_eq!(first.to_bits(), second.to_bits());
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn strategy_codes_round_trip() {
        for strategy in StrategyKind::ALL {
            assert_eq!(StrategyKind::from_code(strategy.code()).unwrap(), strategy);
        }
        assert!(StrategyKind::from_code(4).is_err());
    }
}
