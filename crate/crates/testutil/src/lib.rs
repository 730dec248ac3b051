//! Independent oracles used by the test suites.
//!
//! Everything here deliberately avoids the production code paths it checks:
//! the birth-death product form and the event-driven simulator never touch
//! the generator-matrix builder or the linear solver, and the hypervolume
//! helpers use grid decomposition and Monte Carlo sampling instead of the
//! sorted sweep.

mod des;
mod hv;

pub use des::{simulate_availability, SimulationEstimate};
pub use hv::{hypervolume_grid, hypervolume_monte_carlo, pareto_filter_naive, MonteCarloArea};

use rapbench_core::ctmc::SubsystemParams;

/// Availability of a hot-standby k-out-of-n subsystem via the birth-death
/// product form.
///
/// With `j` failed components the chain moves up at `(n-j) * lambda_working`
/// and down at `j * mu`, truncated at `j = n-k+1`. The stationary weights are
/// `w_0 = 1`, `w_{j+1} = w_j * (n-j) * lambda / ((j+1) * mu)`, and the
/// availability is the normalized mass on `j <= n-k`.
pub fn birth_death_availability(params: &SubsystemParams, n: u32) -> f64 {
    assert!(n >= params.k && params.k >= 1);
    let max_failed = n - params.k + 1;
    let mut weight = 1.0_f64;
    let mut total = 1.0_f64;
    let mut working = 1.0_f64; // j = 0 is always working
    for j in 0..max_failed {
        weight *= f64::from(n - j) * params.lambda_working / (f64::from(j + 1) * params.mu);
        total += weight;
        if j + 1 <= n - params.k {
            working += weight;
        }
    }
    working / total
}
