//! Event-driven availability simulation.
//!
//! Simulates one subsystem at the component-count level by racing
//! exponential clocks for the enabled event classes (active failure, warm
//! standby failure, standby activation, repair) and accumulating the time
//! spent with at least `k` components active. The event rules are written
//! out per strategy here, independent of the generator-matrix construction
//! they are used to validate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rapbench_core::ctmc::{StrategyKind, SubsystemParams};

/// Batch-mean availability estimate from one simulation run.
#[derive(Debug, Clone, Copy)]
pub struct SimulationEstimate {
    pub availability: f64,
    pub std_error: f64,
    pub batches: usize,
}

#[derive(Clone, Copy)]
struct Counts {
    active: u32,
    standby: u32,
    failed: u32,
}

#[derive(Clone, Copy)]
enum Event {
    ActiveFailure,
    StandbyFailure,
    Activation,
    Repair,
}

/// Enabled event classes and their rates in the current state.
///
/// While the subsystem is down (fewer than k active) no further failures
/// occur; repairs return components to the standby pool except under hot
/// standby, where they rejoin service directly. Activations run at most two
/// at a time and never push the active count past the strategy's operating
/// level (k, or k+1 for the mixed strategy).
fn enabled_events(
    state: Counts,
    params: &SubsystemParams,
    strategy: StrategyKind,
) -> Vec<(Event, f64)> {
    let k = params.k;
    let mut events = Vec::with_capacity(4);

    if strategy == StrategyKind::Hot {
        if state.active >= k {
            events.push((
                Event::ActiveFailure,
                f64::from(state.active) * params.lambda_working,
            ));
        }
        if state.failed >= 1 {
            events.push((Event::Repair, f64::from(state.failed) * params.mu));
        }
        return events;
    }

    let operating_level = match strategy {
        StrategyKind::Mixed => k + 1,
        _ => k,
    };
    let sigma = match strategy {
        StrategyKind::Cold => params.sigma_cold,
        _ => params.sigma_warm,
    };

    if state.active >= k {
        events.push((
            Event::ActiveFailure,
            f64::from(state.active) * params.lambda_working,
        ));
        if strategy != StrategyKind::Cold && state.standby >= 1 {
            events.push((
                Event::StandbyFailure,
                f64::from(state.standby) * params.lambda_standby,
            ));
        }
    }
    if state.standby >= 1 && state.active < operating_level {
        let concurrent = state.standby.min(2).min(k + 1 - state.active);
        events.push((Event::Activation, f64::from(concurrent) * sigma));
    }
    if state.failed >= 1 {
        events.push((Event::Repair, f64::from(state.failed) * params.mu));
    }
    events
}

fn apply(state: &mut Counts, event: Event, strategy: StrategyKind) {
    match event {
        Event::ActiveFailure => {
            state.active -= 1;
            state.failed += 1;
        }
        Event::StandbyFailure => {
            state.standby -= 1;
            state.failed += 1;
        }
        Event::Activation => {
            state.standby -= 1;
            state.active += 1;
        }
        Event::Repair => {
            state.failed -= 1;
            if strategy == StrategyKind::Hot {
                state.active += 1;
            } else {
                state.standby += 1;
            }
        }
    }
}

/// Simulates `horizon` time units (after a one-batch warm-up) and returns the
/// batch-mean availability with its standard error.
pub fn simulate_availability(
    params: &SubsystemParams,
    n: u32,
    strategy: StrategyKind,
    horizon: f64,
    batches: usize,
    seed: u64,
) -> SimulationEstimate {
    assert!(n >= params.k && params.k >= 1);
    assert!(batches >= 2 && horizon > 0.0);

    let k = params.k;
    let mut state = match strategy {
        StrategyKind::Mixed if n > k => Counts {
            active: k + 1,
            standby: n - k - 1,
            failed: 0,
        },
        StrategyKind::Hot => Counts {
            active: n,
            standby: 0,
            failed: 0,
        },
        _ => Counts {
            active: k,
            standby: n - k,
            failed: 0,
        },
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let batch_len = horizon / batches as f64;
    let mut batch_means = Vec::with_capacity(batches);

    // Warm-up window followed by the recorded batches.
    let mut remaining_in_window = batch_len;
    let mut recording = false;
    let mut working_time = 0.0;

    loop {
        let events = enabled_events(state, params, strategy);
        let total_rate: f64 = events.iter().map(|(_, r)| r).sum();
        assert!(total_rate > 0.0, "simulation reached an absorbing state");
        let mut dt = -(1.0 - rng.gen::<f64>()).ln() / total_rate;
        let working = state.active >= k;

        // Split the holding time across window boundaries.
        while dt >= remaining_in_window {
            if working && recording {
                working_time += remaining_in_window;
            }
            dt -= remaining_in_window;
            remaining_in_window = batch_len;
            if recording {
                batch_means.push(working_time / batch_len);
                working_time = 0.0;
                if batch_means.len() == batches {
                    let mean: f64 = batch_means.iter().sum::<f64>() / batches as f64;
                    let var: f64 = batch_means
                        .iter()
                        .map(|&m| (m - mean) * (m - mean))
                        .sum::<f64>()
                        / (batches as f64 - 1.0);
                    return SimulationEstimate {
                        availability: mean,
                        std_error: (var / batches as f64).sqrt(),
                        batches,
                    };
                }
            } else {
                recording = true;
            }
        }
        if working && recording {
            working_time += dt;
        }
        remaining_in_window -= dt;

        let mut pick = rng.gen::<f64>() * total_rate;
        let mut chosen = events[events.len() - 1].0;
        for (event, rate) in &events {
            if pick < *rate {
                chosen = *event;
                break;
            }
            pick -= rate;
        }
        apply(&mut state, chosen, strategy);
    }
}
