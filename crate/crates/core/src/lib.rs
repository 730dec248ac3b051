//! Availability-driven redundancy allocation for repairable systems.
//!
//! The crate models repairable k-out-of-n:G subsystems under four standby
//! strategies (cold, warm, mixed, hot) with continuous-time Markov chains,
//! composes subsystem availabilities through the structure functions of six
//! benchmark system topologies, and optimizes the resulting bi-objective
//! problem (minimize cost, maximize availability, weight-constrained) with
//! three multi-objective metaheuristics. Evaluation utilities (2-D
//! hypervolume, Pareto filtering, nonparametric statistics) support
//! benchmark-style comparisons between optimizer configurations.
//!
//! Module map:
//!
//! * [`ctmc`] — Markov models and steady-state availability of one subsystem.
//! * [`structures`] — system-level availability for the six case-study
//!   topologies, plus an exhaustive enumeration oracle.
//! * [`rap`] — problem instances, genotype encodings, objective evaluation,
//!   and population initialization.
//! * [`moea`] — NSGA-II, SPEA2, and a crowding-archive MOPSO with
//!   budget-checkpointed traces.
//! * [`metrics`] — Pareto filtering, hypervolume, reference points, relative
//!   distance, strategy proportions.
//! * [`stats`] — Friedman ranks, Wilcoxon signed-rank, Holm-Bonferroni.

pub mod ctmc;
pub mod metrics;
pub mod moea;
pub mod rap;
pub mod stats;
pub mod structures;
