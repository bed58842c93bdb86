//! θ-sweeps over the named scenarios and the "new bound is tighter" statistic.

use std::f64::consts::PI;

use edlab_core::bounds::{bound_report, BoundReport, SLACK_TOL};
use edlab_core::model::Scenario;
use edlab_core::qalg::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ScenarioConfig, ScenarioKind};

#[derive(Debug, Error, PartialEq)]
pub enum SweepError {
    #[error("sweeps need a named scenario (fig1, fig2 or fig3), not a custom model")]
    CustomScenario,

    #[error("fraction of an empty sweep is undefined")]
    EmptySweep,
}

/// One sweep row. Failed evaluations keep their angle, carry NaN values and
/// the error message, and never count as tighter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub theta: f64,
    pub epsilon_a: f64,
    pub eta_b: f64,
    pub c_ab: f64,
    pub ozawa_lhs: f64,
    pub branciard_tight_lhs: f64,
    pub thm1_rhs: f64,
    /// `None` when a denominator of the product relation vanishes.
    pub l_new2: Option<f64>,
    pub new_beats_branciard: bool,
    pub l_new1: f64,
    pub error: Option<String>,
}

impl SweepRecord {
    fn failed(theta: f64, error: String) -> Self {
        Self {
            theta,
            epsilon_a: f64::NAN,
            eta_b: f64::NAN,
            c_ab: f64::NAN,
            ozawa_lhs: f64::NAN,
            branciard_tight_lhs: f64::NAN,
            thm1_rhs: f64::NAN,
            l_new2: None,
            new_beats_branciard: false,
            l_new1: f64::NAN,
            error: Some(error),
        }
    }

    pub fn from_report(theta: f64, scenario: Scenario, r: &BoundReport) -> Self {
        let designated = new_bound_quantity(scenario, r);
        Self {
            theta,
            epsilon_a: r.stats.epsilon_a,
            eta_b: r.stats.eta_b,
            c_ab: r.stats.c_ab,
            ozawa_lhs: r.ozawa_lhs,
            branciard_tight_lhs: r.branciard_tight.value,
            thm1_rhs: r.thm1_rhs(),
            l_new2: r.l_new2_value(),
            new_beats_branciard: is_tighter(designated, r.branciard_tight.value, r.stats.c_ab),
            l_new1: r.l_new1,
            error: None,
        }
    }
}

/// The L-quantity compared against Branciard: `L_New^(1)` from the
/// sum-of-squares relation, except for the scaled scenario where the
/// product relation `L_New^(2)` is the one plotted.
pub fn new_bound_quantity(scenario: Scenario, r: &BoundReport) -> Option<f64> {
    match scenario {
        Scenario::Fig3 => r.l_new2_value(),
        Scenario::Fig1 | Scenario::Fig2 => Some(r.l_new1),
    }
}

/// A bound is tighter when its L-quantity is smaller than the comparison
/// while still at or above `C_AB`.
pub fn is_tighter(new_value: Option<f64>, branciard_tight: f64, c_ab: f64) -> bool {
    match new_value {
        Some(v) => v < branciard_tight && v >= c_ab - SLACK_TOL,
        None => false,
    }
}

/// `θ_j = 2πj/n` for `j = 0..n`.
pub fn theta_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| 2.0 * PI * j as f64 / n as f64)
}

/// Seed used for row `j`; identical in serial and parallel evaluation.
pub fn row_seed(seed: u64, j: usize) -> u64 {
    Rng::new(seed).derive(j as u64).seed()
}

/// Evaluates row `j` of the sweep described by `config`.
pub fn sweep_row(config: &ScenarioConfig, scenario: Scenario, j: usize) -> SweepRecord {
    let theta = 2.0 * PI * j as f64 / config.theta_count as f64;
    let strategy = config.witness.strategy(row_seed(config.seed, j));
    let report = config
        .model_at(theta)
        .map_err(|e| e.to_string())
        .and_then(|m| bound_report(&m, &strategy).map_err(|e| e.to_string()));
    match report {
        Ok(r) => SweepRecord::from_report(theta, scenario, &r),
        Err(e) => SweepRecord::failed(theta, e),
    }
}

/// Evaluates every grid angle in parallel; rows come back in grid order.
pub fn sweep(config: &ScenarioConfig) -> Result<Vec<SweepRecord>, SweepError> {
    let ScenarioKind::Named(scenario) = config.scenario else {
        return Err(SweepError::CustomScenario);
    };
    Ok((0..config.theta_count)
        .into_par_iter()
        .map(|j| sweep_row(config, scenario, j))
        .collect())
}

pub fn fraction_tighter(records: &[SweepRecord]) -> Result<f64, SweepError> {
    if records.is_empty() {
        return Err(SweepError::EmptySweep);
    }
    let hits = records.iter().filter(|r| r.new_beats_branciard).count();
    Ok(hits as f64 / records.len() as f64)
}
