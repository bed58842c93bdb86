//! Properties of sweeps, the tighter-fraction statistic, frontiers and CSV numbers.

use edlab_cli::config::WitnessConfig;
use edlab_cli::sweep::{row_seed, sweep_row};
use edlab_cli::{format_number, fraction_tighter, frontier, sweep, FrontierParams, ScenarioConfig};
use edlab_core::bounds::bound_report;
use edlab_core::model::Scenario;
use proptest::prelude::*;

fn config(scenario: Scenario, n: usize, seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        theta_count: n,
        witness: WitnessConfig::Sampled { samples: 20 },
        seed,
        ..ScenarioConfig::named(scenario)
    }
}

#[test]
fn rows_match_single_point_reports() {
    let c = config(Scenario::Fig1, 12, 3);
    let rows = sweep(&c).unwrap();
    for (j, row) in rows.iter().enumerate() {
        let m = c.model_at(row.theta).unwrap();
        let r = bound_report(&m, &c.witness.strategy(row_seed(c.seed, j))).unwrap();
        assert!((row.thm1_rhs - r.thm1_rhs()).abs() <= 1e-12);
        assert!((row.epsilon_a - r.stats.epsilon_a).abs() <= 1e-12);
        assert!((row.l_new1 - r.l_new1).abs() <= 1e-12);
    }
}

#[test]
fn rows_satisfy_universal_relations() {
    for scenario in [Scenario::Fig1, Scenario::Fig2, Scenario::Fig3] {
        for row in sweep(&config(scenario, 64, 1)).unwrap() {
            assert!(row.error.is_none());
            let sum = row.epsilon_a.powi(2) + row.eta_b.powi(2);
            assert!(sum >= row.thm1_rhs - 1e-9, "{scenario:?} θ={}", row.theta);
            assert!(row.ozawa_lhs >= row.c_ab - 1e-9);
            if let Some(l) = row.l_new2 {
                assert!(l >= row.c_ab - 1e-9);
            }
        }
    }
}

#[test]
fn fraction_is_invariant_under_permutation() {
    let rows = sweep(&config(Scenario::Fig2, 40, 2)).unwrap();
    let f = fraction_tighter(&rows).unwrap();
    let mut reversed = rows.clone();
    reversed.reverse();
    assert_eq!(fraction_tighter(&reversed).unwrap(), f);
    let mut rotated = rows;
    rotated.rotate_left(13);
    assert_eq!(fraction_tighter(&rotated).unwrap(), f);
}

#[test]
fn row_evaluation_is_order_independent() {
    let c = config(Scenario::Fig3, 10, 4);
    let forward: Vec<_> = (0..10).map(|j| sweep_row(&c, Scenario::Fig3, j)).collect();
    let mut backward: Vec<_> = (0..10)
        .rev()
        .map(|j| sweep_row(&c, Scenario::Fig3, j))
        .collect();
    backward.reverse();
    assert_eq!(forward, backward);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frontier_points_lie_on_their_curves(
        da in 0.2f64..3.0,
        db in 0.2f64..3.0,
        ratio in 0.05f64..1.0,
        new_rhs in 0.0f64..5.0,
        grid in 2usize..300,
    ) {
        let c_ab = ratio * da * db;
        let p = FrontierParams { c_ab, delta_a: da, delta_b: db, new_rhs };
        for curve in frontier(c_ab, da, db, new_rhs, grid).unwrap() {
            let mut last = -1.0;
            for (e, h) in curve.points {
                prop_assert!(h >= 0.0);
                prop_assert!(e > last);
                last = e;
                prop_assert!(p.residual(curve.name, e, h).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn csv_numbers_round_trip_to_twelve_digits(x in prop::num::f64::NORMAL) {
        let y: f64 = format_number(x).parse().unwrap();
        prop_assert!((y - x).abs() <= 1e-11 * x.abs());
    }
}
