//! Randomized soundness checks over qubit–qubit models.

use std::fmt;

use edlab_core::bounds::{
    branciard_lhs, commutator_part, eq21_rhs, eq21_rhs_with_basis, l_new2, optimal_witness,
    ozawa_lhs, sampled_witness, variance_sum_equality_check, witness_term, BoundsError, Sign,
    SLACK_TOL,
};
use edlab_core::model::{frame_stats, heisenberg_frame, HeisenbergFrame, MeasurementModel};
use edlab_core::qalg::{
    complete_basis, haar_random_state, normalize, project_orthogonal, random_hermitian,
    random_unitary, PureState, Rng,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::config::custom_config_text;

/// Haar samples per trial for the witness-dominance check.
const DOMINANCE_SAMPLES: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("trials must be at least 1")]
    ZeroTrials,
}

/// Deliberate defects used to check that the suite detects violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Evaluates the sum-of-squares witness overlap on the wrong `±` branch.
    FlipWitnessSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Ozawa,
    Branciard,
    Theorem1Random,
    Theorem1Optimal,
    Theorem2Random,
    Theorem2Optimal,
    Eq21,
    Equality,
    WitnessDominance,
    BasisIndependence,
    /// An evaluation failed where it should not.
    Evaluation,
}

impl Property {
    pub const ALL: [Property; 11] = [
        Property::Ozawa,
        Property::Branciard,
        Property::Theorem1Random,
        Property::Theorem1Optimal,
        Property::Theorem2Random,
        Property::Theorem2Optimal,
        Property::Eq21,
        Property::Equality,
        Property::WitnessDominance,
        Property::BasisIndependence,
        Property::Evaluation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Ozawa => "ozawa",
            Property::Branciard => "branciard",
            Property::Theorem1Random => "theorem1_random_witness",
            Property::Theorem1Optimal => "theorem1_optimal_witness",
            Property::Theorem2Random => "theorem2_random_witness",
            Property::Theorem2Optimal => "theorem2_optimal_witness",
            Property::Eq21 => "eq21",
            Property::Equality => "variance_sum_equality",
            Property::WitnessDominance => "witness_dominance",
            Property::BasisIndependence => "basis_independence",
            Property::Evaluation => "evaluation",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub trial: usize,
    pub property: Property,
    /// Signed slack (`lhs − rhs`, or `−|lhs − rhs|` for equalities).
    pub slack: f64,
    pub detail: String,
    /// Custom-scenario configuration reproducing the model and witness.
    pub replay: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    /// Number of evaluated checks per property, in [`Property::ALL`] order.
    pub evaluated: Vec<(Property, usize)>,
    /// Guarded checks skipped because a denominator vanished.
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, p: Property) -> usize {
        self.violations.iter().filter(|v| v.property == p).count()
    }
}

pub fn random_model(rng: &mut Rng) -> MeasurementModel {
    MeasurementModel::new(
        haar_random_state(2, rng),
        haar_random_state(2, rng),
        random_hermitian(2, rng),
        random_hermitian(2, rng),
        random_hermitian(2, rng),
        random_unitary(4, rng),
    )
    .expect("random draws are valid by construction")
}

fn random_witness(f: &HeisenbergFrame, rng: &mut Rng) -> PureState {
    loop {
        let r = haar_random_state(f.joint_dim(), rng).into_amplitudes();
        let projected = project_orthogonal(&r, &f.joint_state).expect("joint dimension");
        if let Ok(w) = normalize(&projected) {
            return w;
        }
    }
}

#[derive(Default)]
struct TrialOutcome {
    evaluated: Vec<Property>,
    skipped: usize,
    violations: Vec<Violation>,
}

struct Trial<'a> {
    index: usize,
    seed: u64,
    model: &'a MeasurementModel,
    out: TrialOutcome,
}

impl Trial<'_> {
    fn record(
        &mut self,
        property: Property,
        slack: f64,
        witness: Option<&PureState>,
        detail: String,
    ) {
        self.out.evaluated.push(property);
        if slack < -SLACK_TOL || slack.is_nan() {
            self.out.violations.push(Violation {
                trial: self.index,
                property,
                slack,
                detail,
                replay: custom_config_text(self.model, witness, self.seed),
            });
        }
    }

    fn failed(&mut self, property: Property, e: BoundsError) {
        self.record(
            Property::Evaluation,
            f64::NAN,
            None,
            format!("{property}: {e}"),
        );
    }
}

fn run_trial(index: usize, seed: u64, fault: Fault) -> TrialOutcome {
    let mut rng = Rng::new(seed);
    let model = random_model(&mut rng);
    let mut t = Trial {
        index,
        seed,
        model: &model,
        out: TrialOutcome::default(),
    };
    let f = match heisenberg_frame(&model) {
        Ok(f) => f,
        Err(e) => {
            t.failed(Property::Evaluation, e.into());
            return t.out;
        }
    };
    let s = frame_stats(&f);
    let c_ab = s.c_ab;
    let sum = s.epsilon_a.powi(2) + s.eta_b.powi(2);
    let sign = Sign::theorem1(&f);
    let overlap_sign = match fault {
        Fault::None => sign,
        Fault::FlipWitnessSign => sign.flip(),
    };

    let o = ozawa_lhs(&s);
    t.record(
        Property::Ozawa,
        o - c_ab,
        None,
        format!("L_Ozawa {o} vs C {c_ab}"),
    );
    let b = branciard_lhs(&s);
    t.record(
        Property::Branciard,
        b - c_ab,
        None,
        format!("L_Branciard {b} vs C {c_ab}"),
    );

    let part = commutator_part(&f, sign);
    let w = random_witness(&f, &mut rng);
    match witness_term(&f, overlap_sign, &w) {
        Ok(term) => {
            let rhs = part + term;
            t.record(
                Property::Theorem1Random,
                sum - rhs,
                Some(&w),
                format!("eps^2+eta^2 {sum} vs rhs {rhs}"),
            );
        }
        Err(e) => t.failed(Property::Theorem1Random, e),
    }

    let optimal = match optimal_witness(&f, overlap_sign) {
        Ok(opt) => Some(opt),
        Err(BoundsError::ZeroVector) => None,
        Err(e) => {
            t.failed(Property::Theorem1Optimal, e);
            None
        }
    };
    let opt_term = match &optimal {
        Some(opt) => witness_term(&f, overlap_sign, opt).unwrap_or(f64::NAN),
        None => 0.0,
    };
    let rhs = part + opt_term;
    t.record(
        Property::Theorem1Optimal,
        sum - rhs,
        optimal.as_ref(),
        format!("eps^2+eta^2 {sum} vs rhs {rhs}"),
    );

    for (property, witness) in [
        (Property::Theorem2Random, Some(&w)),
        (Property::Theorem2Optimal, optimal.as_ref()),
    ] {
        let Some(witness) = witness else { continue };
        match l_new2(&f, witness) {
            Ok(l) => t.record(
                property,
                l.value - c_ab,
                Some(witness),
                format!("L_New2 {} vs C {c_ab}", l.value),
            ),
            Err(BoundsError::DegenerateDenominator(_)) => t.out.skipped += 1,
            Err(e) => t.failed(property, e),
        }
    }

    let eq21 = eq21_rhs(&f, sign);
    t.record(
        Property::Eq21,
        sum - eq21,
        None,
        format!("eps^2+eta^2 {sum} vs rhs {eq21}"),
    );

    let (lhs, rhs) = variance_sum_equality_check(&f, sign);
    t.record(
        Property::Equality,
        -(lhs - rhs).abs(),
        None,
        format!("dN^2+dD^2 {lhs} vs {rhs}"),
    );

    let best = match optimal_witness(&f, sign) {
        Ok(opt) => witness_term(&f, sign, &opt).unwrap_or(f64::NAN),
        Err(_) => 0.0,
    };
    match sampled_witness(&f, sign, DOMINANCE_SAMPLES, &mut rng) {
        Ok((sw, sampled)) => t.record(
            Property::WitnessDominance,
            best - sampled,
            Some(&sw),
            format!("optimal {best} vs sampled {sampled}"),
        ),
        Err(e) => t.failed(Property::WitnessDominance, e),
    }

    let seeds: Vec<_> = (0..2 * f.joint_dim())
        .map(|_| haar_random_state(f.joint_dim(), &mut rng).into_amplitudes())
        .collect();
    let basis = complete_basis(&f.joint_state, seeds);
    match eq21_rhs_with_basis(&f, sign, &basis) {
        Ok(other) => t.record(
            Property::BasisIndependence,
            -(other - eq21).abs(),
            None,
            format!("standard basis {eq21} vs random basis {other}"),
        ),
        Err(e) => t.failed(Property::BasisIndependence, e),
    }
    t.out
}

/// Runs `trials` independent trials; trial `k` draws from sub-stream `k` of `seed`.
pub fn verify(seed: u64, trials: usize, fault: Fault) -> Result<VerifyReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::ZeroTrials);
    }
    let root = Rng::new(seed);
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|k| run_trial(k, root.derive(k as u64).seed(), fault))
        .collect();
    let mut evaluated: Vec<(Property, usize)> = Property::ALL.iter().map(|p| (*p, 0)).collect();
    let mut skipped = 0;
    let mut violations = Vec::new();
    for o in outcomes {
        for p in o.evaluated {
            if let Some(slot) = evaluated.iter_mut().find(|(q, _)| *q == p) {
                slot.1 += 1;
            }
        }
        skipped += o.skipped;
        violations.extend(o.violations);
    }
    Ok(VerifyReport {
        seed,
        trials,
        evaluated,
        skipped,
        violations,
    })
}
