//! Every relation evaluated on one model, with per-inequality slack.

use std::fmt;

use crate::model::{
    frame_stats, heisenberg_frame, HeisenbergFrame, MeasurementModel, NoiseDisturbanceStats,
};
use crate::qalg::{orthonormal_complement_basis, PureState, Rng};

use super::product::{l_new2_sampled, LNew2, ProductTerms};
use super::witness::{l_new1, thm1_rhs, Thm1Bound, WitnessStrategy};
use super::{
    branciard_lhs, branciard_tight_lhs, eq21_rhs, ozawa_lhs, robertson_rhs, BoundsError, Result,
    Sign, TightBranciard, SLACK_TOL,
};

/// The inequalities tracked in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `ΔAΔB ≥ C_AB`
    Robertson,
    /// `L_Ozawa ≥ C_AB`
    Ozawa,
    /// `L_Branciard ≥ C_AB`
    Branciard,
    /// η-substituted Branciard form; only valid under extra spectral assumptions.
    BranciardTight,
    /// `ε² + η² ≥` sum-of-squares right-hand side
    Theorem1,
    /// `L_New^(2) ≥ C_AB`
    Theorem2,
    /// `ε² + η² ≥` complete-basis right-hand side
    Eq21,
}

impl Relation {
    pub const ALL: [Relation; 7] = [
        Relation::Robertson,
        Relation::Ozawa,
        Relation::Branciard,
        Relation::BranciardTight,
        Relation::Theorem1,
        Relation::Theorem2,
        Relation::Eq21,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Robertson => "robertson",
            Relation::Ozawa => "ozawa",
            Relation::Branciard => "branciard",
            Relation::BranciardTight => "branciard_tight",
            Relation::Theorem1 => "theorem1",
            Relation::Theorem2 => "theorem2",
            Relation::Eq21 => "eq21",
        }
    }

    /// Whether the relation holds for every model.
    pub fn is_universal(self) -> bool {
        !matches!(self, Relation::BranciardTight)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One inequality `lhs ≥ rhs` with its slack.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub relation: Relation,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// `lhs − rhs`
    pub slack: Option<f64>,
    /// `slack ≥ −1e-9`; `None` when the bound is absent.
    pub satisfied: Option<bool>,
    pub universal: bool,
    pub absent_reason: Option<String>,
}

impl InequalityCheck {
    fn present(relation: Relation, lhs: f64, rhs: f64) -> Self {
        let slack = lhs - rhs;
        Self {
            relation,
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(slack),
            satisfied: Some(slack >= -SLACK_TOL),
            universal: relation.is_universal(),
            absent_reason: None,
        }
    }

    fn absent(relation: Relation, reason: String) -> Self {
        Self {
            relation,
            lhs: None,
            rhs: None,
            slack: None,
            satisfied: None,
            universal: relation.is_universal(),
            absent_reason: Some(reason),
        }
    }

    /// A universal relation that is present and fails.
    pub fn is_violation(&self) -> bool {
        self.universal && self.satisfied == Some(false)
    }
}

/// All evaluated quantities for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub stats: NoiseDisturbanceStats,
    /// Branch chosen on `⟨ψ|[A,B]|ψ⟩`.
    pub sign: Sign,
    pub robertson_rhs: f64,
    pub ozawa_lhs: f64,
    pub branciard_lhs: f64,
    pub branciard_tight: TightBranciard,
    /// `ε_A² + η_B²`
    pub thm1_sum: f64,
    pub thm1: Thm1Bound,
    pub l_new1: f64,
    pub l_new2: Option<LNew2>,
    pub l_new2_witness: Option<PureState>,
    pub eq21_rhs: f64,
    pub checks: Vec<InequalityCheck>,
}

impl BoundReport {
    pub fn thm1_rhs(&self) -> f64 {
        self.thm1.rhs
    }

    pub fn thm1_witness(&self) -> Option<&PureState> {
        self.thm1.witness.as_ref()
    }

    pub fn l_new2_value(&self) -> Option<f64> {
        self.l_new2.map(|l| l.value)
    }

    pub fn check(&self, relation: Relation) -> &InequalityCheck {
        self.checks
            .iter()
            .find(|c| c.relation == relation)
            .expect("every relation is checked")
    }

    pub fn violations(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.checks.iter().filter(|c| c.is_violation())
    }

    /// True when no universal relation is violated.
    pub fn all_universal_satisfied(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Evaluates every relation on `m`.
///
/// With a sampled strategy the sum-of-squares and product relations draw
/// from independent sub-streams `derive(0)` and `derive(1)` of the seed. With
/// an optimal or explicit strategy the product relation reuses the
/// sum-of-squares witness.
pub fn bound_report(m: &MeasurementModel, strategy: &WitnessStrategy) -> Result<BoundReport> {
    let f = heisenberg_frame(m)?;
    frame_report(&f, strategy)
}

pub(crate) fn frame_report(f: &HeisenbergFrame, strategy: &WitnessStrategy) -> Result<BoundReport> {
    strategy.validate(f)?;
    let stats = frame_stats(f);
    let sign = Sign::theorem1(f);

    let thm1_strategy = match strategy {
        WitnessStrategy::Sampled { count, seed } => WitnessStrategy::Sampled {
            count: *count,
            seed: Rng::new(*seed).derive(0).seed(),
        },
        other => other.clone(),
    };
    let thm1 = thm1_rhs(f, sign, &thm1_strategy)?;
    let thm1_sum = stats.epsilon_a.powi(2) + stats.eta_b.powi(2);

    let (l_new2, l_new2_witness, l_new2_absent) = match ProductTerms::new(f) {
        Ok(terms) => match strategy {
            WitnessStrategy::Sampled { count, seed } => {
                let (w, l) = l_new2_sampled(f, *count, &mut Rng::new(*seed).derive(1))?;
                (Some(l), Some(w), None)
            }
            _ => {
                let w = match &thm1.witness {
                    Some(w) => w.clone(),
                    None => orthonormal_complement_basis(&f.joint_state).remove(0),
                };
                (Some(terms.evaluate(&w)), Some(w), None)
            }
        },
        Err(BoundsError::DegenerateDenominator(name)) => {
            (None, None, Some(format!("{name} vanishes")))
        }
        Err(e) => return Err(e),
    };

    let robertson = robertson_rhs(&stats);
    let ozawa = ozawa_lhs(&stats);
    let branciard = branciard_lhs(&stats);
    let tight = branciard_tight_lhs(&stats);
    let eq21 = eq21_rhs(f, sign);
    let c_ab = stats.c_ab;

    let checks = vec![
        InequalityCheck::present(
            Relation::Robertson,
            stats.delta_a * stats.delta_b,
            robertson,
        ),
        InequalityCheck::present(Relation::Ozawa, ozawa, c_ab),
        InequalityCheck::present(Relation::Branciard, branciard, c_ab),
        InequalityCheck::present(Relation::BranciardTight, tight.value, c_ab),
        InequalityCheck::present(Relation::Theorem1, thm1_sum, thm1.rhs),
        match (&l_new2, l_new2_absent) {
            (Some(l), _) => InequalityCheck::present(Relation::Theorem2, l.value, c_ab),
            (None, reason) => InequalityCheck::absent(
                Relation::Theorem2,
                reason.unwrap_or_else(|| "not evaluated".into()),
            ),
        },
        InequalityCheck::present(Relation::Eq21, thm1_sum, eq21),
    ];

    Ok(BoundReport {
        stats,
        sign,
        robertson_rhs: robertson,
        ozawa_lhs: ozawa,
        branciard_lhs: branciard,
        branciard_tight: tight,
        thm1_sum,
        l_new1: l_new1(f, &stats, sign, thm1.witness_term),
        thm1,
        l_new2,
        l_new2_witness,
        eq21_rhs: eq21,
        checks,
    })
}
