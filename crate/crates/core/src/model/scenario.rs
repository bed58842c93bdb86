use std::fmt;
use std::str::FromStr;

use crate::qalg::{c, Complex64, PureState};

use super::{
    cnot, pauli, rotated_pauli, rotation_unitary, Axis, MeasurementModel, ModelError, Result,
};

/// Qubit/CNOT experiments with the probe in `|1⟩` and `M = σx` on the probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// `A = uσxu†`, `B = uσyu†`, `|ψ⟩ = u|0⟩`.
    Fig1,
    /// `A = σx`, `B = σy`, `|ψ⟩ = α|0⟩ + β|1⟩`.
    Fig2,
    /// As `Fig2` with `A = λσx`.
    Fig3,
}

impl FromStr for Scenario {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Scenario::Fig1),
            "fig2" => Ok(Scenario::Fig2),
            "fig3" => Ok(Scenario::Fig3),
            other => Err(ModelError::UnknownScenario(other.to_string())),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Fig1 => "fig1",
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
        })
    }
}

/// State angles and the observable scale. `α = cosθ`, `β = sinθ·e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

impl ScenarioParams {
    pub fn new(theta: f64, phi: f64, lambda: f64) -> Self {
        Self { theta, phi, lambda }
    }

    pub fn alpha(&self) -> Complex64 {
        c(self.theta.cos(), 0.0)
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::from_polar(self.theta.sin(), self.phi)
    }
}

pub fn scenario_model(name: Scenario, params: &ScenarioParams) -> Result<MeasurementModel> {
    if !(params.theta.is_finite() && params.phi.is_finite() && params.lambda.is_finite()) {
        return Err(ModelError::Invalid(
            "scenario parameters must be finite".into(),
        ));
    }
    let probe = PureState::basis(2, 1)?;
    let (alpha, beta) = (params.alpha(), params.beta());
    let sx = pauli(Axis::X);
    let sy = pauli(Axis::Y);

    let (system, a, b) = match name {
        Scenario::Fig1 => {
            let u = rotation_unitary(alpha, beta)?;
            let psi = PureState::new(u.apply(PureState::basis(2, 0)?.amplitudes())?)?;
            (psi, rotated_pauli(&u, &sx)?, rotated_pauli(&u, &sy)?)
        }
        Scenario::Fig2 | Scenario::Fig3 => {
            let psi = PureState::from_slice(&[alpha, beta])?;
            let scale = if name == Scenario::Fig3 {
                params.lambda
            } else {
                1.0
            };
            (psi, sx.scale(scale), sy)
        }
    };
    MeasurementModel::new(system, probe, a, b, pauli(Axis::X), cnot())
}
