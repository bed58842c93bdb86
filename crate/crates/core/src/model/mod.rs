//! Indirect measurement models and their Heisenberg-picture evolution.
//!
//! A [`MeasurementModel`] couples a system in `|ψ⟩` to a probe in `|φ⟩`
//! through a unitary `U` on `H_s ⊗ H_p` (system on the left). The probe
//! observable `M` is read out after the interaction to estimate `A`; `B` is
//! the observable whose disturbance is tracked. [`HeisenbergFrame`] holds the
//! evolved operators on the joint space together with the noise operator
//! `N_A = M_out - A_in` and disturbance operator `D_B = B_out - B_in`.

mod gates;
mod scenario;

pub use gates::{cnot, identity, pauli, projector, rotated_pauli, rotation_unitary, Axis};
pub use scenario::{scenario_model, Scenario, ScenarioParams};

use thiserror::Error;

use crate::qalg::{
    self, commutator, expectation, tensor, variance, Operator, PureState, QalgError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Qalg(#[from] QalgError),

    #[error("{0} must be Hermitian")]
    NotHermitian(&'static str),

    #[error("{0} must be unitary")]
    NotUnitary(&'static str),

    #[error("{what}: expected dimension {expected}, got {found}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("|alpha|^2 + |beta|^2 = {norm}, expected 1")]
    NonNormalized { norm: f64 },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// Full description of one system–probe measurement experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementModel {
    system_state: PureState,
    probe_state: PureState,
    observable_a: Operator,
    observable_b: Operator,
    estimator_m: Operator,
    coupling: Operator,
}

impl MeasurementModel {
    /// Validates dimensions and attests Hermiticity/unitarity at 1e-9.
    pub fn new(
        system_state: PureState,
        probe_state: PureState,
        observable_a: Operator,
        observable_b: Operator,
        estimator_m: Operator,
        coupling: Operator,
    ) -> Result<Self> {
        let ds = system_state.dim();
        let dp = probe_state.dim();
        let check = |what, op: &Operator, expected| {
            if op.dim() != expected {
                Err(ModelError::Dimension {
                    what,
                    expected,
                    found: op.dim(),
                })
            } else {
                Ok(())
            }
        };
        check("observable A", &observable_a, ds)?;
        check("observable B", &observable_b, ds)?;
        check("estimator M", &estimator_m, dp)?;
        check("coupling U", &coupling, ds * dp)?;

        let herm = |op: Operator, what| {
            op.attest_hermitian()
                .map_err(|_| ModelError::NotHermitian(what))
        };
        let observable_a = herm(observable_a, "observable A")?;
        let observable_b = herm(observable_b, "observable B")?;
        let estimator_m = herm(estimator_m, "estimator M")?;
        let coupling = coupling
            .attest_unitary()
            .map_err(|_| ModelError::NotUnitary("coupling U"))?;

        Ok(Self {
            system_state,
            probe_state,
            observable_a,
            observable_b,
            estimator_m,
            coupling,
        })
    }

    pub fn system_state(&self) -> &PureState {
        &self.system_state
    }
    pub fn probe_state(&self) -> &PureState {
        &self.probe_state
    }
    pub fn observable_a(&self) -> &Operator {
        &self.observable_a
    }
    pub fn observable_b(&self) -> &Operator {
        &self.observable_b
    }
    pub fn estimator_m(&self) -> &Operator {
        &self.estimator_m
    }
    pub fn coupling(&self) -> &Operator {
        &self.coupling
    }
    pub fn system_dim(&self) -> usize {
        self.system_state.dim()
    }
    pub fn probe_dim(&self) -> usize {
        self.probe_state.dim()
    }

    /// Same model with global phases applied to the system and probe states.
    pub fn with_state_phases(&self, system_phase: f64, probe_phase: f64) -> Self {
        Self {
            system_state: self.system_state.with_global_phase(system_phase),
            probe_state: self.probe_state.with_global_phase(probe_phase),
            ..self.clone()
        }
    }
}

/// Joint-space operators of a model after Heisenberg evolution.
#[derive(Debug, Clone)]
#[non_exhaustive]
pub struct HeisenbergFrame {
    pub system_state: PureState,
    /// `|Ψ⟩ = |ψ⟩_s ⊗ |φ⟩_p`
    pub joint_state: PureState,
    pub observable_a: Operator,
    pub observable_b: Operator,
    pub coupling: Operator,
    pub a_in: Operator,
    pub b_in: Operator,
    pub m_in: Operator,
    pub a_out: Operator,
    pub b_out: Operator,
    pub m_out: Operator,
    /// `N_A = M_out - A_in`
    pub noise_op: Operator,
    /// `D_B = B_out - B_in`
    pub disturbance_op: Operator,
}

pub fn heisenberg_frame(m: &MeasurementModel) -> Result<HeisenbergFrame> {
    let i_s = Operator::identity(m.system_dim());
    let i_p = Operator::identity(m.probe_dim());
    let u = &m.coupling;

    let a_in = tensor(&m.observable_a, &i_p);
    let b_in = tensor(&m.observable_b, &i_p);
    let m_in = tensor(&i_s, &m.estimator_m);
    let a_out = a_in.conjugate_by(u)?;
    let b_out = b_in.conjugate_by(u)?;
    let m_out = m_in.conjugate_by(u)?;
    let noise_op = m_out.sub(&a_in)?;
    let disturbance_op = b_out.sub(&b_in)?;

    Ok(HeisenbergFrame {
        system_state: m.system_state.clone(),
        joint_state: m.system_state.tensor(&m.probe_state),
        observable_a: m.observable_a.clone(),
        observable_b: m.observable_b.clone(),
        coupling: u.clone(),
        a_in,
        b_in,
        m_in,
        a_out,
        b_out,
        m_out,
        noise_op,
        disturbance_op,
    })
}

impl HeisenbergFrame {
    pub fn joint_dim(&self) -> usize {
        self.joint_state.dim()
    }

    /// Max-abs entry of `[M_out, B_out]`; zero up to round-off for any model.
    pub fn estimator_disturbance_commutator(&self) -> f64 {
        commutator(&self.m_out, &self.b_out)
            .map(|c| c.max_abs())
            .unwrap_or(f64::INFINITY)
    }

    /// `⟨Ψ|X|Ψ⟩` on the joint state.
    pub fn joint_expectation(&self, x: &Operator) -> qalg::Complex64 {
        expectation(x, &self.joint_state).expect("joint-space operator")
    }

    /// `⟨Ψ|[X, Y]|Ψ⟩` on the joint state.
    pub fn joint_commutator(&self, x: &Operator, y: &Operator) -> qalg::Complex64 {
        let c = commutator(x, y).expect("joint-space operators");
        self.joint_expectation(&c)
    }

    /// `⟨ψ|[A, B]|ψ⟩` on the system state.
    pub fn system_commutator(&self) -> qalg::Complex64 {
        let c = commutator(&self.observable_a, &self.observable_b).expect("system operators");
        expectation(&c, &self.system_state).expect("system state")
    }
}

/// Root-mean-square of `X` on `|Ψ⟩` for Hermitian `X`: `√⟨Ψ|X²|Ψ⟩ = ‖X|Ψ⟩‖`.
fn rms(x: &Operator, psi: &PureState) -> f64 {
    x.apply(psi.amplitudes())
        .expect("joint-space operator")
        .norm()
}

/// Noise `ε_A = √⟨Ψ|(M_out - A_in)²|Ψ⟩`.
pub fn epsilon_a(f: &HeisenbergFrame) -> f64 {
    rms(&f.noise_op, &f.joint_state)
}

/// Disturbance `η_B = √⟨Ψ|(B_out - B_in)²|Ψ⟩`.
pub fn eta_b(f: &HeisenbergFrame) -> f64 {
    rms(&f.disturbance_op, &f.joint_state)
}

/// Scalar statistics of a model entering every error–disturbance relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseDisturbanceStats {
    pub epsilon_a: f64,
    pub eta_b: f64,
    /// `ΔA` on the system state.
    pub delta_a: f64,
    /// `ΔB` on the system state.
    pub delta_b: f64,
    /// `ΔN_A` on the joint state.
    pub delta_n: f64,
    /// `ΔD_B` on the joint state.
    pub delta_d: f64,
    /// `C_AB = ½|⟨ψ|[A,B]|ψ⟩|`
    pub c_ab: f64,
}

pub fn frame_stats(f: &HeisenbergFrame) -> NoiseDisturbanceStats {
    let sd = |x: &Operator, s: &PureState| variance(x, s).expect("Hermitian operator").sqrt();
    NoiseDisturbanceStats {
        epsilon_a: epsilon_a(f),
        eta_b: eta_b(f),
        delta_a: sd(&f.observable_a, &f.system_state),
        delta_b: sd(&f.observable_b, &f.system_state),
        delta_n: sd(&f.noise_op, &f.joint_state),
        delta_d: sd(&f.disturbance_op, &f.joint_state),
        c_ab: 0.5 * f.system_commutator().norm(),
    }
}

pub fn stats(m: &MeasurementModel) -> Result<NoiseDisturbanceStats> {
    Ok(frame_stats(&heisenberg_frame(m)?))
}
