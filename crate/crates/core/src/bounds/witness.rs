//! The sum-of-squares relation `ε² + η² ≥ (commutator part) + |⟨Ψ|N_A ± iD_B|Ψ⊥⟩|²`
//! and the strategies for choosing the orthogonal witness `|Ψ⊥⟩`.

use crate::model::{HeisenbergFrame, NoiseDisturbanceStats};
use crate::qalg::{
    haar_random_state, normalize, project_orthogonal, PureState, QalgError, Rng, Vector, ATTEST_TOL,
};

use super::{BoundsError, Result, Sign, Term, ORTHOGONALITY_TOL};

/// How `|Ψ⊥⟩` is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessStrategy {
    /// Best of `count` Haar-random states projected off `|Ψ⟩`.
    Sampled { count: usize, seed: u64 },
    /// The Cauchy–Schwarz-saturating witness.
    Optimal,
    /// A caller-supplied state orthogonal to `|Ψ⟩`.
    Explicit(PureState),
}

impl WitnessStrategy {
    pub fn validate(&self, f: &HeisenbergFrame) -> Result<()> {
        match self {
            WitnessStrategy::Sampled { count, .. } if *count == 0 => Err(
                BoundsError::InvalidStrategy("sampled witness needs at least one sample".into()),
            ),
            WitnessStrategy::Explicit(w) => check_orthogonal(f, w),
            _ => Ok(()),
        }
    }
}

pub(crate) fn check_orthogonal(f: &HeisenbergFrame, w: &PureState) -> Result<()> {
    if w.dim() != f.joint_dim() {
        return Err(QalgError::DimensionMismatch {
            left: f.joint_dim(),
            right: w.dim(),
        }
        .into());
    }
    let overlap = f.joint_state.inner(w).norm();
    if overlap > ORTHOGONALITY_TOL {
        return Err(BoundsError::NotOrthogonal { overlap });
    }
    Ok(())
}

/// The three commutator contributions, each with the sign applied:
/// `s·i⟨ψ|[A,B]|ψ⟩`, `−s·i⟨Ψ|[M_out,B_in]|Ψ⟩`, `−s·i⟨Ψ|[A_in,B_out]|Ψ⟩`.
pub fn commutator_terms(f: &HeisenbergFrame, sign: Sign) -> [Term; 3] {
    let si = sign.i_factor();
    [
        Term {
            label: "s·i<psi|[A,B]|psi>",
            value: si * f.system_commutator(),
        },
        Term {
            label: "-s·i<Psi|[M_out,B_in]|Psi>",
            value: -si * f.joint_commutator(&f.m_out, &f.b_in),
        },
        Term {
            label: "-s·i<Psi|[A_in,B_out]|Psi>",
            value: -si * f.joint_commutator(&f.a_in, &f.b_out),
        },
    ]
}

pub fn commutator_part(f: &HeisenbergFrame, sign: Sign) -> f64 {
    commutator_terms(f, sign).iter().map(Term::real).sum()
}

/// `(N_A − s·iD_B)|Ψ⟩`, so that `⟨Ψ|N_A + s·iD_B|w⟩ = ⟨v|w⟩`.
pub(crate) fn overlap_vector(f: &HeisenbergFrame, sign: Sign) -> Vector {
    let psi = f.joint_state.amplitudes();
    let n = f.noise_op.apply(psi).expect("joint-space operator");
    let d = f.disturbance_op.apply(psi).expect("joint-space operator");
    n - d * sign.i_factor()
}

/// `|⟨Ψ|N_A + s·iD_B|w⟩|²`.
pub fn witness_term(f: &HeisenbergFrame, sign: Sign, w: &PureState) -> Result<f64> {
    if w.dim() != f.joint_dim() {
        return Err(QalgError::DimensionMismatch {
            left: f.joint_dim(),
            right: w.dim(),
        }
        .into());
    }
    Ok(overlap_vector(f, sign).dotc(w.amplitudes()).norm_sqr())
}

/// `normalize(P⊥ (N_A − s·iD_B)|Ψ⟩)`, which maximizes the witness term over
/// all unit states orthogonal to `|Ψ⟩`.
pub fn optimal_witness(f: &HeisenbergFrame, sign: Sign) -> Result<PureState> {
    let v = project_orthogonal(&overlap_vector(f, sign), &f.joint_state)?;
    normalize(&v).map_err(|e| match e {
        QalgError::ZeroVector { .. } => BoundsError::ZeroVector,
        other => other.into(),
    })
}

/// Projects a raw sample `|r⟩` onto the complement of `|Ψ⟩`.
///
/// Evaluates both `U†(I − U|Ψ⟩⟨Ψ|U†)U|r⟩` and `(I − |Ψ⟩⟨Ψ|)|r⟩`; they agree
/// because `U†U = I`. Returns `None` when the projection vanishes.
pub(crate) fn project_sample(f: &HeisenbergFrame, r: &Vector) -> Result<Option<PureState>> {
    let u = f.coupling.matrix();
    let psi = f.joint_state.amplitudes();
    let ur = u * r;
    let upsi = u * psi;
    let heisenberg = u.adjoint() * (&ur - &upsi * upsi.dotc(&ur));
    let plain = project_orthogonal(r, &f.joint_state)?;
    let deviation = (&heisenberg - &plain).norm();
    if deviation > ATTEST_TOL {
        return Err(BoundsError::WitnessFormMismatch { deviation });
    }
    match normalize(&plain) {
        Ok(w) => Ok(Some(w)),
        Err(QalgError::ZeroVector { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Best witness among the projections of `candidates`; degenerate ones are skipped.
pub fn sampled_witness_from<I>(
    f: &HeisenbergFrame,
    sign: Sign,
    candidates: I,
) -> Result<(PureState, f64)>
where
    I: IntoIterator<Item = Vector>,
{
    let v = overlap_vector(f, sign);
    let mut best: Option<(PureState, f64)> = None;
    for r in candidates {
        let Some(w) = project_sample(f, &r)? else {
            continue;
        };
        let value = v.dotc(w.amplitudes()).norm_sqr();
        if best.as_ref().map_or(true, |(_, b)| value > *b) {
            best = Some((w, value));
        }
    }
    best.ok_or(BoundsError::AllSamplesDegenerate)
}

/// Best of `n` Haar-random witnesses drawn from `rng`.
pub fn sampled_witness(
    f: &HeisenbergFrame,
    sign: Sign,
    n: usize,
    rng: &mut Rng,
) -> Result<(PureState, f64)> {
    if n == 0 {
        return Err(BoundsError::InvalidStrategy(
            "sampled witness needs at least one sample".into(),
        ));
    }
    let d = f.joint_dim();
    let draws = (0..n).map(|_| haar_random_state(d, rng).into_amplitudes());
    sampled_witness_from(f, sign, draws)
}

/// Evaluated right-hand side of the sum-of-squares relation.
#[derive(Debug, Clone, PartialEq)]
pub struct Thm1Bound {
    pub commutator_part: f64,
    pub witness_term: f64,
    pub rhs: f64,
    /// `None` when the optimal witness degenerates and the term is taken as 0.
    pub witness: Option<PureState>,
}

/// `s·i⟨ψ|[A,B]|ψ⟩ − s·i⟨Ψ|[M_out,B_in]|Ψ⟩ − s·i⟨Ψ|[A_in,B_out]|Ψ⟩ + |⟨Ψ|N_A + s·iD_B|Ψ⊥⟩|²`.
///
/// For every witness orthogonal to `|Ψ⟩`, `ε_A² + η_B²` is at least this value.
pub fn thm1_rhs(f: &HeisenbergFrame, sign: Sign, strategy: &WitnessStrategy) -> Result<Thm1Bound> {
    strategy.validate(f)?;
    let commutator_part = commutator_part(f, sign);
    let (witness, witness_term) = match strategy {
        WitnessStrategy::Optimal => match optimal_witness(f, sign) {
            Ok(w) => {
                let t = witness_term(f, sign, &w)?;
                (Some(w), t)
            }
            Err(BoundsError::ZeroVector) => (None, 0.0),
            Err(e) => return Err(e),
        },
        WitnessStrategy::Explicit(w) => (Some(w.clone()), witness_term(f, sign, w)?),
        WitnessStrategy::Sampled { count, seed } => {
            let (w, t) = sampled_witness(f, sign, *count, &mut Rng::new(*seed))?;
            (Some(w), t)
        }
    };
    Ok(Thm1Bound {
        commutator_part,
        witness_term,
        rhs: commutator_part + witness_term,
        witness,
    })
}

/// `L_New^(1) = ½[ε² + η² + s·i⟨[M_out,B_in]⟩ + s·i⟨[A_in,B_out]⟩ − W]`,
/// bounded below by `C_AB`.
pub fn l_new1(
    f: &HeisenbergFrame,
    stats: &NoiseDisturbanceStats,
    sign: Sign,
    witness_term: f64,
) -> f64 {
    let [_, m_b, a_b] = commutator_terms(f, sign);
    let sum = stats.epsilon_a.powi(2) + stats.eta_b.powi(2);
    0.5 * (sum - m_b.real() - a_b.real() - witness_term)
}
