//! The completeness-based sum equality and the inequality it yields.

use crate::model::HeisenbergFrame;
use crate::qalg::{orthonormal_complement_basis, Operator, PureState, QalgError, ATTEST_TOL};

use super::witness::{check_orthogonal, commutator_part, overlap_vector};
use super::{BoundsError, Result, Sign};

/// Commutator part plus `Σ_k |⟨Ψ|N_A + s·iD_B|Ψ_k⊥⟩|²` over a complete
/// orthonormal basis of the complement of `|Ψ⟩`.
pub fn eq21_rhs(f: &HeisenbergFrame, sign: Sign) -> f64 {
    let basis = orthonormal_complement_basis(&f.joint_state);
    eq21_sum(f, sign, &basis) + commutator_part(f, sign)
}

/// As [`eq21_rhs`] over a caller-supplied complement basis, which must hold
/// `d − 1` mutually orthonormal states each orthogonal to `|Ψ⟩`.
pub fn eq21_rhs_with_basis(f: &HeisenbergFrame, sign: Sign, basis: &[PureState]) -> Result<f64> {
    let d = f.joint_dim();
    if basis.len() + 1 != d {
        return Err(QalgError::DimensionMismatch {
            left: d - 1,
            right: basis.len(),
        }
        .into());
    }
    for (i, w) in basis.iter().enumerate() {
        check_orthogonal(f, w)?;
        for other in &basis[..i] {
            let overlap = other.inner(w).norm();
            if overlap > ATTEST_TOL {
                return Err(BoundsError::NotOrthogonal { overlap });
            }
        }
    }
    Ok(eq21_sum(f, sign, basis) + commutator_part(f, sign))
}

fn eq21_sum(f: &HeisenbergFrame, sign: Sign, basis: &[PureState]) -> f64 {
    let v = overlap_vector(f, sign);
    basis
        .iter()
        .map(|w| v.dotc(w.amplitudes()).norm_sqr())
        .sum()
}

/// Both sides of
/// `ΔN_A² + ΔD_B² = s·i⟨Ψ|[N_A,D_B]|Ψ⟩ + Σ_k |⟨Ψ|N̄ + s·iD̄|Ψ_k⊥⟩|²`
/// with `N̄ = N_A − ⟨N_A⟩`, `D̄ = D_B − ⟨D_B⟩`. Holds for either sign.
pub fn variance_sum_equality_check(f: &HeisenbergFrame, sign: Sign) -> (f64, f64) {
    let psi = &f.joint_state;
    let centered = |x: &Operator| {
        let mean = f.joint_expectation(x).re;
        x.sub(&Operator::identity(x.dim()).scale(mean))
            .expect("joint-space operator")
    };
    let n = centered(&f.noise_op);
    let d = centered(&f.disturbance_op);
    let nv = n.apply(psi.amplitudes()).expect("joint-space operator");
    let dv = d.apply(psi.amplitudes()).expect("joint-space operator");
    let lhs = nv.norm_squared() + dv.norm_squared();

    let commutator = (sign.i_factor() * f.joint_commutator(&f.noise_op, &f.disturbance_op)).re;
    // ⟨Ψ|N̄ + s·iD̄|w⟩ = ⟨(N̄ − s·iD̄)Ψ|w⟩
    let v = nv - dv * sign.i_factor();
    let sum: f64 = orthonormal_complement_basis(psi)
        .iter()
        .map(|w| v.dotc(w.amplitudes()).norm_sqr())
        .sum();
    (lhs, commutator + sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        frame_stats, heisenberg_frame, identity, pauli, scenario_model, Axis, MeasurementModel,
        Scenario, ScenarioParams,
    };
    use crate::qalg::{complete_basis, haar_random_state, random_hermitian, random_unitary, Rng};

    fn random_frame(rng: &mut Rng) -> HeisenbergFrame {
        let m = MeasurementModel::new(
            haar_random_state(2, rng),
            haar_random_state(2, rng),
            random_hermitian(2, rng),
            random_hermitian(2, rng),
            random_hermitian(2, rng),
            random_unitary(4, rng),
        )
        .unwrap();
        heisenberg_frame(&m).unwrap()
    }

    #[test]
    fn fig2_zero_is_four() {
        let m = scenario_model(Scenario::Fig2, &ScenarioParams::new(0.0, 0.0, 1.0)).unwrap();
        let f = heisenberg_frame(&m).unwrap();
        let sign = Sign::theorem1(&f);
        assert!((commutator_part(&f, sign) - 2.0).abs() < 1e-12);
        assert!((eq21_rhs(&f, sign) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_operators_give_zero() {
        let m = MeasurementModel::new(
            PureState::basis(2, 0).unwrap(),
            PureState::basis(1, 0).unwrap(),
            identity(2),
            pauli(Axis::Z),
            identity(1),
            identity(2),
        )
        .unwrap();
        let f = heisenberg_frame(&m).unwrap();
        assert_eq!(eq21_rhs(&f, Sign::Plus), 0.0);
        let (l, r) = variance_sum_equality_check(&f, Sign::Plus);
        assert_eq!((l, r), (0.0, 0.0));
    }

    #[test]
    fn basis_independent_and_sound() {
        let mut rng = Rng::new(21);
        for _ in 0..100 {
            let f = random_frame(&mut rng);
            let sign = Sign::theorem1(&f);
            let a = eq21_rhs(&f, sign);
            let seeds: Vec<_> = (0..4)
                .map(|_| haar_random_state(4, &mut rng).into_amplitudes())
                .collect();
            let other = complete_basis(&f.joint_state, seeds);
            let b = eq21_rhs_with_basis(&f, sign, &other).unwrap();
            assert!((a - b).abs() < 1e-9);
            let s = frame_stats(&f);
            assert!(s.epsilon_a.powi(2) + s.eta_b.powi(2) >= a - 1e-9);
        }
    }

    #[test]
    fn incomplete_basis_rejected() {
        let mut rng = Rng::new(2);
        let f = random_frame(&mut rng);
        let mut basis = orthonormal_complement_basis(&f.joint_state);
        basis.pop();
        assert!(eq21_rhs_with_basis(&f, Sign::Plus, &basis).is_err());
    }

    #[test]
    fn equality_holds_for_both_signs() {
        let mut rng = Rng::new(8);
        for _ in 0..200 {
            let f = random_frame(&mut rng);
            for sign in [Sign::Plus, Sign::Minus] {
                let (l, r) = variance_sum_equality_check(&f, sign);
                assert!((l - r).abs() < 1e-9, "{l} vs {r}");
            }
        }
    }

    #[test]
    fn zero_noise_collapses_to_disturbance_spread() {
        // CNOT onto probe |0⟩ read out in σz copies σz exactly, so N_A|Ψ⟩ = 0.
        let mut rng = Rng::new(4);
        let b = random_hermitian(2, &mut rng);
        let u = crate::model::cnot();
        let m = MeasurementModel::new(
            haar_random_state(2, &mut rng),
            PureState::basis(2, 0).unwrap(),
            pauli(Axis::Z),
            b,
            pauli(Axis::Z),
            u,
        )
        .unwrap();
        let f = heisenberg_frame(&m).unwrap();
        assert!(frame_stats(&f).delta_n < 1e-12);
        let (l, r) = variance_sum_equality_check(&f, Sign::Plus);
        assert!((l - frame_stats(&f).delta_d.powi(2)).abs() < 1e-12);
        assert!((l - r).abs() < 1e-12);
    }
}
