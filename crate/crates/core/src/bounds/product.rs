//! Product-form relations: the strengthened Robertson bound with an
//! orthogonal witness, and the Ozawa-type relation built from three copies
//! of it.

use crate::model::{frame_stats, HeisenbergFrame};
use crate::qalg::{
    commutator, expectation, variance, Complex64, Operator, PureState, QalgError, Rng, Vector,
};

use super::witness::{check_orthogonal, project_sample};
use super::{BoundsError, Result, Sign, DENOMINATOR_GUARD, ORTHOGONALITY_TOL};

/// `(s·i/2)⟨s|[A,B]|s⟩ / (1 − ½|⟨s|A/ΔA + s·iB/ΔB|w⟩|²)`, a lower bound on `ΔAΔB`
/// for every `w` orthogonal to `s` when the sign makes the numerator nonnegative.
pub fn maccone_pati_bound(
    a: &Operator,
    b: &Operator,
    s: &PureState,
    w: &PureState,
    sign: Sign,
) -> Result<f64> {
    if w.dim() != s.dim() {
        return Err(QalgError::DimensionMismatch {
            left: s.dim(),
            right: w.dim(),
        }
        .into());
    }
    let overlap = s.inner(w).norm();
    if overlap > ORTHOGONALITY_TOL {
        return Err(BoundsError::NotOrthogonal { overlap });
    }
    let da = variance(a, s)?.sqrt();
    let db = variance(b, s)?.sqrt();
    if da <= DENOMINATOR_GUARD {
        return Err(BoundsError::DegenerateVariance("delta A"));
    }
    if db <= DENOMINATOR_GUARD {
        return Err(BoundsError::DegenerateVariance("delta B"));
    }
    let numerator = (sign.i_factor() * 0.5 * expectation(&commutator(a, b)?, s)?).re;
    let aw = a.apply(w.amplitudes())?;
    let bw = b.apply(w.amplitudes())?;
    let combined = aw * Complex64::new(1.0 / da, 0.0) + bw * (sign.i_factor() / db);
    let denominator = 1.0 - 0.5 * s.amplitudes().dotc(&combined).norm_sqr();
    if denominator <= DENOMINATOR_GUARD {
        return Err(BoundsError::DenominatorVanishes { denominator });
    }
    Ok(numerator / denominator)
}

/// `L_New^(2)` evaluated at one witness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LNew2 {
    pub value: f64,
    /// The three subtracted terms, in the order (N_A, D_B), (A, D_B), (N_A, B).
    pub subtracted: [f64; 3],
}

/// Witness-independent parts of `L_New^(2)` for one frame.
///
/// Each subtracted term is `½|⟨Ψ|X·ΔY + s·iY·ΔX|w⟩|² / P` for the pairs
/// `(X, Y) = (N_A, D_B), (A_in, D_B), (N_A, B_in)` with `P = ε_Aη_B, ΔAη_B, ε_AΔB`.
/// The sign `s` of each term is chosen on that pair's own commutator
/// `⟨Ψ|[X,Y]|Ψ⟩`; a single shared sign does not give a valid bound.
#[derive(Debug, Clone)]
pub struct ProductTerms {
    ozawa: f64,
    vectors: [Vector; 3],
    denominators: [f64; 3],
    signs: [Sign; 3],
}

impl ProductTerms {
    pub fn new(f: &HeisenbergFrame) -> Result<Self> {
        let st = frame_stats(f);
        for (value, name) in [
            (st.epsilon_a, "epsilon_a"),
            (st.eta_b, "eta_b"),
            (st.delta_a, "delta_a"),
            (st.delta_b, "delta_b"),
            (st.delta_n, "delta_n"),
            (st.delta_d, "delta_d"),
        ] {
            if value <= DENOMINATOR_GUARD {
                return Err(BoundsError::DegenerateDenominator(name));
            }
        }
        let psi = &f.joint_state;
        let pair = |x: &Operator, y: &Operator, dx: f64, dy: f64| -> Result<(Vector, Sign)> {
            let sign = Sign::for_commutator(expectation(&commutator(x, y)?, psi)?);
            // ⟨Ψ|XΔY + s·iYΔX|w⟩ = ⟨v|w⟩ with v = (XΔY − s·iYΔX)|Ψ⟩.
            let xv = x.apply(psi.amplitudes())? * Complex64::new(dy, 0.0);
            let yv = y.apply(psi.amplitudes())? * Complex64::new(dx, 0.0);
            Ok((xv - yv * sign.i_factor(), sign))
        };
        let (v1, s1) = pair(&f.noise_op, &f.disturbance_op, st.delta_n, st.delta_d)?;
        let (v2, s2) = pair(&f.a_in, &f.disturbance_op, st.delta_a, st.delta_d)?;
        let (v3, s3) = pair(&f.noise_op, &f.b_in, st.delta_n, st.delta_b)?;
        Ok(Self {
            ozawa: super::ozawa_lhs(&st),
            vectors: [v1, v2, v3],
            denominators: [
                st.epsilon_a * st.eta_b,
                st.delta_a * st.eta_b,
                st.epsilon_a * st.delta_b,
            ],
            signs: [s1, s2, s3],
        })
    }

    /// The Ozawa left-hand side the terms are subtracted from.
    pub fn ozawa(&self) -> f64 {
        self.ozawa
    }

    pub fn signs(&self) -> [Sign; 3] {
        self.signs
    }

    /// Assumes `w` is a unit vector orthogonal to `|Ψ⟩`.
    pub fn evaluate(&self, w: &PureState) -> LNew2 {
        let mut subtracted = [0.0; 3];
        for (k, (v, den)) in self.vectors.iter().zip(self.denominators).enumerate() {
            subtracted[k] = 0.5 * v.dotc(w.amplitudes()).norm_sqr() / den;
        }
        LNew2 {
            value: self.ozawa - subtracted.iter().sum::<f64>(),
            subtracted,
        }
    }
}

/// `L_New^(2)` at witness `w`, bounded below by `C_AB` for every valid `w`.
pub fn l_new2(f: &HeisenbergFrame, w: &PureState) -> Result<LNew2> {
    check_orthogonal(f, w)?;
    Ok(ProductTerms::new(f)?.evaluate(w))
}

/// Smallest `L_New^(2)` over `n` Haar-random witnesses.
pub fn l_new2_sampled(f: &HeisenbergFrame, n: usize, rng: &mut Rng) -> Result<(PureState, LNew2)> {
    if n == 0 {
        return Err(BoundsError::InvalidStrategy(
            "sampled witness needs at least one sample".into(),
        ));
    }
    let terms = ProductTerms::new(f)?;
    let d = f.joint_dim();
    let mut best: Option<(PureState, LNew2)> = None;
    for _ in 0..n {
        let r = crate::qalg::haar_random_state(d, rng).into_amplitudes();
        let Some(w) = project_sample(f, &r)? else {
            continue;
        };
        let value = terms.evaluate(&w);
        if best.as_ref().map_or(true, |(_, b)| value.value < b.value) {
            best = Some((w, value));
        }
    }
    best.ok_or(BoundsError::AllSamplesDegenerate)
}
