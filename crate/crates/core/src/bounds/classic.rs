use crate::model::NoiseDisturbanceStats;

/// Robertson: `ΔA·ΔB ≥ C_AB`; returns `C_AB`.
pub fn robertson_rhs(s: &NoiseDisturbanceStats) -> f64 {
    s.c_ab
}

/// `L_Ozawa = ε_Aη_B + ε_AΔB + ΔAη_B`.
pub fn ozawa_lhs(s: &NoiseDisturbanceStats) -> f64 {
    s.epsilon_a * s.eta_b + s.epsilon_a * s.delta_b + s.delta_a * s.eta_b
}

fn branciard_with(s: &NoiseDisturbanceStats, eta: f64) -> f64 {
    let (e, da, db, c) = (s.epsilon_a, s.delta_a, s.delta_b, s.c_ab);
    let cross = (da * da * db * db - c * c).max(0.0).sqrt();
    (e * e * db * db + eta * eta * da * da + 2.0 * e * eta * cross)
        .max(0.0)
        .sqrt()
}

/// `L_Branciard = √(ε²ΔB² + η²ΔA² + 2εη√(ΔA²ΔB² − C²))`, bounded below by `C_AB`.
pub fn branciard_lhs(s: &NoiseDisturbanceStats) -> f64 {
    branciard_with(s, s.eta_b)
}

/// Branciard form with `η ← η√(1 − η²/4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightBranciard {
    pub value: f64,
    /// `η > 2` was clamped to 2 before substitution.
    pub clamped: bool,
}

/// Tight Branciard variant, valid when `B_out` and `B_in` share a spectrum.
pub fn branciard_tight_lhs(s: &NoiseDisturbanceStats) -> TightBranciard {
    let clamped = s.eta_b > 2.0;
    let eta = s.eta_b.min(2.0);
    let substituted = eta * (1.0 - eta * eta / 4.0).max(0.0).sqrt();
    TightBranciard {
        value: branciard_with(s, substituted),
        clamped,
    }
}
