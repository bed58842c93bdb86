//! Boundary curves of the relations in the ε–η plane at fixed spreads.

use std::fmt;

use thiserror::Error;

/// Radicand deficit tolerated before `ΔA²ΔB² < C²` is reported.
const DOMAIN_TOL: f64 = 1e-9;
/// Tiny negative η from round-off at a curve's endpoint is snapped to 0.
const ENDPOINT_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum FrontierError {
    #[error("ΔA²ΔB² = {product} is below C² = {c_squared}")]
    Domain { product: f64, c_squared: f64 },

    #[error("invalid `{field}`: {message}")]
    Validation {
        field: &'static str,
        message: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveName {
    Ozawa,
    Branciard,
    New,
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveName::Ozawa => "ozawa",
            CurveName::Branciard => "branciard",
            CurveName::New => "new",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierCurve {
    pub name: CurveName,
    /// `(ε, η)` in increasing ε.
    pub points: Vec<(f64, f64)>,
}

/// Fixed parameters of the three boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontierParams {
    pub c_ab: f64,
    pub delta_a: f64,
    pub delta_b: f64,
    /// Radius squared of the circle `ε² + η² = new_rhs`.
    pub new_rhs: f64,
}

impl FrontierParams {
    fn cross(&self) -> f64 {
        let (a, b, c) = (self.delta_a, self.delta_b, self.c_ab);
        (a * a * b * b - c * c).max(0.0).sqrt()
    }

    /// `εη + εΔB + ΔAη − C`
    pub fn ozawa_residual(&self, e: f64, h: f64) -> f64 {
        e * h + e * self.delta_b + self.delta_a * h - self.c_ab
    }

    /// `ε²ΔB² + η²ΔA² + 2εη√(ΔA²ΔB² − C²) − C²`
    pub fn branciard_residual(&self, e: f64, h: f64) -> f64 {
        let (a, b, c) = (self.delta_a, self.delta_b, self.c_ab);
        e * e * b * b + h * h * a * a + 2.0 * e * h * self.cross() - c * c
    }

    /// `ε² + η² − new_rhs`
    pub fn new_residual(&self, e: f64, h: f64) -> f64 {
        e * e + h * h - self.new_rhs
    }

    pub fn residual(&self, name: CurveName, e: f64, h: f64) -> f64 {
        match name {
            CurveName::Ozawa => self.ozawa_residual(e, h),
            CurveName::Branciard => self.branciard_residual(e, h),
            CurveName::New => self.new_residual(e, h),
        }
    }

    fn ozawa_eta(&self, e: f64) -> Option<f64> {
        let den = e + self.delta_a;
        (den > 0.0).then(|| (self.c_ab - e * self.delta_b) / den)
    }

    fn branciard_eta(&self, e: f64) -> Option<f64> {
        let a = self.delta_a;
        let r = a * a - e * e;
        (r >= 0.0).then(|| (-e * self.cross() + self.c_ab * r.sqrt()) / (a * a))
    }

    fn new_eta(&self, e: f64) -> Option<f64> {
        let r = self.new_rhs - e * e;
        (r >= 0.0).then(|| r.sqrt())
    }
}

fn non_negative(h: Option<f64>) -> Option<f64> {
    match h {
        Some(h) if h >= 0.0 => Some(h),
        Some(h) if h >= -ENDPOINT_TOL => Some(0.0),
        _ => None,
    }
}

/// Traces the Ozawa, Branciard and new-bound boundaries over an ε grid of
/// `grid_count` points on `[0, max(C/ΔB, √new_rhs)]`, keeping `η ≥ 0`.
pub fn frontier(
    c_ab: f64,
    delta_a: f64,
    delta_b: f64,
    new_rhs_value: f64,
    grid_count: usize,
) -> Result<Vec<FrontierCurve>, FrontierError> {
    let positive = |field, v: f64| {
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(FrontierError::Validation {
                field,
                message: format!("must be positive and finite, got {v}"),
            })
        }
    };
    positive("c_ab", c_ab)?;
    positive("delta_a", delta_a)?;
    positive("delta_b", delta_b)?;
    if !(new_rhs_value.is_finite() && new_rhs_value >= 0.0) {
        return Err(FrontierError::Validation {
            field: "new_rhs_value",
            message: format!("must be non-negative and finite, got {new_rhs_value}"),
        });
    }
    if grid_count < 2 {
        return Err(FrontierError::Validation {
            field: "grid_count",
            message: "must be at least 2".into(),
        });
    }
    let product = delta_a * delta_a * delta_b * delta_b;
    let c_squared = c_ab * c_ab;
    if product < c_squared - DOMAIN_TOL {
        return Err(FrontierError::Domain { product, c_squared });
    }

    let p = FrontierParams {
        c_ab,
        delta_a,
        delta_b,
        new_rhs: new_rhs_value,
    };
    let eps_max = (c_ab / delta_b).max(new_rhs_value.sqrt());
    let grid: Vec<f64> = (0..grid_count)
        .map(|k| eps_max * k as f64 / (grid_count - 1) as f64)
        .collect();
    let trace = |name, solve: &dyn Fn(f64) -> Option<f64>| FrontierCurve {
        name,
        points: grid
            .iter()
            .filter_map(|&e| non_negative(solve(e)).map(|h| (e, h)))
            .collect(),
    };
    Ok(vec![
        trace(CurveName::Ozawa, &|e| p.ozawa_eta(e)),
        trace(CurveName::Branciard, &|e| p.branciard_eta(e)),
        trace(CurveName::New, &|e| p.new_eta(e)),
    ])
}
