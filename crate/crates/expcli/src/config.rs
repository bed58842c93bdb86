//! Flat `key=value` experiment configuration.
//!
//! ```text
//! # comments start with '#'
//! scenario=fig3
//! theta_count=10000
//! lambda=0.01
//! witness.kind=sampled
//! witness.samples=1000
//! seed=42
//! ```
//!
//! Custom scenarios give operators as row-major `re,im` pairs separated by
//! commas (`a.entries`, `b.entries`, `m.entries`, `u.entries`) and states as
//! `psi.amplitudes` (system) and `phi_p.amplitudes` (probe).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use edlab_core::bounds::{WitnessStrategy, DEFAULT_SAMPLES};
use edlab_core::model::{scenario_model, MeasurementModel, Scenario, ScenarioParams};
use edlab_core::qalg::{Complex64, Operator, PureState, Vector};
use thiserror::Error;

pub const DEFAULT_THETA_COUNT: usize = 10_000;
pub const DEFAULT_SEED: u64 = 42;
pub const FIG3_DEFAULT_LAMBDA: f64 = 0.01;

const KEYS: &[&str] = &[
    "scenario",
    "theta",
    "theta_count",
    "phi",
    "lambda",
    "witness.kind",
    "witness.samples",
    "witness.amplitudes",
    "seed",
    "output_path",
    "a.entries",
    "b.entries",
    "m.entries",
    "u.entries",
    "psi.amplitudes",
    "phi_p.amplitudes",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid `{field}`: {message}")]
    Validation {
        field: &'static str,
        message: String,
    },
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        field,
        message: message.into(),
    }
}

/// Which model family a configuration describes.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioKind {
    Named(Scenario),
    Custom(Box<MeasurementModel>),
}

impl ScenarioKind {
    pub fn name(&self) -> String {
        match self {
            ScenarioKind::Named(s) => s.to_string(),
            ScenarioKind::Custom(_) => "custom".into(),
        }
    }
}

/// Witness choice; sampled strategies get their seed at evaluation time.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessConfig {
    Sampled { samples: usize },
    Optimal,
    Explicit(PureState),
}

impl WitnessConfig {
    pub fn strategy(&self, seed: u64) -> WitnessStrategy {
        match self {
            WitnessConfig::Sampled { samples } => WitnessStrategy::Sampled {
                count: *samples,
                seed,
            },
            WitnessConfig::Optimal => WitnessStrategy::Optimal,
            WitnessConfig::Explicit(w) => WitnessStrategy::Explicit(w.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    /// State angle for single-model evaluation.
    pub theta: f64,
    pub theta_count: usize,
    pub phi: f64,
    pub lambda: f64,
    pub witness: WitnessConfig,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
}

impl ScenarioConfig {
    /// A named scenario with every default applied.
    pub fn named(scenario: Scenario) -> Self {
        Self {
            scenario: ScenarioKind::Named(scenario),
            theta: 0.0,
            theta_count: DEFAULT_THETA_COUNT,
            phi: 0.0,
            lambda: default_lambda(scenario),
            witness: WitnessConfig::Sampled {
                samples: DEFAULT_SAMPLES,
            },
            seed: DEFAULT_SEED,
            output_path: None,
        }
    }

    /// The model at state angle `theta`; custom models ignore the angle.
    pub fn model_at(&self, theta: f64) -> edlab_core::model::Result<MeasurementModel> {
        match &self.scenario {
            ScenarioKind::Named(s) => {
                scenario_model(*s, &ScenarioParams::new(theta, self.phi, self.lambda))
            }
            ScenarioKind::Custom(m) => Ok((**m).clone()),
        }
    }

    pub fn model(&self) -> edlab_core::model::Result<MeasurementModel> {
        self.model_at(self.theta)
    }

    pub fn strategy(&self) -> WitnessStrategy {
        self.witness.strategy(self.seed)
    }
}

fn default_lambda(s: Scenario) -> f64 {
    match s {
        Scenario::Fig3 => FIG3_DEFAULT_LAMBDA,
        _ => 1.0,
    }
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

impl FromStr for ScenarioConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_config(s)
    }
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut raw: BTreeMap<&'static str, (usize, String)> = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("expected key=value, got `{line}`"),
            });
        };
        let key = key.trim();
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("unknown key `{key}`"),
            });
        };
        if raw
            .insert(known, (line_no, value.trim().to_string()))
            .is_some()
        {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    Raw(raw).build()
}

struct Raw(BTreeMap<&'static str, (usize, String)>);

impl Raw {
    fn get(&self, key: &'static str) -> Option<(usize, &str)> {
        self.0.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn parsed<T: FromStr>(&self, key: &'static str) -> Result<Option<T>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| ConfigError::Parse {
                line,
                message: format!("cannot parse `{v}` for `{key}`"),
            }),
        }
    }

    fn complex_list(&self, key: &'static str) -> Result<Option<Vec<Complex64>>, ConfigError> {
        let Some((line, v)) = self.get(key) else {
            return Ok(None);
        };
        let parts: Vec<&str> = v.split(',').map(str::trim).collect();
        if parts.len() % 2 != 0 {
            return Err(ConfigError::Parse {
                line,
                message: format!("`{key}` needs an even number of re,im values"),
            });
        }
        let mut values = Vec::with_capacity(parts.len() / 2);
        for pair in parts.chunks(2) {
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| ConfigError::Parse {
                    line,
                    message: format!("cannot parse `{s}` in `{key}`"),
                })
            };
            values.push(Complex64::new(parse(pair[0])?, parse(pair[1])?));
        }
        Ok(Some(values))
    }

    fn operator(&self, key: &'static str) -> Result<Operator, ConfigError> {
        let entries = self
            .complex_list(key)?
            .ok_or_else(|| invalid(key, "required for custom scenarios"))?;
        Operator::from_entries(&entries).map_err(|e| invalid(key, e.to_string()))
    }

    fn state(&self, key: &'static str) -> Result<Option<PureState>, ConfigError> {
        match self.complex_list(key)? {
            None => Ok(None),
            Some(amps) => PureState::new(Vector::from_vec(amps))
                .map(Some)
                .map_err(|e| invalid(key, e.to_string())),
        }
    }

    fn build(self) -> Result<ScenarioConfig, ConfigError> {
        let name = self
            .get("scenario")
            .map(|(_, v)| v.to_string())
            .ok_or_else(|| invalid("scenario", "missing"))?;
        let scenario = if name == "custom" {
            let psi = self
                .state("psi.amplitudes")?
                .ok_or_else(|| invalid("psi.amplitudes", "required for custom scenarios"))?;
            let phi_p = self
                .state("phi_p.amplitudes")?
                .ok_or_else(|| invalid("phi_p.amplitudes", "required for custom scenarios"))?;
            let model = MeasurementModel::new(
                psi,
                phi_p,
                self.operator("a.entries")?,
                self.operator("b.entries")?,
                self.operator("m.entries")?,
                self.operator("u.entries")?,
            )
            .map_err(|e| invalid("scenario", e.to_string()))?;
            ScenarioKind::Custom(Box::new(model))
        } else {
            ScenarioKind::Named(
                name.parse::<Scenario>()
                    .map_err(|_| invalid("scenario", format!("unknown scenario `{name}`")))?,
            )
        };
        if let ScenarioKind::Named(_) = scenario {
            for key in [
                "a.entries",
                "b.entries",
                "m.entries",
                "u.entries",
                "psi.amplitudes",
                "phi_p.amplitudes",
            ] {
                if self.get(key).is_some() {
                    return Err(invalid(key, "only allowed for custom scenarios"));
                }
            }
        }

        let theta: f64 = self.parsed("theta")?.unwrap_or(0.0);
        let theta_count: usize = self.parsed("theta_count")?.unwrap_or(DEFAULT_THETA_COUNT);
        let phi: f64 = self.parsed("phi")?.unwrap_or(0.0);
        let lambda: f64 = match self.parsed("lambda")? {
            Some(l) => l,
            None => match &scenario {
                ScenarioKind::Named(s) => default_lambda(*s),
                ScenarioKind::Custom(_) => 1.0,
            },
        };
        let seed: u64 = self.parsed("seed")?.unwrap_or(DEFAULT_SEED);
        if theta_count == 0 {
            return Err(invalid("theta_count", "must be at least 1"));
        }
        for (field, v) in [("theta", theta), ("phi", phi), ("lambda", lambda)] {
            if !v.is_finite() {
                return Err(invalid(field, "must be finite"));
            }
        }

        let kind = self.get("witness.kind").map_or("sampled", |(_, v)| v);
        let samples: Option<usize> = self.parsed("witness.samples")?;
        let amplitudes = self.state("witness.amplitudes")?;
        let witness = match kind {
            "sampled" => {
                let samples = samples.unwrap_or(DEFAULT_SAMPLES);
                if samples == 0 {
                    return Err(invalid("witness.samples", "must be at least 1"));
                }
                WitnessConfig::Sampled { samples }
            }
            "optimal" => WitnessConfig::Optimal,
            "explicit" => WitnessConfig::Explicit(amplitudes.clone().ok_or_else(|| {
                invalid("witness.amplitudes", "required when witness.kind=explicit")
            })?),
            other => {
                return Err(invalid(
                    "witness.kind",
                    format!("expected sampled, optimal or explicit, got `{other}`"),
                ))
            }
        };
        if kind != "explicit" && amplitudes.is_some() {
            return Err(invalid(
                "witness.amplitudes",
                "only allowed when witness.kind=explicit",
            ));
        }

        Ok(ScenarioConfig {
            scenario,
            theta,
            theta_count,
            phi,
            lambda,
            witness,
            seed,
            output_path: self.get("output_path").map(|(_, v)| PathBuf::from(v)),
        })
    }
}

fn complex_list(values: impl IntoIterator<Item = Complex64>) -> String {
    let mut out = String::new();
    for (i, z) in values.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        // Display for f64 prints the shortest string that parses back exactly.
        let _ = write!(out, "{},{}", z.re, z.im);
    }
    out
}

/// Renders a custom-scenario configuration for `model` that parses back to
/// the same model bit for bit.
pub fn custom_config_text(
    model: &MeasurementModel,
    witness: Option<&PureState>,
    seed: u64,
) -> String {
    let mut out = String::from("scenario=custom\n");
    let _ = writeln!(out, "seed={seed}");
    let ops = [
        ("a.entries", model.observable_a()),
        ("b.entries", model.observable_b()),
        ("m.entries", model.estimator_m()),
        ("u.entries", model.coupling()),
    ];
    for (key, op) in ops {
        let _ = writeln!(out, "{key}={}", complex_list(op.to_row_major()));
    }
    let _ = writeln!(
        out,
        "psi.amplitudes={}",
        complex_list(model.system_state().amplitudes().iter().copied())
    );
    let _ = writeln!(
        out,
        "phi_p.amplitudes={}",
        complex_list(model.probe_state().amplitudes().iter().copied())
    );
    match witness {
        Some(w) => {
            out.push_str("witness.kind=explicit\n");
            let _ = writeln!(
                out,
                "witness.amplitudes={}",
                complex_list(w.amplitudes().iter().copied())
            );
        }
        None => out.push_str("witness.kind=optimal\n"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use edlab_core::qalg::{haar_random_state, random_hermitian, random_unitary, Rng};

    #[test]
    fn defaults_for_fig2() {
        let c = parse_config("scenario=fig2\nseed=42").unwrap();
        assert_eq!(c.scenario, ScenarioKind::Named(Scenario::Fig2));
        assert_eq!(c.theta_count, 10_000);
        assert_eq!(c.phi, 0.0);
        assert_eq!(c.lambda, 1.0);
        assert_eq!(c.seed, 42);
        assert_eq!(c.witness, WitnessConfig::Sampled { samples: 1000 });
        assert_eq!(c, ScenarioConfig::named(Scenario::Fig2));
    }

    #[test]
    fn fig3_lambda_default() {
        let c = parse_config("scenario=fig3").unwrap();
        assert_eq!(c.lambda, 0.01);
    }

    #[test]
    fn zero_theta_count_rejected() {
        let e = parse_config("scenario=fig2\ntheta_count=0").unwrap_err();
        assert!(matches!(
            e,
            ConfigError::Validation {
                field: "theta_count",
                ..
            }
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = parse_config("# header\n\n scenario = fig1 \nphi=1.5 # not a comment\n");
        // Trailing text is part of the value, so phi fails to parse on line 4.
        assert!(matches!(c, Err(ConfigError::Parse { line: 4, .. })));
        let c = parse_config("# header\n\n scenario = fig1 \nphi=1.5\n").unwrap();
        assert_eq!(c.phi, 1.5);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_config("scenario=fig2\nnot a pair"),
            Err(ConfigError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_config("scenario=fig2\n\nbogus=1"),
            Err(ConfigError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_config("scenario=fig2\nseed=1\nseed=2"),
            Err(ConfigError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn validation_names_field() {
        for (text, field) in [
            ("seed=1", "scenario"),
            ("scenario=fig9", "scenario"),
            ("scenario=fig2\nwitness.kind=best", "witness.kind"),
            ("scenario=fig2\nwitness.samples=0", "witness.samples"),
            ("scenario=fig2\nwitness.kind=explicit", "witness.amplitudes"),
            ("scenario=custom", "psi.amplitudes"),
            ("scenario=fig2\na.entries=1,0", "a.entries"),
        ] {
            match parse_config(text) {
                Err(ConfigError::Validation { field: f, .. }) => assert_eq!(f, field, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn custom_round_trip_is_exact() {
        let mut rng = Rng::new(17);
        let model = MeasurementModel::new(
            haar_random_state(2, &mut rng),
            haar_random_state(2, &mut rng),
            random_hermitian(2, &mut rng),
            random_hermitian(2, &mut rng),
            random_hermitian(2, &mut rng),
            random_unitary(4, &mut rng),
        )
        .unwrap();
        let w = PureState::basis(4, 3).unwrap();
        let text = custom_config_text(&model, Some(&w), 9);
        let c = parse_config(&text).unwrap();
        let ScenarioKind::Custom(parsed) = &c.scenario else {
            panic!("expected custom");
        };
        assert_eq!(
            parsed.observable_a().to_row_major(),
            model.observable_a().to_row_major()
        );
        assert_eq!(
            parsed.coupling().to_row_major(),
            model.coupling().to_row_major()
        );
        assert_eq!(parsed.system_state(), model.system_state());
        assert_eq!(c.witness, WitnessConfig::Explicit(w));
        assert_eq!(c.seed, 9);
    }

    #[test]
    fn custom_requires_valid_operators() {
        let text = "scenario=custom\npsi.amplitudes=1,0,0,0\nphi_p.amplitudes=1,0\n\
                    a.entries=0,0,1,0,1,0,0,0\nb.entries=1,0,0,0,0,0,-1,0\n\
                    m.entries=0,0,1,0,1,0,0,0\nu.entries=2,0,0,0,0,0,2,0";
        assert!(matches!(
            parse_config(text),
            Err(ConfigError::Validation {
                field: "u.entries",
                ..
            }) | Err(ConfigError::Validation {
                field: "scenario",
                ..
            })
        ));
    }
}
