//! Experiment driver for error–disturbance relations: configuration files,
//! θ-sweeps with CSV output, ε–η frontier curves, and a randomized
//! soundness suite.

pub mod cli;
pub mod config;
pub mod frontier;
pub mod sweep;
pub mod table;
pub mod verify;

pub use cli::run;
pub use config::{
    load_config, parse_config, ConfigError, ScenarioConfig, ScenarioKind, WitnessConfig,
};
pub use frontier::{frontier, CurveName, FrontierCurve, FrontierError, FrontierParams};
pub use sweep::{fraction_tighter, sweep, SweepError, SweepRecord};
pub use table::{emit_frontier_csv, emit_sweep_csv, format_number, CsvError};
pub use verify::{verify, Fault, Property, VerifyReport, Violation};
