//! CSV emission with fixed 12-significant-digit number rendering.

use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::frontier::FrontierCurve;
use crate::sweep::SweepRecord;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub const SWEEP_COLUMNS: [&str; 11] = [
    "theta",
    "epsilon_a",
    "eta_b",
    "c_ab",
    "ozawa_lhs",
    "branciard_tight_lhs",
    "thm1_rhs",
    "l_new2",
    "new_beats_branciard",
    "l_new1",
    "error",
];

pub const FRONTIER_COLUMNS: [&str; 3] = ["name", "epsilon_a", "eta_b"];

const SIGNIFICANT: usize = 12;

/// Renders `x` with 12 significant digits: positional notation for
/// magnitudes in `[1e-4, 1e12)`, scientific otherwise. Negative zero prints
/// as `0`; non-finite values as `NaN`, `inf`, `-inf`.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let exp: i32 = sci[sci.find('e').expect("scientific form") + 1..]
        .parse()
        .expect("exponent");
    if (-4..12).contains(&exp) {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

fn sweep_row(r: &SweepRecord) -> [String; 11] {
    [
        format_number(r.theta),
        format_number(r.epsilon_a),
        format_number(r.eta_b),
        format_number(r.c_ab),
        format_number(r.ozawa_lhs),
        format_number(r.branciard_tight_lhs),
        format_number(r.thm1_rhs),
        optional(r.l_new2),
        r.new_beats_branciard.to_string(),
        format_number(r.l_new1),
        r.error.clone().unwrap_or_default(),
    ]
}

pub fn write_sweep<W: Write>(records: &[SweepRecord], out: W) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS)?;
    for r in records {
        w.write_record(sweep_row(r))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_frontier<W: Write>(curves: &[FrontierCurve], out: W) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FRONTIER_COLUMNS)?;
    for c in curves {
        for &(e, h) in &c.points {
            w.write_record([c.name.to_string(), format_number(e), format_number(h)])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn create(path: &Path) -> Result<std::fs::File, CsvError> {
    std::fs::File::create(path).map_err(|source| CsvError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes sweep records to `path`; an empty list gives a header-only file.
pub fn emit_sweep_csv(records: &[SweepRecord], path: &Path) -> Result<(), CsvError> {
    write_sweep(records, std::io::BufWriter::new(create(path)?)).map_err(|e| with_path(e, path))
}

pub fn emit_frontier_csv(curves: &[FrontierCurve], path: &Path) -> Result<(), CsvError> {
    write_frontier(curves, std::io::BufWriter::new(create(path)?)).map_err(|e| with_path(e, path))
}

fn with_path(e: CsvError, path: &Path) -> CsvError {
    match e {
        CsvError::Csv(inner) if inner.is_io_error() => match inner.into_kind() {
            csv::ErrorKind::Io(source) => CsvError::Io {
                path: path.to_path_buf(),
                source,
            },
            _ => unreachable!("checked is_io_error"),
        },
        other => other,
    }
}
