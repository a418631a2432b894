//! CSV emission for experiment rows.

use std::path::Path;

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "experiment,alpha,N,samples,observable,x,mean,stderr,seconds";

/// One aggregated measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub experiment: String,
    pub alpha: f64,
    pub n: usize,
    pub samples: usize,
    pub observable: String,
    pub x: f64,
    pub mean: f64,
    pub stderr: f64,
    pub seconds: f64,
    /// Largest per-sample `|value|`; not written to CSV.
    pub max_abs: f64,
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_error(e: csv::Error) -> Error {
    Error::Validation(format!("CSV: {e}"))
}

pub fn render_csv(rows: &[ExperimentRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::with_capacity(64 * (rows.len() + 1)));
    let result = w.write_record(CSV_HEADER.split(',')).and_then(|_| {
        rows.iter().try_for_each(|r| {
            w.write_record([
                r.experiment.clone(),
                num(r.alpha),
                r.n.to_string(),
                r.samples.to_string(),
                r.observable.clone(),
                num(r.x),
                num(r.mean),
                num(r.stderr),
                num(r.seconds),
            ])
        })
    });
    result.expect("writing CSV to memory cannot fail");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV fields are UTF-8")
}

pub fn emit_csv(rows: &[ExperimentRow], path: &Path) -> Result<()> {
    std::fs::write(path, render_csv(rows)).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Parses a file written by [`emit_csv`]. `max_abs` is not stored and comes
/// back as NaN.
pub fn parse_csv(text: &str) -> Result<Vec<ExperimentRow>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER.split(',')) {
        return Err(Error::Validation("missing or unexpected CSV header".into()));
    }
    reader
        .records()
        .map(|record| {
            let f = record.map_err(csv_error)?;
            let p = |k: usize| -> Result<f64> {
                f[k].parse().map_err(|_| Error::Validation(format!("bad number '{}'", &f[k])))
            };
            let u = |k: usize| -> Result<usize> {
                f[k].parse().map_err(|_| Error::Validation(format!("bad integer '{}'", &f[k])))
            };
            Ok(ExperimentRow {
                experiment: f[0].to_string(),
                alpha: p(1)?,
                n: u(2)?,
                samples: u(3)?,
                observable: f[4].to_string(),
                x: p(5)?,
                mean: p(6)?,
                stderr: p(7)?,
                seconds: p(8)?,
                max_abs: f64::NAN,
            })
        })
        .collect()
}

pub fn read_csv(path: &Path) -> Result<Vec<ExperimentRow>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_csv(&text)
}
