//! One CSV row per trial.
//!
//! Files start with a `# schema sha256:<hex>` line hashing the header row,
//! so a reader built against a different column set fails loudly instead
//! of misreading columns.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::extract::Regime;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub regime: Regime,
    pub grid_index: usize,
    pub seed_index: u64,
    pub seed: u64,
    pub stream_id: u64,
    pub n: usize,
    pub p: f64,
    pub c: f64,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    /// Edges of the realized graph.
    pub m: usize,
    pub target_order: usize,
    pub k_used: usize,
    pub t_used: usize,
    pub path_len: usize,
    pub joiner_len: usize,
    pub u0: usize,
    pub expected_u0: f64,
    pub shortcut: bool,
    pub stages: usize,
    /// Per-stage counts, `;`-separated.
    pub stage_joined: String,
    pub stage_failed: String,
    pub pruned_total: usize,
    pub cover: usize,
    pub order: usize,
    pub verify: String,
    pub edge_bound: usize,
    pub theory_lower: f64,
    pub theory_upper: f64,
    /// `order / ((theory_lower + theory_upper) / 2)`.
    pub ratio: f64,
}

/// Wall-clock cost of one trial; kept apart from the records so trial
/// files stay byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialTiming {
    pub grid_index: usize,
    pub seed_index: u64,
    pub seconds: f64,
}

fn header_of<T: Serialize>(sample: &T) -> Result<String> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.serialize(sample).map_err(csv_error)?;
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    let text = String::from_utf8(bytes).expect("csv output is UTF-8");
    Ok(text.lines().next().unwrap_or_default().to_string())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("csv: {other:?}")),
    }
}

fn schema_line(header: &str) -> String {
    let digest = Sha256::digest(header.as_bytes());
    let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
    format!("# schema sha256:{hex}")
}

fn record_header() -> String {
    header_of(&TrialRecord::example()).expect("header of a fixed record")
}

/// Versioned schema marker written as the first line of trial files.
pub fn record_schema_line() -> String {
    schema_line(&record_header())
}

impl TrialRecord {
    fn example() -> Self {
        Self {
            regime: Regime::Dense,
            grid_index: 0,
            seed_index: 0,
            seed: 0,
            stream_id: 0,
            n: 0,
            p: 0.0,
            c: 0.0,
            eps: None,
            delta: None,
            alpha: None,
            m: 0,
            target_order: 0,
            k_used: 0,
            t_used: 0,
            path_len: 0,
            joiner_len: 0,
            u0: 0,
            expected_u0: 0.0,
            shortcut: false,
            stages: 0,
            stage_joined: String::new(),
            stage_failed: String::new(),
            pruned_total: 0,
            cover: 0,
            order: 0,
            verify: String::new(),
            edge_bound: 0,
            theory_lower: 0.0,
            theory_upper: 0.0,
            ratio: 0.0,
        }
    }
}

/// Streams records to a CSV file, schema line and header first.
pub struct RecordWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(mut out: W) -> Result<Self> {
        writeln!(out, "{}", record_schema_line())?;
        Ok(Self {
            inner: csv::WriterBuilder::new().from_writer(out),
        })
    }

    pub fn write(&mut self, record: &TrialRecord) -> Result<()> {
        self.inner.serialize(record).map_err(csv_error)?;
        self.inner.flush()?;
        Ok(())
    }
}

/// Read a trial file, checking its schema line against this build.
pub fn read_records<R: BufRead>(mut input: R) -> Result<Vec<TrialRecord>> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let expected = record_schema_line();
    if first.trim_end() != expected {
        return Err(Error::Parse(format!(
            "schema line `{}` does not match `{expected}`",
            first.trim_end()
        )));
    }
    let mut reader = csv::ReaderBuilder::new().from_reader(input);
    let header = reader.headers().map_err(csv_error)?.iter().collect::<Vec<_>>().join(",");
    if header != record_header() {
        return Err(Error::Parse("header row does not match the schema line".into()));
    }
    reader.deserialize().map(|r| r.map_err(csv_error)).collect()
}

pub fn write_timings<W: Write>(out: W, timings: &[TrialTiming]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for t in timings {
        w.serialize(t).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}
