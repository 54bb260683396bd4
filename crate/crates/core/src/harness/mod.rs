//! Seeded experiment runs and their CSV output.

mod config;
mod record;
mod run;
mod summary;

pub use config::{ExperimentConfig, Grid, GridPoint, Seeds, STREAM_STRIDE};
pub use record::{read_records, record_schema_line, write_timings, RecordWriter, TrialRecord, TrialTiming};
pub use run::{run_experiment, run_trial, TIMINGS_FILE, TRIALS_FILE};
pub use summary::{median, render_table, summarize, SummaryRow};
