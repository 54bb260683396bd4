use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::Regime;

use super::record::TrialRecord;

/// Aggregate over the trials of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub grid_index: usize,
    pub regime: Regime,
    pub n: usize,
    pub p: f64,
    pub c: f64,
    pub trials: usize,
    pub order_median: f64,
    pub order_min: usize,
    pub order_max: usize,
    pub theory_mid: f64,
    pub ratio_median: f64,
    pub pass_rate: f64,
    pub u0_mean: f64,
    pub expected_u0_mean: f64,
    /// `|mean U₀ - mean E(U₀)| / mean E(U₀)`; `None` when `E(U₀)` is 0.
    pub u0_rel_error: Option<f64>,
    /// Fraction of trials with `U₀` within 30% of `E(U₀)`.
    pub u0_within_30pct: f64,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 { values[n / 2] } else { (values[n / 2 - 1] + values[n / 2]) / 2.0 }
}

/// One row per grid point, in grid order.
pub fn summarize(records: &[TrialRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::Domain("no records to summarize".into()));
    }
    let mut groups: BTreeMap<usize, Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.grid_index).or_default().push(r);
    }
    Ok(groups
        .into_values()
        .map(|rs| {
            let first = rs[0];
            let count = rs.len() as f64;
            let mut orders: Vec<f64> = rs.iter().map(|r| r.order as f64).collect();
            let mut ratios: Vec<f64> = rs.iter().map(|r| r.ratio).collect();
            let u0_mean = rs.iter().map(|r| r.u0 as f64).sum::<f64>() / count;
            let expected_u0_mean = rs.iter().map(|r| r.expected_u0).sum::<f64>() / count;
            let within = rs
                .iter()
                .filter(|r| (r.u0 as f64 - r.expected_u0).abs() <= 0.3 * r.expected_u0)
                .count();
            SummaryRow {
                grid_index: first.grid_index,
                regime: first.regime,
                n: first.n,
                p: first.p,
                c: first.c,
                trials: rs.len(),
                order_median: median(&mut orders),
                order_min: rs.iter().map(|r| r.order).min().unwrap_or(0),
                order_max: rs.iter().map(|r| r.order).max().unwrap_or(0),
                theory_mid: (first.theory_lower + first.theory_upper) / 2.0,
                ratio_median: median(&mut ratios),
                pass_rate: rs.iter().filter(|r| r.verify == "pass").count() as f64 / count,
                u0_mean,
                expected_u0_mean,
                u0_rel_error: (expected_u0_mean > 0.0)
                    .then(|| (u0_mean - expected_u0_mean).abs() / expected_u0_mean),
                u0_within_30pct: within as f64 / count,
            }
        })
        .collect())
}

/// Fixed-width text table of summary rows.
pub fn render_table(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>4} {:>6} {:>7} {:>9} {:>8} {:>6} {:>9} {:>6} {:>6} {:>9} {:>7} {:>5} {:>9} {:>9} {:>7}",
        "grid", "regime", "n", "p", "c", "trials", "ord_med", "min", "max", "theory", "ratio", "pass", "U0_mean",
        "EU0_mean", "U0_err"
    )
    .unwrap();
    for r in rows {
        let err = r.u0_rel_error.map_or_else(|| "-".to_string(), |e| format!("{e:.3}"));
        writeln!(
            out,
            "{:>4} {:>6} {:>7} {:>9.3e} {:>8.3} {:>6} {:>9.1} {:>6} {:>6} {:>9.2} {:>7.3} {:>5.2} {:>9.1} {:>9.1} {:>7}",
            r.grid_index,
            r.regime.to_string(),
            r.n,
            r.p,
            r.c,
            r.trials,
            r.order_median,
            r.order_min,
            r.order_max,
            r.theory_mid,
            r.ratio_median,
            r.pass_rate,
            r.u0_mean,
            r.expected_u0_mean,
            err
        )
        .unwrap();
    }
    out
}
