use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::approx_state;
use crate::engine::hardy_score;
use crate::error::{HardyError, Result};

/// One point of the approximate-state curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub d: usize,
    pub p_app: Option<f64>,
    pub concurrence_app: Option<f64>,
    /// Seconds spent on this point. Timing only; not part of any numeric comparison.
    pub wall_time: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub rows: Vec<ScanRow>,
    /// First `d` at which an increasing input produced a non-increasing score.
    pub monotonicity_break: Option<usize>,
}

fn scan_point(d: usize, cap: usize) -> ScanRow {
    let start = Instant::now();
    let result = (|| {
        if d < 2 {
            return Err(HardyError::Dimension { d, min: 2 });
        }
        if d > cap {
            return Err(HardyError::ResourceCap { d, cap });
        }
        let report = hardy_score(&approx_state(d)?)?;
        Ok((report.score, report.concurrence))
    })();
    let wall_time = start.elapsed().as_secs_f64();
    match result {
        Ok((p, c)) => ScanRow {
            d,
            p_app: Some(p),
            concurrence_app: Some(c),
            wall_time,
            error: None,
        },
        Err(e) => ScanRow {
            d,
            p_app: None,
            concurrence_app: None,
            wall_time,
            error: Some(e.to_string()),
        },
    }
}

/// Scores the approximate state at each `d`, handing rows to `sink` in input order.
///
/// Points are computed in parallel batches; a failure at one `d` is recorded
/// in its row and the scan continues.
pub fn scan_approx<F>(d_values: &[usize], cap: usize, mut sink: F) -> std::io::Result<ScanOutcome>
where
    F: FnMut(&ScanRow) -> std::io::Result<()>,
{
    let batch = rayon::current_num_threads().max(1);
    let mut rows = Vec::with_capacity(d_values.len());
    for chunk in d_values.chunks(batch) {
        let computed: Vec<ScanRow> = chunk.par_iter().map(|&d| scan_point(d, cap)).collect();
        for row in computed {
            sink(&row)?;
            rows.push(row);
        }
    }

    let increasing = d_values.windows(2).all(|w| w[0] < w[1]);
    let mut monotonicity_break = None;
    if increasing {
        let scored: Vec<(usize, f64)> = rows.iter().filter_map(|r| r.p_app.map(|p| (r.d, p))).collect();
        monotonicity_break = scored.windows(2).find(|w| w[1].1 <= w[0].1).map(|w| w[1].0);
    }
    Ok(ScanOutcome {
        rows,
        monotonicity_break,
    })
}

/// Decimal rendering with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub const SCAN_CSV_HEADER: [&str; 4] = ["d", "p_app", "concurrence", "wall_time_s"];

/// Streams scan rows as CSV with 9-significant-digit decimals.
pub struct ScanCsvWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> ScanCsvWriter<W> {
    pub fn new(writer: W) -> csv::Result<Self> {
        let mut inner = csv::Writer::from_writer(writer);
        inner.write_record(SCAN_CSV_HEADER)?;
        Ok(Self { inner })
    }

    pub fn write_row(&mut self, row: &ScanRow) -> csv::Result<()> {
        let num = |v: Option<f64>| v.map(|x| format_significant(x, 9)).unwrap_or_default();
        self.inner.write_record([
            row.d.to_string(),
            num(row.p_app),
            num(row.concurrence_app),
            format_significant(row.wall_time, 9),
        ])?;
        self.inner.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.inner
            .into_inner()
            .map_err(|e| e.into_error())
            .expect("flushed after every row")
    }
}

/// `(d, p_app, concurrence)` as read back from scan CSV.
pub type ScanPoint = (usize, Option<f64>, Option<f64>);

/// Parses CSV produced by [`ScanCsvWriter`] back into [`ScanPoint`]s.
pub fn read_scan_csv<R: std::io::Read>(reader: R) -> Result<Vec<ScanPoint>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header = rdr.headers().map_err(|e| HardyError::Format(e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != SCAN_CSV_HEADER {
        return Err(HardyError::Format(format!("unexpected header {header:?}")));
    }
    let parse = |s: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse()
                .map(Some)
                .map_err(|_| HardyError::Format(format!("bad number {s:?}")))
        }
    };
    let mut out = Vec::new();
    for record in rdr.records() {
        let r = record.map_err(|e| HardyError::Format(e.to_string()))?;
        let d = r[0]
            .parse()
            .map_err(|_| HardyError::Format(format!("bad d {:?}", &r[0])))?;
        out.push((d, parse(&r[1])?, parse(&r[2])?));
    }
    Ok(out)
}
