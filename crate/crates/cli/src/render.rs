//! CSV and human-readable renderings. JSON goes through serde directly.

use std::io::{self, Write};

use hardy_core::engine::{CountTable, HardyReport, MeasurementMode};
use hardy_core::optimizer::{OptimizationOutcome, ScanRow};
use hardy_core::qudit::CoefficientMatrix;

/// Matrices above this size are summarized instead of printed.
const HUMAN_MATRIX_LIMIT: usize = 12;

fn mode(m: MeasurementMode) -> &'static str {
    match m {
        MeasurementMode::Constructed => "constructed",
        MeasurementMode::Explicit => "explicit",
    }
}

pub fn report_csv<W: Write>(
    out: &mut W,
    report: &HardyReport,
    outcome: Option<&OptimizationOutcome>,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "d",
        "score",
        "p_a2_lt_b1",
        "p_b1_lt_a1",
        "p_a1_lt_b2",
        "concurrence",
        "measurement_mode",
    ];
    let mut row = vec![
        report.d.to_string(),
        format!("{:?}", report.score),
        format!("{:?}", report.residuals[0]),
        format!("{:?}", report.residuals[1]),
        format!("{:?}", report.residuals[2]),
        format!("{:?}", report.concurrence),
        mode(report.measurement_mode).to_string(),
    ];
    if let Some(o) = outcome {
        header.extend(["converged", "best_restart", "restarts", "evaluations"]);
        row.extend([
            o.converged.to_string(),
            o.best_restart.to_string(),
            o.restarts.to_string(),
            o.evaluations.to_string(),
        ]);
    }
    w.write_record(header)?;
    w.write_record(row)?;
    w.flush()?;
    Ok(())
}

pub fn matrix_human<W: Write>(out: &mut W, h: &CoefficientMatrix) -> io::Result<()> {
    let d = h.d();
    if d > HUMAN_MATRIX_LIMIT {
        return writeln!(
            out,
            "H: {d} x {d} (not printed above d = {HUMAN_MATRIX_LIMIT}; use --format json)"
        );
    }
    let real = h.entries().iter().all(|z| z.im == 0.0);
    writeln!(out, "H =")?;
    for i in 0..d {
        let cells: Vec<String> = h
            .row(i)
            .iter()
            .map(|z| {
                if real {
                    format!("{:9.6}", z.re)
                } else {
                    format!("{:9.6}{:+.6}i", z.re, z.im)
                }
            })
            .collect();
        writeln!(out, "  {}", cells.join(" "))?;
    }
    Ok(())
}

pub fn report_human<W: Write>(out: &mut W, report: &HardyReport) -> io::Result<()> {
    writeln!(out, "d             {}", report.d)?;
    writeln!(out, "P(A2<B2)      {:.6}", report.score)?;
    writeln!(out, "P(A2<B1)      {:.3e}", report.residuals[0])?;
    writeln!(out, "P(B1<A1)      {:.3e}", report.residuals[1])?;
    writeln!(out, "P(A1<B2)      {:.3e}", report.residuals[2])?;
    writeln!(out, "concurrence   {:.6}", report.concurrence)?;
    writeln!(out, "measurements  {}", mode(report.measurement_mode))?;
    if let Some(h) = &report.state {
        matrix_human(out, h)?;
    }
    Ok(())
}

pub fn scan_row_human<W: Write>(out: &mut W, row: &ScanRow) -> io::Result<()> {
    match (&row.error, row.p_app, row.concurrence_app) {
        (None, Some(p), Some(c)) => writeln!(out, "{:>8}  {:>12.9}  {:>12.9}  {:>10.3}", row.d, p, c, row.wall_time),
        _ => writeln!(
            out,
            "{:>8}  error: {}",
            row.d,
            row.error.as_deref().unwrap_or("unknown")
        ),
    }
}

pub fn counts_human<W: Write>(out: &mut W, counts: &CountTable) -> io::Result<()> {
    writeln!(
        out,
        "pair {} with {} samples at seed {}",
        counts.pair, counts.samples, counts.seed
    )?;
    for row in &counts.counts {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>10}")).collect();
        writeln!(out, "  {}", cells.join(" "))?;
    }
    writeln!(out, "frequency(A < B) = {:.6}", counts.ordered_frequency())
}
