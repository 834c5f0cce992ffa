//! Output plumbing: deterministic CSV/JSON serialization, atomic writes,
//! and the verification pass that re-reads emitted files and re-checks
//! their invariants.

use crate::CliError;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Trace CSV header; every trace produced by the CLI uses exactly this
/// schema (optionally prefixed with label columns for multi-label runs).
pub const TRACE_HEADER: &str = "tau,gamma,theta_phase,lambda_phase,magnitude,phase";

/// Shortest round-trip formatting: deterministic and lossless (−0 is
/// normalized to 0).
pub fn fmt(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x}")
}

/// Writes `contents` to `path` via a temporary file and rename, so an
/// interrupted run leaves no partial output; `None` prints to stdout.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        None => {
            print!("{contents}");
            Ok(())
        }
        Some(path) => {
            let tmp: PathBuf = path.with_extension("tmp.partial");
            {
                let mut f = fs::File::create(&tmp)
                    .map_err(|e| CliError::Config(format!("cannot create {}: {e}", tmp.display())))?;
                f.write_all(contents.as_bytes())
                    .map_err(|e| CliError::Config(format!("write failed: {e}")))?;
                f.sync_all().ok();
            }
            fs::rename(&tmp, path)
                .map_err(|e| CliError::Config(format!("cannot move output into place: {e}")))?;
            Ok(())
        }
    }
}

/// One row of the trace schema.
pub struct TraceRow {
    pub tau: f64,
    pub gamma: f64,
    pub theta_phase: f64,
    pub lambda_phase: f64,
    pub magnitude: f64,
    pub phase: f64,
}

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt(r.tau),
            fmt(r.gamma),
            fmt(r.theta_phase),
            fmt(r.lambda_phase),
            fmt(r.magnitude),
            fmt(r.phase)
        ));
    }
    out
}

pub fn labelled_trace_csv(rows: &[(String, String, TraceRow)]) -> String {
    let mut out = format!("label_i,label_j,{TRACE_HEADER}\n");
    for (i, j, r) in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            i,
            j,
            fmt(r.tau),
            fmt(r.gamma),
            fmt(r.theta_phase),
            fmt(r.lambda_phase),
            fmt(r.magnitude),
            fmt(r.phase)
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

fn parse_f64(s: &str, line: usize) -> Result<f64, CliError> {
    s.parse::<f64>()
        .map_err(|_| CliError::Config(format!("line {line}: not a number: {s:?}")))
}

/// Re-reads a CSV produced by this tool and re-checks its invariants:
/// strictly increasing time grids, magnitudes in (0, 1], consistency of
/// magnitude with the damping exponent and of the phase with Θ − Λ, and
/// reference-deviation bookkeeping for table files.
pub fn verify_file(path: &Path) -> Result<String, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::Config("empty file".into()))?;

    let cols: Vec<&str> = header.split(',').collect();
    if header == TRACE_HEADER || header.ends_with(TRACE_HEADER) {
        let offset = cols.len() - 6;
        let mut prev_tau: Option<f64> = None;
        let mut prev_labels = (String::new(), String::new());
        let mut n = 0usize;
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != cols.len() {
                return Err(CliError::Config(format!("line {}: wrong field count", idx + 1)));
            }
            let labels = if offset == 2 {
                (f[0].to_string(), f[1].to_string())
            } else {
                (String::new(), String::new())
            };
            let tau = parse_f64(f[offset], idx + 1)?;
            let gamma = parse_f64(f[offset + 1], idx + 1)?;
            let theta = parse_f64(f[offset + 2], idx + 1)?;
            let lambda = parse_f64(f[offset + 3], idx + 1)?;
            let mag = parse_f64(f[offset + 4], idx + 1)?;
            let phase = parse_f64(f[offset + 5], idx + 1)?;

            if labels == prev_labels {
                if let Some(p) = prev_tau {
                    if !(tau > p) {
                        return Err(CliError::Config(format!(
                            "line {}: time grid not strictly increasing",
                            idx + 1
                        )));
                    }
                }
            }
            prev_tau = Some(tau);
            prev_labels = labels;

            if !(0.0..=1.0 + 1e-9).contains(&mag) {
                return Err(CliError::Config(format!(
                    "line {}: magnitude {mag} outside (0, 1]",
                    idx + 1
                )));
            }
            if ((-gamma).exp() - mag).abs() > 1e-9 * mag.max(1.0) {
                return Err(CliError::Config(format!(
                    "line {}: magnitude inconsistent with damping exponent",
                    idx + 1
                )));
            }
            if ((theta - lambda) - phase).abs() > 1e-9 * phase.abs().max(1.0) {
                return Err(CliError::Config(format!(
                    "line {}: phase inconsistent with Θ − Λ",
                    idx + 1
                )));
            }
            n += 1;
        }
        return Ok(format!("trace OK: {n} rows"));
    }

    if cols.first() == Some(&"family") {
        // figure file: magnitudes in range, identity at τ = 0 when a time
        // axis is present
        let time_col = cols.iter().position(|c| *c == "tau" || *c == "time");
        let mag_col = cols
            .iter()
            .position(|c| *c == "magnitude")
            .ok_or_else(|| CliError::Config("figure file without magnitude column".into()))?;
        let mut n = 0usize;
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            let mag = parse_f64(f[mag_col], idx + 1)?;
            if !(0.0..=1.0 + 1e-9).contains(&mag) {
                return Err(CliError::Config(format!(
                    "line {}: magnitude {mag} outside (0, 1]",
                    idx + 1
                )));
            }
            if let Some(tc) = time_col {
                let t = parse_f64(f[tc], idx + 1)?;
                if t == 0.0 && (mag - 1.0).abs() > 1e-9 {
                    return Err(CliError::Config(format!(
                        "line {}: magnitude {mag} ≠ 1 at τ = 0",
                        idx + 1
                    )));
                }
            }
            n += 1;
        }
        return Ok(format!("figure OK: {n} rows"));
    }

    if cols.iter().any(|c| c.ends_with("_ref")) {
        // table file: recompute each deviation column
        let mut n = 0usize;
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            for (k, col) in cols.iter().enumerate() {
                if !col.ends_with("_ref") {
                    continue;
                }
                let val = f[k - 1];
                let rf = f[k];
                let dev = f[k + 1];
                match (val == "saturates", rf == "saturates") {
                    (true, true) => {
                        if !dev.is_empty() {
                            return Err(CliError::Config(format!(
                                "line {}: sentinel cell with a deviation entry",
                                idx + 1
                            )));
                        }
                    }
                    (false, false) => {
                        let v = parse_f64(val, idx + 1)?;
                        let r = parse_f64(rf, idx + 1)?;
                        let d = parse_f64(dev, idx + 1)?;
                        let expect = (v - r).abs() / r.abs().max(1e-300);
                        if (d - expect).abs() > 1e-12 + 1e-9 * expect {
                            return Err(CliError::Config(format!(
                                "line {}: deviation column inconsistent",
                                idx + 1
                            )));
                        }
                    }
                    _ => {
                        return Err(CliError::Config(format!(
                            "line {}: saturation sentinel mismatch vs reference",
                            idx + 1
                        )));
                    }
                }
            }
            n += 1;
        }
        return Ok(format!("table OK: {n} rows"));
    }

    Err(CliError::Config("unrecognized file schema".into()))
}
