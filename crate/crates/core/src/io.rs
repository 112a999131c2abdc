//! Prediction-dump ingestion and report serialization.
//!
//! Input grammar:
//!
//! * CSV: header `label,logit_0,...,logit_{K-1}` (K >= 2), then one row per
//!   sample. Labels are base-10 integers, logits decimal floats.
//! * JSONL: one `{"label": <int>, "logits": [<K floats>]}` object per line;
//!   blank lines are ignored. K is taken from the first record.
//!
//! Outputs are JSON (struct field order, shortest round-trip floats, two
//! space indent, trailing newline) or CSV, and are byte-identical for
//! identical inputs.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::calibrate::TemperatureModel;
use crate::dataset::PredictionSet;
use crate::error::{Error, Result};
use crate::failure::{CoveragePoint, RiskCoverageCurve};
use crate::report::ReliabilityData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Csv,
    Jsonl,
    /// Pick by extension (`.csv`, `.jsonl`/`.ndjson`/`.json`), falling back
    /// to sniffing the first non-blank character.
    #[default]
    Auto,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            "auto" => Ok(Format::Auto),
            other => Err(Error::invalid(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictionFileSpec {
    pub format: Format,
    /// Fail on NaN/Inf logits; otherwise such rows are skipped.
    pub reject_non_finite: bool,
    /// Fail on labels outside `[0, K)`; otherwise such rows are skipped.
    pub reject_bad_labels: bool,
}

impl Default for PredictionFileSpec {
    fn default() -> Self {
        Self {
            format: Format::Auto,
            reject_non_finite: true,
            reject_bad_labels: true,
        }
    }
}

impl PredictionFileSpec {
    pub fn with_format(format: Format) -> Self {
        Self {
            format,
            ..Self::default()
        }
    }
}

/// A parsed prediction file.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub set: PredictionSet,
    /// 1-based data-row numbers dropped by a non-strict spec.
    pub skipped_rows: Vec<usize>,
}

pub fn load_predictions(
    path: impl AsRef<Path>,
    spec: &PredictionFileSpec,
) -> Result<PredictionSet> {
    Ok(read_predictions(path, spec)?.set)
}

pub fn read_predictions(path: impl AsRef<Path>, spec: &PredictionFileSpec) -> Result<Loaded> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_predictions(&text, path, spec)
}

/// Parses prediction-file contents; `path` is used for format detection and
/// diagnostics only.
pub fn parse_predictions(text: &str, path: &Path, spec: &PredictionFileSpec) -> Result<Loaded> {
    let format = match spec.format {
        Format::Auto => detect_format(text, path),
        f => f,
    };
    let mut builder = RowBuilder::new(path, spec);
    match format {
        Format::Jsonl => parse_jsonl(text, &mut builder)?,
        _ => parse_csv(text, &mut builder)?,
    }
    builder.finish()
}

fn detect_format(text: &str, path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Format::Csv,
        Some("jsonl" | "ndjson" | "json") => Format::Jsonl,
        _ if text.trim_start().starts_with('{') => Format::Jsonl,
        _ => Format::Csv,
    }
}

struct RowBuilder<'a> {
    path: &'a Path,
    spec: &'a PredictionFileSpec,
    classes: usize,
    logits: Vec<f64>,
    labels: Vec<usize>,
    skipped: Vec<usize>,
    rows_seen: usize,
}

impl<'a> RowBuilder<'a> {
    fn new(path: &'a Path, spec: &'a PredictionFileSpec) -> Self {
        Self {
            path,
            spec,
            classes: 0,
            logits: Vec::new(),
            labels: Vec::new(),
            skipped: Vec::new(),
            rows_seen: 0,
        }
    }

    fn format_error(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Format {
            path: self.path.to_path_buf(),
            line,
            message: message.into(),
        }
    }

    fn invalid(&self, row: usize, line: usize, message: impl std::fmt::Display) -> Error {
        Error::invalid(format!(
            "{}: row {row} (line {line}): {message}",
            self.path.display()
        ))
    }

    fn push(&mut self, line: usize, label: i64, logits: &[f64]) -> Result<()> {
        self.rows_seen += 1;
        let row = self.rows_seen;
        if self.classes == 0 {
            if logits.len() < 2 {
                return Err(self.invalid(
                    row,
                    line,
                    format!("need at least 2 logits, found {}", logits.len()),
                ));
            }
            self.classes = logits.len();
        } else if logits.len() != self.classes {
            return Err(self.invalid(
                row,
                line,
                format!(
                    "inconsistent class count: K={} here, K={} earlier",
                    logits.len(),
                    self.classes
                ),
            ));
        }
        if label < 0 || label as u64 >= self.classes as u64 {
            if self.spec.reject_bad_labels {
                return Err(self.invalid(
                    row,
                    line,
                    format!("label {label} outside [0, {})", self.classes),
                ));
            }
            self.skipped.push(row);
            return Ok(());
        }
        if let Some(k) = logits.iter().position(|z| !z.is_finite()) {
            if self.spec.reject_non_finite {
                return Err(self.invalid(
                    row,
                    line,
                    format!("logit_{k} is not finite ({})", logits[k]),
                ));
            }
            self.skipped.push(row);
            return Ok(());
        }
        self.labels.push(label as usize);
        self.logits.extend_from_slice(logits);
        Ok(())
    }

    fn finish(self) -> Result<Loaded> {
        if self.labels.is_empty() {
            return Err(Error::invalid(format!(
                "{}: no usable samples",
                self.path.display()
            )));
        }
        Ok(Loaded {
            set: PredictionSet::new(self.logits, self.labels, self.classes)?,
            skipped_rows: self.skipped,
        })
    }
}

fn parse_csv(text: &str, builder: &mut RowBuilder<'_>) -> Result<()> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(Ok(h)) => h,
        Some(Err(e)) => return Err(builder.format_error(1, e.to_string())),
        None => return Err(builder.format_error(1, "missing header")),
    };
    let well_formed = header.len() >= 3
        && &header[0] == "label"
        && (1..header.len()).all(|i| header[i] == format!("logit_{}", i - 1));
    if !well_formed {
        let got: Vec<&str> = header.iter().collect();
        return Err(builder.format_error(
            1,
            format!(
                "expected header label,logit_0,...,logit_{{K-1}} with K >= 2, found {:?}",
                got.join(",")
            ),
        ));
    }
    let classes = header.len() - 1;

    let mut logits = Vec::with_capacity(classes);
    for record in records {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            builder.format_error(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != classes + 1 {
            return Err(builder.invalid(
                builder.rows_seen + 1,
                line,
                format!(
                    "inconsistent class count: {} logits, header declares K={classes}",
                    record.len().saturating_sub(1)
                ),
            ));
        }
        let label: i64 = record[0].parse().map_err(|_| {
            builder.format_error(
                line,
                format!("label {:?} is not a base-10 integer", &record[0]),
            )
        })?;
        logits.clear();
        for (k, field) in record.iter().skip(1).enumerate() {
            let z: f64 = field.parse().map_err(|_| {
                builder.format_error(line, format!("logit_{k} {field:?} is not a number"))
            })?;
            logits.push(z);
        }
        builder.push(line, label, &logits)?;
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRecord {
    label: i64,
    logits: Vec<f64>,
}

fn parse_jsonl(text: &str, builder: &mut RowBuilder<'_>) -> Result<()> {
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let rec: JsonRecord =
            serde_json::from_str(raw).map_err(|e| builder.format_error(line, e.to_string()))?;
        builder.push(line, rec.label, &rec.logits)?;
    }
    Ok(())
}

/// Serializes `value` as indented JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Serialize(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Writes any serializable report (calibration, comparison, reliability)
/// as JSON.
pub fn save_report<T: Serialize>(report: &T, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &to_json(report)?)
}

pub fn save_model(model: &TemperatureModel, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &to_json(model)?)
}

pub fn load_model(path: impl AsRef<Path>) -> Result<TemperatureModel> {
    let path = path.as_ref();
    from_json(&read_file(path)?, path)
}

pub const CURVE_CSV_HEADER: &str = "proportion,accuracy,remaining_count";
pub const RELIABILITY_CSV_HEADER: &str = "lo,hi,count,confidence,accuracy,gap";

pub fn curve_to_csv(curve: &RiskCoverageCurve) -> String {
    let mut out = String::from(CURVE_CSV_HEADER);
    out.push('\n');
    for p in &curve.points {
        out.push_str(&format!(
            "{},{},{}\n",
            p.proportion, p.accuracy, p.remaining_count
        ));
    }
    out
}

/// Parses a curve CSV. A point with no remaining samples is marked degenerate.
pub fn curve_from_csv(text: &str, path: &Path) -> Result<RiskCoverageCurve> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CURVE_CSV_HEADER => {}
        _ => {
            return Err(Error::Format {
                path: path.to_path_buf(),
                line: 1,
                message: format!("expected header {CURVE_CSV_HEADER}"),
            })
        }
    }
    let mut points = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Format {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("malformed curve row {line:?}"),
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(bad());
        }
        let remaining_count: usize = fields[2].parse().map_err(|_| bad())?;
        points.push(CoveragePoint {
            proportion: fields[0].parse().map_err(|_| bad())?,
            accuracy: fields[1].parse().map_err(|_| bad())?,
            remaining_count,
            degenerate: remaining_count == 0,
        });
    }
    Ok(RiskCoverageCurve { points })
}

fn is_json_path(path: &Path) -> bool {
    path.extension().and_then(|e| e.to_str()) == Some("json")
}

/// Writes a curve as JSON when `path` ends in `.json`, CSV otherwise.
pub fn save_curve(curve: &RiskCoverageCurve, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if is_json_path(path) {
        write_file(path, &to_json(curve)?)
    } else {
        write_file(path, &curve_to_csv(curve))
    }
}

pub fn load_curve(path: impl AsRef<Path>) -> Result<RiskCoverageCurve> {
    let path = path.as_ref();
    let text = read_file(path)?;
    if is_json_path(path) {
        from_json(&text, path)
    } else {
        curve_from_csv(&text, path)
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Reliability rows as CSV; empty bins leave the mean columns blank.
pub fn reliability_to_csv(data: &ReliabilityData) -> String {
    let mut out = String::from(RELIABILITY_CSV_HEADER);
    out.push('\n');
    for r in &data.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.lo,
            r.hi,
            r.count,
            opt(r.confidence),
            opt(r.accuracy),
            opt(r.gap)
        ));
    }
    out
}

pub fn save_reliability_csv(data: &ReliabilityData, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &reliability_to_csv(data))
}
