//! CSV and JSON output for slices, extrema and verification reports.
//!
//! Slice CSV layout:
//!
//! ```text
//! # tool=hydrogen-kr 0.1.0
//! # state=2p(m=0)
//! # ...
//! # created_unix=1760000000        (omitted in reproducible mode)
//! r,p,value                        (or r,p,re,im for complex slices)
//! 0.0000000000000000e0,0.0000000000000000e0,5.0795164595082118e-1
//! ```
//!
//! Values carry 17 significant digits, so parsing them back recovers the
//! exact `f64`.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::extrema::ExtremumRecord;
use crate::slice::{SliceResult, SliceValues};
use crate::verify::VerificationReport;

pub const SCHEMA_VERSION: u32 = 1;

/// The JSON schema slice documents conform to.
pub const SLICE_SCHEMA: &str = include_str!("../schema/slice.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::invalid(format!("unknown format '{other}' (expected csv or json)"))),
        }
    }
}

/// Controls the only non-deterministic piece of output, the creation time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExportOptions {
    pub reproducible: bool,
}

fn created_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// 17 significant digits in scientific notation.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn metadata_with_time(meta: Vec<(String, String)>, options: ExportOptions) -> Vec<(String, String)> {
    let mut meta = meta;
    if !options.reproducible {
        meta.push(("created_unix".into(), created_unix().to_string()));
    }
    meta
}

pub fn slice_to_csv(result: &SliceResult, options: ExportOptions) -> String {
    let mut out = String::new();
    for (k, v) in metadata_with_time(result.metadata(), options) {
        let _ = writeln!(out, "# {k}={v}");
    }
    for w in &result.warnings {
        let _ = writeln!(out, "# warning={w}");
    }
    let np = result.n_p();
    match &result.values {
        SliceValues::Real(v) => {
            out.push_str("r,p,value\n");
            for (i, &r) in result.r_axis.iter().enumerate() {
                for (j, &p) in result.p_axis.iter().enumerate() {
                    let _ = writeln!(out, "{},{},{}", num(r), num(p), num(v[i * np + j]));
                }
            }
        }
        SliceValues::Complex(v) => {
            out.push_str("r,p,re,im\n");
            for (i, &r) in result.r_axis.iter().enumerate() {
                for (j, &p) in result.p_axis.iter().enumerate() {
                    let k = v[i * np + j];
                    let _ = writeln!(out, "{},{},{},{}", num(r), num(p), num(k.re), num(k.im));
                }
            }
        }
    }
    out
}

pub fn slice_to_json(result: &SliceResult, options: ExportOptions) -> Value {
    let mut meta = Map::new();
    for (k, v) in metadata_with_time(result.metadata(), options) {
        meta.insert(k, Value::String(v));
    }
    let (columns, values): (Vec<&str>, Value) = match &result.values {
        SliceValues::Real(v) => (vec!["r", "p", "value"], json!(v)),
        SliceValues::Complex(v) => (
            vec!["r", "p", "re", "im"],
            Value::Array(v.iter().map(|k| json!([k.re, k.im])).collect()),
        ),
    };
    json!({
        "schema_version": SCHEMA_VERSION,
        "metadata": meta,
        "warnings": result.warnings,
        "columns": columns,
        "r_axis": result.r_axis,
        "p_axis": result.p_axis,
        "values": values,
    })
}

/// Writes `contents` to `path`, creating parent directories.
pub fn write_text(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(contents.as_bytes()).map_err(|e| Error::io(path, e))?;
    file.flush().map_err(|e| Error::io(path, e))
}

pub fn render_slice(result: &SliceResult, format: ExportFormat, options: ExportOptions) -> Result<String> {
    Ok(match format {
        ExportFormat::Csv => slice_to_csv(result, options),
        ExportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&slice_to_json(result, options))?;
            s.push('\n');
            s
        }
    })
}

pub fn export_slice(result: &SliceResult, format: ExportFormat, path: &Path, options: ExportOptions) -> Result<()> {
    write_text(path, &render_slice(result, format, options)?)
}

/// A slice file read back: metadata, column names and rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTable {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ParsedTable {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Parses CSV written by [`slice_to_csv`] (or any table with the same
/// `# key=value` preamble and a header row).
pub fn parse_csv<R: BufRead>(reader: R, path: &Path) -> Result<ParsedTable> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        message: format!("line {line}: {message}"),
    };
    let mut metadata = Vec::new();
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        match &columns {
            None => columns = Some(trimmed.split(',').map(|c| c.trim().to_string()).collect()),
            Some(cols) => {
                let row = trimmed
                    .split(',')
                    .map(|f| f.trim().parse::<f64>().map_err(|e| parse_err(lineno, format!("'{f}': {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != cols.len() {
                    return Err(parse_err(lineno, format!("expected {} fields, found {}", cols.len(), row.len())));
                }
                rows.push(row);
            }
        }
    }
    let columns = columns.ok_or_else(|| parse_err(0, "missing header row".into()))?;
    Ok(ParsedTable { metadata, columns, rows })
}

pub fn read_csv(path: &Path) -> Result<ParsedTable> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_csv(BufReader::new(file), path)
}

pub fn extrema_to_csv(result: &SliceResult, extrema: &[ExtremumRecord], options: ExportOptions) -> String {
    let mut out = String::new();
    for (k, v) in metadata_with_time(result.metadata(), options) {
        let _ = writeln!(out, "# {k}={v}");
    }
    let _ = writeln!(out, "# count={}", extrema.len());
    out.push_str("r,p,value,boundary\n");
    for e in extrema {
        let _ = writeln!(out, "{},{},{},{}", num(e.r), num(e.p), num(e.value), u8::from(e.boundary));
    }
    out
}

pub fn extrema_to_json(result: &SliceResult, extrema: &[ExtremumRecord], options: ExportOptions) -> Value {
    let mut meta = Map::new();
    for (k, v) in metadata_with_time(result.metadata(), options) {
        meta.insert(k, Value::String(v));
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "metadata": meta,
        "warnings": result.warnings,
        "count": extrema.len(),
        "extrema": extrema,
    })
}

pub fn render_extrema(
    result: &SliceResult,
    extrema: &[ExtremumRecord],
    format: ExportFormat,
    options: ExportOptions,
) -> Result<String> {
    Ok(match format {
        ExportFormat::Csv => extrema_to_csv(result, extrema, options),
        ExportFormat::Json => serde_json::to_string_pretty(&extrema_to_json(result, extrema, options))? + "\n",
    })
}

/// A plain numeric table with a metadata preamble, used for wavefunction and
/// 1-D distribution output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(metadata: Vec<(String, String)>, columns: &[&str]) -> Self {
        Self {
            metadata,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, options: ExportOptions) -> String {
        let mut out = String::new();
        for (k, v) in metadata_with_time(self.metadata.clone(), options) {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|&x| num(x)).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, options: ExportOptions) -> Value {
        let mut meta = Map::new();
        for (k, v) in metadata_with_time(self.metadata.clone(), options) {
            meta.insert(k, Value::String(v));
        }
        json!({
            "schema_version": SCHEMA_VERSION,
            "metadata": meta,
            "columns": self.columns,
            "rows": self.rows,
        })
    }

    pub fn render(&self, format: ExportFormat, options: ExportOptions) -> Result<String> {
        Ok(match format {
            ExportFormat::Csv => self.to_csv(options),
            ExportFormat::Json => serde_json::to_string_pretty(&self.to_json(options))? + "\n",
        })
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn report_to_csv(report: &VerificationReport, options: ExportOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# tool=hydrogen-kr {}", crate::VERSION);
    if !options.reproducible {
        let _ = writeln!(out, "# created_unix={}", created_unix());
    }
    out.push_str("name,target,computed,abs_error,tolerance,passed,expectation,note\n");
    for c in &report.checks {
        let expectation = match c.expectation {
            crate::verify::Expectation::Agreement => "agreement",
            crate::verify::Expectation::Divergence => "divergence",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            csv_field(&c.name),
            num(c.target),
            num(c.computed),
            num(c.abs_error),
            num(c.tolerance),
            c.passed,
            expectation,
            csv_field(c.note.as_deref().unwrap_or(""))
        );
    }
    out
}

pub fn report_to_json(report: &VerificationReport, options: ExportOptions) -> Result<Value> {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": format!("hydrogen-kr {}", crate::VERSION),
        "all_passed": report.all_passed(),
        "checks": serde_json::to_value(&report.checks)?,
    });
    if !options.reproducible {
        doc["created_unix"] = json!(created_unix());
    }
    Ok(doc)
}

pub fn render_report(report: &VerificationReport, format: ExportFormat, options: ExportOptions) -> Result<String> {
    Ok(match format {
        ExportFormat::Csv => report_to_csv(report, options),
        ExportFormat::Json => serde_json::to_string_pretty(&report_to_json(report, options)?)? + "\n",
    })
}

pub fn export_report(report: &VerificationReport, format: ExportFormat, path: &Path, options: ExportOptions) -> Result<()> {
    write_text(path, &render_report(report, format, options)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hydrogen::{NuclearCharge, QuantumNumbers};
    use crate::kr::NormalizationConvention;
    use crate::slice::{sample_slice, Quantity, SliceSpec};

    const REPRO: ExportOptions = ExportOptions { reproducible: true };

    fn tiny(quantity: Quantity) -> SliceResult {
        let mut spec = SliceSpec::for_state(QuantumNumbers::new(2, 1, 1).unwrap(), NuclearCharge::HYDROGEN);
        spec.resolution = (3, 3);
        spec.r_range = (0.1, 3.7);
        spec.p_range = (0.05, 1.3);
        spec.quantity = quantity;
        spec.convention = NormalizationConvention::PaperFigure;
        sample_slice(&spec).unwrap()
    }

    #[test]
    fn real_csv_round_trips_bitwise() {
        let s = tiny(Quantity::Re);
        let text = slice_to_csv(&s, REPRO);
        let parsed = parse_csv(text.as_bytes(), Path::new("mem")).unwrap();
        assert_eq!(parsed.columns, ["r", "p", "value"]);
        assert_eq!(parsed.rows.len(), 9);
        let vals = parsed.column("value").unwrap();
        assert_eq!(vals.as_slice(), s.real_values().unwrap());
        assert_eq!(parsed.meta("convention"), Some("paper_figure"));
        assert_eq!(parsed.meta("created_unix"), None);
    }

    #[test]
    fn complex_csv_round_trips_bitwise() {
        let s = tiny(Quantity::Complex);
        let parsed = parse_csv(slice_to_csv(&s, REPRO).as_bytes(), Path::new("mem")).unwrap();
        assert_eq!(parsed.columns, ["r", "p", "re", "im"]);
        let SliceValues::Complex(v) = &s.values else { panic!() };
        let re = parsed.column("re").unwrap();
        let im = parsed.column("im").unwrap();
        for (k, z) in v.iter().enumerate() {
            assert_eq!(re[k].to_bits(), z.re.to_bits());
            assert_eq!(im[k].to_bits(), z.im.to_bits());
        }
    }

    #[test]
    fn timestamp_only_outside_reproducible_mode() {
        let s = tiny(Quantity::Abs);
        let text = slice_to_csv(&s, ExportOptions::default());
        assert!(text.lines().any(|l| l.starts_with("# created_unix=")));
        assert_eq!(slice_to_csv(&s, REPRO), slice_to_csv(&s, REPRO));
    }

    #[test]
    fn json_round_trips_and_carries_version() {
        let s = tiny(Quantity::Abs2);
        let doc = slice_to_json(&s, REPRO);
        assert_eq!(doc["schema_version"], 1);
        let text = serde_json::to_string(&doc).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        let vals: Vec<f64> = serde_json::from_value(back["values"].clone()).unwrap();
        assert_eq!(vals.as_slice(), s.real_values().unwrap());
    }

    #[test]
    fn parse_errors_carry_path() {
        let err = parse_csv("r,p,value\n1,2\n".as_bytes(), Path::new("bad.csv")).unwrap_err();
        assert!(err.to_string().contains("bad.csv"), "{err}");
        let err = write_text(Path::new("/proc/definitely/not/here.csv"), "x").unwrap_err();
        assert!(err.to_string().contains("/proc/definitely"), "{err}");
    }

    #[test]
    fn table_round_trips() {
        let mut t = Table::new(vec![("kind".into(), "test".into())], &["x", "y"]);
        t.push(vec![0.1, 1.0 / 3.0]);
        t.push(vec![-2.5e-300, f64::MAX]);
        let parsed = parse_csv(t.to_csv(REPRO).as_bytes(), Path::new("mem")).unwrap();
        assert_eq!(parsed.rows, t.rows);
        assert_eq!(parsed.meta("kind"), Some("test"));
        assert_eq!(t.to_json(REPRO)["rows"][0][1], 1.0 / 3.0);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<ExportFormat>().unwrap(), ExportFormat::Json);
        assert!("xml".parse::<ExportFormat>().is_err());
    }

    #[test]
    fn report_csv_quotes_fields() {
        let mut r = VerificationReport::default();
        r.push(crate::verify::CheckResult::new("a, b", 1.0, 1.0, 0.1).with_note("x \"y\""));
        let text = report_to_csv(&r, REPRO);
        assert!(text.contains("\"a, b\""));
        assert!(text.contains("\"x \"\"y\"\"\""));
    }
}
