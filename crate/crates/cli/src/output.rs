//! Text and JSON rendering of verification reports.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use og10_lattice::VerificationReport;
use serde_json::Value;

use crate::CliError;

const WITNESS_WIDTH: usize = 96;

fn short_witness(w: &Value) -> String {
    let mut compact = match w {
        Value::Object(map) => {
            // tables are printed separately below the summary
            let mut m = map.clone();
            if let Some(Value::Array(rows)) = m.get("rows") {
                let n = rows.len();
                m.insert("rows".into(), Value::String(format!("<{n} rows>")));
            }
            Value::Object(m).to_string()
        }
        other => other.to_string(),
    };
    if compact.chars().count() > WITNESS_WIDTH {
        compact = compact.chars().take(WITNESS_WIDTH - 3).collect::<String>() + "...";
    }
    compact
}

/// Aligned columns for an array of flat JSON objects.
fn render_rows(rows: &[Value]) -> String {
    let keys: Vec<String> = match rows.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => return String::new(),
    };
    let cell = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            keys.iter()
                .map(|k| cell(r.get(k).unwrap_or(&Value::Null)))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            table
                .iter()
                .map(|r| r[i].len())
                .chain([k.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "    {}", line(&keys));
    for r in &table {
        let _ = writeln!(out, "    {}", line(r));
    }
    out
}

/// The aligned-text form of a report.
pub fn render_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "suite {}", report.suite);
    let name_w = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .chain(["check".len()])
        .max()
        .unwrap_or(5);
    let _ = writeln!(out, "  {:<name_w$}  result  {:>8}  witness", "check", "ms");
    for c in &report.checks {
        let verdict = if c.pass { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "  {:<name_w$}  {verdict:<6}  {:>8}  {}",
            c.name,
            c.runtime_ms,
            short_witness(&c.witness)
        );
    }
    for c in &report.checks {
        if let Some(Value::Array(rows)) = c.witness.get("rows") {
            let _ = writeln!(out, "\n  {}:", c.name);
            out.push_str(&render_rows(rows));
        }
    }
    let _ = writeln!(
        out,
        "{} checks, pass={}",
        report.checks.len(),
        report.pass()
    );
    out
}

/// Writes `value` to `path` via a temporary file in the same directory.
pub fn write_json_atomic(path: &Path, value: &Value) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, value)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// Prints the text form to `out` and, if requested, writes the JSON document.
pub fn emit_report(
    report: &VerificationReport,
    json_path: Option<&Path>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    out.write_all(render_text(report).as_bytes())?;
    if let Some(p) = json_path {
        write_json_atomic(p, &report.to_json())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use og10_lattice::Check;
    use serde_json::json;

    #[test]
    fn empty_report() {
        let r = VerificationReport::new("empty");
        let text = render_text(&r);
        assert!(text.starts_with("suite empty\n"));
        assert!(text.ends_with("0 checks, pass=true\n"));
    }

    #[test]
    fn failing_row_is_flagged() {
        let mut r = VerificationReport::new("x");
        r.push(Check {
            name: "bad".into(),
            pass: false,
            witness: json!({"n": "1"}),
            runtime_ms: 0,
        })
        .unwrap();
        let text = render_text(&r);
        assert!(text.contains("bad    FAIL"));
        assert!(text.ends_with("1 checks, pass=false\n"));
    }

    #[test]
    fn rows_are_aligned() {
        let rows = vec![
            json!({"n": 1, "b": "0.5"}),
            json!({"n": 10, "b": "0.05953"}),
        ];
        let t = render_rows(&rows);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_json_atomic(&p, &json!({"a": 1})).unwrap();
        let back: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        assert_eq!(back, json!({"a": 1}));
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
