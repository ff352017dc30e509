//! Field tables: CSV with 17 significant digits or JSON lines.

use std::io::{Read, Write};

use serde_json::{json, Map, Value};

use super::config::Format;
use crate::algebra::{SpacetimePoint, Vec3};
use crate::error::{Error, Result};
use crate::waves::FieldSample;

pub const FIELD_COLUMNS: [&str; 12] = [
    "x0", "x1", "x2", "x3", "E1", "E2", "E3", "cB1", "cB2", "cB3", "E_dot_cB", "E2_minus_cB2",
];
const B_COLUMNS: [&str; 3] = ["B1", "B2", "B3"];

/// Shortest scientific form carrying 17 significant digits, which is enough
/// to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn row_values(f: &FieldSample, c: Option<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = f.point.x.to_vec();
    v.extend(f.e.iter());
    v.extend(f.cb.iter());
    v.push(f.e_dot_cb());
    v.push(f.energy_difference());
    if let Some(c) = c {
        v.extend(f.cb.iter().map(|x| x / c));
    }
    v
}

fn header(c: Option<f64>) -> Vec<&'static str> {
    let mut h = FIELD_COLUMNS.to_vec();
    if c.is_some() {
        h.extend(B_COLUMNS);
    }
    h
}

/// Writes the table; `skipped` rows are reported in a trailing comment
/// (CSV) or record (JSON lines) when nonzero.
pub fn write_fields<W: Write>(
    w: W,
    format: Format,
    rows: &[FieldSample],
    skipped: usize,
    c: Option<f64>,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(w);
            wr.write_record(header(c))?;
            for f in rows {
                wr.write_record(row_values(f, c).iter().map(|v| fmt_f64(*v)))?;
            }
            let mut w = wr.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            if skipped > 0 {
                writeln!(w, "# skipped_rows={skipped}")?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            let mut w = w;
            let names = header(c);
            for f in rows {
                let obj: Map<String, Value> = names
                    .iter()
                    .zip(row_values(f, c))
                    .map(|(k, v)| (k.to_string(), json!(v)))
                    .collect();
                serde_json::to_writer(&mut w, &obj)?;
                writeln!(w)?;
            }
            if skipped > 0 {
                serde_json::to_writer(&mut w, &json!({ "skipped_rows": skipped }))?;
                writeln!(w)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Reads a table written by [`write_fields`] back into samples.
pub fn read_fields<R: Read>(r: R, format: Format) -> Result<Vec<FieldSample>> {
    let build = |get: &dyn Fn(&str) -> Result<f64>| -> Result<FieldSample> {
        let v = |a: &str, b: &str, c: &str| -> Result<Vec3> { Ok(Vec3::new(get(a)?, get(b)?, get(c)?)) };
        Ok(FieldSample::new(
            v("E1", "E2", "E3")?,
            v("cB1", "cB2", "cB3")?,
            SpacetimePoint {
                x: [get("x0")?, get("x1")?, get("x2")?, get("x3")?],
            },
        ))
    };
    match format {
        Format::Csv => {
            let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
            let headers = rd.headers()?.clone();
            let mut out = Vec::new();
            for rec in rd.records() {
                let rec = rec?;
                let get = |name: &str| -> Result<f64> {
                    let i = headers
                        .iter()
                        .position(|h| h == name)
                        .ok_or_else(|| Error::config(format!("input table has no column {name}")))?;
                    rec.get(i)
                        .and_then(|s| s.trim().parse().ok())
                        .ok_or_else(|| Error::config(format!("bad value in column {name}")))
                };
                out.push(build(&get)?);
            }
            Ok(out)
        }
        Format::Jsonl => {
            let mut text = String::new();
            let mut r = r;
            r.read_to_string(&mut text)?;
            let mut out = Vec::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let obj: Map<String, Value> = serde_json::from_str(line)?;
                if obj.contains_key("skipped_rows") {
                    continue;
                }
                let get = |name: &str| -> Result<f64> {
                    obj.get(name)
                        .and_then(Value::as_f64)
                        .ok_or_else(|| Error::config(format!("input record has no numeric field {name}")))
                };
                out.push(build(&get)?);
            }
            Ok(out)
        }
    }
}
