//! CSV and JSON output.  CSV files start with a `# schema: ...` comment line;
//! floats are written with 17 significant digits.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::sim::Trajectory;

/// Formats a float so it reads back bit-exactly.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// A table with a schema string, written as CSV.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub schema: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(schema: impl Into<String>, header: &[&str]) -> Self {
        CsvTable { schema: schema.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# schema: {}", self.schema)?;
        let mut c = csv::Writer::from_writer(w);
        c.write_record(&self.header)?;
        for r in &self.rows {
            c.write_record(r)?;
        }
        c.flush()?;
        Ok(())
    }

    pub fn to_string_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write(&mut buf)?;
        Ok(String::from_utf8_lossy(&buf).into_owned())
    }
}

pub const TRAJECTORY_SCHEMA: &str = "sep-trajectory/v1 sample_id,t,x,Q,N,X_<m>...";

/// One row per record time and site; tag positions repeat along the rows of
/// a record time.
pub fn trajectory_table(trs: &[Trajectory], tag_labels: &[i64]) -> CsvTable {
    let mut header: Vec<String> = ["sample_id", "t", "x", "Q", "N"].iter().map(|s| s.to_string()).collect();
    header.extend(tag_labels.iter().map(|m| format!("X_{m}")));
    let mut t = CsvTable { schema: TRAJECTORY_SCHEMA.into(), header, rows: Vec::new() };
    for tr in trs {
        for r in &tr.sites {
            let mut row = vec![
                tr.sample_id.to_string(),
                fmt_f64(tr.times[r.time_index]),
                r.x.to_string(),
                r.q.to_string(),
                r.n.to_string(),
            ];
            for &m in tag_labels {
                row.push(tr.tag(r.time_index, m).map(|x| x.to_string()).unwrap_or_default());
            }
            t.push(row);
        }
    }
    t
}

/// Pretty JSON with fields in declaration order.
pub fn to_json<S: Serialize>(v: &S) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

pub fn write_json<S: Serialize, W: Write>(v: &S, mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)?;
    Ok(())
}
