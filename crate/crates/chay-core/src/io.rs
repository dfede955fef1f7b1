//! CSV and JSON export with `#`-prefixed JSON comment headers.
//!
//! Every exported file opens with a single `# {...}` line carrying the
//! resolved configuration that produced it, so a file can be regenerated
//! bit-for-bit from its own header. Numbers are written in shortest
//! round-trip form.

use std::io::Write;
use std::path::Path;

use crate::channels::HysteresisLoop;
use crate::dynamics::Trajectory;
use crate::Result;

/// Write a CSV with a `# <json>` header line, a column-name row, and one
/// row per record.
pub fn write_csv<P: AsRef<Path>>(
    path: P,
    header: &serde_json::Value,
    columns: &[&str],
    rows: impl Iterator<Item = Vec<f64>>,
) -> Result<()> {
    write_csv_with_comments(path, &[format!("{header}")], columns, rows)
}

/// Write a CSV with one `# `-prefixed comment line per entry, a column-name
/// row, and one row per record.
pub fn write_csv_with_comments<P: AsRef<Path>>(
    path: P,
    comments: &[String],
    columns: &[&str],
    rows: impl Iterator<Item = Vec<f64>>,
) -> Result<()> {
    let mut out = Vec::new();
    for comment in comments {
        writeln!(out, "# {comment}")?;
    }
    writeln!(out, "{}", columns.join(","))?;
    for row in rows {
        let mut first = true;
        for value in row {
            if !first {
                out.push(b',');
            }
            write!(out, "{value}")?;
            first = false;
        }
        out.push(b'\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Write a value as pretty JSON with a trailing newline.
pub fn write_json<P: AsRef<Path>, T: serde::Serialize>(path: P, value: &T) -> Result<()> {
    let mut text =
        serde_json::to_string_pretty(value).expect("serialization of plain data cannot fail");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

impl Trajectory {
    /// `t,V,n,Ca` rows under a configuration header.
    pub fn write_csv<P: AsRef<Path>>(&self, path: P, header: &serde_json::Value) -> Result<()> {
        write_csv(
            path,
            header,
            &["t", "V", "n", "Ca"],
            (0..self.len()).map(|i| vec![self.t[i], self.v[i], self.n[i], self.ca[i]]),
        )
    }
}

impl HysteresisLoop {
    /// `t,v,i` rows under a configuration header; metrics go to a JSON
    /// sidecar via [`HysteresisLoop::metrics_json`].
    pub fn write_csv<P: AsRef<Path>>(&self, path: P, header: &serde_json::Value) -> Result<()> {
        write_csv(
            path,
            header,
            &["t", "v", "i"],
            self.samples.iter().map(|s| vec![s.t, s.v, s.i]),
        )
    }

    pub fn metrics_json(&self) -> serde_json::Value {
        serde_json::json!({
            "frequency_hz": self.frequency,
            "amplitude_mv": self.amplitude,
            "origin_residual": self.metrics.origin_residual,
            "lobe_area": self.metrics.lobe_area,
            "multivalue_spread": self.metrics.multivalue_spread,
            "max_abs_i": self.metrics.max_abs_i,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_and_shape() {
        let dir = std::env::temp_dir().join("chay-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("demo.csv");
        write_csv(
            &path,
            &serde_json::json!({"a": 1}),
            &["x", "y"],
            vec![vec![1.0, 2.5], vec![-3.0, 4.0e-9]].into_iter(),
        )
        .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "# {\"a\":1}");
        assert_eq!(lines.next().unwrap(), "x,y");
        assert_eq!(lines.next().unwrap(), "1,2.5");
        assert_eq!(lines.next().unwrap(), "-3,0.000000004");
        std::fs::remove_file(&path).ok();
    }
}
