//! Deterministic CSV/JSON emission.
//!
//! Floats use Rust's shortest round-trip formatting so reruns are byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::config::ModelConfig;

pub fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// Shortest round-trip decimal; non-finite values as `nan`/`inf`/`-inf`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:?}")
    }
}

/// Column table with a `#` metadata preamble.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), ..Self::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    /// Records the config hash and the solver options.
    pub fn stamp(&mut self, cfg: &ModelConfig) -> &mut Self {
        self.meta("config_hash", cfg.hash());
        self.meta("fock_dim", cfg.solver.fock_dim);
        self.meta("steady_tol", fmt_float(cfg.solver.steady_tol));
        self.meta("scattering", format!("{:?}", cfg.solver.scattering));
        self.meta("radiative_wavenumber", format!("{:?}", cfg.conventions.radiative_wavenumber));
        self.meta("field_normalization", format!("{:?}", cfg.conventions.field_normalization))
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(|&x| fmt_float(x)).collect()).collect();
        csv_text(&self.metadata, &self.columns, &rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, &x)| (c.clone(), json_float(x)))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "metadata": meta, "columns": self.columns, "rows": rows })
    }

    /// Writes `<stem>.csv` and `<stem>.json` into `dir`.
    pub fn write(&self, dir: &Path, stem: &str) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{stem}.csv")), self.to_csv())?;
        let json = serde_json::to_string_pretty(&self.to_json()).expect("table serializes");
        std::fs::write(dir.join(format!("{stem}.json")), json + "\n")
    }
}

/// CSV with a `# key: value` preamble and one header line.
pub fn csv_text(metadata: &[(String, String)], columns: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (k, v) in metadata {
        let _ = writeln!(out, "# {k}: {v}");
    }
    let _ = writeln!(out, "{}", columns.join(","));
    for r in rows {
        let _ = writeln!(out, "{}", r.join(","));
    }
    out
}

/// JSON number, or null for non-finite values.
pub fn json_float(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x).map(serde_json::Value::Number).unwrap_or(serde_json::Value::Null)
}

/// Minimal SVG polyline plot of y(x) for one or more series.
pub fn svg_plot(title: &str, x: &[f64], series: &[(&str, Vec<f64>)]) -> String {
    let (w, h, pad) = (640.0, 400.0, 50.0);
    let finite = |v: &[f64]| v.iter().copied().filter(|z| z.is_finite()).collect::<Vec<_>>();
    let xs = finite(x);
    let ys: Vec<f64> = series.iter().flat_map(|(_, y)| finite(y)).collect();
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let sx = |v: f64| pad + (v - x0) / (x1 - x0).max(1e-300) * (w - 2.0 * pad);
    let sy = |v: f64| h - pad - (v - y0) / (y1 - y0).max(1e-300) * (h - 2.0 * pad);
    let colours = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{pad}" y="24" font-family="sans-serif" font-size="14">{title}</text>"#);
    let _ = writeln!(
        out,
        r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    let _ = writeln!(out, r#"<text x="{pad}" y="{}" font-family="sans-serif" font-size="11">{} … {}</text>"#, h - 15.0, fmt_float(x0), fmt_float(x1));
    for (k, (name, y)) in series.iter().enumerate() {
        let pts: Vec<String> = x
            .iter()
            .zip(y)
            .filter(|(a, b)| a.is_finite() && b.is_finite())
            .map(|(&a, &b)| format!("{:.2},{:.2}", sx(a), sy(b)))
            .collect();
        let c = colours[k % colours.len()];
        let _ = writeln!(out, r#"<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        let _ = writeln!(out, r#"<text x="{}" y="{}" fill="{c}" font-family="sans-serif" font-size="11">{name}</text>"#, w - pad - 120.0, pad + 15.0 * (k as f64 + 1.0));
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(v: &[f64]) -> (f64, f64) {
    if v.is_empty() {
        return (0.0, 1.0);
    }
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi { (lo - 0.5, hi + 0.5) } else { (lo, hi) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip() {
        for x in [0.1, 1.0 / 3.0, 12.42e-5, 577.038, 1e-300, -2.5] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_float(0.1), "0.1");
        assert_eq!(fmt_float(f64::NAN), "nan");
    }

    #[test]
    fn csv_has_preamble_and_header() {
        let mut t = Table::new(&["a", "b"]);
        t.meta("k", "v");
        t.push(vec![1.0, 0.5]);
        assert_eq!(t.to_csv(), "# k: v\na,b\n1.0,0.5\n");
        assert_eq!(t.column("b"), Some(vec![0.5]));
    }

    #[test]
    fn json_mirrors_rows() {
        let mut t = Table::new(&["x"]);
        t.push(vec![f64::NAN]);
        t.push(vec![2.0]);
        let j = t.to_json();
        assert!(j["rows"][0]["x"].is_null());
        assert_eq!(j["rows"][1]["x"], 2.0);
    }
}
