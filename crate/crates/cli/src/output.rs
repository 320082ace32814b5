//! Deterministic table rendering: CSV with a `# key=value` provenance
//! header, or the same content as JSON.

use std::collections::BTreeMap;

/// One rendered value, always 12 significant digits so reruns are
/// byte-identical; zero, infinities, and undefined values get stable
/// spellings.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.11e}")
    }
}

pub struct Table {
    pub meta: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.meta {
            out.push_str(&format!("# {key}={value}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let value = serde_json::json!({
            "meta": self.meta,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut text = serde_json::to_string_pretty(&value).expect("tables serialize");
        text.push('\n');
        text
    }

    pub fn render(&self, format: crate::Format) -> String {
        match format {
            crate::Format::Csv => self.render_csv(),
            crate::Format::Json => self.render_json(),
        }
    }
}

/// Compact echo of a float list for the meta header.
pub fn list_echo(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
