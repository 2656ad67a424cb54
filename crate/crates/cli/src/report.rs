//! Tabular results and their CSV / JSON renderings.
//!
//! Both renderings carry the same strings; nothing is re-formatted on the way
//! out, so a CSV file and a JSON file of one run agree cell for cell.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::config::RunConfig;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    /// One entry per column; `None` where a value is undefined.
    pub cells: Vec<Option<String>>,
    pub meta: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub config: RunConfig,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    pub meta: BTreeMap<String, String>,
    /// False when a verification check inside the run failed.
    pub passed: bool,
}

impl Report {
    pub fn new(config: RunConfig, columns: &[&str]) -> Self {
        Report {
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: BTreeMap::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, cells: Vec<Option<String>>, meta: BTreeMap<String, String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(Row { cells, meta });
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut out = format!("# planestat {}\n", env!("CARGO_PKG_VERSION"));
        for (k, v) in self.config.echo() {
            out.push_str(&format!("# {k}={v}\n"));
        }
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut header: Vec<&str> = self.columns.iter().map(String::as_str).collect();
        header.push("meta");
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.cells.iter().map(|c| c.clone().unwrap_or_default()).collect();
            rec.push(join_meta(&row.meta));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(&JsonReport(self))?;
        s.push('\n');
        Ok(s)
    }
}

/// `key=value` pairs joined by `;`, keys in sorted order.
pub fn join_meta(meta: &BTreeMap<String, String>) -> String {
    meta.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn split_meta(s: &str) -> BTreeMap<String, String> {
    s.split(';')
        .filter(|p| !p.is_empty())
        .filter_map(|p| p.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

struct JsonReport<'a>(&'a Report);
struct JsonRows<'a>(&'a Report);
struct JsonRow<'a>(&'a [String], &'a Row);

impl Serialize for JsonReport<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = self.0;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("version", env!("CARGO_PKG_VERSION"))?;
        m.serialize_entry("config", &r.config.echo())?;
        m.serialize_entry("rows", &JsonRows(r))?;
        m.serialize_entry("meta", &r.meta)?;
        m.end()
    }
}

impl Serialize for JsonRows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.rows.len()))?;
        for row in &self.0.rows {
            seq.serialize_element(&JsonRow(&self.0.columns, row))?;
        }
        seq.end()
    }
}

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len() + 1))?;
        for (col, cell) in self.0.iter().zip(&self.1.cells) {
            m.serialize_entry(col, cell)?;
        }
        m.serialize_entry("meta", &self.1.meta)?;
        m.end()
    }
}
