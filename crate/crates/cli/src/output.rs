//! Grid and report documents, in JSON and CSV.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::Value;

use canon4::lattice::Lattice;
use canon4::{Error, Result};

use crate::defs::SCHEMA;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Number with 17 significant digits; non-finite values become `null`.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

fn csv_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "NaN".into()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub nu: usize,
    pub nv: usize,
    pub bounds: [f64; 4],
}

impl LatticeSpec {
    pub fn of(l: &Lattice<f64>) -> Self {
        let b = l.bounds;
        LatticeSpec { nu: l.nu, nv: l.nv, bounds: [b.u_min, b.u_max, b.v_min, b.v_max] }
    }
}

/// Named columns over a lattice, rows ordered `v`-major then `u`-minor.
#[derive(Clone, Debug, PartialEq)]
pub struct GridOutput {
    pub command: String,
    pub lattice: LatticeSpec,
    pub columns: Vec<(String, Vec<f64>)>,
    pub meta: Value,
}

#[derive(Serialize)]
struct ColumnOut<'a> {
    name: &'a str,
    values: Vec<Box<RawValue>>,
}

#[derive(Serialize)]
struct GridOut<'a> {
    schema: &'a str,
    command: &'a str,
    lattice: &'a LatticeSpec,
    columns: Vec<ColumnOut<'a>>,
    meta: &'a Value,
}

#[derive(Deserialize)]
struct ColumnIn {
    name: String,
    values: Vec<Option<f64>>,
}

#[derive(Deserialize)]
struct GridIn {
    schema: String,
    #[serde(default)]
    command: String,
    lattice: LatticeSpec,
    columns: Vec<ColumnIn>,
    #[serde(default)]
    meta: Value,
}

fn raw(x: f64) -> Box<RawValue> {
    RawValue::from_string(number(x)).expect("formatted numbers are valid JSON")
}

impl GridOutput {
    pub fn new(command: &str, lattice: &Lattice<f64>) -> Self {
        GridOutput { command: command.into(), lattice: LatticeSpec::of(lattice), columns: Vec::new(), meta: Value::Null }
    }

    pub fn push(&mut self, name: &str, values: Vec<f64>) {
        self.columns.push((name.into(), values));
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn to_json(&self) -> String {
        let doc = GridOut {
            schema: SCHEMA,
            command: &self.command,
            lattice: &self.lattice,
            columns: self.columns.iter().map(|(n, v)| ColumnOut { name: n, values: v.iter().map(|&x| raw(x)).collect() }).collect(),
            meta: &self.meta,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|(n, _)| n.as_str())).expect("in-memory write");
        let rows = self.columns.first().map_or(0, |(_, v)| v.len());
        for r in 0..rows {
            w.write_record(self.columns.iter().map(|(_, v)| csv_number(v[r]))).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    /// Read a grid written by this tool; the format follows the extension
    /// or, failing that, the first character.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
        if is_json {
            let g: GridIn = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            if g.schema != SCHEMA {
                return Err(Error::InvalidInput(format!("expected schema \"{SCHEMA}\"")));
            }
            let columns =
                g.columns.into_iter().map(|c| (c.name, c.values.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect())).collect();
            Ok(GridOutput { command: g.command, lattice: g.lattice, columns, meta: g.meta })
        } else {
            let mut r = csv::Reader::from_reader(text.as_bytes());
            let names: Vec<String> = r.headers().map_err(|e| Error::InvalidInput(e.to_string()))?.iter().map(String::from).collect();
            let mut cols = vec![Vec::new(); names.len()];
            for rec in r.records() {
                let rec = rec.map_err(|e| Error::InvalidInput(e.to_string()))?;
                for (k, f) in rec.iter().enumerate() {
                    let x: f64 = f.trim().parse().map_err(|_| Error::InvalidInput(format!("bad number `{f}`")))?;
                    cols[k].push(x);
                }
            }
            let n = cols.first().map_or(0, Vec::len);
            let columns: Vec<(String, Vec<f64>)> = names.into_iter().zip(cols).collect();
            let span = |name: &str| columns.iter().find(|(c, _)| c == name).map(|(_, v)| v.clone()).unwrap_or_default();
            let (u, v) = (span("u"), span("v"));
            // Rows are v-major, so the first run of equal v is one u-line.
            let nu = v.iter().take_while(|&&x| Some(x) == v.first().copied()).count().max(1);
            let bounds = |w: &[f64]| w.iter().fold([f64::INFINITY, f64::NEG_INFINITY], |[a, b], &x| [a.min(x), b.max(x)]);
            let ([a, b], [c, d]) = (bounds(&u), bounds(&v));
            Ok(GridOutput {
                command: String::new(),
                lattice: LatticeSpec { nu, nv: n / nu.max(1), bounds: [a, b, c, d] },
                columns,
                meta: Value::Null,
            })
        }
    }
}

/// Write `text` to `out` or standard output.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(text.as_bytes()).map_err(|e| Error::InvalidInput(e.to_string()))
        }
    }
}

/// A report as JSON, or as `key,value` CSV rows of its flattened fields.
pub fn render_report(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in rows {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.into(), s.clone())),
        other => out.push((prefix.into(), other.to_string())),
    }
}

/// JSON number for a report; non-finite values become `null`.
pub fn json_f64(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}
