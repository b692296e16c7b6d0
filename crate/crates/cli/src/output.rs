use crate::{Failure, Format, Global};
use serde_json::{json, Map, Value};
use std::io::Write;

/// The JSON document every single-shot command and suite run produces.
#[derive(Debug, Clone)]
pub struct Report {
    pub inputs: Value,
    pub results: Value,
    pub tolerances: Value,
    pub status: String,
}

impl Report {
    pub fn ok(inputs: Value, results: Value, tolerances: Value) -> Self {
        Report { inputs, results, tolerances, status: "ok".into() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "inputs": self.inputs,
            "results": self.results,
            "tolerances": self.tolerances,
            "status": self.status,
        })
    }
}

/// A sweep result: header plus rows already formatted.
#[derive(Debug, Clone)]
pub struct Table {
    pub inputs: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub status: String,
}

/// 17 significant digits: every double round-trips.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn sink(g: &Global) -> Result<Box<dyn Write>, Failure> {
    match &g.out {
        Some(p) => std::fs::File::create(p)
            .map(|f| Box::new(std::io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn io(e: impl std::fmt::Display) -> Failure {
    Failure::usage(format!("write failed: {e}"))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        Value::Number(n) => out.push((prefix.into(), n.as_f64().map(num).unwrap_or_else(|| n.to_string()))),
        Value::String(s) => out.push((prefix.into(), s.clone())),
        Value::Bool(b) => out.push((prefix.into(), b.to_string())),
        Value::Null => out.push((prefix.into(), String::new())),
    }
}

pub fn emit_report(r: &Report, g: &Global) -> Result<(), Failure> {
    let mut w = sink(g)?;
    match g.format.unwrap_or(Format::Json) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &r.to_json()).map_err(io)?;
            writeln!(w).map_err(io)?;
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("inputs", &r.inputs, &mut rows);
            flatten("results", &r.results, &mut rows);
            flatten("tolerances", &r.tolerances, &mut rows);
            rows.push(("status".into(), r.status.clone()));
            let mut c = csv::Writer::from_writer(w);
            c.write_record(["key", "value"]).map_err(io)?;
            for (k, v) in rows {
                c.write_record([k, v]).map_err(io)?;
            }
            c.flush().map_err(io)?;
        }
    }
    Ok(())
}

pub fn emit_table(t: &Table, g: &Global) -> Result<(), Failure> {
    let mut w = sink(g)?;
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut c = csv::Writer::from_writer(w);
            c.write_record(&t.header).map_err(io)?;
            for row in &t.rows {
                c.write_record(row).map_err(io)?;
            }
            c.flush().map_err(io)?;
        }
        Format::Json => {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|row| {
                    let m: Map<String, Value> = t
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, v)| {
                            let x = v.parse::<f64>().ok().and_then(|x| serde_json::Number::from_f64(x).map(Value::Number));
                            (h.clone(), x.unwrap_or_else(|| Value::String(v.clone())))
                        })
                        .collect();
                    Value::Object(m)
                })
                .collect();
            let doc = json!({
                "inputs": t.inputs,
                "results": { "columns": t.header, "rows": rows },
                "tolerances": {},
                "status": t.status,
            });
            serde_json::to_writer_pretty(&mut w, &doc).map_err(io)?;
            writeln!(w).map_err(io)?;
        }
    }
    Ok(())
}
