use std::io::Write;

use heunlim::linalg::DenseMatrix;
use serde_json::{json, Number, Value};

/// Seventeen significant digits with a signed exponent, the text shared by JSON and CSV.
pub fn digits(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    let s = format!("{v:.16e}");
    Some(match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    })
}

pub fn num(v: f64) -> Value {
    match digits(v) {
        Some(s) => Value::Number(s.parse::<Number>().expect("formatted float is a JSON number")),
        None => Value::Null,
    }
}

pub fn nums(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

pub fn rows(m: &DenseMatrix<f64>) -> Value {
    Value::Array((0..m.rows()).map(|i| nums(m.row(i))).collect())
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tol: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tol,
        }
    }

    pub fn pass(&self) -> bool {
        self.value.is_finite() && self.value <= self.tol
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "value": num(self.value),
            "tolerance": num(self.tol),
            "pass": self.pass(),
        })
    }
}

/// Keeps the worst value seen per check name, in first-seen order.
#[derive(Debug, Default)]
pub struct Worst(pub Vec<Check>);

impl Worst {
    pub fn track(&mut self, name: &str, value: f64, tol: f64) {
        let value = if value.is_nan() { f64::INFINITY } else { value };
        match self.0.iter_mut().find(|c| c.name == name) {
            Some(c) => c.value = c.value.max(value),
            None => self.0.push(Check::new(name, value, tol)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

impl Series {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub results: Value,
    pub checks: Vec<Check>,
    pub series: Vec<Series>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }
}

pub fn json_document(config: Value, report: &Report, timings: Option<Value>) -> Value {
    json!({
        "config": config,
        "results": report.results,
        "residuals": report.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        "timings": timings.unwrap_or(Value::Null),
        "version": env!("CARGO_PKG_VERSION"),
    })
}

pub fn write_json(out: &mut dyn Write, doc: &Value) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

/// `series,index,value` rows: every plotted series, then one row per check.
pub fn write_csv(out: &mut dyn Write, report: &Report) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["series", "index", "value"])?;
    let cell = |v: f64| digits(v).unwrap_or_default();
    for s in &report.series {
        for (i, &v) in s.values.iter().enumerate() {
            w.write_record([s.name.as_str(), &i.to_string(), &cell(v)])?;
        }
    }
    for c in &report.checks {
        w.write_record([&format!("residual:{}", c.name), "0", &cell(c.value)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn error_record(kind: &str, message: &str, code: i32) -> Value {
    json!({
        "error": { "kind": kind, "message": message },
        "exit_code": code,
        "version": env!("CARGO_PKG_VERSION"),
    })
}
