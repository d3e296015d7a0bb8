//! Report assembly and the two renderings: `key=value` records and
//! indented text.

use std::fmt::Write as _;

use finsler_lie::Vector;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Vec(Vec<f64>),
    Text(String),
    Bool(bool),
    Int(usize),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<&Vector> for Value {
    fn from(v: &Vector) -> Self {
        Value::Vec(v.iter().copied().collect())
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// Round-trip representation; plain decimals in a moderate range,
/// scientific otherwise.
pub fn exact(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".into()
    } else if !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn human(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".into()
    } else if !x.is_finite() || (1e-3..1e6).contains(&a) {
        let s = format!("{x:.9}");
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    } else {
        format!("{x:.4e}")
    }
}

impl Value {
    fn render(&self, records: bool) -> String {
        let num = |x: f64| if records { exact(x) } else { human(x) };
        match self {
            Value::Num(x) => num(*x),
            Value::Vec(v) => {
                let parts: Vec<String> = v.iter().map(|&x| num(x)).collect();
                if records {
                    parts.join(",")
                } else {
                    format!("({})", parts.join(", "))
                }
            }
            // keep records one per line
            Value::Text(s) if records => s.replace('\n', " "),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Int(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Line {
    Section(String),
    Field(String, Value),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    lines: Vec<Line>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// A heading in text mode; invisible in records.
    pub fn section(&mut self, title: impl Into<String>) -> &mut Self {
        self.lines.push(Line::Section(title.into()));
        self
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.lines.push(Line::Field(key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.lines.iter().find_map(|l| match l {
            Line::Field(k, v) if k == key => Some(v),
            _ => None,
        })
    }

    pub fn render(&self, records: bool) -> String {
        let mut out = String::new();
        for line in &self.lines {
            match (line, records) {
                (Line::Section(_), true) => {}
                (Line::Section(t), false) => {
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "{t}");
                }
                (Line::Field(k, v), true) => {
                    let _ = writeln!(out, "{k}={}", v.render(true));
                }
                (Line::Field(k, v), false) => {
                    let _ = writeln!(out, "  {k}: {}", v.render(false));
                }
            }
        }
        out
    }
}
