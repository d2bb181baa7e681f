//! Tabular output: one row type shared by the CSV and JSON writers.

use serde_json::{json, Map, Value};

use crate::schema::{ColumnType, Schema};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Float(x) => fmt_g12(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(x) => json!(fmt_g12(*x)),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(i: $t) -> Self {
                Cell::Int(i as i64)
            }
        }
    )*};
}
int_cell!(i32, u32, usize);

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub schema: &'static Schema,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(schema: &'static Schema) -> Self {
        Table {
            schema,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.schema.columns.len());
        debug_assert!(row.iter().zip(self.schema.columns).all(|(c, col)| matches!(
            (c, col.ty),
            (Cell::Float(_), ColumnType::Float | ColumnType::OptFloat)
                | (Cell::Int(_), ColumnType::Int)
                | (Cell::Bool(_), ColumnType::Bool | ColumnType::OptBool)
                | (Cell::Text(_), ColumnType::Text)
                | (Cell::Empty, ColumnType::OptFloat | ColumnType::OptBool)
        )));
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(self.schema.columns.iter().map(|c| c.name))
            .expect("writing to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))
                .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
    }

    /// Rows as objects inside an envelope carrying the tool version and the
    /// configuration that produced them.
    pub fn to_json(&self, command: &str, config: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .schema
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.name.to_string(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "tool": "dkp",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "schema": self.schema.name,
            "config": config,
            "columns": self.schema.columns.iter().map(|c| c.name).collect::<Vec<_>>(),
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON serialization");
        s.push('\n');
        s
    }
}

/// Shortest form of `x` at 12 significant digits, following C's `%.12g`:
/// fixed notation for decimal exponents in [−4, 12), scientific otherwise,
/// trailing zeros removed.
pub fn fmt_g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_fraction(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{sign}{:02}",
            trim_fraction(mantissa.to_string()),
            exp.abs()
        )
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}
