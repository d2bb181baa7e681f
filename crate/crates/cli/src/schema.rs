//! Fixed CSV schemas and a validator for emitted files.

use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    Float,
    /// Float or empty.
    OptFloat,
    Int,
    Bool,
    OptBool,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub name: &'static str,
    pub ty: ColumnType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schema {
    pub name: &'static str,
    pub columns: &'static [Column],
    /// Rows must be non-decreasing in these columns, compared
    /// lexicographically.
    pub sort_key: &'static [&'static str],
}

const fn col(name: &'static str, ty: ColumnType) -> Column {
    Column { name, ty }
}

use ColumnType::*;

pub static ALGEBRA_VERIFY: Schema = Schema {
    name: "algebra-verify",
    columns: &[
        col("rep", Int),
        col("triples_checked", Int),
        col("max_deviation", Float),
        col("failing_triples", Int),
        col("holds", Bool),
    ],
    sort_key: &["rep"],
};

pub static SPECTRUM_SOLVE: Schema = Schema {
    name: "spectrum-solve",
    columns: &[
        col("l", Int),
        col("nr", Int),
        col("E", Float),
        col("branch", Text),
        col("admissible", Bool),
        col("alpha2_positive", Bool),
        col("kappa2_positive", Bool),
        col("not_pm_m", Bool),
        col("window_ok", Bool),
        col("residual", Float),
    ],
    sort_key: &["l", "nr", "E"],
};

pub static SPECTRUM_SWEEP: Schema = Schema {
    name: "spectrum-sweep",
    columns: &[
        col("axis_value", Float),
        col("l", Int),
        col("nr", Int),
        col("E", Float),
        col("branch", Text),
        col("admissible", Bool),
        col("residual", Float),
    ],
    sort_key: &["axis_value", "l", "nr", "E"],
};

pub static SPECTRUM_WINDOW: Schema = Schema {
    name: "spectrum-window",
    columns: &[
        col("axis_value", Float),
        col("l", Int),
        col("eps_minus", OptFloat),
        col("eps_plus", OptFloat),
    ],
    sort_key: &["axis_value", "l"],
};

pub static STATE_EVAL: Schema = Schema {
    name: "state-eval",
    columns: &[
        col("r", Float),
        col("phi", Float),
        col("re_phi1", Float),
        col("im_phi1", Float),
        col("re_phi2", Float),
        col("im_phi2", Float),
        col("re_phi3", Float),
        col("im_phi3", Float),
        col("J0", Float),
    ],
    sort_key: &["r", "phi"],
};

pub static STATE_CHECK: Schema = Schema {
    name: "state-check",
    columns: &[
        col("check", Text),
        col("value", Float),
        col("tolerance", OptFloat),
        col("pass", OptBool),
    ],
    sort_key: &[],
};

pub static LIEB_BANDS: Schema = Schema {
    name: "lieb-bands",
    columns: &[
        col("k1", Float),
        col("k2", Float),
        col("E1", Float),
        col("E2", Float),
        col("E3", Float),
    ],
    sort_key: &["k1"],
};

pub static LIEB_POLARIZATION: Schema = Schema {
    name: "lieb-polarization",
    columns: &[
        col("ptilde2_over_m2", Float),
        col("pi_even", Float),
        col("pi_odd", Float),
    ],
    sort_key: &["ptilde2_over_m2"],
};

pub static ALL: [&Schema; 8] = [
    &ALGEBRA_VERIFY,
    &SPECTRUM_SOLVE,
    &SPECTRUM_SWEEP,
    &SPECTRUM_WINDOW,
    &STATE_EVAL,
    &STATE_CHECK,
    &LIEB_BANDS,
    &LIEB_POLARIZATION,
];

pub fn by_name(name: &str) -> Option<&'static Schema> {
    ALL.iter().copied().find(|s| s.name == name)
}

/// The schema whose column names match `header` exactly.
pub fn detect(header: &[&str]) -> Option<&'static Schema> {
    ALL.iter()
        .copied()
        .find(|s| s.columns.iter().map(|c| c.name).eq(header.iter().copied()))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchemaError {
    Parse(String),
    Header {
        expected: Vec<String>,
        found: Vec<String>,
    },
    ColumnCount {
        row: usize,
        expected: usize,
        found: usize,
    },
    BadValue {
        row: usize,
        column: &'static str,
        value: String,
    },
    Unsorted {
        row: usize,
    },
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchemaError::Parse(e) => write!(f, "CSV parse error: {e}"),
            SchemaError::Header { expected, found } => {
                write!(f, "header {found:?} does not match {expected:?}")
            }
            SchemaError::ColumnCount {
                row,
                expected,
                found,
            } => write!(f, "row {row}: {found} columns, expected {expected}"),
            SchemaError::BadValue { row, column, value } => {
                write!(f, "row {row}: {value:?} is not valid for column {column}")
            }
            SchemaError::Unsorted { row } => write!(f, "row {row} breaks the sort order"),
        }
    }
}

impl std::error::Error for SchemaError {}

#[derive(Debug, Clone, PartialEq)]
enum Parsed {
    Num(f64),
    Text(String),
    Missing,
}

fn parse_cell(ty: ColumnType, s: &str) -> Option<Parsed> {
    let float = |s: &str| match s {
        "nan" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse::<f64>().ok(),
    };
    match ty {
        Float => float(s).map(Parsed::Num),
        OptFloat if s.is_empty() => Some(Parsed::Missing),
        OptFloat => float(s).map(Parsed::Num),
        Int => s.parse::<i64>().ok().map(|i| Parsed::Num(i as f64)),
        OptBool if s.is_empty() => Some(Parsed::Missing),
        Bool | OptBool => match s {
            "true" | "false" => Some(Parsed::Text(s.to_string())),
            _ => None,
        },
        Text => (!s.is_empty()).then(|| Parsed::Text(s.to_string())),
    }
}

fn compare(a: &Parsed, b: &Parsed) -> Ordering {
    match (a, b) {
        (Parsed::Num(x), Parsed::Num(y)) => x.total_cmp(y),
        (Parsed::Text(x), Parsed::Text(y)) => x.cmp(y),
        (Parsed::Missing, Parsed::Missing) => Ordering::Equal,
        (Parsed::Missing, _) => Ordering::Less,
        (_, Parsed::Missing) => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// Checks header, column count, cell types and sort order; returns the
/// number of data rows.
pub fn validate_csv(schema: &Schema, text: &str) -> Result<usize, SchemaError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| SchemaError::Parse(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let expected: Vec<String> = schema.columns.iter().map(|c| c.name.to_string()).collect();
    if header != expected {
        return Err(SchemaError::Header {
            expected,
            found: header,
        });
    }
    let key_idx: Vec<usize> = schema
        .sort_key
        .iter()
        .map(|k| {
            schema
                .columns
                .iter()
                .position(|c| c.name == *k)
                .expect("sort key names a column")
        })
        .collect();

    let mut prev: Option<Vec<Parsed>> = None;
    let mut count = 0;
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| SchemaError::Parse(e.to_string()))?;
        if record.len() != schema.columns.len() {
            return Err(SchemaError::ColumnCount {
                row,
                expected: schema.columns.len(),
                found: record.len(),
            });
        }
        let mut parsed = Vec::with_capacity(record.len());
        for (col, value) in schema.columns.iter().zip(record.iter()) {
            parsed.push(
                parse_cell(col.ty, value).ok_or_else(|| SchemaError::BadValue {
                    row,
                    column: col.name,
                    value: value.to_string(),
                })?,
            );
        }
        let key: Vec<Parsed> = key_idx.iter().map(|&k| parsed[k].clone()).collect();
        if let Some(p) = &prev {
            let ord = p
                .iter()
                .zip(&key)
                .map(|(a, b)| compare(a, b))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal);
            if ord == Ordering::Greater {
                return Err(SchemaError::Unsorted { row });
            }
        }
        prev = Some(key);
        count += 1;
    }
    Ok(count)
}
