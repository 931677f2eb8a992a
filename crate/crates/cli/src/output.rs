//! Rendering of result tables as CSV or JSON.

use clap::ValueEnum;
use qredux::export::{Table, Value};
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Raw little-endian matrix dump; `matrix` only.
    Bin,
}

/// What a subcommand hands back for writing.
pub enum Report {
    Table(Table),
    /// A table whose JSON form is a richer document than the rows alone.
    Document { table: Table, json: Json },
    Bytes(Vec<u8>),
}

/// Non-finite reals become the strings `NaN`, `inf`, `-inf`, as in CSV.
pub fn json_value(v: &Value) -> Json {
    match v {
        Value::Int(i) => Json::from(*i),
        Value::Real(x) => Number::from_f64(*x).map_or_else(|| Json::String(v.to_string()), Json::Number),
        Value::Big(b) => u64::try_from(b).map_or_else(|_| Json::String(b.to_string()), Json::from),
        Value::Text(s) => Json::String(s.clone()),
        Value::Bool(b) => Json::Bool(*b),
    }
}

/// One object per row, keyed by column.
pub fn table_json(t: &Table) -> Json {
    Json::Array(
        t.rows
            .iter()
            .map(|row| {
                let obj: Map<String, Json> = t.columns.iter().cloned().zip(row.iter().map(json_value)).collect();
                Json::Object(obj)
            })
            .collect(),
    )
}

pub fn real(x: f64) -> Json {
    json_value(&Value::Real(x))
}
