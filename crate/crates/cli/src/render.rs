use std::fmt::Display;

use serde_json::{json, Map, Value};

use crate::Format;

pub const SCHEMA: &str = "symlag/1";

/// A finished command: JSON and table renderings plus the exit code.
pub struct Report {
    pub json: Value,
    pub table: String,
    pub code: u8,
}

impl Report {
    /// `fields` must be an object; `schema` and `command` are added to it.
    pub fn new(command: &str, fields: Value, table: String, code: u8) -> Report {
        let mut obj = match fields {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert("command".into(), json!(command));
        Report {
            json: Value::Object(obj),
            table,
            code,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone(),
        }
    }
}

/// An integer as a JSON number of any size.
pub fn int<T: Display>(x: &T) -> Value {
    Value::Number(x.to_string().parse().expect("integer literal"))
}

pub fn ints<'a, T: Display + 'a>(xs: impl IntoIterator<Item = &'a T>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

pub fn strings<T: Display>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix<T: Display>(rows: &[Vec<T>]) -> Value {
    Value::Array(rows.iter().map(|r| ints(r)).collect())
}

pub fn join<T: Display>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Right-aligned text table with a header row.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0; cols];
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |row: &[String]| {
        let cells: Vec<String> = row.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("{}\n", cells.join("  ").trim_end())
    };
    let mut out = line(header);
    out.push_str(&format!(
        "{}\n",
        "-".repeat(width.iter().sum::<usize>() + 2 * cols.saturating_sub(1))
    ));
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_stay_numbers() {
        let v = int(&"123456789012345678901234567890");
        assert_eq!(v.to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a".into(), "bb".into()], &[vec!["10".into(), "2".into()]]);
        assert_eq!(t, " a  bb\n------\n10   2\n");
    }

    #[test]
    fn report_carries_schema() {
        let r = Report::new("types", json!({"n": 1}), String::new(), 0);
        assert_eq!(r.json["schema"], SCHEMA);
        assert_eq!(r.json["command"], "types");
        assert!(r.render(Format::Json).ends_with("}\n"));
    }
}
