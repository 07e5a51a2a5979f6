use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// Writes records to stdout in the chosen format. JSON is one object per
/// line; CSV repeats the header whenever the record shape changes.
pub struct Emitter {
    format: Format,
    header: Vec<String>,
}

impl Emitter {
    pub fn new(format: Format) -> Self {
        Emitter {
            format,
            header: Vec::new(),
        }
    }

    pub fn emit(&mut self, record: &impl Serialize) -> anyhow::Result<()> {
        let value = serde_json::to_value(record)?;
        let Value::Object(map) = value else {
            anyhow::bail!("report is not an object");
        };
        let mut out = std::io::stdout().lock();
        match self.format {
            Format::Json => writeln!(out, "{}", Value::Object(map))?,
            Format::Csv => {
                let keys: Vec<String> = map.keys().cloned().collect();
                if keys != self.header {
                    writeln!(out, "{}", keys.join(","))?;
                    self.header = keys;
                }
                let row: Vec<String> = map.values().map(csv_cell).collect();
                writeln!(out, "{}", row.join(","))?;
            }
            Format::Human => {
                let width = map.keys().map(String::len).max().unwrap_or(0);
                for (k, v) in &map {
                    writeln!(out, "{k:<width$}  {}", plain(v))?;
                }
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    let s = plain(v);
    if s.contains([',', '"', ';', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(csv_cell(&Value::from("a;b")), "\"a;b\"");
        assert_eq!(csv_cell(&Value::from("say \"x\"")), "\"say \"\"x\"\"\"");
        assert_eq!(csv_cell(&Value::from(3)), "3");
    }
}
