//! Reports rendered either as aligned text or as JSON from the same values.

use serde_json::{Map, Value};

pub struct Report {
    command: String,
    params: Vec<(String, Value)>,
    results: Vec<(String, Value)>,
    provenance: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            params: Vec::new(),
            results: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.push((key.into(), value.into()));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.push((key.into(), value.into()));
        self
    }

    pub fn cite(&mut self, source: impl Into<String>) -> &mut Self {
        self.provenance.push(source.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let block = |items: &[(String, Value)]| {
            Value::Object(items.iter().cloned().collect::<Map<String, Value>>())
        };
        serde_json::json!({
            "command": self.command,
            "parameters": block(&self.params),
            "result": block(&self.results),
            "provenance": self.provenance,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (title, items) in [("parameters", &self.params), ("result", &self.results)] {
            if items.is_empty() {
                continue;
            }
            out.push_str(title);
            out.push_str(":\n");
            let width = items.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (key, value) in items {
                render(&mut out, key, width, value);
            }
        }
        if !self.provenance.is_empty() {
            out.push_str("provenance:\n");
            for p in &self.provenance {
                out.push_str(&format!("  - {p}\n"));
            }
        }
        out
    }

    pub fn print(&self, json: bool) {
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&self.to_json()).expect("serializable")
            );
        } else {
            print!("{}", self.to_text());
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render(out: &mut String, key: &str, width: usize, value: &Value) {
    match value {
        Value::Array(rows) if rows.iter().all(Value::is_array) && !rows.is_empty() => {
            out.push_str(&format!("  {key}:\n"));
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.as_array().unwrap().iter().map(scalar).collect())
                .collect();
            let widths = column_widths(&cells);
            for row in cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                out.push_str(&format!("    {}\n", line.join(" ")));
            }
        }
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            out.push_str(&format!("  {key}:\n"));
            let headers: Vec<String> = rows[0].as_object().unwrap().keys().cloned().collect();
            let mut cells = vec![headers.clone()];
            for r in rows {
                let obj = r.as_object().unwrap();
                cells.push(
                    headers
                        .iter()
                        .map(|h| obj.get(h).map(scalar).unwrap_or_default())
                        .collect(),
                );
            }
            let widths = column_widths(&cells);
            for row in cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                out.push_str(&format!("    {}\n", line.join("  ").trim_end()));
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("  {key:<width$} = [{}]\n", joined.join(", ")));
        }
        other => out.push_str(&format!("  {key:<width$} = {}\n", scalar(other))),
    }
}

fn column_widths(cells: &[Vec<String>]) -> Vec<usize> {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    (0..cols)
        .map(|c| {
            cells
                .iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_carry_the_same_values() {
        let mut r = Report::new("bound --q 2 --n 2 --k 2");
        r.param("q", 2)
            .result("ceiling", "6")
            .result("rows", serde_json::json!([[1, -3], [10, 2]]));
        let json = r.to_json();
        assert_eq!(json["result"]["ceiling"], "6");
        let text = r.to_text();
        assert!(text.contains("ceiling = 6"));
        assert!(text.contains(" 1 -3"));
        assert!(text.contains("10  2"));
    }
}
