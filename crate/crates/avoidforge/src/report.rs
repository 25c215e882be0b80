//! Flat `key=value` reports: a `#` header line, then one record per line.

use std::fmt::Write;

use avoidforge_core::Rate;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record(Vec<(String, String)>);

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn rate(self, key: &str, r: Rate) -> Self {
        self.with(key, format!("{}/{}", r.num, r.den))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn emit(&self) -> String {
        let mut s = format!("# avoidforge report {}\n", self.title);
        for r in &self.records {
            let line: Vec<String> =
                r.0.iter()
                    .map(|(k, v)| format!("{k}={}", v.replace(char::is_whitespace, "_")))
                    .collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}
