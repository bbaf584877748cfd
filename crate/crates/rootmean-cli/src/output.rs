use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Csv,
    Json,
}

/// Command result in all three renderings plus the verdict.
pub struct Doc {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub pretty: String,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Failed,
    Numeric,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Numeric => 3,
        }
    }
}

impl Doc {
    pub fn new(json: Value, header: &[&str]) -> Self {
        Self {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            pretty: String::new(),
            status: Status::Ok,
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.pretty.push_str(s.as_ref());
        self.pretty.push('\n');
    }

    pub fn worsen(&mut self, s: Status) {
        self.status = self.status.max(s);
    }

    /// Renders with the seed stamped in: a `seed` field, a `seed` column, or a header line.
    pub fn render(&self, format: Format, command: &str, seed: u64) -> anyhow::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("command".into(), command.into());
                obj.insert("seed".into(), seed.into());
                match &self.json {
                    Value::Object(m) => obj.extend(m.clone()),
                    other => {
                        obj.insert("result".into(), other.clone());
                    }
                }
                let mut out = serde_json::to_vec_pretty(&Value::Object(obj))?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut header = self.header.clone();
                header.push("seed".into());
                w.write_record(&header)?;
                for r in &self.rows {
                    let mut r = r.clone();
                    r.push(seed.to_string());
                    w.write_record(&r)?;
                }
                Ok(w.into_inner()?)
            }
            Format::Pretty => Ok(format!("# rootmean {command}  seed={seed}\n{}", self.pretty).into_bytes()),
        }
    }
}

pub fn emit(bytes: &[u8], path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let fmt = |cells: Vec<&str>| -> String {
        let last = cells.len() - 1;
        let mut s = String::new();
        for (i, c) in cells.into_iter().enumerate() {
            s.push_str(c);
            if i < last {
                s.push_str(&" ".repeat(widths[i] - c.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = fmt(header.to_vec());
    for r in rows {
        out.push_str(&fmt(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
