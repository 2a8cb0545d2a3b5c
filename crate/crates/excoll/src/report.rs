//! Output envelopes. JSON output always carries `"schema": 1`.

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: u32,
    pub command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variety: Option<&'a str>,
    pub result: T,
}

pub fn json<T: Serialize>(command: &str, variety: Option<&str>, result: T) -> String {
    let env = Envelope {
        schema: SCHEMA,
        command,
        variety,
        result,
    };
    serde_json::to_string_pretty(&env).expect("report values serialize")
}

#[derive(Serialize)]
pub struct ErrorRecord<'a> {
    pub schema: u32,
    pub error: &'a str,
    pub message: String,
}

/// Machine-readable error line for stderr.
pub fn error_record(kind: &str, message: impl ToString) -> String {
    serde_json::to_string(&ErrorRecord {
        schema: SCHEMA,
        error: kind,
        message: message.to_string(),
    })
    .expect("serializes")
}

/// Rows as CSV with a header line.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Fixed-width text table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{}{}", c, " ".repeat(w - c.chars().count())))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = fmt_row(header.to_vec());
    out.push('\n');
    for r in rows {
        out.push_str(&fmt_row(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}
