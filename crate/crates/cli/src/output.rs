use serde_json::Value;

use crate::args::Format;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table { title: None, headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn titled(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Result of one subcommand: the JSON document, its tabular views, and
/// whether a verification inside it failed.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub tables: Vec<Table>,
    pub failed: bool,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Markdown => report.tables.iter().map(markdown).collect::<Vec<_>>().join("\n"),
        Format::Csv => report.tables.iter().map(csv_table).collect::<Vec<_>>().join("\n"),
    }
}

fn markdown(t: &Table) -> String {
    let cell = |s: &String| s.replace('|', "\\|");
    let line = |cells: &[String]| format!("| {} |\n", cells.iter().map(cell).collect::<Vec<_>>().join(" | "));
    let mut out = String::new();
    if let Some(title) = &t.title {
        out.push_str(&format!("### {title}\n\n"));
    }
    out.push_str(&line(&t.headers));
    out.push_str(&format!("|{}\n", "---|".repeat(t.headers.len())));
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}

fn csv_table(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
