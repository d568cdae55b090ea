use std::fmt::Write;

use hopf_cyclic::linalg::SparseVec;
use hopf_cyclic::report::ValidationReport;
use hopf_cyclic::Field;
use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Table { title: title.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

/// Everything a subcommand reports. `failed` marks failures that are not
/// part of a validation report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Output {
    pub command: String,
    pub input: String,
    pub status: &'static str,
    pub tables: Vec<Table>,
    pub reports: Vec<ValidationReport>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub failed: bool,
}

impl Output {
    pub fn new(command: &str, input: &str) -> Self {
        Output { command: command.into(), input: input.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        !self.failed && self.reports.iter().all(ValidationReport::passed)
    }

    pub fn finish(mut self) -> Self {
        self.status = if self.ok() { "pass" } else { "fail" };
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}: {}", self.command, self.input, self.status).unwrap();
        for t in &self.tables {
            writeln!(out, "\n{}", t.title).unwrap();
            let cols = t.header.len();
            let mut width = vec![0; cols];
            for r in std::iter::once(&t.header).chain(&t.rows) {
                for (w, c) in width.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            for (k, r) in std::iter::once(&t.header).chain(&t.rows).enumerate() {
                let line: Vec<String> = r.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
                writeln!(out, "  {}", line.join("  ").trim_end()).unwrap();
                if k == 0 {
                    writeln!(out, "  {}", width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ")).unwrap();
                }
            }
        }
        for r in &self.reports {
            writeln!(out).unwrap();
            write!(out, "{r}").unwrap();
        }
        for n in &self.notes {
            writeln!(out, "\nnote: {n}").unwrap();
        }
        out
    }
}

/// `c₁·label₁ + c₂·label₂ …`, or `0`.
pub fn render_vec<F: Field>(v: &SparseVec<F>, labels: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| format!("{}·{}", c.to_exact_string(), labels.get(i).map(String::as_str).unwrap_or("?")))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
