//! Row schema for scan output and its table, csv and json-lines renderings.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use wilsonx_core::{Classification, FormKind, Residue, ScanRecord};

use crate::config::OutputFormat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Form {
    #[serde(rename = "(c+1)p")]
    CPlusOneTimesPrime,
    #[serde(rename = "other")]
    Other,
}

/// One output row. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub c: u64,
    pub s_mod_n: u64,
    pub criterion_mod_n: u64,
    pub form: Form,
    pub p: Option<u64>,
    pub applicable: bool,
    pub passes: bool,
    pub agrees: Option<bool>,
}

impl From<&ScanRecord> for Row {
    fn from(record: &ScanRecord) -> Self {
        let (form, p) = match record.classification.kind {
            FormKind::CPlusOneTimesPrime { p } => (Form::CPlusOneTimesPrime, Some(p)),
            FormKind::Other => (Form::Other, None),
        };
        Row {
            n: record.n,
            c: record.c,
            s_mod_n: record.s_residue.value(),
            criterion_mod_n: record.criterion_residue.value(),
            form,
            p,
            applicable: record.classification.applicable,
            passes: record.criterion_passes,
            agrees: record.agrees_with_theory,
        }
    }
}

impl Row {
    pub fn to_record(&self) -> Result<ScanRecord, String> {
        let residue = |v: u64| {
            if v >= self.n {
                return Err(format!("residue {v} out of range for n = {}", self.n));
            }
            Residue::new(v, self.n).map_err(|e| e.to_string())
        };
        let kind = match (self.form, self.p) {
            (Form::CPlusOneTimesPrime, Some(p)) => FormKind::CPlusOneTimesPrime { p },
            (Form::Other, None) => FormKind::Other,
            (form, p) => return Err(format!("form {form:?} inconsistent with p = {p:?}")),
        };
        Ok(ScanRecord {
            n: self.n,
            c: self.c,
            s_residue: residue(self.s_mod_n)?,
            criterion_residue: residue(self.criterion_mod_n)?,
            classification: Classification {
                kind,
                applicable: self.applicable,
            },
            criterion_passes: self.passes,
            agrees_with_theory: self.agrees,
        })
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn form_label(row: &Row) -> String {
    match row.p {
        Some(p) => format!("(c+1)*{p}"),
        None => "other".into(),
    }
}

const TABLE_HEADER: &str = "         n    c              S mod n      criterion mod n  form             applicable  passes  agrees";

fn table_line(row: &Row) -> String {
    format!(
        "{:>10} {:>4} {:>20} {:>20}  {:<16} {:<11} {:<7} {}",
        row.n,
        row.c,
        row.s_mod_n,
        row.criterion_mod_n,
        form_label(row),
        yes_no(row.applicable),
        yes_no(row.passes),
        row.agrees.map_or("-", yes_no),
    )
}

/// Writes rows in the chosen format, header first where the format has one.
pub fn write_rows<W: Write>(out: W, format: OutputFormat, rows: &[Row]) -> io::Result<()> {
    match format {
        OutputFormat::Table => {
            let mut out = out;
            writeln!(out, "{TABLE_HEADER}")?;
            for row in rows {
                writeln!(out, "{}", table_line(row))?;
            }
            out.flush()
        }
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            if rows.is_empty() {
                writer.write_record(CSV_COLUMNS)?;
            }
            for row in rows {
                writer.serialize(row)?;
            }
            writer.flush()
        }
        OutputFormat::JsonLines => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, row)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

const CSV_COLUMNS: [&str; 9] = [
    "n",
    "c",
    "s_mod_n",
    "criterion_mod_n",
    "form",
    "p",
    "applicable",
    "passes",
    "agrees",
];

pub fn parse_csv(text: &str) -> Result<Vec<Row>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

pub fn parse_json_lines(text: &str) -> Result<Vec<Row>, serde_json::Error> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

/// Multi-line description of a single record for `check`.
pub fn describe(record: &ScanRecord) -> String {
    let row = Row::from(record);
    let threshold = (2 * record.c as u128 + 3).pow(2);
    let form = match row.p {
        Some(p) => format!("(c+1)p with p = {p}  [{} = {} * {p}]", row.n, row.c + 1),
        None => "other".into(),
    };
    let applicable = if row.applicable {
        format!("yes (n >= (2c+3)^2 = {threshold})")
    } else {
        format!("no (n < (2c+3)^2 = {threshold}; no claim)")
    };
    let agrees = match row.agrees {
        Some(true) => "yes",
        Some(false) => "NO (theory violation)",
        None => "-",
    };
    format!(
        "n = {}, c = {}, subset size k = {}\n\
         S(n, c) mod n      = {}\n\
         criterion mod n    = {}\n\
         form               = {form}\n\
         applicable         = {applicable}\n\
         criterion          = {}\n\
         agrees with theory = {agrees}\n",
        row.n,
        row.c,
        row.n - 1 - row.c,
        row.s_mod_n,
        row.criterion_mod_n,
        if row.passes { "passes" } else { "fails" },
    )
}
