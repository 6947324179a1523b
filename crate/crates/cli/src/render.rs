//! Text, CSV and JSON renderings. Integers in structured output are
//! decimal strings.

use clap::ValueEnum;
use pdcrank_core::cranks::CrankTable;
use pdcrank_core::verify::VerificationReport;
use pdcrank_core::TruncSeries;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn csv_lines(records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}

fn decimal<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn series(id: &str, s: &TruncSeries, format: Format) -> String {
    match format {
        Format::Text => {
            let nw = s.order().to_string().len();
            let cw = s
                .coeffs()
                .iter()
                .map(|c| c.to_string().len())
                .max()
                .unwrap_or(1);
            s.coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| format!("{n:>nw$}  {c:>cw$}\n"))
                .collect()
        }
        Format::Csv => csv_lines([decimal(s.coeffs())]),
        Format::Json => {
            let v = json!({ "id": id, "order": s.order(), "coeffs": decimal(s.coeffs()) });
            format!("{v}\n")
        }
    }
}

pub fn table(t: &CrankTable, format: Format) -> String {
    match format {
        Format::Text => {
            let nw = t.order().to_string().len();
            t.rows()
                .iter()
                .enumerate()
                .map(|(n, row)| format!("{n:>nw$} | {}\n", decimal(row).join(" ")))
                .collect()
        }
        Format::Csv => csv_lines(t.rows().iter().map(|r| decimal(r))),
        Format::Json => {
            let v = serde_json::to_string(t).expect("tables serialize");
            format!("{v}\n")
        }
    }
}

pub fn reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&format!("{r}\n"));
                for d in &r.details {
                    out.push_str(&format!("    {d}\n"));
                }
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            out.push_str(&format!("{passed} of {} checks passed\n", reports.len()));
            out
        }
        Format::Csv => {
            let header = ["id", "range", "order", "status", "at", "values", "millis"];
            let rows = reports.iter().map(|r| {
                let rec = r.to_record();
                let (at, values) = rec
                    .counterexample
                    .map(|c| (c.at, c.values))
                    .unwrap_or_default();
                vec![
                    rec.id,
                    rec.range,
                    rec.order.to_string(),
                    rec.status.to_string(),
                    at,
                    values,
                    rec.millis.to_string(),
                ]
            });
            csv_lines(std::iter::once(header.map(String::from).to_vec()).chain(rows))
        }
        Format::Json => json_lines(reports),
    }
}

/// One JSON record per line.
pub fn json_lines(reports: &[VerificationReport]) -> String {
    reports
        .iter()
        .map(|r| serde_json::to_string(&r.to_record()).expect("records serialize") + "\n")
        .collect()
}
