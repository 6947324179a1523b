//! Line-oriented text records for series and tables.
//!
//! ```text
//! # pdcrank series key=PD order=3 version=1
//! 1
//! 1
//! 3
//! 5
//! ```
//!
//! Tables use `table` as the kind, the statistic as the key, and one row
//! per line with space-separated entries.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::cranks::{CrankTable, Statistic};
use crate::error::{Error, Result};
use crate::qseries::TruncSeries;

/// Bumped whenever the layout of a record changes.
pub const FORMAT_VERSION: u32 = 1;

const MAGIC: &str = "# pdcrank";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordKind {
    Series,
    Table,
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordKind::Series => "series",
            RecordKind::Table => "table",
        })
    }
}

impl FromStr for RecordKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(RecordKind::Series),
            "table" => Ok(RecordKind::Table),
            _ => Err(Error::Parse(format!("unknown record kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub kind: RecordKind,
    /// Artifact name with parameters, e.g. `GFUN1(3)` or `kcrank(2)`.
    pub key: String,
    pub order: usize,
    pub version: u32,
}

impl fmt::Display for Header {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{MAGIC} {} key={} order={} version={}",
            self.kind, self.key, self.order, self.version
        )
    }
}

impl FromStr for Header {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed header `{line}`"));
        let rest = line.strip_prefix(MAGIC).ok_or_else(bad)?;
        let mut words = rest.split_whitespace();
        let kind = words.next().ok_or_else(bad)?.parse()?;
        let mut field = |name: &str| {
            words
                .next()
                .and_then(|w| w.strip_prefix(name))
                .and_then(|w| w.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(bad)
        };
        let key = field("key")?;
        let order = field("order")?.parse().map_err(|_| bad())?;
        let version = field("version")?.parse().map_err(|_| bad())?;
        if words.next().is_some() || key.is_empty() {
            return Err(bad());
        }
        Ok(Header {
            kind,
            key,
            order,
            version,
        })
    }
}

fn parse_int(word: &str, line: usize) -> Result<BigInt> {
    word.parse()
        .map_err(|_| Error::Parse(format!("line {line}: `{word}` is not an integer")))
}

fn split_header(text: &str, kind: RecordKind) -> Result<(Header, std::str::Lines<'_>)> {
    let mut lines = text.lines();
    let header: Header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty record".into()))?
        .parse()?;
    if header.version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "record version {} is not {FORMAT_VERSION}",
            header.version
        )));
    }
    if header.kind != kind {
        return Err(Error::Parse(format!(
            "expected a {kind} record, found {}",
            header.kind
        )));
    }
    Ok((header, lines))
}

pub fn write_series(key: &str, s: &TruncSeries) -> String {
    let header = Header {
        kind: RecordKind::Series,
        key: key.to_string(),
        order: s.order(),
        version: FORMAT_VERSION,
    };
    let mut out = format!("{header}\n");
    for c in s.coeffs() {
        writeln!(out, "{c}").expect("writing to a String");
    }
    out
}

pub fn parse_series(text: &str) -> Result<(Header, TruncSeries)> {
    let (header, lines) = split_header(text, RecordKind::Series)?;
    let coeffs = lines
        .enumerate()
        .map(|(i, l)| parse_int(l.trim(), i + 2))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != header.order + 1 {
        return Err(Error::Parse(format!(
            "order {} needs {} coefficients, found {}",
            header.order,
            header.order + 1,
            coeffs.len()
        )));
    }
    let s = TruncSeries::from_coeffs(header.order, coeffs);
    Ok((header, s))
}

pub fn write_table(t: &CrankTable) -> String {
    let header = Header {
        kind: RecordKind::Table,
        key: t.statistic().to_string(),
        order: t.order(),
        version: FORMAT_VERSION,
    };
    let mut out = format!("{header}\n");
    for row in t.rows() {
        let words: Vec<String> = row.iter().map(BigInt::to_string).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_table(text: &str) -> Result<CrankTable> {
    let (header, lines) = split_header(text, RecordKind::Table)?;
    let statistic: Statistic = header.key.parse()?;
    let rows = lines
        .enumerate()
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|w| parse_int(w, i + 2))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let table = CrankTable::from_rows(statistic, rows)?;
    if table.order() != header.order {
        return Err(Error::Parse(format!(
            "declared order {} but found {} rows",
            header.order,
            table.order() + 1
        )));
    }
    Ok(table)
}
