//! Named series and tables the CLI can produce.

use std::fmt;

use pdcrank_core::cranks::{length_diff_table, two_crank_difference, CrankTable, Statistic};
use pdcrank_core::moments::{gfun1_series, gfun2_series};
use pdcrank_core::products::{eta_quotient, mainf2_series, named};
use pdcrank_core::TruncSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesId {
    Pd,
    Pd2,
    Resid2,
    Resid3,
    Gfun1(u32),
    Gfun2(u32),
    Mainf2,
    M201,
}

impl SeriesId {
    pub const NAMES: &'static str = "PD, PD2, RESID2, RESID3, GFUN1 <k>, GFUN2 <k>, MAINF2, M201";

    pub fn parse(name: &str, param: Option<u32>) -> Result<Self, String> {
        let upper = name.to_ascii_uppercase();
        let needs_param = matches!(upper.as_str(), "GFUN1" | "GFUN2");
        match (needs_param, param) {
            (true, None) => return Err(format!("series {upper} needs a moment index k")),
            (false, Some(p)) => return Err(format!("series {upper} takes no parameter (got {p})")),
            _ => {}
        }
        Ok(match upper.as_str() {
            "PD" => SeriesId::Pd,
            "PD2" => SeriesId::Pd2,
            "RESID2" => SeriesId::Resid2,
            "RESID3" => SeriesId::Resid3,
            "GFUN1" => SeriesId::Gfun1(param.unwrap_or_default()),
            "GFUN2" => SeriesId::Gfun2(param.unwrap_or_default()),
            "MAINF2" => SeriesId::Mainf2,
            "M201" => SeriesId::M201,
            _ => {
                return Err(format!(
                    "unknown series `{name}`; expected one of {}",
                    Self::NAMES
                ))
            }
        })
    }

    pub fn compute(self, order: usize) -> TruncSeries {
        let eta = |spec| eta_quotient(&spec, order).expect("named specs are valid");
        match self {
            SeriesId::Pd => eta(named::pd()),
            SeriesId::Pd2 => eta(named::pd2()),
            SeriesId::Resid2 => eta(named::pd_residue2()),
            SeriesId::Resid3 => eta(named::pd_residue3()),
            SeriesId::Gfun1(k) => gfun1_series(k, order),
            SeriesId::Gfun2(k) => gfun2_series(k, order),
            SeriesId::Mainf2 => mainf2_series(order),
            SeriesId::M201 => two_crank_difference(order),
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesId::Pd => f.write_str("PD"),
            SeriesId::Pd2 => f.write_str("PD2"),
            SeriesId::Resid2 => f.write_str("RESID2"),
            SeriesId::Resid3 => f.write_str("RESID3"),
            SeriesId::Gfun1(k) => write!(f, "GFUN1({k})"),
            SeriesId::Gfun2(k) => write!(f, "GFUN2({k})"),
            SeriesId::Mainf2 => f.write_str("MAINF2"),
            SeriesId::M201 => f.write_str("M201"),
        }
    }
}

pub fn parse_statistic(name: &str, k: Option<u32>) -> Result<Statistic, String> {
    match (name.to_ascii_lowercase().as_str(), k) {
        ("crank", None) => Ok(Statistic::Crank),
        ("pdcrank", None) => Ok(Statistic::PdCrank),
        ("kcrank", Some(k)) if k >= 1 => Ok(Statistic::KCrank(k)),
        ("kcrank", _) => Err("kcrank needs a parameter k >= 1".into()),
        ("crank" | "pdcrank", Some(k)) => Err(format!("{name} takes no parameter (got {k})")),
        _ => Err(format!(
            "unknown statistic `{name}`; expected crank, kcrank <k> or pdcrank"
        )),
    }
}

pub fn compute_table(statistic: Statistic, order: usize) -> CrankTable {
    CrankTable::build(statistic, &length_diff_table(order))
}
