//! Exact tables of crank-type statistics.
//!
//! Every bivariate generating function handled here factors as a z-free
//! prefactor times `1/((zq;q)_inf (z^{-1}q;q)_inf)`. The second factor is the
//! [`LengthDiffTable`]; each [`CrankTable`] is its convolution in `n` with the
//! coefficients of the prefactor.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{vector_pairs, Partition};
use crate::error::{Error, Result};
use crate::products::{eta_quotient, named, EtaQuotientSpec};
use crate::qseries::TruncSeries;

/// Triangular rows: row `n` holds entries for `m = -n..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Rows(Vec<Vec<BigInt>>);

impl Rows {
    fn zeros(order: usize) -> Self {
        Rows(
            (0..=order)
                .map(|n| vec![BigInt::zero(); 2 * n + 1])
                .collect(),
        )
    }

    fn order(&self) -> usize {
        self.0.len() - 1
    }

    fn get(&self, m: i64, n: usize) -> &BigInt {
        let row = &self.0[n];
        if m.unsigned_abs() as usize > n {
            &BigInt::ZERO
        } else {
            &row[(m + n as i64) as usize]
        }
    }

    fn validate(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Parse("table has no rows".into()));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != 2 * n + 1 {
                return Err(Error::Parse(format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    2 * n + 1
                )));
            }
        }
        Ok(Rows(rows))
    }
}

/// `D(m, n)`: ordered pairs of partitions `(α1, α2)` with `|α1| + |α2| = n`
/// and `l(α1) - l(α2) = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthDiffTable {
    rows: Rows,
}

impl LengthDiffTable {
    pub fn order(&self) -> usize {
        self.rows.order()
    }

    pub fn get(&self, m: i64, n: usize) -> &BigInt {
        self.rows.get(m, n)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows.0[n]
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.row(n).iter().sum()
    }
}

/// Builds `D` by dividing `1` by `(1 - z q^i)(1 - z^{-1} q^i)` for
/// `i = 1..=order`, one geometric factor at a time.
pub fn length_diff_table(order: usize) -> LengthDiffTable {
    // full-width rows while building: column m + order
    let width = 2 * order + 1;
    let mut grid = vec![vec![BigInt::zero(); width]; order + 1];
    grid[0][order] = BigInt::from(1);
    for i in 1..=order {
        for dz in [1i64, -1] {
            for n in i..=order {
                let src = n - i;
                let (lo, hi) = grid.split_at_mut(n);
                let (from, to) = (&lo[src], &mut hi[0]);
                for m in -(src as i64)..=(src as i64) {
                    let c = &from[(m + order as i64) as usize];
                    if !c.is_zero() {
                        to[(m + dz + order as i64) as usize] += c;
                    }
                }
            }
        }
    }
    let rows = grid
        .into_iter()
        .enumerate()
        .map(|(n, row)| row[order - n..=order + n].to_vec())
        .collect();
    LengthDiffTable { rows: Rows(rows) }
}

/// `A(n, l)`: partitions of `n` with exactly `l` parts, by
/// `A(n, l) = A(n-1, l-1) + A(n-l, l)`. Row `n` has entries `l = 0..=n`.
pub fn parts_count_table(order: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(order + 1);
    a.push(vec![BigInt::from(1)]);
    for n in 1..=order {
        let mut row = vec![BigInt::zero(); n + 1];
        for (l, slot) in row.iter_mut().enumerate().skip(1) {
            let mut v = a[n - 1].get(l - 1).cloned().unwrap_or_default();
            if l <= n - l {
                v += &a[n - l][l];
            }
            *slot = v;
        }
        a.push(row);
    }
    a
}

/// `D(m, n) = Σ A(n1, l1) A(n2, l2)` over `n1 + n2 = n`, `l1 - l2 = m`.
/// Quartic in the order; used as the cross-check route.
pub fn length_diff_table_from_parts(order: usize) -> LengthDiffTable {
    let a = parts_count_table(order);
    let mut rows = Rows::zeros(order);
    for n in 0..=order {
        for n1 in 0..=n {
            let n2 = n - n1;
            for (l1, x) in a[n1].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (l2, y) in a[n2].iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let m = l1 as i64 - l2 as i64;
                    rows.0[n][(m + n as i64) as usize] += x * y;
                }
            }
        }
    }
    LengthDiffTable { rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Andrews–Garvan crank, prefactor `(q;q)_inf`.
    Crank,
    /// k-crank of k-colored partitions, prefactor `(q;q)_inf^{2-k}`.
    KCrank(u32),
    /// pd-crank of bipartitions with designated summands, prefactor
    /// `f6^2 / (f2^2 f3^2)`.
    PdCrank,
}

impl Statistic {
    pub fn prefactor_spec(self) -> EtaQuotientSpec {
        match self {
            Statistic::Crank => EtaQuotientSpec::new().f(1, 1),
            Statistic::KCrank(k) => EtaQuotientSpec::new().f(1, 2 - k as i32),
            Statistic::PdCrank => named::pd_crank_prefactor(),
        }
    }

    pub fn prefactor(self, order: usize) -> TruncSeries {
        eta_quotient(&self.prefactor_spec(), order).expect("prefactor specs are valid")
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Crank => f.write_str("crank"),
            Statistic::KCrank(k) => write!(f, "kcrank({k})"),
            Statistic::PdCrank => f.write_str("pdcrank"),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "crank" => Ok(Statistic::Crank),
            "pdcrank" => Ok(Statistic::PdCrank),
            _ => s
                .strip_prefix("kcrank(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|&k| k >= 1)
                .map(Statistic::KCrank)
                .ok_or_else(|| Error::Parse(format!("unknown statistic `{s}`"))),
        }
    }
}

/// Counts `T(m, n)` of a crank-type statistic for `n <= order`, `|m| <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct CrankTable {
    statistic: Statistic,
    rows: Rows,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRepr {
    pub statistic: String,
    pub order: usize,
    pub rows: Vec<Vec<String>>,
}

impl From<CrankTable> for TableRepr {
    fn from(t: CrankTable) -> Self {
        TableRepr {
            statistic: t.statistic.to_string(),
            order: t.order(),
            rows: t
                .rows
                .0
                .iter()
                .map(|r| r.iter().map(BigInt::to_string).collect())
                .collect(),
        }
    }
}

impl TryFrom<TableRepr> for CrankTable {
    type Error = Error;

    fn try_from(r: TableRepr) -> Result<Self> {
        let statistic = r.statistic.parse()?;
        let rows = r
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        c.parse::<BigInt>()
                            .map_err(|e| Error::Parse(format!("entry `{c}`: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let table = CrankTable::from_rows(statistic, rows)?;
        if table.order() != r.order {
            return Err(Error::Parse(format!(
                "declared order {} but {} rows",
                r.order,
                table.order() + 1
            )));
        }
        Ok(table)
    }
}

impl CrankTable {
    /// Convolves `D` with the statistic's prefactor.
    pub fn build(statistic: Statistic, d: &LengthDiffTable) -> Self {
        let order = d.order();
        let pre = statistic.prefactor(order);
        let mut rows = Rows::zeros(order);
        for n in 0..=order {
            let row = &mut rows.0[n];
            for (j, e) in pre.coeffs()[..=n].iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let src = n - j;
                for (i, c) in d.row(src).iter().enumerate() {
                    if !c.is_zero() {
                        // m = i - src, stored at m + n
                        row[i + j] += e * c;
                    }
                }
            }
        }
        CrankTable { statistic, rows }
    }

    /// Wraps explicit rows; row `n` must have `2n + 1` entries.
    pub fn from_rows(statistic: Statistic, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        Ok(CrankTable {
            statistic,
            rows: Rows::validate(rows)?,
        })
    }

    pub fn statistic(&self) -> Statistic {
        self.statistic
    }

    pub fn order(&self) -> usize {
        self.rows.order()
    }

    /// Entry at `(m, n)`; zero when `|m| > n`. Panics when `n > order`.
    pub fn get(&self, m: i64, n: usize) -> &BigInt {
        self.rows.get(m, n)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows.0[n]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows.0
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.row(n).iter().sum()
    }

    /// Row sums as a series in `q`.
    pub fn row_sums(&self) -> TruncSeries {
        TruncSeries::from_coeffs(self.order(), (0..=self.order()).map(|n| self.row_sum(n)))
    }

    /// `(m, n)` pairs, `n <= order`, `|m| <= n`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, usize, &BigInt)> + '_ {
        self.rows.0.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .map(move |(i, c)| (i as i64 - n as i64, n, c))
        })
    }
}

pub fn crank_table(order: usize) -> CrankTable {
    CrankTable::build(Statistic::Crank, &length_diff_table(order))
}

pub fn k_crank_table(k: u32, order: usize) -> CrankTable {
    assert!(k >= 1, "k-crank needs k >= 1");
    CrankTable::build(Statistic::KCrank(k), &length_diff_table(order))
}

pub fn pd_crank_table(order: usize) -> CrankTable {
    CrankTable::build(Statistic::PdCrank, &length_diff_table(order))
}

/// `Σ_n (T(0, n) - T(1, n)) q^n`.
pub fn zero_one_difference(table: &CrankTable) -> TruncSeries {
    let order = table.order();
    TruncSeries::from_coeffs(
        order,
        (0..=order).map(|n| table.get(0, n) - table.get(1, n)),
    )
}

/// `Σ_n (M_2(0, n) - M_2(1, n)) q^n` for the 2-crank.
pub fn two_crank_difference(order: usize) -> TruncSeries {
    zero_one_difference(&k_crank_table(2, order))
}

/// Largest part if there are no ones, else `μ(λ) - n_1(λ)`, where `μ` counts
/// parts larger than `n_1`. Undefined by the combinatorial rule for weight
/// at most 1.
pub fn ordinary_crank(p: &Partition) -> Result<i64> {
    let weight = p.weight();
    if weight <= 1 {
        return Err(Error::CrankConvention { weight });
    }
    let ones = p.multiplicity(1);
    if ones == 0 {
        return Ok(p.largest().unwrap_or(0) as i64);
    }
    let mu = p.parts().iter().filter(|&&x| x as usize > ones).count();
    Ok(mu as i64 - ones as i64)
}

/// pd-crank table by brute force: every quadruple `(α1, β1, α2, β2)` with
/// `(α1, β1)` and `(α2, β2)` vector pairs of total weight `n`, counted at
/// `l(α1) - l(α2)`. Exponential in `order`; keep it below ~20.
pub fn pd_crank_oracle(order: usize) -> CrankTable {
    let lengths: Vec<Vec<usize>> = (0..=order as u32)
        .map(|w| vector_pairs(w).map(|vp| vp.alpha.len()).collect())
        .collect();
    let mut counts: Vec<Vec<u64>> = (0..=order).map(|n| vec![0u64; 2 * n + 1]).collect();
    for n in 0..=order {
        for a in 0..=n {
            for &l1 in &lengths[a] {
                for &l2 in &lengths[n - a] {
                    let m = l1 as i64 - l2 as i64;
                    counts[n][(m + n as i64) as usize] += 1;
                }
            }
        }
    }
    let rows = counts
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    CrankTable {
        statistic: Statistic::PdCrank,
        rows: Rows(rows),
    }
}

/// `Σ_{m ≡ k (mod t)} T(m, n)`.
pub fn mod_class(table: &CrankTable, k: u32, t: u32, n: usize) -> Result<BigInt> {
    if t == 0 || k >= t {
        return Err(Error::InvalidResidue { k, t });
    }
    if n > table.order() {
        return Err(Error::OutOfRange {
            n,
            order: table.order(),
        });
    }
    Ok(table
        .row(n)
        .iter()
        .enumerate()
        .filter(|(i, _)| (*i as i64 - n as i64).mod_floor(&(t as i64)) == k as i64)
        .map(|(_, c)| c)
        .sum())
}

/// Series with coefficients `T(0, t, n) - T(1, t, n)` for `t ∈ {2, 3}`.
pub fn residue_difference_series(table: &CrankTable, t: u32) -> Result<TruncSeries> {
    if !matches!(t, 2 | 3) {
        return Err(Error::UnsupportedModulus(t));
    }
    let coeffs = (0..=table.order())
        .map(|n| Ok(mod_class(table, 0, t, n)? - mod_class(table, 1, t, n)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncSeries::from_coeffs(table.order(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{count_pd2, partitions};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn length_diff_examples() {
        let d = length_diff_table(6);
        assert_eq!(d.row(0), ints(&[1]).as_slice());
        assert_eq!(d.row(2), ints(&[1, 1, 1, 1, 1]).as_slice());
        assert_eq!(d.row_sum(4), BigInt::from(20));
        assert_eq!(d.get(7, 2), &BigInt::ZERO);
    }

    #[test]
    fn length_diff_routes_agree() {
        assert_eq!(length_diff_table(30), length_diff_table_from_parts(30));
    }

    #[test]
    fn length_diff_against_pair_enumeration() {
        let order = 9u32;
        let d = length_diff_table(order as usize);
        for n in 0..=order {
            let mut counts = std::collections::BTreeMap::<i64, i64>::new();
            for a in 0..=n {
                for p1 in partitions(a) {
                    for p2 in partitions(n - a) {
                        *counts.entry(p1.len() as i64 - p2.len() as i64).or_default() += 1;
                    }
                }
            }
            for m in -(n as i64)..=n as i64 {
                let want = counts.get(&m).copied().unwrap_or(0);
                assert_eq!(d.get(m, n as usize), &BigInt::from(want), "D({m},{n})");
            }
        }
    }

    #[test]
    fn parts_count_recurrence() {
        let a = parts_count_table(8);
        // partitions of 8 into exactly 3 parts: 6+1+1, 5+2+1, 4+3+1, 4+2+2, 3+3+2
        assert_eq!(a[8][3], BigInt::from(5));
        assert_eq!(a[8].iter().sum::<BigInt>(), BigInt::from(22));
    }

    #[test]
    fn crank_conventions_at_one() {
        let m = crank_table(4);
        assert_eq!(m.row(1), ints(&[1, -1, 1]).as_slice());
        assert_eq!(m.get(0, 1), &BigInt::from(-1));
        assert_eq!(m.row(4), ints(&[1, 0, 1, 0, 1, 0, 1, 0, 1]).as_slice());
        assert_eq!(m.row(0), ints(&[1]).as_slice());
    }

    #[test]
    fn ordinary_crank_examples() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(ordinary_crank(&p(&[4])).unwrap(), 4);
        assert_eq!(ordinary_crank(&p(&[2, 1, 1])).unwrap(), -2);
        assert_eq!(ordinary_crank(&p(&[3, 1])).unwrap(), 0);
        assert!(matches!(
            ordinary_crank(&p(&[1])),
            Err(Error::CrankConvention { weight: 1 })
        ));
        assert!(ordinary_crank(&Partition::empty()).is_err());
    }

    #[test]
    fn crank_table_matches_combinatorial_crank() {
        let order = 16u32;
        let m = crank_table(order as usize);
        for n in 2..=order {
            let mut row = vec![0i64; 2 * n as usize + 1];
            for p in partitions(n) {
                let c = ordinary_crank(&p).unwrap();
                row[(c + n as i64) as usize] += 1;
            }
            assert_eq!(m.row(n as usize), ints(&row).as_slice(), "n = {n}");
        }
    }

    #[test]
    fn k_crank_examples() {
        let d = length_diff_table(12);
        let k2 = CrankTable::build(Statistic::KCrank(2), &d);
        assert_eq!(k2.rows(), &d.rows.0[..]);
        let diff: Vec<BigInt> = (0..=5).map(|n| k2.get(0, n) - k2.get(1, n)).collect();
        assert_eq!(diff, ints(&[1, -1, 0, 0, 1, 0]));
        let k1 = CrankTable::build(Statistic::KCrank(1), &d);
        assert_eq!(k1.rows(), CrankTable::build(Statistic::Crank, &d).rows());
    }

    #[test]
    fn pd_crank_small_rows() {
        let t = pd_crank_table(4);
        assert_eq!(t.row(0), ints(&[1]).as_slice());
        assert_eq!(t.row(1), ints(&[1, 0, 1]).as_slice());
        assert_eq!(t.row(2), ints(&[1, 1, 3, 1, 1]).as_slice());
        assert_eq!(t.row_sum(4), BigInt::from(39));
    }

    #[test]
    fn pd_crank_oracle_agrees() {
        let oracle = pd_crank_oracle(10);
        assert_eq!(oracle, pd_crank_table(10));
        assert_eq!(oracle.row_sum(4), BigInt::from(39));
        assert_eq!(pd_crank_oracle(0).row(0), ints(&[1]).as_slice());
    }

    #[test]
    fn pd_crank_symmetry_and_row_sums() {
        let t = pd_crank_table(40);
        for (m, n, c) in t.entries() {
            assert_eq!(c, t.get(-m, n));
        }
        for n in 0..=14u32 {
            assert_eq!(t.row_sum(n as usize), BigInt::from(count_pd2(n)));
        }
        assert_eq!(t.row_sums(), eta_quotient(&named::pd2(), 40).unwrap());
    }

    #[test]
    fn mod_class_examples() {
        let t = pd_crank_table(4);
        assert_eq!(mod_class(&t, 0, 2, 2).unwrap(), BigInt::from(5));
        assert_eq!(mod_class(&t, 1, 2, 2).unwrap(), BigInt::from(2));
        for k in 0..3 {
            assert_eq!(mod_class(&t, k, 3, 4).unwrap(), BigInt::from(13));
        }
        assert_eq!(mod_class(&t, 0, 1, 3).unwrap(), t.row_sum(3));
        assert!(mod_class(&t, 3, 3, 2).is_err());
        assert!(mod_class(&t, 0, 2, 5).is_err());
    }

    #[test]
    fn residue_difference_examples() {
        let t = pd_crank_table(60);
        let r2 = residue_difference_series(&t, 2).unwrap();
        assert_eq!(r2.truncate(2), TruncSeries::from_coeffs(2, [1, -2, 3]));
        assert_eq!(r2, eta_quotient(&named::pd_residue2(), 60).unwrap());
        let r3 = residue_difference_series(&t, 3).unwrap();
        assert_eq!(r3, eta_quotient(&named::pd_residue3(), 60).unwrap());
        assert!(matches!(
            residue_difference_series(&t, 5),
            Err(Error::UnsupportedModulus(5))
        ));
    }

    #[test]
    fn statistic_names_round_trip() {
        for s in [Statistic::Crank, Statistic::PdCrank, Statistic::KCrank(3)] {
            assert_eq!(s.to_string().parse::<Statistic>().unwrap(), s);
        }
        assert!("kcrank(0)".parse::<Statistic>().is_err());
        assert!("rank".parse::<Statistic>().is_err());
    }

    #[test]
    fn table_record_round_trip() {
        let t = pd_crank_table(8);
        let json = serde_json::to_string(&t).unwrap();
        let back: CrankTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"statistic":"crank","order":1,"rows":[["1"],["1","-1"]]}"#;
        assert!(serde_json::from_str::<CrankTable>(bad).is_err());
    }
}
