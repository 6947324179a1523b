//! Truncated formal power series in one variable `q` with exact integer
//! coefficients.
//!
//! A [`TruncSeries`] of order `N` stores `c_0, ..., c_N`. Binary operations
//! require both operands to carry the same order; there is no silent
//! re-truncation. Division is only defined by units (constant term `±1`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

/// Structured record form: `{order, coeffs}` with decimal-string coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRepr {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl From<TruncSeries> for SeriesRepr {
    fn from(s: TruncSeries) -> Self {
        SeriesRepr {
            order: s.order(),
            coeffs: s.coeffs.iter().map(BigInt::to_string).collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for TruncSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.coeffs.len() != r.order + 1 {
            return Err(Error::Parse(format!(
                "series of order {} needs {} coefficients, found {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            )));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("coefficient `{c}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries { coeffs })
    }
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c * q^exp`; the zero series when `exp > order`.
    pub fn monomial(c: impl Into<BigInt>, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c.into();
        }
        s
    }

    /// Builds a series from leading coefficients, padding with zeros up to
    /// `order`. Coefficients beyond `order` are dropped.
    pub fn from_coeffs<I, T>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    /// Sparse construction from `(exponent, coefficient)` terms; terms above
    /// `order` are ignored and repeated exponents accumulate.
    pub fn from_terms<I, T>(order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, T)>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            if e <= order {
                s.coeffs[e] += c.into();
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// Coefficient of `q^n`, or `None` when `n` lies past the truncation.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index and value of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, &BigInt)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncSeries { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncSeries { coeffs })
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse by forward substitution. Requires `c_0 = ±1`.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NonUnit {
                constant: c0.to_string(),
            });
        }
        let order = self.order();
        let mut inv = Self::zero(order);
        inv.coeffs[0] = c0.clone();
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &inv.coeffs[n - k];
                }
            }
            // 1/c0 == c0 for a unit
            inv.coeffs[n] = -(acc * c0);
        }
        Ok(inv)
    }

    /// Integer power; negative exponents go through [`TruncSeries::invert`].
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `a(q^k)` at the same order.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitute_power needs a positive power");
        let order = self.order();
        let mut out = Self::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            let e = n * k;
            if e > order {
                break;
            }
            out.coeffs[e] = c.clone();
        }
        out
    }

    /// Subseries `b_n = a_{tn+r}` of order `floor((N - r) / t)`.
    pub fn dissect(&self, t: usize, r: usize) -> Result<Self> {
        let order = self.order();
        if t == 0 || r >= t || r > order {
            return Err(Error::InvalidDissection { t, r, order });
        }
        let coeffs = self.coeffs[r..].iter().step_by(t).cloned().collect();
        Ok(TruncSeries { coeffs })
    }

    /// `a(-q)`.
    pub fn negate_q(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Multiplication by `q^k` at the same order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        if k <= order {
            out.coeffs[k..].clone_from_slice(&self.coeffs[..=order - k]);
        }
        out
    }

    /// Explicit re-truncation to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Adds `c * q^e`; no-op past the truncation.
    pub(crate) fn add_term(&mut self, e: usize, c: impl Into<BigInt>) {
        if let Some(slot) = self.coeffs.get_mut(e) {
            *slot += c.into();
        }
    }

    /// In-place multiplication by `1 + sign * q^e`.
    pub(crate) fn mul_binomial(&mut self, e: usize, sign: i8) {
        debug_assert!(e >= 1);
        let order = self.order();
        if e > order {
            return;
        }
        for n in (e..=order).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            if sign > 0 {
                hi[0] += &lo[n - e];
            } else {
                hi[0] -= &lo[n - e];
            }
        }
    }

    /// In-place division by `1 + sign * q^e`.
    pub(crate) fn div_binomial(&mut self, e: usize, sign: i8) {
        debug_assert!(e >= 1);
        let order = self.order();
        if e > order {
            return;
        }
        for n in e..=order {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            if sign > 0 {
                hi[0] -= &lo[n - e];
            } else {
                hi[0] += &lo[n - e];
            }
        }
    }

    /// Indices `n` with `c_n < 0`.
    pub fn negative_indices(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_negative())
            .map(|(n, _)| n)
            .collect()
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[N={}](", self.order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}q^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(order: usize, c: &[i64]) -> TruncSeries {
        TruncSeries::from_coeffs(order, c.iter().copied())
    }

    #[test]
    fn add_examples() {
        assert_eq!(s(1, &[1, 1]).add(&s(1, &[1, -1])).unwrap(), s(1, &[2]));
        let a = s(4, &[3, 0, -7, 1]);
        assert_eq!(a.add(&TruncSeries::zero(4)).unwrap(), a);
        assert_eq!(
            s(2, &[1, -1, -1]).add(&s(2, &[0, 1, 1])).unwrap(),
            TruncSeries::one(2)
        );
    }

    #[test]
    fn mismatched_orders_rejected() {
        let err = s(2, &[1]).add(&s(3, &[1])).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 2, right: 3 });
        assert!(s(2, &[1]).mul(&s(3, &[1])).is_err());
        assert!(s(2, &[1]).sub(&s(1, &[1])).is_err());
    }

    #[test]
    fn mul_examples() {
        let lhs = s(3, &[1, -1]).mul(&s(3, &[1, 1, 1, 1])).unwrap();
        assert_eq!(lhs, TruncSeries::one(3));
        let sq = s(2, &[1, 1]).mul(&s(2, &[1, 1])).unwrap();
        assert_eq!(sq, s(2, &[1, 2, 1]));
    }

    #[test]
    fn euler_product_times_partition_series_is_one() {
        let mut euler = TruncSeries::one(20);
        for i in 1..=20 {
            euler.mul_binomial(i, -1);
        }
        let mut partitions = TruncSeries::one(20);
        for i in 1..=20 {
            partitions.div_binomial(i, -1);
        }
        assert_eq!(euler.mul(&partitions).unwrap(), TruncSeries::one(20));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(s(4, &[1, -1]).invert().unwrap(), s(4, &[1, 1, 1, 1, 1]));
        // (q;q)_inf to order 4 is 1 - q - q^2 + 0 q^3 + 0 q^4
        let euler = s(4, &[1, -1, -1, 0, 0]);
        assert_eq!(euler.invert().unwrap(), s(4, &[1, 1, 2, 3, 5]));
        assert_eq!(TruncSeries::one(6).invert().unwrap(), TruncSeries::one(6));
        assert_eq!(s(2, &[-1, 1]).invert().unwrap(), s(2, &[-1, -1, -1]));
    }

    #[test]
    fn invert_rejects_non_units() {
        assert!(matches!(s(3, &[2, 1]).invert(), Err(Error::NonUnit { .. })));
        assert!(matches!(s(3, &[0, 1]).invert(), Err(Error::NonUnit { .. })));
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(s(5, &[1, 1]).substitute_power(3), s(5, &[1, 0, 0, 1]));
        // psi(q) = 1 + q + q^3 + q^6 + ...; q -> q^9 at order 9
        let psi = TruncSeries::from_terms(9, [(0, 1), (1, 1), (3, 1), (6, 1)]);
        assert_eq!(
            psi.substitute_power(9),
            TruncSeries::from_terms(9, [(0, 1), (9, 1)])
        );
        let a = s(4, &[5, -2, 0, 9, 1]);
        assert_eq!(a.substitute_power(1), a);
    }

    #[test]
    fn dissect_examples() {
        let a = s(3, &[1, 2, 3, 4]);
        assert_eq!(a.dissect(2, 0).unwrap(), s(1, &[1, 3]));
        assert_eq!(a.dissect(2, 1).unwrap(), s(1, &[2, 4]));
        assert_eq!(a.dissect(3, 2).unwrap(), s(0, &[3]));
        assert_eq!(s(4, &[1, 2, 3, 4, 5]).dissect(2, 1).unwrap().order(), 1);
        assert!(a.dissect(0, 0).is_err());
        assert!(a.dissect(2, 2).is_err());
        assert!(TruncSeries::one(0).dissect(2, 1).is_err());
    }

    #[test]
    fn pow_and_shift() {
        let a = s(5, &[1, 1]);
        assert_eq!(a.pow(3).unwrap(), s(5, &[1, 3, 3, 1]));
        assert_eq!(a.pow(-1).unwrap(), s(5, &[1, -1, 1, -1, 1, -1]));
        assert_eq!(a.pow(0).unwrap(), TruncSeries::one(5));
        assert_eq!(a.shift(4), s(5, &[0, 0, 0, 0, 1, 1]));
        assert_eq!(a.shift(9), TruncSeries::zero(5));
    }

    #[test]
    fn display_renders_terms() {
        assert_eq!(s(3, &[1, -2, 0, 1]).to_string(), "1 - 2q + q^3 + O(q^4)");
        assert_eq!(TruncSeries::zero(1).to_string(), "0 + O(q^2)");
    }

    #[test]
    fn record_round_trip() {
        let a = TruncSeries::from_coeffs(3, [BigInt::from(-5), BigInt::from(10).pow(40)]);
        let json = serde_json::to_string(&a).unwrap();
        assert!(json.contains("\"10000000000000000000000000000000000000000\""));
        let back: TruncSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        let bad = r#"{"order":2,"coeffs":["1"]}"#;
        assert!(serde_json::from_str::<TruncSeries>(bad).is_err());
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = TruncSeries> {
        proptest::collection::vec(-50i64..50, order + 1)
            .prop_map(move |c| TruncSeries::from_coeffs(order, c))
    }

    fn unit_strategy(order: usize) -> impl Strategy<Value = TruncSeries> {
        (prop_oneof![Just(1i64), Just(-1i64)], series_strategy(order)).prop_map(|(c0, mut a)| {
            a.coeffs[0] = BigInt::from(c0);
            a
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in series_strategy(12), b in series_strategy(12), c in series_strategy(12)) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        }

        #[test]
        fn inverse_of_units(a in unit_strategy(15)) {
            let inv = a.invert().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), TruncSeries::one(15));
        }

        #[test]
        fn dissection_reassembles(a in series_strategy(20), t in 1usize..6) {
            let order = a.order();
            let mut acc = TruncSeries::zero(order);
            for r in 0..t {
                let part = a.dissect(t, r).unwrap();
                let mut lifted = TruncSeries::zero(order);
                for (n, c) in part.coeffs().iter().enumerate() {
                    lifted.coeffs[t * n] = c.clone();
                }
                acc = acc.add(&lifted.shift(r)).unwrap();
            }
            let valid = order + 1 - t;
            prop_assert_eq!(acc.truncate(valid), a.truncate(valid));
        }

        #[test]
        fn substitution_composes(a in series_strategy(30), j in 1usize..5, k in 1usize..5) {
            prop_assert_eq!(
                a.substitute_power(j).substitute_power(k),
                a.substitute_power(j * k)
            );
        }
    }
}
