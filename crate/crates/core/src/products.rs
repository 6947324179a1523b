//! Named q-products, theta functions, and the catalog of series identities.
//!
//! Notation: `f_k = (q^k; q^k)_inf`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qseries::TruncSeries;

/// One factor `(±q^offset; q^step)_inf ^ exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductFactor {
    pub offset: u32,
    pub step: u32,
    pub exponent: i32,
    /// `true` for `(-q^a; q^b)_inf`.
    pub negated: bool,
}

/// Symbolic product `∏ (±q^a; q^b)_inf ^ e`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    factors: Vec<ProductFactor>,
}

impl EtaQuotientSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `f_k^e`.
    pub fn f(self, k: u32, e: i32) -> Self {
        self.factor(k, k, e, false)
    }

    pub fn factor(mut self, offset: u32, step: u32, exponent: i32, negated: bool) -> Self {
        self.factors.push(ProductFactor {
            offset,
            step,
            exponent,
            negated,
        });
        self
    }

    pub fn factors(&self) -> &[ProductFactor] {
        &self.factors
    }

    pub fn validate(&self) -> Result<()> {
        for f in &self.factors {
            if f.offset == 0 || f.step == 0 {
                return Err(Error::InvalidPochhammer {
                    offset: f.offset,
                    step: f.step,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|p| {
                let base = if !p.negated && p.offset == p.step {
                    format!("f{}", p.offset)
                } else {
                    let s = if p.negated { "-" } else { "" };
                    format!("({s}q^{};q^{})", p.offset, p.step)
                };
                if p.exponent == 1 {
                    base
                } else {
                    format!("{base}^{}", p.exponent)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Expansion of `(±q^a; q^b)_inf` as the finite product of binomials with
/// exponent at most `order`.
pub fn pochhammer(a: u32, b: u32, negated: bool, order: usize) -> Result<TruncSeries> {
    eta_quotient(&EtaQuotientSpec::new().factor(a, b, 1, negated), order)
}

/// Exact expansion of an eta quotient. Each binomial `1 ± q^e` is applied
/// `|exponent|` times by in-place multiplication or unit division.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: usize) -> Result<TruncSeries> {
    spec.validate()?;
    let mut out = TruncSeries::one(order);
    for f in spec.factors() {
        let sign = if f.negated { 1 } else { -1 };
        for _ in 0..f.exponent.unsigned_abs() {
            let mut e = f.offset as usize;
            while e <= order {
                if f.exponent > 0 {
                    out.mul_binomial(e, sign);
                } else {
                    out.div_binomial(e, sign);
                }
                e += f.step as usize;
            }
        }
    }
    Ok(out)
}

/// `f_k` expanded to `order`.
pub fn euler(k: u32, order: usize) -> TruncSeries {
    eta_quotient(&EtaQuotientSpec::new().f(k, 1), order).expect("k >= 1")
}

/// Named generating functions used across the crate.
pub mod named {
    use super::EtaQuotientSpec;

    /// `sum PD(n) q^n = f6 / (f1 f2 f3)`.
    pub fn pd() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(6, 1).f(1, -1).f(2, -1).f(3, -1)
    }

    /// `sum PD_{-2}(n) q^n = f6^2 / (f1^2 f2^2 f3^2)`.
    pub fn pd2() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(6, 2).f(1, -2).f(2, -2).f(3, -2)
    }

    /// The z-free prefactor of the pd-crank generating function,
    /// `f6^2 / (f2^2 f3^2)`.
    pub fn pd_crank_prefactor() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(6, 2).f(2, -2).f(3, -2)
    }

    /// Parity difference `M_bd(0,2,n) - M_bd(1,2,n)`: `f6^2 f1^2 / (f2^4 f3^2)`.
    pub fn pd_residue2() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(6, 2).f(1, 2).f(2, -4).f(3, -2)
    }

    /// Same series written before simplification:
    /// `f6^2 / ((-q;q)^2 f2^2 f3^2)`.
    pub fn pd_residue2_unsimplified() -> EtaQuotientSpec {
        EtaQuotientSpec::new()
            .f(6, 2)
            .factor(1, 1, -2, true)
            .f(2, -2)
            .f(3, -2)
    }

    /// `M_bd(0,3,n) - M_bd(1,3,n)`: `f1 f6^2 / (f2^2 f3^3)`.
    pub fn pd_residue3() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(1, 1).f(6, 2).f(2, -2).f(3, -3)
    }

    /// Even part of [`pd_residue3`]: `f2^2 f6^2 / (f1 f3^5)`.
    pub fn pd_residue3_even() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(2, 2).f(6, 2).f(1, -1).f(3, -5)
    }

    /// Negated odd part of [`pd_residue3`]: `f1 f6^6 / (f2^2 f3^7)`.
    pub fn pd_residue3_odd() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(1, 1).f(6, 6).f(2, -2).f(3, -7)
    }

    /// `A(q) = f2 f3^2 / (f1 f6)`.
    pub fn a_function() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(2, 1).f(3, 2).f(1, -1).f(6, -1)
    }

    /// `f6 / (f2 f3)`, the generating function of partitions in which no
    /// part size occurs exactly once.
    pub fn repeated_parts() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(6, 1).f(2, -1).f(3, -1)
    }

    /// Ordinary crank parity difference `f1 / (-q;q)^2 = f1^3 / f2^2`.
    pub fn crank_residue2() -> EtaQuotientSpec {
        EtaQuotientSpec::new().f(1, 3).f(2, -2)
    }
}

/// `psi(q) = sum_{n>=0} q^{n(n+1)/2}` from the exponent list.
pub fn theta_psi(order: usize) -> TruncSeries {
    let terms = (0usize..)
        .map(|n| n * (n + 1) / 2)
        .take_while(|&e| e <= order)
        .map(|e| (e, 1));
    TruncSeries::from_terms(order, terms)
}

/// `psi(q) = f2^2 / f1`, the product route.
pub fn theta_psi_product(order: usize) -> TruncSeries {
    eta_quotient(&EtaQuotientSpec::new().f(2, 2).f(1, -1), order).expect("valid spec")
}

/// Ramanujan's `f(a, b) = sum_{n in Z} a^{n(n+1)/2} b^{n(n-1)/2}` with
/// `a = sign_a q^r`, `b = sign_b q^s`.
pub fn theta_f(r: u32, s: u32, sign_a: i8, sign_b: i8, order: usize) -> Result<TruncSeries> {
    if r + s == 0 {
        return Err(Error::DivergentTheta { r, s });
    }
    let (r, s) = (r as i64, s as i64);
    let mut out = TruncSeries::zero(order);
    // both triangular weights grow with |n| away from {0, 1} and {-1, 0}, and
    // r + s >= 1 makes the exponent strictly increasing on each half-line
    let mut add = |n: i64| -> bool {
        let ta = n * (n + 1) / 2;
        let tb = n * (n - 1) / 2;
        let e = r * ta + s * tb;
        if e as usize > order {
            return false;
        }
        out.add_term(e as usize, sign_pow(sign_a, ta) * sign_pow(sign_b, tb));
        true
    };
    add(0);
    let mut n = 1;
    while add(n) {
        n += 1;
    }
    let mut n = -1;
    while add(n) {
        n -= 1;
    }
    Ok(out)
}

fn sign_pow(sign: i8, e: i64) -> i64 {
    if sign < 0 && e.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// Both sides of the Jacobi triple product
/// `(-z;q)(-q/z;q)(q;q) = sum z^n q^{n(n-1)/2}` at `z = q^j`, `q -> q^t`.
pub fn jacobi_triple(j: u32, t: u32, order: usize) -> Result<(TruncSeries, TruncSeries)> {
    if j == 0 || j >= t {
        return Err(Error::InvalidSpecialization { j, t });
    }
    let product = eta_quotient(
        &EtaQuotientSpec::new()
            .factor(j, t, 1, true)
            .factor(t - j, t, 1, true)
            .f(t, 1),
        order,
    )?;
    let (j, t) = (j as i64, t as i64);
    let exponent = |n: i64| j * n + t * n * (n - 1) / 2;
    let mut terms = Vec::new();
    for dir in [1i64, -1] {
        let mut n = if dir > 0 { 0 } else { -1 };
        loop {
            let e = exponent(n);
            // exponent is increasing in |n| on each half-line
            if e > order as i64 {
                break;
            }
            terms.push((e as usize, 1));
            n += dir;
        }
    }
    Ok((product, TruncSeries::from_terms(order, terms)))
}

/// `∏_{i>=1} (1 + q^{2i}/(1 - q^i))`, each factor expanded as
/// `(1 - q^i + q^{2i}) / (1 - q^i)`.
pub fn repeated_parts_product(order: usize) -> TruncSeries {
    let mut out = TruncSeries::one(order);
    for i in 1..=order {
        let mut numer = TruncSeries::one(order);
        numer.add_term(i, -1);
        numer.add_term(2 * i, 1);
        out = out.mul(&numer).expect("same order");
        out.div_binomial(i, -1);
    }
    out
}

/// `(1 - q + q^4) ∏_{i>=1} (1 + q^{2i}/(1 - q^i))`.
pub fn mainf2_series(order: usize) -> TruncSeries {
    TruncSeries::from_terms(order, [(0, 1), (1, -1), (4, 1)])
        .mul(&repeated_parts_product(order))
        .expect("same order")
}

/// Stable identifiers for the series identities checked by the workbench.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    I7,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::I1,
        IdentityId::I2,
        IdentityId::I3,
        IdentityId::I4,
        IdentityId::I5,
        IdentityId::I6,
        IdentityId::I7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::I1 => "2-dissection of f1/f3",
            IdentityId::I2 => "2-dissection of f1^2/f3^2",
            IdentityId::I3 => "2-dissection of f1/f3^3",
            IdentityId::I4 => "psi(q) = f(q^3,q^6) + q psi(q^9)",
            IdentityId::I5 => "1/psi(q) via psi(q^3), psi(q^9), A(q^3)",
            IdentityId::I6 => "f6/(f2 f3) = prod (1 + q^{2i}/(1-q^i))",
            IdentityId::I7 => "Jacobi triple product at z=q, q->q^3",
        }
    }

    /// Left and right sides at `order`.
    pub fn sides(self, order: usize) -> Result<IdentitySides> {
        let (left, right) = match self {
            IdentityId::I1 => {
                let left = eta_quotient(&EtaQuotientSpec::new().f(1, 1).f(3, -1), order)?;
                let even = eta_quotient(
                    &EtaQuotientSpec::new()
                        .f(2, 1)
                        .f(16, 1)
                        .f(24, 2)
                        .f(6, -2)
                        .f(8, -1)
                        .f(48, -1),
                    order,
                )?;
                let odd = eta_quotient(
                    &EtaQuotientSpec::new()
                        .f(2, 1)
                        .f(8, 2)
                        .f(12, 1)
                        .f(48, 1)
                        .f(4, -1)
                        .f(6, -2)
                        .f(16, -1)
                        .f(24, -1),
                    order,
                )?;
                (left, even.sub(&odd.shift(1))?)
            }
            IdentityId::I2 => {
                let left = eta_quotient(&EtaQuotientSpec::new().f(1, 2).f(3, -2), order)?;
                let t0 = eta_quotient(
                    &EtaQuotientSpec::new()
                        .f(2, 2)
                        .f(16, 2)
                        .f(24, 4)
                        .f(6, -4)
                        .f(8, -2)
                        .f(48, -2),
                    order,
                )?;
                let t2 = eta_quotient(
                    &EtaQuotientSpec::new()
                        .f(2, 2)
                        .f(8, 4)
                        .f(12, 2)
                        .f(48, 2)
                        .f(4, -2)
                        .f(6, -4)
                        .f(16, -2)
                        .f(24, -2),
                    order,
                )?;
                let t1 = eta_quotient(
                    &EtaQuotientSpec::new()
                        .f(2, 2)
                        .f(8, 1)
                        .f(12, 1)
                        .f(24, 1)
                        .f(4, -1)
                        .f(6, -4),
                    order,
                )?;
                let right = t0
                    .add(&t2.shift(2))?
                    .sub(&t1.shift(1).scale(&BigInt::from(2)))?;
                (left, right)
            }
            IdentityId::I3 => {
                let left = eta_quotient(&EtaQuotientSpec::new().f(1, 1).f(3, -3), order)?;
                let even = eta_quotient(
                    &EtaQuotientSpec::new().f(2, 1).f(4, 2).f(12, 2).f(6, -7),
                    order,
                )?;
                let odd = eta_quotient(
                    &EtaQuotientSpec::new().f(2, 3).f(12, 6).f(4, -2).f(6, -9),
                    order,
                )?;
                (left, even.sub(&odd.shift(1))?)
            }
            IdentityId::I4 => {
                let left = theta_psi(order);
                let right = theta_f(3, 6, 1, 1, order)?
                    .add(&theta_psi(order).substitute_power(9).shift(1))?;
                (left, right)
            }
            IdentityId::I5 => {
                let left = theta_psi(order).invert()?;
                let psi9 = theta_psi(order).substitute_power(9);
                let psi3 = theta_psi(order).substitute_power(3);
                let a3 = eta_quotient(&named::a_function(), order)?.substitute_power(3);
                let bracket = a3
                    .mul(&a3)?
                    .sub(&a3.mul(&psi9)?.shift(1))?
                    .add(&psi9.mul(&psi9)?.shift(2))?;
                let right = psi9.mul(&psi3.pow(-4)?)?.mul(&bracket)?;
                (left, right)
            }
            IdentityId::I6 => (
                eta_quotient(&named::repeated_parts(), order)?,
                repeated_parts_product(order),
            ),
            IdentityId::I7 => jacobi_triple(1, 3, order)?,
        };
        Ok(IdentitySides {
            id: self,
            left,
            right,
        })
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct IdentitySides {
    pub id: IdentityId,
    pub left: TruncSeries,
    pub right: TruncSeries,
}

impl IdentitySides {
    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    pub fn difference(&self) -> TruncSeries {
        self.left.sub(&self.right).expect("sides share an order")
    }
}

/// Every catalogued identity, in id order.
pub fn identity_catalog() -> &'static [IdentityId] {
    &IdentityId::ALL
}
