//! Symmetrized and parity-weighted crank moments.
//!
//! The definition route sums binomially weighted table entries. For the
//! pd-crank the weighted moments also have two nested-sum generating
//! functions, evaluated here by dynamic accumulation over the largest index.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cranks::CrankTable;
use crate::error::{Error, Result};
use crate::products::{eta_quotient, named, pochhammer};
use crate::qseries::TruncSeries;

/// `a (a-1) ... (a-b+1) / b!` for any integer `a`.
pub fn general_binomial(a: i64, b: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b as i64 {
        num *= a - i;
        den *= i + 1;
    }
    // exact: b consecutive integers are divisible by b!
    num / den
}

fn check_row(table: &CrankTable, n: usize) -> Result<()> {
    if n > table.order() {
        Err(Error::OutOfRange {
            n,
            order: table.order(),
        })
    } else {
        Ok(())
    }
}

/// `μ_k(n) = Σ_m C(m + ⌊(k-1)/2⌋, k) T(m, n)`.
pub fn mu_sym(k: u32, n: usize, table: &CrankTable) -> Result<BigInt> {
    check_row(table, n)?;
    let shift = (k as i64 - 1).div_euclid(2);
    Ok(table
        .row(n)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let m = i as i64 - n as i64;
            general_binomial(m + shift, k) * c
        })
        .sum())
}

/// `μ_{2k}(-1, n) = Σ_m C(m + k - 1, 2k) (-1)^m T(m, n)`.
pub fn mu_weighted(k: u32, n: usize, table: &CrankTable) -> Result<BigInt> {
    check_row(table, n)?;
    Ok(table
        .row(n)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let m = i as i64 - n as i64;
            let term = general_binomial(m + k as i64 - 1, 2 * k) * c;
            if m.rem_euclid(2) == 1 {
                -term
            } else {
                term
            }
        })
        .sum())
}

/// Common prefactor `f6^2 / (f2^2 f3^2 (-q;q)_inf^2)`.
pub fn moment_prefactor(order: usize) -> TruncSeries {
    eta_quotient(&named::pd_residue2_unsimplified(), order).expect("valid spec")
}

/// Nondecreasing-index form:
/// prefactor × `(-1)^k Σ_{n_k ≥ … ≥ n_1 ≥ 1} q^{n_1+…+n_k} / ∏ (1+q^{n_i})^2`.
pub fn gfun1_series(k: u32, order: usize) -> TruncSeries {
    let pre = moment_prefactor(order);
    if k == 0 {
        return pre;
    }
    // q^n / (1 + q^n)^2 = Σ_{t≥1} (-1)^{t-1} t q^{nt}
    let weight: Vec<TruncSeries> = (0..=order)
        .map(|n| {
            if n == 0 {
                return TruncSeries::zero(order);
            }
            let terms = (1..=order / n).map(|t| {
                let c = t as i64;
                (n * t, if t % 2 == 1 { c } else { -c })
            });
            TruncSeries::from_terms(order, terms)
        })
        .collect();
    // level[n] = sum over chains with all indices <= n
    let mut level: Vec<TruncSeries> = vec![TruncSeries::one(order); order + 1];
    for _ in 0..k {
        let mut next = Vec::with_capacity(order + 1);
        let mut running = TruncSeries::zero(order);
        for n in 0..=order {
            if n > 0 {
                let step = weight[n].mul(&level[n]).expect("same order");
                running = running.add(&step).expect("same order");
            }
            next.push(running.clone());
        }
        level = next;
    }
    let mut inner = level.pop().expect("order + 1 levels");
    if k % 2 == 1 {
        inner = inner.neg();
    }
    pre.mul(&inner).expect("same order")
}

/// Strictly increasing form:
/// prefactor × `Σ_{m_k > … > m_1 ≥ 1} (-1)^{m_k} m_1 (m_2-m_1)…(m_k-m_{k-1}) q^{m_k} / ∏ (1-q^{m_i})`.
pub fn gfun2_series(k: u32, order: usize) -> TruncSeries {
    let pre = moment_prefactor(order);
    if k == 0 {
        return pre;
    }
    let geometric = |s: &mut TruncSeries, m: usize| s.div_binomial(m, -1);
    // chains[m] = Σ over chains of length j ending at m of the weight product
    // divided by ∏ (1 - q^{m_i})
    let mut chains: Vec<TruncSeries> = (0..=order)
        .map(|m| {
            if m == 0 {
                return TruncSeries::zero(order);
            }
            let mut s = TruncSeries::monomial(m as i64, 0, order);
            geometric(&mut s, m);
            s
        })
        .collect();
    for _ in 1..k {
        // Σ_{m'<m} (m - m') U(m') = m · P0 - P1
        let mut p0 = TruncSeries::zero(order);
        let mut p1 = TruncSeries::zero(order);
        let mut next = vec![TruncSeries::zero(order); order + 1];
        for m in 1..=order {
            let mut s = p0.scale(&BigInt::from(m)).sub(&p1).expect("same order");
            geometric(&mut s, m);
            p0 = p0.add(&chains[m]).expect("same order");
            p1 = p1
                .add(&chains[m].scale(&BigInt::from(m)))
                .expect("same order");
            next[m] = s;
        }
        chains = next;
    }
    let mut inner = TruncSeries::zero(order);
    for (m, u) in chains.iter().enumerate().skip(1) {
        let term = u.shift(m);
        inner = if m % 2 == 1 {
            inner.sub(&term)
        } else {
            inner.add(&term)
        }
        .expect("same order");
    }
    pre.mul(&inner).expect("same order")
}

/// `(-q;q^2)_inf / ∏ (1 - (-q)^{m_i})` for a strictly increasing tuple.
pub fn h_series(tuple: &[u32], order: usize) -> Result<TruncSeries> {
    let valid = tuple.first().is_none_or(|&m| m >= 1) && tuple.windows(2).all(|w| w[0] < w[1]);
    if !valid {
        return Err(Error::InvalidIndexTuple(tuple.to_vec()));
    }
    let mut s = pochhammer(1, 2, true, order)?;
    for &m in tuple {
        // 1 - (-q)^m is 1 + q^m for odd m, 1 - q^m for even m
        let sign = if m % 2 == 1 { 1 } else { -1 };
        s.div_binomial(m as usize, sign);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cranks::{crank_table, pd_crank_table};
    use num_traits::Signed;

    #[test]
    fn general_binomial_values() {
        assert_eq!(general_binomial(5, 0), BigInt::one());
        assert_eq!(general_binomial(-3, 0), BigInt::one());
        assert_eq!(general_binomial(6, 2), BigInt::from(15));
        assert_eq!(general_binomial(-1, 2), BigInt::from(1));
        assert_eq!(general_binomial(-2, 2), BigInt::from(3));
        assert_eq!(general_binomial(-4, 3), BigInt::from(-20));
        assert_eq!(general_binomial(2, 5), BigInt::zero());
        for a in 0..15i64 {
            for b in 0..=a as u32 {
                let mut c = 1i64;
                for i in 0..b as i64 {
                    c = c * (a - i) / (i + 1);
                }
                assert_eq!(general_binomial(a, b), BigInt::from(c));
            }
        }
    }

    #[test]
    fn symmetrized_moments() {
        let m = crank_table(30);
        assert_eq!(mu_sym(2, 4, &m).unwrap(), BigInt::from(20));
        for n in 2..=30 {
            assert_eq!(mu_sym(0, n, &m).unwrap(), m.row_sum(n));
        }
        let pd = pd_crank_table(30);
        for n in 0..=30 {
            for k in 0..5 {
                assert!(mu_sym(2 * k + 1, n, &m).unwrap().is_zero());
                assert!(mu_sym(2 * k + 1, n, &pd).unwrap().is_zero());
            }
        }
        assert!(mu_sym(0, 31, &m).is_err());
    }

    #[test]
    fn weighted_moment_examples() {
        let pd = pd_crank_table(4);
        assert_eq!(mu_weighted(0, 2, &pd).unwrap(), BigInt::from(3));
        assert_eq!(mu_weighted(1, 1, &pd).unwrap(), BigInt::from(-1));
        assert_eq!(mu_weighted(1, 2, &pd).unwrap(), BigInt::from(3));
    }

    #[test]
    fn gfun1_examples() {
        assert_eq!(gfun1_series(0, 2), TruncSeries::from_coeffs(2, [1, -2, 3]));
        assert_eq!(gfun1_series(1, 4).coeff(1), &BigInt::from(-1));
        let g = gfun1_series(5, 12);
        assert!(g.coeffs()[..5].iter().all(Zero::is_zero));
        assert!(!g.coeff(5).is_zero());
    }

    #[test]
    fn gfun_routes_agree() {
        let order = 30;
        let pd = pd_crank_table(order);
        for k in 0..=4 {
            let g1 = gfun1_series(k, order);
            let g2 = gfun2_series(k, order);
            assert_eq!(g1, g2, "k = {k}");
            for n in 0..=order {
                assert_eq!(
                    &mu_weighted(k, n, &pd).unwrap(),
                    g1.coeff(n),
                    "k = {k}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn h_series_examples() {
        let base = h_series(&[], 40).unwrap();
        assert_eq!(base, pochhammer(1, 2, true, 40).unwrap());
        assert!(base.coeffs().iter().all(|c| !c.is_negative()));
        let h = h_series(&[1, 2], 30).unwrap();
        assert!(h.coeffs().iter().all(|c| !c.is_negative()));
        for t in [&[3u32][..], &[2, 5, 9], &[1, 3, 4]] {
            assert_eq!(h_series(t, 20).unwrap().coeff(0), &BigInt::one());
        }
        assert!(h_series(&[2, 2], 10).is_err());
        assert!(h_series(&[0, 2], 10).is_err());
        assert!(h_series(&[4, 3], 10).is_err());
    }
}
