//! The injection Ω from partitions counted by `P24(n-1)` into partitions
//! counted by `P2(n)`, defined for `n >= 14`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::combinatorics::{count_p2, is_p2, is_p24, p24_partitions, Partition};
use crate::error::{Error, Result};

/// Smallest target weight on which Ω is defined.
pub const OMEGA_MIN_WEIGHT: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaCase {
    /// The input has two or four 1s: add one more.
    HasOnes,
    /// Largest part `m ≥ 5` or `m = 3`, more than two copies: one `m` and the
    /// added 1 become `m + 1` ones.
    LargePartMany,
    /// Largest part `m ≥ 5` or `m = 3`, exactly two copies: both and the
    /// added 1 become `2m + 1` ones.
    LargePartTwice,
    /// Largest part 4 occurring twice or more than three times: two 4s and
    /// the added 1 become nine 1s.
    FourManyOrTwice,
    /// Largest part 4 occurring exactly three times: the three 4s and the
    /// added 1 become `3,3,3,2,2`.
    FourThrice,
    /// Only 2s, at least seven of them: five 2s and the added 1 become
    /// `3,3,3,1,1`.
    TwoSeven,
}

impl fmt::Display for OmegaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn remove_copies(parts: &mut Vec<u32>, part: u32, copies: usize) {
    for _ in 0..copies {
        let pos = parts.iter().position(|&p| p == part).expect("copy present");
        parts.remove(pos);
    }
}

/// Image of `alpha` (weight `n - 1`, in the P24 family) under Ω.
pub fn omega(alpha: &Partition, n: u32) -> Result<(Partition, OmegaCase)> {
    if n < OMEGA_MIN_WEIGHT {
        return Err(Error::Omega(format!(
            "target weight {n} is below {OMEGA_MIN_WEIGHT}"
        )));
    }
    if alpha.weight() + 1 != n {
        return Err(Error::Omega(format!(
            "{alpha} has weight {}, expected {}",
            alpha.weight(),
            n - 1
        )));
    }
    if !is_p24(alpha) {
        return Err(Error::Omega(format!("{alpha} is not counted by P24")));
    }
    let mut parts = alpha.parts().to_vec();
    if alpha.multiplicity(1) > 0 {
        parts.push(1);
        return Ok((Partition::new(parts)?, OmegaCase::HasOnes));
    }
    let m = alpha.largest().expect("weight >= 13");
    let mult = alpha.multiplicity(m);
    let case = match (m, mult) {
        (3, l) | (5.., l) if l > 2 => {
            remove_copies(&mut parts, m, 1);
            parts.extend(std::iter::repeat_n(1, m as usize + 1));
            OmegaCase::LargePartMany
        }
        (3, 2) | (5.., 2) => {
            remove_copies(&mut parts, m, 2);
            parts.extend(std::iter::repeat_n(1, 2 * m as usize + 1));
            OmegaCase::LargePartTwice
        }
        (4, l) if l == 2 || l > 3 => {
            remove_copies(&mut parts, 4, 2);
            parts.extend([1; 9]);
            OmegaCase::FourManyOrTwice
        }
        (4, 3) => {
            remove_copies(&mut parts, 4, 3);
            parts.extend([3, 3, 3, 2, 2]);
            OmegaCase::FourThrice
        }
        (2, l) if l >= 7 => {
            remove_copies(&mut parts, 2, 5);
            parts.extend([3, 3, 3, 1, 1]);
            OmegaCase::TwoSeven
        }
        _ => {
            return Err(Error::Omega(format!(
                "no case matches {alpha} (largest part {m} x{mult})"
            )))
        }
    };
    Ok((Partition::new(parts)?, case))
}

/// Outcome of running Ω over the whole domain at one target weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionReport {
    pub n: u32,
    /// `P24(n - 1)`.
    pub domain_size: u64,
    /// `P2(n)`.
    pub codomain_size: u64,
    pub case_counts: BTreeMap<OmegaCase, u64>,
    /// Human-readable violations: unmatched inputs, bad weights or
    /// memberships, and collisions.
    pub failures: Vec<String>,
}

impl InjectionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.codomain_size >= self.domain_size
    }

    /// `P2(n) - P24(n-1)`.
    pub fn surplus(&self) -> i64 {
        self.codomain_size as i64 - self.domain_size as i64
    }
}

/// Applies Ω to every element of the `P24(n-1)` stream and checks weight,
/// membership in `P2(n)`, case exhaustiveness and injectivity.
pub fn verify_injection(n: u32) -> Result<InjectionReport> {
    if n < OMEGA_MIN_WEIGHT {
        return Err(Error::Omega(format!(
            "target weight {n} is below {OMEGA_MIN_WEIGHT}"
        )));
    }
    let mut failures = Vec::new();
    let mut case_counts = BTreeMap::new();
    let mut seen: HashMap<Partition, Partition> = HashMap::new();
    let mut domain_size = 0u64;
    for alpha in p24_partitions(n - 1) {
        domain_size += 1;
        let (beta, case) = match omega(&alpha, n) {
            Ok(r) => r,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        *case_counts.entry(case).or_insert(0) += 1;
        if beta.weight() != n {
            failures.push(format!("{alpha} -> {beta}: weight {}", beta.weight()));
        }
        if !is_p2(&beta) {
            failures.push(format!("{alpha} -> {beta}: image not in P2"));
        }
        if let Some(prev) = seen.insert(beta.clone(), alpha.clone()) {
            failures.push(format!("{prev} and {alpha} both map to {beta}"));
        }
    }
    Ok(InjectionReport {
        n,
        domain_size,
        codomain_size: count_p2(n),
        case_counts,
        failures,
    })
}
