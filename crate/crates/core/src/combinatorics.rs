//! Exhaustive enumeration of partitions and the derived objects: designated
//! summands, vector pairs, and the multiplicity-restricted families.
//!
//! All streams are deterministic. Partitions come out in reverse
//! lexicographic order, starting from `(n)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into nonincreasing order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition {parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// `(part size, multiplicity)` pairs, largest size first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn even_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 0).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Depth-first stream of the partitions of `n` into parts drawn from a fixed
/// set, larger parts first.
#[derive(Debug, Clone)]
pub struct PartitionsInto {
    allowed: Vec<u32>,
    chosen: Vec<usize>,
    remaining: u32,
    started: bool,
}

impl PartitionsInto {
    pub fn new(n: u32, mut allowed: Vec<u32>) -> Self {
        allowed.retain(|&p| p >= 1 && p <= n);
        allowed.sort_unstable_by(|a, b| b.cmp(a));
        allowed.dedup();
        PartitionsInto {
            allowed,
            chosen: Vec::new(),
            remaining: n,
            started: false,
        }
    }

    /// Greedily completes the current prefix; false on a dead end.
    fn descend(&mut self) -> bool {
        while self.remaining > 0 {
            let from = self.chosen.last().copied().unwrap_or(0);
            match (from..self.allowed.len()).find(|&j| self.allowed[j] <= self.remaining) {
                Some(j) => {
                    self.chosen.push(j);
                    self.remaining -= self.allowed[j];
                }
                None => return false,
            }
        }
        true
    }

    /// Replaces the last choice by the next smaller allowed part, popping as
    /// needed; false once the search space is exhausted.
    fn advance(&mut self) -> bool {
        while let Some(j) = self.chosen.pop() {
            self.remaining += self.allowed[j];
            if j + 1 < self.allowed.len() {
                self.chosen.push(j + 1);
                self.remaining -= self.allowed[j + 1];
                return true;
            }
        }
        false
    }

    fn current(&self) -> Partition {
        Partition {
            parts: self.chosen.iter().map(|&j| self.allowed[j]).collect(),
        }
    }
}

impl Iterator for PartitionsInto {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if !self.started {
            self.started = true;
            if self.descend() {
                return Some(self.current());
            }
        }
        loop {
            if !self.advance() {
                return None;
            }
            if self.descend() {
                return Some(self.current());
            }
        }
    }
}

/// All partitions of `n`, reverse lexicographic.
pub fn partitions(n: u32) -> PartitionsInto {
    PartitionsInto::new(n, (1..=n).collect())
}

/// `p ≢ ±1 (mod 6)`: the admissible part sizes of the second vector component.
pub fn is_vector_beta_part(p: u32) -> bool {
    !matches!(p % 6, 1 | 5)
}

/// Partitions of `n` into parts `≢ ±1 (mod 6)`.
pub fn beta_partitions(n: u32) -> PartitionsInto {
    PartitionsInto::new(n, (1..=n).filter(|&p| is_vector_beta_part(p)).collect())
}

/// A partition with one tagged occurrence of every distinct part size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DesignatedPartition {
    base: Partition,
    /// `(part size, 1-based index among equal parts)`, largest size first.
    tags: Vec<(u32, usize)>,
}

impl DesignatedPartition {
    pub fn new(base: Partition, tags: Vec<(u32, usize)>) -> Result<Self> {
        let mults = base.multiplicities();
        let valid = mults.len() == tags.len()
            && mults
                .iter()
                .zip(&tags)
                .all(|(&(p, m), &(tp, ti))| p == tp && ti >= 1 && ti <= m);
        if !valid {
            return Err(Error::Parse(format!(
                "tags {tags:?} do not designate {base}"
            )));
        }
        Ok(DesignatedPartition { base, tags })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn tags(&self) -> &[(u32, usize)] {
        &self.tags
    }

    pub fn weight(&self) -> u32 {
        self.base.weight()
    }
}

impl fmt::Display for DesignatedPartition {
    /// Primed notation, e.g. `2'+1+1'`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.is_empty() {
            return f.write_str("()");
        }
        let mut first = true;
        for (&(p, m), &(_, tag)) in self.base.multiplicities().iter().zip(&self.tags) {
            for i in 1..=m {
                if !first {
                    f.write_str("+")?;
                }
                first = false;
                write!(f, "{p}{}", if i == tag { "'" } else { "" })?;
            }
        }
        Ok(())
    }
}

/// Stream of the designated partitions of `n`: for each base partition, every
/// tuple of tag positions in odometer order.
pub struct DesignatedPartitions {
    bases: PartitionsInto,
    current: Option<Odometer>,
}

/// Base partition, `(part, multiplicity)` per distinct part, tag digits.
type Odometer = (Partition, Vec<(u32, usize)>, Vec<usize>);

impl Iterator for DesignatedPartitions {
    type Item = DesignatedPartition;

    fn next(&mut self) -> Option<DesignatedPartition> {
        loop {
            if let Some((base, mults, idx)) = &mut self.current {
                let tags = mults
                    .iter()
                    .zip(idx.iter())
                    .map(|(&(p, _), &i)| (p, i))
                    .collect();
                let item = DesignatedPartition {
                    base: base.clone(),
                    tags,
                };
                // odometer increment, last size fastest
                let mut pos = idx.len();
                let mut carried = true;
                while carried && pos > 0 {
                    pos -= 1;
                    if idx[pos] < mults[pos].1 {
                        idx[pos] += 1;
                        carried = false;
                    } else {
                        idx[pos] = 1;
                    }
                }
                if carried {
                    self.current = None;
                }
                return Some(item);
            }
            let base = self.bases.next()?;
            let mults = base.multiplicities();
            let idx = vec![1; mults.len()];
            self.current = Some((base, mults, idx));
        }
    }
}

pub fn designated_partitions(n: u32) -> DesignatedPartitions {
    DesignatedPartitions {
        bases: partitions(n),
        current: None,
    }
}

/// `PD(n)` by exhaustive enumeration.
pub fn count_pd(n: u32) -> u64 {
    designated_partitions(n).count() as u64
}

/// `PD(0..=max)` by a multiplicity dynamic program: a part size used `m ≥ 1`
/// times contributes `m` taggings. Independent of both the object stream and
/// the product formula.
pub fn pd_counts(max: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); max + 1];
    table[0] = BigUint::from(1u32);
    for size in 1..=max {
        let prev = table.clone();
        for n in size..=max {
            let mut acc = BigUint::zero();
            let mut m = 1usize;
            while m * size <= n {
                let base = &prev[n - m * size];
                if !base.is_zero() {
                    acc += base * m;
                }
                m += 1;
            }
            table[n] += acc;
        }
    }
    table
}

/// `PD_{-2}(n) = Σ_{a+b=n} PD(a) PD(b)`, with both components tagged
/// independently.
pub fn count_pd2(n: u32) -> u64 {
    let pd: Vec<u64> = (0..=n).map(count_pd).collect();
    (0..=n as usize).map(|a| pd[a] * pd[n as usize - a]).sum()
}

/// An ordinary partition `alpha` paired with a partition `beta` into parts
/// `≢ ±1 (mod 6)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorPair {
    pub alpha: Partition,
    pub beta: Partition,
}

impl VectorPair {
    pub fn new(alpha: Partition, beta: Partition) -> Result<Self> {
        if let Some(&bad) = beta.parts().iter().find(|&&p| !is_vector_beta_part(p)) {
            return Err(Error::Parse(format!(
                "beta part {bad} is congruent to ±1 mod 6"
            )));
        }
        Ok(VectorPair { alpha, beta })
    }

    pub fn weight(&self) -> u32 {
        self.alpha.weight() + self.beta.weight()
    }
}

/// All vector pairs of total weight `n`, ordered by decreasing `|alpha|`.
pub fn vector_pairs(n: u32) -> impl Iterator<Item = VectorPair> {
    (0..=n).rev().flat_map(move |a| {
        partitions(a).flat_map(move |alpha| {
            beta_partitions(n - a).map(move |beta| VectorPair {
                alpha: alpha.clone(),
                beta,
            })
        })
    })
}

/// `l_e(alpha) - l_e(beta)`.
pub fn pd_rank(pair: &VectorPair) -> i64 {
    pair.alpha.even_parts() as i64 - pair.beta.even_parts() as i64
}

/// Every part size occurs at least twice.
pub fn is_p2(p: &Partition) -> bool {
    p.multiplicities().iter().all(|&(_, m)| m >= 2)
}

/// [`is_p2`] and the multiplicity of 1 is 0, 2 or 4.
pub fn is_p24(p: &Partition) -> bool {
    is_p2(p) && matches!(p.multiplicity(1), 0 | 2 | 4)
}

pub fn p2_partitions(n: u32) -> impl Iterator<Item = Partition> {
    partitions(n).filter(is_p2)
}

pub fn p24_partitions(n: u32) -> impl Iterator<Item = Partition> {
    partitions(n).filter(is_p24)
}

pub fn count_p2(n: u32) -> u64 {
    p2_partitions(n).count() as u64
}

pub fn count_p24(n: u32) -> u64 {
    p24_partitions(n).count() as u64
}
