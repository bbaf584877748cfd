//! Integer partitions in multiplicity form.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// A partition of `j` stored as part size -> multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionVector {
    parts: BTreeMap<u32, u32>,
    j: u32,
    card: u32,
}

impl PartitionVector {
    pub fn from_multiplicities(parts: BTreeMap<u32, u32>) -> Result<Self> {
        if parts.keys().any(|&i| i == 0) {
            return Err(Error::Precondition("part sizes must be positive".into()));
        }
        let parts: BTreeMap<u32, u32> = parts.into_iter().filter(|&(_, k)| k > 0).collect();
        let j = parts.iter().map(|(i, k)| i * k).sum();
        let card = parts.values().sum();
        Ok(Self { parts, j, card })
    }

    /// Builds from a list of parts in any order, e.g. `[3, 1, 1]`.
    pub fn from_parts(list: &[u32]) -> Result<Self> {
        let mut parts = BTreeMap::new();
        for &p in list {
            *parts.entry(p).or_insert(0) += 1;
        }
        Self::from_multiplicities(parts)
    }

    pub fn parts(&self) -> &BTreeMap<u32, u32> {
        &self.parts
    }

    /// The weighted sum of parts.
    pub fn weight(&self) -> u32 {
        self.j
    }

    /// The number of parts.
    pub fn card(&self) -> u32 {
        self.card
    }

    pub fn largest_part(&self) -> Option<u32> {
        self.parts.keys().next_back().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parts in non-increasing order.
    pub fn to_descending(&self) -> Vec<u32> {
        self.parts
            .iter()
            .rev()
            .flat_map(|(&i, &k)| std::iter::repeat(i).take(k as usize))
            .collect()
    }
}

/// Every partition of `j`, largest part first, then reverse lexicographic.
pub fn partitions(j: u32) -> Vec<PartitionVector> {
    partitions_bounded(j, j)
}

/// Partitions of `j` whose parts are all at most `max_part`, in the same order.
pub fn partitions_bounded(j: u32, max_part: u32) -> Vec<PartitionVector> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    descend(j, max_part.min(j), &mut cur, &mut out);
    out
}

fn descend(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<PartitionVector>) {
    if rest == 0 {
        out.push(PartitionVector::from_parts(cur).expect("positive parts"));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        descend(rest - p, p, cur, out);
        cur.pop();
    }
}

/// p(j) by Euler's pentagonal recurrence, independent of the enumerator.
pub fn partition_count(j: u32) -> u64 {
    let n = j as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
        }
        p[m] = acc as u64;
    }
    p[n]
}
