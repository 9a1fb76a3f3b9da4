use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OrbitError;

/// Jordan type of a nilpotent orbit in gl(n): a weakly decreasing list of
/// positive block sizes.
///
/// The empty partition is the unique orbit of gl(0); it is the unit of the
/// orbit monoid.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, OrbitError> {
        if parts.contains(&0) {
            return Err(OrbitError::InvalidPartition(format!(
                "parts must be positive: {parts:?}"
            )));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(OrbitError::InvalidPartition(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros, so any multiset of block sizes is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The zero orbit (1, ..., 1) of gl(n).
    pub fn zero_orbit(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The regular orbit (n) of gl(n).
    pub fn regular(n: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Partition { parts: vec![n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// n, the rank of the ambient gl(n).
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// d, the number of Jordan blocks.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// r, the largest block size (0 for the empty partition).
    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// d_i, the number of blocks of size `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Part `k` (0-based) with implicit zero padding.
    pub fn part(&self, k: usize) -> usize {
        self.parts.get(k).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let r = self.largest();
        let parts = (0..r)
            .map(|i| self.parts.iter().filter(|&&p| p > i).count())
            .collect();
        Partition { parts }
    }

    /// Componentwise sum after zero padding. This is orbit induction from
    /// a Levi with two blocks.
    pub fn induce_with(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        let parts = (0..len).map(|k| self.part(k) + other.part(k)).collect();
        Partition { parts }
    }

    /// True when `self[k] <= other[k]` for every k.
    pub fn fits_under(&self, other: &[usize]) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(other).all(|(a, b)| a <= b)
    }

    /// All partitions of `n` in reverse-lexicographic order, from (n) down
    /// to (1, ..., 1).
    pub fn all(n: usize) -> Vec<Partition> {
        if n == 0 {
            return vec![Partition::empty()];
        }
        let mut out = Vec::new();
        let mut current = vec![n];
        loop {
            out.push(Partition {
                parts: current.clone(),
            });
            // Rightmost part larger than 1.
            let Some(pos) = current.iter().rposition(|&p| p > 1) else {
                break;
            };
            let ones = current.len() - pos - 1;
            let head = current[pos] - 1;
            let mut remaining = ones + 1;
            current.truncate(pos);
            current.push(head);
            while remaining > 0 {
                let take = remaining.min(head);
                current.push(take);
                remaining -= take;
            }
        }
        out
    }

    /// All partitions of every size `0..=max_n`, ordered by size and then
    /// reverse-lexicographically.
    pub fn all_up_to(max_n: usize) -> Vec<Partition> {
        (0..=max_n).flat_map(Partition::all).collect()
    }
}

impl Ord for Partition {
    /// Size first, then reverse-lexicographic, so (3) < (2,1) < (1,1,1).
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = OrbitError;

    /// Parses "2,1". The string "0" denotes the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| OrbitError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
