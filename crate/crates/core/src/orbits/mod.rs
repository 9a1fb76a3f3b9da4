//! Partitions, Young-diagram statistics, orbit induction and the Levi-orbit
//! classes L(o)/W that index the terms of H_o.

mod classes;
mod diagram;
mod partition;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classes::{
    block_key_cmp, enumerate_classes, induce, stirling2, stirling_identity_check, LeviOrbitClass,
};
pub use diagram::{young_stats, Cell, YoungDiagram};
pub use partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cannot parse partition {0:?}; expected decreasing integers such as \"2,1\"")]
    Parse(String),
    #[error("invalid Levi type: {0}")]
    InvalidLevi(String),
    #[error("block {block} has size {expected} but its orbit is a partition of {found}")]
    SizeMismatch {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("Levi has {blocks} blocks but {orbits} orbits were given")]
    BlockCountMismatch { blocks: usize, orbits: usize },
}

/// Type (n_1, ..., n_r) of a standard Levi GL(n_1) x ... x GL(n_r), i.e. a
/// composition of n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LeviType {
    blocks: Vec<usize>,
}

impl LeviType {
    pub fn new(blocks: Vec<usize>) -> Result<Self, OrbitError> {
        if blocks.is_empty() {
            return Err(OrbitError::InvalidLevi(
                "at least one block is required".into(),
            ));
        }
        if blocks.contains(&0) {
            return Err(OrbitError::InvalidLevi(format!(
                "block sizes must be positive: {blocks:?}"
            )));
        }
        Ok(LeviType { blocks })
    }

    pub(crate) fn new_unchecked(blocks: Vec<usize>) -> Self {
        LeviType { blocks }
    }

    /// G itself, a single block of size n.
    pub fn whole(n: usize) -> Self {
        LeviType { blocks: vec![n] }
    }

    /// The diagonal torus, n blocks of size 1.
    pub fn torus(n: usize) -> Self {
        LeviType { blocks: vec![1; n] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Number of linear blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Half-open coordinate ranges (0-based) of the blocks.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|&b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }

    /// Every composition of n, coarsest first within each length.
    pub fn compositions(n: usize) -> Vec<LeviType> {
        if n == 0 {
            return Vec::new();
        }
        let mut out: Vec<LeviType> = (0..1u64 << (n - 1))
            .map(|mask| {
                let mut blocks = Vec::new();
                let mut size = 1;
                for i in 0..n - 1 {
                    if mask >> i & 1 == 1 {
                        blocks.push(size);
                        size = 1;
                    } else {
                        size += 1;
                    }
                }
                blocks.push(size);
                LeviType { blocks }
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.blocks.cmp(&a.blocks)));
        out
    }

    /// True when every block boundary of `coarser` is a boundary of `self`.
    pub fn refines(&self, coarser: &LeviType) -> bool {
        if self.rank() != coarser.rank() {
            return false;
        }
        let mine = self.boundaries();
        coarser.boundaries().iter().all(|b| mine.contains(b))
    }

    fn boundaries(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, &b| {
                *acc += b;
                Some(*acc)
            })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for LeviType {
    type Error = OrbitError;

    fn try_from(blocks: Vec<usize>) -> Result<Self, Self::Error> {
        LeviType::new(blocks)
    }
}

impl From<LeviType> for Vec<usize> {
    fn from(l: LeviType) -> Self {
        l.blocks
    }
}

impl std::fmt::Display for LeviType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_of_four() {
        let all = LeviType::compositions(4);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].blocks(), &[4]);
        assert_eq!(all.last().unwrap().blocks(), &[1, 1, 1, 1]);
    }

    #[test]
    fn refinement() {
        let b = LeviType::torus(4);
        let p22 = LeviType::new(vec![2, 2]).unwrap();
        let p13 = LeviType::new(vec![1, 3]).unwrap();
        assert!(b.refines(&p22));
        assert!(p22.refines(&LeviType::whole(4)));
        assert!(!p22.refines(&p13));
        assert!(p22.refines(&p22));
    }

    #[test]
    fn json_shape() {
        let l = LeviType::new(vec![2, 1]).unwrap();
        assert_eq!(serde_json::to_string(&l).unwrap(), "[2,1]");
        assert!(serde_json::from_str::<LeviType>("[0,1]").is_err());
    }
}
