use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TruncationError;
use crate::orbits::LeviType;

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A standard parabolic of GL(n), i.e. a block-upper-triangular subgroup,
/// identified with the composition of its Levi type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StandardParabolic {
    levi: LeviType,
}

impl StandardParabolic {
    pub fn new(levi: LeviType) -> Self {
        StandardParabolic { levi }
    }

    pub fn from_blocks(blocks: Vec<usize>) -> Result<Self, TruncationError> {
        LeviType::new(blocks)
            .map(StandardParabolic::new)
            .map_err(|e| TruncationError::InvalidParabolic(e.to_string()))
    }

    /// G itself.
    pub fn whole(n: usize) -> Self {
        StandardParabolic::new(LeviType::whole(n))
    }

    /// The Borel subgroup B.
    pub fn borel(n: usize) -> Self {
        StandardParabolic::new(LeviType::torus(n))
    }

    /// The maximal parabolic of type (r, n - r), or G when r = n.
    pub fn extremal(n: usize, r: usize) -> Self {
        if r >= n {
            StandardParabolic::whole(n)
        } else {
            StandardParabolic::new(LeviType::new_unchecked(vec![r, n - r]))
        }
    }

    pub fn levi(&self) -> &LeviType {
        &self.levi
    }

    pub fn blocks(&self) -> &[usize] {
        self.levi.blocks()
    }

    pub fn n(&self) -> usize {
        self.levi.rank()
    }

    /// Number of blocks, dim a_P.
    pub fn len(&self) -> usize {
        self.levi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levi.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.len() == 1
    }

    /// Extremal: G or maximal.
    pub fn is_extremal(&self) -> bool {
        self.len() <= 2
    }

    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        self.levi.ranges()
    }

    /// P ⊆ Q.
    pub fn is_contained_in(&self, q: &StandardParabolic) -> bool {
        self.levi.refines(&q.levi)
    }

    pub(crate) fn check_within(&self, q: &StandardParabolic) -> Result<(), TruncationError> {
        if self.is_contained_in(q) {
            Ok(())
        } else {
            Err(TruncationError::NotRefinement {
                p: self.to_string(),
                q: q.to_string(),
            })
        }
    }

    /// eps_P^Q = (-1)^(dim a_P - dim a_Q).
    pub fn epsilon(&self, q: &StandardParabolic) -> i64 {
        if (self.len() - q.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All standard Q with self ⊆ Q, self first.
    pub fn coarsenings(&self) -> Vec<StandardParabolic> {
        let b = self.blocks();
        let r = b.len();
        let mut out = Vec::with_capacity(1 << (r - 1));
        for mask in 0..1u64 << (r - 1) {
            // Bit i set: merge block i with block i + 1.
            let mut blocks = vec![b[0]];
            for i in 1..r {
                if mask >> (i - 1) & 1 == 1 {
                    *blocks.last_mut().expect("nonempty") += b[i];
                } else {
                    blocks.push(b[i]);
                }
            }
            out.push(StandardParabolic::new(LeviType::new_unchecked(blocks)));
        }
        out
    }

    /// All standard P with P ⊆ self, self first.
    pub fn refinements(&self) -> Vec<StandardParabolic> {
        let per_block: Vec<Vec<LeviType>> = self
            .blocks()
            .iter()
            .map(|&m| LeviType::compositions(m))
            .collect();
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for options in &per_block {
            let mut next = Vec::with_capacity(out.len() * options.len());
            for prefix in &out {
                for c in options {
                    let mut v = prefix.clone();
                    v.extend_from_slice(c.blocks());
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|b| StandardParabolic::new(LeviType::new_unchecked(b)))
            .collect()
    }

    /// For each block of `q`, the P-blocks it contains.
    pub(crate) fn blocks_by_q(&self, q: &StandardParabolic) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(q.len());
        let mut it = self.blocks().iter().copied();
        for &qb in q.blocks() {
            let mut filled = 0;
            let mut sub = Vec::new();
            while filled < qb {
                let p = it.next().expect("P refines Q");
                filled += p;
                sub.push(p);
            }
            out.push(sub);
        }
        out
    }

    /// Δ_P^Q as functionals on a_0 (each root composed with the projection
    /// to a_P): 1/n_j on block j and -1/n_{j+1} on block j + 1, for adjacent
    /// P-blocks inside one Q-block.
    pub fn simple_roots(
        &self,
        q: &StandardParabolic,
    ) -> Result<Vec<Vec<BigRational>>, TruncationError> {
        self.check_within(q)?;
        let n = self.n();
        let ranges = self.ranges();
        let mut out = Vec::new();
        let mut start = 0;
        for sub in self.blocks_by_q(q) {
            for j in start..start + sub.len() - 1 {
                let mut v = vec![BigRational::zero(); n];
                let (a, b) = (&ranges[j], &ranges[j + 1]);
                for i in a.clone() {
                    v[i] = frac(1, a.len() as i64);
                }
                for i in b.clone() {
                    v[i] = -frac(1, b.len() as i64);
                }
                out.push(v);
            }
            start += sub.len();
        }
        Ok(out)
    }

    /// Δ̂_P^Q: for each P-boundary at m inside a Q-block [s, e), the weight
    /// ϖ_{m-s} - ((m-s)/(e-s)) ϖ_{e-s} of that block.
    pub fn simple_weights(
        &self,
        q: &StandardParabolic,
    ) -> Result<Vec<Vec<BigRational>>, TruncationError> {
        self.check_within(q)?;
        let n = self.n();
        let mut out = Vec::new();
        for (qr, sub) in q.ranges().into_iter().zip(self.blocks_by_q(q)) {
            let (s, e) = (qr.start, qr.end);
            let mut m = s;
            for &p in &sub[..sub.len() - 1] {
                m += p;
                let share = frac((m - s) as i64, (e - s) as i64);
                let mut v = vec![BigRational::zero(); n];
                for (i, vi) in v.iter_mut().enumerate().take(e).skip(s) {
                    *vi = if i < m {
                        BigRational::from_integer(1.into()) - &share
                    } else {
                        -share.clone()
                    };
                }
                out.push(v);
            }
        }
        Ok(out)
    }

    /// ρ_P^Q, half the sum of the roots e_i - e_j (i < j) lying in the same
    /// Q-block and in different P-blocks.
    pub fn rho(&self, q: &StandardParabolic) -> Result<Vec<BigRational>, TruncationError> {
        self.check_within(q)?;
        let n = self.n();
        let p_block = block_index(self.blocks());
        let q_block = block_index(q.blocks());
        let mut v = vec![BigRational::zero(); n];
        for i in 0..n {
            for j in i + 1..n {
                if q_block[i] == q_block[j] && p_block[i] != p_block[j] {
                    v[i] += frac(1, 2);
                    v[j] -= frac(1, 2);
                }
            }
        }
        Ok(v)
    }

    /// ϖ_P = (1/n_1) ϖ_{n_1}.
    pub fn varpi(&self) -> Vec<BigRational> {
        let n1 = self.blocks()[0];
        (0..self.n())
            .map(|i| {
                if i < n1 {
                    frac(1, n1 as i64)
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    }
}

/// Π = {ϖ_1, ..., ϖ_n}, ϖ_r = (1, ..., 1, 0, ..., 0) with r ones.
pub fn pi_weights(n: usize) -> Vec<Vec<BigRational>> {
    (1..=n)
        .map(|r| {
            (0..n)
                .map(|i| BigRational::from_integer(BigInt::from((i < r) as i64)))
                .collect()
        })
        .collect()
}

/// Block number of each coordinate.
pub(crate) fn block_index(blocks: &[usize]) -> Vec<usize> {
    blocks
        .iter()
        .enumerate()
        .flat_map(|(j, &b)| std::iter::repeat_n(j, b))
        .collect()
}

impl fmt::Display for StandardParabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.levi.fmt(f)
    }
}

/// A semi-standard parabolic (one containing the diagonal torus), given by
/// the ordered blocks of coordinates it stabilizes. Equivalently a pair
/// (P, w) with P standard and w in W_P\W.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiStandardParabolic {
    /// 0-based coordinate indices, ascending within each block.
    blocks: Vec<Vec<usize>>,
}

impl SemiStandardParabolic {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self, TruncationError> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(TruncationError::InvalidParabolic("empty block".into()));
            }
            b.sort_unstable();
            for &i in b.iter() {
                if i >= n || seen[i] {
                    return Err(TruncationError::InvalidParabolic(format!(
                        "blocks {blocks:?} do not partition 0..{n}"
                    )));
                }
                seen[i] = true;
            }
        }
        Ok(SemiStandardParabolic { blocks })
    }

    pub(crate) fn from_sorted_blocks(blocks: Vec<Vec<usize>>) -> Self {
        SemiStandardParabolic { blocks }
    }

    pub fn from_standard(p: &StandardParabolic) -> Self {
        SemiStandardParabolic {
            blocks: p.ranges().into_iter().map(|r| r.collect()).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// The standard parabolic of the same type.
    pub fn standard_type(&self) -> StandardParabolic {
        StandardParabolic::new(LeviType::new_unchecked(
            self.blocks.iter().map(Vec::len).collect(),
        ))
    }

    /// Concatenated blocks: position i of the arranged vector reads
    /// coordinate `arrangement()[i]`.
    pub fn arrangement(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn is_standard(&self) -> bool {
        self.arrangement().iter().enumerate().all(|(i, &c)| i == c)
    }
}

impl fmt::Display for SemiStandardParabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, b) in self.blocks.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            let items: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        f.write_str(")")
    }
}

/// Serialized 1-based, `[[1],[2]]`.
impl Serialize for SemiStandardParabolic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|i| i + 1).collect())
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SemiStandardParabolic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Vec<usize>>::deserialize(d)?;
        let blocks = v
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|i| {
                        i.checked_sub(1)
                            .ok_or_else(|| serde::de::Error::custom("indices are 1-based"))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SemiStandardParabolic::new(blocks).map_err(serde::de::Error::custom)
    }
}

/// Ordered set partitions of 0..m with the given block sizes, i.e. the
/// cosets W_P\W for P of that type.
pub fn ordered_partitions_with_sizes(sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let m: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(sizes.len());
    fill(sizes, (1u32 << m) - 1, &mut current, &mut out);
    out
}

fn fill(sizes: &[usize], free: u32, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    let Some((&k, rest)) = sizes.split_first() else {
        out.push(current.clone());
        return;
    };
    let idx: Vec<usize> = (0..32).filter(|i| free >> i & 1 == 1).collect();
    for combo in combinations(&idx, k) {
        let mask = combo.iter().fold(0u32, |acc, &i| acc | 1 << i);
        current.push(combo);
        fill(rest, free & !mask, current, out);
        current.pop();
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut tail in combinations(&items[i + 1..], k - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}
