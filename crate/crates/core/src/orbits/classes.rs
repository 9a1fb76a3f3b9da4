use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{LeviType, OrbitError, Partition};
use crate::rational::RationalJson;

/// A W-conjugacy class of pairs (M, o') whose induced orbit is a fixed
/// target, with its weight eps_M * (r-1)! / |W(M, o')|.
///
/// Blocks are stored in canonical order: (size, partition) descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviOrbitClass {
    pub levi: LeviType,
    #[serde(with = "partition_lists")]
    pub orbits: Vec<Partition>,
    pub epsilon: i8,
    pub r_factorial: u64,
    pub stab_order: u64,
    #[serde(with = "crate::rational::serde_ratio")]
    pub weight: BigRational,
}

impl LeviOrbitClass {
    /// Builds the class of a multiset of (block, orbit) pairs.
    pub fn from_blocks(mut orbits: Vec<Partition>) -> Self {
        orbits.sort_by(|a, b| block_key_cmp(b, a));
        let r = orbits.len();
        let epsilon: i8 = if r % 2 == 1 { 1 } else { -1 };
        let r_factorial = factorial(r.saturating_sub(1));
        let stab_order = orbits
            .chunk_by(|a, b| a == b)
            .map(|run| factorial(run.len()))
            .product();
        let weight = BigRational::new(
            BigInt::from(epsilon) * BigInt::from(r_factorial),
            BigInt::from(stab_order),
        );
        let levi = LeviType::new_unchecked(orbits.iter().map(Partition::size).collect());
        LeviOrbitClass {
            levi,
            orbits,
            epsilon,
            r_factorial,
            stab_order,
            weight,
        }
    }

    pub fn rank(&self) -> usize {
        self.levi.rank()
    }

    /// Number of linear blocks r.
    pub fn block_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn induced(&self) -> Partition {
        self.orbits
            .iter()
            .fold(Partition::empty(), |acc, o| acc.induce_with(o))
    }

    pub fn weight_json(&self) -> RationalJson {
        RationalJson::from(&self.weight)
    }
}

/// Orbits of a class are written as nested integer arrays, `[[1,1],[1]]`.
mod partition_lists {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::orbits::Partition;

    pub fn serialize<S: Serializer>(orbits: &[Partition], s: S) -> Result<S::Ok, S::Error> {
        let lists: Vec<&[usize]> = orbits.iter().map(Partition::parts).collect();
        lists.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Partition>, D::Error> {
        let lists = Vec::<Vec<usize>>::deserialize(d)?;
        lists
            .into_iter()
            .map(|p| Partition::new(p).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// (size, partition) comparison used to order blocks; larger partitions in
/// reverse-lexicographic order compare greater.
pub fn block_key_cmp(a: &Partition, b: &Partition) -> Ordering {
    a.size()
        .cmp(&b.size())
        .then_with(|| a.parts().cmp(b.parts()))
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Induced orbit I_M^G(o') for a Levi of type `levi` and block orbits
/// `orbits`: the componentwise sum of the block partitions.
pub fn induce(levi: &LeviType, orbits: &[Partition]) -> Result<Partition, OrbitError> {
    if levi.blocks().len() != orbits.len() {
        return Err(OrbitError::BlockCountMismatch {
            blocks: levi.blocks().len(),
            orbits: orbits.len(),
        });
    }
    for (i, (&size, orbit)) in levi.blocks().iter().zip(orbits).enumerate() {
        if orbit.size() != size {
            return Err(OrbitError::SizeMismatch {
                block: i,
                expected: size,
                found: orbit.size(),
            });
        }
    }
    Ok(orbits
        .iter()
        .fold(Partition::empty(), |acc, o| acc.induce_with(o)))
}

/// Representatives of L(o)/W for the target orbit, weights populated.
///
/// Classes are listed with their block lists in descending lexicographic
/// order, so the class (G, o) always comes first.
pub fn enumerate_classes(target: &Partition) -> Vec<LeviOrbitClass> {
    let n = target.size();
    if n == 0 {
        return Vec::new();
    }
    let candidates: Vec<Partition> = {
        let mut all: Vec<Partition> = (1..=n).flat_map(Partition::all).collect();
        all.sort_by(|a, b| block_key_cmp(b, a));
        all
    };
    let mut out = Vec::new();
    let mut stack = Vec::new();
    search(target.parts(), &candidates, 0, &mut stack, &mut out);
    out
}

/// Depth-first search over multisets of blocks, choosing candidates in
/// non-increasing key order starting at `from`.
fn search(
    remaining: &[usize],
    candidates: &[Partition],
    from: usize,
    stack: &mut Vec<Partition>,
    out: &mut Vec<LeviOrbitClass>,
) {
    if remaining.is_empty() {
        if !stack.is_empty() {
            out.push(LeviOrbitClass::from_blocks(stack.clone()));
        }
        return;
    }
    let left: usize = remaining.iter().sum();
    for (idx, lambda) in candidates.iter().enumerate().skip(from) {
        if lambda.size() > left || !lambda.fits_under(remaining) {
            continue;
        }
        let rest: Vec<usize> = remaining
            .iter()
            .enumerate()
            .map(|(k, &m)| m - lambda.part(k))
            .collect();
        // A sum of partitions is weakly decreasing, so the remainder must be.
        if !rest.windows(2).all(|w| w[0] >= w[1]) {
            continue;
        }
        let trimmed: Vec<usize> = rest.into_iter().filter(|&m| m > 0).collect();
        stack.push(lambda.clone());
        search(&trimmed, candidates, idx, stack, out);
        stack.pop();
    }
}

/// Stirling number of the second kind S(n, k).
pub fn stirling2(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}

/// Checks sum_k S(N,k) (-1)^(k-1) (k-1)! = 0, the identity that turns
/// the alternating Levi sum into (r-1)!.
pub fn stirling_identity_check(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut total = BigInt::zero();
    let mut fact = BigInt::one();
    for k in 1..=n {
        if k > 1 {
            fact *= BigInt::from(k - 1);
        }
        let term = BigInt::from(stirling2(n, k)) * &fact;
        if k % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total.is_zero()
}
