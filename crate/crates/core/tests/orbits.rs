//! Orbit combinatorics against independent oracles: Jordan types from exact
//! matrix ranks, stabilizers from S_n, and class counts from a generating
//! function.

use nilzeta::orbits::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Matrix = Vec<Vec<BigRational>>;

fn rank(mut m: Matrix) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
fn jordan_type(x: &Matrix) -> Partition {
    let n = x.len();
    let mut ranks = vec![n];
    let mut power = x.clone();
    while *ranks.last().unwrap() > 0 {
        ranks.push(rank(power.clone()));
        power = mat_mul(&power, x);
    }
    // Blocks of size >= k: rank(X^(k-1)) - rank(X^k).
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, &count) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, count - next));
    }
    Partition::from_unsorted(parts)
}

/// Block-diagonal nilpotent of the given types plus a random element of
/// the nilradical of the standard parabolic.
fn richardson_sample(levi: &LeviType, orbits: &[Partition], rng: &mut ChaCha8Rng) -> Matrix {
    let n = levi.rank();
    let mut x = vec![vec![BigRational::zero(); n]; n];
    let ranges = levi.ranges();
    for (r, o) in ranges.iter().zip(orbits) {
        let mut start = r.start;
        for &part in o.parts() {
            for i in start..start + part - 1 {
                x[i][i + 1] = BigRational::one();
            }
            start += part;
        }
    }
    for (bi, r) in ranges.iter().enumerate() {
        for later in &ranges[bi + 1..] {
            for i in r.clone() {
                for j in later.clone() {
                    let v = rng.gen_range(1i64..=1000) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    x[i][j] = BigRational::from_integer(BigInt::from(v));
                }
            }
        }
    }
    x
}

fn orbit_tuples(levi: &LeviType) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for &b in levi.blocks() {
        let mut next = Vec::new();
        for prefix in &out {
            for p in Partition::all(b) {
                let mut v = prefix.clone();
                v.push(p);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[test]
fn induction_matches_rank_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=5 {
        for levi in LeviType::compositions(n) {
            for orbits in orbit_tuples(&levi) {
                let expected = induce(&levi, &orbits).unwrap();
                // Majority over five random perturbations.
                let mut votes = std::collections::HashMap::new();
                for _ in 0..5 {
                    *votes
                        .entry(jordan_type(&richardson_sample(&levi, &orbits, &mut rng)))
                        .or_insert(0) += 1;
                }
                let (winner, _) = votes.into_iter().max_by_key(|(_, c)| *c).unwrap();
                assert_eq!(winner, expected, "levi {levi} orbits {orbits:?}");
            }
        }
    }
}

#[test]
fn induction_in_stages() {
    for n in 1..=6 {
        for levi in LeviType::compositions(n) {
            let coarser: Vec<LeviType> = LeviType::compositions(n)
                .into_iter()
                .filter(|l| levi.refines(l))
                .collect();
            for orbits in orbit_tuples(&levi) {
                let direct = induce(&levi, &orbits).unwrap();
                for l in &coarser {
                    let mut staged = Vec::new();
                    let mut k = 0;
                    for &size in l.blocks() {
                        let (mut filled, mut sub_blocks, mut sub_orbits) =
                            (0, Vec::new(), Vec::new());
                        while filled < size {
                            filled += levi.blocks()[k];
                            sub_blocks.push(levi.blocks()[k]);
                            sub_orbits.push(orbits[k].clone());
                            k += 1;
                        }
                        staged.push(
                            induce(&LeviType::new(sub_blocks).unwrap(), &sub_orbits).unwrap(),
                        );
                    }
                    assert_eq!(induce(l, &staged).unwrap(), direct);
                }
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

#[test]
fn stabilizer_matches_exhaustive_count() {
    for n in 1..=4 {
        let perms = permutations(n);
        for target in Partition::all(n) {
            for class in enumerate_classes(&target) {
                let ranges = class.levi.ranges();
                let block_of: Vec<usize> = (0..n)
                    .map(|i| ranges.iter().position(|r| r.contains(&i)).unwrap())
                    .collect();
                let count = perms
                    .iter()
                    .filter(|w| {
                        ranges.iter().enumerate().all(|(b, r)| {
                            let image = block_of[w[r.start]];
                            r.clone().all(|i| block_of[w[i]] == image)
                                && ranges[image].len() == r.len()
                                && class.orbits[image] == class.orbits[b]
                        })
                    })
                    .count();
                let levi_order: usize = class
                    .levi
                    .blocks()
                    .iter()
                    .map(|&b| (1..=b).product::<usize>())
                    .product();
                assert_eq!(count % levi_order, 0);
                assert_eq!(
                    (count / levi_order) as u64,
                    class.stab_order,
                    "{target} {:?}",
                    class.orbits
                );
            }
        }
    }
}

#[test]
fn class_counts_match_euler_transform() {
    // Multisets of (block, orbit) pairs of total size n: the Euler transform
    // of the partition numbers.
    let max = 9;
    let p: Vec<u64> = (0..=max).map(|m| Partition::all(m).len() as u64).collect();
    let mut series = vec![0u64; max + 1];
    series[0] = 1;
    for m in 1..=max {
        for _ in 0..p[m] {
            for k in m..=max {
                series[k] += series[k - m];
            }
        }
    }
    for n in 1..=max {
        let total: usize = Partition::all(n)
            .iter()
            .map(|t| enumerate_classes(t).len())
            .sum();
        assert_eq!(total as u64, series[n], "n = {n}");
    }
}

#[test]
fn class_weights() {
    for n in 1..=7 {
        for target in Partition::all(n) {
            for class in enumerate_classes(&target) {
                let r = class.block_count();
                assert_eq!(class.r_factorial, (1..r as u64).product::<u64>());
                let expected = BigRational::new(
                    BigInt::from(class.epsilon) * BigInt::from(class.r_factorial),
                    BigInt::from(class.stab_order),
                );
                assert_eq!(class.weight, expected);
            }
        }
    }
}

#[test]
fn class_json_shape() {
    let classes = enumerate_classes(&"2,1".parse().unwrap());
    let v = serde_json::to_value(&classes[1]).unwrap();
    assert_eq!(v["levi"], serde_json::json!([2, 1]));
    assert_eq!(v["orbits"], serde_json::json!([[1, 1], [1]]));
    assert_eq!(v["weight"], serde_json::json!({"num": -1, "den": 1}));
}
