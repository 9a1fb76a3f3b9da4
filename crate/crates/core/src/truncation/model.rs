use std::collections::HashSet;
use std::ops::Range;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::parabolic::{ordered_partitions_with_sizes, SemiStandardParabolic, StandardParabolic};
use super::point::{ConePoint, Lattice};
use super::TruncationError;
use crate::orbits::LeviType;

/// Largest n for which the Weyl tables are built.
pub const MAX_RANK: usize = 7;

/// Whether deg_i^Q ranges over P = Q (pairing 0) as well as P ⊊ Q.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DegreeRange {
    #[default]
    Inclusive,
    Exclusive,
}

/// An ordered set partition of 0..m: the pair (P, w) with P of type
/// `sizes` and w the minimal coset representative `arrangement`.
#[derive(Clone, Debug)]
struct Pair {
    sizes: Vec<usize>,
    arrangement: Vec<usize>,
}

impl Pair {
    fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut start = 0;
        for &s in &self.sizes {
            out.push(self.arrangement[start..start + s].to_vec());
            start += s;
        }
        out
    }

    fn semistandard(&self) -> SemiStandardParabolic {
        SemiStandardParabolic::from_sorted_blocks(self.blocks())
    }
}

/// Root-data tables for GL(n): every ordered set partition of 0..m for
/// m <= n. Built once per n and shared.
#[derive(Debug)]
pub struct WeylModel {
    n: usize,
    osps: Vec<Vec<Pair>>,
}

static MODELS: [OnceLock<WeylModel>; MAX_RANK + 1] = [const { OnceLock::new() }; MAX_RANK + 1];

impl WeylModel {
    pub fn get(n: usize) -> Result<&'static WeylModel, TruncationError> {
        if n == 0 || n > MAX_RANK {
            return Err(TruncationError::UnsupportedRank { n, max: MAX_RANK });
        }
        Ok(MODELS[n].get_or_init(|| WeylModel::build(n)))
    }

    fn build(n: usize) -> WeylModel {
        let osps = (0..=n)
            .map(|m| {
                LeviType::compositions(m)
                    .into_iter()
                    .flat_map(|c| {
                        let sizes = c.blocks().to_vec();
                        ordered_partitions_with_sizes(&sizes)
                            .into_iter()
                            .map(move |blocks| Pair {
                                sizes: sizes.clone(),
                                arrangement: blocks.into_iter().flatten().collect(),
                            })
                    })
                    .collect()
            })
            .collect();
        WeylModel { n, osps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of pairs (P, w), w in W_P\W, over all standard P.
    pub fn pair_count(&self) -> usize {
        self.osps[self.n].len()
    }

    /// Every (P, w) with P ⊆ Q and w in W_P\W_Q, as semi-standard parabolics.
    pub fn pairs_within(&self, q: &StandardParabolic) -> Vec<SemiStandardParabolic> {
        self.pairs(q.blocks(), None)
            .iter()
            .map(Pair::semistandard)
            .collect()
    }

    /// Minimal representatives of W_P\W_Q as semi-standard parabolics.
    pub fn cosets(
        &self,
        p: &StandardParabolic,
        q: &StandardParabolic,
    ) -> Result<Vec<SemiStandardParabolic>, TruncationError> {
        p.check_within(q)?;
        Ok(self
            .pairs(q.blocks(), Some(p.blocks()))
            .iter()
            .map(Pair::semistandard)
            .collect())
    }

    /// Pairs inside the standard Q of type `q`; with `p` set, only those of
    /// type p.
    fn pairs(&self, q: &[usize], p: Option<&[usize]>) -> Vec<Pair> {
        let groups = p.map(|p| nest(p, q));
        let mut out = vec![Pair {
            sizes: Vec::new(),
            arrangement: Vec::new(),
        }];
        let mut offset = 0;
        for (qi, &len) in q.iter().enumerate() {
            let want = groups
                .as_ref()
                .map(|g| &p.expect("set with groups")[g[qi].clone()]);
            let options: Vec<&Pair> = self.osps[len]
                .iter()
                .filter(|o| want.is_none_or(|w| o.sizes == *w))
                .collect();
            let mut next = Vec::with_capacity(out.len() * options.len());
            for prefix in &out {
                for o in &options {
                    let mut pair = prefix.clone();
                    pair.sizes.extend_from_slice(&o.sizes);
                    pair.arrangement
                        .extend(o.arrangement.iter().map(|i| i + offset));
                    next.push(pair);
                }
            }
            out = next;
            offset += len;
        }
        out
    }

    /// 2 deg^Q numerator for an arranged integer vector: per Q-block
    /// maximum of the ρ pairing.
    fn degree_num(&self, q: &[usize], x: &[i128], range: DegreeRange) -> Option<i128> {
        let mut best = Vec::with_capacity(q.len());
        let mut start = 0;
        for &len in q {
            let y = &x[start..start + len];
            let inclusive = self
                .block_best(y, true)
                .expect("inclusive range is nonempty");
            let exclusive = self.block_best(y, false);
            best.push((inclusive, exclusive));
            start += len;
        }
        let total: i128 = best.iter().map(|b| b.0).sum();
        match range {
            DegreeRange::Inclusive => Some(total),
            // At least one Q-block must be split.
            DegreeRange::Exclusive => best
                .iter()
                .filter_map(|&(inc, exc)| exc.map(|e| total - inc + e))
                .max(),
        }
    }

    fn block_best(&self, y: &[i128], include_trivial: bool) -> Option<i128> {
        self.osps[y.len()]
            .iter()
            .filter(|o| include_trivial || o.sizes.len() > 1)
            .map(|o| {
                let z = arrange(y, &o.arrangement);
                rho_num(&o.sizes, &block_sums(&o.sizes, &z))
            })
            .max()
    }

    fn semistable(&self, p: &[usize], x: &[i128]) -> bool {
        self.degree_num(p, x, DegreeRange::Inclusive)
            .expect("inclusive")
            <= 0
    }
}

/// For each Q-block, the range of P-block indices it contains.
fn nest(p: &[usize], q: &[usize]) -> Vec<Range<usize>> {
    let mut out = Vec::with_capacity(q.len());
    let mut j = 0;
    for &len in q {
        let start = j;
        let mut filled = 0;
        while filled < len {
            filled += p[j];
            j += 1;
        }
        out.push(start..j);
    }
    out
}

fn arrange(v: &[i128], arrangement: &[usize]) -> Vec<i128> {
    arrangement.iter().map(|&i| v[i]).collect()
}

fn block_sums(sizes: &[usize], x: &[i128]) -> Vec<i128> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &s in sizes {
        out.push(x[start..start + s].iter().sum());
        start += s;
    }
    out
}

/// 2<ρ, x> for a single group of blocks: Σ_{j<k} (n_k S_j - n_j S_k).
fn rho_num(sizes: &[usize], sums: &[i128]) -> i128 {
    let mut total = 0;
    for j in 0..sizes.len() {
        for k in j + 1..sizes.len() {
            total += sizes[k] as i128 * sums[j] - sizes[j] as i128 * sums[k];
        }
    }
    total
}

/// Integer data of P ⊆ Q at an arranged vector.
struct Nested {
    sizes: Vec<usize>,
    sums: Vec<i128>,
    groups: Vec<Range<usize>>,
}

impl Nested {
    fn new(p: &[usize], q: &[usize], x: &[i128]) -> Nested {
        Nested {
            sizes: p.to_vec(),
            sums: block_sums(p, x),
            groups: nest(p, q),
        }
    }

    /// <α, x> > 0 for α in Δ_P^Q.
    fn tau(&self) -> bool {
        self.groups.iter().all(|g| {
            (g.start..g.end.saturating_sub(1)).all(|j| {
                self.sums[j] * self.sizes[j + 1] as i128 > self.sums[j + 1] * self.sizes[j] as i128
            })
        })
    }

    /// Scaled <ϖ, x> for ϖ in Δ̂_P^Q, one per internal P-boundary.
    fn weight_pairings(&self) -> Vec<i128> {
        let mut out = Vec::new();
        for g in &self.groups {
            let len: usize = self.sizes[g.clone()].iter().sum();
            let total: i128 = self.sums[g.clone()].iter().sum();
            let (mut prefix, mut prefix_len) = (0i128, 0usize);
            for j in g.start..g.end - 1 {
                prefix += self.sums[j];
                prefix_len += self.sizes[j];
                out.push(prefix * len as i128 - prefix_len as i128 * total);
            }
        }
        out
    }

    fn tau_hat(&self) -> bool {
        self.weight_pairings().iter().all(|&w| w > 0)
    }

    /// Leading P-block sum of each Q-block is <= 0.
    fn chi(&self) -> bool {
        self.groups.iter().all(|g| self.sums[g.start] <= 0)
    }
}

fn check_dim(n: usize, h: &ConePoint) -> Result<(), TruncationError> {
    if h.dim() != n {
        return Err(TruncationError::DimensionMismatch {
            expected: n,
            found: h.dim(),
        });
    }
    Ok(())
}

fn setup(
    p: &StandardParabolic,
    q: &StandardParabolic,
    h: &ConePoint,
) -> Result<Lattice, TruncationError> {
    p.check_within(q)?;
    check_dim(q.n(), h)?;
    h.lattice()
}

/// τ_P^Q(H).
pub fn indicator_tau(
    p: &StandardParabolic,
    q: &StandardParabolic,
    h: &ConePoint,
) -> Result<bool, TruncationError> {
    let l = setup(p, q, h)?;
    Ok(Nested::new(p.blocks(), q.blocks(), &l.v).tau())
}

/// τ̂_P^Q(H).
pub fn indicator_tau_hat(
    p: &StandardParabolic,
    q: &StandardParabolic,
    h: &ConePoint,
) -> Result<bool, TruncationError> {
    let l = setup(p, q, h)?;
    Ok(Nested::new(p.blocks(), q.blocks(), &l.v).tau_hat())
}

/// χ_P^Q(H): in each block of Q, the coordinates of the leading block of P
/// sum to at most 0. For Q = G this is <ϖ_P, H> <= 0.
pub fn indicator_chi(
    p: &StandardParabolic,
    q: &StandardParabolic,
    h: &ConePoint,
) -> Result<bool, TruncationError> {
    let l = setup(p, q, h)?;
    Ok(Nested::new(p.blocks(), q.blocks(), &l.v).chi())
}

/// σ_{P1}^{P2}(H) = Σ_{P ⊇ P2} ε_{P2}^P τ_{P1}^P(H) τ̂_P(H), returned as the
/// raw alternating sum.
pub fn indicator_sigma(
    p1: &StandardParabolic,
    p2: &StandardParabolic,
    h: &ConePoint,
) -> Result<i64, TruncationError> {
    let l = setup(p1, p2, h)?;
    let g = StandardParabolic::whole(p2.n());
    let mut total = 0;
    for p in p2.coarsenings() {
        let tau = Nested::new(p1.blocks(), p.blocks(), &l.v).tau();
        if tau && Nested::new(p.blocks(), g.blocks(), &l.v).tau_hat() {
            total += p2.epsilon(&p);
        }
    }
    Ok(total)
}

fn degree_value(num: i128, denom: &BigInt) -> BigRational {
    BigRational::new(BigInt::from(num), denom * 2)
}

/// deg_i^Q(H), the maximum of <ρ_P^Q, H_P(wH)> over P ⊆ Q and w in
/// W_P\W_Q, P = Q included.
pub fn degree_instability(
    q: &StandardParabolic,
    h: &ConePoint,
) -> Result<BigRational, TruncationError> {
    Ok(
        degree_instability_with(q, h, DegreeRange::Inclusive)?
            .expect("inclusive range is nonempty"),
    )
}

/// deg_i^Q(H) with the pair range chosen explicitly. The exclusive range is
/// empty for the Borel.
pub fn degree_instability_with(
    q: &StandardParabolic,
    h: &ConePoint,
    range: DegreeRange,
) -> Result<Option<BigRational>, TruncationError> {
    check_dim(q.n(), h)?;
    let model = WeylModel::get(q.n())?;
    let l = h.lattice()?;
    Ok(model
        .degree_num(q.blocks(), &l.v, range)
        .map(|d| degree_value(d, &l.denom)))
}

/// F^P(H) = [deg_i^P(H) <= 0].
pub fn indicator_f(p: &StandardParabolic, h: &ConePoint) -> Result<bool, TruncationError> {
    Ok(degree_instability(p, h)? <= BigRational::from_integer(0.into()))
}

/// The unique canonical pair of H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalPair {
    pub parabolic: StandardParabolic,
    pub blocks: SemiStandardParabolic,
    /// w as an arrangement: (wH)_i = H_{weyl[i]}, 0-based.
    pub weyl: Vec<usize>,
    #[serde(with = "crate::rational::serde_ratio")]
    pub degree: BigRational,
}

/// Maximal maximizers of the ρ pairing, by brute force over all (P, w).
fn maximal_maximizers(model: &WeylModel, v: &[i128]) -> (i128, Vec<Pair>) {
    let all = &model.osps[model.n];
    let values: Vec<i128> = all
        .iter()
        .map(|pair| {
            rho_num(
                &pair.sizes,
                &block_sums(&pair.sizes, &arrange(v, &pair.arrangement)),
            )
        })
        .collect();
    let best = *values.iter().max().expect("at least one pair");
    let maximizers: Vec<&Pair> = all
        .iter()
        .zip(&values)
        .filter(|(_, &d)| d == best)
        .map(|(p, _)| p)
        .collect();
    let keys: HashSet<Vec<Vec<usize>>> = maximizers.iter().map(|p| p.blocks()).collect();
    let maximal = maximizers
        .into_iter()
        .filter(|p| {
            proper_coarsenings(&p.blocks())
                .iter()
                .all(|c| !keys.contains(c))
        })
        .cloned()
        .collect();
    (best, maximal)
}

/// Merges of runs of consecutive blocks, excluding the pair itself.
fn proper_coarsenings(blocks: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let r = blocks.len();
    let mut out = Vec::new();
    for mask in 1..1u64 << (r - 1) {
        let mut merged: Vec<Vec<usize>> = vec![blocks[0].clone()];
        for i in 1..r {
            if mask >> (i - 1) & 1 == 1 {
                let last = merged.last_mut().expect("nonempty");
                last.extend_from_slice(&blocks[i]);
                last.sort_unstable();
            } else {
                merged.push(blocks[i].clone());
            }
        }
        out.push(merged);
    }
    out
}

/// The canonical pair: maximizes <ρ_P, H_P(wH)> and is maximal among the
/// maximizers. Both characterizing conditions (semi-stability of the Levi
/// part and positivity on Δ_P) are re-checked before returning.
pub fn canonical_pair(h: &ConePoint) -> Result<CanonicalPair, TruncationError> {
    let model = WeylModel::get(h.dim())?;
    let l = h.lattice()?;
    let (best, maximal) = maximal_maximizers(model, &l.v);
    if maximal.len() != 1 {
        return Err(TruncationError::WallTie {
            candidates: maximal
                .iter()
                .map(|p| p.semistandard().to_string())
                .collect(),
        });
    }
    let pair = &maximal[0];
    let x = arrange(&l.v, &pair.arrangement);
    let ok = model.semistable(&pair.sizes, &x) && Nested::new(&pair.sizes, &[model.n], &x).tau();
    if !ok {
        return Err(TruncationError::Inconsistency(format!(
            "canonical pair {} fails its characterization",
            pair.semistandard()
        )));
    }
    Ok(CanonicalPair {
        parabolic: StandardParabolic::from_blocks(pair.sizes.clone())?,
        blocks: pair.semistandard(),
        weyl: pair.arrangement.clone(),
        degree: degree_value(best, &l.denom),
    })
}

/// Whether (P, w) satisfies both conditions characterizing canonical pairs.
pub fn is_canonical_by_conditions(
    blocks: &SemiStandardParabolic,
    h: &ConePoint,
) -> Result<bool, TruncationError> {
    check_dim(blocks.n(), h)?;
    let model = WeylModel::get(h.dim())?;
    let l = h.lattice()?;
    let sizes = blocks.standard_type().blocks().to_vec();
    let x = arrange(&l.v, &blocks.arrangement());
    Ok(model.semistable(&sizes, &x) && Nested::new(&sizes, &[model.n], &x).tau())
}

/// Every pair (P, w) meeting both characterizing conditions, by brute
/// force. Uniqueness of the canonical pair says this is a singleton.
pub fn pairs_meeting_conditions(
    h: &ConePoint,
) -> Result<Vec<SemiStandardParabolic>, TruncationError> {
    let model = WeylModel::get(h.dim())?;
    let l = h.lattice()?;
    Ok(model.osps[model.n]
        .iter()
        .filter(|pair| {
            let x = arrange(&l.v, &pair.arrangement);
            Nested::new(&pair.sizes, &[model.n], &x).tau() && model.semistable(&pair.sizes, &x)
        })
        .map(Pair::semistandard)
        .collect())
}

fn subsets_ok(block: &[usize], v: &[i128]) -> bool {
    let len = block.len();
    let total: i128 = block.iter().map(|&i| v[i]).sum();
    (1..(1u32 << len) - 1).all(|mask| {
        let (mut sum, mut size) = (0i128, 0i128);
        for (bit, &i) in block.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                sum += v[i];
                size += 1;
            }
        }
        sum * len as i128 - size * total <= 0
    })
}

/// Every semi-standard P' whose cone C_{P'} contains H: <ϖ, H> <= 0 for
/// ϖ in Δ̂_R^{P'} over all semi-standard R ⊆ P', and <α, H> > 0 on Δ_{P'}.
pub fn cone_members(h: &ConePoint) -> Result<Vec<SemiStandardParabolic>, TruncationError> {
    let model = WeylModel::get(h.dim())?;
    let l = h.lattice()?;
    Ok(model.osps[model.n]
        .iter()
        .filter(|pair| {
            let x = arrange(&l.v, &pair.arrangement);
            Nested::new(&pair.sizes, &[model.n], &x).tau()
                && pair.blocks().iter().all(|b| subsets_ok(b, &l.v))
        })
        .map(Pair::semistandard)
        .collect())
}

/// The cone of the partition of a_0 containing H.
pub fn cone_membership(h: &ConePoint) -> Result<SemiStandardParabolic, TruncationError> {
    let mut members = cone_members(h)?;
    if members.len() != 1 {
        return Err(TruncationError::Inconsistency(format!(
            "{} cones contain {h}",
            members.len()
        )));
    }
    Ok(members.pop().expect("one member"))
}

/// Both evaluations of E^Q at H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EReport {
    /// The sum over (P, w) of F^P τ_P^Q χ_P^Q.
    pub by_sum: i64,
    pub nonzero_terms: usize,
    /// Every extremal pairing <ϖ_P, H_P(wH)> <= 0, block by block.
    pub by_extremal: bool,
}

impl EReport {
    pub fn consistent(&self) -> bool {
        self.nonzero_terms <= 1 && (self.by_sum == 1) == self.by_extremal
    }
}

pub fn indicator_e_report(
    q: &StandardParabolic,
    h: &ConePoint,
) -> Result<EReport, TruncationError> {
    check_dim(q.n(), h)?;
    let model = WeylModel::get(q.n())?;
    let l = h.lattice()?;
    let mut nonzero = 0;
    for pair in model.pairs(q.blocks(), None) {
        let x = arrange(&l.v, &pair.arrangement);
        let nested = Nested::new(&pair.sizes, q.blocks(), &x);
        if nested.tau() && nested.chi() && model.semistable(&pair.sizes, &x) {
            nonzero += 1;
        }
    }
    // Extremal parabolics of GL(len) are G and the maximal ones; their
    // pairings over all w are the nonempty subset sums.
    let by_extremal = q.ranges().iter().all(|r| {
        let len = r.len();
        (1..1u32 << len).all(|mask| {
            let sum: i128 = r
                .clone()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, i)| l.v[i])
                .sum();
            sum <= 0
        })
    });
    Ok(EReport {
        by_sum: nonzero as i64,
        nonzero_terms: nonzero,
        by_extremal,
    })
}

/// E^Q(H), computed as the indicator sum and by the extremal criterion; any
/// disagreement is reported as an inconsistency.
pub fn indicator_e(q: &StandardParabolic, h: &ConePoint) -> Result<bool, TruncationError> {
    let report = indicator_e_report(q, h)?;
    if !report.consistent() {
        return Err(TruncationError::Inconsistency(format!(
            "E^{q} at {h}: sum {} over {} terms, extremal criterion {}",
            report.by_sum, report.nonzero_terms, report.by_extremal
        )));
    }
    Ok(report.by_extremal)
}

/// Σ_{P ∈ P(M)} τ̂_P(H) over the r! orderings of the blocks of M. Only the
/// block sums of H enter, so H may be given in a_0.
pub fn levi_sum_tau_hat(m: &LeviType, h: &ConePoint) -> Result<u64, TruncationError> {
    check_dim(m.rank(), h)?;
    let l = h.lattice()?;
    let n = m.rank() as i128;
    let sizes: Vec<i128> = m.blocks().iter().map(|&b| b as i128).collect();
    let sums = block_sums(m.blocks(), &l.v);
    let total: i128 = sums.iter().sum();
    let mut count = 0;
    for order in permutations(m.len()) {
        let (mut prefix, mut prefix_len) = (0i128, 0i128);
        let mut fires = true;
        for &b in &order[..order.len() - 1] {
            prefix += sums[b];
            prefix_len += sizes[b];
            let w = prefix * n - prefix_len * total;
            if w == 0 {
                return Err(TruncationError::OnWall(h.to_string()));
            }
            fires &= w > 0;
        }
        count += fires as u64;
    }
    Ok(count)
}

/// All permutations of 0..r in lexicographic order.
pub(crate) fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (1..r).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..r)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// Σ_{P ⊆ Q ⊆ G} ε_P^Q τ̂_P^Q(H) τ_Q^G(H). Vanishes for P ≠ G; equals 1 for
/// P = G.
pub fn langlands_sum(p: &StandardParabolic, h: &ConePoint) -> Result<i64, TruncationError> {
    let g = StandardParabolic::whole(p.n());
    let l = setup(p, &g, h)?;
    let mut total = 0;
    for q in p.coarsenings() {
        if Nested::new(p.blocks(), q.blocks(), &l.v).tau_hat()
            && Nested::new(q.blocks(), g.blocks(), &l.v).tau()
        {
            total += p.epsilon(&q);
        }
    }
    Ok(total)
}

/// The two sides of each partition identity for Q at H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArthurSums {
    /// Σ_P Σ_w F^P τ_P^Q; should be 1.
    pub partition_of_unity: i64,
    /// F^Q(H).
    pub f_q: bool,
    /// Σ_P ε_P^Q Σ_w τ̂_P^Q; should equal F^Q(H).
    pub alternating: i64,
}

impl ArthurSums {
    pub fn holds(&self) -> bool {
        self.partition_of_unity == 1 && self.alternating == self.f_q as i64
    }
}

pub fn arthur_sums(q: &StandardParabolic, h: &ConePoint) -> Result<ArthurSums, TruncationError> {
    check_dim(q.n(), h)?;
    let model = WeylModel::get(q.n())?;
    let l = h.lattice()?;
    let (mut unity, mut alternating) = (0i64, 0i64);
    for pair in model.pairs(q.blocks(), None) {
        let x = arrange(&l.v, &pair.arrangement);
        let nested = Nested::new(&pair.sizes, q.blocks(), &x);
        if nested.tau() && model.semistable(&pair.sizes, &x) {
            unity += 1;
        }
        if nested.tau_hat() {
            alternating += if (pair.sizes.len() - q.len()).is_multiple_of(2) {
                1
            } else {
                -1
            };
        }
    }
    Ok(ArthurSums {
        partition_of_unity: unity,
        f_q: model.semistable(q.blocks(), &l.v),
        alternating,
    })
}

/// Whether both partition identities for Q hold exactly at H.
pub fn arthur_partition_check(
    q: &StandardParabolic,
    h: &ConePoint,
) -> Result<bool, TruncationError> {
    Ok(arthur_sums(q, h)?.holds())
}

/// The greatest extremal pair maximizing <ϖ_P, H_P(wH)>.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalPair {
    pub parabolic: StandardParabolic,
    /// Coordinates sent to the leading block, 0-based and ascending.
    pub leading: Vec<usize>,
    /// w as an arrangement: the leading block, then the rest.
    pub weyl: Vec<usize>,
    #[serde(with = "crate::rational::serde_ratio")]
    pub value: BigRational,
}

pub fn extremal_max_pair(h: &ConePoint) -> Result<ExtremalPair, TruncationError> {
    let n = h.dim();
    WeylModel::get(n)?;
    let l = h.lattice()?;
    // (sum, size, mask) for every nonempty subset.
    let candidates: Vec<(i128, usize, u32)> = (1..1u32 << n)
        .map(|mask| {
            let sum = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| l.v[i]).sum();
            (sum, mask.count_ones() as usize, mask)
        })
        .collect();
    let beats =
        |a: &(i128, usize, u32), b: &(i128, usize, u32)| a.0 * b.1 as i128 > b.0 * a.1 as i128;
    let mut best = candidates[0];
    for c in &candidates {
        if beats(c, &best) {
            best = *c;
        }
    }
    let maximizers: Vec<_> = candidates.iter().filter(|c| !beats(&best, c)).collect();
    let size = maximizers.iter().map(|c| c.1).max().expect("nonempty");
    let top: Vec<_> = maximizers.into_iter().filter(|c| c.1 == size).collect();
    let as_set = |mask: u32| -> Vec<usize> { (0..n).filter(|i| mask >> i & 1 == 1).collect() };
    if top.len() > 1 {
        return Err(TruncationError::WallTie {
            candidates: top.iter().map(|c| format!("{:?}", as_set(c.2))).collect(),
        });
    }
    let (sum, size, mask) = *top[0];
    let leading = as_set(mask);
    let mut weyl = leading.clone();
    weyl.extend((0..n).filter(|i| mask >> i & 1 == 0));
    Ok(ExtremalPair {
        parabolic: StandardParabolic::extremal(n, size),
        leading,
        weyl,
        value: BigRational::new(BigInt::from(sum), &l.denom * size),
    })
}

/// The three equivalent forms of semi-stability along Q: deg_i^Q <= 0;
/// all Δ̂_P^Q pairings <= 0 over P ⊆ Q; the same over maximal P ⊆ Q only.
pub fn semistability_conditions(
    q: &StandardParabolic,
    h: &ConePoint,
) -> Result<[bool; 3], TruncationError> {
    check_dim(q.n(), h)?;
    let model = WeylModel::get(q.n())?;
    let l = h.lattice()?;
    let first = model.semistable(q.blocks(), &l.v);
    let (mut second, mut third) = (true, true);
    for pair in model.pairs(q.blocks(), None) {
        let x = arrange(&l.v, &pair.arrangement);
        let ok = Nested::new(&pair.sizes, q.blocks(), &x)
            .weight_pairings()
            .iter()
            .all(|&w| w <= 0);
        second &= ok;
        if pair.sizes.len() == q.len() + 1 {
            third &= ok;
        }
    }
    Ok([first, second, third])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(c: &[i64]) -> ConePoint {
        ConePoint::from_ints(c)
    }

    fn sp(b: &[usize]) -> StandardParabolic {
        StandardParabolic::from_blocks(b.to_vec()).unwrap()
    }

    fn r(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn tau_examples() {
        let (b, g) = (StandardParabolic::borel(2), StandardParabolic::whole(2));
        assert!(indicator_tau(&b, &g, &h(&[1, -1])).unwrap());
        assert!(indicator_tau_hat(&b, &g, &h(&[1, -1])).unwrap());
        assert!(!indicator_tau(&b, &g, &h(&[0, 0])).unwrap());
        assert!(!indicator_tau_hat(&b, &g, &h(&[0, 0])).unwrap());
        let p = sp(&[2, 1]);
        let g3 = StandardParabolic::whole(3);
        assert!(indicator_tau(&p, &g3, &h(&[1, 1, -2])).unwrap());
        assert!(indicator_tau_hat(&p, &g3, &h(&[1, 1, -2])).unwrap());
    }

    #[test]
    fn chi_examples() {
        let (b, g) = (StandardParabolic::borel(2), StandardParabolic::whole(2));
        assert!(indicator_chi(&b, &g, &h(&[-1, 3])).unwrap());
        assert!(!indicator_chi(&b, &g, &h(&[1, -5])).unwrap());
        let q = sp(&[2, 2]);
        assert!(indicator_chi(&StandardParabolic::borel(4), &q, &h(&[-1, 2, -3, 1])).unwrap());
        assert!(!indicator_chi(&StandardParabolic::borel(4), &q, &h(&[-1, 2, 3, 1])).unwrap());
        assert!(matches!(
            indicator_chi(&sp(&[1, 3]), &q, &h(&[0, 0, 0, 0])),
            Err(TruncationError::NotRefinement { .. })
        ));
    }

    #[test]
    fn degree_examples() {
        let g = StandardParabolic::whole(2);
        assert_eq!(degree_instability(&g, &h(&[1, -1])).unwrap(), r(1, 1));
        assert_eq!(degree_instability(&g, &h(&[0, 0])).unwrap(), r(0, 1));
        assert_eq!(
            degree_instability(&StandardParabolic::whole(4), &h(&[3, 3, 3, 3])).unwrap(),
            r(0, 1)
        );
        let b = StandardParabolic::borel(3);
        assert_eq!(
            degree_instability_with(&b, &h(&[1, 2, 3]), DegreeRange::Exclusive).unwrap(),
            None
        );
        assert_eq!(
            degree_instability_with(&g, &h(&[0, 0]), DegreeRange::Exclusive).unwrap(),
            Some(r(0, 1))
        );
        assert_eq!(
            degree_instability_with(&g, &h(&[1, 1]), DegreeRange::Exclusive).unwrap(),
            Some(r(0, 1))
        );
        assert_eq!(
            degree_instability_with(&g, &h(&[1, -1]), DegreeRange::Exclusive).unwrap(),
            Some(r(1, 1))
        );
    }

    #[test]
    fn canonical_pair_examples() {
        let c = canonical_pair(&h(&[1, -1])).unwrap();
        assert_eq!(c.parabolic, StandardParabolic::borel(2));
        assert_eq!(c.weyl, vec![0, 1]);
        assert_eq!(c.degree, r(1, 1));
        let c = canonical_pair(&h(&[-1, 1])).unwrap();
        assert_eq!(c.weyl, vec![1, 0]);
        assert_eq!(c.degree, r(1, 1));
        let c = canonical_pair(&h(&[5, 5, 5])).unwrap();
        assert_eq!(c.parabolic, StandardParabolic::whole(3));
        assert_eq!(c.degree, r(0, 1));
    }

    #[test]
    fn cone_examples() {
        assert_eq!(
            cone_membership(&h(&[1, -1])).unwrap().to_string(),
            "({1},{2})"
        );
        assert_eq!(
            cone_membership(&h(&[-1, 1])).unwrap().to_string(),
            "({2},{1})"
        );
        assert_eq!(cone_membership(&h(&[0, 0])).unwrap().to_string(), "({1,2})");
    }

    #[test]
    fn e_examples() {
        let g = StandardParabolic::whole(2);
        assert!(indicator_e(&g, &h(&[-1, -2])).unwrap());
        assert!(!indicator_e(&g, &h(&[-2, 1])).unwrap());
        let g1 = StandardParabolic::whole(1);
        assert!(indicator_e(&g1, &h(&[0])).unwrap());
        assert!(!indicator_e(&g1, &h(&[1])).unwrap());
    }

    #[test]
    fn levi_sum_examples() {
        assert_eq!(
            levi_sum_tau_hat(&LeviType::torus(2), &h(&[1, -1])).unwrap(),
            1
        );
        assert_eq!(
            levi_sum_tau_hat(&LeviType::torus(3), &h(&[5, -2, 1])).unwrap(),
            2
        );
        assert_eq!(
            levi_sum_tau_hat(&LeviType::whole(3), &h(&[5, -2, 1])).unwrap(),
            1
        );
        assert!(matches!(
            levi_sum_tau_hat(&LeviType::torus(2), &h(&[1, 1])),
            Err(TruncationError::OnWall(_))
        ));
    }

    #[test]
    fn langlands_examples() {
        assert_eq!(
            langlands_sum(&StandardParabolic::borel(2), &h(&[1, -1])).unwrap(),
            0
        );
        assert_eq!(
            langlands_sum(&StandardParabolic::whole(2), &h(&[1, -1])).unwrap(),
            1
        );
    }

    #[test]
    fn arthur_examples() {
        assert!(arthur_partition_check(&StandardParabolic::whole(2), &h(&[1, -1])).unwrap());
        let b = StandardParabolic::borel(3);
        let sums = arthur_sums(&b, &h(&[3, -1, 2])).unwrap();
        assert!(sums.f_q);
        assert!(sums.holds());
    }

    #[test]
    fn extremal_examples() {
        let e = extremal_max_pair(&h(&[1, -1])).unwrap();
        assert_eq!(e.parabolic, sp(&[1, 1]));
        assert_eq!(e.weyl, vec![0, 1]);
        let e = extremal_max_pair(&h(&[2, 2, 2])).unwrap();
        assert_eq!(e.parabolic, StandardParabolic::whole(3));
        let e = extremal_max_pair(&h(&[2, 1, -3])).unwrap();
        assert_eq!(e.parabolic, sp(&[1, 2]));
        assert_eq!(e.leading, vec![0]);
    }

    #[test]
    fn semistability_examples() {
        let g = StandardParabolic::whole(3);
        assert_eq!(
            semistability_conditions(&g, &h(&[0, 0, 0])).unwrap(),
            [true; 3]
        );
        assert_eq!(
            semistability_conditions(&g, &h(&[1, 0, -1])).unwrap(),
            [false; 3]
        );
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn rank_limits() {
        assert!(WeylModel::get(8).is_err());
        assert_eq!(WeylModel::get(3).unwrap().pair_count(), 13);
        assert!(matches!(
            indicator_e(&StandardParabolic::whole(2), &h(&[1, 2, 3])),
            Err(TruncationError::DimensionMismatch { .. })
        ));
    }
}
