use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::laurent::{LaurentSeries, Significance};
use crate::xi_symbolic::{XiExpression, XiFactor};

/// A Taylor coefficient treated as an indeterminate: `t{a,k}` is the k-th
/// coefficient of ξ at a >= 2, `e{k}` that of ξ(s) - 1/(s - 1) at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Polar { k: u32 },
    Taylor { a: u32, k: u32 },
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Polar { k } => write!(f, "e{{{k}}}"),
            Symbol::Taylor { a, k } => write!(f, "t{{{a},{k}}}"),
        }
    }
}

type Term = Vec<(Symbol, u32)>;

/// Sparse polynomial over Q in the [`Symbol`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Term, BigRational>,
}

impl Poly {
    fn constant(q: BigRational) -> Self {
        let mut p = Poly::default();
        if !q.is_zero() {
            p.terms.insert(Vec::new(), q);
        }
        p
    }

    fn symbol(s: Symbol, q: BigRational) -> Self {
        let mut p = Poly::default();
        if !q.is_zero() {
            p.terms.insert(vec![(s, 1)], q);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign(&mut self, other: &Poly) {
        for (t, c) in &other.terms {
            let slot = self
                .terms
                .entry(t.clone())
                .or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                self.terms.remove(t);
            }
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                let mut merged: BTreeMap<Symbol, u32> = ta.iter().copied().collect();
                for &(s, e) in tb {
                    *merged.entry(s).or_insert(0) += e;
                }
                let t: Term = merged.into_iter().collect();
                let single = Poly {
                    terms: BTreeMap::from([(t, ca * cb)]),
                };
                out.add_assign(&single);
            }
        }
        out
    }

    fn scale(&self, q: &BigRational) -> Poly {
        if q.is_zero() {
            return Poly::default();
        }
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * q)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || t.is_empty() {
                parts.push(a.to_string());
            }
            for (s, e) in t {
                parts.push(if *e == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{e}")
                });
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// Formal Laurent series truncated to degrees <= `top`.
struct FormalSeries {
    min_degree: i32,
    coefficients: Vec<Poly>,
}

impl FormalSeries {
    fn one() -> Self {
        FormalSeries {
            min_degree: 0,
            coefficients: vec![Poly::constant(BigRational::one())],
        }
    }

    fn factor(f: &XiFactor, top: i32) -> Self {
        let b = BigInt::from(f.slope());
        let mut coefficients = Vec::new();
        let mut min_degree = 0;
        if f.is_polar() {
            min_degree = -1;
            coefficients.push(Poly::constant(BigRational::new(BigInt::one(), b.clone())));
        }
        let mut b_pow = BigInt::one();
        for k in 0..=top.max(0) as u32 {
            let sym = if f.is_polar() {
                Symbol::Polar { k }
            } else {
                Symbol::Taylor { a: f.shift(), k }
            };
            coefficients.push(Poly::symbol(sym, BigRational::from_integer(b_pow.clone())));
            b_pow *= &b;
        }
        FormalSeries {
            min_degree,
            coefficients,
        }
    }

    fn mul(&self, other: &FormalSeries, top: i32) -> FormalSeries {
        let lo = self.min_degree + other.min_degree;
        let mut coefficients = vec![Poly::default(); (top - lo + 1).max(0) as usize];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                let d = lo + (i + j) as i32;
                if d > top || a.is_zero() || b.is_zero() {
                    continue;
                }
                coefficients[(d - lo) as usize].add_assign(&a.mul(b));
            }
        }
        FormalSeries {
            min_degree: lo,
            coefficients,
        }
    }

    fn coefficient(&self, d: i32) -> Option<&Poly> {
        if d < self.min_degree {
            return None;
        }
        self.coefficients.get((d - self.min_degree) as usize)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalCoefficient {
    /// k in s^-k.
    pub k: u32,
    pub vanishes: bool,
    pub term_count: usize,
    pub polynomial: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalReport {
    pub max_pole: u32,
    /// Largest k <= max_pole whose s^-k coefficient is formally nonzero.
    pub formal_pole_order: u32,
    /// Coefficients of s^-k for k = max_pole down to 1.
    pub coefficients: Vec<FormalCoefficient>,
}

/// Formal and numeric verdicts for one s^-k coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct PoleComparison {
    pub k: u32,
    pub formally_zero: bool,
    pub numeric: Significance,
    pub magnitude: f64,
}

impl FormalReport {
    pub fn coefficient(&self, k: u32) -> Option<&FormalCoefficient> {
        self.coefficients.iter().find(|c| c.k == k)
    }

    /// True when every s^-k coefficient with k >= 2 vanishes formally.
    pub fn simple_pole_formally(&self) -> bool {
        self.coefficients
            .iter()
            .filter(|c| c.k >= 2)
            .all(|c| c.vanishes)
    }

    /// Pairs each formal verdict with the numeric coefficient of `series`.
    pub fn compare(&self, series: &LaurentSeries) -> Vec<PoleComparison> {
        self.coefficients
            .iter()
            .map(|c| {
                let d = -(c.k as i32);
                PoleComparison {
                    k: c.k,
                    formally_zero: c.vanishes,
                    numeric: series.significance(d),
                    magnitude: series.coefficient(d).map_or(0.0, |a| a.magnitude()),
                }
            })
            .collect()
    }
}

/// Expands `e` with every Taylor coefficient of ξ as an independent
/// indeterminate and reports which s^-k coefficients vanish identically.
pub fn formal_cancellation_check(e: &XiExpression, max_pole: u32) -> FormalReport {
    let max_pole = max_pole.max(1);
    let mut totals: Vec<Poly> = vec![Poly::default(); max_pole as usize];
    for (m, c) in e.terms() {
        let polar = m.polar_count() as i32;
        // Later factors can lower the degree by at most `polar`.
        let top = polar - 1;
        let mut acc = FormalSeries::one();
        for f in m.factors() {
            acc = acc.mul(&FormalSeries::factor(f, top), top);
        }
        for k in 1..=max_pole {
            if let Some(p) = acc.coefficient(-(k as i32)) {
                totals[k as usize - 1].add_assign(&p.scale(c));
            }
        }
    }
    let formal_pole_order = (1..=max_pole)
        .rev()
        .find(|&k| !totals[k as usize - 1].is_zero())
        .unwrap_or(0);
    let coefficients = (1..=max_pole)
        .rev()
        .map(|k| {
            let p = &totals[k as usize - 1];
            FormalCoefficient {
                k,
                vanishes: p.is_zero(),
                term_count: p.len(),
                polynomial: p.to_string(),
            }
        })
        .collect();
    FormalReport {
        max_pole,
        formal_pole_order,
        coefficients,
    }
}
