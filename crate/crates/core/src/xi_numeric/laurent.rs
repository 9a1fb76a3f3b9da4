use astro_float::BigFloat;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use super::kernel::{Approx, PrecisionConfig, XiPointExpansion, XiTable, GUARD_DIGITS};
use super::mp::{to_decimal, Mp};
use super::NumericError;
use crate::xi_symbolic::{XiExpression, XiFactor, XiMonomial};

/// Multiplier between a coefficient's error bar and its noise floor.
pub const NOISE_FACTOR: f64 = 1e3;

/// Truncated Laurent series in s. `coefficients[i]` is the coefficient of
/// s^(min_degree + i); the last stored degree is `valid_through`.
///
/// `min_degree` is the structural lower bound (minus the number of polar
/// factors) and may carry cancelled coefficients; [`LaurentSeries::leading`]
/// applies the noise floor.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    pub min_degree: i32,
    pub coefficients: Vec<Approx>,
    pub working_digits: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Significance {
    Zero,
    Ambiguous,
    Nonzero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leading {
    Degree(i32),
    IdenticallyZero,
    /// The first coefficient that is not clearly zero sits within a decade
    /// of the noise floor.
    Indeterminate(i32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "order")]
pub enum PoleOrder {
    Exact(u32),
    IdenticallyZero,
    Indeterminate,
}

impl PoleOrder {
    pub fn exact(self) -> Option<u32> {
        match self {
            PoleOrder::Exact(k) => Some(k),
            _ => None,
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            PoleOrder::Exact(k) => json!(k),
            PoleOrder::IdenticallyZero => json!("identically-zero"),
            PoleOrder::Indeterminate => json!("indeterminate"),
        }
    }
}

impl std::fmt::Display for PoleOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PoleOrder::Exact(k) => write!(f, "{k}"),
            PoleOrder::IdenticallyZero => f.write_str("identically-zero"),
            PoleOrder::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

impl LaurentSeries {
    pub fn zero(valid_through: i32, working_digits: u32) -> Self {
        LaurentSeries {
            min_degree: valid_through + 1,
            coefficients: Vec::new(),
            working_digits,
        }
    }

    /// Highest degree with a trustworthy coefficient.
    pub fn valid_through(&self) -> i32 {
        self.min_degree + self.coefficients.len() as i32 - 1
    }

    pub fn max_degree(&self) -> i32 {
        self.valid_through()
    }

    pub fn coefficient(&self, degree: i32) -> Option<&Approx> {
        if degree < self.min_degree {
            return None;
        }
        self.coefficients.get((degree - self.min_degree) as usize)
    }

    fn mp(&self) -> Mp {
        Mp::with_digits(self.working_digits + GUARD_DIGITS)
    }

    fn value_at(&self, degree: i32, mp: &Mp) -> Approx {
        self.coefficient(degree)
            .cloned()
            .unwrap_or_else(|| Approx::exact(mp.zero()))
    }

    pub fn add(&self, other: &LaurentSeries, mp: &Mp) -> LaurentSeries {
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.valid_through().min(other.valid_through());
        let coefficients = (lo..=hi)
            .map(|d| self.value_at(d, mp).add(&other.value_at(d, mp), mp))
            .collect();
        LaurentSeries {
            min_degree: lo,
            coefficients,
            working_digits: self.working_digits.min(other.working_digits),
        }
    }

    pub fn mul(&self, other: &LaurentSeries, mp: &Mp) -> LaurentSeries {
        let lo = self.min_degree + other.min_degree;
        let hi =
            (self.valid_through() + other.min_degree).min(other.valid_through() + self.min_degree);
        let mut coefficients = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for d in lo..=hi {
            let mut acc = Approx::exact(mp.zero());
            for (i, a) in self.coefficients.iter().enumerate() {
                let da = self.min_degree + i as i32;
                if let Some(b) = other.coefficient(d - da) {
                    acc = acc.add(&a.mul(b, mp), mp);
                }
            }
            coefficients.push(acc);
        }
        LaurentSeries {
            min_degree: lo,
            coefficients,
            working_digits: self.working_digits.min(other.working_digits),
        }
    }

    pub fn scale(&self, q: &BigRational, mp: &Mp) -> LaurentSeries {
        let k = rational_float(q, mp);
        let rel = mp.eps();
        LaurentSeries {
            min_degree: self.min_degree,
            coefficients: self
                .coefficients
                .iter()
                .map(|c| {
                    let mut s = c.scale(&k, mp);
                    s.error += rel * s.magnitude();
                    s
                })
                .collect(),
            working_digits: self.working_digits,
        }
    }

    /// 10^3 times the coefficient's error bar, never below 10^3 times the
    /// internal precision floor.
    pub fn noise_floor(&self, degree: i32) -> f64 {
        let base = 10f64.powi(-((self.working_digits + GUARD_DIGITS) as i32));
        let err = self.coefficient(degree).map_or(0.0, |c| c.error);
        NOISE_FACTOR * err.max(base)
    }

    pub fn significance(&self, degree: i32) -> Significance {
        let Some(c) = self.coefficient(degree) else {
            return Significance::Zero;
        };
        let floor = self.noise_floor(degree);
        let m = c.magnitude();
        if m > 10.0 * floor {
            Significance::Nonzero
        } else if m >= floor / 10.0 {
            Significance::Ambiguous
        } else {
            Significance::Zero
        }
    }

    pub fn leading(&self) -> Leading {
        for d in self.min_degree..=self.valid_through() {
            match self.significance(d) {
                Significance::Zero => continue,
                Significance::Ambiguous => return Leading::Indeterminate(d),
                Significance::Nonzero => return Leading::Degree(d),
            }
        }
        Leading::IdenticallyZero
    }

    pub fn is_identically_zero(&self) -> bool {
        self.leading() == Leading::IdenticallyZero
    }

    /// Order of the pole at s = 0 (0 when the series is regular there).
    pub fn pole_order(&self) -> PoleOrder {
        match self.leading() {
            Leading::Degree(d) => PoleOrder::Exact((-d).max(0) as u32),
            Leading::IdenticallyZero => PoleOrder::IdenticallyZero,
            Leading::Indeterminate(d) if d >= 0 => {
                // Ambiguity past the polar range does not affect the pole.
                PoleOrder::Exact(0)
            }
            Leading::Indeterminate(_) => PoleOrder::Indeterminate,
        }
    }

    /// Coefficient of s^-1.
    pub fn residue(&self) -> Approx {
        let mp = self.mp();
        self.value_at(-1, &mp)
    }

    /// `{min_degree, coefficients: [{value, error}], pole_order, residue}`
    /// with values as decimal strings at the working precision.
    pub fn to_json(&self) -> Value {
        let mp = self.mp();
        let digits = self.working_digits as usize;
        let coeff =
            |c: &Approx| json!({"value": to_decimal(&c.value, digits, &mp), "error": c.error});
        json!({
            "min_degree": self.min_degree,
            "coefficients": self.coefficients.iter().map(coeff).collect::<Vec<_>>(),
            "pole_order": self.pole_order().to_json(),
            "residue": coeff(&self.residue()),
        })
    }
}

pub(crate) fn rational_float(q: &BigRational, mp: &Mp) -> BigFloat {
    mp.div(
        &mp.parse(&q.numer().to_string()),
        &mp.parse(&q.denom().to_string()),
    )
}

/// Series of ξ(a + b s) at s = 0 from the expansion of ξ at a.
pub fn factor_series(
    f: &XiFactor,
    exp: &XiPointExpansion,
    working_digits: u32,
    mp: &Mp,
) -> LaurentSeries {
    let b = mp.int(f.slope() as i64);
    let b_f = f.slope() as f64;
    let mut coefficients = Vec::with_capacity(exp.coefficients.len() + 1);
    let mut min_degree = 0;
    if exp.principal_residue().is_some() {
        min_degree = -1;
        coefficients.push(Approx::new(mp.div(&mp.one(), &b), mp.eps()));
    }
    let mut b_pow = mp.one();
    let mut b_pow_f = 1.0;
    for c in &exp.coefficients {
        coefficients.push(Approx::new(mp.mul(&c.value, &b_pow), c.error * b_pow_f));
        b_pow = mp.mul(&b_pow, &b);
        b_pow_f *= b_f;
    }
    LaurentSeries {
        min_degree,
        coefficients,
        working_digits,
    }
}

fn monomial_series(m: &XiMonomial, table: &XiTable, mp: &Mp) -> LaurentSeries {
    let digits = table.config().working_digits;
    let k = table.config().expansion_order as i32;
    let mut acc = LaurentSeries {
        min_degree: 0,
        coefficients: vec![Approx::exact(mp.one())],
        working_digits: digits,
    };
    // The empty product is 1 through every order.
    acc.coefficients
        .extend((0..k).map(|_| Approx::exact(mp.zero())));
    for f in m.factors() {
        let exp = table.get(f.shift()).expect("table covers every shift");
        acc = acc.mul(&factor_series(f, exp, digits, mp), mp);
    }
    acc
}

/// Laurent expansion using precomputed point expansions.
pub fn laurent_expand_with(
    e: &XiExpression,
    table: &XiTable,
) -> Result<LaurentSeries, NumericError> {
    let cfg = table.config();
    check_order(e, cfg)?;
    if e.max_shift() > table.max_point() {
        return Err(NumericError::InvalidConfig(format!(
            "expansion table reaches xi({}) but the expression needs xi({})",
            table.max_point(),
            e.max_shift()
        )));
    }
    let mp = cfg.mp();
    let mut total = LaurentSeries::zero(cfg.expansion_order as i32, cfg.working_digits);
    let mut first = true;
    for (m, c) in e.terms() {
        let term = monomial_series(m, table, &mp).scale(c, &mp);
        total = if first { term } else { total.add(&term, &mp) };
        first = false;
    }
    if total.coefficients.is_empty() {
        let lo = -(e.max_polar_count() as i32).max(1);
        total = LaurentSeries {
            min_degree: lo,
            coefficients: (lo..=cfg.expansion_order as i32)
                .map(|_| Approx::exact(mp.zero()))
                .collect(),
            working_digits: cfg.working_digits,
        };
    }
    Ok(total)
}

fn check_order(e: &XiExpression, cfg: &PrecisionConfig) -> Result<(), NumericError> {
    let polar = e.max_polar_count();
    if cfg.expansion_order < polar + 2 {
        return Err(NumericError::InsufficientOrder {
            order: cfg.expansion_order,
            polar,
        });
    }
    Ok(())
}

/// Expands every ξ(a + b s) around s = 0 and combines the truncated series.
pub fn laurent_expand(
    e: &XiExpression,
    cfg: &PrecisionConfig,
) -> Result<LaurentSeries, NumericError> {
    check_order(e, cfg)?;
    let table = XiTable::build(e.max_shift().max(1), cfg)?;
    laurent_expand_with(e, &table)
}

/// A principal-part coefficient with its audit data.
#[derive(Clone, Debug, Serialize)]
pub struct PrincipalTerm {
    /// k in s^-k.
    pub k: u32,
    pub magnitude: f64,
    pub error: f64,
    pub noise_floor: f64,
    pub verdict: Significance,
}

#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub pole_order: PoleOrder,
    pub residue: Approx,
    /// s^-k for k = max down to 1.
    pub principal: Vec<PrincipalTerm>,
    pub series: LaurentSeries,
}

impl ResidueReport {
    pub fn from_series(series: LaurentSeries) -> Self {
        let principal = (series.min_degree..=-1)
            .map(|d| {
                let c = series.coefficient(d);
                PrincipalTerm {
                    k: (-d) as u32,
                    magnitude: c.map_or(0.0, Approx::magnitude),
                    error: c.map_or(0.0, |c| c.error),
                    noise_floor: series.noise_floor(d),
                    verdict: series.significance(d),
                }
            })
            .collect();
        ResidueReport {
            pole_order: series.pole_order(),
            residue: series.residue(),
            principal,
            series,
        }
    }
}

/// Pole order and residue at s = 0, with the principal part attached.
pub fn residue_at_zero(
    e: &XiExpression,
    cfg: &PrecisionConfig,
) -> Result<ResidueReport, NumericError> {
    Ok(ResidueReport::from_series(laurent_expand(e, cfg)?))
}

pub fn residue_at_zero_with(
    e: &XiExpression,
    table: &XiTable,
) -> Result<ResidueReport, NumericError> {
    Ok(ResidueReport::from_series(laurent_expand_with(e, table)?))
}
