use std::cell::RefCell;
use std::rc::Rc;

use astro_float::BigFloat;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mp::{to_decimal, to_f64, Complex, Mp};
use super::special::SpecialFns;
use super::NumericError;

/// Extra decimal digits carried internally beyond `working_digits`.
pub const GUARD_DIGITS: u32 = 20;

/// Environment variable overriding `working_digits`.
pub const DIGITS_ENV: &str = "NILZETA_DIGITS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub working_digits: u32,
    /// K: Taylor coefficients c_0..=c_K are kept at every point.
    pub expansion_order: usize,
    pub contour_radius: f64,
    pub contour_nodes: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            working_digits: 30,
            expansion_order: 9,
            contour_radius: 0.25,
            contour_nodes: 128,
        }
    }
}

impl PrecisionConfig {
    /// Defaults for orbits of gl(n): K = n + 3.
    pub fn for_rank(n: usize) -> Self {
        PrecisionConfig {
            expansion_order: n + 3,
            ..PrecisionConfig::default()
        }
    }

    /// Applies `NILZETA_DIGITS` if set.
    pub fn with_env_override(mut self) -> Result<Self, NumericError> {
        if let Ok(v) = std::env::var(DIGITS_ENV) {
            self.working_digits = v.trim().parse().map_err(|_| {
                NumericError::InvalidConfig(format!("{DIGITS_ENV}={v:?} is not an integer"))
            })?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        let bad = |m: String| Err(NumericError::InvalidConfig(m));
        if !(10..=2000).contains(&self.working_digits) {
            return bad(format!(
                "working_digits must lie in 10..=2000, got {}",
                self.working_digits
            ));
        }
        if self.expansion_order < 1 {
            return bad("expansion_order must be at least 1".into());
        }
        if !(self.contour_radius > 0.0 && self.contour_radius < 0.5) {
            return bad(format!(
                "contour_radius must lie in (0, 1/2), got {}",
                self.contour_radius
            ));
        }
        if self.contour_nodes < 8 || !self.contour_nodes.is_multiple_of(4) {
            return bad(format!(
                "contour_nodes must be a multiple of 4 and at least 8, got {}",
                self.contour_nodes
            ));
        }
        if self.contour_nodes < 2 * (self.expansion_order + 1) {
            return bad(format!(
                "contour_nodes = {} cannot resolve expansion_order = {}",
                self.contour_nodes, self.expansion_order
            ));
        }
        Ok(())
    }

    /// Requested absolute accuracy of kernel outputs, 10^-(digits - 2).
    pub fn target_error(&self) -> f64 {
        10f64.powi(-(self.working_digits as i32 - 2))
    }

    /// Internal precision floor, 10^-(digits + guard).
    pub fn floor(&self) -> f64 {
        10f64.powi(-((self.working_digits + GUARD_DIGITS) as i32))
    }

    pub fn internal_digits(&self) -> u32 {
        self.working_digits + GUARD_DIGITS
    }

    pub fn mp(&self) -> Mp {
        Mp::with_digits(self.internal_digits())
    }
}

/// A real number with an absolute error estimate.
#[derive(Clone, Debug)]
pub struct Approx {
    pub value: BigFloat,
    pub error: f64,
}

impl Approx {
    pub fn new(value: BigFloat, error: f64) -> Self {
        Approx { value, error }
    }

    pub fn exact(value: BigFloat) -> Self {
        Approx { value, error: 0.0 }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.value)
    }

    pub fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    pub fn to_decimal(&self, digits: usize, mp: &Mp) -> String {
        to_decimal(&self.value, digits, mp)
    }

    pub fn add(&self, o: &Approx, mp: &Mp) -> Approx {
        Approx::new(mp.add(&self.value, &o.value), self.error + o.error)
    }

    pub fn sub(&self, o: &Approx, mp: &Mp) -> Approx {
        Approx::new(mp.sub(&self.value, &o.value), self.error + o.error)
    }

    pub fn mul(&self, o: &Approx, mp: &Mp) -> Approx {
        let err = self.magnitude() * o.error + self.error * o.magnitude() + self.error * o.error;
        Approx::new(mp.mul(&self.value, &o.value), err)
    }

    pub fn scale(&self, k: &BigFloat, mp: &Mp) -> Approx {
        Approx::new(mp.mul(&self.value, k), self.error * to_f64(k).abs())
    }

    /// |self - other| <= tol + both error bars.
    pub fn agrees_with(&self, other: &Approx, tol: f64, mp: &Mp) -> bool {
        to_f64(&mp.sub(&self.value, &other.value)).abs() <= tol + self.error + other.error
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Regular,
    Polar,
}

/// Taylor data of ξ at an integer point a. At a = 1 the coefficients are
/// those of the entire correction ξ(s) - 1/(s - 1); the principal part
/// 1/(s - 1) is exact and not stored numerically.
#[derive(Clone, Debug)]
pub struct XiPointExpansion {
    pub point: u32,
    pub kind: PointKind,
    pub coefficients: Vec<Approx>,
}

impl XiPointExpansion {
    /// Residue of the principal part: 1 at the pole, none elsewhere.
    pub fn principal_residue(&self) -> Option<i64> {
        match self.kind {
            PointKind::Polar => Some(1),
            PointKind::Regular => None,
        }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn max_error(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.error)
            .fold(0.0, f64::max)
    }

    /// Evaluates the truncated Taylor polynomial at offset h (plus the
    /// principal part at the pole).
    pub fn evaluate(&self, h: &BigFloat, mp: &Mp) -> BigFloat {
        let mut acc = mp.zero();
        for c in self.coefficients.iter().rev() {
            acc = mp.add(&mp.mul(&acc, h), &c.value);
        }
        if self.kind == PointKind::Polar {
            acc = mp.add(&acc, &mp.div(&mp.one(), h));
        }
        acc
    }
}

thread_local! {
    static FNS: RefCell<Option<Rc<SpecialFns>>> = const { RefCell::new(None) };
}

/// Runs `f` with this thread's special-function tables for `digits`.
pub fn with_special<R>(digits: u32, f: impl FnOnce(&SpecialFns) -> R) -> R {
    let bits = Mp::bits_for_digits(digits);
    let fns = FNS.with(|cell| {
        let mut slot = cell.borrow_mut();
        match slot.as_ref() {
            Some(existing) if existing.mp().bits() == bits => existing.clone(),
            _ => {
                let built = Rc::new(SpecialFns::new(Mp::with_digits(digits)));
                *slot = Some(built.clone());
                built
            }
        }
    });
    f(&fns)
}

/// Values of ξ (or of the polar correction at a = 1) on the upper half of
/// the contour |s - a| = r, nodes j = 0..=N/2.
fn contour_values(a: u32, j: usize, cfg: &PrecisionConfig) -> (BigFloat, BigFloat) {
    with_special(cfg.internal_digits(), |fns| {
        let mp = fns.mp();
        let theta = mp.div(
            &mp.mul(&mp.mul(&mp.int(2), &mp.pi()), &mp.int(j as i64)),
            &mp.int(cfg.contour_nodes as i64),
        );
        let r = mp.f64(cfg.contour_radius);
        let s = Complex::new(
            mp.add(&mp.int(a as i64), &mp.mul(&r, &mp.cos(&theta))),
            mp.mul(&r, &mp.sin(&theta)),
        );
        let v = if a == 1 {
            fns.xi_polar_correction(&s)
        } else {
            fns.xi(&s)
        };
        (v.re, v.im)
    })
}

/// Trapezoid-rule Taylor coefficients from half-contour values, with the
/// half-rule difference and a roundoff term as the error estimate.
fn coefficients_from_values(
    values: &[(BigFloat, BigFloat)],
    cfg: &PrecisionConfig,
    mp: &Mp,
) -> Vec<Approx> {
    let n = cfg.contour_nodes;
    let half = n / 2;
    let two_pi = mp.mul(&mp.int(2), &mp.pi());
    let trig: Vec<(BigFloat, BigFloat)> = (0..n)
        .map(|m| {
            let t = mp.div(&mp.mul(&two_pi, &mp.int(m as i64)), &mp.int(n as i64));
            (mp.cos(&t), mp.sin(&t))
        })
        .collect();
    let max_f = values
        .iter()
        .map(|(re, im)| to_f64(re).hypot(to_f64(im)))
        .fold(0.0, f64::max);
    let r = mp.f64(cfg.contour_radius);
    let mut r_pow = mp.one();
    let mut out = Vec::with_capacity(cfg.expansion_order + 1);
    for k in 0..=cfg.expansion_order {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let ends = mp.add(&values[0].0, &mp.mul(&mp.int(sign), &values[half].0));
        let mut full = mp.zero();
        let mut even = mp.zero();
        for (j, (re, im)) in values.iter().enumerate().take(half).skip(1) {
            let (c, s) = &trig[(j * k) % n];
            let term = mp.add(&mp.mul(re, c), &mp.mul(im, s));
            full = mp.add(&full, &term);
            if j % 2 == 0 {
                even = mp.add(&even, &term);
            }
        }
        let full = mp.add(&ends, &mp.mul(&mp.int(2), &full));
        let coarse = mp.add(&ends, &mp.mul(&mp.int(2), &even));
        let c_full = mp.div(&full, &mp.mul(&mp.int(n as i64), &r_pow));
        let c_half = mp.div(&coarse, &mp.mul(&mp.int(half as i64), &r_pow));
        let r_inv_k = cfg.contour_radius.powi(-(k as i32));
        let roundoff = 10.0 * mp.eps() * max_f.max(1.0) * r_inv_k;
        let diff = to_f64(&mp.sub(&c_full, &c_half)).abs();
        out.push(Approx::new(c_full, diff + roundoff));
        r_pow = mp.mul(&r_pow, &r);
    }
    out
}

/// Taylor expansions of ξ at every point in `points`, to order K.
fn expansions(
    points: &[u32],
    cfg: &PrecisionConfig,
) -> Result<Vec<XiPointExpansion>, NumericError> {
    cfg.validate()?;
    let half = cfg.contour_nodes / 2;
    let tasks: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|p| (0..=half).map(move |j| (p, j)))
        .collect();
    let values: Vec<(BigFloat, BigFloat)> = tasks
        .par_iter()
        .map(|&(p, j)| contour_values(points[p], j, cfg))
        .collect();
    let mp = cfg.mp();
    let out = points
        .iter()
        .enumerate()
        .map(|(p, &a)| XiPointExpansion {
            point: a,
            kind: if a == 1 {
                PointKind::Polar
            } else {
                PointKind::Regular
            },
            coefficients: coefficients_from_values(
                &values[p * (half + 1)..(p + 1) * (half + 1)],
                cfg,
                &mp,
            ),
        })
        .collect();
    Ok(out)
}

/// Expansion of ξ at s = 1: exact principal part 1/(s - 1) and the Taylor
/// coefficients of the entire correction through order K.
pub fn xi_expansion_at_one(
    order: usize,
    cfg: &PrecisionConfig,
) -> Result<XiPointExpansion, NumericError> {
    if order < 1 {
        return Err(NumericError::InvalidConfig(
            "order must be at least 1".into(),
        ));
    }
    let cfg = PrecisionConfig {
        expansion_order: order,
        ..cfg.clone()
    };
    let e = expansions(&[1], &cfg)?.remove(0);
    check_error(&e, &cfg)?;
    Ok(e)
}

/// Taylor expansion of ξ at an integer point a >= 1.
pub fn xi_expansion_at(a: u32, cfg: &PrecisionConfig) -> Result<XiPointExpansion, NumericError> {
    if a == 0 {
        return Err(NumericError::InvalidPoint(a));
    }
    let e = expansions(&[a], cfg)?.remove(0);
    check_error(&e, cfg)?;
    Ok(e)
}

fn check_error(e: &XiPointExpansion, cfg: &PrecisionConfig) -> Result<(), NumericError> {
    // Coefficient k is scaled by k! for derivatives; the bound applies to
    // the coefficients themselves.
    let worst = e.max_error();
    if !(worst <= cfg.target_error()) {
        return Err(NumericError::PrecisionUnachievable {
            what: format!("Taylor coefficients of xi at {}", e.point),
            estimate: worst,
            requested: cfg.target_error(),
        });
    }
    Ok(())
}

/// The k-th derivative of ξ at an integer a >= 2.
pub fn xi_value(a: u32, k: usize, cfg: &PrecisionConfig) -> Result<Approx, NumericError> {
    if a < 2 {
        return Err(NumericError::InvalidPoint(a));
    }
    let cfg = PrecisionConfig {
        expansion_order: cfg.expansion_order.max(k).max(1),
        ..cfg.clone()
    };
    cfg.validate()?;
    let e = expansions(&[a], &cfg)?.remove(0);
    let mp = cfg.mp();
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let c = &e.coefficients[k];
    let value = mp.mul(&c.value, &mp.f64(fact));
    let out = Approx::new(value, c.error * fact);
    if !(out.error <= cfg.target_error()) {
        return Err(NumericError::PrecisionUnachievable {
            what: format!("xi^({k})({a})"),
            estimate: out.error,
            requested: cfg.target_error(),
        });
    }
    Ok(out)
}

/// Expansions at 1..=max_point for one configuration, computed once and
/// read-only afterwards.
#[derive(Clone, Debug)]
pub struct XiTable {
    cfg: PrecisionConfig,
    points: Vec<XiPointExpansion>,
}

impl XiTable {
    pub fn build(max_point: u32, cfg: &PrecisionConfig) -> Result<Self, NumericError> {
        let pts: Vec<u32> = (1..=max_point.max(1)).collect();
        let points = expansions(&pts, cfg)?;
        for e in &points {
            check_error(e, cfg)?;
        }
        Ok(XiTable {
            cfg: cfg.clone(),
            points,
        })
    }

    pub fn config(&self) -> &PrecisionConfig {
        &self.cfg
    }

    pub fn max_point(&self) -> u32 {
        self.points.len() as u32
    }

    pub fn get(&self, a: u32) -> Option<&XiPointExpansion> {
        if a == 0 {
            return None;
        }
        self.points.get(a as usize - 1)
    }
}

/// Richardson extrapolation of g(h), g(h/2), ... assuming an even error
/// expansion in h. Returns the extrapolated value and the difference of the
/// last two diagonal entries.
fn richardson(samples: &[BigFloat], mp: &Mp) -> Approx {
    let mut table: Vec<Vec<BigFloat>> = Vec::new();
    for (i, g) in samples.iter().enumerate() {
        let mut row = vec![g.clone()];
        let mut four = mp.int(4);
        for j in 1..=i {
            let prev = &table[i - 1][j - 1];
            let cur = &row[j - 1];
            let num = mp.sub(&mp.mul(&four, cur), prev);
            row.push(mp.div(&num, &mp.sub(&four, &mp.one())));
            four = mp.mul(&four, &mp.int(4));
        }
        table.push(row);
    }
    let n = table.len();
    let best = table[n - 1][n - 1].clone();
    let err = if n > 1 {
        to_f64(&mp.sub(&best, &table[n - 2][n - 2])).abs()
    } else {
        f64::INFINITY
    };
    Approx::new(best, err)
}

const FD_LEVELS: usize = 8;

/// ξ'(a) from Richardson-extrapolated central differences on the real axis.
pub fn xi_derivative_fd(a: u32, cfg: &PrecisionConfig) -> Approx {
    with_special(cfg.internal_digits(), |fns| {
        let mp = fns.mp();
        let x = mp.int(a as i64);
        let mut h = mp.ratio(1, 8);
        let mut samples = Vec::with_capacity(FD_LEVELS);
        for _ in 0..FD_LEVELS {
            let up = fns.xi_real(&mp.add(&x, &h));
            let down = fns.xi_real(&mp.sub(&x, &h));
            samples.push(mp.div(&mp.sub(&up, &down), &mp.mul(&mp.int(2), &h)));
            h = mp.div(&h, &mp.int(2));
        }
        richardson(&samples, mp)
    })
}

/// lim_{s -> 1} (ξ(s) - 1/(s - 1)) from the symmetric average
/// (E(1 + h) + E(1 - h)) / 2 and Richardson extrapolation.
pub fn polar_constant_limit(cfg: &PrecisionConfig) -> Approx {
    with_special(cfg.internal_digits(), |fns| {
        let mp = fns.mp();
        let one = mp.one();
        let mut h = mp.ratio(1, 8);
        let mut samples = Vec::with_capacity(FD_LEVELS);
        for _ in 0..FD_LEVELS {
            let up = fns
                .xi_polar_correction(&Complex::real(mp.add(&one, &h), mp))
                .re;
            let down = fns
                .xi_polar_correction(&Complex::real(mp.sub(&one, &h), mp))
                .re;
            samples.push(mp.div(&mp.add(&up, &down), &mp.int(2)));
            h = mp.div(&h, &mp.int(2));
        }
        richardson(&samples, mp)
    })
}

/// ξ at a real point, directly from the special-function layer.
pub fn xi_direct(x: f64, cfg: &PrecisionConfig) -> BigFloat {
    with_special(cfg.internal_digits(), |fns| fns.xi_real(&fns.mp().f64(x)))
}
