//! ζ, Γ and ξ at complex arguments, plus the real-axis primitives (ζ and
//! ζ' by differentiated Euler–Maclaurin, the digamma function) that the
//! independent derivative oracle is assembled from.

use std::sync::{Mutex, OnceLock};

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::mp::{to_f64, Complex, Mp};

static BERNOULLI: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();

/// Bernoulli numbers B_0..=B_m (with B_1 = -1/2), cached across calls.
pub fn bernoulli_numbers(m: usize) -> Vec<BigRational> {
    let cache = BERNOULLI.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut b = cache.lock().unwrap_or_else(|e| e.into_inner());
    while b.len() <= m {
        let n = b.len();
        // sum_{k=0}^{n} C(n+1, k) B_k = 0
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b[..=m].to_vec()
}

fn rational_to_float(q: &BigRational, mp: &Mp) -> BigFloat {
    mp.div(
        &mp.parse(&q.numer().to_string()),
        &mp.parse(&q.denom().to_string()),
    )
}

/// Precomputed tables for one working precision. Building one costs a few
/// milliseconds; evaluations reuse it.
pub struct SpecialFns {
    mp: Mp,
    cutoff: usize,
    ln_k: Vec<BigFloat>,
    /// B_{2j} / (2j)!, j >= 1.
    em: Vec<BigFloat>,
    /// B_{2j} / (2j (2j - 1)), j >= 1.
    stirling: Vec<BigFloat>,
    ln_pi: BigFloat,
    half_ln_2pi: BigFloat,
    stirling_radius: f64,
}

impl SpecialFns {
    pub fn new(mp: Mp) -> Self {
        let bits = mp.bits();
        // Euler–Maclaurin terms shrink roughly like (|s| + 2j)^2 / (2 pi M)^2.
        let cutoff = (bits / 4).max(30);
        let terms = bits / 2 + 20;
        let b = bernoulli_numbers(2 * terms);
        let mut em = Vec::with_capacity(terms);
        let mut stirling = Vec::with_capacity(terms);
        let mut fact = BigInt::from(2);
        for j in 1..=terms {
            let b2j = &b[2 * j];
            em.push(rational_to_float(
                &(b2j / BigRational::from_integer(fact.clone())),
                &mp,
            ));
            let d = BigInt::from(2 * j) * BigInt::from(2 * j - 1);
            stirling.push(rational_to_float(
                &(b2j / BigRational::from_integer(d)),
                &mp,
            ));
            fact *= BigInt::from((2 * j + 1) * (2 * j + 2));
        }
        let ln_k = (0..=cutoff)
            .map(|k| {
                if k == 0 {
                    mp.zero()
                } else {
                    mp.ln(&mp.int(k as i64))
                }
            })
            .collect();
        let pi = mp.pi();
        let ln_pi = mp.ln(&pi);
        let half_ln_2pi = mp.div(&mp.ln(&mp.mul(&mp.int(2), &pi)), &mp.int(2));
        // Stirling's series reaches 2^-bits once |w| > bits ln 2 / (2 pi).
        let stirling_radius =
            bits as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) + 8.0;
        SpecialFns {
            mp,
            cutoff,
            ln_k,
            em,
            stirling,
            ln_pi,
            half_ln_2pi,
            stirling_radius,
        }
    }

    pub fn mp(&self) -> &Mp {
        &self.mp
    }

    fn small(&self, term: f64, scale: f64) -> bool {
        term <= self.mp.eps() * scale.max(1e-300)
    }

    /// Riemann ζ(s) for s != 1 by Euler–Maclaurin summation.
    pub fn zeta(&self, s: &Complex) -> Complex {
        let mp = &self.mp;
        let m = self.cutoff;
        let mut sum = Complex::real(mp.zero(), mp);
        for k in 1..m {
            sum = sum.add(&s.neg_pow_base(&self.ln_k[k], mp), mp);
        }
        let m_f = mp.int(m as i64);
        let m_pow = s.neg_pow_base(&self.ln_k[m], mp);
        let s_minus_1 = s.sub(&Complex::real(mp.one(), mp), mp);
        sum = sum.add(&m_pow.scale(&m_f, mp).div(&s_minus_1, mp), mp);
        sum = sum.add(&m_pow.scale(&mp.ratio(1, 2), mp), mp);
        // T_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * M^{-s-2j+1}
        let inv_m = mp.div(&mp.one(), &m_f);
        let inv_m2 = mp.mul(&inv_m, &inv_m);
        let mut rising = s.clone();
        let mut power = m_pow.scale(&inv_m, mp);
        let scale = sum.abs_f64();
        for (j, coeff) in self.em.iter().enumerate() {
            let j = j + 1;
            if j > 1 {
                let a = s.add(&Complex::real(mp.int(2 * j as i64 - 3), mp), mp);
                let b = s.add(&Complex::real(mp.int(2 * j as i64 - 2), mp), mp);
                rising = rising.mul(&a, mp).mul(&b, mp);
                power = power.scale(&inv_m2, mp);
            }
            let term = rising.mul(&power, mp).scale(coeff, mp);
            sum = sum.add(&term, mp);
            if self.small(term.abs_f64(), scale) {
                break;
            }
        }
        sum
    }

    /// Stirling's series for log Γ(w), valid for Re w > 0 and |w| large.
    fn ln_gamma_stirling(&self, w: &Complex) -> Complex {
        let mp = &self.mp;
        let ln_w = w.ln(mp);
        let half = Complex::real(mp.ratio(1, 2), mp);
        let mut acc = w.sub(&half, mp).mul(&ln_w, mp).sub(w, mp);
        acc = acc.add(&Complex::real(self.half_ln_2pi.clone(), mp), mp);
        let inv_w = w.recip(mp);
        let inv_w2 = inv_w.mul(&inv_w, mp);
        let mut power = inv_w;
        let scale = acc.abs_f64();
        for coeff in &self.stirling {
            let term = power.scale(coeff, mp);
            acc = acc.add(&term, mp);
            if self.small(term.abs_f64(), scale) {
                break;
            }
            power = power.mul(&inv_w2, mp);
        }
        acc
    }

    /// Γ(z), with reflection for Re z < 1/2 and an upward shift before
    /// Stirling's series.
    pub fn gamma(&self, z: &Complex) -> Complex {
        let mp = &self.mp;
        if to_f64(&z.re) < 0.5 {
            let one = Complex::real(mp.one(), mp);
            let pi = mp.pi();
            let sin = z.scale(&pi, mp).sin(mp);
            let g = self.gamma(&one.sub(z, mp));
            return Complex::real(pi, mp).div(&sin.mul(&g, mp), mp);
        }
        let re = to_f64(&z.re);
        let im = to_f64(&z.im);
        let mut shift = 0usize;
        while (re + shift as f64).hypot(im) < self.stirling_radius {
            shift += 1;
        }
        let w = z.add(&Complex::real(mp.int(shift as i64), mp), mp);
        let mut denom = Complex::real(mp.one(), mp);
        for j in 0..shift {
            denom = denom.mul(&z.add(&Complex::real(mp.int(j as i64), mp), mp), mp);
        }
        self.ln_gamma_stirling(&w).exp(mp).div(&denom, mp)
    }

    /// ξ(s) = π^{-s/2} Γ(s/2) ζ(s), for s away from 0 and 1.
    pub fn xi(&self, s: &Complex) -> Complex {
        let mp = &self.mp;
        let half_s = s.scale(&mp.ratio(1, 2), mp);
        let pi_pow = half_s.scale(&self.ln_pi, mp).neg().exp(mp);
        pi_pow.mul(&self.gamma(&half_s), mp).mul(&self.zeta(s), mp)
    }

    /// The entire function ξ(s) - 1/(s - 1), for s away from 0 and 1.
    pub fn xi_polar_correction(&self, s: &Complex) -> Complex {
        let mp = &self.mp;
        let pole = s.sub(&Complex::real(mp.one(), mp), mp).recip(mp);
        self.xi(s).sub(&pole, mp)
    }

    pub fn xi_real(&self, x: &BigFloat) -> BigFloat {
        self.xi(&Complex::real(x.clone(), &self.mp)).re
    }

    /// ζ(x) and ζ'(x) for real x > 1, differentiating the Euler–Maclaurin
    /// formula term by term.
    pub fn zeta_real_with_derivative(&self, x: &BigFloat) -> (BigFloat, BigFloat) {
        let mp = &self.mp;
        let m = self.cutoff;
        let mut z = mp.zero();
        let mut dz = mp.zero();
        for k in 2..m {
            let t = mp.exp(&mp.mul(&self.ln_k[k], x).neg());
            z = mp.add(&z, &t);
            dz = mp.sub(&dz, &mp.mul(&self.ln_k[k], &t));
        }
        z = mp.add(&z, &mp.one());
        let ln_m = &self.ln_k[m];
        let m_f = mp.int(m as i64);
        let m_pow = mp.exp(&mp.mul(ln_m, x).neg());
        let xm1 = mp.sub(x, &mp.one());
        // M^{1-x}/(x-1)
        let tail = mp.div(&mp.mul(&m_pow, &m_f), &xm1);
        z = mp.add(&z, &tail);
        let dtail = mp.add(&mp.mul(ln_m, &tail), &mp.div(&tail, &xm1)).neg();
        dz = mp.add(&dz, &dtail);
        let half_pow = mp.div(&m_pow, &mp.int(2));
        z = mp.add(&z, &half_pow);
        dz = mp.sub(&dz, &mp.mul(ln_m, &half_pow));
        // T_j = c_j P_j(x) M^{-x-2j+1}, P_j = x(x+1)...(x+2j-2)
        let inv_m = mp.div(&mp.one(), &m_f);
        let inv_m2 = mp.mul(&inv_m, &inv_m);
        let mut p = x.clone();
        let mut dp = mp.one();
        let mut power = mp.mul(&m_pow, &inv_m);
        let scale = to_f64(&z).abs();
        for (j, coeff) in self.em.iter().enumerate() {
            let j = j + 1;
            if j > 1 {
                for i in [2 * j - 3, 2 * j - 2] {
                    let f = mp.add(x, &mp.int(i as i64));
                    dp = mp.add(&mp.mul(&dp, &f), &p);
                    p = mp.mul(&p, &f);
                }
                power = mp.mul(&power, &inv_m2);
            }
            let t = mp.mul(&mp.mul(coeff, &p), &power);
            let dt = mp.mul(&mp.mul(coeff, &power), &mp.sub(&dp, &mp.mul(ln_m, &p)));
            z = mp.add(&z, &t);
            dz = mp.add(&dz, &dt);
            if self.small(to_f64(&t).abs() + to_f64(&dt).abs(), scale) {
                break;
            }
        }
        (z, dz)
    }

    /// Digamma ψ(x) for real x > 0: upward recurrence, then the asymptotic
    /// series ln w - 1/(2w) - sum B_{2j} / (2j w^{2j}).
    pub fn digamma_real(&self, x: &BigFloat) -> BigFloat {
        let mp = &self.mp;
        let mut acc = mp.zero();
        let mut w = x.clone();
        while to_f64(&w) < self.stirling_radius {
            acc = mp.sub(&acc, &mp.div(&mp.one(), &w));
            w = mp.add(&w, &mp.one());
        }
        acc = mp.add(&acc, &mp.ln(&w));
        acc = mp.sub(&acc, &mp.div(&mp.one(), &mp.mul(&mp.int(2), &w)));
        let inv_w2 = mp.div(&mp.one(), &mp.mul(&w, &w));
        let mut power = inv_w2.clone();
        let b = bernoulli_numbers(2 * self.stirling.len());
        for j in 1..=self.stirling.len() {
            let c = rational_to_float(
                &(&b[2 * j] / BigRational::from_integer(BigInt::from(2 * j))),
                mp,
            );
            let t = mp.mul(&c, &power);
            acc = mp.sub(&acc, &t);
            if self.small(to_f64(&t).abs(), 1.0) {
                break;
            }
            power = mp.mul(&power, &inv_w2);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigFloat, b: &BigFloat, tol: f64, mp: &Mp) -> bool {
        to_f64(&mp.sub(a, b)).abs() <= tol
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[3], q(0, 1));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[12], q(-691, 2730));
    }

    #[test]
    fn zeta_even_values() {
        let f = SpecialFns::new(Mp::with_digits(50));
        let mp = f.mp();
        let pi = mp.pi();
        let pi2 = mp.mul(&pi, &pi);
        let z2 = f.zeta(&Complex::real(mp.int(2), mp));
        assert!(close(&z2.re, &mp.div(&pi2, &mp.int(6)), 1e-45, mp));
        let z4 = f.zeta(&Complex::real(mp.int(4), mp));
        assert!(close(
            &z4.re,
            &mp.div(&mp.mul(&pi2, &pi2), &mp.int(90)),
            1e-45,
            mp
        ));
        let z0 = f.zeta(&Complex::real(mp.zero(), mp));
        assert!(close(&z0.re, &mp.ratio(-1, 2), 1e-45, mp));
    }

    #[test]
    fn gamma_values() {
        let f = SpecialFns::new(Mp::with_digits(40));
        let mp = f.mp();
        let g5 = f.gamma(&Complex::real(mp.int(5), mp));
        assert!(close(&g5.re, &mp.int(24), 1e-33, mp));
        let half = f.gamma(&Complex::real(mp.ratio(1, 2), mp));
        assert!(close(&half.re, &mp.sqrt(&mp.pi()), 1e-35, mp));
        // Γ(-1/2) = -2 sqrt(pi), through the reflection branch.
        let neg = f.gamma(&Complex::real(mp.ratio(-1, 2), mp));
        let expected = mp.mul(&mp.int(-2), &mp.sqrt(&mp.pi()));
        assert!(close(&neg.re, &expected, 1e-35, mp));
        // |Γ(i)|^2 = pi / sinh(pi)
        let gi = f.gamma(&Complex::new(mp.zero(), mp.one()));
        let pi = mp.pi();
        assert!(close(
            &gi.norm_sqr(mp),
            &mp.div(&pi, &mp.sinh(&pi)),
            1e-35,
            mp
        ));
    }

    #[test]
    fn xi_is_real_symmetric() {
        let f = SpecialFns::new(Mp::with_digits(30));
        let mp = f.mp();
        let s = Complex::new(mp.f64(2.2), mp.f64(0.2));
        let t = Complex::real(mp.one(), mp).sub(&s, mp);
        assert!(f.xi(&s).sub(&f.xi(&t), mp).abs_f64() < 1e-30);
    }

    #[test]
    fn digamma_one_is_minus_euler_gamma() {
        let f = SpecialFns::new(Mp::with_digits(40));
        let mp = f.mp();
        let gamma = mp.parse("0.5772156649015328606065120900824024310422");
        assert!(close(&f.digamma_real(&mp.one()), &gamma.neg(), 1e-38, mp));
    }
}
