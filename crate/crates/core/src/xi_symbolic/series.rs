use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{z_orbit, XiExpression};
use crate::orbits::Partition;

/// A formal sum of nilpotent orbits of gl(n), 0 <= n <= max_n, with
/// xi-expression coefficients. Multiplication of basis orbits is induction
/// from a two-block Levi, and products are truncated above `max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSeries {
    max_n: usize,
    coefficients: BTreeMap<Partition, XiExpression>,
}

impl OrbitSeries {
    pub fn zero(max_n: usize) -> Self {
        OrbitSeries {
            max_n,
            coefficients: BTreeMap::new(),
        }
    }

    /// The unit: the orbit of gl(0) with coefficient 1.
    pub fn one(max_n: usize) -> Self {
        let mut s = OrbitSeries::zero(max_n);
        s.set(Partition::empty(), XiExpression::one());
        s
    }

    /// 1 + sum over 1 <= |o| <= max_n of Z_o * o.
    pub fn z_series(max_n: usize) -> Self {
        let mut s = OrbitSeries::one(max_n);
        for p in Partition::all_up_to(max_n).into_iter().skip(1) {
            let z = z_orbit(&p);
            s.set(p, z);
        }
        s
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn coefficient(&self, p: &Partition) -> XiExpression {
        self.coefficients.get(p).cloned().unwrap_or_default()
    }

    /// Nonzero coefficients in canonical orbit order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &XiExpression)> {
        self.coefficients.iter()
    }

    pub fn set(&mut self, p: Partition, e: XiExpression) {
        if p.size() > self.max_n || e.is_zero() {
            self.coefficients.remove(&p);
        } else {
            self.coefficients.insert(p, e);
        }
    }

    fn accumulate(&mut self, p: Partition, e: &XiExpression) {
        if p.size() > self.max_n || e.is_zero() {
            return;
        }
        let sum = &self.coefficient(&p) + e;
        self.set(p, sum);
    }

    pub fn add(&self, other: &OrbitSeries) -> OrbitSeries {
        let mut out = self.clone();
        out.max_n = self.max_n.min(other.max_n);
        out.coefficients.retain(|p, _| p.size() <= out.max_n);
        for (p, e) in &other.coefficients {
            out.accumulate(p.clone(), e);
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> OrbitSeries {
        let mut out = OrbitSeries::zero(self.max_n);
        for (p, e) in &self.coefficients {
            out.set(p.clone(), e.scale(q));
        }
        out
    }

    pub fn mul(&self, other: &OrbitSeries) -> OrbitSeries {
        let max_n = self.max_n.min(other.max_n);
        let mut out = OrbitSeries::zero(max_n);
        for (p1, e1) in &self.coefficients {
            for (p2, e2) in &other.coefficients {
                if p1.size() + p2.size() > max_n {
                    continue;
                }
                out.accumulate(p1.induce_with(p2), &(e1 * e2));
            }
        }
        out
    }

    /// Coefficient of the gl(0) orbit.
    pub fn constant(&self) -> XiExpression {
        self.coefficient(&Partition::empty())
    }

    fn without_constant(&self) -> OrbitSeries {
        let mut x = self.clone();
        x.coefficients.remove(&Partition::empty());
        x
    }

    /// log(1 + X) = sum_{k>=1} (-1)^(k-1) X^k / k, truncated at degree
    /// max_n. Returns `None` unless the constant coefficient is exactly 1.
    pub fn log(&self) -> Option<OrbitSeries> {
        if self.constant() != XiExpression::one() {
            return None;
        }
        let x = self.without_constant();
        let mut out = OrbitSeries::zero(self.max_n);
        let mut power = x.clone();
        for k in 1..=self.max_n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let coeff = BigRational::new(BigInt::from(sign), BigInt::from(k));
            out = out.add(&power.scale(&coeff));
            power = power.mul(&x);
        }
        Some(out)
    }

    /// exp(Y) = sum_k Y^k / k! for Y without constant term, truncated at
    /// degree max_n.
    pub fn exp(&self) -> Option<OrbitSeries> {
        if !self.constant().is_zero() {
            return None;
        }
        let mut out = OrbitSeries::one(self.max_n);
        let mut power = OrbitSeries::one(self.max_n);
        let mut fact = BigInt::one();
        for k in 1..=self.max_n {
            fact *= BigInt::from(k);
            power = power.mul(self);
            out = out.add(&power.scale(&BigRational::new(BigInt::one(), fact.clone())));
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.values().all(XiExpression::is_zero)
    }
}

impl Default for OrbitSeries {
    fn default() -> Self {
        OrbitSeries::zero(0)
    }
}

/// The formal logarithm of 1 + sum_o Z_o * o through gl(max_n).
pub fn orbit_series_log(max_n: usize) -> OrbitSeries {
    OrbitSeries::z_series(max_n)
        .log()
        .expect("the Z-series has constant term 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xi_symbolic::{h_orbit, XiFactor};

    fn xi(a: u32, b: u32) -> XiExpression {
        XiExpression::factor(XiFactor::new(a, b).unwrap())
    }

    #[test]
    fn low_degree_coefficients() {
        let log = orbit_series_log(3);
        assert_eq!(log.coefficient(&"1".parse().unwrap()), xi(1, 1));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let expected2 = &(&xi(1, 1) * &xi(1, 2)) - &xi(1, 1).pow(2).scale(&half);
        assert_eq!(log.coefficient(&"2".parse().unwrap()), expected2);
        let expected21 = &xi(1, 1).pow(2) * &(&xi(2, 3) - &xi(2, 2));
        assert_eq!(log.coefficient(&"2,1".parse().unwrap()), expected21);
        assert!(log.coefficient(&Partition::empty()).is_zero());
    }

    #[test]
    fn log_matches_h_through_five() {
        let log = orbit_series_log(5);
        for p in Partition::all_up_to(5).into_iter().skip(1) {
            assert_eq!(log.coefficient(&p), h_orbit(&p), "orbit {p}");
        }
    }

    #[test]
    fn exp_inverts_log() {
        let z = OrbitSeries::z_series(4);
        assert_eq!(z.log().unwrap().exp().unwrap(), z);
    }

    #[test]
    fn orbit_product_is_commutative_and_associative() {
        let parts = Partition::all_up_to(4);
        for a in &parts {
            for b in &parts {
                assert_eq!(a.induce_with(b), b.induce_with(a));
                for c in &parts {
                    assert_eq!(
                        a.induce_with(b).induce_with(c),
                        a.induce_with(&b.induce_with(c))
                    );
                }
            }
        }
    }

    #[test]
    fn log_requires_unit_constant() {
        assert!(OrbitSeries::zero(3).log().is_none());
        assert!(OrbitSeries::one(3).exp().is_none());
    }
}
