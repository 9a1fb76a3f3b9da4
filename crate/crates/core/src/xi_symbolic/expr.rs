use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SymbolicError;
use crate::rational::{ratio_short, ratio_text, RationalJson};

/// The symbol xi(a + b s), with integer shift `a >= 1` and slope `b >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiFactor {
    a: u32,
    b: u32,
}

impl XiFactor {
    pub fn new(a: u32, b: u32) -> Result<Self, SymbolicError> {
        if a == 0 || b == 0 {
            return Err(SymbolicError::InvalidFactor { a, b });
        }
        Ok(XiFactor { a, b })
    }

    pub fn shift(&self) -> u32 {
        self.a
    }

    pub fn slope(&self) -> u32 {
        self.b
    }

    /// xi(1 + b s) has its pole at s = 0.
    pub fn is_polar(&self) -> bool {
        self.a == 1
    }
}

impl fmt::Display for XiFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi({}+{} s)", self.a, self.b)
    }
}

/// A product of xi symbols, kept as a sorted multiset. The empty product is 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiMonomial {
    factors: Vec<XiFactor>,
}

impl XiMonomial {
    pub fn one() -> Self {
        XiMonomial::default()
    }

    pub fn new(mut factors: Vec<XiFactor>) -> Self {
        factors.sort_unstable();
        XiMonomial { factors }
    }

    pub fn factors(&self) -> &[XiFactor] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn polar_count(&self) -> usize {
        self.factors.iter().filter(|f| f.is_polar()).count()
    }

    pub fn mul(&self, other: &XiMonomial) -> XiMonomial {
        let mut factors = Vec::with_capacity(self.degree() + other.degree());
        factors.extend_from_slice(&self.factors);
        factors.extend_from_slice(&other.factors);
        XiMonomial::new(factors)
    }

    /// Factors with multiplicities, e.g. `[(xi(1+1 s), 2), (xi(2+3 s), 1)]`.
    pub fn powers(&self) -> Vec<(XiFactor, usize)> {
        self.factors
            .chunk_by(|a, b| a == b)
            .map(|run| (run[0], run.len()))
            .collect()
    }

    /// Human form used in tables: `xi(1+s)^2 * xi(2+3s)`.
    pub fn pretty(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.powers()
            .iter()
            .map(|(f, k)| {
                let slope = if f.b == 1 {
                    "s".to_string()
                } else {
                    format!("{}s", f.b)
                };
                let base = format!("xi({}+{})", f.a, slope);
                if *k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

/// A finite Q-linear combination of xi monomials in canonical form: sorted
/// monomials, no zero coefficients. Two expressions are equal exactly when
/// their canonical forms agree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XiExpression {
    terms: BTreeMap<XiMonomial, BigRational>,
}

impl XiExpression {
    pub fn zero() -> Self {
        XiExpression::default()
    }

    pub fn one() -> Self {
        XiExpression::monomial(XiMonomial::one(), BigRational::one())
    }

    pub fn monomial(m: XiMonomial, coeff: BigRational) -> Self {
        let mut e = XiExpression::zero();
        e.add_term(m, coeff);
        e
    }

    /// A single symbol xi(a + b s) with coefficient 1.
    pub fn factor(f: XiFactor) -> Self {
        XiExpression::monomial(XiMonomial::new(vec![f]), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XiMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &XiMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: XiMonomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, q: &BigRational) -> XiExpression {
        if q.is_zero() {
            return XiExpression::zero();
        }
        XiExpression {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> XiExpression {
        (0..k).fold(XiExpression::one(), |acc, _| &acc * self)
    }

    /// Largest number of polar factors xi(1 + b s) in any monomial.
    pub fn max_polar_count(&self) -> usize {
        self.terms
            .keys()
            .map(XiMonomial::polar_count)
            .max()
            .unwrap_or(0)
    }

    /// Largest shift `a` occurring in any factor.
    pub fn max_shift(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(XiFactor::shift))
            .max()
            .unwrap_or(0)
    }

    /// Human form, `xi(1+s)^2 * xi(2+3s) - xi(1+s)^2 * xi(2+2s)`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let body = m.pretty();
            if mag.is_one() {
                out.push_str(&body);
            } else if m.degree() == 0 {
                out.push_str(&ratio_short(&mag));
            } else {
                out.push_str(&format!("{}*{}", ratio_short(&mag), body));
            }
        }
        out
    }
}

impl Add for &XiExpression {
    type Output = XiExpression;

    fn add(self, rhs: &XiExpression) -> XiExpression {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &XiExpression {
    type Output = XiExpression;

    fn sub(self, rhs: &XiExpression) -> XiExpression {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &XiExpression {
    type Output = XiExpression;

    fn neg(self) -> XiExpression {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &XiExpression {
    type Output = XiExpression;

    fn mul(self, rhs: &XiExpression) -> XiExpression {
        let mut out = XiExpression::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Add for XiExpression {
    type Output = XiExpression;

    fn add(self, rhs: XiExpression) -> XiExpression {
        &self + &rhs
    }
}

impl Sub for XiExpression {
    type Output = XiExpression;

    fn sub(self, rhs: XiExpression) -> XiExpression {
        &self - &rhs
    }
}

impl Mul for XiExpression {
    type Output = XiExpression;

    fn mul(self, rhs: XiExpression) -> XiExpression {
        &self * &rhs
    }
}

/// Exact equality of canonical forms.
pub fn xi_expr_equal(e1: &XiExpression, e2: &XiExpression) -> bool {
    e1 == e2
}

impl fmt::Display for XiExpression {
    /// Canonical text: `1/1*xi(1+1 s)*xi(2+3 s) + -1/2*xi(1+1 s)`, with the
    /// zero expression written `0/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0/1");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(&ratio_text(c))?;
            for factor in m.factors() {
                write!(f, "*{factor}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for XiExpression {
    type Err = SymbolicError;

    /// Parses the canonical text form written by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SymbolicError::Parse(s.to_string());
        let mut out = XiExpression::zero();
        for term in s.split(" + ") {
            let mut pieces = term.trim().split('*');
            let coeff_text = pieces.next().ok_or_else(bad)?;
            let (num, den) = coeff_text.split_once('/').ok_or_else(bad)?;
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            let mut factors = Vec::new();
            for piece in pieces {
                let inner = piece
                    .trim()
                    .strip_prefix("xi(")
                    .and_then(|r| r.strip_suffix(" s)"))
                    .ok_or_else(bad)?;
                let (a, b) = inner.split_once('+').ok_or_else(bad)?;
                let a: u32 = a.parse().map_err(|_| bad())?;
                let b: u32 = b.parse().map_err(|_| bad())?;
                factors.push(XiFactor::new(a, b)?);
            }
            out.add_term(XiMonomial::new(factors), BigRational::new(num, den));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: RationalJson,
    factors: Vec<[u32; 2]>,
}

#[derive(Serialize, Deserialize)]
struct ExpressionJson {
    terms: Vec<TermJson>,
}

impl Serialize for XiExpression {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: RationalJson::from(c),
                factors: m.factors().iter().map(|f| [f.a, f.b]).collect(),
            })
            .collect();
        ExpressionJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for XiExpression {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let json = ExpressionJson::deserialize(d)?;
        let mut out = XiExpression::zero();
        for t in json.terms {
            let coeff = BigRational::try_from(&t.coeff).map_err(D::Error::custom)?;
            let factors = t
                .factors
                .iter()
                .map(|[a, b]| XiFactor::new(*a, *b))
                .collect::<Result<Vec<_>, _>>()
                .map_err(D::Error::custom)?;
            out.add_term(XiMonomial::new(factors), coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xi(a: u32, b: u32) -> XiExpression {
        XiExpression::factor(XiFactor::new(a, b).unwrap())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn commutativity_of_products() {
        assert!(xi_expr_equal(
            &(&xi(1, 1) * &xi(2, 2)),
            &(&xi(2, 2) * &xi(1, 1))
        ));
    }

    #[test]
    fn distinct_symbols_differ() {
        assert!(!xi_expr_equal(&xi(1, 1), &xi(1, 2)));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let e = &xi(2, 3) - &xi(2, 3);
        assert!(e.is_zero());
        assert_eq!(e.len(), 0);
        assert_eq!(e.to_string(), "0/1");
    }

    #[test]
    fn rejects_zero_shift() {
        assert!(XiFactor::new(0, 1).is_err());
        assert!(XiFactor::new(1, 0).is_err());
    }

    #[test]
    fn text_forms() {
        let e = &(&xi(1, 1).pow(2) * &xi(2, 3)) - &(&xi(1, 1).pow(2) * &xi(2, 2)).scale(&q(1, 2));
        assert_eq!(
            e.to_string(),
            "-1/2*xi(1+1 s)*xi(1+1 s)*xi(2+2 s) + 1/1*xi(1+1 s)*xi(1+1 s)*xi(2+3 s)"
        );
        assert_eq!(
            e.pretty(),
            "-1/2*xi(1+s)^2 * xi(2+2s) + xi(1+s)^2 * xi(2+3s)"
        );
        assert_eq!(e.to_string().parse::<XiExpression>().unwrap(), e);
        assert!("1/1*xi(0+1 s)".parse::<XiExpression>().is_err());
        assert!("xi(1+1 s)".parse::<XiExpression>().is_err());
    }

    #[test]
    fn json_form() {
        let e = &xi(1, 1) - &xi(2, 2).scale(&q(1, 2));
        let j = serde_json::to_string(&e).unwrap();
        assert_eq!(
            j,
            r#"{"terms":[{"coeff":{"num":1,"den":1},"factors":[[1,1]]},{"coeff":{"num":-1,"den":2},"factors":[[2,2]]}]}"#
        );
        assert_eq!(serde_json::from_str::<XiExpression>(&j).unwrap(), e);
    }

    fn arb_expr() -> impl Strategy<Value = XiExpression> {
        let factor = (1u32..4, 1u32..4).prop_map(|(a, b)| XiFactor::new(a, b).unwrap());
        let term = (prop::collection::vec(factor, 0..3), -4i64..5, 1i64..4);
        prop::collection::vec(term, 0..4).prop_map(|terms| {
            let mut e = XiExpression::zero();
            for (fs, n, d) in terms {
                e.add_term(XiMonomial::new(fs), q(n, d));
            }
            e
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &XiExpression::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn text_and_json_round_trip(a in arb_expr()) {
            prop_assert_eq!(a.to_string().parse::<XiExpression>().unwrap(), a.clone());
            let j = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<XiExpression>(&j).unwrap(), a);
        }
    }
}
