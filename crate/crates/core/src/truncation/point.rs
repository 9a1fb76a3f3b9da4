use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TruncationError;

/// Largest lattice coordinate accepted by the integer fast path.
const LATTICE_BOUND: i128 = 1 << 80;

/// A point H of a_0 = Q^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConePoint {
    coords: Vec<BigRational>,
}

/// H scaled to integers: H = v / denom with denom > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub v: Vec<i128>,
    pub denom: BigInt,
}

impl ConePoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        ConePoint { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        ConePoint {
            coords: coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        ConePoint {
            coords: vec![BigRational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Coordinates read through an arrangement: `out[i] = self[arrangement[i]]`.
    pub fn permuted(&self, arrangement: &[usize]) -> ConePoint {
        ConePoint {
            coords: arrangement
                .iter()
                .map(|&i| self.coords[i].clone())
                .collect(),
        }
    }

    pub fn scaled(&self, lambda: &BigRational) -> ConePoint {
        ConePoint {
            coords: self.coords.iter().map(|c| c * lambda).collect(),
        }
    }

    /// The coordinates of `block` (0-based indices).
    pub fn restrict(&self, block: &[usize]) -> ConePoint {
        self.permuted(block)
    }

    pub fn lattice(&self) -> Result<Lattice, TruncationError> {
        let denom = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        if denom.abs() >= BigInt::from(LATTICE_BOUND) {
            return Err(TruncationError::Overflow);
        }
        let v = self
            .coords
            .iter()
            .map(|c| {
                let x = c.numer() * (&denom / c.denom());
                x.to_i128()
                    .filter(|x| x.abs() < LATTICE_BOUND)
                    .ok_or(TruncationError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Lattice { v, denom })
    }

    /// A random point with numerators in [-100, 100] and denominators in
    /// [1, 20].
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let coords = (0..n)
            .map(|_| {
                let num: i64 = rng.gen_range(-100..=100);
                let den: i64 = rng.gen_range(1..=20);
                BigRational::new(BigInt::from(num), BigInt::from(den))
            })
            .collect();
        ConePoint { coords }
    }
}

/// `count` random points of Q^n from a ChaCha stream seeded with `seed`.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<ConePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| ConePoint::random(n, &mut rng)).collect()
}

/// Every integer point of [-bound, bound]^n, walls included. Once
/// 2 * bound + 1 >= n this realizes every weak ordering of the coordinates,
/// i.e. every Weyl chamber and every wall of the braid arrangement.
pub fn grid_points(n: usize, bound: i64) -> Vec<ConePoint> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let coords: Vec<i64> = (0..n)
                .map(|_| {
                    let c = (idx % side) as i64 - bound;
                    idx /= side;
                    c
                })
                .collect();
            ConePoint::from_ints(&coords)
        })
        .collect()
}

impl fmt::Display for ConePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ConePoint {
    type Err = TruncationError;

    /// Parses "1,-1/2,3" with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigRational>()
                    .map_err(|_| TruncationError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.is_empty() {
            return Err(TruncationError::Parse(s.to_string()));
        }
        Ok(ConePoint { coords })
    }
}

impl Serialize for ConePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coords = v
            .iter()
            .map(|t| t.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ConePoint { coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_scaling() {
        let h: ConePoint = "1/2,-1/3,2".parse().unwrap();
        let l = h.lattice().unwrap();
        assert_eq!(l.v, vec![3, -2, 12]);
        assert_eq!(l.denom, BigInt::from(6));
        assert_eq!(h.to_string(), "(1/2,-1/3,2)");
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_points(4, 50, 7);
        let b = sample_points(4, 50, 7);
        assert_eq!(a, b);
        for p in &a {
            for c in p.coords() {
                assert!(c.abs() <= BigRational::from_integer(BigInt::from(100)));
                assert!(c.denom() <= &BigInt::from(20));
            }
        }
    }

    #[test]
    fn grid_size() {
        assert_eq!(grid_points(2, 1).len(), 9);
        assert!(grid_points(3, 4).contains(&ConePoint::from_ints(&[-4, 0, 4])));
    }

    #[test]
    fn json_round_trip() {
        let h: ConePoint = "(1/2,-3)".parse().unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"["1/2","-3"]"#);
        assert_eq!(serde_json::from_str::<ConePoint>(&s).unwrap(), h);
    }
}
