use num_rational::BigRational;
use num_traits::One;

use super::{XiExpression, XiFactor, XiMonomial};
use crate::orbits::{enumerate_classes, young_stats, LeviOrbitClass, Partition};

/// The monomial prod_y xi(1 + arm_y + hook_y s) over the cells of the
/// orbit's Young diagram.
pub fn z_monomial(p: &Partition) -> XiMonomial {
    let factors = young_stats(p)
        .cells()
        .iter()
        .map(|c| XiFactor::new(1 + c.arm as u32, c.hook as u32).expect("arm + 1 and hook are >= 1"))
        .collect();
    XiMonomial::new(factors)
}

/// Z_o(s) as a single-monomial expression.
pub fn z_orbit(p: &Partition) -> XiExpression {
    XiExpression::monomial(z_monomial(p), BigRational::one())
}

/// Z^M(s), the product of the block zetas of a Levi-orbit class.
pub fn z_levi(class: &LeviOrbitClass) -> XiExpression {
    let m = class
        .orbits
        .iter()
        .fold(XiMonomial::one(), |acc, o| acc.mul(&z_monomial(o)));
    XiExpression::monomial(m, BigRational::one())
}

/// H_o(s): the weighted sum of Z^M over the classes of L(o)/W.
pub fn h_orbit(p: &Partition) -> XiExpression {
    let mut out = XiExpression::zero();
    for class in enumerate_classes(p) {
        for (m, c) in z_levi(&class).terms() {
            out.add_term(m.clone(), c * &class.weight);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn xi(a: u32, b: u32) -> XiExpression {
        XiExpression::factor(XiFactor::new(a, b).unwrap())
    }

    fn prod(fs: &[(u32, u32)]) -> XiExpression {
        fs.iter()
            .fold(XiExpression::one(), |acc, &(a, b)| &acc * &xi(a, b))
    }

    #[test]
    fn three_named_orbits() {
        for n in 1..=8u32 {
            let zero: Vec<_> = (1..=n).map(|k| (k, k)).collect();
            assert_eq!(z_orbit(&Partition::zero_orbit(n as usize)), prod(&zero));
            let regular: Vec<_> = (1..=n).map(|k| (1, k)).collect();
            assert_eq!(z_orbit(&Partition::regular(n as usize)), prod(&regular));
        }
        assert_eq!(
            z_orbit(&"2,1".parse().unwrap()),
            prod(&[(1, 1), (1, 1), (2, 3)])
        );
    }

    #[test]
    fn levi_products() {
        let classes = enumerate_classes(&"2,1".parse().unwrap());
        assert_eq!(z_levi(&classes[0]), z_orbit(&"2,1".parse().unwrap()));
        assert_eq!(z_levi(&classes[1]), prod(&[(1, 1), (2, 2), (1, 1)]));
        let torus = &enumerate_classes(&"2".parse().unwrap())[1];
        assert_eq!(z_levi(torus), prod(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn h_subregular_gl3() {
        let expected = &xi(1, 1).pow(2) * &(&xi(2, 3) - &xi(2, 2));
        assert_eq!(h_orbit(&"2,1".parse().unwrap()), expected);
    }

    #[test]
    fn h_regular_gl2() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let expected = &prod(&[(1, 1), (1, 2)]) - &prod(&[(1, 1), (1, 1)]).scale(&half);
        assert_eq!(h_orbit(&"2".parse().unwrap()), expected);
    }

    #[test]
    fn h_zero_orbit_is_z() {
        for n in 1..=6 {
            let p = Partition::zero_orbit(n);
            assert_eq!(h_orbit(&p), z_orbit(&p));
        }
    }

    #[test]
    fn degree_grading() {
        // Every monomial of H_o is a product of block zetas whose cells
        // number n.
        for n in 1..=6 {
            for p in Partition::all(n) {
                for (m, _) in h_orbit(&p).terms() {
                    assert_eq!(m.degree(), n);
                }
            }
        }
    }
}
