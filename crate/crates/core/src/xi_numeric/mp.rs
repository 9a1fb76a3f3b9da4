//! Thin multiprecision layer over `astro_float`: a working context and a
//! complex type built on its real floats.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

/// Working precision and constant cache. Not `Sync`; each worker thread
/// builds its own.
pub struct Mp {
    bits: usize,
    rm: RoundingMode,
    cc: RefCell<Consts>,
}

impl Mp {
    /// A context carrying `digits` decimal digits.
    pub fn with_digits(digits: u32) -> Self {
        Mp::with_bits(Mp::bits_for_digits(digits))
    }

    pub fn bits_for_digits(digits: u32) -> usize {
        ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 64
    }

    pub fn with_bits(bits: usize) -> Self {
        Mp {
            bits: bits.max(64),
            rm: RoundingMode::ToEven,
            cc: RefCell::new(Consts::new().expect("constant cache allocation")),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// 2^-bits, the unit roundoff of this context.
    pub fn eps(&self) -> f64 {
        (-(self.bits as f64)).exp2()
    }

    pub fn int(&self, i: i64) -> BigFloat {
        BigFloat::from_i64(i, self.bits)
    }

    pub fn f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn ratio(&self, num: i64, den: i64) -> BigFloat {
        self.div(&self.int(num), &self.int(den))
    }

    pub fn zero(&self) -> BigFloat {
        self.int(0)
    }

    pub fn one(&self) -> BigFloat {
        self.int(1)
    }

    pub fn pi(&self) -> BigFloat {
        self.cc.borrow_mut().pi(self.bits, self.rm)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, self.rm)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, self.rm)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, self.rm)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, self.rm)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, self.rm)
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, self.rm, &mut self.cc.borrow_mut())
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, self.rm, &mut self.cc.borrow_mut())
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        a.sin(self.bits, self.rm, &mut self.cc.borrow_mut())
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        a.cos(self.bits, self.rm, &mut self.cc.borrow_mut())
    }

    pub fn sinh(&self, a: &BigFloat) -> BigFloat {
        a.sinh(self.bits, self.rm, &mut self.cc.borrow_mut())
    }

    pub fn cosh(&self, a: &BigFloat) -> BigFloat {
        a.cosh(self.bits, self.rm, &mut self.cc.borrow_mut())
    }

    pub fn atan(&self, a: &BigFloat) -> BigFloat {
        a.atan(self.bits, self.rm, &mut self.cc.borrow_mut())
    }

    /// atan2(y, x) on the principal branch.
    pub fn atan2(&self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        if x.is_zero() {
            let half_pi = self.div(&self.pi(), &self.int(2));
            return if y.is_negative() {
                half_pi.neg()
            } else {
                half_pi
            };
        }
        let base = self.atan(&self.div(y, x));
        if x.is_positive() {
            base
        } else if y.is_negative() {
            self.sub(&base, &self.pi())
        } else {
            self.add(&base, &self.pi())
        }
    }

    /// Parses a decimal literal at working precision.
    pub fn parse(&self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.bits, self.rm, &mut self.cc.borrow_mut())
    }
}

/// Nearest f64, including values outside the f64 exponent range (which
/// saturate to 0 or infinity).
pub fn to_f64(x: &BigFloat) -> f64 {
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let Some(&top) = words.last() else {
        return 0.0;
    };
    if top == 0 {
        return 0.0;
    }
    let frac = top as f64 / 2f64.powi(64);
    let v = frac * 2f64.powi(exp.clamp(-1100, 1100));
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Decimal scientific notation with `digits` significant digits.
pub fn to_decimal(x: &BigFloat, digits: usize, mp: &Mp) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let raw = x
        .format(Radix::Dec, RoundingMode::ToEven, &mut mp.cc.borrow_mut())
        .unwrap_or_else(|_| "NaN".to_string());
    round_decimal(&raw, digits.max(1))
}

/// Rounds a string of the form `[-]d.ddd[e±x]` to `digits` significant
/// digits, half away from zero.
fn round_decimal(raw: &str, digits: usize) -> String {
    let (neg, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let point = mantissa.find('.').unwrap_or(mantissa.len()) as i64;
    let all: Vec<u8> = mantissa
        .bytes()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
        .collect();
    let lead = all.iter().position(|&d| d != 0);
    let Some(lead) = lead else {
        return "0".to_string();
    };
    // Decimal exponent of the leading digit.
    let mut e10 = point - 1 - lead as i64 + exp;
    let mut kept: Vec<u8> = all[lead..]
        .iter()
        .copied()
        .chain(std::iter::repeat(0))
        .take(digits)
        .collect();
    if all.get(lead + digits).is_some_and(|&d| d >= 5) {
        let mut i = digits;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                e10 += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push((b'0' + kept[0]) as char);
    if kept.len() > 1 {
        s.push('.');
        s.extend(kept[1..].iter().map(|&d| (b'0' + d) as char));
    }
    s.push_str(&format!("e{e10}"));
    s
}

/// Complex number over `BigFloat`. Arithmetic goes through an [`Mp`].
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn real(re: BigFloat, mp: &Mp) -> Self {
        Complex { re, im: mp.zero() }
    }

    pub fn add(&self, o: &Complex, mp: &Mp) -> Complex {
        Complex::new(mp.add(&self.re, &o.re), mp.add(&self.im, &o.im))
    }

    pub fn sub(&self, o: &Complex, mp: &Mp) -> Complex {
        Complex::new(mp.sub(&self.re, &o.re), mp.sub(&self.im, &o.im))
    }

    pub fn mul(&self, o: &Complex, mp: &Mp) -> Complex {
        let re = mp.sub(&mp.mul(&self.re, &o.re), &mp.mul(&self.im, &o.im));
        let im = mp.add(&mp.mul(&self.re, &o.im), &mp.mul(&self.im, &o.re));
        Complex::new(re, im)
    }

    pub fn scale(&self, k: &BigFloat, mp: &Mp) -> Complex {
        Complex::new(mp.mul(&self.re, k), mp.mul(&self.im, k))
    }

    pub fn norm_sqr(&self, mp: &Mp) -> BigFloat {
        mp.add(&mp.mul(&self.re, &self.re), &mp.mul(&self.im, &self.im))
    }

    pub fn recip(&self, mp: &Mp) -> Complex {
        let d = self.norm_sqr(mp);
        Complex::new(mp.div(&self.re, &d), mp.div(&self.im, &d).neg())
    }

    pub fn div(&self, o: &Complex, mp: &Mp) -> Complex {
        self.mul(&o.recip(mp), mp)
    }

    pub fn neg(&self) -> Complex {
        Complex::new(self.re.neg(), self.im.neg())
    }

    pub fn exp(&self, mp: &Mp) -> Complex {
        let r = mp.exp(&self.re);
        Complex::new(mp.mul(&r, &mp.cos(&self.im)), mp.mul(&r, &mp.sin(&self.im)))
    }

    /// Principal logarithm.
    pub fn ln(&self, mp: &Mp) -> Complex {
        let modulus = mp.ln(&self.norm_sqr(mp));
        let half = mp.div(&modulus, &mp.int(2));
        Complex::new(half, mp.atan2(&self.im, &self.re))
    }

    pub fn sin(&self, mp: &Mp) -> Complex {
        Complex::new(
            mp.mul(&mp.sin(&self.re), &mp.cosh(&self.im)),
            mp.mul(&mp.cos(&self.re), &mp.sinh(&self.im)),
        )
    }

    /// exp(-self * ln k) for a precomputed `ln_k`.
    pub fn neg_pow_base(&self, ln_k: &BigFloat, mp: &Mp) -> Complex {
        self.scale(ln_k, mp).neg().exp(mp)
    }

    pub fn abs_f64(&self) -> f64 {
        to_f64(&self.re).hypot(to_f64(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let mp = Mp::with_digits(40);
        let s = to_decimal(&mp.pi(), 30, &mp);
        assert_eq!(s, "3.14159265358979323846264338328e0");
    }

    #[test]
    fn f64_round_trip() {
        let mp = Mp::with_digits(30);
        for x in [1.0, -2.5, 1e-30, 3.75e12, -0.1] {
            let y = to_f64(&mp.f64(x));
            assert!((y - x).abs() <= 1e-15 * x.abs(), "{x} -> {y}");
        }
        assert_eq!(to_f64(&mp.zero()), 0.0);
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(round_decimal("9.996e-1", 3), "1.00e0");
        assert_eq!(round_decimal("-1.2345e2", 3), "-1.23e2");
        assert_eq!(round_decimal("0.000125", 2), "1.3e-4");
    }

    #[test]
    fn complex_exp_log() {
        let mp = Mp::with_digits(30);
        let z = Complex::new(mp.f64(0.3), mp.f64(-2.0));
        let back = z.exp(&mp).ln(&mp);
        assert!(back.sub(&z, &mp).abs_f64() < 1e-30);
        let w = Complex::new(mp.f64(-1.0), mp.f64(0.5));
        let q = z.div(&w, &mp).mul(&w, &mp);
        assert!(q.sub(&z, &mp).abs_f64() < 1e-30);
    }
}
