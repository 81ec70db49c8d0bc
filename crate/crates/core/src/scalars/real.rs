use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Prime;
use crate::{Error, Result};

/// Fractional bits carried by every [`Real`] (about 96 decimal digits).
pub const FRAC_BITS: u64 = 320;
const GUARD_BITS: u64 = 64;

/// Fixed-point real number `raw / 2^FRAC_BITS`.
///
/// Arithmetic truncates toward negative infinity; a chain of a few hundred
/// operations stays well inside the 50-digit working precision required for
/// q-integer comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Real {
    raw: BigInt,
}

impl Real {
    pub fn zero() -> Self {
        Real {
            raw: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        Real::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Real {
            raw: BigInt::from(n) << FRAC_BITS,
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Real {
            raw: n << FRAC_BITS,
        }
    }

    pub fn from_ratio(q: &BigRational) -> Self {
        Real {
            raw: (q.numer() << FRAC_BITS).div_floor(q.denom()),
        }
    }

    /// Absolute tolerance `10^-digits`.
    pub fn epsilon(digits: u32) -> Self {
        let den = BigInt::from(10u32).pow(digits);
        Real::from_ratio(&BigRational::new(BigInt::one(), den))
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn abs(&self) -> Self {
        Real {
            raw: self.raw.abs(),
        }
    }

    pub fn approx_eq(&self, other: &Real, tol: &Real) -> bool {
        (self - other).abs() <= *tol
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Real::one(), |acc, _| &acc * self)
    }

    /// Floor-rounded `k`-th root of a nonnegative rational.
    pub fn nth_root_of(q: &BigRational, k: u32) -> Result<Self> {
        if q.is_negative() || k == 0 {
            return Err(Error::InvalidArgument("root of a negative number".into()));
        }
        let scaled = (q.numer() << (FRAC_BITS * k as u64)).div_floor(q.denom());
        let root = scaled.to_biguint().expect("nonnegative").nth_root(k);
        Ok(Real {
            raw: BigInt::from(root),
        })
    }

    pub fn nth_root_of_int(n: &BigUint, k: u32) -> Result<Self> {
        Real::nth_root_of(&BigRational::from_integer(BigInt::from(n.clone())), k)
    }

    pub fn to_f64(&self) -> f64 {
        let scale = (FRAC_BITS - 60) as usize;
        let top = (&self.raw >> scale).to_f64().unwrap_or(f64::NAN);
        top / 2f64.powi(60)
    }

    /// Decimal rendering with `sig` significant digits, rounded half up.
    pub fn to_sig_string(&self, sig: usize) -> String {
        if self.raw.is_zero() {
            return "0".into();
        }
        let sig = sig.max(1);
        let neg = self.raw.is_negative();
        let mag = self.raw.abs();
        let one = BigInt::one() << FRAC_BITS;
        // decimal exponent of the leading digit
        let mut exp10: i64 = 0;
        let ten = BigInt::from(10);
        let mut probe = mag.clone();
        while probe >= &one * &ten {
            probe /= &ten;
            exp10 += 1;
        }
        while probe < one {
            probe *= &ten;
            exp10 -= 1;
        }
        let shift = sig as i64 - 1 - exp10;
        let scaled = if shift >= 0 {
            &mag * ten.pow(shift as u32)
        } else {
            &mag / ten.pow((-shift) as u32)
        };
        let half = BigInt::one() << (FRAC_BITS - 1);
        let mut digits_int: BigInt = (scaled + half) >> FRAC_BITS;
        if digits_int.to_string().len() > sig {
            digits_int /= &ten;
            exp10 += 1;
        }
        let digits = digits_int.to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if exp10 < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp10 - 1) as usize));
            out.push_str(&digits);
        } else {
            let int_len = exp10 as usize + 1;
            if int_len >= digits.len() {
                out.push_str(&digits);
                out.extend(std::iter::repeat_n('0', int_len - digits.len()));
            } else {
                out.push_str(&digits[..int_len]);
                out.push('.');
                out.push_str(&digits[int_len..]);
            }
        }
        out
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sig_string(f.precision().unwrap_or(30)))
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        Real {
            raw: &self.raw + &rhs.raw,
        }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        Real {
            raw: &self.raw - &rhs.raw,
        }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real {
            raw: (&self.raw * &rhs.raw) >> FRAC_BITS,
        }
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.is_zero(), "division by zero");
        Real {
            raw: (&self.raw << FRAC_BITS).div_floor(&rhs.raw),
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { raw: -&self.raw }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::zero(), |a, b| &a + &b)
    }
}

const WORK_BITS: u64 = FRAC_BITS + GUARD_BITS;

/// `atan(1/x) * 2^WORK_BITS` by the alternating series.
fn atan_inv(x: u64) -> BigInt {
    let one = BigInt::one() << WORK_BITS;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut sum = BigInt::zero();
    let mut n = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * n + 1);
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        n += 1;
    }
    sum
}

/// `pi * 2^WORK_BITS` (Machin's formula).
fn pi_work() -> &'static BigInt {
    static PI: OnceLock<BigInt> = OnceLock::new();
    PI.get_or_init(|| 16 * atan_inv(5) - 4 * atan_inv(239))
}

pub fn pi() -> Real {
    Real {
        raw: pi_work() >> GUARD_BITS,
    }
}

/// `sin(pi * num / den)` at working precision.
pub fn sin_pi_ratio(num: i64, den: i64) -> Real {
    assert!(den > 0);
    // reduce the angle to [0, 2) (in units of pi), then to [0, 1/2] with a sign
    let two_den = 2 * den;
    let mut n = num.rem_euclid(two_den);
    let mut negative = false;
    if n >= den {
        n -= den;
        negative = true;
    }
    if 2 * n > den {
        n = den - n;
    }
    let x: BigInt = pi_work() * BigInt::from(n) / BigInt::from(den);
    let x2 = (&x * &x) >> WORK_BITS;
    let mut term = x.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        sum += &term;
        term = -((&term * &x2) >> WORK_BITS) / BigInt::from((k + 1) * (k + 2));
        k += 2;
    }
    let raw = sum >> GUARD_BITS;
    Real {
        raw: if negative { -raw } else { raw },
    }
}

/// The q-integer `[k]_{q^power}` at `q = exp(i pi / p)`, i.e.
/// `sin(pi k power / p) / sin(pi power / p)`.
pub fn q_int(p: Prime, k: u64, power: u32) -> Result<Real> {
    let pv = p.get();
    if k < 1 || k >= pv {
        return Err(Error::LabelOutOfRange {
            label: k,
            max: pv - 1,
        });
    }
    if power != 1 && power != 2 {
        return Err(Error::InvalidArgument(format!(
            "q-integer power {power} must be 1 or 2"
        )));
    }
    if power == 2 && pv == 2 {
        return Err(Error::InvalidArgument("q^2 = 1 when p = 2".into()));
    }
    let pw = power as i64;
    let den = pv as i64;
    Ok(&sin_pi_ratio(k as i64 * pw, den) / &sin_pi_ratio(pw, den))
}

impl From<&Real> for BigRational {
    fn from(r: &Real) -> Self {
        BigRational::new(r.raw.clone(), BigInt::one() << FRAC_BITS)
    }
}

impl Real {
    pub fn sign(&self) -> Ordering {
        match self.raw.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl Real {
    /// `cos(pi * num / den) = sin(pi * (den + 2 num) / (2 den))`.
    pub fn cos_pi_ratio(num: i64, den: i64) -> Real {
        sin_pi_ratio(den + 2 * num, 2 * den)
    }
}

/// Parses a plain decimal such as `-1.618` exactly, then rounds to the
/// working precision.
impl std::str::FromStr for Real {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a decimal number: {s:?}"));
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let q = BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
        let r = Real::from_ratio(&q);
        Ok(if neg { -&r } else { r })
    }
}

impl serde::Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_sig_string(30))
    }
}

impl<'de> serde::Deserialize<'de> for Real {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn pi_digits() {
        assert_eq!(
            pi().to_sig_string(50),
            "3.1415926535897932384626433832795028841971693993751"
        );
    }

    #[test]
    fn golden_ratio_at_p5() {
        let phi = q_int(prime(5), 2, 1).unwrap();
        let sqrt5 = Real::nth_root_of_int(&BigUint::from(5u32), 2).unwrap();
        let expected = &(&Real::one() + &sqrt5) / &Real::from_int(2);
        assert!(phi.approx_eq(&expected, &Real::epsilon(60)));
        assert_eq!(phi.to_sig_string(11), "1.6180339887");
    }

    #[test]
    fn unit_and_range() {
        for p in [2, 3, 5, 7, 11] {
            let one = q_int(prime(p), 1, 1).unwrap();
            assert!(one.approx_eq(&Real::one(), &Real::epsilon(80)));
        }
        assert!(q_int(prime(5), 0, 1).is_err());
        assert!(q_int(prime(5), 5, 1).is_err());
        assert!(q_int(prime(2), 1, 2).is_err());
    }

    #[test]
    fn heptagon_value() {
        // largest root of x^3 - 2x^2 - x + 1
        let v = q_int(prime(7), 3, 1).unwrap();
        assert_eq!(v.to_sig_string(11), "2.2469796037");
        let poly = &(&(&v.powi(3) - &(&Real::from_int(2) * &v.powi(2))) - &v) + &Real::one();
        assert!(poly.abs() < Real::epsilon(60));
    }

    #[test]
    fn q_integer_symmetry() {
        let tol = Real::epsilon(40);
        for p in (2..=50).filter(|&n| super::super::is_prime(n)) {
            for k in 1..p {
                let a = q_int(prime(p), k, 1).unwrap();
                let b = q_int(prime(p), p - k, 1).unwrap();
                assert!(a.approx_eq(&b, &tol), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn sig_rendering() {
        assert_eq!(Real::from_int(13).to_sig_string(5), "13.000");
        assert_eq!(Real::from_int(-2).to_sig_string(3), "-2.00");
        assert_eq!(Real::epsilon(3).to_sig_string(2), "0.0010");
        assert_eq!(Real::from_int(123456).to_sig_string(3), "123000");
        assert_eq!(
            Real::from_ratio(&BigRational::new(BigInt::from(2), BigInt::from(3))).to_sig_string(4),
            "0.6667"
        );
    }

    #[test]
    fn eighth_root_of_thirteen() {
        let r = Real::nth_root_of_int(&BigUint::from(13u32), 8).unwrap();
        assert!(r.powi(8).approx_eq(&Real::from_int(13), &Real::epsilon(80)));
        assert!((r.to_f64() - 13f64.powf(0.125)).abs() < 1e-14);
    }
}
