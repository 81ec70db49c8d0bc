//! Exact arithmetic kernel: prime fields, polynomials in `t`, fixed-point
//! reals for q-integers, and exact linear algebra.

mod fp;
mod linalg;
mod poly;
mod real;

pub use fp::{is_prime, Fp, Prime};
pub use linalg::{
    bareiss_det, bareiss_rank, rank_fp, rank_rational, solve_rational, ExactDomain, FpMatrix,
};
pub use poly::TPoly;
pub use real::{pi, q_int, sin_pi_ratio, Real};

/// Serde adapter storing a value through its `Display`/`FromStr` pair, used
/// for big integers and rationals so JSON carries `"1234"` or `"7/3"`.
pub mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;

/// A value at which a [`TPoly`] can be evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactScalar {
    Rational(BigRational),
    Fp(Fp),
}

impl ExactScalar {
    pub fn integer(n: i64) -> Self {
        ExactScalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl std::fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactScalar::Rational(q) => write!(f, "{q}"),
            ExactScalar::Fp(x) => write!(f, "{} mod {}", x.value(), x.modulus()),
        }
    }
}

pub fn poly_eval(f: &TPoly, x: &ExactScalar) -> ExactScalar {
    match x {
        ExactScalar::Rational(q) => ExactScalar::Rational(f.eval_rational(q)),
        ExactScalar::Fp(a) => ExactScalar::Fp(f.eval_fp(*a)),
    }
}
