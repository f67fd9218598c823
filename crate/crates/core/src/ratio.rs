//! Exact rational arithmetic used for every bound comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn from_usize(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or a plain integer.
pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Domain(format!("not a rational: {text:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Domain(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn show(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Ceiling as a `usize`; `None` if negative or too large.
pub fn ceil_usize(r: &Rational) -> Option<usize> {
    let c = ceil(r);
    if c.is_negative() {
        None
    } else {
        c.to_usize()
    }
}

/// `count < bound`, compared exactly.
pub fn lt_usize(count: usize, bound: &Rational) -> bool {
    from_usize(count) < *bound
}

/// Least `i >= 1` with `alpha^i <= target`, by exact powering.
///
/// This is `ceil(log_alpha(target))` for `alpha, target` in `(0, 1)`.
pub fn ceil_log(alpha: &Rational, target: &Rational) -> Result<usize> {
    let zero = Rational::zero();
    let one = Rational::one();
    if *alpha <= zero || *alpha >= one || *target <= zero || *target >= one {
        return Err(Error::Domain(format!(
            "ceil_log needs alpha, target in (0,1); got {} and {}",
            show(alpha),
            show(target)
        )));
    }
    let mut power = alpha.clone();
    let mut i = 1usize;
    while power > *target {
        power *= alpha;
        i += 1;
    }
    Ok(i)
}

/// `floor(49 c^2 + 30 c)`, the treewidth bound for growth at most `c r`.
pub fn treewidth_bound(c: &Rational) -> BigInt {
    floor(&(int(49) * c * c + int(30) * c))
}

/// `floor(49 c^2 + 30 c) + 1`, the stack-number bound.
pub fn stack_bound(c: &Rational) -> BigInt {
    treewidth_bound(c) + BigInt::one()
}

/// `floor(882 c^3)`, the clique size of a tree-product host for growth at
/// most `c r`.
pub fn product_width_bound(c: &Rational) -> BigInt {
    floor(&(int(882) * c * c * c))
}

/// `ceil(a / b)` for nonnegative integers, `b > 0`.
pub fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod as_string {
    use super::{parse, show, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&show(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}
