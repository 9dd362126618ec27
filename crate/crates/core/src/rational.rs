//! Exact rational helpers: parsing and printing of `"p/q"` strings, dyadic
//! levels and certified p-th roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The rational type used everywhere.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or a plain integer. The denominator must be nonzero.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::invalid(format!("not a rational literal: {s:?}"));
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(p, q))
}

/// Prints in lowest terms with a positive denominator, always as `p/q`.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn pow2(n: u32) -> BigInt {
    BigInt::one() << n
}

/// `k / 2^n`.
pub fn dyadic(k: &BigInt, n: u32) -> Q {
    Q::new(k.clone(), pow2(n))
}

pub fn min_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if a >= b {
        a
    } else {
        b
    }
}

/// Smallest integer `>= x`.
pub fn ceil_int(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// Largest integer `<= x`.
pub fn floor_int(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Result of a p-th root: exact when the radicand is a perfect p-th power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootValue {
    Exact(Q),
    Enclosure { lo: Q, hi: Q },
}

impl RootValue {
    pub fn lower(&self) -> &Q {
        match self {
            RootValue::Exact(q) => q,
            RootValue::Enclosure { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Q {
        match self {
            RootValue::Exact(q) => q,
            RootValue::Enclosure { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RootValue::Exact(_))
    }
}

fn exact_root(n: &BigInt, p: u32) -> Option<BigInt> {
    let r = n.nth_root(p);
    if num_traits::pow(r.clone(), p as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// The p-th root of a nonnegative rational, exact when possible and otherwise
/// enclosed in `[lo, hi]` with `hi - lo = 2^-bits`.
pub fn nth_root(x: &Q, p: u32, bits: u32) -> Result<RootValue> {
    if x.is_negative() {
        return Err(Error::invalid("root of a negative rational"));
    }
    if p == 0 {
        return Err(Error::invalid("zeroth root"));
    }
    if let (Some(a), Some(b)) = (exact_root(x.numer(), p), exact_root(x.denom(), p)) {
        return Ok(RootValue::Exact(Q::new(a, b)));
    }
    // floor(2^bits * x^(1/p)) = floor((x * 2^(bits p))^(1/p))
    let scaled = x * Q::from_integer(pow2(bits * p));
    let k = floor_int(&scaled).nth_root(p);
    let lo = dyadic(&k, bits);
    let hi = dyadic(&(k + 1), bits);
    Ok(RootValue::Enclosure { lo, hi })
}

/// Least common multiple of two positive sizes.
pub fn lcm_usize(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        assert_eq!(fmt_q(&parse_q("2/4").unwrap()), "1/2");
        assert_eq!(fmt_q(&parse_q("-3/-6").unwrap()), "1/2");
        assert_eq!(fmt_q(&parse_q("0").unwrap()), "0/1");
        assert_eq!(fmt_q(&parse_q("3/-4").unwrap()), "-3/4");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn roots_exact_and_enclosed() {
        assert_eq!(nth_root(&frac(9, 4), 2, 20).unwrap(), RootValue::Exact(frac(3, 2)));
        let r = nth_root(&int(2), 2, 20).unwrap();
        let (lo, hi) = (r.lower().clone(), r.upper().clone());
        assert!(&lo * &lo <= int(2) && &hi * &hi > int(2));
        assert_eq!(hi - lo, dyadic(&BigInt::one(), 20));
    }
}
