//! Laurent polynomials `sum c_k n^k` with rational coefficients, used as the
//! per-residue-class pieces of functions on `N`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{floor_int, Q};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, Q>,
}

/// Behaviour as `n -> ∞`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Limit {
    Finite(Q),
    PosInf,
    NegInf,
}

impl Limit {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Limit::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: Q) -> Self {
        Laurent::monomial(c, 0)
    }

    pub fn monomial(c: Q, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let e = terms.entry(*k).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        Laurent { terms }
    }

    pub fn scale(&self, s: &Q) -> Laurent {
        if s.is_zero() {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn neg(&self) -> Laurent {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Laurent) -> Result<Laurent> {
        let mut out = Laurent::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let k = k1.checked_add(*k2).ok_or_else(|| Error::invalid("exponent overflow"))?;
                out = out.add(&Laurent::monomial(c1 * c2, k));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, p: u32) -> Result<Laurent> {
        let mut out = Laurent::constant(Q::one());
        for _ in 0..p {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn eval(&self, n: u64) -> Q {
        let n = BigInt::from(n);
        self.terms
            .iter()
            .map(|(k, c)| {
                let p = num_traits::pow(n.clone(), k.unsigned_abs() as usize);
                if *k >= 0 {
                    c * Q::from_integer(p)
                } else {
                    c / Q::from_integer(p)
                }
            })
            .sum()
    }

    fn lead(&self) -> Option<(i32, &Q)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// Sign of `P(n)` for all sufficiently large `n` (0 only for `P = 0`).
    pub fn eventual_sign(&self) -> i8 {
        match self.lead() {
            None => 0,
            Some((_, c)) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// A `T` such that `sign(P(n)) = eventual_sign()` for every integer
    /// `n > T`, from the Cauchy root bound of `n^-lo P(n)`.
    pub fn sign_threshold(&self) -> Result<u64> {
        let Some((_, lead)) = self.lead() else { return Ok(0) };
        let lead = lead.abs();
        let ratio = self
            .terms
            .iter()
            .rev()
            .skip(1)
            .map(|(_, c)| c.abs() / &lead)
            .max()
            .unwrap_or_else(Q::zero);
        let bound = floor_int(&(ratio + Q::one()));
        bound.to_u64().ok_or_else(|| Error::invalid("sign threshold too large"))
    }

    pub fn limit(&self) -> Limit {
        match self.lead() {
            Some((k, c)) if k > 0 => {
                if c.is_positive() {
                    Limit::PosInf
                } else {
                    Limit::NegInf
                }
            }
            _ => Limit::Finite(self.terms.get(&0).cloned().unwrap_or_else(Q::zero)),
        }
    }

    /// For a finite limit `L`: eventual sign of `P(n) - L`.
    pub fn approach(&self) -> i8 {
        let rest = self.terms.iter().filter(|(k, _)| **k < 0).next_back();
        match rest {
            None => 0,
            Some((_, c)) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn reciprocal_behaviour() {
        let r = Laurent::monomial(int(1), -1);
        assert_eq!(r.eval(4), frac(1, 4));
        assert_eq!(r.limit(), Limit::Finite(int(0)));
        assert_eq!(r.approach(), 1);
        let shifted = r.sub(&Laurent::constant(frac(1, 3)));
        let t = shifted.sign_threshold().unwrap();
        for n in t + 1..t + 50 {
            assert!(shifted.eval(n) < int(0));
        }
    }

    #[test]
    fn threshold_is_sound_for_mixed_terms() {
        let p = Laurent::monomial(int(1), 2).add(&Laurent::monomial(int(-30), 1)).add(&Laurent::constant(int(7)));
        let t = p.sign_threshold().unwrap();
        for n in t + 1..t + 100 {
            assert!(p.eval(n) > int(0));
        }
        assert_eq!(p.limit(), Limit::PosInf);
    }
}
