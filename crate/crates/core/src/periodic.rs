//! Eventually periodic subsets of `N = {1, 2, ..}` and the three fields of
//! such sets: finite/cofinite, purely periodic, eventually periodic.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::{int, Q};

/// Cap on aligned periods, overridable through `CHARGELAB_PERIOD_CAP`.
pub const DEFAULT_PERIOD_CAP: usize = 1 << 16;

pub fn period_cap() -> usize {
    std::env::var("CHARGELAB_PERIOD_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_PERIOD_CAP)
}

/// `A = {n : bits(n)}` where `bits(n) = pre[n-1]` for `n <= pre.len()` and
/// `per[(n - pre.len() - 1) mod per.len()]` afterwards. Always kept with the
/// minimal period and then the minimal preperiod, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpSet {
    pre: Vec<bool>,
    per: Vec<bool>,
}

fn bits_from_str(s: &str, what: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::input(format!("/{what}"), format!("expected a bit string, got {s:?}"))),
        })
        .collect()
}

fn bits_to_str(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

impl EpSet {
    pub fn new(pre: Vec<bool>, per: Vec<bool>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::input("/period", "the period must be nonempty"));
        }
        let cap = period_cap();
        if per.len() > cap || pre.len() > cap {
            return Err(Error::PeriodCap { needed: per.len().max(pre.len()), cap });
        }
        let mut s = EpSet { pre, per };
        s.canonicalize();
        Ok(s)
    }

    pub fn from_bits(pre: &str, per: &str) -> Result<Self> {
        EpSet::new(bits_from_str(pre, "preperiod")?, bits_from_str(per, "period")?)
    }

    pub fn empty() -> Self {
        EpSet { pre: vec![], per: vec![false] }
    }

    pub fn all() -> Self {
        EpSet { pre: vec![], per: vec![true] }
    }

    pub fn finite(elements: &[u64]) -> Result<Self> {
        Self::with_exceptions(elements, false)
    }

    /// `N` minus the listed elements.
    pub fn cofinite_complement(elements: &[u64]) -> Result<Self> {
        Self::with_exceptions(elements, true)
    }

    fn with_exceptions(elements: &[u64], base: bool) -> Result<Self> {
        if elements.contains(&0) {
            return Err(Error::input("/elements", "natural numbers start at 1"));
        }
        let len = elements.iter().copied().max().unwrap_or(0) as usize;
        if len > period_cap() {
            return Err(Error::PeriodCap { needed: len, cap: period_cap() });
        }
        let mut pre = vec![base; len];
        for &e in elements {
            pre[e as usize - 1] = !base;
        }
        EpSet::new(pre, vec![base])
    }

    /// `{n >= 1 : n ≡ r (mod m)}`.
    pub fn residue(r: u64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        let per = (1..=m as u64).map(|n| n % m as u64 == r % m as u64).collect();
        EpSet::new(vec![], per)
    }

    pub fn preperiod(&self) -> &[bool] {
        &self.pre
    }

    pub fn period(&self) -> &[bool] {
        &self.per
    }

    pub fn preperiod_str(&self) -> String {
        bits_to_str(&self.pre)
    }

    pub fn period_str(&self) -> String {
        bits_to_str(&self.per)
    }

    fn canonicalize(&mut self) {
        let q = self.per.len();
        if let Some(d) = (1..=q).find(|d| q % d == 0 && (0..q).all(|i| self.per[i] == self.per[i % d])) {
            self.per.truncate(d);
        }
        while let Some(&last) = self.pre.last() {
            if last != *self.per.last().unwrap() {
                break;
            }
            self.pre.pop();
            self.per.rotate_right(1);
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let p = self.pre.len() as u64;
        if n <= p {
            self.pre[n as usize - 1]
        } else {
            self.per[((n - p - 1) % self.per.len() as u64) as usize]
        }
    }

    pub fn is_finite(&self) -> bool {
        self.per == [false]
    }

    pub fn is_cofinite(&self) -> bool {
        self.per == [true]
    }

    pub fn is_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.pre.is_empty() && self.is_finite()
    }

    /// Natural density: the fraction of ones in the period.
    pub fn density(&self) -> Q {
        let ones = self.per.iter().filter(|&&b| b).count();
        Q::new(ones.into(), self.per.len().into())
    }

    /// The purely periodic set agreeing with `self` from some point on.
    pub fn core(&self) -> EpSet {
        let (p, q) = (self.pre.len(), self.per.len());
        let per = (0..q).map(|i| self.per[(i + q - p % q) % q]).collect();
        EpSet::new(vec![], per).expect("nonempty period")
    }

    /// Elements `<= bound`.
    pub fn elements_upto(&self, bound: u64) -> Vec<u64> {
        (1..=bound).filter(|&n| self.contains(n)).collect()
    }

    /// The finite elements if the set is finite.
    pub fn finite_elements(&self) -> Option<Vec<u64>> {
        self.is_finite().then(|| self.elements_upto(self.pre.len() as u64))
    }

    fn zip(&self, other: &EpSet, op: impl Fn(bool, bool) -> bool) -> Result<EpSet> {
        let p = self.pre.len().max(other.pre.len());
        let q = self.per.len().lcm(&other.per.len());
        let cap = period_cap();
        if q > cap {
            return Err(Error::PeriodCap { needed: q, cap });
        }
        let bit = |n: usize| op(self.contains(n as u64), other.contains(n as u64));
        let pre = (1..=p).map(bit).collect();
        let per = (p + 1..=p + q).map(bit).collect();
        EpSet::new(pre, per)
    }

    pub fn union(&self, o: &EpSet) -> Result<EpSet> {
        self.zip(o, |a, b| a || b)
    }

    pub fn inter(&self, o: &EpSet) -> Result<EpSet> {
        self.zip(o, |a, b| a && b)
    }

    pub fn diff(&self, o: &EpSet) -> Result<EpSet> {
        self.zip(o, |a, b| a && !b)
    }

    pub fn symdiff(&self, o: &EpSet) -> Result<EpSet> {
        self.zip(o, |a, b| a != b)
    }

    pub fn complement(&self) -> EpSet {
        EpSet {
            pre: self.pre.iter().map(|b| !b).collect(),
            per: self.per.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset(&self, o: &EpSet) -> Result<bool> {
        Ok(self.diff(o)?.is_empty())
    }
}

impl fmt::Debug for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpSet({}|{})", self.preperiod_str(), self.period_str())
    }
}

/// The fields of subsets of `N` that carry a density charge.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NatFieldKind {
    /// Finite and cofinite sets; the charge is 0 or 1.
    Cofinite,
    /// Purely periodic sets.
    Periodic,
    /// All eventually periodic sets.
    EventuallyPeriodic,
}

impl NatFieldKind {
    pub fn name(self) -> &'static str {
        match self {
            NatFieldKind::Cofinite => "cofinite",
            NatFieldKind::Periodic => "periodic",
            NatFieldKind::EventuallyPeriodic => "eventually-periodic",
        }
    }

    pub fn contains(self, a: &EpSet) -> bool {
        match self {
            NatFieldKind::Cofinite => a.is_finite() || a.is_cofinite(),
            NatFieldKind::Periodic => a.is_periodic(),
            NatFieldKind::EventuallyPeriodic => true,
        }
    }

    /// Density on members of the field (0/1 on the cofinite field).
    pub fn charge(self, a: &EpSet) -> Result<Q> {
        if !self.contains(a) {
            return Err(Error::NotInField(format!("{a:?} is not in the {} field", self.name())));
        }
        Ok(a.density())
    }

    pub fn total(self) -> Q {
        int(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn canonical_forms() {
        let a = EpSet::from_bits("0110", "01").unwrap();
        assert_eq!(a.elements_upto(9), vec![2, 3, 6, 8]);
        assert_eq!(a.density(), frac(1, 2));
        let b = EpSet::from_bits("0101", "0101").unwrap();
        assert_eq!((b.preperiod_str(), b.period_str()), ("".into(), "01".into()));
        let c = EpSet::from_bits("1", "01").unwrap();
        assert_eq!((c.preperiod_str(), c.period_str()), ("".into(), "10".into()));
    }

    #[test]
    fn algebra_aligns_periods() {
        let evens = EpSet::residue(0, 2).unwrap();
        let threes = EpSet::residue(0, 3).unwrap();
        assert_eq!(evens.inter(&threes).unwrap(), EpSet::residue(0, 6).unwrap());
        assert_eq!(evens.union(&threes).unwrap().density(), frac(2, 3));
        assert_eq!(EpSet::finite(&[1, 2, 3]).unwrap().complement(), EpSet::cofinite_complement(&[1, 2, 3]).unwrap());
    }

    #[test]
    fn core_matches_tail() {
        let a = EpSet::from_bits("111", "001").unwrap();
        let c = a.core();
        assert!(c.is_periodic());
        for n in 4..40 {
            assert_eq!(a.contains(n), c.contains(n));
        }
    }

    #[test]
    fn field_membership_and_charges() {
        let fin = EpSet::finite(&[1, 2, 3]).unwrap();
        assert_eq!(NatFieldKind::Cofinite.charge(&fin).unwrap(), int(0));
        assert!(!NatFieldKind::Periodic.contains(&fin));
        let evens = EpSet::residue(0, 2).unwrap();
        assert!(NatFieldKind::Cofinite.charge(&evens).is_err());
        assert_eq!(NatFieldKind::Periodic.charge(&evens).unwrap(), frac(1, 2));
    }
}
