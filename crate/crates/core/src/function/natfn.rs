//! Normal form of catalog functions on `N`: explicit values on `1..=p`,
//! then one Laurent polynomial per residue class of period `Q`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{Laurent, Limit};
use crate::error::{Error, Result};
use crate::periodic::{period_cap, EpSet};
use crate::rational::Q;

/// `f(n) = prefix[n-1]` for `n <= p`, else `classes[(n-p-1) mod Q](n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NatFn {
    prefix: Vec<Q>,
    classes: Vec<Laurent>,
}

fn check_cap(len: usize) -> Result<()> {
    let cap = period_cap();
    if len > cap {
        return Err(Error::PeriodCap { needed: len, cap });
    }
    Ok(())
}

impl NatFn {
    pub fn new(prefix: Vec<Q>, classes: Vec<Laurent>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::invalid("a function on N needs at least one residue class"));
        }
        let mut f = NatFn { prefix, classes };
        f.normalize();
        Ok(f)
    }

    pub fn constant(c: Q) -> Self {
        NatFn { prefix: vec![], classes: vec![Laurent::constant(c)] }
    }

    pub fn monomial(c: Q, k: i32) -> Self {
        NatFn { prefix: vec![], classes: vec![Laurent::monomial(c, k)] }
    }

    pub fn indicator(a: &EpSet) -> Self {
        let bit = |b: &bool| Q::from_integer(if *b { 1.into() } else { 0.into() });
        let mut f = NatFn {
            prefix: a.preperiod().iter().map(bit).collect(),
            classes: a.period().iter().map(|b| Laurent::constant(bit(b))).collect(),
        };
        f.normalize();
        f
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn period(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Laurent] {
        &self.classes
    }

    pub fn prefix(&self) -> &[Q] {
        &self.prefix
    }

    pub fn class_index(&self, n: u64) -> Option<usize> {
        let p = self.prefix.len() as u64;
        (n > p).then(|| ((n - p - 1) % self.classes.len() as u64) as usize)
    }

    pub fn value(&self, n: u64) -> Q {
        assert!(n >= 1, "functions on N are defined for n >= 1");
        match self.class_index(n) {
            None => self.prefix[n as usize - 1].clone(),
            Some(r) => self.classes[r].eval(n),
        }
    }

    /// Minimal period of the class list, then minimal prefix.
    fn normalize(&mut self) {
        let q = self.classes.len();
        if let Some(d) = (1..=q).find(|d| q % d == 0 && (0..q).all(|i| self.classes[i] == self.classes[i % d])) {
            self.classes.truncate(d);
        }
        while let Some(last) = self.prefix.last() {
            let p = self.prefix.len() as u64;
            if *last != self.classes[self.classes.len() - 1].eval(p) {
                break;
            }
            self.prefix.pop();
            self.classes.rotate_right(1);
        }
    }

    /// Same function with explicit values up to `p >= prefix_len()`.
    pub fn extended(&self, p: usize) -> Result<NatFn> {
        check_cap(p)?;
        let p0 = self.prefix.len();
        if p <= p0 {
            return Ok(self.clone());
        }
        let q = self.classes.len();
        let mut prefix = self.prefix.clone();
        prefix.extend((p0 + 1..=p).map(|n| self.value(n as u64)));
        let classes = (0..q).map(|i| self.classes[(i + p - p0) % q].clone()).collect();
        Ok(NatFn { prefix, classes })
    }

    fn with_period(&self, q: usize) -> NatFn {
        let q0 = self.classes.len();
        NatFn { prefix: self.prefix.clone(), classes: (0..q).map(|i| self.classes[i % q0].clone()).collect() }
    }

    /// Both functions with a common prefix length and period.
    pub fn align(a: &NatFn, b: &NatFn) -> Result<(NatFn, NatFn)> {
        let p = a.prefix.len().max(b.prefix.len());
        let q = a.classes.len().lcm(&b.classes.len());
        check_cap(q)?;
        Ok((a.extended(p)?.with_period(q), b.extended(p)?.with_period(q)))
    }

    pub fn zip(
        a: &NatFn,
        b: &NatFn,
        fv: impl Fn(&Q, &Q) -> Q,
        fc: impl Fn(&Laurent, &Laurent) -> Result<Laurent>,
    ) -> Result<NatFn> {
        let (a, b) = NatFn::align(a, b)?;
        let prefix = a.prefix.iter().zip(&b.prefix).map(|(x, y)| fv(x, y)).collect();
        let classes = a.classes.iter().zip(&b.classes).map(|(x, y)| fc(x, y)).collect::<Result<Vec<_>>>()?;
        NatFn::new(prefix, classes)
    }

    pub fn map_linear(&self, s: &Q) -> NatFn {
        let mut f = NatFn {
            prefix: self.prefix.iter().map(|x| x * s).collect(),
            classes: self.classes.iter().map(|c| c.scale(s)).collect(),
        };
        f.normalize();
        f
    }

    pub fn add(&self, o: &NatFn) -> Result<NatFn> {
        NatFn::zip(self, o, |x, y| x + y, |x, y| Ok(x.add(y)))
    }

    pub fn sub(&self, o: &NatFn) -> Result<NatFn> {
        NatFn::zip(self, o, |x, y| x - y, |x, y| Ok(x.sub(y)))
    }

    pub fn mul(&self, o: &NatFn) -> Result<NatFn> {
        NatFn::zip(self, o, |x, y| x * y, |x, y| x.mul(y))
    }

    pub fn pow(&self, p: u32) -> Result<NatFn> {
        let prefix = self.prefix.iter().map(|x| num_traits::pow(x.clone(), p as usize)).collect();
        let classes = self.classes.iter().map(|c| c.pow(p)).collect::<Result<Vec<_>>>()?;
        NatFn::new(prefix, classes)
    }

    /// Extends the prefix past every class's sign threshold of `self`, so
    /// each class has constant sign on its remaining tail.
    pub fn sign_stable(&self) -> Result<NatFn> {
        let mut t = self.prefix.len();
        for c in &self.classes {
            t = t.max(c.sign_threshold()? as usize);
        }
        self.extended(t)
    }

    /// Pointwise selection: `left` where `self >= 0` holds eventually on a
    /// class (resp. at a prefix point), else `right`. All three must share
    /// prefix length and period.
    fn select(&self, left: &NatFn, right: &NatFn) -> Result<NatFn> {
        let prefix = self
            .prefix
            .iter()
            .zip(left.prefix.iter().zip(&right.prefix))
            .map(|(d, (l, r))| if !d.is_negative() { l.clone() } else { r.clone() })
            .collect();
        let classes = self
            .classes
            .iter()
            .zip(left.classes.iter().zip(&right.classes))
            .map(|(d, (l, r))| if d.eventual_sign() >= 0 { l.clone() } else { r.clone() })
            .collect();
        NatFn::new(prefix, classes)
    }

    pub fn max(&self, o: &NatFn) -> Result<NatFn> {
        let (a, b) = NatFn::align(self, o)?;
        let d = NatFn {
            prefix: a.prefix.iter().zip(&b.prefix).map(|(x, y)| x - y).collect(),
            classes: a.classes.iter().zip(&b.classes).map(|(x, y)| x.sub(y)).collect(),
        };
        let mut t = d.prefix.len();
        for c in &d.classes {
            t = t.max(c.sign_threshold()? as usize);
        }
        d.extended(t)?.select(&a.extended(t)?, &b.extended(t)?)
    }

    pub fn min(&self, o: &NatFn) -> Result<NatFn> {
        Ok(self.neg().max(&o.neg())?.neg())
    }

    pub fn neg(&self) -> NatFn {
        self.map_linear(&-Q::one())
    }

    pub fn abs(&self) -> Result<NatFn> {
        self.max(&self.neg())
    }

    pub fn pos_part(&self) -> Result<NatFn> {
        self.max(&NatFn::constant(Q::zero()))
    }

    pub fn neg_part(&self) -> Result<NatFn> {
        self.neg().max(&NatFn::constant(Q::zero()))
    }

    pub fn class_limits(&self) -> Vec<Limit> {
        self.classes.iter().map(|c| c.limit()).collect()
    }

    /// `{n : f(n) cmp y}` as an exact eventually periodic set, where `keep`
    /// receives the sign of `f(n) - y`.
    pub fn level_set(&self, y: &Q, keep: impl Fn(i8) -> bool) -> Result<EpSet> {
        let d = self.sub(&NatFn::constant(y.clone()))?.sign_stable()?;
        let sign = |q: &Q| -> i8 {
            if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            }
        };
        let pre = d.prefix.iter().map(|v| keep(sign(v))).collect();
        let per = d.classes.iter().map(|c| keep(c.eventual_sign())).collect();
        EpSet::new(pre, per)
    }

    /// The periodic core of `{n : f(n) > y}`: classes whose tail eventually
    /// exceeds `y`. Needs no prefix expansion.
    pub fn superlevel_core(&self, y: &Q) -> EpSet {
        self.core_where(|c| match c.limit() {
            Limit::PosInf => true,
            Limit::NegInf => false,
            Limit::Finite(l) => l > *y || (l == *y && c.approach() > 0),
        })
    }

    /// Periodic core of the union of classes selected by `pick`.
    pub fn core_where(&self, pick: impl Fn(&Laurent) -> bool) -> EpSet {
        let per = self.classes.iter().map(pick).collect();
        EpSet::new(vec![false; self.prefix.len()], per).expect("nonempty").core()
    }

    /// Whether every class has a finite limit.
    pub fn is_eventually_bounded(&self) -> bool {
        self.classes.iter().all(|c| matches!(c.limit(), Limit::Finite(_)))
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.iter().all(|v| v.is_zero()) && self.classes.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn reciprocal_rays() {
        let f = NatFn::monomial(int(1), -1);
        let r = f.level_set(&frac(1, 3), |s| s > 0).unwrap();
        assert_eq!(r, EpSet::finite(&[1, 2]).unwrap());
        assert!(f.superlevel_core(&frac(1, 100)).is_empty());
        assert_eq!(f.superlevel_core(&int(0)), EpSet::all());
    }

    #[test]
    fn abs_and_max_agree_pointwise() {
        let f = NatFn::monomial(int(1), 1).sub(&NatFn::constant(int(5))).unwrap();
        let a = f.abs().unwrap();
        for n in 1..30u64 {
            let v = f.value(n);
            assert_eq!(a.value(n), if v < int(0) { -v } else { v });
        }
        let g = NatFn::indicator(&EpSet::residue(0, 2).unwrap());
        let m = f.max(&g).unwrap();
        for n in 1..30u64 {
            let (x, y) = (f.value(n), g.value(n));
            assert_eq!(m.value(n), if x > y { x } else { y });
        }
    }

    #[test]
    fn normal_form_is_minimal() {
        let g = NatFn::indicator(&EpSet::from_bits("0101", "01").unwrap());
        assert_eq!((g.prefix_len(), g.period()), (0, 2));
        let z = NatFn::monomial(int(1), -1).sub(&NatFn::monomial(int(1), -1)).unwrap();
        assert!(z.is_zero());
    }
}
