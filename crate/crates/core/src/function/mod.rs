//! Functions on a charge space: the closed catalog of representations, their
//! exact realisation, and the measurability and distance decisions.

pub mod laurent;
pub mod measure;
pub mod natfn;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::completion::{Subset, Universe};
use crate::error::{Error, Result};
use crate::periodic::EpSet;
use crate::rational::Q;
use crate::sets::PointSet;
use natfn::NatFn;

pub use measure::*;

/// A finite list of `(value, set)` pairs with pairwise disjoint sets; the
/// function is zero off their union. Canonical: equal values merged, empty
/// sets dropped, sorted by value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleFunction {
    pieces: Vec<(Q, Subset)>,
}

impl SimpleFunction {
    pub fn new(pieces: Vec<(Q, Subset)>) -> Result<Self> {
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                if !pieces[i].1.inter(&pieces[j].1)?.is_empty() {
                    return Err(Error::invalid(format!("pieces {i} and {j} of a simple function overlap")));
                }
            }
        }
        let mut merged: BTreeMap<Q, Subset> = BTreeMap::new();
        for (v, s) in pieces {
            if s.is_empty() {
                continue;
            }
            let next = match merged.remove(&v) {
                Some(prev) => prev.union(&s)?,
                None => s,
            };
            merged.insert(v, next);
        }
        Ok(SimpleFunction { pieces: merged.into_iter().collect() })
    }

    pub fn pieces(&self) -> &[(Q, Subset)] {
        &self.pieces
    }

    pub fn indicator(set: Subset) -> Result<Self> {
        SimpleFunction::new(vec![(Q::one(), set)])
    }
}

/// The closed catalog of function representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FunctionRep {
    Simple(SimpleFunction),
    Constant(Q),
    /// One value per point of a finite universe.
    Pointwise(Vec<Q>),
    /// `n ↦ scale / n` on `N`.
    Reciprocal { scale: Q },
    /// `n ↦ scale · n` on `N`.
    Linear { scale: Q },
    Indicator(Subset),
    /// `a·f + b·g`.
    Affine { a: Q, f: Box<FunctionRep>, b: Q, g: Box<FunctionRep> },
    Abs(Box<FunctionRep>),
    PosPart(Box<FunctionRep>),
    NegPart(Box<FunctionRep>),
    Pow(Box<FunctionRep>, u32),
    Product(Box<FunctionRep>, Box<FunctionRep>),
    Max(Box<FunctionRep>, Box<FunctionRep>),
    Min(Box<FunctionRep>, Box<FunctionRep>),
}

impl FunctionRep {
    pub fn sub(f: FunctionRep, g: FunctionRep) -> FunctionRep {
        FunctionRep::Affine { a: Q::one(), f: Box::new(f), b: -Q::one(), g: Box::new(g) }
    }

    pub fn add(f: FunctionRep, g: FunctionRep) -> FunctionRep {
        FunctionRep::Affine { a: Q::one(), f: Box::new(f), b: Q::one(), g: Box::new(g) }
    }

    pub fn realize(&self, u: Universe) -> Result<Realized> {
        use FunctionRep::*;
        Ok(match self {
            Simple(s) => {
                let mut acc = Realized::constant(u, Q::zero());
                for (v, set) in s.pieces() {
                    acc = acc.add(&Realized::indicator(u, set)?.scale(v))?;
                }
                acc
            }
            Constant(c) => Realized::constant(u, c.clone()),
            Pointwise(vals) => match u {
                Universe::Finite(n) if vals.len() == n => Realized::Finite(vals.clone()),
                Universe::Finite(n) => {
                    return Err(Error::input("/values", format!("expected {n} values, got {}", vals.len())))
                }
                Universe::Naturals => return Err(Error::Unrepresentable("pointwise table on N".into())),
            },
            Reciprocal { scale } => Realized::Nat(NatFn::monomial(scale.clone(), -1)).require(u)?,
            Linear { scale } => Realized::Nat(NatFn::monomial(scale.clone(), 1)).require(u)?,
            Indicator(set) => Realized::indicator(u, set)?,
            Affine { a, f, b, g } => f.realize(u)?.scale(a).add(&g.realize(u)?.scale(b))?,
            Abs(f) => f.realize(u)?.abs()?,
            PosPart(f) => f.realize(u)?.pos_part()?,
            NegPart(f) => f.realize(u)?.neg_part()?,
            Pow(f, p) => f.realize(u)?.pow(*p)?,
            Product(f, g) => f.realize(u)?.mul(&g.realize(u)?)?,
            Max(f, g) => f.realize(u)?.max(&g.realize(u)?)?,
            Min(f, g) => f.realize(u)?.min(&g.realize(u)?)?,
        })
    }
}

/// A function in exact evaluable form: a value table on a finite universe or
/// the normal form on `N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Realized {
    Finite(Vec<Q>),
    Nat(NatFn),
}

impl Realized {
    pub fn constant(u: Universe, c: Q) -> Realized {
        match u {
            Universe::Finite(n) => Realized::Finite(vec![c; n]),
            Universe::Naturals => Realized::Nat(NatFn::constant(c)),
        }
    }

    pub fn indicator(u: Universe, set: &Subset) -> Result<Realized> {
        Ok(match u {
            Universe::Finite(n) => {
                let s = set.as_points()?;
                if !s.is_subset(PointSet::full(n)) {
                    return Err(Error::Unrepresentable(format!("{s:?} leaves the ground set")));
                }
                Realized::Finite((0..n).map(|i| if s.contains(i) { Q::one() } else { Q::zero() }).collect())
            }
            Universe::Naturals => Realized::Nat(NatFn::indicator(set.as_nat()?)),
        })
    }

    fn require(self, u: Universe) -> Result<Realized> {
        match (u, &self) {
            (Universe::Naturals, Realized::Nat(_)) => Ok(self),
            _ => Err(Error::Unrepresentable("this catalog entry is defined on N only".into())),
        }
    }

    pub fn universe(&self) -> Universe {
        match self {
            Realized::Finite(v) => Universe::Finite(v.len()),
            Realized::Nat(_) => Universe::Naturals,
        }
    }

    fn zip(
        &self,
        o: &Realized,
        fv: impl Fn(&Q, &Q) -> Q,
        fn_: impl Fn(&NatFn, &NatFn) -> Result<NatFn>,
    ) -> Result<Realized> {
        match (self, o) {
            (Realized::Finite(a), Realized::Finite(b)) if a.len() == b.len() => {
                Ok(Realized::Finite(a.iter().zip(b).map(|(x, y)| fv(x, y)).collect()))
            }
            (Realized::Nat(a), Realized::Nat(b)) => Ok(Realized::Nat(fn_(a, b)?)),
            _ => Err(Error::Unrepresentable("functions on different universes".into())),
        }
    }

    fn map(&self, fv: impl Fn(&Q) -> Q, fn_: impl Fn(&NatFn) -> Result<NatFn>) -> Result<Realized> {
        Ok(match self {
            Realized::Finite(a) => Realized::Finite(a.iter().map(fv).collect()),
            Realized::Nat(f) => Realized::Nat(fn_(f)?),
        })
    }

    pub fn add(&self, o: &Realized) -> Result<Realized> {
        self.zip(o, |x, y| x + y, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Realized) -> Result<Realized> {
        self.zip(o, |x, y| x - y, |a, b| a.sub(b))
    }

    pub fn mul(&self, o: &Realized) -> Result<Realized> {
        self.zip(o, |x, y| x * y, |a, b| a.mul(b))
    }

    pub fn max(&self, o: &Realized) -> Result<Realized> {
        self.zip(o, |x, y| if x >= y { x.clone() } else { y.clone() }, |a, b| a.max(b))
    }

    pub fn min(&self, o: &Realized) -> Result<Realized> {
        self.zip(o, |x, y| if x <= y { x.clone() } else { y.clone() }, |a, b| a.min(b))
    }

    pub fn scale(&self, s: &Q) -> Realized {
        self.map(|x| x * s, |f| Ok(f.map_linear(s))).expect("scaling cannot fail")
    }

    pub fn neg(&self) -> Realized {
        self.scale(&-Q::one())
    }

    pub fn abs(&self) -> Result<Realized> {
        self.map(|x| if *x < Q::zero() { -x } else { x.clone() }, |f| f.abs())
    }

    pub fn pos_part(&self) -> Result<Realized> {
        self.map(|x| if *x > Q::zero() { x.clone() } else { Q::zero() }, |f| f.pos_part())
    }

    pub fn neg_part(&self) -> Result<Realized> {
        self.map(|x| if *x < Q::zero() { -x } else { Q::zero() }, |f| f.neg_part())
    }

    pub fn pow(&self, p: u32) -> Result<Realized> {
        self.map(|x| num_traits::pow(x.clone(), p as usize), |f| f.pow(p))
    }

    /// Value at a point: an index for finite universes, `n >= 1` on `N`.
    pub fn eval(&self, x: u64) -> Q {
        match self {
            Realized::Finite(v) => v[x as usize].clone(),
            Realized::Nat(f) => f.value(x),
        }
    }

    pub fn values(&self) -> Option<&[Q]> {
        match self {
            Realized::Finite(v) => Some(v),
            Realized::Nat(_) => None,
        }
    }

    /// Multiplies by the indicator of a set.
    pub fn restrict_to(&self, set: &Subset) -> Result<Realized> {
        self.mul(&Realized::indicator(self.universe(), set)?)
    }

    /// The simple-function view, when the function takes finitely many values.
    pub fn to_simple(&self) -> Result<Option<SimpleFunction>> {
        match self {
            Realized::Finite(v) => {
                let mut by_value: BTreeMap<Q, PointSet> = BTreeMap::new();
                for (i, x) in v.iter().enumerate() {
                    let e = by_value.entry(x.clone()).or_default();
                    *e = e.union(PointSet::singleton(i));
                }
                Ok(Some(SimpleFunction::new(by_value.into_iter().map(|(x, s)| (x, Subset::Points(s))).collect())?))
            }
            Realized::Nat(f) => {
                let mut vals: Vec<Q> = f.prefix().to_vec();
                for c in f.classes() {
                    match c.as_constant() {
                        Some(q) => vals.push(q),
                        None => return Ok(None),
                    }
                }
                vals.sort();
                vals.dedup();
                let mut pieces = Vec::new();
                for v in vals {
                    let s = f.level_set(&v, |s| s == 0)?;
                    pieces.push((v, Subset::Nat(s)));
                }
                Ok(Some(SimpleFunction::new(pieces)?))
            }
        }
    }

    /// A catalog representation of this realised function.
    pub fn to_rep(&self) -> Result<FunctionRep> {
        match self {
            Realized::Finite(v) => Ok(FunctionRep::Pointwise(v.clone())),
            Realized::Nat(_) => match self.to_simple()? {
                Some(s) => Ok(FunctionRep::Simple(s)),
                None => Err(Error::Unrepresentable("function on N is not piecewise constant".into())),
            },
        }
    }
}

/// Convenience: indicator of an eventually periodic set.
pub fn nat_indicator(a: EpSet) -> FunctionRep {
    FunctionRep::Indicator(Subset::Nat(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn simple_functions_are_canonical() {
        let a = Subset::Points(PointSet::from_points([0]));
        let b = Subset::Points(PointSet::from_points([1]));
        let s = SimpleFunction::new(vec![(int(2), a.clone()), (int(2), b), (int(3), Subset::Points(PointSet::EMPTY))]).unwrap();
        assert_eq!(s.pieces().len(), 1);
        assert!(SimpleFunction::new(vec![(int(1), a.clone()), (int(2), a)]).is_err());
    }

    #[test]
    fn catalog_realizes_on_n() {
        let f = FunctionRep::Affine {
            a: int(1),
            f: Box::new(FunctionRep::Reciprocal { scale: int(1) }),
            b: int(-1),
            g: Box::new(nat_indicator(EpSet::residue(0, 2).unwrap())),
        };
        let r = f.realize(Universe::Naturals).unwrap();
        assert_eq!(r.eval(2), frac(-1, 2));
        assert_eq!(r.eval(3), frac(1, 3));
        assert!(FunctionRep::Reciprocal { scale: int(1) }.realize(Universe::Finite(3)).is_err());
    }

    #[test]
    fn nat_simple_view() {
        let g = nat_indicator(EpSet::finite(&[1, 2]).unwrap()).realize(Universe::Naturals).unwrap();
        let s = g.to_simple().unwrap().unwrap();
        assert_eq!(s.pieces().len(), 2);
    }
}
