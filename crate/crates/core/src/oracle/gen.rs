//! Seeded instance generation and counterexample shrinking.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::completion::ChargeSpace;
use crate::doc::{field_to_json, set_to_json, space_to_json, SpaceDoc};
use crate::error::Result;
use crate::completion::Subset;
use crate::function::Realized;
use crate::periodic::EpSet;
use crate::rational::{fmt_q, Q};
use crate::sets::{Field, FiniteChargeSpace, PointSet};

/// Everything a checker may need; unused parts stay empty.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Instance {
    pub n: usize,
    pub atoms: Vec<PointSet>,
    pub weights: Vec<Q>,
    /// A second charge on the same atoms.
    pub weights2: Vec<Q>,
    /// Atoms of a subfield.
    pub sub: Vec<PointSet>,
    /// Value tables of functions on the points.
    pub fns: Vec<Vec<Q>>,
    pub sets: Vec<PointSet>,
    pub scalars: Vec<Q>,
    pub nat_sets: Vec<EpSet>,
}

impl Instance {
    pub fn space(&self) -> FiniteChargeSpace {
        FiniteChargeSpace::new(self.field(), self.weights.clone()).expect("generated weights fit the atoms")
    }

    pub fn space2(&self) -> FiniteChargeSpace {
        FiniteChargeSpace::new(self.field(), self.weights2.clone()).expect("generated weights fit the atoms")
    }

    pub fn charge_space(&self) -> ChargeSpace {
        ChargeSpace::Finite(self.space())
    }

    pub fn field(&self) -> Field {
        Field::from_atoms(self.n, self.atoms.clone()).expect("generated partition")
    }

    pub fn sub_field(&self) -> Field {
        Field::from_atoms(self.n, self.sub.clone()).expect("generated partition")
    }

    pub fn f(&self, i: usize) -> Realized {
        Realized::Finite(self.fns[i].clone())
    }

    fn sorted(mut atoms: Vec<PointSet>, mut w: Vec<Vec<Q>>) -> (Vec<PointSet>, Vec<Vec<Q>>) {
        let mut idx: Vec<usize> = (0..atoms.len()).collect();
        idx.sort_by_key(|&i| atoms[i].min_point());
        atoms = idx.iter().map(|&i| atoms[i]).collect();
        for ws in w.iter_mut() {
            if !ws.is_empty() {
                *ws = idx.iter().map(|&i| ws[i].clone()).collect();
            }
        }
        (atoms, w)
    }

    /// Removes point `p`, dropping atoms that become empty.
    pub fn drop_point(&self, p: usize) -> Instance {
        let squeeze = |s: PointSet| {
            let low = s.0 & ((1u64 << p) - 1);
            let high = (s.0 >> (p + 1)) << p;
            PointSet(low | high)
        };
        let mut atoms = Vec::new();
        let mut w1 = Vec::new();
        let mut w2 = Vec::new();
        for (i, a) in self.atoms.iter().enumerate() {
            let b = squeeze(a.diff(PointSet::singleton(p)));
            if !b.is_empty() {
                atoms.push(b);
                w1.push(self.weights[i].clone());
                if !self.weights2.is_empty() {
                    w2.push(self.weights2[i].clone());
                }
            }
        }
        let (atoms, ws) = Instance::sorted(atoms, vec![w1, w2]);
        let mut sub: Vec<PointSet> = self.sub.iter().map(|a| squeeze(a.diff(PointSet::singleton(p)))).filter(|a| !a.is_empty()).collect();
        sub.sort_by_key(|a| a.min_point());
        Instance {
            n: self.n - 1,
            atoms,
            weights: ws[0].clone(),
            weights2: ws[1].clone(),
            sub,
            fns: self.fns.iter().map(|f| f.iter().enumerate().filter(|(i, _)| *i != p).map(|(_, v)| v.clone()).collect()).collect(),
            sets: self.sets.iter().map(|s| squeeze(s.diff(PointSet::singleton(p)))).collect(),
            scalars: self.scalars.clone(),
            nat_sets: self.nat_sets.clone(),
        }
    }

    /// Simpler neighbours, for greedy shrinking.
    pub fn shrink_candidates(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        if self.n > 1 {
            out.extend((0..self.n).map(|p| self.drop_point(p)));
        }
        for (i, f) in self.fns.iter().enumerate() {
            for (p, v) in f.iter().enumerate() {
                if !v.is_zero() {
                    let mut c = self.clone();
                    c.fns[i][p] = Q::zero();
                    out.push(c);
                }
            }
        }
        out
    }

    /// The instance as JSON documents.
    pub fn to_json(&self) -> Value {
        let mut v = json!({});
        if self.n > 0 {
            let space = ChargeSpace::Finite(self.space());
            let doc = SpaceDoc::numbered(space);
            v["space"] = space_to_json(&doc);
            if !self.weights2.is_empty() {
                v["space2"] = space_to_json(&SpaceDoc::numbered(ChargeSpace::Finite(self.space2())));
            }
            if !self.sub.is_empty() {
                v["subfield"] = field_to_json(&self.sub_field(), &doc);
            }
            v["functions"] = self
                .fns
                .iter()
                .map(|f| json!({"kind": "pointwise", "values": f.iter().map(fmt_q).collect::<Vec<_>>()}))
                .collect();
            v["sets"] = self.sets.iter().map(|s| set_to_json(&Subset::Points(*s), &doc)).collect();
        }
        if !self.scalars.is_empty() {
            v["scalars"] = self.scalars.iter().map(fmt_q).collect();
        }
        if !self.nat_sets.is_empty() {
            let doc = SpaceDoc::numbered(ChargeSpace::Naturals(crate::periodic::NatFieldKind::Periodic));
            v["nat_sets"] = self.nat_sets.iter().map(|s| set_to_json(&Subset::Nat(s.clone()), &doc)).collect();
        }
        v
    }
}

/// Generation bounds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenBounds {
    pub max_points: usize,
    pub den: u32,
    pub value_bound: Q,
}

pub fn partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<PointSet> {
    let mut blocks: Vec<PointSet> = Vec::new();
    for p in 0..n {
        let b = rng.gen_range(0..=blocks.len());
        if b == blocks.len() {
            blocks.push(PointSet::EMPTY);
        }
        blocks[b] = blocks[b].union(PointSet::singleton(p));
    }
    blocks.sort_by_key(|a| a.min_point());
    blocks
}

/// A random coarsening of a partition.
pub fn coarsening(rng: &mut ChaCha8Rng, atoms: &[PointSet]) -> Vec<PointSet> {
    let groups = partition(rng, atoms.len());
    let mut out: Vec<PointSet> = groups.iter().map(|g| g.points().fold(PointSet::EMPTY, |s, i| s.union(atoms[i]))).collect();
    out.sort_by_key(|a| a.min_point());
    out
}

pub fn union_of(rng: &mut ChaCha8Rng, blocks: &[PointSet]) -> PointSet {
    blocks.iter().filter(|_| rng.gen_bool(0.5)).fold(PointSet::EMPTY, |s, b| s.union(*b))
}

pub fn weight(rng: &mut ChaCha8Rng, den: u32, zero_prob: f64) -> Q {
    if rng.gen_bool(zero_prob) {
        return Q::zero();
    }
    let d = rng.gen_range(1..=den.max(1)) as i64;
    Q::new(BigInt::from(rng.gen_range(1..=d)), BigInt::from(d))
}

pub fn value(rng: &mut ChaCha8Rng, b: &GenBounds) -> Q {
    let d = rng.gen_range(1..=b.den.max(1)) as i64;
    let m = (&b.value_bound * Q::from_integer(d.into())).floor().to_integer().to_i64().unwrap_or(0).max(0);
    Q::new(BigInt::from(rng.gen_range(-m..=m)), BigInt::from(d))
}

/// A space on `1..=max_points` points with some zero-charge atoms.
pub fn space(rng: &mut ChaCha8Rng, b: &GenBounds) -> Instance {
    let n = rng.gen_range(1..=b.max_points);
    let atoms = partition(rng, n);
    let weights = atoms.iter().map(|_| weight(rng, b.den, 0.3)).collect();
    Instance { n, atoms, weights, ..Default::default() }
}

/// Like [`space`] but with every zero-charge atom a singleton.
pub fn pj_complete_space(rng: &mut ChaCha8Rng, b: &GenBounds) -> Instance {
    let n = rng.gen_range(1..=b.max_points);
    let mut atoms = Vec::new();
    let mut weights = Vec::new();
    for a in partition(rng, n) {
        let w = weight(rng, b.den, 0.3);
        if w.is_zero() {
            for p in a.points() {
                atoms.push(PointSet::singleton(p));
                weights.push(Q::zero());
            }
        } else {
            atoms.push(a);
            weights.push(w);
        }
    }
    let (atoms, ws) = Instance::sorted(atoms, vec![weights]);
    Instance { n, atoms, weights: ws[0].clone(), ..Default::default() }
}

/// A function constant on each block of positive charge, free elsewhere.
pub fn measurable_fn(rng: &mut ChaCha8Rng, b: &GenBounds, blocks: &[PointSet], weights: &[Q]) -> Vec<Q> {
    let n = blocks.iter().fold(PointSet::EMPTY, |s, a| s.union(*a)).len();
    let mut f = vec![Q::zero(); n];
    for (a, w) in blocks.iter().zip(weights) {
        let c = value(rng, b);
        for p in a.points() {
            f[p] = if w.is_zero() { value(rng, b) } else { c.clone() };
        }
    }
    f
}

pub fn any_fn(rng: &mut ChaCha8Rng, b: &GenBounds, n: usize) -> Vec<Q> {
    (0..n).map(|_| value(rng, b)).collect()
}

/// Either kind, evenly.
pub fn mixed_fn(rng: &mut ChaCha8Rng, b: &GenBounds, inst: &Instance) -> Vec<Q> {
    if rng.gen_bool(0.5) {
        measurable_fn(rng, b, &inst.atoms, &inst.weights)
    } else {
        any_fn(rng, b, inst.n)
    }
}

/// Changes `f` on null points only.
pub fn perturb_null(rng: &mut ChaCha8Rng, b: &GenBounds, inst: &Instance, f: &[Q]) -> Vec<Q> {
    let mut g = f.to_vec();
    for (a, w) in inst.atoms.iter().zip(&inst.weights) {
        if w.is_zero() {
            for p in a.points() {
                if rng.gen_bool(0.5) {
                    g[p] = value(rng, b);
                }
            }
        }
    }
    g
}

/// A nonnegative version of a value table.
pub fn abs_all(f: &[Q]) -> Vec<Q> {
    f.iter().map(|v| v.abs()).collect()
}

pub fn shuffle<T>(rng: &mut ChaCha8Rng, v: &mut [T]) {
    v.shuffle(rng);
}

pub fn ep_set(rng: &mut ChaCha8Rng) -> Result<EpSet> {
    let pre: Vec<bool> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_bool(0.5)).collect();
    let per: Vec<bool> = (0..rng.gen_range(1..=6)).map(|_| rng.gen_bool(0.5)).collect();
    EpSet::new(pre, per)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn drop_point_keeps_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = GenBounds { max_points: 6, den: 12, value_bound: Q::from_integer(4.into()) };
        for _ in 0..50 {
            let mut inst = space(&mut rng, &b);
            inst.sub = coarsening(&mut rng, &inst.atoms);
            inst.fns.push(any_fn(&mut rng, &b, inst.n));
            if inst.n < 2 {
                continue;
            }
            let d = inst.drop_point(0);
            assert_eq!(d.field().n(), inst.n - 1);
            assert!(d.sub_field().is_subfield_of(&d.field()));
            assert_eq!(d.fns[0].len(), d.n);
            assert_eq!(d.weights.len(), d.atoms.len());
        }
    }
}
