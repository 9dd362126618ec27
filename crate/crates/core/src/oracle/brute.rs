//! Independent brute-force re-implementations. Nothing here calls the
//! decision procedures of the main modules; only the data types are shared.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::periodic::EpSet;
use crate::rational::Q;
use crate::sets::{Field, FiniteChargeSpace, PointSet};

pub const MAX_ENUMERATE: usize = 5;

/// All set partitions of `{0..n}` via restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<PointSet>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut atoms = vec![PointSet::EMPTY; blocks];
        for (i, &b) in rgs.iter().enumerate() {
            atoms[b] = atoms[b].union(PointSet::singleton(i));
        }
        out.push(atoms);
        // Next restricted growth string: rgs[i] <= 1 + max(rgs[..i]).
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// Every field on an `n`-point set, one per atom partition.
pub fn enumerate_fields(n: usize) -> Result<Vec<Field>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > MAX_ENUMERATE {
        return Err(Error::TooLarge { points: n, cap: MAX_ENUMERATE });
    }
    partitions(n).into_iter().map(|a| Field::from_atoms(n, a)).collect()
}

/// All unions of members of a partition.
pub fn unions(atoms: &[PointSet]) -> Vec<PointSet> {
    (0..1u64 << atoms.len())
        .map(|m| (0..atoms.len()).filter(|i| m >> i & 1 == 1).fold(PointSet::EMPTY, |s, i| s.union(atoms[i])))
        .collect()
}

fn charge(space: &FiniteChargeSpace, b: PointSet) -> Q {
    space
        .field()
        .atoms()
        .iter()
        .zip(space.weights())
        .filter(|(a, _)| a.is_subset(b))
        .map(|(_, w)| w.clone())
        .sum()
}

/// `min{μ(B) : B in field, A ⊆ B}` by listing every field element.
pub fn outer_charge(space: &FiniteChargeSpace, a: PointSet) -> Q {
    unions(space.field().atoms()).into_iter().filter(|b| a.is_subset(*b)).map(|b| charge(space, b)).min().expect("X covers A")
}

/// `max{μ(B) : B in field, B ⊆ A}`.
pub fn inner_charge(space: &FiniteChargeSpace, a: PointSet) -> Q {
    unions(space.field().atoms()).into_iter().filter(|b| b.is_subset(a)).map(|b| charge(space, b)).max().expect("∅ is inside A")
}

/// Points of zero outer charge.
pub fn null_points(space: &FiniteChargeSpace) -> PointSet {
    PointSet::from_points((0..space.n()).filter(|&p| outer_charge(space, PointSet::singleton(p)).is_zero()))
}

/// Closure of a family under complement and pairwise union, to a fixpoint.
pub fn closure(n: usize, family: &[PointSet]) -> Vec<PointSet> {
    let mut sets: Vec<PointSet> = vec![PointSet::EMPTY, PointSet::full(n)];
    sets.extend_from_slice(family);
    sets.sort_by_key(|s| s.0);
    sets.dedup();
    loop {
        let mut next = sets.clone();
        for a in &sets {
            next.push(a.complement(n));
            for b in &sets {
                next.push(a.union(*b));
            }
        }
        next.sort_by_key(|s| s.0);
        next.dedup();
        if next.len() == sets.len() {
            return sets;
        }
        sets = next;
    }
}

/// `{B △ M : B in base, M in ideal}`.
pub fn symdiff_form(base: &[PointSet], ideal: &[PointSet]) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = base.iter().flat_map(|b| ideal.iter().map(move |m| b.symdiff(*m))).collect();
    out.sort_by_key(|s| s.0);
    out.dedup();
    out
}

/// T1-measurability on a finite space: `f` is constant on every atom of a
/// positive charge. Zero-charge atoms are null and unconstrained.
pub fn is_t1(space: &FiniteChargeSpace, f: &[Q]) -> bool {
    space.field().atoms().iter().zip(space.weights()).all(|(a, w)| {
        w.is_zero() || {
            let mut vals = a.points().map(|p| &f[p]);
            let first = vals.next().unwrap();
            vals.all(|v| v == first)
        }
    })
}

/// `Σ_a μ(a) f(a)` over atoms of positive charge, for a T1-measurable `f`.
pub fn integral(space: &FiniteChargeSpace, f: &[Q]) -> Q {
    space
        .field()
        .atoms()
        .iter()
        .zip(space.weights())
        .filter(|(_, w)| !w.is_zero())
        .map(|(a, w)| w * &f[a.min_point().unwrap()])
        .sum()
}

/// Equality off the atoms of zero charge.
pub fn equal_ae(space: &FiniteChargeSpace, f: &[Q], g: &[Q]) -> bool {
    let z = null_points(space);
    (0..space.n()).all(|p| z.contains(p) || f[p] == g[p])
}

/// `inf{ε > 0 : μ*(|f - g| > ε) < ε}` by scanning the finitely many
/// candidate values: the values of `|f - g|` and every outer charge.
pub fn pseudometric(space: &FiniteChargeSpace, f: &[Q], g: &[Q]) -> Q {
    let h: Vec<Q> = f.iter().zip(g).map(|(a, b)| (a - b).abs()).collect();
    let above = |t: &Q| outer_charge(space, PointSet::from_points((0..h.len()).filter(|&p| h[p] > *t)));
    let mut cands: Vec<Q> = vec![Q::zero()];
    cands.extend(h.iter().cloned());
    for t in h.clone() {
        cands.push(above(&t));
    }
    cands.extend(std::iter::once(above(&Q::zero())));
    cands.sort();
    cands.dedup();
    cands.into_iter().find(|t| above(t) <= *t).expect("the largest value qualifies")
}

/// Least density of a periodic superset of `a` with period `q`: the residues
/// mod `q` that `a` meets, over `q`.
pub fn periodic_cover_min(a: &EpSet, q: usize) -> Q {
    let horizon = (a.preperiod().len() + a.period().len() * q + q) as u64;
    let hit = (0..q as u64).filter(|&r| (1..=horizon).any(|n| n % q as u64 == r && a.contains(n))).count();
    Q::new((hit as i64).into(), (q as i64).into())
}
