//! Outer and inner charges, Peano-Jordan membership, null sets, completion by
//! null sets and the quotient representation of a charge space.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::periodic::{EpSet, NatFieldKind};
use crate::rational::{int, Q};
use crate::sets::{check_exhaustive, Field, FiniteChargeSpace, PointSet, DEFAULT_EXHAUSTIVE_CAP};

/// A charge space whose field algebra is decidable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ChargeSpace {
    Finite(FiniteChargeSpace),
    Naturals(NatFieldKind),
}

/// A subset of the universe of some [`ChargeSpace`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Subset {
    Points(PointSet),
    Nat(EpSet),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Universe {
    Finite(usize),
    Naturals,
}

impl Subset {
    pub fn as_points(&self) -> Result<PointSet> {
        match self {
            Subset::Points(p) => Ok(*p),
            Subset::Nat(_) => Err(Error::Unrepresentable("a subset of N on a finite universe".into())),
        }
    }

    pub fn as_nat(&self) -> Result<&EpSet> {
        match self {
            Subset::Nat(a) => Ok(a),
            Subset::Points(_) => Err(Error::Unrepresentable("a finite point set on the universe N".into())),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Subset::Points(p) => p.is_empty(),
            Subset::Nat(a) => a.is_empty(),
        }
    }

    fn zip(&self, o: &Subset, fp: fn(PointSet, PointSet) -> PointSet, fe: fn(&EpSet, &EpSet) -> Result<EpSet>) -> Result<Subset> {
        match (self, o) {
            (Subset::Points(a), Subset::Points(b)) => Ok(Subset::Points(fp(*a, *b))),
            (Subset::Nat(a), Subset::Nat(b)) => Ok(Subset::Nat(fe(a, b)?)),
            _ => Err(Error::Unrepresentable("mixed universes".into())),
        }
    }

    pub fn union(&self, o: &Subset) -> Result<Subset> {
        self.zip(o, PointSet::union, EpSet::union)
    }

    pub fn inter(&self, o: &Subset) -> Result<Subset> {
        self.zip(o, PointSet::inter, EpSet::inter)
    }

    pub fn diff(&self, o: &Subset) -> Result<Subset> {
        self.zip(o, PointSet::diff, EpSet::diff)
    }

    pub fn symdiff(&self, o: &Subset) -> Result<Subset> {
        self.zip(o, PointSet::symdiff, EpSet::symdiff)
    }

    pub fn is_subset(&self, o: &Subset) -> Result<bool> {
        Ok(self.diff(o)?.is_empty())
    }
}

/// Inner and outer charge of a set and whether it lies in the
/// Peano-Jordan completion (`inner == outer`). `attained` tells whether both
/// bounds are realised by field members.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PjReport {
    pub inner: Q,
    pub outer: Q,
    pub inside: bool,
    pub attained: bool,
}

impl ChargeSpace {
    pub fn universe(&self) -> Universe {
        match self {
            ChargeSpace::Finite(s) => Universe::Finite(s.n()),
            ChargeSpace::Naturals(_) => Universe::Naturals,
        }
    }

    pub fn finite(&self) -> Result<&FiniteChargeSpace> {
        match self {
            ChargeSpace::Finite(s) => Ok(s),
            ChargeSpace::Naturals(_) => Err(Error::Unrepresentable("operation needs a finite universe".into())),
        }
    }

    pub fn total(&self) -> Q {
        match self {
            ChargeSpace::Finite(s) => s.total(),
            ChargeSpace::Naturals(k) => k.total(),
        }
    }

    pub fn full_set(&self) -> Subset {
        match self {
            ChargeSpace::Finite(s) => Subset::Points(s.field().full()),
            ChargeSpace::Naturals(_) => Subset::Nat(EpSet::all()),
        }
    }

    pub fn empty_set(&self) -> Subset {
        match self {
            ChargeSpace::Finite(_) => Subset::Points(PointSet::EMPTY),
            ChargeSpace::Naturals(_) => Subset::Nat(EpSet::empty()),
        }
    }

    pub fn field_contains(&self, a: &Subset) -> Result<bool> {
        Ok(match self {
            ChargeSpace::Finite(s) => s.field().contains(a.as_points()?),
            ChargeSpace::Naturals(k) => k.contains(a.as_nat()?),
        })
    }

    pub fn charge(&self, a: &Subset) -> Result<Q> {
        match self {
            ChargeSpace::Finite(s) => s.charge_of(a.as_points()?),
            ChargeSpace::Naturals(k) => k.charge(a.as_nat()?),
        }
    }

    /// `inf { charge(B) : B in field, B ⊇ A }`.
    pub fn outer_charge(&self, a: &Subset) -> Result<Q> {
        Ok(self.pj_membership(a)?.outer)
    }

    /// `sup { charge(B) : B in field, B ⊆ A }`.
    pub fn inner_charge(&self, a: &Subset) -> Result<Q> {
        Ok(self.pj_membership(a)?.inner)
    }

    pub fn is_null_set(&self, a: &Subset) -> Result<bool> {
        Ok(self.outer_charge(a)?.is_zero())
    }

    pub fn pj_membership(&self, a: &Subset) -> Result<PjReport> {
        match self {
            ChargeSpace::Finite(s) => {
                let a = a.as_points()?;
                if !a.is_subset(s.field().full()) {
                    return Err(Error::Unrepresentable(format!("{a:?} leaves the ground set")));
                }
                let inner = s.weight_of_mask(s.field().atoms_inside(a));
                let outer = s.weight_of_mask(s.field().atoms_meeting(a));
                Ok(PjReport { inside: inner == outer, inner, outer, attained: true })
            }
            ChargeSpace::Naturals(kind) => Ok(nat_pj(*kind, a.as_nat()?)),
        }
    }

    /// Outer charge of the superlevel set of an eventually periodic set is a
    /// function of its periodic core; exposed for the measurability layer.
    pub(crate) fn nat_outer_of_core(kind: NatFieldKind, core: &EpSet) -> Q {
        match kind {
            NatFieldKind::Cofinite => {
                if core.is_empty() {
                    int(0)
                } else {
                    int(1)
                }
            }
            _ => core.density(),
        }
    }

    pub fn is_complete(&self) -> bool {
        match self {
            ChargeSpace::Finite(s) => null_atoms_are_points(s),
            ChargeSpace::Naturals(k) => *k != NatFieldKind::Periodic,
        }
    }

    /// `alpha(field ∪ null sets)` with the charge extended by zero on null sets.
    pub fn complete_space(&self) -> ChargeSpace {
        match self {
            ChargeSpace::Finite(s) => ChargeSpace::Finite(split_null_atoms(s)),
            ChargeSpace::Naturals(NatFieldKind::Periodic) => ChargeSpace::Naturals(NatFieldKind::EventuallyPeriodic),
            ChargeSpace::Naturals(k) => ChargeSpace::Naturals(*k),
        }
    }

    /// The Peano-Jordan completion. On a finite space a set is inside iff
    /// every atom it splits is null, and on `N` the periodic field is
    /// completed to the eventually periodic sets, so both coincide with the
    /// completion by null sets on the universes supported here.
    pub fn pj_completion(&self) -> ChargeSpace {
        self.complete_space()
    }

    pub fn is_pj_complete(&self) -> bool {
        self.is_complete()
    }
}

fn nat_pj(kind: NatFieldKind, a: &EpSet) -> PjReport {
    match kind {
        NatFieldKind::Cofinite => {
            let outer = if a.is_finite() { int(0) } else { int(1) };
            let inner = if a.is_cofinite() { int(1) } else { int(0) };
            PjReport { inside: inner == outer, inner, outer, attained: true }
        }
        NatFieldKind::Periodic => {
            // Covers and inner approximations must contain, resp. avoid, the
            // periodic extension of the tail; exceptional elements cost 1/M
            // for period M, so both bounds equal the core density and are
            // attained only when the set is already periodic.
            let d = a.density();
            PjReport { inner: d.clone(), outer: d, inside: true, attained: a.is_periodic() }
        }
        NatFieldKind::EventuallyPeriodic => {
            let d = a.density();
            PjReport { inner: d.clone(), outer: d, inside: true, attained: true }
        }
    }
}

fn null_atoms_are_points(s: &FiniteChargeSpace) -> bool {
    s.field().atoms().iter().zip(s.weights()).all(|(a, w)| !w.is_zero() || a.len() == 1)
}

/// Splits every zero-weight atom into singletons of weight zero.
pub fn split_null_atoms(s: &FiniteChargeSpace) -> FiniteChargeSpace {
    let mut atoms = Vec::new();
    let mut weights = Vec::new();
    for (a, w) in s.field().atoms().iter().zip(s.weights()) {
        if w.is_zero() {
            for p in a.points() {
                atoms.push(PointSet::singleton(p));
                weights.push(Q::zero());
            }
        } else {
            atoms.push(*a);
            weights.push(w.clone());
        }
    }
    let mut pairs: Vec<_> = atoms.into_iter().zip(weights).collect();
    pairs.sort_by_key(|(a, _)| a.min_point());
    let (atoms, weights): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let field = Field::from_atoms(s.n(), atoms).expect("refinement of a partition");
    FiniteChargeSpace::new(field, weights).expect("weights carried over")
}

/// One class of the quotient by the null ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientClass {
    /// Bitmask over the positive atoms (indices into `positive_atoms`).
    pub index: u64,
    pub representative: PointSet,
    pub charge: Q,
}

/// The quotient of the field by its null ideal, realised as the power set of
/// the positive-weight atoms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quotient {
    pub positive_atoms: Vec<PointSet>,
    pub classes: Vec<QuotientClass>,
}

impl Quotient {
    /// The class of a field member: the positive atoms it contains.
    pub fn embed(&self, a: PointSet) -> u64 {
        self.positive_atoms.iter().enumerate().filter(|(_, t)| t.is_subset(a)).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// The class index set of a union of classes is the union of indices.
    pub fn join(&self, a: u64, b: u64) -> u64 {
        a | b
    }
}

pub fn quotient_representation(s: &FiniteChargeSpace, cap: usize) -> Result<Quotient> {
    let positive: Vec<(PointSet, Q)> = s
        .field()
        .atoms()
        .iter()
        .zip(s.weights())
        .filter(|(_, w)| !w.is_zero())
        .map(|(a, w)| (*a, w.clone()))
        .collect();
    check_exhaustive(positive.len(), cap)?;
    let classes = (0..1u64 << positive.len())
        .map(|m| {
            let (mut rep, mut charge) = (PointSet::EMPTY, Q::zero());
            for (i, (a, w)) in positive.iter().enumerate() {
                if m >> i & 1 == 1 {
                    rep = rep.union(*a);
                    charge += w;
                }
            }
            QuotientClass { index: m, representative: rep, charge }
        })
        .collect();
    Ok(Quotient { positive_atoms: positive.into_iter().map(|(a, _)| a).collect(), classes })
}

/// Outcome of the L_p-completeness criterion on the supplied chains.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LpCompletenessReport {
    pub complete: bool,
    /// `Proven` for finite spaces, `Sampled` when only supplied chains were checked.
    pub basis: VerdictBasis,
    /// Per chain: limit of the charges and the least charge of an admissible `D`.
    pub windows: Vec<(Q, Q)>,
    pub witness: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerdictBasis {
    Proven,
    Sampled,
}

/// Checks, for each increasing chain `A_1 ⊆ .. ⊆ A_m` of field members, that
/// some `D` in the field has `A_k \ D` null for all `k` and charge within
/// every `eps` of the limit. Finite spaces are always complete in this sense.
pub fn lp_completeness_check(space: &ChargeSpace, chains: &[Vec<Subset>]) -> Result<LpCompletenessReport> {
    let mut windows = Vec::new();
    let mut witness = None;
    for (ci, chain) in chains.iter().enumerate() {
        for (k, a) in chain.iter().enumerate() {
            if !space.field_contains(a)? {
                return Err(Error::NotInField(format!("chain {ci}, member {k}")));
            }
            if k > 0 && !chain[k - 1].is_subset(a)? {
                return Err(Error::invalid(format!("chain {ci} is not increasing at member {k}")));
            }
        }
        let Some(last) = chain.last() else {
            windows.push((Q::zero(), Q::zero()));
            continue;
        };
        let limit = space.charge(last)?;
        // D ⊇ last up to a null set; the least such charge is the outer charge
        // of `last` modulo null sets, which for field members is its charge.
        let least = least_admissible(space, last)?;
        if least != limit && witness.is_none() {
            witness = Some(ci);
        }
        windows.push((limit, least));
    }
    let basis = match space {
        ChargeSpace::Finite(_) => VerdictBasis::Proven,
        ChargeSpace::Naturals(_) => VerdictBasis::Sampled,
    };
    let complete = match space {
        ChargeSpace::Finite(_) => true,
        ChargeSpace::Naturals(_) => witness.is_none(),
    };
    Ok(LpCompletenessReport { complete, basis, windows, witness })
}

fn least_admissible(space: &ChargeSpace, a: &Subset) -> Result<Q> {
    match space {
        ChargeSpace::Finite(s) => {
            let a = a.as_points()?;
            let d = s.field().atoms_inside(a) & !s.null_atom_mask();
            Ok(s.weight_of_mask(d))
        }
        ChargeSpace::Naturals(k) => Ok(ChargeSpace::nat_outer_of_core(*k, &a.as_nat()?.core())),
    }
}

/// Default cap re-exported for callers of the quotient.
pub const QUOTIENT_CAP: usize = DEFAULT_EXHAUSTIVE_CAP;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ps(v: &[usize]) -> PointSet {
        PointSet::from_points(v.iter().copied())
    }

    fn three_point() -> ChargeSpace {
        let f = Field::discrete(3).unwrap();
        ChargeSpace::Finite(FiniteChargeSpace::new(f, vec![frac(1, 2), frac(1, 2), int(0)]).unwrap())
    }

    #[test]
    fn finite_outer_and_pj() {
        let s = three_point();
        let f = Field::generated(3, &[ps(&[0, 1])]).unwrap();
        let coarse = ChargeSpace::Finite(FiniteChargeSpace::new(f, vec![int(1), int(0)]).unwrap());
        assert_eq!(coarse.outer_charge(&Subset::Points(ps(&[0]))).unwrap(), int(1));
        let r = coarse.pj_membership(&Subset::Points(ps(&[0]))).unwrap();
        assert_eq!((r.inner, r.outer, r.inside), (int(0), int(1), false));
        assert!(s.is_null_set(&Subset::Points(ps(&[2]))).unwrap());
        assert!(coarse.is_null_set(&Subset::Points(ps(&[2]))).unwrap());
    }

    #[test]
    fn nat_outer_charges() {
        let cof = ChargeSpace::Naturals(NatFieldKind::Cofinite);
        let evens = Subset::Nat(EpSet::residue(0, 2).unwrap());
        assert_eq!(cof.outer_charge(&evens).unwrap(), int(1));
        assert_eq!(cof.inner_charge(&evens).unwrap(), int(0));
        assert_eq!(cof.outer_charge(&Subset::Nat(EpSet::finite(&[1, 2, 3]).unwrap())).unwrap(), int(0));
        let per = ChargeSpace::Naturals(NatFieldKind::Periodic);
        let r = per.pj_membership(&Subset::Nat(EpSet::finite(&[1, 2, 3]).unwrap())).unwrap();
        assert!(r.inside && !r.attained && r.outer == int(0));
    }

    #[test]
    fn completion_splits_null_atoms() {
        let f = Field::generated(3, &[ps(&[0, 1])]).unwrap();
        let s = ChargeSpace::Finite(FiniteChargeSpace::new(f, vec![int(0), int(1)]).unwrap());
        assert!(!s.is_complete());
        let c = s.complete_space();
        assert!(c.is_complete());
        assert_eq!(c.finite().unwrap().field().num_atoms(), 3);
        assert_eq!(c.complete_space(), c);
    }

    #[test]
    fn quotient_of_two_positive_atoms() {
        let s = three_point();
        let q = quotient_representation(s.finite().unwrap(), 16).unwrap();
        assert_eq!(q.classes.len(), 4);
        assert_eq!(q.embed(ps(&[0, 2])), 1);
    }

    #[test]
    fn lp_completeness_on_samples() {
        let cof = ChargeSpace::Naturals(NatFieldKind::Cofinite);
        let chain: Vec<Subset> = (1..6).map(|k| Subset::Nat(EpSet::finite(&(1..=k).collect::<Vec<_>>()).unwrap())).collect();
        let r = lp_completeness_check(&cof, &[chain]).unwrap();
        assert!(r.complete);
        assert_eq!(r.basis, VerdictBasis::Sampled);
        assert_eq!(r.windows[0], (int(0), int(0)));
        let fs = three_point();
        assert!(lp_completeness_check(&fs, &[]).unwrap().complete);
    }
}
