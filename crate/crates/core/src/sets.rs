//! Finite ground sets, fields of subsets represented by their atoms, charges
//! given by atom weights, and Boolean ideals.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// Hard limit imposed by the bitmask representation.
pub const MAX_POINTS: usize = 64;
/// Default bound for operations that enumerate all elements of a field.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 16;

/// A subset of `{0, .., n-1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1u64 << i)
    }

    pub fn from_points(points: impl IntoIterator<Item = usize>) -> Self {
        PointSet(points.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, o: Self) -> Self {
        PointSet(self.0 | o.0)
    }

    pub fn inter(self, o: Self) -> Self {
        PointSet(self.0 & o.0)
    }

    pub fn diff(self, o: Self) -> Self {
        PointSet(self.0 & !o.0)
    }

    pub fn symdiff(self, o: Self) -> Self {
        PointSet(self.0 ^ o.0)
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_proper_subset(self, o: Self) -> bool {
        self.is_subset(o) && self != o
    }

    pub fn meets(self, o: Self) -> bool {
        self.0 & o.0 != 0
    }

    pub fn min_point(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..64).filter(move |i| m >> i & 1 == 1)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("the ground set must be nonempty"));
    }
    if n > MAX_POINTS {
        return Err(Error::TooLarge { points: n, cap: MAX_POINTS });
    }
    Ok(())
}

/// Errors unless `2^k` elements may be enumerated under `cap`.
pub fn check_exhaustive(k: usize, cap: usize) -> Result<()> {
    if k > cap {
        Err(Error::TooLarge { points: k, cap })
    } else {
        Ok(())
    }
}

/// A field of subsets of `{0, .., n-1}`, stored as its atoms. Atoms are
/// nonempty, pairwise disjoint, cover the ground set and are sorted by their
/// smallest point, so equal fields have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Field {
    n: usize,
    atoms: Vec<PointSet>,
}

impl Field {
    pub fn from_atoms(n: usize, atoms: Vec<PointSet>) -> Result<Self> {
        check_size(n)?;
        let full = PointSet::full(n);
        let mut seen = PointSet::EMPTY;
        for (i, a) in atoms.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::input(format!("/field/atoms/{i}"), "empty atom"));
            }
            if !a.is_subset(full) {
                return Err(Error::input(format!("/field/atoms/{i}"), "atom leaves the ground set"));
            }
            if a.meets(seen) {
                return Err(Error::input(format!("/field/atoms/{i}"), "atoms overlap"));
            }
            seen = seen.union(*a);
        }
        if seen != full {
            return Err(Error::input("/field/atoms", "atoms do not cover the ground set"));
        }
        let mut atoms = atoms;
        atoms.sort_by_key(|a| a.min_point());
        Ok(Field { n, atoms })
    }

    /// The smallest field containing every generator.
    pub fn generated(n: usize, generators: &[PointSet]) -> Result<Self> {
        check_size(n)?;
        let full = PointSet::full(n);
        let mut atoms = vec![full];
        for (i, g) in generators.iter().enumerate() {
            if !g.is_subset(full) {
                return Err(Error::input(format!("/field/sets/{i}"), "generator leaves the ground set"));
            }
            atoms = atoms
                .into_iter()
                .flat_map(|a| [a.inter(*g), a.diff(*g)])
                .filter(|a| !a.is_empty())
                .collect();
        }
        Field::from_atoms(n, atoms)
    }

    pub fn discrete(n: usize) -> Result<Self> {
        Field::from_atoms(n, (0..n).map(PointSet::singleton).collect())
    }

    pub fn trivial(n: usize) -> Result<Self> {
        Field::from_atoms(n, vec![PointSet::full(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.n)
    }

    pub fn atoms(&self) -> &[PointSet] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_of(&self, point: usize) -> usize {
        self.atoms.iter().position(|a| a.contains(point)).expect("atoms cover the ground set")
    }

    /// `A` belongs to the field iff it is a union of atoms.
    pub fn contains(&self, a: PointSet) -> bool {
        a.is_subset(self.full()) && self.atoms.iter().all(|t| !t.meets(a) || t.is_subset(a))
    }

    /// Indices of atoms meeting `a`, as a bitmask over atom indices.
    pub fn atoms_meeting(&self, a: PointSet) -> u64 {
        self.atoms.iter().enumerate().filter(|(_, t)| t.meets(a)).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Indices of atoms contained in `a`.
    pub fn atoms_inside(&self, a: PointSet) -> u64 {
        self.atoms.iter().enumerate().filter(|(_, t)| t.is_subset(a)).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn union_of_atoms(&self, mask: u64) -> PointSet {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(PointSet::EMPTY, |s, (_, a)| s.union(*a))
    }

    /// Every element of the field, indexed by atom masks.
    pub fn elements(&self, cap: usize) -> Result<Vec<PointSet>> {
        check_exhaustive(self.atoms.len(), cap)?;
        Ok((0..1u64 << self.atoms.len()).map(|m| self.union_of_atoms(m)).collect())
    }

    /// Every atom of `self` is an element of `other`.
    pub fn is_subfield_of(&self, other: &Field) -> bool {
        self.n == other.n && self.atoms.iter().all(|a| other.contains(*a))
    }

    /// The field generated by `self` together with extra sets.
    pub fn refine_with(&self, extra: &[PointSet]) -> Result<Field> {
        let mut gens = self.atoms.clone();
        gens.extend_from_slice(extra);
        Field::generated(self.n, &gens)
    }
}

/// A field with a nonnegative charge, finitely additive by construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteChargeSpace {
    field: Field,
    weights: Vec<Q>,
}

impl FiniteChargeSpace {
    pub fn new(field: Field, weights: Vec<Q>) -> Result<Self> {
        if weights.len() != field.num_atoms() {
            return Err(Error::input(
                "/charge/weights",
                format!("expected {} weights, got {}", field.num_atoms(), weights.len()),
            ));
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::input(format!("/charge/weights/{i}"), "negative weight"));
        }
        Ok(FiniteChargeSpace { field, weights })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.field.n()
    }

    pub fn total(&self) -> Q {
        self.weights.iter().sum()
    }

    pub fn weight_of_mask(&self, mask: u64) -> Q {
        self.weights.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w).sum()
    }

    pub fn charge_of(&self, a: PointSet) -> Result<Q> {
        if !self.field.contains(a) {
            return Err(Error::NotInField(format!("{a:?}")));
        }
        Ok(self.weight_of_mask(self.field.atoms_inside(a)))
    }

    pub fn null_atom_mask(&self) -> u64 {
        self.weights.iter().enumerate().filter(|(_, w)| w.is_zero()).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Union of the zero-weight atoms: the largest null element of the field.
    pub fn null_union(&self) -> PointSet {
        self.field.union_of_atoms(self.null_atom_mask())
    }

    /// The ideal `{A in field : charge(A) = 0}`, generated by the null atoms.
    pub fn kernel_ideal(&self) -> BooleanIdeal {
        let mask = self.null_atom_mask();
        BooleanIdeal {
            generators: self
                .field
                .atoms()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| *a)
                .collect(),
        }
    }

    /// The charge restricted to a subfield.
    pub fn restrict(&self, sub: &Field) -> Result<FiniteChargeSpace> {
        if !sub.is_subfield_of(&self.field) {
            return Err(Error::NotSubfield("restriction target is not a subfield".into()));
        }
        let weights = sub.atoms().iter().map(|a| self.charge_of(*a)).collect::<Result<Vec<_>>>()?;
        FiniteChargeSpace::new(sub.clone(), weights)
    }

    /// `atom:weight` pairs, for diagnostics.
    pub fn describe(&self) -> String {
        self.field
            .atoms()
            .iter()
            .zip(&self.weights)
            .map(|(a, w)| format!("{a:?}:{}", fmt_q(w)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A Boolean ideal of a field, given by generators; as a set of sets it is
/// `{A in field : A is contained in the union of the generators}`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BooleanIdeal {
    pub generators: Vec<PointSet>,
}

impl BooleanIdeal {
    pub fn top(&self) -> PointSet {
        self.generators.iter().fold(PointSet::EMPTY, |s, g| s.union(*g))
    }

    pub fn contains(&self, field: &Field, a: PointSet) -> bool {
        field.contains(a) && a.is_subset(self.top())
    }

    pub fn materialize(&self, field: &Field, cap: usize) -> Result<Vec<PointSet>> {
        self.check_in(field)?;
        let inside = field.atoms_inside(self.top());
        check_exhaustive(inside.count_ones() as usize, cap)?;
        let idx: Vec<usize> = (0..field.num_atoms()).filter(|i| inside >> i & 1 == 1).collect();
        Ok((0..1u64 << idx.len())
            .map(|m| {
                let mask = idx.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).fold(0u64, |s, (_, i)| s | 1 << i);
                field.union_of_atoms(mask)
            })
            .collect())
    }

    pub fn check_in(&self, field: &Field) -> Result<()> {
        match self.generators.iter().position(|g| !field.contains(*g)) {
            Some(i) => Err(Error::IdealNotInField(format!("generator {i} = {:?}", self.generators[i]))),
            None => Ok(()),
        }
    }
}

/// `alpha(base ∪ ideal)`: the field generated by a subfield `base` of
/// `ambient` together with an ideal of `ambient`.
pub fn extend_field_with_ideal(ambient: &Field, base: &Field, ideal: &BooleanIdeal) -> Result<Field> {
    if !base.is_subfield_of(ambient) {
        return Err(Error::NotSubfield("base field is not contained in the ambient field".into()));
    }
    ideal.check_in(ambient)?;
    let top = ideal.top();
    let ideal_atoms: Vec<PointSet> = ambient.atoms().iter().copied().filter(|a| a.is_subset(top)).collect();
    base.refine_with(&ideal_atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ps(v: &[usize]) -> PointSet {
        PointSet::from_points(v.iter().copied())
    }

    #[test]
    fn generated_field_from_one_set() {
        let f = Field::generated(3, &[ps(&[0])]).unwrap();
        assert_eq!(f.atoms(), &[ps(&[0]), ps(&[1, 2])]);
        assert_eq!(f.elements(16).unwrap().len(), 4);
        assert!(f.contains(ps(&[1, 2])));
        assert!(!f.contains(ps(&[1])));
    }

    #[test]
    fn charges_add_over_atoms() {
        let f = Field::discrete(3).unwrap();
        let s = FiniteChargeSpace::new(f, vec![frac(1, 2), frac(1, 2), int(0)]).unwrap();
        assert_eq!(s.charge_of(ps(&[0, 2])).unwrap(), frac(1, 2));
        assert_eq!(s.total(), int(1));
    }

    #[test]
    fn kernel_ideal_of_two_null_points() {
        let f = Field::discrete(3).unwrap();
        let s = FiniteChargeSpace::new(f, vec![int(0), int(0), int(1)]).unwrap();
        let k = s.kernel_ideal();
        let mut els = k.materialize(s.field(), 16).unwrap();
        els.sort();
        assert_eq!(els, vec![ps(&[]), ps(&[0]), ps(&[1]), ps(&[0, 1])]);
    }

    #[test]
    fn extension_by_ideal_and_errors() {
        let ambient = Field::discrete(3).unwrap();
        let base = Field::trivial(3).unwrap();
        let ideal = BooleanIdeal { generators: vec![ps(&[0])] };
        let ext = extend_field_with_ideal(&ambient, &base, &ideal).unwrap();
        assert_eq!(ext.atoms(), &[ps(&[0]), ps(&[1, 2])]);
        let coarse = Field::generated(3, &[ps(&[0, 1])]).unwrap();
        assert!(matches!(
            extend_field_with_ideal(&coarse, &base, &ideal),
            Err(Error::IdealNotInField(_))
        ));
        assert!(matches!(
            extend_field_with_ideal(&coarse, &ambient, &BooleanIdeal::default()),
            Err(Error::NotSubfield(_))
        ));
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(Field::from_atoms(3, vec![ps(&[0, 1]), ps(&[1, 2])]).is_err());
        assert!(Field::from_atoms(3, vec![ps(&[0, 1])]).is_err());
        assert!(FiniteChargeSpace::new(Field::trivial(2).unwrap(), vec![int(-1)]).is_err());
    }
}
