//! Chains of sets, the chain/function correspondence, null modification of
//! chains and functions, and the completion-isomorphism checks.
//!
//! A chain is a list of `(level, set)` entries with strictly increasing
//! levels and nonincreasing sets. Entry `(l_i, S_i)` stands for
//! `A_y = S_i` on `[l_i, l_{i+1})`, the first set also covering the levels
//! below `l_0`. This is the ray convention `A_y = f⁻¹(y, ∞)`, for which
//! `A_y = ⋃_{z > y} A_z` holds by construction; the intersection of the
//! chain is the last set, which must be empty.

use num_traits::{Signed, Zero};

use crate::completion::{split_null_atoms, ChargeSpace, Subset, Universe};
use crate::error::{Error, Result};
use crate::function::{self, breakpoints, equal_ae, is_t1_measurable, pseudometric, EqualityMethod, RayKind, Realized, SimpleFunction};
use crate::integration::lp_membership;
use crate::rational::Q;
use crate::sets::{Field, FiniteChargeSpace, PointSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    entries: Vec<(Q, Subset)>,
}

impl Chain {
    pub fn new(entries: Vec<(Q, Subset)>) -> Result<Self> {
        for (i, (l, _)) in entries.iter().enumerate() {
            if l.is_negative() {
                return Err(Error::input(format!("/entries/{i}/level"), "levels must be nonnegative"));
            }
        }
        for (i, w) in entries.windows(2).enumerate() {
            if w[0].0 >= w[1].0 {
                return Err(Error::input(format!("/entries/{}/level", i + 1), "levels must increase strictly"));
            }
            if !w[1].1.is_subset(&w[0].1)? {
                return Err(Error::input(format!("/entries/{}/set", i + 1), "sets must be nonincreasing"));
            }
        }
        Ok(Chain { entries })
    }

    pub fn entries(&self) -> &[(Q, Subset)] {
        &self.entries
    }

    pub fn sets(&self) -> impl Iterator<Item = &Subset> {
        self.entries.iter().map(|(_, s)| s)
    }

    /// `A_y` under the step convention.
    pub fn at(&self, y: &Q) -> Option<&Subset> {
        let i = self.entries.iter().rposition(|(l, _)| l <= y).unwrap_or(0);
        self.entries.get(i).map(|(_, s)| s)
    }
}

/// `f(x) = inf{z > 0 : x ∉ A_z}`: the piece `S_m \ S_{m+1}` takes the value
/// `l_{m+1}`, points outside `S_0` take zero.
pub fn chain_to_function(u: Universe, chain: &Chain) -> Result<Realized> {
    let Some((_, last)) = chain.entries.last() else {
        return Ok(Realized::constant(u, Q::zero()));
    };
    if !last.is_empty() {
        return Err(Error::Condition2b("the chain has a nonempty intersection".into()));
    }
    let mut pieces = Vec::new();
    for w in chain.entries.windows(2) {
        pieces.push((w[1].0.clone(), w[0].1.diff(&w[1].1)?));
    }
    let s = SimpleFunction::new(pieces)?;
    let mut f = Realized::constant(u, Q::zero());
    for (c, a) in s.pieces() {
        f = f.add(&Realized::indicator(u, a)?.scale(c))?;
    }
    Ok(f)
}

/// `{0} ∪ breakpoints(f)`, the levels at which the rays of `f` change.
pub fn default_levels(f: &Realized) -> Vec<Q> {
    let mut l: Vec<Q> = breakpoints(f).into_iter().filter(|y| y.is_positive()).collect();
    l.insert(0, Q::zero());
    l
}

/// Entries `(l, f⁻¹(l, ∞))` for the requested levels, sorted.
pub fn function_to_chain(space: &ChargeSpace, f: &Realized, levels: &[Q]) -> Result<Chain> {
    function::check_universe(space, f)?;
    let negative = match f {
        Realized::Finite(v) => v.iter().any(|x| x.is_negative()),
        Realized::Nat(g) => g.prefix().iter().any(|x| x.is_negative()) || !g.neg_part()?.is_zero(),
    };
    if negative {
        return Err(Error::invalid("function_to_chain needs a nonnegative function"));
    }
    let mut levels = levels.to_vec();
    levels.sort();
    levels.dedup();
    let entries = levels
        .into_iter()
        .map(|y| Ok((y.clone(), function::ray(space, f, &y, RayKind::OpenUp)?)))
        .collect::<Result<Vec<_>>>()?;
    Chain::new(entries)
}

/// `alpha(sub ∪ null sets)` with the charge carried over: atoms `a \ Z` for
/// the atoms `a` of `sub` and the points of the null union `Z`.
pub fn field_plus_null(space: &FiniteChargeSpace, sub: &Field) -> Result<FiniteChargeSpace> {
    plus_null(space, &space.restrict(sub)?)
}

/// The same over any charged field whose atoms meet the null union `Z` of
/// `space` only in null parts, such as the completion of a subfield.
fn plus_null(space: &FiniteChargeSpace, sub: &FiniteChargeSpace) -> Result<FiniteChargeSpace> {
    let z = space.null_union();
    let mut pairs = Vec::new();
    for (a, w) in sub.field().atoms().iter().zip(sub.weights()) {
        let rest = a.diff(z);
        if !rest.is_empty() {
            pairs.push((rest, w.clone()));
        }
    }
    pairs.extend(z.points().map(|p| (PointSet::singleton(p), Q::zero())));
    pairs.sort_by_key(|(a, _)| a.min_point());
    let (atoms, weights): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    FiniteChargeSpace::new(Field::from_atoms(space.n(), atoms)?, weights)
}

/// Compares `PJ(alpha(sub ∪ N))` with `alpha(PJ(sub) ∪ N)`; a witness atom
/// of one side that is not an element of the other is returned on failure.
pub fn completion_identity(space: &FiniteChargeSpace, sub: &Field) -> Result<Option<PointSet>> {
    let lhs = split_null_atoms(&field_plus_null(space, sub)?);
    let pj_sub = split_null_atoms(&space.restrict(sub)?);
    let rhs = plus_null(space, &pj_sub)?;
    let witness = lhs
        .field()
        .atoms()
        .iter()
        .find(|a| !rhs.field().contains(**a))
        .or_else(|| rhs.field().atoms().iter().find(|a| !lhs.field().contains(**a)))
        .copied();
    Ok(witness)
}

/// One step of the construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NullModStep {
    /// Index into the list of class representatives.
    pub k: usize,
    pub c: PointSet,
    pub b: PointSet,
    pub d: PointSet,
    pub e: PointSet,
    pub f: PointSet,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NullModMap {
    /// `(A, φ(A))` in chain order.
    pub pairs: Vec<(PointSet, PointSet)>,
    /// `PJ(sub)`, where every image lives.
    pub target: Field,
    pub steps: Vec<NullModStep>,
    /// `φ(A) △ A` is null for every element.
    pub property1: bool,
    /// `[A] = [B] ⟺ φ(A) = φ(B)` and `[A] < [B] ⟺ φ(A) ⊂ φ(B)`.
    pub property2: bool,
    pub images_in_target: bool,
    pub charge_preserved: bool,
}

impl NullModMap {
    pub fn verified(&self) -> bool {
        self.property1 && self.property2 && self.images_in_target && self.charge_preserved
    }

    pub fn image(&self, a: PointSet) -> Option<PointSet> {
        self.pairs.iter().find(|(x, _)| *x == a).map(|(_, y)| *y)
    }
}

fn check_ambient(space: &FiniteChargeSpace, sub: &Field) -> Result<FiniteChargeSpace> {
    if !ChargeSpace::Finite(space.clone()).is_pj_complete() {
        return Err(Error::NotPjComplete("the ambient space must be Peano-Jordan complete".into()));
    }
    if !sub.is_subfield_of(space.field()) {
        return Err(Error::NotSubfield("the subfield is not contained in the ambient field".into()));
    }
    if let Some(w) = completion_identity(space, sub)? {
        return Err(Error::CompletionIdentity(format!("witness set {w:?}")));
    }
    Ok(split_null_atoms(&space.restrict(sub)?))
}

/// The canonical admissible `E`: the atoms of `PJ(sub)` that are non-null
/// with their non-null part inside `s`, or that lie inside `s` outright.
fn canonical_e(pj_sub: &FiniteChargeSpace, z: PointSet, s: PointSet) -> PointSet {
    pj_sub
        .field()
        .atoms()
        .iter()
        .zip(pj_sub.weights())
        .filter(|(a, w)| (!w.is_zero() && a.diff(z).is_subset(s)) || a.is_subset(s))
        .fold(PointSet::EMPTY, |acc, (a, _)| acc.union(*a))
}

/// Rewrites a chain of `PJ(alpha(sub ∪ N))` into `PJ(sub)` by adding and
/// removing null sets while keeping the order of the null classes.
pub fn null_modification(space: &FiniteChargeSpace, sub: &Field, chain: &[PointSet]) -> Result<NullModMap> {
    let pj_sub = check_ambient(space, sub)?;
    let plus = field_plus_null(space, sub)?;
    let n = space.n();
    let z = space.null_union();
    for (i, a) in chain.iter().enumerate() {
        if let Some(j) = chain[..i].iter().position(|b| !(a.is_subset(*b) || b.is_subset(*a))) {
            return Err(Error::invalid(format!("chain elements {j} and {i} are not nested")));
        }
    }
    if let Some(i) = chain.iter().position(|a| !plus.field().contains(*a)) {
        return Err(Error::NotInField(format!("chain element {i} is outside the completed extension")));
    }
    let same_class = |a: PointSet, b: PointSet| a.symdiff(b).is_subset(z);
    // One representative per null class, in input order.
    let mut reps: Vec<PointSet> = Vec::new();
    for a in chain {
        if !reps.iter().any(|r| same_class(*r, *a)) {
            reps.push(*a);
        }
    }
    let mut phi = reps.clone();
    let mut steps = Vec::new();
    for k in 0..reps.len() {
        let c = reps[k];
        let below = (0..k).filter(|&j| reps[j].is_proper_subset(c)).max_by_key(|&j| reps[j].len());
        let above = (0..k).filter(|&j| c.is_proper_subset(reps[j])).min_by_key(|&j| reps[j].len());
        let (b, pb) = below.map_or((PointSet::EMPTY, PointSet::EMPTY), |j| (reps[j], phi[j]));
        let full = PointSet::full(n);
        let (d, pd) = above.map_or((full, full), |j| (reps[j], phi[j]));
        let e = canonical_e(&pj_sub, z, phi[k]);
        if !pj_sub.field().contains(e) || !same_class(e, phi[k]) {
            return Err(Error::internal(format!("no admissible E at step {k}: phi(C) = {:?}", phi[k])));
        }
        let f = e.union(pb).inter(pd);
        let prev = phi.clone();
        for (j, r) in reps.iter().enumerate() {
            phi[j] = if j == k {
                f
            } else if b.is_proper_subset(*r) && r.is_proper_subset(c) {
                prev[j].inter(f)
            } else if c.is_proper_subset(*r) && r.is_proper_subset(d) {
                prev[j].union(f)
            } else {
                prev[j]
            };
        }
        steps.push(NullModStep { k, c, b, d, e, f });
    }
    let pairs: Vec<(PointSet, PointSet)> = chain
        .iter()
        .map(|a| {
            let i = reps.iter().position(|r| same_class(*r, *a)).expect("every element has a class");
            (*a, phi[i])
        })
        .collect();
    let property1 = pairs.iter().all(|(a, p)| same_class(*a, *p));
    let mut property2 = true;
    for (a, pa) in &pairs {
        for (b, pb) in &pairs {
            let eq = same_class(*a, *b);
            let lt = !eq && a.diff(*b).is_subset(z);
            property2 &= eq == (pa == pb) && lt == pa.is_proper_subset(*pb);
        }
    }
    let images_in_target = pairs.iter().all(|(_, p)| pj_sub.field().contains(*p));
    let charge_preserved = pairs.iter().all(|(a, p)| space.charge_of(*a).ok() == pj_sub.charge_of(*p).ok());
    Ok(NullModMap { pairs, target: pj_sub.field().clone(), steps, property1, property2, images_in_target, charge_preserved })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NullModFunction {
    pub h: Realized,
    /// `f = h` a.e. in the completed extension.
    pub equal_ae: bool,
    /// `h` is T1-measurable over `sub`.
    pub sub_measurable: bool,
    /// `h ∈ L_1` over `sub`.
    pub sub_integrable: bool,
}

fn modify_part(space: &FiniteChargeSpace, sub: &Field, plus: &ChargeSpace, part: &Realized) -> Result<Realized> {
    let levels = default_levels(part);
    let chain = function_to_chain(plus, part, &levels)?;
    let sets: Vec<PointSet> = chain.sets().map(|s| s.as_points()).collect::<Result<_>>()?;
    let map = null_modification(space, sub, &sets)?;
    let bottom = map.pairs.last().map_or(PointSet::EMPTY, |(_, p)| *p);
    let entries = levels
        .into_iter()
        .zip(&map.pairs)
        .map(|(l, (_, p))| (l, Subset::Points(p.diff(bottom))))
        .collect();
    chain_to_function(Universe::Finite(space.n()), &Chain::new(entries)?)
}

/// An `h` over `sub` equal a.e. to `f`, a T1-measurable function over the
/// extension of `sub` by the null sets.
pub fn null_modify_function(space: &FiniteChargeSpace, sub: &Field, f: &Realized) -> Result<NullModFunction> {
    check_ambient(space, sub)?;
    let plus = ChargeSpace::Finite(field_plus_null(space, sub)?);
    function::check_universe(&plus, f)?;
    if !is_t1_measurable(&plus, f)?.measurable {
        return Err(Error::NotMeasurable("the function is not measurable over the extended field".into()));
    }
    let h = modify_part(space, sub, &plus, &f.pos_part()?)?.sub(&modify_part(space, sub, &plus, &f.neg_part()?)?)?;
    let sub_space = ChargeSpace::Finite(space.restrict(sub)?);
    Ok(NullModFunction {
        equal_ae: equal_ae(&plus, f, &h, EqualityMethod::Direct)?,
        sub_measurable: is_t1_measurable(&sub_space, &h)?.measurable,
        sub_integrable: lp_membership(&sub_space, &h, 1)?,
        h,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsomorphismReport {
    /// `L_p(sub) = L_p(alpha(sub ∪ N))`, decided on indicators of atoms of
    /// the completed extension.
    pub lp_equal: bool,
    /// Every null set lies in `PJ(sub)`.
    pub null_in_sub_completion: bool,
    /// The class map is onto and isometric on indicators.
    pub classes_isomorphic: bool,
    pub completion_identity: bool,
    /// An atom of the completed extension whose indicator is not measurable
    /// over `sub`.
    pub lp_witness: Option<PointSet>,
    pub identity_witness: Option<PointSet>,
}

impl IsomorphismReport {
    pub fn consistent(&self) -> bool {
        self.lp_equal == self.null_in_sub_completion && self.classes_isomorphic == self.completion_identity
    }
}

pub fn completion_isomorphism_check(space: &FiniteChargeSpace, sub: &Field, p: u32) -> Result<IsomorphismReport> {
    let sub_fc = space.restrict(sub)?;
    let sub_space = ChargeSpace::Finite(sub_fc.clone());
    let pj_sub = split_null_atoms(&sub_fc);
    let plus_fc = field_plus_null(space, sub)?;
    let plus = ChargeSpace::Finite(plus_fc.clone());
    let pj_plus = split_null_atoms(&plus_fc);
    let u = Universe::Finite(space.n());

    let mut lp_witness = None;
    for a in pj_plus.field().atoms() {
        let ind = Realized::indicator(u, &Subset::Points(*a))?;
        if !lp_membership(&sub_space, &ind, p)? {
            lp_witness = Some(*a);
            break;
        }
    }
    let z = space.null_union();
    let null_in_sub_completion = z.points().all(|q| pj_sub.field().contains(PointSet::singleton(q)));

    // Onto: each atom of PJ(alpha(sub ∪ N)) is a.e. an element of PJ(sub).
    let onto = pj_plus.field().atoms().iter().all(|a| {
        let a_rest = a.diff(z);
        let cover = pj_sub.field().union_of_atoms(pj_sub.field().atoms_meeting(a_rest));
        cover.symdiff(*a).is_subset(z)
    });
    // Isometric: the distance to zero of each PJ(sub) indicator agrees.
    let zero = Realized::constant(u, Q::zero());
    let mut isometric = true;
    for a in pj_sub.field().atoms() {
        let ind = Realized::indicator(u, &Subset::Points(*a))?;
        let c_sub = ChargeSpace::Finite(pj_sub.clone());
        isometric &= pseudometric(&c_sub, &ind, &zero)? == pseudometric(&plus, &ind, &zero)?;
    }
    let identity_witness = completion_identity(space, sub)?;
    Ok(IsomorphismReport {
        lp_equal: lp_witness.is_none(),
        null_in_sub_completion,
        classes_isomorphic: onto && isometric,
        completion_identity: identity_witness.is_none(),
        lp_witness,
        identity_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ps(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    #[test]
    fn chain_round_trip() {
        let u = Universe::Finite(4);
        let s = ChargeSpace::Finite(FiniteChargeSpace::new(Field::discrete(4).unwrap(), vec![int(1); 4]).unwrap());
        let f = Realized::Finite(vec![int(0), frac(1, 2), int(3), frac(1, 2)]);
        let c = function_to_chain(&s, &f, &default_levels(&f)).unwrap();
        assert_eq!(chain_to_function(u, &c).unwrap(), f);
        let empty = Chain::new(vec![(int(1), Subset::Points(PointSet::EMPTY))]).unwrap();
        assert_eq!(chain_to_function(u, &empty).unwrap(), Realized::constant(u, int(0)));
        let single = Chain::new(vec![(int(1), Subset::Points(ps(&[0, 1])))]).unwrap();
        assert!(matches!(chain_to_function(u, &single), Err(Error::Condition2b(_))));
        let two = Chain::new(vec![(int(0), Subset::Points(ps(&[0, 1]))), (int(1), Subset::Points(PointSet::EMPTY))]).unwrap();
        assert_eq!(chain_to_function(u, &two).unwrap(), Realized::Finite(vec![int(1), int(1), int(0), int(0)]));
    }

    fn example_space() -> (FiniteChargeSpace, Field) {
        // Points 0..4 stand for 1..4; point 2 is null.
        let s = FiniteChargeSpace::new(Field::discrete(4).unwrap(), vec![frac(1, 4), frac(1, 4), int(0), frac(1, 2)]).unwrap();
        let sub = Field::from_atoms(4, vec![ps(&[0, 1]), ps(&[2, 3])]).unwrap();
        (s, sub)
    }

    #[test]
    fn strips_null_part() {
        let (s, sub) = example_space();
        let m = null_modification(&s, &sub, &[ps(&[0, 1, 2])]).unwrap();
        assert_eq!(m.image(ps(&[0, 1, 2])), Some(ps(&[0, 1])));
        assert!(m.verified());
    }

    #[test]
    fn identity_inside_target() {
        let (s, sub) = example_space();
        let chain = [ps(&[0, 1, 2, 3]), ps(&[0, 1]), PointSet::EMPTY];
        let m = null_modification(&s, &sub, &chain).unwrap();
        assert!(m.pairs.iter().all(|(a, b)| a == b) && m.verified());
    }

    #[test]
    fn indicator_modified() {
        let (s, sub) = example_space();
        let f = Realized::Finite(vec![int(1), int(1), int(1), int(0)]);
        let r = null_modify_function(&s, &sub, &f).unwrap();
        assert_eq!(r.h, Realized::Finite(vec![int(1), int(1), int(0), int(0)]));
        assert!(r.equal_ae && r.sub_measurable && r.sub_integrable);
    }

    #[test]
    fn isomorphism_examples() {
        let s = FiniteChargeSpace::new(Field::discrete(3).unwrap(), vec![int(0), frac(1, 2), frac(1, 2)]).unwrap();
        let same = completion_isomorphism_check(&s, s.field(), 1).unwrap();
        assert!(same.lp_equal && same.classes_isomorphic && same.consistent());
        let coarse = Field::from_atoms(3, vec![ps(&[0, 1]), ps(&[2])]).unwrap();
        let r = completion_isomorphism_check(&s, &coarse, 1).unwrap();
        assert!(!r.lp_equal && r.classes_isomorphic && r.consistent());
        assert_eq!(r.lp_witness, Some(ps(&[0])));
    }
}
