//! Rays, level breakpoints, outer-charge profiles and the decisions built on
//! them: null functions, smoothness, T1/T2-measurability, the pseudometric,
//! equality and domination almost everywhere, hazy convergence.

use num_traits::{One, Signed, Zero};

use super::laurent::Limit;
use super::natfn::NatFn;
use super::Realized;
use crate::completion::{ChargeSpace, Subset, Universe};
use crate::error::{Error, Result};
use crate::periodic::{EpSet, NatFieldKind};
use crate::rational::{int, max_q, Q};
use crate::sets::PointSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RayKind {
    /// `{f > y}`
    OpenUp,
    /// `{f >= y}`
    ClosedUp,
    /// `{f < y}`
    OpenDown,
    /// `{f <= y}`
    ClosedDown,
    /// `{f = y}`
    Level,
}

impl RayKind {
    fn keep(self, s: i8) -> bool {
        match self {
            RayKind::OpenUp => s > 0,
            RayKind::ClosedUp => s >= 0,
            RayKind::OpenDown => s < 0,
            RayKind::ClosedDown => s <= 0,
            RayKind::Level => s == 0,
        }
    }
}

fn sign(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn check_universe(space: &ChargeSpace, f: &Realized) -> Result<()> {
    if space.universe() != f.universe() {
        return Err(Error::Unrepresentable(format!(
            "function on {:?} used with a space on {:?}",
            f.universe(),
            space.universe()
        )));
    }
    Ok(())
}

pub fn ray(space: &ChargeSpace, f: &Realized, y: &Q, kind: RayKind) -> Result<Subset> {
    check_universe(space, f)?;
    Ok(match f {
        Realized::Finite(v) => Subset::Points(PointSet::from_points(
            v.iter().enumerate().filter(|(_, x)| kind.keep(sign(&(*x - y)))).map(|(i, _)| i),
        )),
        Realized::Nat(g) => Subset::Nat(g.level_set(y, |s| kind.keep(s))?),
    })
}

/// Sorted levels where the outer-charge behaviour of rays can change: the
/// values of `f` on a finite universe, the finite class limits on `N`.
pub fn breakpoints(f: &Realized) -> Vec<Q> {
    let mut b: Vec<Q> = match f {
        Realized::Finite(v) => v.clone(),
        Realized::Nat(g) => g.class_limits().into_iter().filter_map(|l| l.finite().cloned()).collect(),
    };
    b.sort();
    b.dedup();
    b
}

/// One point in each open gap `(-∞, b_1), (b_1, b_2), .., (b_k, ∞)`.
pub fn gap_representatives(points: &[Q]) -> Vec<Q> {
    let Some(first) = points.first() else { return vec![Q::zero()] };
    let mut out = vec![first - Q::one()];
    out.extend(points.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
    out.push(points.last().unwrap() + Q::one());
    out
}

/// Levels `y` with `lim_{δ→0} μ*(f⁻¹[y-δ, y+δ]) > 0`.
pub fn atom_levels(space: &ChargeSpace, f: &Realized) -> Result<Vec<Q>> {
    check_universe(space, f)?;
    match f {
        Realized::Finite(_) => {
            let mut out = Vec::new();
            for v in breakpoints(f) {
                if !space.outer_charge(&ray(space, f, &v, RayKind::Level)?)?.is_zero() {
                    out.push(v);
                }
            }
            Ok(out)
        }
        // Each residue class is infinite with positive density, so every
        // finite class limit carries positive outer charge in all three fields.
        Realized::Nat(_) => Ok(breakpoints(f)),
    }
}

/// `μ*({h > eps})`.
pub fn superlevel_outer(space: &ChargeSpace, h: &Realized, eps: &Q) -> Result<Q> {
    check_universe(space, h)?;
    match (space, h) {
        (ChargeSpace::Naturals(k), Realized::Nat(g)) => Ok(ChargeSpace::nat_outer_of_core(*k, &g.superlevel_core(eps))),
        _ => space.outer_charge(&ray(space, h, eps, RayKind::OpenUp)?),
    }
}

/// `m(ε) = μ*({h > ε})` for `ε > 0` as a step function: `at[i]` is the value at
/// `points[i]`, `between[i]` the constant value on the open gap left of
/// `points[i]` (the last entry is the gap right of the last point).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OuterProfile {
    pub points: Vec<Q>,
    pub at: Vec<Q>,
    pub between: Vec<Q>,
}

pub fn outer_profile(space: &ChargeSpace, h: &Realized) -> Result<OuterProfile> {
    let points: Vec<Q> = breakpoints(h).into_iter().filter(|b| b.is_positive()).collect();
    let mut at = Vec::with_capacity(points.len());
    for b in &points {
        at.push(superlevel_outer(space, h, b)?);
    }
    let mut reps = Vec::with_capacity(points.len() + 1);
    let mut lo = Q::zero();
    for b in &points {
        reps.push((&lo + b) / int(2));
        lo = b.clone();
    }
    reps.push(lo + Q::one());
    let mut between = Vec::with_capacity(reps.len());
    for r in &reps {
        between.push(superlevel_outer(space, h, r)?);
    }
    Ok(OuterProfile { points, at, between })
}

impl OuterProfile {
    pub fn is_zero(&self) -> bool {
        self.at.iter().chain(&self.between).all(|v| v.is_zero())
    }

    /// `lim_{ε→∞} m(ε)`.
    pub fn tail(&self) -> &Q {
        self.between.last().expect("at least one gap")
    }

    /// `inf { ε > 0 : m(ε) < ε }`; the set is an up-set because `m` is
    /// nonincreasing, so the first piece meeting it determines the infimum.
    pub fn threshold(&self) -> Q {
        let mut lo = Q::zero();
        for i in 0..=self.points.len() {
            let v = &self.between[i];
            let cand = max_q(&lo, v).clone();
            match self.points.get(i) {
                None => return cand,
                Some(hi) => {
                    if cand < *hi {
                        return cand;
                    }
                    if self.at[i] < *hi {
                        return hi.clone();
                    }
                    lo = hi.clone();
                }
            }
        }
        unreachable!("the last gap is unbounded")
    }
}

pub fn is_null_function(space: &ChargeSpace, f: &Realized) -> Result<bool> {
    Ok(outer_profile(space, &f.abs()?)?.is_zero())
}

/// `μ*(|f| > k) → 0` as `k → ∞`.
pub fn is_smooth(space: &ChargeSpace, f: &Realized) -> Result<bool> {
    Ok(outer_profile(space, &f.abs()?)?.tail().is_zero())
}

/// `d(f, g) = inf { ε > 0 : μ*(|f - g| > ε) < ε }`.
pub fn pseudometric(space: &ChargeSpace, f: &Realized, g: &Realized) -> Result<Q> {
    Ok(outer_profile(space, &f.sub(g)?.abs()?)?.threshold())
}

/// Witness for T2-measurability at one `ε`: `A_0` of charge `< ε` and the
/// remaining members of the partition, each with oscillation `< ε`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct T2Report {
    pub ok: bool,
    pub exceptional: Option<Subset>,
    pub exceptional_charge: Option<Q>,
    pub pieces: Vec<Subset>,
}

impl T2Report {
    fn fail() -> Self {
        T2Report { ok: false, exceptional: None, exceptional_charge: None, pieces: vec![] }
    }
}

fn atom_oscillations(values: &[Q], atoms: &[PointSet]) -> Vec<Q> {
    atoms
        .iter()
        .map(|a| {
            let vs: Vec<&Q> = a.points().map(|i| &values[i]).collect();
            let hi = vs.iter().max().unwrap();
            let lo = vs.iter().min().unwrap();
            *hi - *lo
        })
        .collect()
}

pub fn t2_measurability(space: &ChargeSpace, f: &Realized, eps: &Q) -> Result<T2Report> {
    check_universe(space, f)?;
    if !eps.is_positive() {
        return Err(Error::invalid("ε must be positive"));
    }
    match (space, f) {
        (ChargeSpace::Finite(s), Realized::Finite(v)) => {
            let osc = atom_oscillations(v, s.field().atoms());
            let mut a0 = PointSet::EMPTY;
            let mut pieces = Vec::new();
            for (a, o) in s.field().atoms().iter().zip(&osc) {
                if o >= eps {
                    a0 = a0.union(*a);
                } else {
                    pieces.push(Subset::Points(*a));
                }
            }
            let c = s.charge_of(a0)?;
            if c < *eps {
                Ok(T2Report { ok: true, exceptional: Some(Subset::Points(a0)), exceptional_charge: Some(c), pieces })
            } else {
                Ok(T2Report::fail())
            }
        }
        (ChargeSpace::Naturals(k), Realized::Nat(g)) => nat_t2(*k, g, eps),
        _ => unreachable!("universes checked"),
    }
}

fn spread(g: &NatFn) -> Option<Q> {
    let ls: Vec<Q> = g.class_limits().into_iter().map(|l| l.finite().cloned()).collect::<Option<Vec<_>>>()?;
    Some(ls.iter().max().unwrap() - ls.iter().min().unwrap())
}

fn unbounded_density(g: &NatFn) -> Q {
    let u = g.classes().iter().filter(|c| !matches!(c.limit(), Limit::Finite(_))).count();
    Q::new(u.into(), g.period().into())
}

/// Decision part of T2 at `ε` on `N`, without building the partition.
fn nat_t2_ok(kind: NatFieldKind, g: &NatFn, eps: &Q) -> bool {
    match kind {
        NatFieldKind::Cofinite => *eps > int(1) || spread(g).is_some_and(|s| s < *eps),
        _ => unbounded_density(g) < *eps,
    }
}

/// A prefix length past which every bounded class stays within `delta` of
/// its limit.
fn settle_threshold(g: &NatFn, delta: &Q) -> Result<usize> {
    let mut t = g.prefix_len();
    for c in g.classes() {
        if let Limit::Finite(l) = c.limit() {
            let up = c.sub(&super::laurent::Laurent::constant(&l + delta));
            let down = c.sub(&super::laurent::Laurent::constant(&l - delta));
            t = t.max(up.sign_threshold()? as usize).max(down.sign_threshold()? as usize);
        }
    }
    Ok(t)
}

fn nat_t2(kind: NatFieldKind, g: &NatFn, eps: &Q) -> Result<T2Report> {
    if !nat_t2_ok(kind, g, eps) {
        return Ok(T2Report::fail());
    }
    let ok = |a0: EpSet, pieces: Vec<EpSet>| -> Result<T2Report> {
        let c = ChargeSpace::nat_outer_of_core(kind, &a0.core());
        if c >= *eps {
            return Err(Error::internal("T2 witness exceeds its charge budget"));
        }
        Ok(T2Report {
            ok: true,
            exceptional: Some(Subset::Nat(a0)),
            exceptional_charge: Some(c),
            pieces: pieces.into_iter().map(Subset::Nat).collect(),
        })
    };
    match kind {
        NatFieldKind::Cofinite => {
            if *eps > int(1) {
                return ok(EpSet::all(), vec![]);
            }
            let delta = (eps - spread(g).expect("bounded")) / int(3);
            let n = settle_threshold(g, &delta)?;
            let head: Vec<u64> = (1..=n as u64).collect();
            ok(EpSet::finite(&head)?, vec![EpSet::cofinite_complement(&head)?])
        }
        _ => {
            let n = settle_threshold(g, &(eps / int(3)))?;
            let h = g.extended(n)?;
            let q = h.period();
            let unb: Vec<bool> = h.classes().iter().map(|c| !matches!(c.limit(), Limit::Finite(_))).collect();
            let class_set = |r: usize| EpSet::new(vec![false; n], (0..q).map(|i| i == r).collect());
            if kind == NatFieldKind::EventuallyPeriodic {
                let a0 = EpSet::new(vec![true; n], unb.clone())?;
                let pieces = (0..q).filter(|r| !unb[*r]).map(class_set).collect::<Result<Vec<_>>>()?;
                return ok(a0, pieces);
            }
            // Periodic field: absorb the first n points as whole residue
            // classes modulo a period m large enough to keep the budget.
            let budget = eps - unbounded_density(g);
            let mut k = n / q + 1;
            while Q::new(n.into(), (k * q).into()) >= budget {
                k += 1;
            }
            let m = k * q;
            let head = EpSet::new(vec![], (1..=m).map(|i| i <= n).collect())?;
            let a0 = EpSet::new(vec![false; n], unb.clone())?.core().union(&head)?;
            let mut pieces = Vec::new();
            for r in (0..q).filter(|r| !unb[*r]) {
                pieces.push(class_set(r)?.core().diff(&head)?);
            }
            ok(a0, pieces)
        }
    }
}

/// Evaluates `pred` at every critical point, in every gap between them, below
/// the smallest and above the largest; exact when `pred` is constant on the
/// open gaps.
fn for_all_positive(critical: Vec<Q>, mut pred: impl FnMut(&Q) -> Result<bool>) -> Result<bool> {
    let mut pts: Vec<Q> = critical.into_iter().filter(|c| c.is_positive()).collect();
    pts.sort();
    pts.dedup();
    let mut tests = pts.clone();
    let mut lo = Q::zero();
    for p in &pts {
        tests.push((&lo + p) / int(2));
        lo = p.clone();
    }
    tests.push(lo + Q::one());
    for t in &tests {
        if !pred(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// T2-measurability for every `ε > 0`.
pub fn is_t2_measurable(space: &ChargeSpace, f: &Realized) -> Result<bool> {
    check_universe(space, f)?;
    match (space, f) {
        (ChargeSpace::Finite(s), Realized::Finite(v)) => {
            let osc = atom_oscillations(v, s.field().atoms());
            let mut crit = osc.clone();
            for o in &osc {
                let mask = osc.iter().enumerate().filter(|(_, x)| *x >= o).fold(0u64, |m, (i, _)| m | 1 << i);
                crit.push(s.weight_of_mask(mask));
            }
            for_all_positive(crit, |e| Ok(t2_measurability(space, f, e)?.ok))
        }
        (ChargeSpace::Naturals(k), Realized::Nat(g)) => {
            let mut crit = vec![int(1), unbounded_density(g)];
            crit.extend(spread(g));
            for_all_positive(crit, |e| Ok(nat_t2_ok(*k, g, e)))
        }
        _ => unreachable!("universes checked"),
    }
}

/// Evidence for T1-measurability through rays off the countable exceptional
/// set together with smoothness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct T1Certificate {
    pub measurable: bool,
    pub rays_in_completion: bool,
    pub smooth: bool,
    /// The exceptional levels (atom levels of `f`).
    pub exceptional_levels: Vec<Q>,
    pub breakpoints: Vec<Q>,
    /// A level outside the exceptional set whose ray is not in the completion.
    pub failing_level: Option<Q>,
}

pub(crate) fn ray_in_completion(space: &ChargeSpace, f: &Realized, y: &Q) -> Result<bool> {
    match (space, f) {
        (ChargeSpace::Naturals(k), Realized::Nat(g)) => {
            let core = g.superlevel_core(y);
            Ok(match k {
                NatFieldKind::Cofinite => core.is_empty() || core == EpSet::all(),
                _ => true,
            })
        }
        _ => Ok(space.pj_membership(&ray(space, f, y, RayKind::OpenUp)?)?.inside),
    }
}

pub fn is_t1_measurable(space: &ChargeSpace, f: &Realized) -> Result<T1Certificate> {
    check_universe(space, f)?;
    let bps = breakpoints(f);
    let mut failing_level = None;
    for y in gap_representatives(&bps) {
        if !ray_in_completion(space, f, &y)? {
            failing_level = Some(y);
            break;
        }
    }
    let smooth = is_smooth(space, f)?;
    let rays = failing_level.is_none();
    Ok(T1Certificate {
        measurable: rays && smooth,
        rays_in_completion: rays,
        smooth,
        exceptional_levels: atom_levels(space, f)?,
        breakpoints: bps,
        failing_level,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EqualityMethod {
    /// `f - g` is a null function.
    Direct,
    /// Rays of `f` and `g` differ by null sets off the exceptional levels.
    RaySymmetricDifference,
    /// `f·1{f>y} = g·1{g>y}` a.e. off the exceptional levels.
    TruncatedRays,
}

impl EqualityMethod {
    pub const ALL: [EqualityMethod; 3] =
        [EqualityMethod::Direct, EqualityMethod::RaySymmetricDifference, EqualityMethod::TruncatedRays];
}

/// Levels at which the ray conditions are tested: one per gap of the joint
/// breakpoints, plus each breakpoint that is not an exceptional level of `f`.
fn ray_test_levels(space: &ChargeSpace, f: &Realized, g: &Realized) -> Result<Vec<Q>> {
    let mut pts = breakpoints(f);
    pts.extend(breakpoints(g));
    pts.sort();
    pts.dedup();
    let exc = atom_levels(space, f)?;
    let mut out = gap_representatives(&pts);
    out.extend(pts.into_iter().filter(|p| !exc.contains(p)));
    Ok(out)
}

pub fn equal_ae(space: &ChargeSpace, f: &Realized, g: &Realized, method: EqualityMethod) -> Result<bool> {
    check_universe(space, f)?;
    check_universe(space, g)?;
    match method {
        EqualityMethod::Direct => is_null_function(space, &f.sub(g)?),
        EqualityMethod::RaySymmetricDifference => {
            for y in ray_test_levels(space, f, g)? {
                let d = ray(space, f, &y, RayKind::OpenUp)?.symdiff(&ray(space, g, &y, RayKind::OpenUp)?)?;
                if !space.is_null_set(&d)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        EqualityMethod::TruncatedRays => {
            for y in ray_test_levels(space, f, g)? {
                let tf = f.restrict_to(&ray(space, f, &y, RayKind::OpenUp)?)?;
                let tg = g.restrict_to(&ray(space, g, &y, RayKind::OpenUp)?)?;
                if !is_null_function(space, &tf.sub(&tg)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `f <= g` almost everywhere: `(f - g)⁺` is null.
pub fn dominated_ae(space: &ChargeSpace, f: &Realized, g: &Realized) -> Result<bool> {
    is_null_function(space, &f.sub(g)?.pos_part()?)
}

/// `μ*(|f_k - f| > ε)` for each element of a finite prefix of a sequence.
pub fn hazy_trace(space: &ChargeSpace, seq: &[Realized], f: &Realized, eps: &Q) -> Result<Vec<Q>> {
    seq.iter().map(|fk| superlevel_outer(space, &fk.sub(f)?.abs()?, eps)).collect()
}

/// Whether the universe of `f` is finite.
pub fn is_finite_universe(f: &Realized) -> bool {
    matches!(f.universe(), Universe::Finite(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FunctionRep;
    use crate::rational::frac;
    use crate::sets::{Field, FiniteChargeSpace};

    fn nat(kind: NatFieldKind) -> ChargeSpace {
        ChargeSpace::Naturals(kind)
    }

    fn recip() -> Realized {
        FunctionRep::Reciprocal { scale: int(1) }.realize(Universe::Naturals).unwrap()
    }

    fn ident() -> Realized {
        FunctionRep::Linear { scale: int(1) }.realize(Universe::Naturals).unwrap()
    }

    #[test]
    fn reciprocal_on_cofinite() {
        let s = nat(NatFieldKind::Cofinite);
        let f = recip();
        assert!(is_null_function(&s, &f).unwrap());
        assert!(is_t1_measurable(&s, &f).unwrap().measurable);
        assert_eq!(atom_levels(&s, &f).unwrap(), vec![int(0)]);
        let r = t2_measurability(&s, &f, &frac(1, 10)).unwrap();
        assert!(r.ok);
        let a0 = r.exceptional.unwrap();
        assert!(a0.as_nat().unwrap().is_finite());
        assert_eq!(pseudometric(&s, &f, &Realized::constant(Universe::Naturals, int(0))).unwrap(), int(0));
        assert_eq!(ray(&s, &f, &frac(1, 3), RayKind::OpenUp).unwrap(), Subset::Nat(EpSet::finite(&[1, 2]).unwrap()));
    }

    #[test]
    fn identity_is_not_smooth() {
        let s = nat(NatFieldKind::Cofinite);
        assert!(!is_smooth(&s, &ident()).unwrap());
        assert!(!is_t1_measurable(&s, &ident()).unwrap().measurable);
        assert!(!is_t2_measurable(&s, &ident()).unwrap());
        let g = ident().mul(&Realized::indicator(Universe::Naturals, &Subset::Nat(EpSet::finite(&[1, 2, 3]).unwrap())).unwrap()).unwrap();
        assert!(is_smooth(&s, &g).unwrap());
    }

    #[test]
    fn evens_indicator_per_field() {
        let ev = Realized::indicator(Universe::Naturals, &Subset::Nat(EpSet::residue(0, 2).unwrap())).unwrap();
        assert!(!is_t1_measurable(&nat(NatFieldKind::Cofinite), &ev).unwrap().measurable);
        assert!(is_t1_measurable(&nat(NatFieldKind::Periodic), &ev).unwrap().measurable);
        assert!(!is_t2_measurable(&nat(NatFieldKind::Cofinite), &ev).unwrap());
        assert!(is_t2_measurable(&nat(NatFieldKind::Periodic), &ev).unwrap());
        let w = t2_measurability(&nat(NatFieldKind::Periodic), &ev.add(&recip()).unwrap(), &frac(1, 5)).unwrap();
        assert!(w.ok);
    }

    #[test]
    fn finite_decisions() {
        let f = Field::generated(3, &[PointSet::from_points([0, 1])]).unwrap();
        let s = ChargeSpace::Finite(FiniteChargeSpace::new(f, vec![int(1), int(0)]).unwrap());
        let split = Realized::Finite(vec![int(0), int(1), int(5)]);
        assert!(!is_t1_measurable(&s, &split).unwrap().measurable);
        assert!(!is_t2_measurable(&s, &split).unwrap());
        let ok = Realized::Finite(vec![int(2), int(2), int(7)]);
        assert!(is_t1_measurable(&s, &ok).unwrap().measurable);
        assert!(is_t2_measurable(&s, &ok).unwrap());
        let other = Realized::Finite(vec![int(2), int(2), int(-1)]);
        for m in EqualityMethod::ALL {
            assert!(equal_ae(&s, &ok, &other, m).unwrap());
        }
        assert!(dominated_ae(&s, &other, &ok).unwrap());
        assert_eq!(pseudometric(&s, &ok, &Realized::Finite(vec![int(0); 3])).unwrap(), int(1));
    }

    #[test]
    fn pseudometric_of_half_indicator() {
        let f = Field::discrete(2).unwrap();
        let s = ChargeSpace::Finite(FiniteChargeSpace::new(f, vec![frac(1, 4), frac(3, 4)]).unwrap());
        let a = Realized::Finite(vec![int(1), int(0)]);
        let z = Realized::Finite(vec![int(0), int(0)]);
        assert_eq!(pseudometric(&s, &a, &z).unwrap(), frac(1, 4));
        let b = Realized::Finite(vec![frac(1, 10), int(0)]);
        assert_eq!(pseudometric(&s, &b, &z).unwrap(), frac(1, 10));
    }
}
