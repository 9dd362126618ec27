//! Integrals of simple functions, determining-sequence integrals, `L_p`
//! pseudonorms and the order-integrals comparison.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::completion::{ChargeSpace, Subset};
use crate::dyadic::{build_dyadic_sequence, DyadicOptions, GridRule};
use crate::error::{Error, Result};
use crate::function::natfn::NatFn;
use crate::function::laurent::{Laurent, Limit};
use crate::function::{self, breakpoints, check_universe, equal_ae, is_t1_measurable, EqualityMethod, RayKind, Realized, SimpleFunction};
use crate::rational::{nth_root, pow2, RootValue, Q};
use crate::sets::{FiniteChargeSpace, DEFAULT_EXHAUSTIVE_CAP};

pub const DEFAULT_ROOT_BITS: u32 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntegralMethod {
    SimpleDirect,
    DeterminingSequence,
    AeReduction,
}

impl IntegralMethod {
    pub fn name(self) -> &'static str {
        match self {
            IntegralMethod::SimpleDirect => "simple-direct",
            IntegralMethod::DeterminingSequence => "determining-sequence",
            IntegralMethod::AeReduction => "ae-reduction",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntegralStatus {
    Exact,
    /// The value is `∫ f_N` and the limit lies within `error_bound` of it.
    Inconclusive { error_bound: Q },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegralResult {
    pub value: Q,
    pub method: IntegralMethod,
    pub status: IntegralStatus,
    /// `∫|f_n - f_{n+1}|` for `n = 1..depth-1`.
    pub cauchy_trace: Vec<Q>,
    /// The analytic bound `2^{1-n} μ(X) + ∫|f| I_{|f| > y_n}` for each gap.
    pub gap_bounds: Vec<Q>,
}

impl IntegralResult {
    pub fn is_exact(&self) -> bool {
        self.status == IntegralStatus::Exact
    }
}

/// The charge of a piece, through the Peano-Jordan completion when the piece
/// is not itself in the field.
fn piece_charge(space: &ChargeSpace, a: &Subset) -> Result<Q> {
    if space.field_contains(a)? {
        return space.charge(a);
    }
    let r = space.pj_membership(a)?;
    if r.inside {
        Ok(r.outer)
    } else {
        Err(Error::NotInField("a piece of the simple function lies outside the Peano-Jordan completion".into()))
    }
}

/// `Σ c_k μ(A_k)`, using `μ̄` for pieces only in the completion.
pub fn integrate_simple(space: &ChargeSpace, s: &SimpleFunction) -> Result<Q> {
    let mut total = Q::zero();
    for (c, a) in s.pieces() {
        if !matches!((space, a), (ChargeSpace::Finite(_), Subset::Points(_)) | (ChargeSpace::Naturals(_), Subset::Nat(_))) {
            return Err(Error::invalid("piece set lives in a different universe"));
        }
        if c.is_zero() {
            continue;
        }
        total += c * piece_charge(space, a)?;
    }
    Ok(total)
}

/// On `N`: replace each residue class by its limit, verify equality a.e. and
/// integrate the resulting simple function. `None` when some class is
/// unbounded.
fn nat_reduced(space: &ChargeSpace, g: &NatFn) -> Result<Option<Q>> {
    let mut consts = Vec::with_capacity(g.period());
    for l in g.class_limits() {
        match l {
            Limit::Finite(v) => consts.push(Laurent::constant(v)),
            _ => return Ok(None),
        }
    }
    let red = Realized::Nat(NatFn::new(Vec::new(), consts)?);
    if !equal_ae(space, &Realized::Nat(g.clone()), &red, EqualityMethod::Direct)? {
        return Ok(None);
    }
    let s = red.to_simple()?.ok_or_else(|| Error::internal("reduced function is not simple"))?;
    integrate_simple(space, &s).map(Some)
}

/// The integral of a function that is simple over the completion (finite
/// universe) or reducible to one a.e. (on `N`).
fn exact_integral(space: &ChargeSpace, h: &Realized) -> Result<Option<Q>> {
    match h {
        Realized::Finite(_) => {
            let s = h.to_simple()?.expect("finite functions are simple");
            match integrate_simple(space, &s) {
                Ok(v) => Ok(Some(v)),
                Err(Error::NotInField(_)) => Ok(None),
                Err(e) => Err(e),
            }
        }
        Realized::Nat(g) => nat_reduced(space, g),
    }
}

fn simple_in_field(space: &ChargeSpace, f: &Realized) -> Result<Option<SimpleFunction>> {
    let Some(s) = f.to_simple()? else { return Ok(None) };
    for (_, a) in s.pieces() {
        if !space.field_contains(a)? {
            return Ok(None);
        }
    }
    Ok(Some(s))
}

fn tail_integral(space: &ChargeSpace, abs_f: &Realized, y: &Q) -> Result<Option<Q>> {
    let ray = function::ray(space, abs_f, y, RayKind::OpenUp)?;
    exact_integral(space, &abs_f.restrict_to(&ray)?)
}

/// `∫ f dμ`. Simple functions over the field are summed directly; otherwise
/// the function must be T1-measurable and a no-tail determining sequence of
/// the given depth is built, its Cauchy gaps checked against the analytic
/// bound, and the limit extracted exactly when possible.
pub fn integrate(space: &ChargeSpace, f: &Realized, depth: u32) -> Result<IntegralResult> {
    integrate_with(space, f, depth, GridRule::LargestDyadic)
}

pub fn integrate_with(space: &ChargeSpace, f: &Realized, depth: u32, rule: GridRule) -> Result<IntegralResult> {
    check_universe(space, f)?;
    if let Some(s) = simple_in_field(space, f)? {
        return Ok(IntegralResult {
            value: integrate_simple(space, &s)?,
            method: IntegralMethod::SimpleDirect,
            status: IntegralStatus::Exact,
            cauchy_trace: Vec::new(),
            gap_bounds: Vec::new(),
        });
    }
    let cert = is_t1_measurable(space, f)?;
    if !cert.measurable {
        return Err(Error::NotMeasurable(match cert.failing_level {
            Some(y) => format!("the ray above {y} is not Peano-Jordan"),
            None => "the function is not smooth".into(),
        }));
    }
    let abs_f = f.abs()?;
    if let Realized::Nat(g) = &abs_f {
        if !g.is_eventually_bounded() {
            return Err(Error::NotIntegrable("condition 2b fails: the tail integrals do not vanish".into()));
        }
    }
    let seq = build_dyadic_sequence(space, f, DyadicOptions { depth, tail: false, rule })?;
    let terms = seq.terms()?;
    let total = space.total();
    let bound = |n: u32| -> Result<Q> {
        let tail = tail_integral(space, &abs_f, &seq.grid.top(n))?
            .ok_or_else(|| Error::internal("tail integral is not computable"))?;
        Ok(Q::new(BigInt::from(2), pow2(n)) * &total + tail)
    };
    let mut cauchy_trace = Vec::new();
    let mut gap_bounds = Vec::new();
    for (i, w) in terms.windows(2).enumerate() {
        let n = i as u32 + 1;
        let gap = exact_integral(space, &w[0].sub(&w[1])?.abs()?)?
            .ok_or_else(|| Error::internal("sequence term is not simple over the completion"))?;
        let b = bound(n)?;
        if gap > b {
            return Err(Error::internal(format!("Cauchy gap {gap} at index {n} exceeds the bound {b}")));
        }
        cauchy_trace.push(gap);
        gap_bounds.push(b);
    }
    let last = exact_integral(space, terms.last().expect("depth >= 1"))?
        .ok_or_else(|| Error::internal("sequence term is not simple over the completion"))?;
    let last_bound = bound(depth)?;
    let method = match f {
        Realized::Finite(_) => IntegralMethod::DeterminingSequence,
        Realized::Nat(_) => IntegralMethod::AeReduction,
    };
    match exact_integral(space, f)? {
        Some(value) => {
            if (&value - &last).abs() > last_bound {
                return Err(Error::internal("extracted value is inconsistent with the sequence"));
            }
            Ok(IntegralResult { value, method, status: IntegralStatus::Exact, cauchy_trace, gap_bounds })
        }
        None => Ok(IntegralResult {
            value: last,
            method: IntegralMethod::DeterminingSequence,
            status: IntegralStatus::Inconclusive { error_bound: last_bound },
            cauchy_trace,
            gap_bounds,
        }),
    }
}

fn integrable(space: &ChargeSpace, f: &Realized, depth: u32) -> Result<bool> {
    match integrate(space, f, depth) {
        Ok(_) => Ok(true),
        Err(Error::NotMeasurable(_) | Error::NotIntegrable(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `f ∈ L_p`: T1-measurable with `|f|^p` integrable. The pos/neg-part
/// consequence is checked alongside.
pub fn lp_membership(space: &ChargeSpace, f: &Realized, p: u32) -> Result<bool> {
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    check_universe(space, f)?;
    let member = is_t1_measurable(space, f)?.measurable && integrable(space, &f.abs()?.pow(p)?, 4)?;
    if member {
        for part in [f.pos_part()?, f.neg_part()?] {
            if !integrable(space, &part.pow(p)?, 4)? {
                return Err(Error::internal("an L_p function has a part outside L_p"));
            }
        }
    }
    Ok(member)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LpNorm {
    /// `∫|f|^p`.
    pub integral: Q,
    pub norm: RootValue,
}

pub fn lp_pseudonorm(space: &ChargeSpace, f: &Realized, p: u32, bits: u32) -> Result<LpNorm> {
    if !lp_membership(space, f, p)? {
        return Err(Error::NotIntegrable(format!("the function is not in L_{p}")));
    }
    let r = integrate(space, &f.abs()?.pow(p)?, 4)?;
    if !r.is_exact() {
        return Err(Error::Inconclusive("the p-th power integral was not extracted exactly".into()));
    }
    let norm = nth_root(&r.value, p, bits)?;
    Ok(LpNorm { integral: r.value, norm })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderReport {
    /// `μ̄1(A) <= μ̄2(A)` on every tested ray of `f`.
    pub chain_dominated: bool,
    pub integrals_ordered: bool,
    pub integral_1: Q,
    pub integral_2: Q,
    /// Field elements `A` whose `f·I_A` chain is dominated.
    pub variants_checked: usize,
    /// Those variants with `∫ f I_A dμ1 <= ∫ f I_A dμ2`.
    pub variants_ordered: usize,
}

impl OrderReport {
    /// Domination of the chain implies ordered integrals, for `f` and every
    /// dominated variant.
    pub fn implication_holds(&self) -> bool {
        (!self.chain_dominated || self.integrals_ordered) && self.variants_checked == self.variants_ordered
    }
}

/// Positive breakpoints, their midpoints, half the smallest, and a point
/// above the largest.
pub fn order_test_levels(f: &Realized) -> Vec<Q> {
    let b: Vec<Q> = breakpoints(f).into_iter().filter(|y| y.is_positive()).collect();
    let two = Q::from_integer(BigInt::from(2));
    let mut out = vec![Q::zero()];
    if let Some(first) = b.first() {
        out.push(first / &two);
        out.push(b.last().unwrap() + Q::one());
    }
    out.extend(b.windows(2).map(|w| (&w[0] + &w[1]) / &two));
    out.extend(b.iter().cloned());
    out.sort();
    out.dedup();
    out
}

fn pj_charge(space: &ChargeSpace, a: &Subset) -> Result<Q> {
    let r = space.pj_membership(a)?;
    if !r.inside {
        return Err(Error::NotMeasurable("a ray is outside the Peano-Jordan completion".into()));
    }
    Ok(r.outer)
}

fn dominated_on(s1: &ChargeSpace, s2: &ChargeSpace, f: &Realized, levels: &[Q]) -> Result<bool> {
    for y in levels {
        let a = function::ray(s1, f, y, RayKind::OpenUp)?;
        if pj_charge(s1, &a)? > pj_charge(s2, &a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares `∫ f dμ1` and `∫ f dμ2` for a nonnegative `f` against
/// domination of its ray chain, on one finite field carrying two charges.
pub fn order_integrals_check(
    s1: &FiniteChargeSpace,
    s2: &FiniteChargeSpace,
    f: &Realized,
    levels: Option<&[Q]>,
) -> Result<OrderReport> {
    if s1.field() != s2.field() {
        return Err(Error::invalid("both charges must live on the same field"));
    }
    let (c1, c2) = (ChargeSpace::Finite(s1.clone()), ChargeSpace::Finite(s2.clone()));
    check_universe(&c1, f)?;
    if f.values().unwrap().iter().any(|v| v.is_negative()) {
        return Err(Error::invalid("the function must be nonnegative"));
    }
    let own;
    let levels = match levels {
        Some(l) => l,
        None => {
            own = order_test_levels(f);
            &own
        }
    };
    let depth = 4;
    let i1 = integrate(&c1, f, depth)?.value;
    let i2 = integrate(&c2, f, depth)?.value;
    let chain_dominated = dominated_on(&c1, &c2, f, levels)?;
    let mut variants_checked = 0;
    let mut variants_ordered = 0;
    for a in s1.field().elements(DEFAULT_EXHAUSTIVE_CAP)? {
        let fa = f.restrict_to(&Subset::Points(a))?;
        let lv = order_test_levels(&fa);
        if dominated_on(&c1, &c2, &fa, &lv)? {
            variants_checked += 1;
            if integrate(&c1, &fa, depth)?.value <= integrate(&c2, &fa, depth)?.value {
                variants_ordered += 1;
            }
        }
    }
    Ok(OrderReport {
        chain_dominated,
        integrals_ordered: i1 <= i2,
        integral_1: i1,
        integral_2: i2,
        variants_checked,
        variants_ordered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::Universe;
    use crate::function::FunctionRep;
    use crate::periodic::{EpSet, NatFieldKind};
    use crate::rational::{frac, int};
    use crate::sets::{Field, PointSet};

    fn space(weights: &[Q], atoms: Vec<PointSet>, n: usize) -> ChargeSpace {
        ChargeSpace::Finite(FiniteChargeSpace::new(Field::from_atoms(n, atoms).unwrap(), weights.to_vec()).unwrap())
    }

    #[test]
    fn simple_sums() {
        let s = space(&[frac(1, 4), frac(1, 2), frac(1, 4)], vec![PointSet(1), PointSet(2), PointSet(4)], 3);
        let f = SimpleFunction::new(vec![(int(2), Subset::Points(PointSet(1))), (int(3), Subset::Points(PointSet(2)))]).unwrap();
        assert_eq!(integrate_simple(&s, &f).unwrap(), int(2));
        assert_eq!(integrate_simple(&s, &SimpleFunction::new(vec![]).unwrap()).unwrap(), int(0));
    }

    #[test]
    fn naturals_examples() {
        let cof = ChargeSpace::Naturals(NatFieldKind::Cofinite);
        let r = FunctionRep::Reciprocal { scale: int(1) }.realize(Universe::Naturals).unwrap();
        let res = integrate(&cof, &r, 12).unwrap();
        assert_eq!(res.value, int(0));
        assert_eq!(res.method, IntegralMethod::AeReduction);
        assert_eq!(res.cauchy_trace.len(), 11);
        let ep = ChargeSpace::Naturals(NatFieldKind::EventuallyPeriodic);
        let ev = Realized::indicator(Universe::Naturals, &Subset::Nat(EpSet::residue(0, 2).unwrap())).unwrap();
        let res = integrate(&ep, &ev, 12).unwrap();
        assert_eq!((res.value, res.method), (frac(1, 2), IntegralMethod::SimpleDirect));
        let id = FunctionRep::Linear { scale: int(1) }.realize(Universe::Naturals).unwrap();
        assert!(matches!(integrate(&cof, &id, 12), Err(Error::NotMeasurable(_))));
        assert!(!lp_membership(&cof, &id, 1).unwrap());
        assert!(lp_membership(&cof, &r, 1).unwrap());
    }

    #[test]
    fn completion_pieces() {
        // Atom {0,1} has zero weight so f = 1_{0} is integrable with integral 0.
        let s = space(&[int(0), int(1)], vec![PointSet(3), PointSet(4)], 3);
        let f = Realized::Finite(vec![int(5), int(0), frac(1, 3)]);
        let r = integrate(&s, &f, 12).unwrap();
        assert_eq!((r.value, r.method), (frac(1, 3), IntegralMethod::DeterminingSequence));
        let g = Realized::Finite(vec![int(5), int(0), frac(1, 3)]);
        let other = space(&[int(1), int(1)], vec![PointSet(3), PointSet(4)], 3);
        assert!(matches!(integrate(&other, &g, 12), Err(Error::NotMeasurable(_))));
    }

    #[test]
    fn norms() {
        let s = space(&[frac(1, 4), frac(3, 4)], vec![PointSet(1), PointSet(2)], 2);
        let ia = Realized::Finite(vec![int(1), int(0)]);
        assert_eq!(lp_pseudonorm(&s, &ia, 1, 64).unwrap().norm, RootValue::Exact(frac(1, 4)));
        assert_eq!(lp_pseudonorm(&s, &ia, 2, 64).unwrap().norm, RootValue::Exact(frac(1, 2)));
        let z = Realized::Finite(vec![int(0), int(0)]);
        assert_eq!(lp_pseudonorm(&s, &z, 3, 64).unwrap().norm, RootValue::Exact(int(0)));
    }

    #[test]
    fn order_examples() {
        let d = Field::discrete(3).unwrap();
        let m1 = FiniteChargeSpace::new(d.clone(), vec![frac(1, 2), frac(1, 4), frac(1, 4)]).unwrap();
        let m2 = FiniteChargeSpace::new(d, vec![frac(1, 4), frac(1, 2), frac(1, 2)]).unwrap();
        // Monotone f: rays {2}, {1,2}, X; m1 <= m2 on each though not atomwise.
        let f = Realized::Finite(vec![int(1), int(2), int(3)]);
        let r = order_integrals_check(&m1, &m2, &f, None).unwrap();
        assert!(r.chain_dominated && r.integrals_ordered && r.implication_holds());
        let same = order_integrals_check(&m1, &m1, &f, None).unwrap();
        assert!(same.chain_dominated && same.integrals_ordered);
    }
}
