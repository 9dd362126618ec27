//! Determining sequences built from dyadic grids that avoid the atom levels.
//!
//! At depth `n` the grid has one level `y_{n,j}` in each cell
//! `((j-1)/2^n, j/2^n]`, `j = 1..=n·2^n`, never an atom level of `|f|`, and a
//! level chosen at depth `n-1` is kept whenever it falls in the cell. Levels
//! are computed on demand, so deep grids are never materialised unless asked.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::completion::ChargeSpace;
use crate::error::{Error, Result};
use crate::function::laurent::{Laurent, Limit};
use crate::function::natfn::NatFn;
use crate::function::measure::ray_in_completion;
use crate::function::{atom_levels, breakpoints, check_universe, is_smooth, pseudometric, Realized};
use crate::rational::{ceil_int, dyadic, pow2, Q};

pub const DEFAULT_DEPTH: u32 = 12;
pub const MAX_DEPTH: u32 = 40;

/// How a fresh level is picked inside a cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum GridRule {
    /// The largest dyadic of denominator `2^(n+1)` in the cell avoiding the
    /// atom levels, else the midpoint perturbed by `±2^-(n+2+t)`, `t` minimal.
    #[default]
    LargestDyadic,
    /// The midpoint first, then the right endpoint, then perturbations below
    /// the midpoint before those above.
    MidpointFirst,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyadicGrid {
    avoid: Vec<Q>,
    rule: GridRule,
}

fn k_of(n: u32) -> u64 {
    (n as u64) << n
}

impl DyadicGrid {
    /// `avoid` is `{|y| : y an atom level}`.
    pub fn new(mut avoid: Vec<Q>, rule: GridRule) -> Self {
        avoid.sort();
        avoid.dedup();
        DyadicGrid { avoid, rule }
    }

    pub fn avoid(&self) -> &[Q] {
        &self.avoid
    }

    /// Number of levels at depth `n`.
    pub fn len(n: u32) -> u64 {
        k_of(n)
    }

    pub fn cell(n: u32, j: u64) -> (Q, Q) {
        (dyadic(&BigInt::from(j - 1), n), dyadic(&BigInt::from(j), n))
    }

    fn in_cell(n: u32, j: u64, y: &Q) -> bool {
        let (lo, hi) = DyadicGrid::cell(n, j);
        *y > lo && *y <= hi
    }

    fn allowed(&self, y: &Q) -> bool {
        self.avoid.binary_search(y).is_err()
    }

    fn fresh(&self, n: u32, j: u64) -> Q {
        let right = dyadic(&BigInt::from(j), n);
        let mid = dyadic(&BigInt::from(2 * j - 1), n + 1);
        let first = match self.rule {
            GridRule::LargestDyadic => [right, mid.clone()],
            GridRule::MidpointFirst => [mid.clone(), right],
        };
        if let Some(y) = first.into_iter().find(|y| self.allowed(y)) {
            return y;
        }
        let mut t = 0u32;
        loop {
            let d = Q::new(BigInt::one(), pow2(n + 2 + t));
            let pair = match self.rule {
                GridRule::LargestDyadic => [&mid + &d, &mid - &d],
                GridRule::MidpointFirst => [&mid - &d, &mid + &d],
            };
            if let Some(y) = pair.into_iter().find(|y| self.allowed(y)) {
                return y;
            }
            t += 1;
        }
    }

    /// `y_{n,j}` for `1 <= j <= n·2^n`.
    pub fn level(&self, n: u32, j: u64) -> Q {
        debug_assert!(n >= 1 && j >= 1 && j <= k_of(n));
        if n > 1 {
            let pj = j.div_ceil(2);
            if pj <= k_of(n - 1) {
                let y = self.level(n - 1, pj);
                if DyadicGrid::in_cell(n, j, &y) {
                    return y;
                }
            }
        }
        self.fresh(n, j)
    }

    /// `y_n = y_{n, n·2^n}`.
    pub fn top(&self, n: u32) -> Q {
        self.level(n, k_of(n))
    }

    /// All levels at depth `n`.
    pub fn levels(&self, n: u32) -> Vec<Q> {
        (1..=k_of(n)).map(|j| self.level(n, j)).collect()
    }

    /// Index of the cell containing `v > 0` at depth `n`.
    fn cell_of(n: u32, v: &Q) -> u64 {
        ceil_int(&(v * Q::from_integer(pow2(n)))).to_u64().unwrap_or(u64::MAX)
    }

    /// The value of the depth-`n` approximant at a point where the
    /// nonnegative function equals `v`.
    pub fn floor(&self, n: u32, v: &Q, tail: bool) -> Q {
        if !v.is_positive() {
            return Q::zero();
        }
        let top = self.top(n);
        if *v > top {
            return if tail { top } else { Q::zero() };
        }
        let c = DyadicGrid::cell_of(n, v);
        let yc = self.level(n, c);
        if *v > yc {
            yc
        } else if c >= 2 {
            self.level(n, c - 1)
        } else {
            Q::zero()
        }
    }

    /// The open interval of values sharing the approximant value of a limit
    /// `l`, which is never a grid level: `(lower, upper)` with `None` meaning
    /// unbounded above; the lower end is included only when it is zero.
    fn band(&self, n: u32, l: &Limit) -> (Q, Option<Q>) {
        let top = self.top(n);
        match l {
            Limit::PosInf => (top, None),
            Limit::NegInf => unreachable!("nonnegative part"),
            Limit::Finite(v) if *v > top => (top, None),
            Limit::Finite(v) if !v.is_positive() => (Q::zero(), Some(self.level(n, 1))),
            Limit::Finite(v) => {
                let c = DyadicGrid::cell_of(n, v);
                let yc = self.level(n, c);
                if *v > yc {
                    (yc, Some(self.level(n, c + 1)))
                } else if c >= 2 {
                    (self.level(n, c - 1), Some(yc))
                } else {
                    (Q::zero(), Some(yc))
                }
            }
        }
    }
}

/// Options for [`build_dyadic_sequence`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DyadicOptions {
    pub depth: u32,
    /// Keep the tail term `y_n·1{f⁺ > y_n}`; the alternative form drops it.
    pub tail: bool,
    pub rule: GridRule,
}

impl Default for DyadicOptions {
    fn default() -> Self {
        DyadicOptions { depth: DEFAULT_DEPTH, tail: true, rule: GridRule::LargestDyadic }
    }
}

/// `f_n = f⁺_n - f⁻_n` for `n = 1..=depth`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ApproxSequence {
    pub options: DyadicOptions,
    pub grid: DyadicGrid,
    pub plus: Vec<Realized>,
    pub minus: Vec<Realized>,
}

impl ApproxSequence {
    pub fn depth(&self) -> u32 {
        self.options.depth
    }

    /// The `n`-th term, `1 <= n <= depth`.
    pub fn term(&self, n: u32) -> Result<Realized> {
        let i = n as usize - 1;
        self.plus[i].sub(&self.minus[i])
    }

    pub fn terms(&self) -> Result<Vec<Realized>> {
        (1..=self.depth()).map(|n| self.term(n)).collect()
    }
}

/// Whether some grid level at depth `<= depth` lies in the open interval.
fn grid_meets(grid: &DyadicGrid, depth: u32, lo: &Q, hi: Option<&Q>) -> bool {
    for n in 1..=depth {
        let k = k_of(n);
        let first = if lo.is_negative() { 1 } else { DyadicGrid::cell_of(n, lo).max(1) };
        let last = match hi {
            Some(h) if h.is_positive() => DyadicGrid::cell_of(n, h).min(k),
            Some(_) => 0,
            None => k,
        };
        if first > last {
            continue;
        }
        if last - first >= 2 {
            return true;
        }
        for j in first..=last {
            let y = grid.level(n, j);
            if y > *lo && hi.is_none_or(|h| y < *h) {
                return true;
            }
        }
    }
    false
}

fn grid_hits(grid: &DyadicGrid, depth: u32, b: &Q) -> bool {
    b.is_positive()
        && (1..=depth).any(|n| {
            let c = DyadicGrid::cell_of(n, b);
            c <= k_of(n) && grid.level(n, c) == *b
        })
}

/// Every ray `{part > y}` at a grid level must lie in the Peano-Jordan
/// completion. Rays only change at breakpoints, so one test per gap that the
/// grid meets (and per breakpoint that is itself a grid level) is exhaustive.
fn check_grid_rays(space: &ChargeSpace, part: &Realized, grid: &DyadicGrid, depth: u32) -> Result<()> {
    let bps: Vec<Q> = breakpoints(part).into_iter().filter(|b| b.is_positive()).collect();
    let mut lo = Q::zero();
    for i in 0..=bps.len() {
        let hi = bps.get(i);
        let rep = match hi {
            Some(h) => (&lo + h) / Q::from_integer(BigInt::from(2)),
            None => &lo + Q::one(),
        };
        if grid_meets(grid, depth, &lo, hi) && !ray_in_completion(space, part, &rep)? {
            return Err(Error::NotMeasurable(format!("the ray above grid levels near {rep} is not Peano-Jordan")));
        }
        if let Some(h) = hi {
            lo = h.clone();
        }
    }
    for b in &bps {
        if grid_hits(grid, depth, b) && !ray_in_completion(space, part, b)? {
            return Err(Error::NotMeasurable(format!("the ray above grid level {b} is not Peano-Jordan")));
        }
    }
    Ok(())
}

fn nat_term(grid: &DyadicGrid, g: &NatFn, n: u32, tail: bool) -> Result<NatFn> {
    let mut t = g.prefix_len();
    let mut targets = Vec::with_capacity(g.period());
    for c in g.classes() {
        let l = c.limit();
        let (lo, hi) = grid.band(n, &l);
        if lo.is_positive() {
            t = t.max(c.sub(&Laurent::constant(lo.clone())).sign_threshold()? as usize);
        }
        if let Some(h) = &hi {
            t = t.max(c.sub(&Laurent::constant(h.clone())).sign_threshold()? as usize);
        }
        let rep = match (&l, &hi) {
            (Limit::Finite(v), _) => v.clone(),
            (_, _) => &lo + Q::one(),
        };
        targets.push(grid.floor(n, &rep, tail));
    }
    let h = g.extended(t)?;
    let shift = t - g.prefix_len();
    let q = g.period();
    let prefix = h.prefix().iter().map(|v| grid.floor(n, v, tail)).collect();
    let classes = (0..q).map(|i| Laurent::constant(targets[(i + shift) % q].clone())).collect();
    NatFn::new(prefix, classes)
}

fn term_of(grid: &DyadicGrid, part: &Realized, n: u32, tail: bool) -> Result<Realized> {
    Ok(match part {
        Realized::Finite(v) => Realized::Finite(v.iter().map(|x| grid.floor(n, x, tail)).collect()),
        Realized::Nat(g) => Realized::Nat(nat_term(grid, g, n, tail)?),
    })
}

/// Builds the determining sequence of a T1-measurable function. Fails when a
/// grid ray lies outside the Peano-Jordan completion or the function is not
/// smooth, which are exactly the obstructions to the construction.
pub fn build_dyadic_sequence(space: &ChargeSpace, f: &Realized, options: DyadicOptions) -> Result<ApproxSequence> {
    check_universe(space, f)?;
    if options.depth == 0 || options.depth > MAX_DEPTH {
        return Err(Error::invalid(format!("depth must be in 1..={MAX_DEPTH}")));
    }
    let avoid = atom_levels(space, f)?.into_iter().map(|y| if y.is_negative() { -y } else { y }).collect();
    let grid = DyadicGrid::new(avoid, options.rule);
    let (fp, fm) = (f.pos_part()?, f.neg_part()?);
    check_grid_rays(space, &fp, &grid, options.depth)?;
    check_grid_rays(space, &fm, &grid, options.depth)?;
    if !is_smooth(space, f)? {
        return Err(Error::NotMeasurable("the function is not smooth, so the tails do not vanish".into()));
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for n in 1..=options.depth {
        plus.push(term_of(&grid, &fp, n, options.tail)?);
        minus.push(term_of(&grid, &fm, n, options.tail)?);
    }
    Ok(ApproxSequence { options, grid, plus, minus })
}

/// `max |f⁺_n - f⁺|` over `{f⁺ <= y_n}` on a finite universe.
pub fn approximation_error(seq: &ApproxSequence, f_plus: &[Q], n: u32) -> Q {
    let top = seq.grid.top(n);
    let approx = seq.plus[n as usize - 1].values().expect("finite universe");
    f_plus
        .iter()
        .zip(approx)
        .filter(|(v, _)| **v <= top)
        .map(|(v, a)| v - a)
        .max()
        .unwrap_or_else(Q::zero)
}

/// A simple function within pseudometric distance `eps` of a T1-measurable
/// `f`, taken from its determining sequence.
pub fn simple_approximant(space: &ChargeSpace, f: &Realized, eps: &Q) -> Result<Realized> {
    let seq = build_dyadic_sequence(space, f, DyadicOptions { depth: MAX_DEPTH.min(24), ..Default::default() })?;
    for n in 1..=seq.depth() {
        let t = seq.term(n)?;
        if pseudometric(space, &t, f)? < *eps {
            return Ok(t);
        }
    }
    Err(Error::Inconclusive(format!("no approximant within {eps} up to depth {}", seq.depth())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::Universe;
    use crate::function::FunctionRep;
    use crate::periodic::NatFieldKind;
    use crate::rational::{frac, int};
    use crate::sets::{Field, FiniteChargeSpace};

    #[test]
    fn grid_levels_nest_and_avoid() {
        let g = DyadicGrid::new(vec![frac(1, 2), frac(1, 4), frac(3, 8)], GridRule::LargestDyadic);
        for n in 1..=5 {
            let ls = g.levels(n);
            for (j, y) in ls.iter().enumerate() {
                assert!(DyadicGrid::in_cell(n, j as u64 + 1, y));
                assert!(g.allowed(y));
            }
            if n < 5 {
                let next = g.levels(n + 1);
                assert!(ls.iter().all(|y| next.contains(y)));
            }
        }
        assert_eq!(g.level(1, 1), frac(1, 8));
    }

    #[test]
    fn finite_sequence_bound() {
        let s = ChargeSpace::Finite(FiniteChargeSpace::new(Field::discrete(3).unwrap(), vec![int(1), int(1), int(1)]).unwrap());
        let f = Realized::Finite(vec![frac(1, 3), frac(5, 2), frac(-7, 5)]);
        let seq = build_dyadic_sequence(&s, &f, DyadicOptions::default()).unwrap();
        let fp: Vec<Q> = f.pos_part().unwrap().values().unwrap().to_vec();
        for n in 1..=12 {
            assert!(approximation_error(&seq, &fp, n) < Q::new(BigInt::from(2), pow2(n)));
        }
    }

    #[test]
    fn nat_sequence_for_reciprocal() {
        let s = ChargeSpace::Naturals(NatFieldKind::Cofinite);
        let f = FunctionRep::Reciprocal { scale: int(1) }.realize(Universe::Naturals).unwrap();
        let seq = build_dyadic_sequence(&s, &f, DyadicOptions { depth: 6, ..Default::default() }).unwrap();
        let t = seq.term(6).unwrap();
        for m in 1..200u64 {
            let (a, v) = (t.eval(m), f.eval(m));
            assert!(a <= v && &v - &a < frac(1, 32));
        }
        let r = t.to_simple().unwrap().unwrap();
        assert!(r.pieces().len() >= 2);
    }

    #[test]
    fn rejects_split_atoms() {
        let f = Field::generated(2, &[]).unwrap();
        let s = ChargeSpace::Finite(FiniteChargeSpace::new(f, vec![int(1)]).unwrap());
        let g = Realized::Finite(vec![int(0), int(1)]);
        assert!(matches!(build_dyadic_sequence(&s, &g, DyadicOptions::default()), Err(Error::NotMeasurable(_))));
    }
}
