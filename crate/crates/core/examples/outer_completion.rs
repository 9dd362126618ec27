//! Outer and inner charge, Peano-Jordan membership, and the two completions.

use chargelab::rational::{fmt_q, frac, int};
use chargelab::{ChargeSpace, EpSet, Field, FiniteChargeSpace, NatFieldKind, PointSet, Result, Subset};

fn main() -> Result<()> {
    let p = |xs: &[usize]| Subset::Points(PointSet::from_points(xs.iter().copied()));
    let space = ChargeSpace::Finite(FiniteChargeSpace::new(
        Field::from_atoms(5, vec![PointSet::from_points([0, 1]), PointSet::from_points([2]), PointSet::from_points([3, 4])])?,
        vec![frac(1, 2), frac(1, 2), int(0)],
    )?);
    for a in [p(&[0]), p(&[3]), p(&[0, 1, 3]), p(&[0, 2, 4])] {
        let r = space.pj_membership(&a)?;
        println!("{a:?}: inner {} outer {} Peano-Jordan {}", fmt_q(&r.inner), fmt_q(&r.outer), r.inside);
    }
    println!("complete: {}, Peano-Jordan complete: {}", space.is_complete(), space.is_pj_complete());
    let done = space.complete_space();
    println!("completion by null sets is complete: {}", done.is_complete());
    let pj = space.pj_completion();
    println!("Peano-Jordan completion is idempotent: {}", pj.pj_completion() == pj);

    let nat = ChargeSpace::Naturals(NatFieldKind::Cofinite);
    let evens = Subset::Nat(EpSet::residue(0, 2)?);
    let r = nat.pj_membership(&evens)?;
    println!("evens in the cofinite field: inner {} outer {}", fmt_q(&r.inner), fmt_q(&r.outer));
    let periodic = ChargeSpace::Naturals(NatFieldKind::Periodic);
    let seven = Subset::Nat(EpSet::finite(&[7])?);
    println!("{{7}} in the periodic field: outer {}, null {}", fmt_q(&periodic.outer_charge(&seven)?), periodic.is_null_set(&seven)?);
    Ok(())
}
