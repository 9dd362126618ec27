//! Fields on a finite ground set, charges on atoms, the kernel ideal, and the
//! field generated by a subfield together with an ideal.

use chargelab::completion::quotient_representation;
use chargelab::rational::{fmt_q, frac, int};
use chargelab::sets::{extend_field_with_ideal, BooleanIdeal, DEFAULT_EXHAUSTIVE_CAP};
use chargelab::{Field, FiniteChargeSpace, PointSet, Result};

fn main() -> Result<()> {
    let p = |xs: &[usize]| PointSet::from_points(xs.iter().copied());
    let field = Field::from_atoms(5, vec![p(&[0, 1]), p(&[2]), p(&[3]), p(&[4])])?;
    let space = FiniteChargeSpace::new(field.clone(), vec![frac(1, 2), int(0), frac(1, 2), int(0)])?;
    println!("atoms and weights: {}", space.describe());
    println!("charge of {{0,1,3}} = {}", fmt_q(&space.charge_of(p(&[0, 1, 3]))?));
    println!("{{0}} in the field: {}", field.contains(p(&[0])));

    let generated = Field::generated(5, &[p(&[0, 1, 2]), p(&[2, 3])])?;
    println!("field generated by {{0,1,2}} and {{2,3}} has {} atoms", generated.num_atoms());

    let kernel = space.kernel_ideal();
    println!("kernel ideal top: {:?}", kernel.top());
    let coarse = Field::from_atoms(5, vec![p(&[0, 1]), p(&[2, 3, 4])])?;
    let extended = extend_field_with_ideal(&field, &coarse, &kernel)?;
    println!("subfield with the kernel adjoined has atoms {:?}", extended.atoms());
    let ideal = BooleanIdeal { generators: vec![p(&[4])] };
    println!("ideal members: {:?}", ideal.materialize(&field, DEFAULT_EXHAUSTIVE_CAP)?);

    let q = quotient_representation(&space, DEFAULT_EXHAUSTIVE_CAP)?;
    println!("quotient by the kernel: {} classes over {} positive atoms", q.classes.len(), q.positive_atoms.len());
    Ok(())
}
