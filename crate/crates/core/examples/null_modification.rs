//! Chains and functions, null modification into a subfield, and the check
//! comparing L_p spaces and quotient classes of a subfield.

use chargelab::chain::{chain_to_function, completion_isomorphism_check, default_levels, function_to_chain, null_modification, null_modify_function};
use chargelab::rational::{fmt_q, frac, int};
use chargelab::{ChargeSpace, Field, FiniteChargeSpace, PointSet, Realized, Result};

fn main() -> Result<()> {
    let p = |xs: &[usize]| PointSet::from_points(xs.iter().copied());
    let space = FiniteChargeSpace::new(Field::discrete(4)?, vec![frac(1, 2), int(0), frac(1, 2), int(0)])?;
    let cs = ChargeSpace::Finite(space.clone());

    let f = Realized::Finite(vec![int(2), int(1), frac(1, 2), int(0)]);
    let chain = function_to_chain(&cs, &f, &default_levels(&f))?;
    for (l, s) in chain.entries() {
        println!("from level {}: {s:?}", fmt_q(l));
    }
    println!("chain back to the function: {}", chain_to_function(cs.universe(), &chain)? == f);

    let sub = Field::from_atoms(4, vec![p(&[0, 1]), p(&[2, 3])])?;
    let map = null_modification(&space, &sub, &[p(&[0, 1, 2]), p(&[0]), p(&[0, 1])])?;
    for (a, b) in &map.pairs {
        println!("{a:?} -> {b:?}");
    }
    println!("properties hold: {}", map.verified());

    let r = null_modify_function(&space, &sub, &Realized::Finite(vec![int(1), int(0), int(3), int(3)]))?;
    let h: Vec<String> = r.h.values().unwrap_or_default().iter().map(fmt_q).collect();
    println!("modified function {h:?}: equal a.e. {}, measurable over the subfield {}", r.equal_ae, r.sub_measurable);

    let iso = completion_isomorphism_check(&space, &sub, 1)?;
    println!("L_1 equal {}, null sets inside the subfield completion {}, classes isomorphic {}", iso.lp_equal, iso.null_in_sub_completion, iso.classes_isomorphic);
    Ok(())
}
