//! Dyadic grids that avoid atom levels and the determining sequences they build.

use chargelab::dyadic::{approximation_error, build_dyadic_sequence, DyadicGrid, DyadicOptions, GridRule};
use chargelab::rational::{fmt_q, frac, int};
use chargelab::{ChargeSpace, Field, FiniteChargeSpace, Realized, Result};

fn main() -> Result<()> {
    let grid = DyadicGrid::new(vec![frac(1, 2), frac(1, 4)], GridRule::LargestDyadic);
    for n in 1..=3 {
        let levels: Vec<String> = grid.levels(n).iter().take(6).map(fmt_q).collect();
        println!("level {n}: first levels {levels:?}, top {}", fmt_q(&grid.top(n)));
    }

    let space = ChargeSpace::Finite(FiniteChargeSpace::new(Field::discrete(4)?, vec![frac(1, 4); 4])?);
    let values = vec![frac(1, 3), int(2), frac(7, 5), int(0)];
    let f = Realized::Finite(values.clone());
    let seq = build_dyadic_sequence(&space, &f, DyadicOptions { depth: 8, ..Default::default() })?;
    for n in [1, 4, 8] {
        let bound = frac(1, 1 << (n - 1));
        println!("n = {n}: max error on the grid range {} < {}", fmt_q(&approximation_error(&seq, &values, n)), fmt_q(&bound));
    }
    println!("term 8: {:?}", seq.term(8)?.values().map(|v| v.iter().map(fmt_q).collect::<Vec<_>>()));
    Ok(())
}
