//! T1 and T2 measurability, smoothness, the pseudometric, and equality a.e.

use chargelab::function::{equal_ae, is_smooth, is_t1_measurable, pseudometric, t2_measurability, EqualityMethod};
use chargelab::rational::{fmt_q, frac, int};
use chargelab::{ChargeSpace, FunctionRep, NatFieldKind, Result};

fn main() -> Result<()> {
    let space = ChargeSpace::Naturals(NatFieldKind::Cofinite);
    let u = space.universe();
    let recip = FunctionRep::Reciprocal { scale: int(1) }.realize(u)?;
    let linear = FunctionRep::Linear { scale: int(1) }.realize(u)?;
    let zero = FunctionRep::Constant(int(0)).realize(u)?;

    let c = is_t1_measurable(&space, &recip)?;
    println!("1/n: measurable {} smooth {}", c.measurable, c.smooth);
    let c = is_t1_measurable(&space, &linear)?;
    println!("n: measurable {} smooth {}", c.measurable, is_smooth(&space, &linear)?);

    let eps = frac(1, 10);
    let t2 = t2_measurability(&space, &recip, &eps)?;
    println!("T2 witness for 1/n at ε = 1/10: ok {}, {} pieces", t2.ok, t2.pieces.len());

    println!("d(1/n, 0) = {}", fmt_q(&pseudometric(&space, &recip, &zero)?));
    for m in EqualityMethod::ALL {
        println!("1/n = 0 a.e. by {m:?}: {}", equal_ae(&space, &recip, &zero, m)?);
    }
    Ok(())
}
