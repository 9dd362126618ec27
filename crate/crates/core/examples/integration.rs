//! Integrals, L_p pseudonorms, and the order of integrals under chain domination.

use chargelab::integration::{integrate, lp_pseudonorm, order_integrals_check, DEFAULT_ROOT_BITS};
use chargelab::rational::{fmt_q, frac, int};
use chargelab::{ChargeSpace, EpSet, Field, FiniteChargeSpace, FunctionRep, NatFieldKind, Realized, Result, Subset};

fn main() -> Result<()> {
    let cofinite = ChargeSpace::Naturals(NatFieldKind::Cofinite);
    let recip = FunctionRep::Reciprocal { scale: int(1) }.realize(cofinite.universe())?;
    let r = integrate(&cofinite, &recip, 12)?;
    println!("∫ 1/n = {} by {}, exact {}", fmt_q(&r.value), r.method.name(), r.is_exact());

    let periodic = ChargeSpace::Naturals(NatFieldKind::Periodic);
    let evens = FunctionRep::Indicator(Subset::Nat(EpSet::residue(0, 2)?)).realize(periodic.universe())?;
    println!("∫ I_evens = {}", fmt_q(&integrate(&periodic, &evens, 12)?.value));
    let n = lp_pseudonorm(&periodic, &evens, 2, DEFAULT_ROOT_BITS)?;
    println!("‖I_evens‖_2: ∫|f|^2 = {}, enclosure [{}, {}]", fmt_q(&n.integral), fmt_q(n.norm.lower()), fmt_q(n.norm.upper()));

    let s1 = FiniteChargeSpace::new(Field::discrete(3)?, vec![frac(1, 4), frac(1, 4), int(0)])?;
    let s2 = FiniteChargeSpace::new(Field::discrete(3)?, vec![frac(1, 4), frac(1, 2), frac(1, 4)])?;
    let f = Realized::Finite(vec![int(1), int(3), int(2)]);
    let o = order_integrals_check(&s1, &s2, &f, None)?;
    println!(
        "chain dominated {}: ∫f dμ1 = {} <= ∫f dμ2 = {}, {} of {} f·I_A variants ordered",
        o.chain_dominated,
        fmt_q(&o.integral_1),
        fmt_q(&o.integral_2),
        o.variants_ordered,
        o.variants_checked
    );
    Ok(())
}
