//! Eventually periodic subsets of N, the three fields on N, and density.

use chargelab::rational::fmt_q;
use chargelab::{EpSet, NatFieldKind, Result};

fn main() -> Result<()> {
    let evens = EpSet::residue(0, 2)?;
    let thirds = EpSet::from_bits("", "001")?;
    let odd_start = EpSet::from_bits("1", "011")?;
    let small = EpSet::finite(&[1, 2, 3])?;
    for (name, a) in [("evens", &evens), ("multiples of 3", &thirds), ("1 then 011", &odd_start), ("{1,2,3}", &small)] {
        println!("{name}: preperiod {:?} period {:?} density {}", a.preperiod_str(), a.period_str(), fmt_q(&a.density()));
    }
    let both = evens.inter(&thirds)?;
    println!("evens ∩ thirds: first elements {:?}, density {}", both.elements_upto(30), fmt_q(&both.density()));
    println!("evens ∪ {{1}}: core period {:?}", evens.union(&EpSet::finite(&[1])?)?.core().period_str());
    for k in [NatFieldKind::Cofinite, NatFieldKind::Periodic, NatFieldKind::EventuallyPeriodic] {
        println!("{} field: contains evens {}, contains {{1,2,3}} {}", k.name(), k.contains(&evens), k.contains(&small));
    }
    println!("charge of {{1,2,3}} in the cofinite field: {}", fmt_q(&NatFieldKind::Cofinite.charge(&small)?));
    Ok(())
}
