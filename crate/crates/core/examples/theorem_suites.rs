//! Seeded theorem suites checked against brute-force oracles.

use chargelab::oracle::{registry, run_theorem_suite, write_repros, InstanceSpec};
use chargelab::Result;

fn main() -> Result<()> {
    let spec = InstanceSpec { instances: 100, seed: 7, ..Default::default() };
    for t in registry() {
        let spec = if t.is_enumerated() { InstanceSpec { max_points: 4, ..spec.clone() } } else { spec.clone() };
        let r = run_theorem_suite(t.id, &spec)?;
        println!("{:<30} {:>5} checked {:>3} skipped {} failures", t.id, r.checked, r.skipped, r.failures);
        if r.failures > 0 {
            for path in write_repros(&r, &std::env::temp_dir().join("chargelab-repros"))? {
                println!("  repro: {path}");
            }
        }
    }
    Ok(())
}
