//! One pass/fail line per acceptance criterion. Every criterion is exact:
//! the only numeric thresholds are instance counts and the runtime budget.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use chargelab::chain::completion_isomorphism_check;
use chargelab::function::is_t1_measurable;
use chargelab::oracle::{run_theorem_suite, write_repros, InstanceSpec, SuiteReport};
use chargelab::rational::Q;
use chargelab::{ChargeSpace, Field, FiniteChargeSpace, PointSet, Realized};

const SEED: u64 = 20261014;
const RANDOM_INSTANCES: usize = 1000;
const POINTS: usize = 6;
const DENOMINATOR: u32 = 12;
const NULLMOD_INSTANCES: usize = 500;
const NULLMOD_POINTS: usize = 8;
const ORDER_PAIRS: usize = 500;
const FIELDPLUSNULL_POINTS: usize = 4;
const FIELDPLUSNULL_BUDGET: Duration = Duration::from_secs(60);
const ISOMORPHISM_POINTS: usize = 5;

fn repro_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance-repros")
}

fn suite(id: &str, max_points: usize, instances: usize) -> Result<SuiteReport, String> {
    let spec = InstanceSpec { max_points, charge_denominator_bound: DENOMINATOR, seed: SEED, instances, ..Default::default() };
    let r = run_theorem_suite(id, &spec).map_err(|e| format!("{id}: {e}"))?;
    if r.failures > 0 {
        let paths = write_repros(&r, &repro_dir()).map_err(|e| e.to_string())?;
        return Err(format!("{id}: {} failures, first: {}; repros {paths:?}", r.failures, r.counterexamples[0].message));
    }
    Ok(r)
}

fn at_least(r: &SuiteReport, n: usize) -> Result<String, String> {
    if r.checked < n {
        return Err(format!("{}: only {} instances checked, {} required", r.theorem, r.checked, n));
    }
    Ok(format!("{}: {} checked, 0 failures", r.theorem, r.checked))
}

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let r = suite("fieldplusnull", FIELDPLUSNULL_POINTS, 0)?;
    let took = start.elapsed();
    if took >= FIELDPLUSNULL_BUDGET {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} (field, ideal) pairs identical, {took:.2?}", r.checked))
}

fn criterion_2() -> Result<String, String> {
    at_least(&suite("t1-equivalence", POINTS, RANDOM_INSTANCES)?, RANDOM_INSTANCES)
}

fn criterion_3() -> Result<String, String> {
    at_least(&suite("dyadic-bound", POINTS, RANDOM_INSTANCES)?, RANDOM_INSTANCES)
}

fn criterion_4() -> Result<String, String> {
    at_least(&suite("integration-laws", POINTS, RANDOM_INSTANCES)?, RANDOM_INSTANCES)
}

fn criterion_5() -> Result<String, String> {
    at_least(&suite("equality-ae-characterisation", POINTS, RANDOM_INSTANCES)?, RANDOM_INSTANCES)
}

fn criterion_6() -> Result<String, String> {
    let a = at_least(&suite("outer-charge-oracle", POINTS, RANDOM_INSTANCES)?, RANDOM_INSTANCES)?;
    let b = at_least(&suite("periodic-cover-search", POINTS, RANDOM_INSTANCES)?, RANDOM_INSTANCES)?;
    Ok(format!("{a}; {b}"))
}

fn criterion_7() -> Result<String, String> {
    at_least(&suite("null-modification", NULLMOD_POINTS, NULLMOD_INSTANCES)?, NULLMOD_INSTANCES)
}

fn criterion_8() -> Result<String, String> {
    let a = at_least(&suite("completion-invariance", POINTS, RANDOM_INSTANCES)?, RANDOM_INSTANCES)?;
    let b = at_least(&suite("pj-invariance", POINTS, RANDOM_INSTANCES)?, RANDOM_INSTANCES)?;
    Ok(format!("{a}; {b}"))
}

fn criterion_9() -> Result<String, String> {
    at_least(&suite("order-integrals", POINTS, 2 * ORDER_PAIRS)?, ORDER_PAIRS)
}

/// A ∈ sub, a null B′ ⊆ Aᶜ outside the subfield's completion, B = A ∪ B′.
fn indicator_counterexample() -> Result<String, String> {
    let e = |e: chargelab::Error| e.to_string();
    let half = Q::new(1.into(), 2.into());
    let zero = Q::from_integer(0.into());
    let s = FiniteChargeSpace::new(Field::discrete(4).map_err(e)?, vec![half.clone(), zero.clone(), half, zero]).map_err(e)?;
    let a = PointSet::from_points([0]);
    let b_prime = PointSet::from_points([1]);
    let sub = Field::from_atoms(4, vec![a, a.complement(4)]).map_err(e)?;
    let r = completion_isomorphism_check(&s, &sub, 1).map_err(e)?;
    let ind = Realized::indicator(chargelab::Universe::Finite(4), &chargelab::Subset::Points(a.union(b_prime))).map_err(e)?;
    let ambient = ChargeSpace::Finite(s.clone());
    let restricted = ChargeSpace::Finite(s.restrict(&sub).map_err(e)?);
    let in_ambient = is_t1_measurable(&ambient, &ind).map_err(e)?.measurable;
    let in_sub = is_t1_measurable(&restricted, &ind).map_err(e)?.measurable;
    if r.lp_equal || !in_ambient || in_sub {
        return Err(format!("lp_equal {}, I_B measurable over the field {in_ambient}, over the subfield {in_sub}", r.lp_equal));
    }
    Ok("indicator shape gives lp_equal = false".to_string())
}

fn criterion_10() -> Result<String, String> {
    let r = suite("completion-isomorphism", ISOMORPHISM_POINTS, 0)?;
    let shape = indicator_counterexample()?;
    Ok(format!("{} (ambient, subfield) pairs, 0 exceptions; {shape}", r.checked))
}

fn main() {
    let criteria: [(&str, fn() -> Result<String, String>); 10] = [
        ("field plus null closure forms", criterion_1),
        ("measurability equivalence", criterion_2),
        ("dyadic builder bound", criterion_3),
        ("integration laws", criterion_4),
        ("equality a.e. characterisation", criterion_5),
        ("outer charge oracle", criterion_6),
        ("null modification", criterion_7),
        ("completion behavior", criterion_8),
        ("order of integrals", criterion_9),
        ("isomorphism theorem", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
