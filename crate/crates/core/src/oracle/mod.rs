//! Brute-force oracles, seeded instance generators and the theorem-suite
//! registry. Each suite runs a checker over generated (or enumerated)
//! instances; failures are shrunk and kept as JSON repro documents.

pub mod brute;
pub mod gen;
pub mod suites;

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{int, Q};
use gen::{GenBounds, Instance};
use suites::{Check, Generate, Outcome};

pub use brute::{enumerate_fields, outer_charge as brute_outer_charge};

/// Largest ground set a generator may use.
pub const MAX_INSTANCE_POINTS: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InstanceSpec {
    pub max_points: usize,
    pub charge_denominator_bound: u32,
    pub function_value_bound: Q,
    pub seed: u64,
    /// Number of generated instances; enumerated suites ignore it.
    pub instances: usize,
}

impl Default for InstanceSpec {
    fn default() -> Self {
        InstanceSpec { max_points: 6, charge_denominator_bound: 12, function_value_bound: int(4), seed: 0, instances: 1000 }
    }
}

impl InstanceSpec {
    fn bounds(&self) -> GenBounds {
        GenBounds { max_points: self.max_points, den: self.charge_denominator_bound, value_bound: self.function_value_bound.clone() }
    }
}

enum Source {
    Random(Generate),
    Enumerated(fn(usize) -> Result<Vec<Instance>>),
}

pub struct Theorem {
    pub id: &'static str,
    /// What is checked, in one line.
    pub statement: &'static str,
    source: Source,
    check: Check,
}

impl Theorem {
    pub fn is_enumerated(&self) -> bool {
        matches!(self.source, Source::Enumerated(_))
    }
}

macro_rules! theorem {
    ($id:expr, $st:expr, random $g:path, $c:path) => {
        Theorem { id: $id, statement: $st, source: Source::Random($g), check: $c }
    };
    ($id:expr, $st:expr, enumerated $g:path, $c:path) => {
        Theorem { id: $id, statement: $st, source: Source::Enumerated($g), check: $c }
    };
}

pub fn registry() -> Vec<Theorem> {
    use suites::*;
    vec![
        theorem!("fieldplusnull", "the field generated by a subfield and an ideal is the set of symmetric differences", enumerated fieldplusnull_items, check_fieldplusnull),
        theorem!("t1-equivalence", "T2-measurability, the ray characterisation and the dyadic construction agree", random gen_one_mixed, check_t1_equivalence),
        theorem!("equality-ae-characterisation", "the three tests for equality almost everywhere agree", random gen_pair_ae, check_equality_ae),
        theorem!("dyadic-bound", "dyadic approximants stay within 2^(1-n) below the top level", random gen_one_measurable, check_dyadic_bound),
        theorem!("integration-laws", "the integral is linear, monotone, a.e. invariant and independent of the grid", random gen_integration, check_integration_laws),
        theorem!("outer-charge-oracle", "outer and inner charges equal the extremes over field elements", random gen_sets, check_outer_oracle),
        theorem!("periodic-cover-search", "the outer charge on N is the least density of a periodic cover", random gen_ep, check_periodic_cover),
        theorem!("null-modification", "null modification keeps classes and order and lands in the subfield completion", random gen_null_mod, check_null_mod),
        theorem!("completion-invariance", "completion contains the null sets, is idempotent, and keeps integrals and distances", random gen_two_mixed, check_completion_invariance),
        theorem!("order-integrals", "domination on the ray chain orders the integrals", random gen_order, check_order),
        theorem!("completion-isomorphism", "L_p equality and class isomorphism match their set-level criteria", enumerated isomorphism_items, check_isomorphism),
        theorem!("hazy-uniqueness", "hazy limits of one sequence agree almost everywhere", random gen_hazy, check_hazy),
        theorem!("simple-dense", "simple functions approximate measurable functions in d and in L_1", random gen_one_measurable, check_simple_dense),
        theorem!("dominated-integrability", "a dominated function is integrable exactly when T1-measurable", random gen_dominated, check_dominated),
        theorem!("fia-integrability", "restricting an L_p function to a field element stays in L_p", random gen_fia, check_fia),
        theorem!("nested-fields", "L_p over a subfield is contained in L_p over the field", random gen_nested, check_nested),
        theorem!("pj-invariance", "L_p and integrals are unchanged by Peano-Jordan completion", random gen_one_mixed, check_pj_invariance),
        theorem!("pseudometric-triangle", "the distance is a pseudometric and matches the candidate scan", random gen_triple, check_triangle),
    ]
}

pub fn theorem(id: &str) -> Result<Theorem> {
    registry().into_iter().find(|t| t.id == id).ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub message: String,
    /// The shrunk instance as JSON documents.
    pub instance: Value,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SuiteReport {
    pub theorem: String,
    pub seed: u64,
    pub instances: usize,
    /// Instances meeting the hypotheses.
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    /// The repro document for one counterexample.
    pub fn repro(&self, c: &Counterexample) -> Value {
        json!({"theorem": self.theorem, "seed": self.seed, "index": c.index, "message": c.message, "instance": c.instance})
    }
}

fn run_one(check: Check, inst: &Instance) -> Outcome {
    match check(inst) {
        Ok(o) => o,
        Err(e) => Outcome::Fail(format!("error: {e}")),
    }
}

/// Greedy: take any simpler neighbour that still fails, until none does.
pub fn shrink(check: Check, inst: Instance) -> Instance {
    let mut cur = inst;
    for _ in 0..256 {
        let next = cur.shrink_candidates().into_iter().find(|c| matches!(run_one(check, c), Outcome::Fail(_)));
        match next {
            Some(c) => cur = c,
            None => break,
        }
    }
    cur
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn run_theorem_suite(id: &str, spec: &InstanceSpec) -> Result<SuiteReport> {
    let t = theorem(id)?;
    if spec.max_points == 0 || spec.max_points > MAX_INSTANCE_POINTS {
        return Err(Error::invalid(format!("max_points must be in 1..={MAX_INSTANCE_POINTS}")));
    }
    let bounds = spec.bounds();
    let items: Vec<(usize, Instance)> = match &t.source {
        Source::Enumerated(items) => {
            if spec.max_points > brute::MAX_ENUMERATE {
                return Err(Error::TooLarge { points: spec.max_points, cap: brute::MAX_ENUMERATE });
            }
            items(spec.max_points)?.into_iter().enumerate().collect()
        }
        Source::Random(g) => (0..spec.instances)
            .into_par_iter()
            .map(|i| g(&mut instance_rng(spec.seed, i), &bounds).map(|x| (i, x)))
            .collect::<Result<_>>()?,
    };
    let check = t.check;
    let outcomes: Vec<(usize, Outcome)> = items
        .par_iter()
        .map(|(i, inst)| {
            let o = run_one(check, inst);
            (*i, o)
        })
        .collect();
    let mut report = SuiteReport {
        theorem: t.id.to_string(),
        seed: spec.seed,
        instances: items.len(),
        checked: 0,
        skipped: 0,
        failures: 0,
        counterexamples: Vec::new(),
    };
    for ((i, o), (_, inst)) in outcomes.into_iter().zip(&items) {
        match o {
            Outcome::Pass => report.checked += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(message) => {
                report.checked += 1;
                report.failures += 1;
                let small = shrink(check, inst.clone());
                let message = match run_one(check, &small) {
                    Outcome::Fail(m) => m,
                    _ => message,
                };
                report.counterexamples.push(Counterexample { index: i, message, instance: small.to_json() });
            }
        }
    }
    Ok(report)
}

/// Writes one repro file per counterexample; returns the paths.
pub fn write_repros(report: &SuiteReport, dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::input("--repro-dir", e.to_string()))?;
    let mut out = Vec::new();
    for c in &report.counterexamples {
        let path = dir.join(format!("{}-{}-{}.json", report.theorem, report.seed, c.index));
        let text = serde_json::to_string_pretty(&report.repro(c)).expect("plain data");
        std::fs::write(&path, text).map_err(|e| Error::input("--repro-dir", e.to_string()))?;
        out.push(path.display().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_fields(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
        assert!(enumerate_fields(6).is_err());
    }

    #[test]
    fn every_suite_passes_small() {
        for t in registry() {
            let spec = InstanceSpec { instances: 40, max_points: if t.is_enumerated() { 3 } else { 5 }, ..Default::default() };
            let r = run_theorem_suite(t.id, &spec).unwrap();
            assert_eq!(r.failures, 0, "{}: {:?}", t.id, r.counterexamples.first());
        }
    }

    #[test]
    fn deterministic() {
        let spec = InstanceSpec { instances: 30, seed: 9, ..Default::default() };
        let a = run_theorem_suite("t1-equivalence", &spec).unwrap();
        let b = run_theorem_suite("t1-equivalence", &spec).unwrap();
        assert_eq!(serde_json::to_string(&a.to_json()).unwrap(), serde_json::to_string(&b.to_json()).unwrap());
    }

    #[test]
    fn shrinks_failures() {
        fn fails_with_two_points(i: &Instance) -> Result<Outcome> {
            Ok(if i.n >= 2 { Outcome::Fail("big".into()) } else { Outcome::Pass })
        }
        let mut rng = instance_rng(1, 0);
        let b = InstanceSpec { max_points: 6, ..Default::default() }.bounds();
        let mut inst = gen::space(&mut rng, &b);
        while inst.n < 4 {
            inst = gen::space(&mut rng, &b);
        }
        assert_eq!(shrink(fails_with_two_points, inst).n, 2);
    }
}
