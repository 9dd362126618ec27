//! The `chargelab` command line: one subcommand per operation, JSON documents
//! in (inline or by path), a human or JSON report out, and verdict-carrying
//! exit codes: 0 success or verdict true, 1 verdict false, 2 input or domain
//! error, 3 internal error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chain::{chain_to_function, completion_isomorphism_check, default_levels, function_to_chain, null_modification, null_modify_function};
use crate::completion::{quotient_representation, ChargeSpace, Subset};
use crate::doc::{self, SpaceDoc};
use crate::dyadic::{build_dyadic_sequence, DyadicOptions, DEFAULT_DEPTH};
use crate::error::{Error, Result};
use crate::function::{equal_ae, is_smooth, is_t1_measurable, is_t2_measurable, pseudometric, t2_measurability, EqualityMethod, FunctionRep, Realized};
use crate::integration::{integrate, lp_membership, lp_pseudonorm, order_integrals_check, IntegralStatus, DEFAULT_ROOT_BITS};
use crate::oracle::{self, InstanceSpec};
use crate::rational::{fmt_q, parse_q, RootValue, Q};
use crate::sets::{Field, PointSet, DEFAULT_EXHAUSTIVE_CAP};

#[derive(Parser, Debug)]
#[command(name = "chargelab", version, about = "Exact computations on finitely additive charge spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum AeMethod {
    Direct,
    Rays,
    Truncated,
    #[default]
    All,
}

/// Flags shared by the subcommands; each uses the ones it needs.
#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Charge-space document (inline JSON or a path).
    #[arg(long)]
    pub space: Option<String>,
    /// A second charge space on the same field (order-check).
    #[arg(long)]
    pub space2: Option<String>,
    /// Function document.
    #[arg(long)]
    pub f: Option<String>,
    /// Second function document.
    #[arg(long)]
    pub g: Option<String>,
    /// Set document.
    #[arg(long)]
    pub set: Option<String>,
    /// Subfield document (atoms or generators over the space's points).
    #[arg(long)]
    pub subfield: Option<String>,
    /// Chain document.
    #[arg(long)]
    pub chain: Option<String>,
    /// JSON list of rational levels.
    #[arg(long)]
    pub levels: Option<String>,
    /// Exponent p >= 1.
    #[arg(long, default_value_t = 1)]
    pub p: u32,
    /// Depth of determining sequences.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: u32,
    /// Single tolerance ε for the T2 witness.
    #[arg(long)]
    pub eps: Option<String>,
    /// Bits of precision for root enclosures.
    #[arg(long, default_value_t = DEFAULT_ROOT_BITS)]
    pub precision: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Ground-set bound for suites and enumeration.
    #[arg(long)]
    pub max_points: Option<usize>,
    /// Generated instances per suite.
    #[arg(long, default_value_t = 1000)]
    pub instances: usize,
    /// Write counterexample repro files here.
    #[arg(long)]
    pub repro_dir: Option<PathBuf>,
    /// Equality test used by aeq.
    #[arg(long, value_enum, default_value_t = AeMethod::All)]
    pub method: AeMethod,
    /// Drop the tail term from dyadic approximants.
    #[arg(long)]
    pub no_tail: bool,
    /// Peano-Jordan completion instead of completion by null sets.
    #[arg(long)]
    pub pj: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load and summarise a charge space.
    SpaceValidate(Opts),
    /// List the atoms and their charges.
    Atoms(Opts),
    /// Outer charge of a set.
    Outer(Opts),
    /// Inner and outer charge and Peano-Jordan membership of a set.
    Pj(Opts),
    /// The completed space.
    Complete(Opts),
    /// The quotient by the null ideal.
    Quotient(Opts),
    /// T1/T2 measurability of a function.
    Measurable(Opts),
    /// Whether the tails of a function vanish.
    Smooth(Opts),
    /// The pseudometric distance of two functions.
    Distance(Opts),
    /// Equality almost everywhere.
    Aeq(Opts),
    /// The dyadic determining sequence.
    Dyadic(Opts),
    /// The integral of a function.
    Integrate(Opts),
    /// L_p membership and pseudonorm.
    Norm(Opts),
    /// Chain domination versus ordered integrals for two charges.
    OrderCheck(Opts),
    /// The function of a chain.
    ChainToFn(Opts),
    /// The ray chain of a nonnegative function.
    FnToChain(Opts),
    /// Null modification of a chain or a function into a subfield.
    Nullmod(Opts),
    /// L_p equality and class isomorphism for a subfield.
    IsoCheck(Opts),
    /// Run a theorem suite ("all" runs every suite).
    Verify {
        /// Suite id.
        theorem_id: Option<String>,
        #[arg(long)]
        theorem: Option<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// All fields on an n-point set.
    Enumerate(Opts),
}

/// A command's result: a verdict and both renderings.
struct Report {
    verdict: bool,
    json: Value,
    human: String,
}

impl Report {
    fn ok(json: Value, human: impl Into<String>) -> Self {
        Report { verdict: true, json, human: human.into() }
    }

    fn verdict(verdict: bool, json: Value, human: impl Into<String>) -> Self {
        Report { verdict, json, human: human.into() }
    }

    fn doc(json: Value) -> Self {
        let human = serde_json::to_string_pretty(&json).expect("plain data");
        Report { verdict: true, json, human }
    }
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::input(flag, "this flag is required"))
}

fn at(flag: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Input { pointer, message } if pointer.starts_with('/') => Error::input(format!("{flag}{pointer}"), message),
        e => e,
    }
}

fn space(o: &Opts) -> Result<SpaceDoc> {
    doc::load_space(&doc::read_json(need(&o.space, "--space")?, "--space")?).map_err(at("--space"))
}

fn function(o: &Opts, d: &SpaceDoc, which: &str) -> Result<(FunctionRep, Realized)> {
    let arg = if which == "--g" { &o.g } else { &o.f };
    let rep = doc::load_function(&doc::read_json(need(arg, which)?, which)?, d).map_err(at(which))?;
    let r = rep.realize(d.universe()).map_err(at(which))?;
    Ok((rep, r))
}

fn set(o: &Opts, d: &SpaceDoc) -> Result<Subset> {
    doc::load_set(&doc::read_json(need(&o.set, "--set")?, "--set")?, d).map_err(at("--set"))
}

fn subfield(o: &Opts, d: &SpaceDoc) -> Result<Field> {
    doc::load_field(&doc::read_json(need(&o.subfield, "--subfield")?, "--subfield")?, d).map_err(at("--subfield"))
}

fn levels(o: &Opts) -> Result<Option<Vec<Q>>> {
    let Some(arg) = &o.levels else { return Ok(None) };
    let v = doc::read_json(arg, "--levels")?;
    let arr = v.as_array().ok_or_else(|| Error::input("--levels", "expected a JSON list of rationals"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => parse_q(s).map_err(|e| Error::input(format!("--levels/{i}"), e.to_string())),
            Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
            _ => Err(Error::input(format!("--levels/{i}"), "expected a rational")),
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn q(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

fn root_json(r: &RootValue) -> Value {
    match r {
        RootValue::Exact(x) => json!({"exact": true, "value": q(x)}),
        RootValue::Enclosure { lo, hi } => json!({"exact": false, "lo": q(lo), "hi": q(hi)}),
    }
}

fn root_human(r: &RootValue) -> String {
    match r {
        RootValue::Exact(x) => fmt_q(x),
        RootValue::Enclosure { lo, hi } => format!("[{}, {}]", fmt_q(lo), fmt_q(hi)),
    }
}

fn fn_doc(r: &Realized, d: &SpaceDoc) -> Result<Value> {
    Ok(doc::function_to_json(&r.to_rep()?, d))
}

fn bool_word(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn execute(cmd: &Command) -> Result<(Report, Format)> {
    use Command::*;
    let (o, report) = match cmd {
        SpaceValidate(o) => {
            let d = space(o)?;
            let s = &d.space;
            let (kind, atoms) = match s {
                ChargeSpace::Finite(f) => ("finite", json!(f.field().num_atoms())),
                ChargeSpace::Naturals(k) => (k.name(), Value::Null),
            };
            let j = json!({"valid": true, "kind": kind, "atoms": atoms, "total": q(&s.total()), "complete": s.is_complete(), "pj_complete": s.is_pj_complete()});
            (o, Report::ok(j, format!("valid {kind} space, total charge {}", fmt_q(&s.total()))))
        }
        Atoms(o) => {
            let d = space(o)?;
            let f = d.space.finite()?;
            let list: Vec<Value> = f
                .field()
                .atoms()
                .iter()
                .zip(f.weights())
                .map(|(a, w)| json!({"points": doc::set_to_json(&Subset::Points(*a), &d)["elements"], "weight": q(w)}))
                .collect();
            let human = list.iter().map(|a| format!("{} {}", a["points"], a["weight"].as_str().unwrap())).collect::<Vec<_>>().join("\n");
            (o, Report::ok(json!({"atoms": list}), human))
        }
        Outer(o) => {
            let d = space(o)?;
            let v = d.space.outer_charge(&set(o, &d)?)?;
            (o, Report::ok(json!({"outer": q(&v)}), fmt_q(&v)))
        }
        Pj(o) => {
            let d = space(o)?;
            let r = d.space.pj_membership(&set(o, &d)?)?;
            let j = json!({"inner": q(&r.inner), "outer": q(&r.outer), "inside": r.inside, "attained": r.attained});
            let h = format!("inner {} outer {} inside {} attained {}", fmt_q(&r.inner), fmt_q(&r.outer), r.inside, r.attained);
            (o, Report::verdict(r.inside, j, h))
        }
        Complete(o) => {
            let d = space(o)?;
            let c = if o.pj { d.space.pj_completion() } else { d.space.complete_space() };
            (o, Report::doc(doc::space_to_json(&SpaceDoc { space: c, labels: d.labels.clone() })))
        }
        Quotient(o) => {
            let d = space(o)?;
            let qt = quotient_representation(d.space.finite()?, o.max_points.unwrap_or(DEFAULT_EXHAUSTIVE_CAP))?;
            let atoms: Vec<Value> = qt.positive_atoms.iter().map(|a| doc::set_to_json(&Subset::Points(*a), &d)).collect();
            let classes: Vec<Value> = qt
                .classes
                .iter()
                .map(|c| json!({"index": c.index, "representative": doc::set_to_json(&Subset::Points(c.representative), &d), "charge": q(&c.charge)}))
                .collect();
            let h = format!("{} classes over {} positive atoms", classes.len(), atoms.len());
            (o, Report::ok(json!({"positive_atoms": atoms, "classes": classes}), h))
        }
        Measurable(o) => {
            let d = space(o)?;
            let (_, f) = function(o, &d, "--f")?;
            if let Some(e) = &o.eps {
                let eps = parse_q(e).map_err(|e| Error::input("--eps", e.to_string()))?;
                let r = t2_measurability(&d.space, &f, &eps)?;
                let j = json!({
                    "eps": q(&eps),
                    "ok": r.ok,
                    "exceptional": r.exceptional.as_ref().map(|s| doc::set_to_json(s, &d)),
                    "exceptional_charge": r.exceptional_charge.as_ref().map(q),
                    "pieces": r.pieces.iter().map(|s| doc::set_to_json(s, &d)).collect::<Vec<_>>(),
                });
                (o, Report::verdict(r.ok, j, format!("T2 at {}: {}", fmt_q(&eps), r.ok)))
            } else {
                let c = is_t1_measurable(&d.space, &f)?;
                let t2 = is_t2_measurable(&d.space, &f)?;
                if t2 != c.measurable {
                    return Err(Error::internal("T1 and T2 verdicts disagree"));
                }
                let j = json!({
                    "measurable": c.measurable,
                    "rays_in_completion": c.rays_in_completion,
                    "smooth": c.smooth,
                    "exceptional_levels": c.exceptional_levels.iter().map(q).collect::<Vec<_>>(),
                    "breakpoints": c.breakpoints.iter().map(q).collect::<Vec<_>>(),
                    "failing_level": c.failing_level.as_ref().map(q),
                });
                (o, Report::verdict(c.measurable, j, format!("measurable: {}", c.measurable)))
            }
        }
        Smooth(o) => {
            let d = space(o)?;
            let (_, f) = function(o, &d, "--f")?;
            let s = is_smooth(&d.space, &f)?;
            (o, Report::verdict(s, json!({"smooth": s}), bool_word(s)))
        }
        Distance(o) => {
            let d = space(o)?;
            let (_, f) = function(o, &d, "--f")?;
            let (_, g) = function(o, &d, "--g")?;
            let v = pseudometric(&d.space, &f, &g)?;
            (o, Report::ok(json!({"distance": q(&v)}), fmt_q(&v)))
        }
        Aeq(o) => {
            let d = space(o)?;
            let (_, f) = function(o, &d, "--f")?;
            let (_, g) = function(o, &d, "--g")?;
            let methods: Vec<EqualityMethod> = match o.method {
                AeMethod::Direct => vec![EqualityMethod::Direct],
                AeMethod::Rays => vec![EqualityMethod::RaySymmetricDifference],
                AeMethod::Truncated => vec![EqualityMethod::TruncatedRays],
                AeMethod::All => EqualityMethod::ALL.to_vec(),
            };
            let vs: Vec<bool> = methods.iter().map(|m| equal_ae(&d.space, &f, &g, *m)).collect::<Result<_>>()?;
            if vs.iter().any(|v| *v != vs[0]) {
                return Err(Error::internal("equality tests disagree"));
            }
            (o, Report::verdict(vs[0], json!({"equal_ae": vs[0]}), bool_word(vs[0])))
        }
        Dyadic(o) => {
            let d = space(o)?;
            let (_, f) = function(o, &d, "--f")?;
            let seq = build_dyadic_sequence(&d.space, &f, DyadicOptions { depth: o.depth, tail: !o.no_tail, ..Default::default() })?;
            let mut terms = Vec::new();
            for n in 1..=seq.depth() {
                terms.push(json!({"n": n, "top": q(&seq.grid.top(n)), "term": fn_doc(&seq.term(n)?, &d)?}));
            }
            let h = format!("{} terms, y_{} = {}", terms.len(), seq.depth(), fmt_q(&seq.grid.top(seq.depth())));
            (o, Report::ok(json!({"depth": seq.depth(), "tail": !o.no_tail, "terms": terms}), h))
        }
        Integrate(o) => {
            let d = space(o)?;
            let (_, f) = function(o, &d, "--f")?;
            let r = integrate(&d.space, &f, o.depth)?;
            let (status, bound) = match &r.status {
                IntegralStatus::Exact => ("exact", Value::Null),
                IntegralStatus::Inconclusive { error_bound } => ("inconclusive", q(error_bound)),
            };
            let j = json!({
                "value": q(&r.value),
                "method": r.method.name(),
                "status": status,
                "error_bound": bound,
                "cauchy_trace": r.cauchy_trace.iter().map(q).collect::<Vec<_>>(),
            });
            let h = match &r.status {
                IntegralStatus::Exact => fmt_q(&r.value),
                IntegralStatus::Inconclusive { error_bound } => format!("{} ± {} (inconclusive)", fmt_q(&r.value), fmt_q(error_bound)),
            };
            (o, Report::ok(j, h))
        }
        Norm(o) => {
            let d = space(o)?;
            let (_, f) = function(o, &d, "--f")?;
            if !lp_membership(&d.space, &f, o.p)? {
                (o, Report::verdict(false, json!({"p": o.p, "member": false}), format!("not in L_{}", o.p)))
            } else {
                let n = lp_pseudonorm(&d.space, &f, o.p, o.precision)?;
                let j = json!({"p": o.p, "member": true, "integral": q(&n.integral), "norm": root_json(&n.norm)});
                (o, Report::ok(j, root_human(&n.norm)))
            }
        }
        OrderCheck(o) => {
            let d1 = space(o)?;
            let d2 = doc::load_space(&doc::read_json(need(&o.space2, "--space2")?, "--space2")?).map_err(at("--space2"))?;
            let (_, f) = function(o, &d1, "--f")?;
            let lv = levels(o)?;
            let r = order_integrals_check(d1.space.finite()?, d2.space.finite()?, &f, lv.as_deref())?;
            let j = json!({
                "chain_dominated": r.chain_dominated,
                "integrals_ordered": r.integrals_ordered,
                "integral_1": q(&r.integral_1),
                "integral_2": q(&r.integral_2),
                "variants_checked": r.variants_checked,
                "variants_ordered": r.variants_ordered,
            });
            let h = format!("chain_dominated {} integrals_ordered {}", r.chain_dominated, r.integrals_ordered);
            (o, Report::verdict(r.implication_holds(), j, h))
        }
        ChainToFn(o) => {
            let d = space(o)?;
            let c = doc::load_chain(&doc::read_json(need(&o.chain, "--chain")?, "--chain")?, &d).map_err(at("--chain"))?;
            let f = chain_to_function(d.universe(), &c)?;
            (o, Report::doc(fn_doc(&f, &d)?))
        }
        FnToChain(o) => {
            let d = space(o)?;
            let (_, f) = function(o, &d, "--f")?;
            let lv = levels(o)?.unwrap_or_else(|| default_levels(&f));
            let c = function_to_chain(&d.space, &f, &lv)?;
            (o, Report::doc(doc::chain_to_json(&c, &d)))
        }
        Nullmod(o) => {
            let d = space(o)?;
            let fc = d.space.finite()?;
            let sub = subfield(o, &d)?;
            if o.chain.is_some() {
                let c = doc::load_chain(&doc::read_json(need(&o.chain, "--chain")?, "--chain")?, &d).map_err(at("--chain"))?;
                let sets: Vec<PointSet> = c.sets().map(|s| s.as_points()).collect::<Result<_>>()?;
                let m = null_modification(fc, &sub, &sets)?;
                let s = |p: &PointSet| doc::set_to_json(&Subset::Points(*p), &d);
                let j = json!({
                    "pairs": m.pairs.iter().map(|(a, b)| json!({"set": s(a), "image": s(b)})).collect::<Vec<_>>(),
                    "target": doc::field_to_json(&m.target, &d),
                    "steps": m.steps.iter().map(|st| json!({"k": st.k, "C": s(&st.c), "B": s(&st.b), "D": s(&st.d), "E": s(&st.e), "F": s(&st.f)})).collect::<Vec<_>>(),
                    "property1": m.property1,
                    "property2": m.property2,
                    "images_in_target": m.images_in_target,
                    "charge_preserved": m.charge_preserved,
                });
                let h = m.pairs.iter().map(|(a, b)| format!("{} -> {}", s(a)["elements"], s(b)["elements"])).collect::<Vec<_>>().join("\n");
                (o, Report::verdict(m.verified(), j, h))
            } else {
                let (_, f) = function(o, &d, "--f")?;
                let r = null_modify_function(fc, &sub, &f)?;
                let j = json!({"h": fn_doc(&r.h, &d)?, "equal_ae": r.equal_ae, "sub_measurable": r.sub_measurable, "sub_integrable": r.sub_integrable});
                let ok = r.equal_ae && r.sub_measurable;
                (o, Report::verdict(ok, j.clone(), serde_json::to_string_pretty(&j["h"]).expect("plain data")))
            }
        }
        IsoCheck(o) => {
            let d = space(o)?;
            let sub = subfield(o, &d)?;
            let r = completion_isomorphism_check(d.space.finite()?, &sub, o.p)?;
            let w = |p: &Option<PointSet>| p.map(|s| doc::set_to_json(&Subset::Points(s), &d));
            let j = json!({
                "lp_equal": r.lp_equal,
                "null_in_sub_completion": r.null_in_sub_completion,
                "classes_isomorphic": r.classes_isomorphic,
                "completion_identity": r.completion_identity,
                "lp_witness": w(&r.lp_witness),
                "identity_witness": w(&r.identity_witness),
            });
            let h = format!("lp_equal {} classes_isomorphic {}", r.lp_equal, r.classes_isomorphic);
            (o, Report::verdict(r.consistent(), j, h))
        }
        Verify { theorem_id, theorem, opts } => {
            let id = theorem.as_deref().or(theorem_id.as_deref()).ok_or_else(|| Error::input("--theorem", "a suite id is required"))?;
            let ids: Vec<String> = if id == "all" { oracle::registry().iter().map(|t| t.id.to_string()).collect() } else { vec![id.to_string()] };
            let mut reports = Vec::new();
            let mut lines = Vec::new();
            let mut failures = 0;
            for id in ids {
                let t = oracle::theorem(&id)?;
                let default_points = if t.is_enumerated() { 4 } else { 6 };
                let spec = InstanceSpec { max_points: opts.max_points.unwrap_or(default_points), seed: opts.seed, instances: opts.instances, ..Default::default() };
                let r = oracle::run_theorem_suite(&id, &spec)?;
                if let Some(dir) = &opts.repro_dir {
                    oracle::write_repros(&r, dir)?;
                }
                failures += r.failures;
                lines.push(format!("{}: {} instances, {} checked, {} skipped, {} failures", r.theorem, r.instances, r.checked, r.skipped, r.failures));
                reports.push(r.to_json());
            }
            let j = if reports.len() == 1 { reports.pop().unwrap() } else { json!({"suites": reports, "failures": failures}) };
            (opts, Report::verdict(failures == 0, j, lines.join("\n")))
        }
        Enumerate(o) => {
            let n = o.max_points.ok_or_else(|| Error::input("--max-points", "this flag is required"))?;
            let fields = oracle::enumerate_fields(n)?;
            let labels = SpaceDoc::numbered(ChargeSpace::Finite(crate::sets::FiniteChargeSpace::new(Field::discrete(n)?, vec![Q::from_integer(0.into()); n])?));
            let list: Vec<Value> = fields.iter().map(|f| doc::field_to_json(f, &labels)).collect();
            (o, Report::ok(json!({"n": n, "count": list.len(), "fields": list}), format!("{} fields on {n} points", list.len())))
        }
    };
    Ok((report, o.format))
}

fn format_of(cmd: &Command) -> Format {
    use Command::*;
    match cmd {
        Verify { opts, .. } => opts.format,
        SpaceValidate(o) | Atoms(o) | Outer(o) | Pj(o) | Complete(o) | Quotient(o) | Measurable(o) | Smooth(o) | Distance(o) | Aeq(o)
        | Dyadic(o) | Integrate(o) | Norm(o) | OrderCheck(o) | ChainToFn(o) | FnToChain(o) | Nullmod(o) | IsoCheck(o) | Enumerate(o) => o.format,
    }
}

fn out(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{text}").and_then(|_| stdout.flush());
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli.command) {
        Ok((r, Format::Json)) => {
            out(&serde_json::to_string_pretty(&r.json).expect("plain data"));
            if r.verdict { 0 } else { 1 }
        }
        Ok((r, Format::Human)) => {
            out(&r.human);
            if r.verdict { 0 } else { 1 }
        }
        Err(e) => {
            if format_of(&cli.command) == Format::Json {
                let pointer = match &e {
                    Error::Input { pointer, .. } => Some(pointer.clone()),
                    _ => None,
                };
                out(&json!({"error": e.to_string(), "pointer": pointer}).to_string());
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
