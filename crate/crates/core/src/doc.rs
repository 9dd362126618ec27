//! JSON documents for spaces, sets, functions, subfields and chains.
//!
//! Finite universes carry point labels (integers or strings); documents refer
//! to points by label and the library works with point indices. Rationals are
//! `"p/q"` strings (plain integers are accepted on input). Every loader error
//! carries a JSON pointer to the offending value.

use serde_json::{json, Map, Value};

use crate::chain::Chain;
use crate::completion::{ChargeSpace, Subset, Universe};
use crate::error::{Error, Result};
use crate::function::{FunctionRep, SimpleFunction};
use crate::periodic::{EpSet, NatFieldKind};
use crate::rational::{fmt_q, parse_q, Q};
use crate::sets::{Field, FiniteChargeSpace, PointSet, MAX_POINTS};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl Label {
    fn to_json(&self) -> Value {
        match self {
            Label::Int(i) => json!(i),
            Label::Str(s) => json!(s),
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => write!(f, "{s}"),
        }
    }
}

/// A charge space together with the point labels of a finite universe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpaceDoc {
    pub space: ChargeSpace,
    pub labels: Vec<Label>,
}

impl SpaceDoc {
    /// Labels `1..=n` for a finite space built in code.
    pub fn numbered(space: ChargeSpace) -> Self {
        let labels = match &space {
            ChargeSpace::Finite(s) => (1..=s.n() as i64).map(Label::Int).collect(),
            ChargeSpace::Naturals(_) => Vec::new(),
        };
        SpaceDoc { space, labels }
    }

    pub fn universe(&self) -> Universe {
        self.space.universe()
    }

    fn index_of(&self, v: &Value, ptr: &str) -> Result<usize> {
        let l = label(v, ptr)?;
        self.labels.iter().position(|x| *x == l).ok_or_else(|| Error::input(ptr, format!("unknown point label {l}")))
    }

    fn points(&self, v: &Value, ptr: &str) -> Result<PointSet> {
        let mut s = PointSet::EMPTY;
        for (i, x) in array(v, ptr)?.iter().enumerate() {
            s = s.union(PointSet::singleton(self.index_of(x, &format!("{ptr}/{i}"))?));
        }
        Ok(s)
    }

    fn labels_of(&self, s: PointSet) -> Value {
        Value::Array(s.points().map(|i| self.labels[i].to_json()).collect())
    }
}

fn obj<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::input(ptr_or_root(ptr), "expected an object"))
}

fn ptr_or_root(ptr: &str) -> &str {
    if ptr.is_empty() {
        "/"
    } else {
        ptr
    }
}

fn field<'a>(v: &'a Value, key: &str, ptr: &str) -> Result<&'a Value> {
    obj(v, ptr)?.get(key).ok_or_else(|| Error::input(ptr_or_root(ptr), format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::input(ptr_or_root(ptr), "expected an array"))
}

fn string<'a>(v: &'a Value, ptr: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::input(ptr_or_root(ptr), "expected a string"))
}

fn kind<'a>(v: &'a Value, ptr: &str) -> Result<&'a str> {
    string(field(v, "kind", ptr)?, &format!("{ptr}/kind"))
}

fn rational(v: &Value, ptr: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).map_err(|e| Error::input(ptr, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::input(ptr_or_root(ptr), "expected a rational string \"p/q\"")),
    }
}

fn natural(v: &Value, ptr: &str) -> Result<u64> {
    match v.as_u64() {
        Some(n) if n >= 1 => Ok(n),
        _ => Err(Error::input(ptr, "expected a natural number >= 1")),
    }
}

fn label(v: &Value, ptr: &str) -> Result<Label> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(Label::Int(n.as_i64().unwrap())),
        Value::String(s) => Ok(Label::Str(s.clone())),
        _ => Err(Error::input(ptr, "a point label must be an integer or a string")),
    }
}

fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn load_space(v: &Value) -> Result<SpaceDoc> {
    let u = field(v, "universe", "")?;
    match kind(u, "/universe")? {
        "finite" => {
            let pts = array(field(u, "points", "/universe")?, "/universe/points")?;
            if pts.is_empty() {
                return Err(Error::input("/universe/points", "the universe must be nonempty"));
            }
            if pts.len() > MAX_POINTS {
                return Err(Error::TooLarge { points: pts.len(), cap: MAX_POINTS });
            }
            let mut labels = Vec::new();
            for (i, p) in pts.iter().enumerate() {
                let l = label(p, &format!("/universe/points/{i}"))?;
                if labels.contains(&l) {
                    return Err(Error::input(format!("/universe/points/{i}"), format!("duplicate label {l}")));
                }
                labels.push(l);
            }
            let n = labels.len();
            let partial = SpaceDoc { space: ChargeSpace::Finite(FiniteChargeSpace::new(Field::discrete(n)?, vec![Q::from_integer(0.into()); n])?), labels };
            let f = load_field_at(field(v, "field", "")?, &partial, "/field")?;
            let c = field(v, "charge", "")?;
            if kind(c, "/charge")? != "atom-weights" {
                return Err(Error::input("/charge/kind", "a finite space takes \"atom-weights\""));
            }
            let w = obj(field(c, "weights", "/charge")?, "/charge/weights")?;
            let mut weights = Vec::with_capacity(f.num_atoms());
            for i in 0..f.num_atoms() {
                let key = i.to_string();
                let x = w.get(&key).ok_or_else(|| Error::input("/charge/weights", format!("missing weight for atom {i}")))?;
                weights.push(rational(x, &format!("/charge/weights/{key}"))?);
            }
            if let Some(k) = w.keys().find(|k| k.parse::<usize>().map_or(true, |i| i >= f.num_atoms())) {
                return Err(Error::input(format!("/charge/weights/{k}"), "no atom with this index"));
            }
            Ok(SpaceDoc { space: ChargeSpace::Finite(FiniteChargeSpace::new(f, weights)?), labels: partial.labels })
        }
        "naturals" => {
            let k = match kind(field(v, "field", "")?, "/field")? {
                "cofinite" => NatFieldKind::Cofinite,
                "periodic" => NatFieldKind::Periodic,
                "eventually-periodic" => NatFieldKind::EventuallyPeriodic,
                other => return Err(Error::input("/field/kind", format!("unknown field kind {other:?} on N"))),
            };
            if let Some(c) = obj(v, "")?.get("charge") {
                if kind(c, "/charge")? != "density" {
                    return Err(Error::input("/charge/kind", "the charge on N is \"density\""));
                }
            }
            Ok(SpaceDoc { space: ChargeSpace::Naturals(k), labels: Vec::new() })
        }
        other => Err(Error::input("/universe/kind", format!("unknown universe kind {other:?}"))),
    }
}

pub fn field_to_json(f: &Field, ctx: &SpaceDoc) -> Value {
    json!({"kind": "atoms", "atoms": f.atoms().iter().map(|a| ctx.labels_of(*a)).collect::<Vec<_>>()})
}

pub fn space_to_json(doc: &SpaceDoc) -> Value {
    match &doc.space {
        ChargeSpace::Finite(s) => {
            let weights: Map<String, Value> = s.weights().iter().enumerate().map(|(i, w)| (i.to_string(), q_json(w))).collect();
            json!({
                "universe": {"kind": "finite", "points": doc.labels.iter().map(Label::to_json).collect::<Vec<_>>()},
                "field": field_to_json(s.field(), doc),
                "charge": {"kind": "atom-weights", "weights": weights},
            })
        }
        ChargeSpace::Naturals(k) => json!({
            "universe": {"kind": "naturals"},
            "field": {"kind": k.name()},
            "charge": {"kind": "density"},
        }),
    }
}

fn load_field_at(v: &Value, ctx: &SpaceDoc, ptr: &str) -> Result<Field> {
    let n = ctx.labels.len();
    let sets = |key: &str| -> Result<Vec<PointSet>> {
        let p = format!("{ptr}/{key}");
        array(field(v, key, ptr)?, &p)?.iter().enumerate().map(|(i, s)| ctx.points(s, &format!("{p}/{i}"))).collect()
    };
    match kind(v, ptr)? {
        "atoms" => Field::from_atoms(n, sets("atoms")?).map_err(|e| match e {
            Error::Input { pointer, message } => Error::input(format!("{ptr}{pointer}"), message),
            e => e,
        }),
        "generators" => Field::generated(n, &sets("sets")?),
        other => Err(Error::input(format!("{ptr}/kind"), format!("unknown field kind {other:?}"))),
    }
}

/// A field over the points of `ctx`, e.g. a subfield.
pub fn load_field(v: &Value, ctx: &SpaceDoc) -> Result<Field> {
    if ctx.labels.is_empty() {
        return Err(Error::invalid("field documents need a finite universe"));
    }
    load_field_at(v, ctx, "")
}

fn elements(v: &Value, ptr: &str) -> Result<Vec<u64>> {
    let p = format!("{ptr}/elements");
    array(field(v, "elements", ptr)?, &p)?.iter().enumerate().map(|(i, x)| natural(x, &format!("{p}/{i}"))).collect()
}

fn load_set_at(v: &Value, ctx: &SpaceDoc, ptr: &str) -> Result<Subset> {
    let k = kind(v, ptr)?;
    match ctx.universe() {
        Universe::Finite(n) => {
            let pts = || ctx.points(field(v, "elements", ptr)?, &format!("{ptr}/elements"));
            match k {
                "finite" => Ok(Subset::Points(pts()?)),
                "cofinite-complement" => Ok(Subset::Points(pts()?.complement(n))),
                other => Err(Error::input(format!("{ptr}/kind"), format!("set kind {other:?} is not available on a finite universe"))),
            }
        }
        Universe::Naturals => {
            let at = |e: Error, key: &str| match e {
                Error::Input { message, .. } => Error::input(format!("{ptr}/{key}"), message),
                e => e,
            };
            Ok(Subset::Nat(match k {
                "eventually-periodic" => {
                    let pre = match obj(v, ptr)?.get("preperiod") {
                        Some(x) => string(x, &format!("{ptr}/preperiod"))?,
                        None => "",
                    };
                    let per = string(field(v, "period", ptr)?, &format!("{ptr}/period"))?;
                    EpSet::from_bits(pre, per).map_err(|e| at(e, "period"))?
                }
                "finite" => EpSet::finite(&elements(v, ptr)?).map_err(|e| at(e, "elements"))?,
                "cofinite-complement" => EpSet::cofinite_complement(&elements(v, ptr)?).map_err(|e| at(e, "elements"))?,
                other => return Err(Error::input(format!("{ptr}/kind"), format!("unknown set kind {other:?}"))),
            }))
        }
    }
}

pub fn load_set(v: &Value, ctx: &SpaceDoc) -> Result<Subset> {
    load_set_at(v, ctx, "")
}

/// Sets on `N` are always emitted in the normalized eventually periodic form.
pub fn set_to_json(s: &Subset, ctx: &SpaceDoc) -> Value {
    match s {
        Subset::Points(p) => json!({"kind": "finite", "elements": ctx.labels_of(*p)}),
        Subset::Nat(e) => json!({"kind": "eventually-periodic", "preperiod": e.preperiod_str(), "period": e.period_str()}),
    }
}

fn load_function_at(v: &Value, ctx: &SpaceDoc, ptr: &str) -> Result<FunctionRep> {
    let sub = |key: &str| -> Result<Box<FunctionRep>> {
        Ok(Box::new(load_function_at(field(v, key, ptr)?, ctx, &format!("{ptr}/{key}"))?))
    };
    let q = |key: &str| rational(field(v, key, ptr)?, &format!("{ptr}/{key}"));
    Ok(match kind(v, ptr)? {
        "simple" => {
            let p = format!("{ptr}/pieces");
            let mut pieces = Vec::new();
            for (i, x) in array(field(v, "pieces", ptr)?, &p)?.iter().enumerate() {
                let pp = format!("{p}/{i}");
                pieces.push((rational(field(x, "value", &pp)?, &format!("{pp}/value"))?, load_set_at(field(x, "set", &pp)?, ctx, &format!("{pp}/set"))?));
            }
            FunctionRep::Simple(SimpleFunction::new(pieces).map_err(|e| Error::input(p, e.to_string()))?)
        }
        "constant" => FunctionRep::Constant(q("value")?),
        "pointwise" => {
            let p = format!("{ptr}/values");
            let vals = array(field(v, "values", ptr)?, &p)?;
            if vals.len() != ctx.labels.len() {
                return Err(Error::input(p, format!("expected {} values, got {}", ctx.labels.len(), vals.len())));
            }
            FunctionRep::Pointwise(vals.iter().enumerate().map(|(i, x)| rational(x, &format!("{p}/{i}"))).collect::<Result<_>>()?)
        }
        "reciprocal" => FunctionRep::Reciprocal { scale: opt_scale(v, ptr)? },
        "linear" => FunctionRep::Linear { scale: opt_scale(v, ptr)? },
        "indicator" => FunctionRep::Indicator(load_set_at(field(v, "set", ptr)?, ctx, &format!("{ptr}/set"))?),
        "affine" => FunctionRep::Affine { a: q("a")?, f: sub("f")?, b: q("b")?, g: sub("g")? },
        "abs" => FunctionRep::Abs(sub("f")?),
        "pos-part" => FunctionRep::PosPart(sub("f")?),
        "neg-part" => FunctionRep::NegPart(sub("f")?),
        "pow" => {
            let p = field(v, "p", ptr)?.as_u64().filter(|p| *p >= 1 && *p <= 64).ok_or_else(|| Error::input(format!("{ptr}/p"), "expected an integer exponent in 1..=64"))?;
            FunctionRep::Pow(sub("f")?, p as u32)
        }
        "product" => FunctionRep::Product(sub("f")?, sub("g")?),
        "max" => FunctionRep::Max(sub("f")?, sub("g")?),
        "min" => FunctionRep::Min(sub("f")?, sub("g")?),
        other => return Err(Error::input(format!("{ptr}/kind"), format!("unknown function kind {other:?}"))),
    })
}

fn opt_scale(v: &Value, ptr: &str) -> Result<Q> {
    match obj(v, ptr)?.get("scale") {
        Some(x) => rational(x, &format!("{ptr}/scale")),
        None => Ok(Q::from_integer(1.into())),
    }
}

pub fn load_function(v: &Value, ctx: &SpaceDoc) -> Result<FunctionRep> {
    load_function_at(v, ctx, "")
}

pub fn function_to_json(f: &FunctionRep, ctx: &SpaceDoc) -> Value {
    use FunctionRep::*;
    let fj = |g: &FunctionRep| function_to_json(g, ctx);
    match f {
        Simple(s) => json!({"kind": "simple", "pieces": s.pieces().iter().map(|(c, a)| json!({"value": q_json(c), "set": set_to_json(a, ctx)})).collect::<Vec<_>>()}),
        Constant(c) => json!({"kind": "constant", "value": q_json(c)}),
        Pointwise(v) => json!({"kind": "pointwise", "values": v.iter().map(q_json).collect::<Vec<_>>()}),
        Reciprocal { scale } => json!({"kind": "reciprocal", "scale": q_json(scale)}),
        Linear { scale } => json!({"kind": "linear", "scale": q_json(scale)}),
        Indicator(a) => json!({"kind": "indicator", "set": set_to_json(a, ctx)}),
        Affine { a, f, b, g } => json!({"kind": "affine", "a": q_json(a), "f": fj(f), "b": q_json(b), "g": fj(g)}),
        Abs(f) => json!({"kind": "abs", "f": fj(f)}),
        PosPart(f) => json!({"kind": "pos-part", "f": fj(f)}),
        NegPart(f) => json!({"kind": "neg-part", "f": fj(f)}),
        Pow(f, p) => json!({"kind": "pow", "f": fj(f), "p": p}),
        Product(f, g) => json!({"kind": "product", "f": fj(f), "g": fj(g)}),
        Max(f, g) => json!({"kind": "max", "f": fj(f), "g": fj(g)}),
        Min(f, g) => json!({"kind": "min", "f": fj(f), "g": fj(g)}),
    }
}

/// `{"entries": [{"level": "p/q", "set": <set>}, ..]}`.
pub fn load_chain(v: &Value, ctx: &SpaceDoc) -> Result<Chain> {
    let mut entries = Vec::new();
    for (i, e) in array(field(v, "entries", "")?, "/entries")?.iter().enumerate() {
        let p = format!("/entries/{i}");
        entries.push((rational(field(e, "level", &p)?, &format!("{p}/level"))?, load_set_at(field(e, "set", &p)?, ctx, &format!("{p}/set"))?));
    }
    Chain::new(entries)
}

pub fn chain_to_json(c: &Chain, ctx: &SpaceDoc) -> Value {
    json!({"entries": c.entries().iter().map(|(l, s)| json!({"level": q_json(l), "set": set_to_json(s, ctx)})).collect::<Vec<_>>()})
}

/// Reads an inline JSON document, or the file it names.
pub fn read_json(arg: &str, flag: &str) -> Result<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::input(flag, format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::input(flag, format!("malformed JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite_doc() -> Value {
        json!({
            "universe": {"kind": "finite", "points": [1, 2, "c"]},
            "field": {"kind": "atoms", "atoms": [[1, 2], ["c"]]},
            "charge": {"kind": "atom-weights", "weights": {"0": "1/2", "1": "1/2"}}
        })
    }

    #[test]
    fn round_trips() {
        let d = load_space(&finite_doc()).unwrap();
        assert_eq!(load_space(&space_to_json(&d)).unwrap(), d);
        let f = load_function(&json!({"kind": "affine", "a": "2", "f": {"kind": "indicator", "set": {"kind": "finite", "elements": ["c"]}}, "b": "-1/3", "g": {"kind": "constant", "value": "1"}}), &d).unwrap();
        assert_eq!(load_function(&function_to_json(&f, &d), &d).unwrap(), f);
        let n = load_space(&json!({"universe": {"kind": "naturals"}, "field": {"kind": "periodic"}, "charge": {"kind": "density"}})).unwrap();
        let s = load_set(&json!({"kind": "cofinite-complement", "elements": [2, 5]}), &n).unwrap();
        assert_eq!(load_set(&set_to_json(&s, &n), &n).unwrap(), s);
    }

    #[test]
    fn pointered_errors() {
        let d = load_space(&finite_doc()).unwrap();
        let e = load_set(&json!({"kind": "finite", "elements": [1, 9]}), &d).unwrap_err();
        assert_eq!(e, Error::input("/elements/1", "unknown point label 9"));
        let mut bad = finite_doc();
        bad["charge"]["weights"]["1"] = json!("x");
        assert!(matches!(load_space(&bad).unwrap_err(), Error::Input { pointer, .. } if pointer == "/charge/weights/1"));
        let mut overlap = finite_doc();
        overlap["field"]["atoms"] = json!([[1, 2], [2, "c"]]);
        assert!(matches!(load_space(&overlap).unwrap_err(), Error::Input { pointer, .. } if pointer.starts_with("/field")));
    }
}
