//! JSON documents for fields, matrices, polynomials, preserver specs and the
//! reports produced by the verifiers and oracles.
//!
//! Field elements are strings (or arrays of strings in extension fields);
//! counts, indices and seeds are decimal strings. Small structural integers
//! (p, k, modulus digits, n, words) are plain numbers, and readers accept
//! either form. Top-level documents carry `"v": 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldDescriptor, FieldElem, FieldHom, UniPoly};
use crate::matrixcore::{Matrix, SubspaceBasis};
use crate::multipoly::MultilinearPoly;
use crate::omegaclass::{ClassPath, OmegaCase, OmegaClassification};
use crate::oracle::{Failure, LemmaReport};
use crate::preserver::{
    EntryTweak, ExampleReport, Gamma, IdempotentReport, Mode, Outcome, PreserverSpec, Shift, Strategy, StrategyRecord, Verdict,
    Violation, ViolationKind,
};

pub const SCHEMA_VERSION: u64 = 1;

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| invalid(format!("missing key {key:?}")))
}

fn opt<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| invalid(format!("{what} must be a string")))
}

fn as_bool(v: &Value, what: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| invalid(format!("{what} must be a boolean")))
}

/// A non-negative integer given as a JSON number or a decimal string.
pub fn as_u128(v: &Value, what: &str) -> Result<u128> {
    match v {
        Value::Number(n) => n.as_u64().map(u128::from),
        Value::String(s) => s.trim().parse::<u128>().ok(),
        _ => None,
    }
    .ok_or_else(|| invalid(format!("{what} must be a non-negative integer")))
}

pub fn as_u64(v: &Value, what: &str) -> Result<u64> {
    u64::try_from(as_u128(v, what)?).map_err(|_| invalid(format!("{what} is too large")))
}

pub fn as_usize(v: &Value, what: &str) -> Result<usize> {
    usize::try_from(as_u128(v, what)?).map_err(|_| invalid(format!("{what} is too large")))
}

fn count(c: u128) -> Value {
    Value::String(c.to_string())
}

fn opt_seed(seed: Option<u64>) -> Value {
    seed.map_or(Value::Null, |s| Value::String(s.to_string()))
}

fn read_opt_seed(v: &Value, key: &str) -> Result<Option<u64>> {
    opt(v, key).map(|s| as_u64(s, key)).transpose()
}

/// Rejects documents from a different schema version; a missing `v` is
/// read as the current one.
pub fn check_version(v: &Value) -> Result<()> {
    match v.get("v") {
        None => Ok(()),
        Some(x) if as_u64(x, "v").ok() == Some(SCHEMA_VERSION) => Ok(()),
        Some(x) => Err(invalid(format!("unsupported schema version {x}"))),
    }
}

fn versioned(mut m: Map<String, Value>) -> Value {
    m.insert("v".into(), json!(SCHEMA_VERSION));
    Value::Object(m)
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("documents are objects"),
    }
}

// ---- fields and elements ----

pub fn descriptor_to_json(d: &FieldDescriptor) -> Value {
    match d {
        FieldDescriptor::Prime { p } => json!({"kind": "gf", "p": p, "k": 1}),
        FieldDescriptor::Extension { p, modulus } => json!({"kind": "gf", "p": p, "k": modulus.len() - 1, "modulus": modulus}),
        FieldDescriptor::Rationals => json!({"kind": "q"}),
        FieldDescriptor::GaussianRationals => json!({"kind": "qi"}),
    }
}

pub fn field_to_json(f: &Field) -> Value {
    descriptor_to_json(&f.descriptor())
}

pub fn descriptor_from_json(v: &Value) -> Result<FieldDescriptor> {
    let kind = as_str(get(v, "kind")?, "field kind")?;
    match kind {
        "q" => Ok(FieldDescriptor::Rationals),
        "qi" => Ok(FieldDescriptor::GaussianRationals),
        "gf" => {
            let p = as_u64(get(v, "p")?, "p")?;
            let k = opt(v, "k").map(|x| as_u64(x, "k")).transpose()?;
            match opt(v, "modulus") {
                Some(m) => {
                    let modulus = as_array(m, "modulus")?.iter().map(|c| as_u64(c, "modulus digit")).collect::<Result<Vec<_>>>()?;
                    if k.is_some_and(|k| modulus.len() as u64 != k + 1) {
                        return Err(invalid("modulus length must be k + 1"));
                    }
                    if modulus.len() == 2 {
                        Field::gf_with_modulus(p, &modulus)?;
                        return Ok(FieldDescriptor::Prime { p });
                    }
                    Ok(FieldDescriptor::Extension { p, modulus })
                }
                None => {
                    let k = k.unwrap_or(1);
                    if k == 0 || k > 64 {
                        return Err(invalid(format!("extension degree {k} out of range")));
                    }
                    Ok(Field::gf_ext(p, k as u32)?.descriptor())
                }
            }
        }
        other => Err(invalid(format!("unknown field kind {other:?}"))),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    Field::new(&descriptor_from_json(v)?)
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    let s = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(invalid(format!("rational must be an \"a/b\" string, got {v}"))),
    };
    s.parse::<BigRational>().map_err(|_| invalid(format!("{s:?} is not a rational number")))
}

fn parse_integer(v: &Value) -> Result<BigInt> {
    let s = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(invalid(format!("expected an integer, got {v}"))),
    };
    s.parse::<BigInt>().map_err(|_| invalid(format!("{s:?} is not an integer")))
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().expect("residue fits")
}

pub fn elem_to_json(field: &Field, a: &FieldElem) -> Value {
    match a {
        FieldElem::Fin(x) if field.degree() == 1 => Value::String(x.to_string()),
        FieldElem::Fin(_) => Value::Array(field.digits(a).iter().map(|d| Value::String(d.to_string())).collect()),
        FieldElem::Rat(r) => Value::String(fmt_rational(r)),
        FieldElem::Gauss(g) => json!({"re": fmt_rational(&g.re), "im": fmt_rational(&g.im)}),
    }
}

pub fn elem_from_json(field: &Field, v: &Value) -> Result<FieldElem> {
    match field.descriptor() {
        FieldDescriptor::Prime { p } => Ok(field.elem(reduce(&parse_integer(v)?, p))),
        FieldDescriptor::Extension { p, modulus } => {
            let k = modulus.len() - 1;
            let digits: Vec<u64> = match v {
                Value::Array(ds) => ds.iter().map(|d| parse_integer(d).map(|x| reduce(&x, p))).collect::<Result<_>>()?,
                _ => vec![reduce(&parse_integer(v)?, p)],
            };
            if digits.len() > k {
                return Err(invalid(format!("{} coefficients given for an element of {}", digits.len(), field.name())));
            }
            field.from_digits(&digits)
        }
        FieldDescriptor::Rationals => field.from_rational(&parse_rational(v)?),
        FieldDescriptor::GaussianRationals => match v {
            Value::Object(_) => {
                let re = opt(v, "re").map(parse_rational).transpose()?.unwrap_or_else(BigRational::zero);
                let im = opt(v, "im").map(parse_rational).transpose()?.unwrap_or_else(BigRational::zero);
                field.gaussian_elem(re, im)
            }
            _ => field.from_rational(&parse_rational(v)?),
        },
    }
}

// ---- matrices and polynomials ----

/// Row-major array of element arrays.
pub fn rows_to_json(m: &Matrix) -> Value {
    let f = m.field();
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|a| elem_to_json(f, a)).collect())).collect())
}

pub fn rows_from_json(field: &Field, v: &Value) -> Result<Matrix> {
    let rows = as_array(v, "rows")?;
    let parsed = rows
        .iter()
        .map(|r| as_array(r, "matrix row")?.iter().map(|a| elem_from_json(field, a)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, parsed)
}

fn square_rows_from_json(field: &Field, n: Option<usize>, v: &Value) -> Result<Matrix> {
    let m = rows_from_json(field, v)?;
    if !m.is_square() || n.is_some_and(|n| m.rows() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected a square {}matrix, got {}×{}",
            n.map_or(String::new(), |n| format!("{n}×{n} ")),
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

fn tuple_to_json(t: &[Matrix]) -> Value {
    Value::Array(t.iter().map(rows_to_json).collect())
}

fn tuple_from_json(field: &Field, n: Option<usize>, v: &Value) -> Result<Vec<Matrix>> {
    as_array(v, "tuple")?.iter().map(|m| square_rows_from_json(field, n, m)).collect()
}

/// `{"v","field","rows"}`.
pub fn matrix_to_json(m: &Matrix) -> Value {
    versioned(object(json!({"field": field_to_json(m.field()), "rows": rows_to_json(m)})))
}

/// Reads a matrix document; `field` is used when the document has none.
pub fn matrix_from_json(v: &Value, field: Option<&Field>) -> Result<Matrix> {
    check_version(v)?;
    let f = doc_field(v, field)?;
    rows_from_json(&f, get(v, "rows")?)
}

fn doc_field(v: &Value, fallback: Option<&Field>) -> Result<Field> {
    match (opt(v, "field"), fallback) {
        (Some(fv), Some(fb)) => {
            let f = field_from_json(fv)?;
            if &f != fb {
                return Err(Error::FieldMismatch(format!("document is over {}, expected {}", f.name(), fb.name())));
            }
            Ok(f)
        }
        (Some(fv), None) => field_from_json(fv),
        (None, Some(fb)) => Ok(fb.clone()),
        (None, None) => Err(invalid("missing key \"field\"")),
    }
}

/// `{"v","field","matrices":[rows, …]}`.
pub fn tuple_doc_to_json(t: &[Matrix], field: &Field) -> Value {
    versioned(object(json!({"field": field_to_json(field), "matrices": tuple_to_json(t)})))
}

pub fn tuple_doc_from_json(v: &Value, field: Option<&Field>) -> Result<Vec<Matrix>> {
    check_version(v)?;
    let f = doc_field(v, field)?;
    tuple_from_json(&f, None, get(v, "matrices")?)
}

/// Coefficients lowest degree first.
pub fn unipoly_to_json(f: &UniPoly) -> Value {
    Value::Array(f.coeffs().iter().map(|c| elem_to_json(f.field(), c)).collect())
}

pub fn unipoly_from_json(field: &Field, v: &Value) -> Result<UniPoly> {
    let cs = as_array(v, "polynomial coefficients")?.iter().map(|c| elem_from_json(field, c)).collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(field, cs))
}

/// `{"v","k","field","terms":[{"perm","coeff"}]}` with one-based words.
pub fn poly_to_json(p: &MultilinearPoly) -> Value {
    let f = p.field();
    let terms: Vec<Value> = p.terms().iter().map(|(w, c)| json!({"perm": w.images(), "coeff": elem_to_json(f, c)})).collect();
    versioned(object(json!({"k": p.k(), "field": field_to_json(f), "terms": terms})))
}

pub fn poly_from_json(v: &Value, field: Option<&Field>) -> Result<MultilinearPoly> {
    check_version(v)?;
    let f = doc_field(v, field)?;
    let k = as_usize(get(v, "k")?, "k")?;
    let terms = as_array(get(v, "terms")?, "terms")?
        .iter()
        .map(|t| {
            let word = as_array(get(t, "perm")?, "perm")?.iter().map(|x| as_usize(x, "perm entry")).collect::<Result<Vec<_>>>()?;
            Ok((word, elem_from_json(&f, get(t, "coeff")?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    MultilinearPoly::new(&f, k, terms)
}

// ---- preserver specs ----

pub fn hom_to_json(h: FieldHom) -> Value {
    match h {
        FieldHom::Identity => json!({"kind": "identity"}),
        FieldHom::Frobenius(e) => json!({"kind": "frobenius", "power": e}),
        FieldHom::Conjugation => json!({"kind": "conjugation"}),
    }
}

pub fn hom_from_json(v: &Value) -> Result<FieldHom> {
    let kind = match v {
        Value::String(s) => s.as_str(),
        _ => as_str(get(v, "kind")?, "hom kind")?,
    };
    match kind {
        "identity" => Ok(FieldHom::Identity),
        "conjugation" => Ok(FieldHom::Conjugation),
        "frobenius" => {
            let e = opt(v, "power").map(|x| as_u64(x, "power")).transpose()?.unwrap_or(1);
            Ok(FieldHom::Frobenius(u32::try_from(e).map_err(|_| invalid("Frobenius power too large"))?))
        }
        other => Err(invalid(format!("unknown field homomorphism {other:?}"))),
    }
}

fn entries_to_json(field: &Field, m: &BTreeMap<String, FieldElem>) -> Value {
    Value::Array(m.iter().map(|(k, c)| json!({"key": k, "value": elem_to_json(field, c)})).collect())
}

/// Entries keyed by `"key"` (canonical matrix text) or `"matrix"` (rows).
fn entries_from_json(field: &Field, n: usize, v: &Value) -> Result<BTreeMap<String, FieldElem>> {
    let mut out = BTreeMap::new();
    for e in as_array(v, "entries")? {
        let key = match (opt(e, "key"), opt(e, "matrix")) {
            (Some(k), None) => as_str(k, "key")?.to_string(),
            (None, Some(m)) => square_rows_from_json(field, Some(n), m)?.canonical_key(),
            _ => return Err(invalid("each entry needs exactly one of \"key\" or \"matrix\"")),
        };
        if out.insert(key.clone(), elem_from_json(field, get(e, "value")?)?).is_some() {
            return Err(invalid(format!("duplicate entry for [{key}]")));
        }
    }
    Ok(out)
}

pub fn spec_to_json(s: &PreserverSpec) -> Value {
    let f = &s.field;
    let mut m = object(json!({"field": field_to_json(f), "n": s.n}));
    match &s.mode {
        Mode::Parametric(p) => {
            m.insert("mode".into(), json!("parametric"));
            m.insert("t".into(), rows_to_json(&p.t));
            m.insert("hom".into(), hom_to_json(p.hom));
            m.insert("transpose".into(), json!(p.transpose));
            let gamma = match &p.gamma {
                Gamma::Constant(c) => json!({"kind": "constant", "value": elem_to_json(f, c)}),
                Gamma::Table { values, default } => {
                    json!({"kind": "table", "default": elem_to_json(f, default), "entries": entries_to_json(f, values)})
                }
            };
            m.insert("gamma".into(), gamma);
            let shift = match &p.shift {
                Shift::None => json!({"kind": "none"}),
                Shift::Table(t) => json!({"kind": "table", "entries": entries_to_json(f, t)}),
            };
            m.insert("shift".into(), shift);
            m.insert("tweak".into(), json!(p.tweak.name()));
        }
        Mode::Table(t) => {
            m.insert("mode".into(), json!("table"));
            let pairs: Vec<Value> = t.values().map(|(a, b)| json!({"from": rows_to_json(a), "to": rows_to_json(b)})).collect();
            m.insert("pairs".into(), Value::Array(pairs));
        }
    }
    versioned(m)
}

pub fn spec_from_json(v: &Value) -> Result<PreserverSpec> {
    check_version(v)?;
    let f = field_from_json(get(v, "field")?)?;
    let n = as_usize(get(v, "n")?, "n")?;
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    match as_str(get(v, "mode")?, "mode")? {
        "parametric" => {
            let t = match opt(v, "t") {
                Some(t) => square_rows_from_json(&f, Some(n), t)?,
                None => Matrix::identity(&f, n),
            };
            let hom = opt(v, "hom").map(hom_from_json).transpose()?.unwrap_or(FieldHom::Identity);
            let transpose = opt(v, "transpose").map(|x| as_bool(x, "transpose")).transpose()?.unwrap_or(false);
            let gamma = match opt(v, "gamma") {
                None => Gamma::Constant(f.one()),
                Some(g) => match as_str(get(g, "kind")?, "gamma kind")? {
                    "constant" => Gamma::Constant(elem_from_json(&f, get(g, "value")?)?),
                    "table" => Gamma::Table {
                        values: entries_from_json(&f, n, get(g, "entries")?)?,
                        default: elem_from_json(&f, get(g, "default")?)?,
                    },
                    other => return Err(invalid(format!("unknown gamma kind {other:?}"))),
                },
            };
            let shift = match opt(v, "shift") {
                None => Shift::None,
                Some(s) => match as_str(get(s, "kind")?, "shift kind")? {
                    "none" => Shift::None,
                    "table" => Shift::Table(entries_from_json(&f, n, get(s, "entries")?)?),
                    other => return Err(invalid(format!("unknown shift kind {other:?}"))),
                },
            };
            let tweak = opt(v, "tweak").map(|x| as_str(x, "tweak").and_then(EntryTweak::from_name)).transpose()?.unwrap_or(EntryTweak::None);
            PreserverSpec::parametric(t, hom, transpose, gamma, shift, tweak)
        }
        "table" => {
            let pairs = as_array(get(v, "pairs")?, "pairs")?
                .iter()
                .map(|p| Ok((square_rows_from_json(&f, Some(n), get(p, "from")?)?, square_rows_from_json(&f, Some(n), get(p, "to")?)?)))
                .collect::<Result<Vec<_>>>()?;
            PreserverSpec::table(&f, n, pairs)
        }
        other => Err(invalid(format!("unknown spec mode {other:?}"))),
    }
}

// ---- strategies and verdicts ----

pub fn strategy_to_json(s: &Strategy) -> Value {
    match s {
        Strategy::Exhaustive => json!({"mode": "exhaustive"}),
        Strategy::Witnesses { extra } => json!({"mode": "witnesses", "extra": extra.iter().map(|t| tuple_to_json(t)).collect::<Vec<_>>()}),
        Strategy::Sample { count, seed } => json!({"mode": "sample", "count": count.to_string(), "seed": seed.to_string()}),
    }
}

/// A strategy object, or one of the bare strings "exhaustive", "witnesses".
pub fn strategy_from_json(field: &Field, n: usize, v: &Value) -> Result<Strategy> {
    let mode = match v {
        Value::String(s) => s.as_str(),
        _ => as_str(get(v, "mode")?, "strategy mode")?,
    };
    match mode {
        "exhaustive" => Ok(Strategy::Exhaustive),
        "witnesses" => {
            let extra = match opt(v, "extra") {
                None => Vec::new(),
                Some(e) => as_array(e, "extra")?.iter().map(|t| tuple_from_json(field, Some(n), t)).collect::<Result<_>>()?,
            };
            Ok(Strategy::Witnesses { extra })
        }
        "sample" => Ok(Strategy::Sample { count: as_u64(get(v, "count")?, "count")?, seed: as_u64(get(v, "seed")?, "seed")? }),
        other => Err(invalid(format!("unknown strategy {other:?}"))),
    }
}

fn verdict_body(field: &Field, v: &Verdict) -> Map<String, Value> {
    let s = &v.strategy;
    let witness = match &v.witness {
        None => Value::Null,
        Some(w) => json!({
            "kind": w.kind.name(),
            "index": count(w.index),
            "family": w.family,
            "tuple": tuple_to_json(&w.tuple),
            "image": tuple_to_json(&w.image),
            "source_value": rows_to_json(&w.source_value),
            "image_value": rows_to_json(&w.image_value),
        }),
    };
    object(json!({
        "field": field_to_json(field),
        "outcome": v.outcome.name(),
        "strategy": {
            "mode": s.mode,
            "strong": s.strong,
            "checked": count(s.checked),
            "total": count(s.total),
            "seed": opt_seed(s.seed),
        },
        "witness": witness,
    }))
}

/// `{"v","field","outcome","strategy","witness"}`; witness matrices are rows
/// over the document's field.
pub fn verdict_to_json(field: &Field, v: &Verdict) -> Value {
    versioned(verdict_body(field, v))
}

pub fn verdict_from_json(v: &Value) -> Result<Verdict> {
    check_version(v)?;
    let f = field_from_json(get(v, "field")?)?;
    let outcome = match as_str(get(v, "outcome")?, "outcome")? {
        "holds" => Outcome::Holds,
        "violated" => Outcome::Violated,
        other => return Err(invalid(format!("unknown outcome {other:?}"))),
    };
    let s = get(v, "strategy")?;
    let strategy = StrategyRecord {
        mode: as_str(get(s, "mode")?, "strategy mode")?.to_string(),
        strong: as_bool(get(s, "strong")?, "strong")?,
        checked: as_u128(get(s, "checked")?, "checked")?,
        total: as_u128(get(s, "total")?, "total")?,
        seed: read_opt_seed(s, "seed")?,
    };
    let witness = match opt(v, "witness") {
        None => None,
        Some(w) => Some(Violation {
            kind: match as_str(get(w, "kind")?, "violation kind")? {
                "zero_not_preserved" => ViolationKind::ZeroNotPreserved,
                "zero_created" => ViolationKind::ZeroCreated,
                other => return Err(invalid(format!("unknown violation kind {other:?}"))),
            },
            index: as_u128(get(w, "index")?, "index")?,
            family: opt(w, "family").map(|x| as_str(x, "family").map(str::to_string)).transpose()?,
            tuple: tuple_from_json(&f, None, get(w, "tuple")?)?,
            image: tuple_from_json(&f, None, get(w, "image")?)?,
            source_value: rows_from_json(&f, get(w, "source_value")?)?,
            image_value: rows_from_json(&f, get(w, "image_value")?)?,
        }),
    };
    if witness.is_some() != (outcome == Outcome::Violated) {
        return Err(invalid("a verdict has a witness exactly when it is violated"));
    }
    Ok(Verdict { outcome, witness, strategy })
}

/// `{"v","field","precondition","total","exact","exceptions","scaled","holds"}`.
pub fn idempotent_report_to_json(field: &Field, r: &IdempotentReport) -> Value {
    let exceptions: Vec<Value> = r.exceptions.iter().map(|(a, b)| json!({"source": rows_to_json(a), "image": rows_to_json(b)})).collect();
    let scaled: Vec<Value> = r.scaled.iter().map(|(a, c)| json!({"source": rows_to_json(a), "factor": elem_to_json(field, c)})).collect();
    versioned(object(json!({
        "field": field_to_json(field),
        "precondition": Value::Object(verdict_body(field, &r.precondition)),
        "total": count(r.total as u128),
        "exact": count(r.exact as u128),
        "exceptions": exceptions,
        "scaled": scaled,
        "holds": r.holds(),
    })))
}

pub fn idempotent_report_from_json(v: &Value) -> Result<IdempotentReport> {
    check_version(v)?;
    let f = field_from_json(get(v, "field")?)?;
    let mut pre = get(v, "precondition")?.clone();
    if let Value::Object(m) = &mut pre {
        m.entry("field").or_insert_with(|| field_to_json(&f));
    }
    let exceptions = as_array(get(v, "exceptions")?, "exceptions")?
        .iter()
        .map(|e| Ok((rows_from_json(&f, get(e, "source")?)?, rows_from_json(&f, get(e, "image")?)?)))
        .collect::<Result<Vec<_>>>()?;
    let scaled = as_array(get(v, "scaled")?, "scaled")?
        .iter()
        .map(|e| Ok((rows_from_json(&f, get(e, "source")?)?, elem_from_json(&f, get(e, "factor")?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdempotentReport {
        precondition: verdict_from_json(&pre)?,
        total: as_usize(get(v, "total")?, "total")?,
        exact: as_usize(get(v, "exact")?, "exact")?,
        exceptions,
        scaled,
    })
}

// ---- oracle and example reports ----

fn failure_to_json(field: &Field, f: &Failure) -> Value {
    json!({
        "description": f.description,
        "matrices": f.matrices.iter().map(|(name, m)| json!({"name": name, "rows": rows_to_json(m)})).collect::<Vec<_>>(),
        "scalars": f.scalars.iter().map(|(name, c)| json!({"name": name, "value": elem_to_json(field, c)})).collect::<Vec<_>>(),
    })
}

fn failure_from_json(field: &Field, v: &Value) -> Result<Failure> {
    Ok(Failure {
        description: as_str(get(v, "description")?, "description")?.to_string(),
        matrices: as_array(get(v, "matrices")?, "matrices")?
            .iter()
            .map(|m| Ok((as_str(get(m, "name")?, "name")?.to_string(), rows_from_json(field, get(m, "rows")?)?)))
            .collect::<Result<_>>()?,
        scalars: as_array(get(v, "scalars")?, "scalars")?
            .iter()
            .map(|s| Ok((as_str(get(s, "name")?, "name")?.to_string(), elem_from_json(field, get(s, "value")?)?)))
            .collect::<Result<_>>()?,
    })
}

fn lemma_body(r: &LemmaReport) -> Result<Map<String, Value>> {
    let f = Field::new(&r.field)?;
    Ok(object(json!({
        "lemma": r.lemma,
        "field": descriptor_to_json(&r.field),
        "n": r.n,
        "instances": count(r.instances),
        "applicable": count(r.applicable),
        "exhaustive": r.exhaustive,
        "seed": opt_seed(r.seed),
        "passed": r.passed(),
        "failures": r.failures.iter().map(|x| failure_to_json(&f, x)).collect::<Vec<_>>(),
        "converse_failures": r.converse_failures.iter().map(|x| failure_to_json(&f, x)).collect::<Vec<_>>(),
    })))
}

/// `{"v","lemma","field","n","instances","applicable","exhaustive","seed",
/// "passed","failures","converse_failures"}`.
pub fn lemma_report_to_json(r: &LemmaReport) -> Result<Value> {
    Ok(versioned(lemma_body(r)?))
}

pub fn lemma_report_from_json(v: &Value) -> Result<LemmaReport> {
    check_version(v)?;
    let desc = descriptor_from_json(get(v, "field")?)?;
    let f = Field::new(&desc)?;
    let failures = |key: &str| -> Result<Vec<Failure>> { as_array(get(v, key)?, key)?.iter().map(|x| failure_from_json(&f, x)).collect() };
    Ok(LemmaReport {
        lemma: as_str(get(v, "lemma")?, "lemma")?.to_string(),
        field: desc,
        n: as_usize(get(v, "n")?, "n")?,
        instances: as_u128(get(v, "instances")?, "instances")?,
        applicable: as_u128(get(v, "applicable")?, "applicable")?,
        failures: failures("failures")?,
        converse_failures: failures("converse_failures")?,
        exhaustive: as_bool(get(v, "exhaustive")?, "exhaustive")?,
        seed: read_opt_seed(v, "seed")?,
    })
}

/// `{"v","id","field","description","expected","computed","matches","details","verdict"}`.
pub fn example_report_to_json(r: &ExampleReport) -> Result<Value> {
    let f = Field::new(&r.field)?;
    let verdict = r.verdict.as_ref().map_or(Value::Null, |v| Value::Object(verdict_body(&f, v)));
    Ok(versioned(object(json!({
        "id": r.id,
        "field": descriptor_to_json(&r.field),
        "description": r.description,
        "expected": r.expected,
        "computed": r.computed,
        "matches": r.matches,
        "details": r.details,
        "verdict": verdict,
    }))))
}

pub fn example_report_from_json(v: &Value) -> Result<ExampleReport> {
    check_version(v)?;
    let text = |key: &str| -> Result<String> { Ok(as_str(get(v, key)?, key)?.to_string()) };
    Ok(ExampleReport {
        id: text("id")?,
        field: descriptor_from_json(get(v, "field")?)?,
        description: text("description")?,
        expected: text("expected")?,
        computed: text("computed")?,
        matches: as_bool(get(v, "matches")?, "matches")?,
        verdict: opt(v, "verdict").map(verdict_from_json).transpose()?,
        details: as_array(get(v, "details")?, "details")?.iter().map(|d| as_str(d, "detail").map(str::to_string)).collect::<Result<_>>()?,
    })
}

// ---- classifications ----

fn case_name(c: &OmegaCase) -> &'static str {
    match c {
        OmegaCase::TrivialZero => "TrivialZero",
        OmegaCase::ContainsRankOneSquareZero { .. } => "ContainsRankOneSquareZero",
        OmegaCase::ScalarIdempotentLine { .. } => "ScalarIdempotentLine",
        OmegaCase::Other { .. } => "Other",
    }
}

/// `{"v","case","kind","witness","basis","dimension","path","step","extension"}`;
/// matrices are rows over the extension field.
pub fn classification_to_json(c: &OmegaClassification) -> Value {
    let (witness, basis) = match &c.case {
        OmegaCase::TrivialZero => (Value::Null, Value::Null),
        OmegaCase::ContainsRankOneSquareZero { witness } => (rows_to_json(witness), Value::Null),
        OmegaCase::ScalarIdempotentLine { p } => (rows_to_json(p), Value::Null),
        OmegaCase::Other { basis } => (Value::Null, Value::Array(basis.basis().iter().map(rows_to_json).collect())),
    };
    let n = match &c.case {
        OmegaCase::Other { basis } => json!(basis.n()),
        _ => Value::Null,
    };
    versioned(object(json!({
        "case": case_name(&c.case),
        "kind": c.case.kind(),
        "witness": witness,
        "basis": basis,
        "n": n,
        "dimension": c.dimension,
        "path": c.path.name(),
        "step": c.step,
        "extension": descriptor_to_json(&c.extension),
    })))
}

pub fn classification_from_json(v: &Value) -> Result<OmegaClassification> {
    check_version(v)?;
    let extension = descriptor_from_json(get(v, "extension")?)?;
    let f = Field::new(&extension)?;
    let case = match as_str(get(v, "case")?, "case")? {
        "TrivialZero" => OmegaCase::TrivialZero,
        "ContainsRankOneSquareZero" => OmegaCase::ContainsRankOneSquareZero { witness: square_rows_from_json(&f, None, get(v, "witness")?)? },
        "ScalarIdempotentLine" => OmegaCase::ScalarIdempotentLine { p: square_rows_from_json(&f, None, get(v, "witness")?)? },
        "Other" => {
            let n = as_usize(get(v, "n")?, "n")?;
            let gens = tuple_from_json(&f, Some(n), get(v, "basis")?)?;
            OmegaCase::Other { basis: SubspaceBasis::span(&f, n, &gens)? }
        }
        other => return Err(invalid(format!("unknown case {other:?}"))),
    };
    let path = match as_str(get(v, "path")?, "path")? {
        "structural" => ClassPath::Structural,
        "direct" => ClassPath::Direct,
        other => return Err(invalid(format!("unknown path {other:?}"))),
    };
    let step = opt(v, "step")
        .map(|s| as_u64(s, "step").and_then(|x| u8::try_from(x).map_err(|_| invalid("step out of range"))))
        .transpose()?;
    Ok(OmegaClassification { case, path, extension, dimension: as_usize(get(v, "dimension")?, "dimension")?, step })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::MultilinearPoly;

    fn fields() -> Vec<Field> {
        vec![Field::gf(5).unwrap(), Field::gf_ext(2, 2).unwrap(), Field::gf_ext(3, 2).unwrap(), Field::rationals(), Field::gaussian()]
    }

    fn sample_elems(f: &Field) -> Vec<FieldElem> {
        let mut v: Vec<FieldElem> = match f.order() {
            Some(_) => f.elements().collect(),
            None => vec![f.zero(), f.one(), f.from_i64(-7), f.from_ratio(3, -4).unwrap()],
        };
        if f.is_gaussian() {
            let i = f.imaginary_unit().unwrap();
            v.push(i.clone());
            v.push(f.add(&f.from_ratio(1, 2).unwrap(), &f.mul(&f.from_i64(-5), &i)));
        }
        v
    }

    #[test]
    fn element_text_forms() {
        let f5 = Field::gf(5).unwrap();
        assert_eq!(elem_to_json(&f5, &f5.from_i64(-1)), json!("4"));
        assert_eq!(elem_from_json(&f5, &json!("-1")).unwrap(), f5.from_i64(4));
        assert_eq!(elem_from_json(&f5, &json!(7)).unwrap(), f5.from_i64(2));
        let q = Field::rationals();
        assert_eq!(elem_to_json(&q, &q.from_ratio(-6, 4).unwrap()), json!("-3/2"));
        assert!(elem_from_json(&q, &json!("1/0")).is_err());
        let g = Field::gaussian();
        let z = elem_from_json(&g, &json!({"re": "1/2", "im": "-3"})).unwrap();
        assert_eq!(elem_to_json(&g, &z), json!({"re": "1/2", "im": "-3"}));
        let f4 = Field::gf_ext(2, 2).unwrap();
        assert_eq!(elem_to_json(&f4, &f4.from_digits(&[0, 1]).unwrap()), json!(["0", "1"]));
        assert!(elem_from_json(&f4, &json!(["0", "1", "1"])).is_err());
    }

    #[test]
    fn field_documents() {
        assert_eq!(field_to_json(&Field::gf_with_modulus(3, &[1, 0, 1]).unwrap()), json!({"kind": "gf", "p": 3, "k": 2, "modulus": [1, 0, 1]}));
        for f in fields() {
            assert_eq!(field_from_json(&field_to_json(&f)).unwrap(), f);
        }
        let f9 = field_from_json(&json!({"kind": "gf", "p": "3", "k": "2"})).unwrap();
        assert_eq!(f9.order(), Some(9));
        assert!(matches!(field_from_json(&json!({"kind": "gf", "p": 6})), Err(Error::NotPrime(6))));
        assert!(field_from_json(&json!({"kind": "gf", "p": 2, "modulus": [1, 0, 1]})).is_err());
        assert!(field_from_json(&json!({"kind": "r"})).is_err());
    }

    #[test]
    fn elements_and_matrices_round_trip() {
        for f in fields() {
            let elems = sample_elems(&f);
            for a in &elems {
                let j = elem_to_json(&f, a);
                assert_eq!(&elem_from_json(&f, &j).unwrap(), a, "{} in {}", j, f.name());
            }
            let data: Vec<FieldElem> = (0..6).map(|i| elems[(i * 5 + 1) % elems.len()].clone()).collect();
            let m = Matrix::new(&f, 2, 3, data).unwrap();
            let doc = matrix_to_json(&m);
            let back = matrix_from_json(&doc, None).unwrap();
            assert_eq!(back, m);
            assert_eq!(matrix_to_json(&back).to_string(), doc.to_string());
        }
    }

    #[test]
    fn matrix_reader_checks_shape_and_field() {
        let f3 = Field::gf(3).unwrap();
        assert!(matrix_from_json(&json!({"field": {"kind": "gf", "p": 3}, "rows": [["1"], ["1", "2"]]}), None).is_err());
        assert!(matrix_from_json(&json!({"rows": [["1"]]}), None).is_err());
        let m = matrix_from_json(&json!({"rows": [["1", "2"]]}), Some(&f3)).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert!(matches!(
            matrix_from_json(&json!({"field": {"kind": "gf", "p": 5}, "rows": [["1"]]}), Some(&f3)),
            Err(Error::FieldMismatch(_))
        ));
        assert!(matrix_from_json(&json!({"v": 2, "field": {"kind": "q"}, "rows": [["1"]]}), None).is_err());
    }

    #[test]
    fn polynomial_documents() {
        let f3 = Field::gf(3).unwrap();
        let p = MultilinearPoly::from_i64_terms(&f3, 3, &[(&[1, 2, 3], 1), (&[2, 1, 3], -1)]).unwrap();
        let doc = poly_to_json(&p);
        assert_eq!(doc["terms"][1], json!({"perm": [2, 1, 3], "coeff": "2"}));
        assert_eq!(poly_from_json(&doc, None).unwrap(), p);
        let g = Field::gaussian();
        let i = g.imaginary_unit().unwrap();
        let q = MultilinearPoly::new(&g, 2, vec![(vec![1, 2], g.one()), (vec![2, 1], g.neg(&i))]).unwrap();
        assert_eq!(poly_from_json(&poly_to_json(&q), None).unwrap(), q);
        assert!(poly_from_json(&json!({"k": 2, "field": {"kind": "q"}, "terms": [{"perm": [1, 1], "coeff": "1"}]}), None).is_err());
    }

    #[test]
    fn spec_documents() {
        let f4 = Field::gf_ext(2, 2).unwrap();
        let t = Matrix::new(&f4, 2, 2, vec![f4.one(), f4.elem(2), f4.zero(), f4.one()]).unwrap();
        let a = Matrix::unit(&f4, 2, 0, 1);
        let mut values = BTreeMap::new();
        values.insert(a.canonical_key(), f4.elem(3));
        let mut shift = BTreeMap::new();
        shift.insert(Matrix::identity(&f4, 2).canonical_key(), f4.elem(1));
        let s = PreserverSpec::parametric(
            t,
            FieldHom::Frobenius(1),
            true,
            Gamma::Table { values, default: f4.elem(2) },
            Shift::Table(shift),
            EntryTweak::AddA12Identity,
        )
        .unwrap();
        let doc = spec_to_json(&s);
        let back = spec_from_json(&doc).unwrap();
        assert_eq!(back, s);
        assert_eq!(spec_to_json(&back), doc);

        let f3 = Field::gf(3).unwrap();
        let swap = PreserverSpec::table(&f3, 1, vec![(Matrix::from_i64(&f3, 1, 1, &[1]), Matrix::from_i64(&f3, 1, 1, &[2]))]).unwrap();
        assert_eq!(spec_from_json(&spec_to_json(&swap)).unwrap(), swap);

        // entries may name their matrix by rows
        let by_rows = json!({"field": {"kind": "gf", "p": 3}, "n": 1, "mode": "parametric",
            "gamma": {"kind": "table", "default": "1", "entries": [{"matrix": [["2"]], "value": "2"}]}});
        let s = spec_from_json(&by_rows).unwrap();
        assert_eq!(s.apply(&Matrix::from_i64(&f3, 1, 1, &[2])).unwrap(), Matrix::from_i64(&f3, 1, 1, &[1]));
        assert!(matches!(spec_from_json(&json!({"field": {"kind": "gf", "p": 3}, "n": 1, "mode": "parametric", "t": [["0"]]})), Err(Error::Singular)));
    }

    #[test]
    fn strategy_documents() {
        let f2 = Field::gf(2).unwrap();
        let e = Matrix::unit(&f2, 2, 0, 1);
        for s in [
            Strategy::Exhaustive,
            Strategy::witnesses(),
            Strategy::Witnesses { extra: vec![vec![e.clone(), e.transpose()]] },
            Strategy::Sample { count: 100, seed: u64::MAX },
        ] {
            assert_eq!(strategy_from_json(&f2, 2, &strategy_to_json(&s)).unwrap(), s);
        }
        assert_eq!(strategy_from_json(&f2, 2, &json!("exhaustive")).unwrap(), Strategy::Exhaustive);
        assert!(strategy_from_json(&f2, 3, &strategy_to_json(&Strategy::Witnesses { extra: vec![vec![e]] })).is_err());
    }

    #[test]
    fn verdict_and_report_documents() {
        use crate::preserver::{check_maps_zeros, check_rank_one_idempotent_structure, reproduce_example};
        let q = Field::rationals();
        let p = MultilinearPoly::product(&q);
        let spec = PreserverSpec::parametric(Matrix::identity(&q, 2), FieldHom::Identity, true, Gamma::Constant(q.one()), Shift::None, EntryTweak::None).unwrap();
        let v = check_maps_zeros(&p, &p, &spec, false, &Strategy::witnesses(), 1).unwrap();
        assert!(!v.holds());
        let doc = verdict_to_json(&q, &v);
        let back = verdict_from_json(&doc).unwrap();
        assert_eq!(back, v);
        assert_eq!(verdict_to_json(&q, &back).to_string(), doc.to_string());

        let f5 = Field::gf(5).unwrap();
        let spec = PreserverSpec::parametric(Matrix::identity(&f5, 2), FieldHom::Identity, true, Gamma::Constant(f5.from_i64(2)), Shift::None, EntryTweak::None).unwrap();
        let r = check_rank_one_idempotent_structure(&spec, &MultilinearPoly::jordan(&f5), 2).unwrap();
        let doc = idempotent_report_to_json(&f5, &r);
        assert_eq!(idempotent_report_from_json(&doc).unwrap(), r);

        let ex = reproduce_example("gaussian_conjugation", 1).unwrap();
        let doc = example_report_to_json(&ex).unwrap();
        assert_eq!(example_report_from_json(&doc).unwrap(), ex);
    }

    #[test]
    fn lemma_report_documents() {
        let f = Field::gf_ext(2, 2).unwrap();
        let r = LemmaReport {
            lemma: "demo".into(),
            field: f.descriptor(),
            n: 2,
            instances: u128::from(u64::MAX) + 5,
            applicable: 3,
            failures: vec![Failure {
                description: "x".into(),
                matrices: vec![("A".into(), Matrix::identity(&f, 2))],
                scalars: vec![("c".into(), f.elem(3))],
            }],
            converse_failures: Vec::new(),
            exhaustive: false,
            seed: Some(9),
        };
        let doc = lemma_report_to_json(&r).unwrap();
        assert_eq!(doc["instances"], json!("18446744073709551620"));
        assert_eq!(doc["passed"], json!(false));
        assert_eq!(lemma_report_from_json(&doc).unwrap(), r);
    }

    #[test]
    fn classification_documents() {
        use crate::omegaclass::{classify_direct, classify_structural};
        let f3 = Field::gf(3).unwrap();
        let np = MultilinearPoly::jordan(&f3).normalize().unwrap();
        for a in [
            Matrix::identity(&f3, 2).sub(&Matrix::unit(&f3, 2, 0, 0)),
            Matrix::zeros(&f3, 2, 2),
            Matrix::from_i64(&f3, 2, 2, &[1, 1, 0, 1]),
            Matrix::from_i64(&f3, 2, 2, &[0, 1, 1, 0]),
        ] {
            for c in [classify_structural(&a, &np, true).unwrap(), classify_direct(&a, &np, true, 1).unwrap()] {
                let doc = classification_to_json(&c);
                assert_eq!(classification_from_json(&doc).unwrap(), c);
            }
        }
        let q = Field::rationals();
        let a = Matrix::from_i64(&q, 2, 2, &[0, -3, 1, 0]).direct_sum(&Matrix::identity(&q, 1));
        let c = classify_direct(&a, &MultilinearPoly::jordan(&q).normalize().unwrap(), false, 1).unwrap();
        let doc = classification_to_json(&c);
        assert_eq!(doc["case"], json!("Other"));
        assert_eq!(classification_from_json(&doc).unwrap(), c);
    }
}
