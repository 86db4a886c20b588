//! `preserverlab`: JSON front end for the core library.
//!
//! Exit codes: 0 success or holds, 2 invalid input, 3 verification violated,
//! 4 budget exceeded.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use preserverlab_core::canonform::{companion, jordan_over_splitting_field, primary_rational_form};
use preserverlab_core::elemop::{anticommutant, omega_intersection, omega_left, omega_right, spectrum_single_eigenvalue, ElementaryOperator};
use preserverlab_core::exactfield::{Field, FieldHom, UniPoly};
use preserverlab_core::json::{self as pj, SCHEMA_VERSION};
use preserverlab_core::matrixcore::{matrix_count, matrix_from_index, rank_one_idempotents, rank_one_matrices, rank_one_nilpotents, Matrix, SubspaceBasis};
use preserverlab_core::multipoly::{is_identity_on, IdentityMode, MultilinearPoly};
use preserverlab_core::omegaclass::{classify_direct, classify_structural, cross_validate};
use preserverlab_core::oracle::{
    check_spectrum_formula, count_zero_set, enumerate_zero_set, local_linear_dependence, verify_b_structure_lemma,
    verify_nilpotent_proportionality, verify_orthogonality_lemma, verify_zero_detection, OraclePlan, SpectrumPlan,
};
use preserverlab_core::preserver::{
    check_commutativity_preservation, check_maps_zeros, check_rank_one_idempotent_structure, check_zero_kernel, reproduce_example,
    rescale_to_idempotent_preserving, Strategy, EXAMPLE_IDS,
};
use preserverlab_core::{budget, Error};

const EXIT_INVALID: u8 = 2;
const EXIT_VIOLATED: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "preserverlab", version, about = "Exact computations with multilinear matrix polynomials and their zero-set preservers")]
struct Cli {
    /// Worker threads for enumeration; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for every sampled run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial on a tuple of matrices.
    Eval {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        tuple: String,
    },
    /// Count and list the zeros of a polynomial on M_n over a finite field.
    Zeros {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: usize,
        /// Number of zero tuples to list.
        #[arg(long, default_value_t = 8)]
        limit: usize,
    },
    /// Right and left annihilator spaces of A and their intersection.
    Omega {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        poly: String,
    },
    /// Classify the intersection of the annihilator spaces.
    Classify {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        poly: String,
        /// Work over the splitting field of the characteristic polynomial.
        #[arg(long)]
        lift: bool,
        #[arg(long, value_enum, default_value_t = PathArg::Structural)]
        path: PathArg,
    },
    /// Spectrum of X ↦ Σ c_j L^{t−j} X M^j for L, M with one eigenvalue each.
    Spectrum(InputArg),
    /// Companion matrix of a monic polynomial.
    Companion(InputArg),
    /// Primary rational canonical form.
    Rcf(MatrixArg),
    /// Jordan form over the splitting field.
    Jordan(MatrixArg),
    /// Solutions of XA + AX = 0.
    Anticommutant(MatrixArg),
    /// Check a candidate preserver against a pair of polynomials.
    VerifyPreserver(InputArg),
    /// Reproduce the built-in worked examples.
    Examples {
        #[arg(long)]
        id: Option<String>,
    },
    /// Run a lemma oracle.
    Oracle(OracleArgs),
    /// List special sets of matrices.
    Enumerate {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SetArg::Matrices)]
        set: SetArg,
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
}

#[derive(Args)]
struct InputArg {
    /// Request document; stdin when absent or "-".
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args)]
struct MatrixArg {
    /// Matrix document; stdin when absent or "-".
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Structural,
    Direct,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    Matrices,
    Idempotents,
    RankOne,
    Nilpotents,
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaArg {
    Orthogonality,
    ZeroDetection,
    Nilpotent,
    BStructure,
    Spectrum,
    Dependence,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    lemma: LemmaArg,
    /// Field: gf:P, gf:P^K, q, qi, or a JSON field descriptor.
    #[arg(long, default_value = "gf:3")]
    field: String,
    /// Matrix size (maximal block size for the spectrum oracle).
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Sample count: trials, pairs, cases, or coefficient lists per block pair.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Enumerate instead of sampling where the oracle allows it.
    #[arg(long)]
    exhaustive: bool,
    /// Polynomial document for the zero-detection and nilpotent oracles.
    #[arg(long)]
    poly: Option<String>,
    /// Field homomorphism: identity, conjugation or frobenius:E.
    #[arg(long, default_value = "identity")]
    hom: String,
    #[arg(long)]
    transpose: bool,
    #[arg(long, default_value = "1")]
    alpha: String,
    #[arg(long, default_value = "1")]
    beta: String,
    /// Request document for the dependence oracle.
    #[arg(long)]
    input: Option<String>,
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not_prime",
        Error::Reducible { .. } => "reducible",
        Error::FieldMismatch(_) => "field_mismatch",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::Unsupported(_) => "unsupported",
        Error::Budget { .. } => "budget",
        Error::Derogatory => "derogatory",
        Error::NotSplit => "not_split",
        Error::Singular => "singular",
        Error::RankNotOne(_) => "rank_not_one",
        Error::NonMonic => "non_monic",
        Error::Precondition(_) => "precondition",
        Error::Invalid(_) => "invalid",
    }
}

/// The document on stdout and the exit code.
type Outcome = Result<(Value, u8), Failure>;

fn read_text(path: Option<&str>) -> Result<String, Failure> {
    let mut s = String::new();
    match path {
        None | Some("-") => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        }
        Some(p) => s = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("reading {p}: {e}")))?,
    }
    Ok(s)
}

fn read_doc(path: Option<&str>) -> Result<Value, Failure> {
    let text = read_text(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.unwrap_or("stdin"))))?;
    if !v.is_object() {
        return Err(Failure::Input("expected a JSON object".into()));
    }
    pj::check_version(&v)?;
    Ok(v)
}

/// `gf:P`, `gf:P^K`, `q`, `qi`, or an inline JSON descriptor.
fn parse_field(s: &str) -> Result<Field, Failure> {
    let s = s.trim();
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| Failure::Input(format!("field descriptor: {e}")))?;
        return Ok(pj::field_from_json(&v)?);
    }
    let bad = || Failure::Input(format!("unrecognized field {s:?}; use gf:P, gf:P^K, q or qi"));
    match s {
        "q" => Ok(Field::rationals()),
        "qi" => Ok(Field::gaussian()),
        _ => {
            let rest = s.strip_prefix("gf:").ok_or_else(bad)?;
            let (p, k) = match rest.split_once('^') {
                Some((p, k)) => (p, k),
                None => (rest, "1"),
            };
            let p: u64 = p.parse().map_err(|_| bad())?;
            let k: u32 = k.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            Ok(Field::gf_ext(p, k)?)
        }
    }
}

fn parse_hom(s: &str) -> Result<FieldHom, Failure> {
    match s.split_once(':') {
        Some(("frobenius", e)) => Ok(FieldHom::Frobenius(e.parse().map_err(|_| Failure::Input(format!("bad Frobenius power {e:?}")))?)),
        None if s == "frobenius" => Ok(FieldHom::Frobenius(1)),
        None if s == "identity" => Ok(FieldHom::Identity),
        None if s == "conjugation" => Ok(FieldHom::Conjugation),
        _ => Err(Failure::Input(format!("unknown field homomorphism {s:?}"))),
    }
}

/// An element given as a JSON value, or as bare text for strings.
fn parse_elem(field: &Field, s: &str) -> Result<preserverlab_core::exactfield::FieldElem, Failure> {
    let v = serde_json::from_str::<Value>(s).unwrap_or_else(|_| Value::String(s.to_string()));
    let v = match v {
        Value::Number(_) => Value::String(s.to_string()),
        other => other,
    };
    Ok(pj::elem_from_json(field, &v)?)
}

fn square(m: Matrix) -> Result<Matrix, Failure> {
    if m.is_square() && m.rows() > 0 {
        Ok(m)
    } else {
        Err(Error::DimensionMismatch(format!("expected a nonempty square matrix, got {}×{}", m.rows(), m.cols())).into())
    }
}

fn read_matrix(path: Option<&str>, field: Option<&Field>) -> Result<Matrix, Failure> {
    square(pj::matrix_from_json(&read_doc(path)?, field)?)
}

fn read_poly(path: &str, field: Option<&Field>) -> Result<MultilinearPoly, Failure> {
    Ok(pj::poly_from_json(&read_doc(Some(path))?, field)?)
}

fn basis_json(b: &SubspaceBasis) -> Value {
    json!({"dimension": b.dim(), "basis": b.basis().iter().map(pj::rows_to_json).collect::<Vec<_>>()})
}

fn with_version(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("v".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        EXIT_VIOLATED
    }
}

fn run(cli: Cli) -> Outcome {
    let jobs = cli.jobs.max(1);
    let seed = cli.seed;
    match cli.command {
        Command::Eval { poly, tuple } => {
            let p = read_poly(&poly, None)?;
            let t = pj::tuple_doc_from_json(&read_doc(Some(&tuple))?, Some(p.field()))?;
            let value = p.evaluate(&t)?;
            let mut doc = pj::matrix_to_json(&value);
            doc["zero"] = json!(value.is_zero());
            Ok((doc, 0))
        }
        Command::Zeros { poly, n, limit } => {
            let p = read_poly(&poly, None)?;
            if n == 0 {
                return Err(Failure::Input("n must be positive".into()));
            }
            let count = count_zero_set(&p, n, jobs)?;
            let ident = is_identity_on(&p, n, IdentityMode::Exhaustive, jobs)?;
            let total = budget::pow_sat(matrix_count(p.field(), n, n)?, p.k() as u32);
            let listed: Vec<Value> = enumerate_zero_set(&p, n)?.take(limit).map(|t| Value::Array(t.iter().map(pj::rows_to_json).collect())).collect();
            let witness = ident.witness.as_ref().map_or(Value::Null, |t| Value::Array(t.iter().map(pj::rows_to_json).collect()));
            let value = ident.value.as_ref().map_or(Value::Null, pj::rows_to_json);
            let doc = json!({
                "field": pj::field_to_json(p.field()),
                "n": n,
                "k": p.k(),
                "total": total.to_string(),
                "count": count.to_string(),
                "identity": ident.identity,
                "witness": witness,
                "witness_value": value,
                "zeros": listed,
            });
            Ok((with_version(doc), 0))
        }
        Command::Omega { matrix, poly } => {
            let p = read_poly(&poly, None)?;
            let a = read_matrix(Some(&matrix), Some(p.field()))?;
            let np = p.normalize()?;
            let doc = json!({
                "field": pj::field_to_json(a.field()),
                "n": a.rows(),
                "right": basis_json(&omega_right(&a, &np)?.basis),
                "left": basis_json(&omega_left(&a, &np)?.basis),
                "intersection": basis_json(&omega_intersection(&a, &np)?),
            });
            Ok((with_version(doc), 0))
        }
        Command::Classify { matrix, poly, lift, path } => {
            let p = read_poly(&poly, None)?;
            let a = read_matrix(Some(&matrix), Some(p.field()))?;
            let np = p.normalize()?;
            let doc = match path {
                PathArg::Structural => pj::classification_to_json(&classify_structural(&a, &np, lift)?),
                PathArg::Direct => pj::classification_to_json(&classify_direct(&a, &np, lift, jobs)?),
                PathArg::Both => {
                    if !lift {
                        return Err(Failure::Input("--path both compares the paths over the splitting field; pass --lift".into()));
                    }
                    let r = cross_validate(&a, &np, jobs)?;
                    let doc = json!({
                        "agree": r.agree,
                        "structural": pj::classification_to_json(&r.structural),
                        "direct": pj::classification_to_json(&r.direct),
                    });
                    return Ok((with_version(doc), status(r.agree)));
                }
            };
            Ok((doc, 0))
        }
        Command::Spectrum(InputArg { input }) => {
            let req = read_doc(input.as_deref())?;
            let f = pj::field_from_json(req.get("field").ok_or_else(|| Failure::Input("missing key \"field\"".into()))?)?;
            let get = |k: &str| req.get(k).ok_or_else(|| Failure::Input(format!("missing key {k:?}")));
            let l = square(pj::rows_from_json(&f, get("left")?)?)?;
            let m = square(pj::rows_from_json(&f, get("right")?)?)?;
            let raw: Vec<_> = get("coeffs")?
                .as_array()
                .ok_or_else(|| Failure::Input("coeffs must be an array".into()))?
                .iter()
                .map(|c| pj::elem_from_json(&f, c))
                .collect::<Result<_, _>>()?;
            if raw.is_empty() {
                return Err(Failure::Input("coeffs must be nonempty".into()));
            }
            let value = spectrum_single_eigenvalue(&l, &m, &raw)?;
            let op = ElementaryOperator::new(&l, &m, raw)?.kron_matrix();
            let cp = op.char_poly();
            let singleton = cp == UniPoly::linear(&f, &value).pow(op.rows() as u64);
            let doc = json!({
                "field": pj::field_to_json(&f),
                "value": pj::elem_to_json(&f, &value),
                "char_poly": pj::unipoly_to_json(&cp),
                "singleton": singleton,
            });
            Ok((with_version(doc), status(singleton)))
        }
        Command::Companion(InputArg { input }) => {
            let req = read_doc(input.as_deref())?;
            let f = pj::field_from_json(req.get("field").ok_or_else(|| Failure::Input("missing key \"field\"".into()))?)?;
            let poly = pj::unipoly_from_json(&f, req.get("coeffs").ok_or_else(|| Failure::Input("missing key \"coeffs\"".into()))?)?;
            let c = companion(&poly)?;
            let cp = c.matrix.char_poly();
            let doc = json!({
                "field": pj::field_to_json(&f),
                "poly": pj::unipoly_to_json(&c.f),
                "rows": pj::rows_to_json(&c.matrix),
                "char_poly": pj::unipoly_to_json(&cp),
                "char_poly_matches": cp == c.f,
            });
            Ok((with_version(doc), 0))
        }
        Command::Rcf(MatrixArg { matrix }) => {
            let a = read_matrix(matrix.as_deref(), None)?;
            let rf = primary_rational_form(&a)?;
            let blocks: Vec<Value> = rf
                .blocks
                .iter()
                .map(|b| {
                    json!({
                        "factor": pj::unipoly_to_json(&b.factor),
                        "exponent": b.exponent,
                        "poly": pj::unipoly_to_json(&b.companion.f),
                        "size": b.companion.matrix.rows(),
                    })
                })
                .collect();
            let doc = json!({
                "field": pj::field_to_json(a.field()),
                "blocks": blocks,
                "transform": pj::rows_to_json(&rf.transform),
                "form": pj::rows_to_json(&rf.block_matrix()),
            });
            Ok((with_version(doc), 0))
        }
        Command::Jordan(MatrixArg { matrix }) => {
            let a = read_matrix(matrix.as_deref(), None)?;
            let jd = jordan_over_splitting_field(&a)?;
            let f = &jd.field;
            let blocks: Vec<Value> = jd
                .eigenvalues
                .iter()
                .zip(&jd.sizes)
                .zip(&jd.cells)
                .map(|((lambda, size), cells)| {
                    json!({
                        "eigenvalue": pj::elem_to_json(f, lambda),
                        "size": size,
                        "cells": cells,
                        "poly": pj::unipoly_to_json(&UniPoly::linear(f, lambda).pow(*size as u64)),
                    })
                })
                .collect();
            let doc = json!({
                "base_field": pj::field_to_json(a.field()),
                "field": pj::field_to_json(f),
                "blocks": blocks,
                "transform": pj::rows_to_json(&jd.similarity),
                "form": pj::rows_to_json(&jd.jordan_matrix()),
            });
            Ok((with_version(doc), 0))
        }
        Command::Anticommutant(MatrixArg { matrix }) => {
            let a = read_matrix(matrix.as_deref(), None)?;
            let mut doc = basis_json(&anticommutant(&a)?);
            doc["field"] = pj::field_to_json(a.field());
            doc["n"] = json!(a.rows());
            Ok((with_version(doc), 0))
        }
        Command::VerifyPreserver(InputArg { input }) => verify_preserver(&read_doc(input.as_deref())?, jobs),
        Command::Examples { id } => match id {
            Some(id) => {
                let r = reproduce_example(&id, jobs)?;
                Ok((pj::example_report_to_json(&r)?, status(r.matches)))
            }
            None => {
                let mut reports = Vec::new();
                let mut all = true;
                for id in EXAMPLE_IDS {
                    let r = reproduce_example(id, jobs)?;
                    all &= r.matches;
                    reports.push(pj::example_report_to_json(&r)?);
                }
                Ok((with_version(json!({"all_match": all, "reports": reports})), status(all)))
            }
        },
        Command::Oracle(args) => oracle(args, seed, jobs),
        Command::Enumerate { field, n, set, limit } => {
            let f = parse_field(&field)?;
            if n == 0 {
                return Err(Failure::Input("n must be positive".into()));
            }
            let (name, items, total): (&str, Vec<Matrix>, u128) = match set {
                SetArg::Matrices => {
                    let total = matrix_count(&f, n, n)?;
                    let shown = (0..total.min(limit as u128)).map(|i| matrix_from_index(&f, n, n, i)).collect();
                    ("matrices", shown, total)
                }
                SetArg::Idempotents => {
                    let all = rank_one_idempotents(&f, n)?;
                    let t = all.len() as u128;
                    ("rank_one_idempotents", all, t)
                }
                SetArg::RankOne => {
                    let all = rank_one_matrices(&f, n)?;
                    let t = all.len() as u128;
                    ("rank_one", all, t)
                }
                SetArg::Nilpotents => {
                    let all = rank_one_nilpotents(&f, n)?;
                    let t = all.len() as u128;
                    ("rank_one_nilpotents", all, t)
                }
            };
            let doc = json!({
                "field": pj::field_to_json(&f),
                "n": n,
                "set": name,
                "count": total.to_string(),
                "items": items.iter().take(limit).map(pj::rows_to_json).collect::<Vec<_>>(),
            });
            Ok((with_version(doc), 0))
        }
    }
}

fn verify_preserver(req: &Value, jobs: usize) -> Outcome {
    let missing = |k: &str| Failure::Input(format!("missing key {k:?}"));
    let spec = pj::spec_from_json(req.get("spec").ok_or_else(|| missing("spec"))?)?;
    let f = spec.field.clone();
    let poly = |k: &str| -> Result<Option<MultilinearPoly>, Failure> {
        req.get(k).filter(|v| !v.is_null()).map(|v| pj::poly_from_json(v, Some(&f)).map_err(Failure::from)).transpose()
    };
    let p1 = poly("p1")?;
    let p2 = poly("p2")?.or_else(|| p1.clone());
    let strong = match req.get("strong") {
        None | Some(Value::Null) => false,
        Some(v) => v.as_bool().ok_or_else(|| Failure::Input("strong must be a boolean".into()))?,
    };
    let strategy = match req.get("strategy").filter(|v| !v.is_null()) {
        None => Strategy::witnesses(),
        Some(v) => pj::strategy_from_json(&f, spec.n, v)?,
    };
    let check = req.get("check").and_then(Value::as_str).unwrap_or("zeros");
    let need = |p: Option<MultilinearPoly>| p.ok_or_else(|| missing("p1"));
    match check {
        "zeros" => {
            let v = check_maps_zeros(&need(p1)?, &need(p2)?, &spec, strong, &strategy, jobs)?;
            Ok((pj::verdict_to_json(&f, &v), status(v.holds())))
        }
        "commutativity" => {
            let v = check_commutativity_preservation(&spec, strong, &strategy, jobs)?;
            Ok((pj::verdict_to_json(&f, &v), status(v.holds())))
        }
        "zero_kernel" => {
            let v = check_zero_kernel(&spec, &strategy, jobs)?;
            Ok((pj::verdict_to_json(&f, &v), status(v.holds())))
        }
        "idempotents" => {
            let r = check_rank_one_idempotent_structure(&spec, &need(p1)?, jobs)?;
            Ok((pj::idempotent_report_to_json(&f, &r), status(r.holds())))
        }
        "rescale" => Ok((pj::spec_to_json(&rescale_to_idempotent_preserving(&spec, &need(p1)?, jobs)?), 0)),
        other => Err(Failure::Input(format!(
            "unknown check {other:?}; expected zeros, commutativity, zero_kernel, idempotents or rescale"
        ))),
    }
}

/// xy + yx, or xy where 2 = 0 and the Jordan product is derogatory.
fn default_generic_poly(f: &Field) -> MultilinearPoly {
    if f.characteristic() == 2 {
        MultilinearPoly::product(f)
    } else {
        MultilinearPoly::jordan(f)
    }
}

fn oracle(a: OracleArgs, seed: u64, jobs: usize) -> Outcome {
    let f = parse_field(&a.field)?;
    let poly = || -> Result<MultilinearPoly, Failure> {
        match &a.poly {
            Some(path) => read_poly(path, Some(&f)),
            None => Ok(default_generic_poly(&f)),
        }
    };
    let report = match a.lemma {
        LemmaArg::Orthogonality => {
            let plan = if a.exhaustive { OraclePlan::Exhaustive } else { OraclePlan::Sample { trials: a.trials, seed } };
            verify_orthogonality_lemma(&f, a.n, plan, jobs)?
        }
        LemmaArg::ZeroDetection => {
            let r = verify_zero_detection(&poly()?, a.n, jobs)?;
            let doc = json!({
                "rank_one": pj::lemma_report_to_json(&r.rank_one)?,
                "diagonal_units": pj::lemma_report_to_json(&r.diagonal_units)?,
            });
            let ok = r.rank_one.passed() && r.diagonal_units.passed();
            return Ok((with_version(doc), status(ok)));
        }
        LemmaArg::Nilpotent => verify_nilpotent_proportionality(&poly()?, a.n, parse_hom(&a.hom)?, a.transpose, a.trials, seed, jobs)?,
        LemmaArg::BStructure => {
            let alpha = parse_elem(&f, &a.alpha)?;
            let beta = parse_elem(&f, &a.beta)?;
            verify_b_structure_lemma(&f, a.n, parse_hom(&a.hom)?, &alpha, &beta, a.trials, seed, jobs)?
        }
        LemmaArg::Spectrum => {
            let plan = if a.exhaustive {
                SpectrumPlan::AllBlocks { lists: u32::try_from(a.trials).map_err(|_| Failure::Input("too many lists".into()))? }
            } else {
                SpectrumPlan::Random { cases: u32::try_from(a.trials).map_err(|_| Failure::Input("too many cases".into()))? }
            };
            check_spectrum_formula(&f, a.n, plan, seed, jobs)?
        }
        LemmaArg::Dependence => {
            let req = read_doc(a.input.as_deref())?;
            let ms = pj::tuple_doc_from_json(&req, None)?;
            let [r1, r2, r3] = ms.as_slice() else {
                return Err(Failure::Input("the dependence oracle takes exactly three matrices".into()));
            };
            let r = local_linear_dependence([r1, r2, r3])?;
            let doc = json!({
                "field": pj::field_to_json(r1.field()),
                "dependent_everywhere": r.dependent_everywhere,
                "independent_at": r.independent_at.as_ref().map_or(Value::Null, pj::rows_to_json),
                "globally_dependent": r.globally_dependent,
                "common_three_dim_image": r.common_three_dim_image,
                "projection": r.projection.as_ref().map_or(Value::Null, pj::rows_to_json),
                "conclusion_case": r.conclusion_case.name(),
            });
            return Ok((with_version(doc), 0));
        }
    };
    let ok = report.passed();
    Ok((pj::lemma_report_to_json(&report)?, status(ok)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((doc, code)) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            ExitCode::from(code)
        }
        Err(f) => {
            let (kind, message, code) = match f {
                Failure::Input(m) => ("invalid", m, EXIT_INVALID),
                Failure::Core(e) => {
                    let code = if matches!(e, Error::Budget { .. }) { EXIT_BUDGET } else { EXIT_INVALID };
                    (error_kind(&e), e.to_string(), code)
                }
            };
            let doc = json!({"v": SCHEMA_VERSION, "error": {"kind": kind, "message": message}, "exit_code": code});
            let _ = writeln!(std::io::stderr(), "{}", serde_json::to_string(&doc).expect("serializable"));
            ExitCode::from(code)
        }
    }
}
