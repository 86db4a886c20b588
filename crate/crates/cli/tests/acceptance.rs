//! Acceptance criteria 1–10, one PASS/FAIL line each.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use preserverlab_core::canonform::{companion, primary_rational_form};
use preserverlab_core::elemop::omega_intersection;
use preserverlab_core::exactfield::{Field, FieldElem, FieldHom, UniPoly};
use preserverlab_core::matrixcore::{count_rank_one_idempotents, matrix_count, matrix_from_index, rank_one_idempotents, Matrix, SubspaceBasis};
use preserverlab_core::multipoly::{is_identity_on, IdentityMode, MultilinearPoly};
use preserverlab_core::omegaclass::{classify_direct, cross_validate, find_rank_one_square_zero, OmegaCase};
use preserverlab_core::oracle::{
    check_spectrum_formula, verify_nilpotent_proportionality, verify_orthogonality_lemma, verify_zero_detection, OraclePlan, SpectrumPlan,
};
use preserverlab_core::preserver::{
    check_maps_zeros, check_rank_one_idempotent_structure, check_zero_kernel, reproduce_example, EntryTweak, Gamma, PreserverSpec, Shift,
    Strategy, EXAMPLE_IDS,
};

const JOBS: usize = 4;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn random_matrix(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::new(f, n, n, (0..n * n).map(|_| f.random(rng)).collect()).unwrap()
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let s = random_matrix(f, n, rng);
        if s.inverse().is_some() {
            return s;
        }
    }
}

fn spectrum_law() -> Check {
    let f5 = Field::gf(5).unwrap();
    let r = ok(check_spectrum_formula(&f5, 3, SpectrumPlan::AllBlocks { lists: 50 }, 1, JOBS))?;
    // 9 size pairs × 25 eigenvalue pairs × 50 lists
    ensure(r.instances == 9 * 25 * 50, || format!("{} instances", r.instances))?;
    ensure(r.passed(), || format!("{} failures, first: {}", r.failures.len(), r.failures[0].description))?;
    Ok(format!("{} block pairs with coefficient lists, zero failures", r.instances))
}

fn trichotomy() -> Check {
    let f3 = Field::gf(3).unwrap();
    let np = ok(MultilinearPoly::jordan(&f3).normalize())?;
    let mut cases = std::collections::BTreeMap::<&str, usize>::new();
    let mut check = |a: &Matrix| -> Result<(), String> {
        let r = ok(cross_validate(a, &np, JOBS))?;
        ensure(r.agree, || format!("paths disagree on [{}]: {}", a.canonical_key(), r.diagnostic()))?;
        ensure(!matches!(r.structural.case, OmegaCase::Other { .. }), || format!("Other on [{}]", a.canonical_key()))?;
        *cases.entry(r.structural.case.kind()).or_default() += 1;
        Ok(())
    };
    for i in 0..81 {
        check(&matrix_from_index(&f3, 2, 2, i))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        check(&random_matrix(&f3, 3, &mut rng))?;
    }
    Ok(format!("81 + 1000 matrices, paths agree, cases {cases:?}"))
}

fn real_counterexample() -> Check {
    let q = Field::rationals();
    let a = Matrix::from_i64(&q, 2, 2, &[0, -3, 1, 0]).direct_sum(&Matrix::identity(&q, 1));
    let np = ok(MultilinearPoly::jordan(&q).normalize())?;
    let w = ok(omega_intersection(&a, &np))?;
    ensure(w.dim() == 2, || format!("dimension {}", w.dim()))?;
    ensure(ok(find_rank_one_square_zero(&w, 1))?.is_none(), || "square-zero rank-one member found".into())?;
    let c = ok(classify_direct(&a, &np, false, 1))?;
    ensure(matches!(c.case, OmegaCase::Other { .. }), || format!("classified as {}", c.case.kind()))?;
    Ok("dimension 2, no square-zero rank-one member, Other".into())
}

fn idempotent_lines() -> Check {
    let mut total = 0;
    for (p, n) in [(3, 2), (5, 3)] {
        let f = Field::gf(p).unwrap();
        let np = ok(MultilinearPoly::jordan(&f).normalize())?;
        let ps = ok(rank_one_idempotents(&f, n))?;
        let expected = count_rank_one_idempotents(p as u128, n as u32);
        ensure(ps.len() as u128 == expected, || format!("{} idempotents in M_{n}(GF({p})), expected {expected}", ps.len()))?;
        for pm in &ps {
            let a = Matrix::identity(&f, n).sub(pm);
            let w = ok(omega_intersection(&a, &np))?;
            let line = ok(SubspaceBasis::span(&f, n, std::slice::from_ref(pm)))?;
            ensure(w.dim() == 1 && w == line, || format!("P = [{}]: dimension {}", pm.canonical_key(), w.dim()))?;
        }
        total += ps.len();
    }
    Ok(format!("{total} idempotents (12 in M_2(GF(3)), 775 in M_3(GF(5))), each intersection is span{{P}}"))
}

fn amitsur_levitzki() -> Check {
    let f2 = Field::gf(2).unwrap();
    let s4 = ok(MultilinearPoly::standard_polynomial(&f2, 4))?;
    let v = ok(is_identity_on(&s4, 2, IdentityMode::Exhaustive, JOBS))?;
    ensure(v.identity && v.checked == 65536, || format!("s4: identity {}, checked {}", v.identity, v.checked))?;
    let s2 = MultilinearPoly::commutator(&f2);
    let w = ok(is_identity_on(&s2, 2, IdentityMode::Exhaustive, JOBS))?;
    let t = w.witness.ok_or("s2 has no witness")?;
    let value = ok(s2.evaluate(&t))?;
    ensure(!value.is_zero(), || "s2 witness evaluates to zero".into())?;
    Ok(format!("s4 vanishes on all 65536 tuples; s2 witness ([{}], [{}])", t[0].canonical_key(), t[1].canonical_key()))
}

fn worked_examples() -> Check {
    let e = |f: &Field, n: usize, i: usize, j: usize| Matrix::unit(f, n, i - 1, j - 1);
    for id in EXAMPLE_IDS {
        let r = ok(reproduce_example(id, JOBS))?;
        ensure(r.matches, || format!("{id}: expected {:?}, computed {:?}", r.expected, r.computed))?;
        let witness = r.verdict.as_ref().and_then(|v| v.witness.as_ref()).map(|w| w.tuple.clone());
        match id {
            "add_a12" => {
                let f = Field::gf(3).unwrap();
                ensure(witness == Some(vec![e(&f, 3, 1, 1), e(&f, 3, 1, 2), e(&f, 3, 1, 2)]), || format!("add_a12 witness {witness:?}"))?;
            }
            "transpose_xy" => {
                let q = Field::rationals();
                ensure(witness == Some(vec![e(&q, 2, 1, 1), e(&q, 2, 2, 1)]), || format!("transpose witness {witness:?}"))?;
            }
            "gaussian_conjugation" => {
                let g = Field::gaussian();
                let i = g.imaginary_unit().unwrap();
                let a = Matrix::from_i64(&g, 2, 2, &[1, 1, -1, 1]);
                let b = Matrix::new(&g, 2, 2, vec![g.one(), i.clone(), i, g.from_i64(-1)]).unwrap();
                ensure(witness == Some(vec![a, b]), || "Gaussian witness differs".into())?;
            }
            "trace_kernel" => {
                let f = Field::gf(5).unwrap();
                let spec = ok(PreserverSpec::tweak_only(&f, 3, EntryTweak::SubtractTraceOverN))?;
                ensure(ok(spec.apply(&Matrix::identity(&f, 3)))?.is_zero(), || "Φ(Id) ≠ 0".into())?;
            }
            _ => {}
        }
    }
    Ok(format!("{} examples reproduce with their witnesses", EXAMPLE_IDS.len()))
}

fn sufficient_condition() -> Check {
    let f2 = Field::gf(2).unwrap();
    let f4 = Field::gf_ext(2, 2).unwrap();
    let g = f4.elem(2);
    let g2 = f4.mul(&g, &g);
    let specs: Vec<(Field, Matrix, FieldHom, FieldElem)> = vec![
        (f2.clone(), Matrix::from_i64(&f2, 2, 2, &[1, 1, 0, 1]), FieldHom::Identity, f2.one()),
        (f2.clone(), Matrix::from_i64(&f2, 2, 2, &[0, 1, 1, 1]), FieldHom::Identity, f2.one()),
        (f4.clone(), Matrix::new(&f4, 2, 2, vec![f4.one(), g.clone(), f4.zero(), f4.one()]).unwrap(), FieldHom::Frobenius(1), g.clone()),
        (f4.clone(), Matrix::new(&f4, 2, 2, vec![g.clone(), f4.one(), f4.one(), f4.zero()]).unwrap(), FieldHom::Frobenius(1), g2.clone()),
        (f4.clone(), Matrix::new(&f4, 2, 2, vec![g2, f4.zero(), g.clone(), f4.one()]).unwrap(), FieldHom::Identity, g),
    ];
    let mut runs = 0;
    for (f, t, hom, gamma) in specs {
        let spec = ok(PreserverSpec::parametric(t, hom, false, Gamma::Constant(gamma), Shift::None, EntryTweak::None))?;
        for p in [MultilinearPoly::product(&f), MultilinearPoly::commutator(&f)] {
            let v = ok(check_maps_zeros(&p, &p, &spec, true, &Strategy::Exhaustive, JOBS))?;
            ensure(v.holds(), || format!("{} over {} violated at index {:?}", p.to_pretty(), f.name(), v.witness.map(|w| w.index)))?;
            let total = matrix_count(&f, 2, 2).unwrap().pow(2);
            ensure(v.strategy.total == total && v.strategy.checked == total, || format!("checked {} of {total}", v.strategy.checked))?;
            runs += 1;
        }
        let k = ok(check_zero_kernel(&spec, &Strategy::Exhaustive, JOBS))?;
        ensure(k.holds(), || format!("zero kernel fails over {}", f.name()))?;
        let r = ok(check_rank_one_idempotent_structure(&spec, &MultilinearPoly::product(&f), JOBS))?;
        ensure(r.holds(), || format!("{} idempotent exceptions over {}", r.exceptions.len(), f.name()))?;
    }
    Ok(format!("{runs} exhaustive strong runs, zero kernel and idempotent structure hold"))
}

fn rational_forms() -> Check {
    let f7 = Field::gf(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let d = rng.gen_range(1..=6);
        let mut cs: Vec<FieldElem> = (0..d).map(|_| f7.random(&mut rng)).collect();
        cs.push(f7.one());
        let f = UniPoly::new(&f7, cs);
        let c = ok(companion(&f))?;
        ensure(c.matrix.char_poly() == f, || format!("char poly of C({}) differs", f.to_pretty()))?;
    }
    let f3 = Field::gf(3).unwrap();
    for _ in 0..200 {
        let a = random_matrix(&f3, 4, &mut rng);
        let rf = ok(primary_rational_form(&a))?;
        let p_inv = rf.transform.inverse().ok_or("singular transform")?;
        ensure(p_inv.mul(&a).mul(&rf.transform) == rf.block_matrix(), || format!("P⁻¹AP ≠ blocks for [{}]", a.canonical_key()))?;
    }
    for _ in 0..100 {
        let a = random_matrix(&f3, 4, &mut rng);
        let s = random_invertible(&f3, 4, &mut rng);
        let b = s.mul(&a).mul(&s.inverse().unwrap());
        let (ra, rb) = (ok(primary_rational_form(&a))?, ok(primary_rational_form(&b))?);
        ensure(ra.invariants() == rb.invariants() && ra.block_matrix() == rb.block_matrix(), || {
            format!("forms of A and SAS⁻¹ differ for A = [{}]", a.canonical_key())
        })?;
    }
    Ok("200 companions, 200 similarity checks, 100 invariance checks".into())
}

fn oracle_suite() -> Check {
    let f3 = Field::gf(3).unwrap();
    let o = ok(verify_orthogonality_lemma(&f3, 2, OraclePlan::Exhaustive, JOBS))?;
    ensure(o.passed() && o.exhaustive, || format!("orthogonality: {} failures", o.failures.len()))?;
    let jp = MultilinearPoly::jordan(&f3);
    for n in [2, 3] {
        let z = ok(verify_zero_detection(&jp, n, JOBS))?;
        ensure(z.rank_one.passed() && z.diagonal_units.passed(), || format!("zero detection on M_{n}(GF(3)) fails"))?;
    }
    let f5 = Field::gf(5).unwrap();
    let nil = ok(verify_nilpotent_proportionality(&MultilinearPoly::jordan(&f5), 3, FieldHom::Identity, false, 100, 9, JOBS))?;
    ensure(nil.instances == 100, || format!("{} nilpotent pairs", nil.instances))?;
    ensure(nil.passed() && nil.converse_failures.is_empty(), || {
        format!("nilpotent: {} failures, {} converse failures", nil.failures.len(), nil.converse_failures.len())
    })?;
    let s = ok(check_spectrum_formula(&f5, 3, SpectrumPlan::Random { cases: 200 }, 10, JOBS))?;
    ensure(s.passed() && s.instances == 200, || format!("spectrum: {} failures", s.failures.len()))?;
    Ok(format!("orthogonality ({} instances), zero detection n = 2, 3, nilpotent 100 pairs both ways, spectrum 200", o.instances))
}

fn run_cli(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_preserverlab")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("preserverlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let request = dir.join("sampled.json");
    let f5 = Field::gf(5).unwrap();
    let spec = PreserverSpec::tweak_only(&f5, 3, EntryTweak::SubtractTraceOverN).unwrap();
    let req = serde_json::json!({
        "v": 1,
        "spec": preserverlab_core::json::spec_to_json(&spec),
        "p1": preserverlab_core::json::poly_to_json(&MultilinearPoly::commutator(&f5)),
        "strong": true,
        "strategy": {"mode": "sample", "count": "3000", "seed": "21"},
    });
    std::fs::write(&request, req.to_string()).map_err(|e| e.to_string())?;
    let request = request.to_str().unwrap().to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["oracle", "--lemma", "spectrum", "--field", "gf:5", "--n", "3", "--trials", "200", "--seed", "31"],
        vec!["oracle", "--lemma", "nilpotent", "--field", "gf:5", "--n", "3", "--trials", "100", "--seed", "32"],
        vec!["oracle", "--lemma", "orthogonality", "--field", "gf:5", "--n", "3", "--trials", "500", "--seed", "33"],
        vec!["oracle", "--lemma", "b-structure", "--field", "gf:3", "--n", "4", "--trials", "60", "--seed", "34"],
        vec!["verify-preserver", "--input", &request],
        vec!["examples"],
    ];
    for args in &runs {
        let (base, code) = run_cli(args)?;
        ensure(code == 0, || format!("{args:?} exited with {code}"))?;
        serde_json::from_slice::<Value>(&base).map_err(|e| format!("{args:?}: {e}"))?;
        for jobs in ["1", "4", "4"] {
            let mut a: Vec<&str> = args.clone();
            a.extend(["--jobs", jobs]);
            let (again, _) = run_cli(&a)?;
            ensure(again == base, || format!("{args:?} with --jobs {jobs} differs"))?;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} sampled CLI runs byte-identical across repeats and --jobs 1/4", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("singleton spectrum of Jordan-block operators", spectrum_law),
        ("trichotomy, structural and direct paths", trichotomy),
        ("trichotomy failure over the rationals", real_counterexample),
        ("idempotent lines", idempotent_lines),
        ("standard polynomials on M_2(GF(2))", amitsur_levitzki),
        ("worked examples", worked_examples),
        ("sufficient-condition preservation", sufficient_condition),
        ("rational canonical forms", rational_forms),
        ("lemma oracle suite", oracle_suite),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {:>2}: PASS  {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
