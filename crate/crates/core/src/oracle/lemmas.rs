use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Failure, LemmaReport};
use crate::budget;
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElem, FieldHom};
use crate::matrixcore::{
    matrix_count, matrix_from_index, normalized_vectors, rank_one_idempotents, rank_one_matrices, rank_one_nilpotents,
    Matrix,
};
use crate::multipoly::{MultilinearPoly, NormalizedPoly};
use crate::par;

fn finite_order(field: &Field) -> Result<u128> {
    field
        .order()
        .map(|q| q as u128)
        .ok_or_else(|| Error::Unsupported("lemma oracles need a finite field".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrthogonalityInstance {
    /// 1 + μ + ν = 0.
    Excluded,
    /// One of the two equations fails.
    NotApplicable,
    /// Both equations hold and PX = 0 = XP.
    Holds,
    /// Both equations hold but PX ≠ 0 or XP ≠ 0.
    Violated,
}

/// Classifies one instance of PX + μPXP + νXP = 0 = XP + μ′PXP + ν′PX.
pub fn orthogonality_instance(p: &Matrix, x: &Matrix, s: [&FieldElem; 4]) -> OrthogonalityInstance {
    let f = p.field();
    let [mu, nu, mu2, nu2] = s;
    let (px, xp) = (p.mul(x), x.mul(p));
    let pxp = px.mul(p);
    classify_ortho(f, &px, &xp, &pxp, [mu, nu, mu2, nu2])
}

fn classify_ortho(f: &Field, px: &Matrix, xp: &Matrix, pxp: &Matrix, s: [&FieldElem; 4]) -> OrthogonalityInstance {
    let [mu, nu, mu2, nu2] = s;
    if f.is_zero(&f.add(&f.add(&f.one(), mu), nu)) {
        return OrthogonalityInstance::Excluded;
    }
    let e1 = px.add(&pxp.scale(mu)).add(&xp.scale(nu));
    let e2 = xp.add(&pxp.scale(mu2)).add(&px.scale(nu2));
    if !e1.is_zero() || !e2.is_zero() {
        OrthogonalityInstance::NotApplicable
    } else if px.is_zero() && xp.is_zero() {
        OrthogonalityInstance::Holds
    } else {
        OrthogonalityInstance::Violated
    }
}

fn ortho_failure(p: &Matrix, x: &Matrix, s: &[FieldElem; 4]) -> Failure {
    Failure {
        description: "both equations hold but PX or XP is nonzero".into(),
        matrices: vec![("P".into(), p.clone()), ("X".into(), x.clone())],
        scalars: ["mu", "nu", "mu2", "nu2"].iter().map(|s| s.to_string()).zip(s.iter().cloned()).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OraclePlan {
    Exhaustive,
    Sample { trials: u64, seed: u64 },
}

/// Exhaustive mode runs over all idempotents P, all X and all scalar
/// quadruples with 1 + μ + ν ≠ 0. Sample mode draws P = S·D·S⁻¹, the
/// scalars, and X uniformly from the solution space of the two equations.
pub fn verify_orthogonality_lemma(field: &Field, n: usize, plan: OraclePlan, jobs: usize) -> Result<LemmaReport> {
    let q = finite_order(field)?;
    let elems: Vec<FieldElem> = field.elements().collect();
    let mut report = LemmaReport {
        lemma: "orthogonality".into(),
        field: field.descriptor(),
        n,
        instances: 0,
        applicable: 0,
        failures: Vec::new(),
        converse_failures: Vec::new(),
        exhaustive: plan == OraclePlan::Exhaustive,
        seed: None,
    };
    match plan {
        OraclePlan::Exhaustive => {
            let per = matrix_count(field, n, n)?;
            budget::check(per, budget::MATRIX_BUDGET)?;
            let mats: Vec<Matrix> = (0..per).map(|i| matrix_from_index(field, n, n, i)).collect();
            let idem: Vec<&Matrix> = mats.iter().filter(|m| m.mul(m) == **m).collect();
            let mut scalars = Vec::new();
            for a in &elems {
                for b in &elems {
                    if field.is_zero(&field.add(&field.add(&field.one(), a), b)) {
                        continue;
                    }
                    for c in &elems {
                        for d in &elems {
                            scalars.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                        }
                    }
                }
            }
            let total = idem.len() as u128 * per * scalars.len() as u128;
            budget::check(total, budget::TUPLE_BUDGET)?;
            let results = par::map_range(idem.len() * mats.len(), jobs, |i| {
                let (p, x) = (idem[i / mats.len()], &mats[i % mats.len()]);
                let (px, xp) = (p.mul(x), x.mul(p));
                let pxp = px.mul(p);
                let mut applicable = 0u128;
                let mut fails = Vec::new();
                for s in &scalars {
                    match classify_ortho(field, &px, &xp, &pxp, [&s[0], &s[1], &s[2], &s[3]]) {
                        OrthogonalityInstance::Holds => applicable += 1,
                        OrthogonalityInstance::Violated => {
                            applicable += 1;
                            fails.push(ortho_failure(p, x, s));
                        }
                        _ => {}
                    }
                }
                (applicable, fails)
            });
            report.instances = total;
            for (a, f) in results {
                report.applicable += a;
                report.failures.extend(f);
            }
        }
        OraclePlan::Sample { trials, seed } => {
            report.seed = Some(seed);
            report.instances = trials as u128;
            let nn = n * n;
            let id = Matrix::identity(field, n);
            let results = par::map_range(trials as usize, jobs, |t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t as u64);
                let rank = rng.gen_range(0..=n);
                let d = Matrix::diag(field, &(0..n).map(|i| if i < rank { field.one() } else { field.zero() }).collect::<Vec<_>>());
                let s = loop {
                    let s = Matrix::raw(field, n, n, (0..nn).map(|_| field.random(&mut rng)).collect());
                    if s.inverse().is_some() {
                        break s;
                    }
                };
                let p = s.mul(&d).mul(&s.inverse().unwrap());
                let sc = loop {
                    let sc: [FieldElem; 4] = std::array::from_fn(|_| field.elem(rng.gen_range(0..q as u64)));
                    if !field.is_zero(&field.add(&field.add(&field.one(), &sc[0]), &sc[1])) {
                        break sc;
                    }
                };
                let left = id.kron(&p);
                let right = p.transpose().kron(&id);
                let both = p.transpose().kron(&p);
                let e1 = left.add(&both.scale(&sc[0])).add(&right.scale(&sc[1]));
                let e2 = right.add(&both.scale(&sc[2])).add(&left.scale(&sc[3]));
                let mut stacked = Vec::with_capacity(2 * nn * nn);
                stacked.extend(e1.entries().iter().cloned());
                stacked.extend(e2.entries().iter().cloned());
                let sys = Matrix::raw(field, 2 * nn, nn, stacked);
                let kernel = sys.null_space();
                let mut v = Matrix::zeros(field, nn, 1);
                for b in &kernel {
                    v = v.add(&b.scale(&field.random(&mut rng)));
                }
                let x = Matrix::unvec(&v, n);
                match orthogonality_instance(&p, &x, [&sc[0], &sc[1], &sc[2], &sc[3]]) {
                    OrthogonalityInstance::Holds => (1u128, None),
                    OrthogonalityInstance::Violated => (1, Some(ortho_failure(&p, &x, &sc))),
                    _ => (0, None),
                }
            });
            for (a, f) in results {
                report.applicable += a;
                report.failures.extend(f);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDetectionReport {
    /// Witnesses X drawn from all rank-one matrices.
    pub rank_one: LemmaReport,
    /// Witnesses X drawn from E_11, …, E_nn only.
    pub diagonal_units: LemmaReport,
}

/// For every A in M_n(F): A = 0 exactly when p(A, X, …, X) = 0 for every
/// witness X, checked for both witness sets.
pub fn verify_zero_detection(p: &MultilinearPoly, n: usize, jobs: usize) -> Result<ZeroDetectionReport> {
    let field = p.field();
    finite_order(field)?;
    if field.is_zero(&p.coeff_sum()) {
        return Err(Error::Derogatory);
    }
    let per = matrix_count(field, n, n)?;
    budget::check(per, budget::MATRIX_BUDGET)?;
    let rank_one = rank_one_matrices(field, n)?;
    let units: Vec<Matrix> = (0..n).map(|i| Matrix::unit(field, n, i, i)).collect();
    let k = p.k();
    let run = |lemma: &str, xs: &[Matrix]| -> LemmaReport {
        let results = par::map_range(per as usize, jobs, |i| {
            let a = matrix_from_index(field, n, n, i as u128);
            let witness = xs.iter().find(|x| {
                let mut t = vec![(*x).clone(); k];
                t[0] = a.clone();
                !p.evaluate(&t).unwrap().is_zero()
            });
            match (a.is_zero(), witness) {
                (false, None) => Some(Failure {
                    description: "nonzero A with p(A, X, …, X) = 0 for every witness X".into(),
                    matrices: vec![("A".into(), a)],
                    scalars: Vec::new(),
                }),
                (true, Some(x)) => Some(Failure {
                    description: "p(0, X, …, X) is nonzero".into(),
                    matrices: vec![("A".into(), a), ("X".into(), x.clone())],
                    scalars: Vec::new(),
                }),
                _ => None,
            }
        });
        LemmaReport {
            lemma: lemma.into(),
            field: field.descriptor(),
            n,
            instances: per,
            applicable: per,
            failures: results.into_iter().flatten().collect(),
            converse_failures: Vec::new(),
            exhaustive: true,
            seed: None,
        }
    };
    Ok(ZeroDetectionReport {
        rank_one: run("zero_detection", &rank_one),
        diagonal_units: run("zero_detection_diagonal_units", &units),
    })
}

fn hom_matrix(m: &Matrix, hom: FieldHom, transpose: bool) -> Matrix {
    let h = m.apply_hom(hom).expect("validated homomorphism");
    if transpose {
        h.transpose()
    } else {
        h
    }
}

/// λ with a = λ·b, λ ≠ 0, if it exists.
fn proportional(a: &Matrix, b: &Matrix) -> Option<FieldElem> {
    let f = a.field();
    let idx = b.entries().iter().position(|x| !f.is_zero(x))?;
    let lambda = f.div(&a.entries()[idx], &b.entries()[idx]);
    (!f.is_zero(&lambda) && b.scale(&lambda) == *a).then_some(lambda)
}

/// N ∈ Ω_{•P} ∩ Ω_{P•P} for the normalized polynomial, by evaluation.
fn in_both_omegas(np: &NormalizedPoly, x: &Matrix, p: &Matrix) -> bool {
    let k = np.k();
    let mut t = vec![p.clone(); k];
    t[0] = x.clone();
    if !np.base.evaluate(&t).unwrap().is_zero() {
        return false;
    }
    let mut t = vec![p.clone(); k];
    t[np.j0 - 1] = x.clone();
    np.base.evaluate(&t).unwrap().is_zero()
}

/// Draws rank-one nilpotent pairs (N₁, N₂), half of them with N₂ = λ·N₁^φ
/// (transposed when asked), and checks that the idempotent condition holds
/// exactly when N₂ is such a multiple. Condition-holds-but-not-proportional
/// cases are lemma failures; the other direction is reported as converse.
pub fn verify_nilpotent_proportionality(
    p: &MultilinearPoly,
    n: usize,
    hom: FieldHom,
    transpose: bool,
    pairs: u64,
    seed: u64,
    jobs: usize,
) -> Result<LemmaReport> {
    let field = p.field();
    finite_order(field)?;
    if n < 3 {
        return Err(Error::Precondition("the nilpotent oracle needs n ≥ 3".into()));
    }
    if !field.supports_hom(hom) {
        return Err(Error::Invalid(format!("{hom:?} is not an automorphism of {}", field.name())));
    }
    let np = p.normalize()?;
    let nil = rank_one_nilpotents(field, n)?;
    let idem = rank_one_idempotents(field, n)?;
    let idem_img: Vec<Matrix> = idem.iter().map(|m| hom_matrix(m, hom, transpose)).collect();
    let nonzero: Vec<FieldElem> = field.elements().filter(|a| !field.is_zero(a)).collect();
    let results = par::map_range(pairs as usize, jobs, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let n1 = nil[rng.gen_range(0..nil.len())].clone();
        let n2 = if rng.gen_bool(0.5) {
            hom_matrix(&n1, hom, transpose).scale(&nonzero[rng.gen_range(0..nonzero.len())])
        } else {
            nil[rng.gen_range(0..nil.len())].clone()
        };
        let distinguishing = idem
            .iter()
            .zip(&idem_img)
            .position(|(pm, pi)| in_both_omegas(&np, &n1, pm) != in_both_omegas(&np, &n2, pi));
        let prop = proportional(&n2, &hom_matrix(&n1, hom, transpose)).is_some();
        let matrices = |extra: Option<usize>| {
            let mut m = vec![("N1".to_string(), n1.clone()), ("N2".to_string(), n2.clone())];
            if let Some(j) = extra {
                m.push(("P".into(), idem[j].clone()));
            }
            m
        };
        match (distinguishing, prop) {
            (None, false) => (
                Some(Failure {
                    description: "condition holds for every rank-one idempotent but N2 is not a multiple".into(),
                    matrices: matrices(None),
                    scalars: Vec::new(),
                }),
                None,
            ),
            (Some(j), true) => (
                None,
                Some(Failure {
                    description: "N2 is a multiple but the condition fails at P".into(),
                    matrices: matrices(Some(j)),
                    scalars: Vec::new(),
                }),
            ),
            _ => (None, None),
        }
    });
    let mut report = LemmaReport {
        lemma: "nilpotent_proportionality".into(),
        field: field.descriptor(),
        n,
        instances: pairs as u128,
        applicable: 0,
        failures: Vec::new(),
        converse_failures: Vec::new(),
        exhaustive: false,
        seed: Some(seed),
    };
    for (f, c) in results {
        report.failures.extend(f);
        report.converse_failures.extend(c);
    }
    report.applicable = report.instances;
    Ok(report)
}

/// Index of the first idempotent where N₁ and N₂ disagree, for one pair.
pub fn nilpotent_condition(
    p: &MultilinearPoly,
    n1: &Matrix,
    n2: &Matrix,
    hom: FieldHom,
    transpose: bool,
) -> Result<Option<Matrix>> {
    let np = p.normalize()?;
    let idem = rank_one_idempotents(p.field(), n1.rows())?;
    Ok(idem
        .into_iter()
        .find(|pm| in_both_omegas(&np, n1, pm) != in_both_omegas(&np, n2, &hom_matrix(pm, hom, transpose))))
}

/// Pairs drawn per trial when the (P, N) space exceeds the matrix budget.
const PAIR_SAMPLES: u128 = 1 << 16;

/// For sampled (A, B): condition (i) over pairs (P, N), P a rank-one
/// idempotent and N rank one with PN = 0 = NP, should force
/// B = γA^φ + μ·Id. Pairs are enumerated within the matrix budget and
/// 2^16 of them are sampled otherwise; `exhaustive` records which.
#[allow(clippy::too_many_arguments)]
pub fn verify_b_structure_lemma(
    field: &Field,
    n: usize,
    hom: FieldHom,
    alpha: &FieldElem,
    beta: &FieldElem,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<LemmaReport> {
    finite_order(field)?;
    if n < 4 {
        return Err(Error::Precondition("the B-structure oracle needs n ≥ 4".into()));
    }
    budget::check(budget::pow_sat(finite_order(field)?, n as u32), budget::VECTOR_BUDGET)?;
    let idem = rank_one_idempotents(field, n)?;
    let normalized = normalized_vectors(field, n)?;
    let dot = |a: &Matrix, b: &Matrix| -> FieldElem {
        a.entries().iter().zip(b.entries()).fold(field.zero(), |acc, (u, v)| field.add(&acc, &field.mul(u, v)))
    };
    // P = x·fᵀ and N = y·gᵀ with y, g among the normalized vectors
    let facs: Vec<_> = idem.iter().map(|pm| pm.rank_one_factorize().unwrap()).collect();
    let orthogonal = |u: &Matrix| -> Vec<usize> { (0..normalized.len()).filter(|&i| field.is_zero(&dot(u, &normalized[i]))).collect() };
    let count_per: Vec<(Vec<usize>, Vec<usize>)> = facs.iter().map(|fac| (orthogonal(&fac.f), orthogonal(&fac.x))).collect();
    let total: u128 = count_per.iter().map(|(y, g)| (y.len() * g.len()) as u128).sum();
    let exhaustive = total <= budget::limit(budget::MATRIX_BUDGET);
    let pairs: Vec<(usize, usize, usize)> = if exhaustive {
        count_per
            .iter()
            .enumerate()
            .flat_map(|(i, (ys, gs))| ys.iter().flat_map(move |&y| gs.iter().map(move |&g| (i, y, g))))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        (0..PAIR_SAMPLES)
            .map(|_| {
                let i = rng.gen_range(0..count_per.len());
                let (ys, gs) = &count_per[i];
                (i, ys[rng.gen_range(0..ys.len())], gs[rng.gen_range(0..gs.len())])
            })
            .collect()
    };
    let xs: Vec<Matrix> = facs.iter().map(|f| f.x.clone()).collect();
    let fs: Vec<Matrix> = facs.iter().map(|f| f.f.clone()).collect();
    let xs_img: Vec<Matrix> = xs.iter().map(|u| hom_matrix(u, hom, false)).collect();
    let fs_img: Vec<Matrix> = fs.iter().map(|u| hom_matrix(u, hom, false)).collect();
    let norm_img: Vec<Matrix> = normalized.iter().map(|u| hom_matrix(u, hom, false)).collect();
    let outer = |u: &Matrix, w: &Matrix| u.mul(&w.transpose());
    // Whether N·M·P + c·P·M·N vanishes, using N·M·P = (gᵀMx)·y·fᵀ and
    // P·M·N = (fᵀMy)·x·gᵀ; mx = M·x and my = M·y are precomputed.
    let vanishes = |x: &Matrix, f: &Matrix, y: &Matrix, g: &Matrix, mx: &Matrix, my: &Matrix, c: &FieldElem| {
        let s1 = dot(g, mx);
        let s2 = field.mul(c, &dot(f, my));
        if field.is_zero(&s1) && field.is_zero(&s2) {
            return true;
        }
        let (x, f, y, g) = (x.entries(), f.entries(), y.entries(), g.entries());
        (0..n).all(|i| {
            let (a, b) = (field.mul(&s1, &y[i]), field.mul(&s2, &x[i]));
            (0..n).all(|j| field.is_zero(&field.add(&field.mul(&a, &f[j]), &field.mul(&b, &g[j]))))
        })
    };
    let id = Matrix::identity(field, n);
    let results = par::map_range(trials as usize, jobs, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let rand_matrix = |rng: &mut ChaCha8Rng| Matrix::raw(field, n, n, (0..n * n).map(|_| field.random(rng)).collect());
        let a = loop {
            let a = rand_matrix(&mut rng);
            if !a.is_zero() {
                break a;
            }
        };
        let ah = hom_matrix(&a, hom, false);
        let b = match t % 3 {
            0 => {
                let g = loop {
                    let g = field.random(&mut rng);
                    if !field.is_zero(&g) {
                        break g;
                    }
                };
                ah.scale(&g).add(&id.scale(&field.random(&mut rng)))
            }
            1 => ah.add(&Matrix::unit(field, n, 0, 1)),
            _ => rand_matrix(&mut rng),
        };
        if b.is_zero() {
            return (0u128, None, None);
        }
        let (ax, an): (Vec<Matrix>, Vec<Matrix>) = (xs.iter().map(|u| a.mul(u)).collect(), normalized.iter().map(|u| a.mul(u)).collect());
        let (bx, bn): (Vec<Matrix>, Vec<Matrix>) = (xs_img.iter().map(|u| b.mul(u)).collect(), norm_img.iter().map(|u| b.mul(u)).collect());
        let mismatch = pairs.iter().position(|&(i, y, g)| {
            vanishes(&xs[i], &fs[i], &normalized[y], &normalized[g], &ax[i], &an[y], alpha)
                != vanishes(&xs_img[i], &fs_img[i], &norm_img[y], &norm_img[g], &bx[i], &bn[y], beta)
        });
        let span = Matrix::from_columns(field, n * n, &[ah.vec(), id.vec()]).rank();
        let with_b = Matrix::from_columns(field, n * n, &[ah.vec(), id.vec(), b.vec()]).rank();
        let in_span = with_b == span;
        let structured = in_span && Matrix::from_columns(field, n * n, &[id.vec(), b.vec()]).rank() > 1;
        let ab = vec![("A".to_string(), a.clone()), ("B".to_string(), b.clone())];
        match mismatch {
            None if !in_span => (
                1,
                Some(Failure {
                    description: "condition (i) holds but B is not in span{A^φ, Id}".into(),
                    matrices: ab,
                    scalars: vec![("alpha".into(), alpha.clone()), ("beta".into(), beta.clone())],
                }),
                None,
            ),
            None => (1, None, None),
            Some(j) if structured => {
                let mut m = ab;
                let (i, y, g) = pairs[j];
                m.push(("P".into(), outer(&xs[i], &fs[i])));
                m.push(("N".into(), outer(&normalized[y], &normalized[g])));
                (
                    0,
                    None,
                    Some(Failure {
                        description: "B = γA^φ + μId with γ ≠ 0 but condition (i) fails".into(),
                        matrices: m,
                        scalars: vec![("alpha".into(), alpha.clone()), ("beta".into(), beta.clone())],
                    }),
                )
            }
            Some(_) => (0, None, None),
        }
    });
    let mut report = LemmaReport {
        lemma: "b_structure".into(),
        field: field.descriptor(),
        n,
        instances: trials as u128,
        applicable: 0,
        failures: Vec::new(),
        converse_failures: Vec::new(),
        exhaustive,
        seed: Some(seed),
    };
    for (a, f, c) in results {
        report.applicable += a;
        report.failures.extend(f);
        report.converse_failures.extend(c);
    }
    Ok(report)
}
