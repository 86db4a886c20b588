use std::collections::BTreeMap;

use super::witnesses::{structured_witness_tuples, unit_matrices};
use super::{Gamma, Mode, Parametric, PreserverSpec, Shift};
use crate::budget;
use crate::error::{Error, Result};
use crate::matrixcore::{matrix_count, matrix_from_index, rank_one_idempotents, Matrix};
use crate::multipoly::{sampled_tuple, MultilinearPoly, PolyClass};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every k-tuple over a finite field.
    Exhaustive,
    /// The caller's tuples followed by the structured families.
    Witnesses { extra: Vec<Vec<Matrix>> },
    /// Seeded uniform tuples.
    Sample { count: u64, seed: u64 },
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Witnesses { .. } => "witnesses",
            Strategy::Sample { .. } => "sample",
        }
    }

    pub fn witnesses() -> Strategy {
        Strategy::Witnesses { extra: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Violated => "violated",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// p₁ vanishes on the tuple but p₂ does not vanish on its image.
    ZeroNotPreserved,
    /// Strong mode: p₁ does not vanish but p₂ vanishes on the image.
    ZeroCreated,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::ZeroNotPreserved => "zero_not_preserved",
            ViolationKind::ZeroCreated => "zero_created",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Position of the tuple in the strategy's order.
    pub index: u128,
    pub family: Option<String>,
    pub tuple: Vec<Matrix>,
    pub image: Vec<Matrix>,
    /// p₁ on the tuple.
    pub source_value: Matrix,
    /// p₂ on the image.
    pub image_value: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyRecord {
    pub mode: String,
    pub strong: bool,
    /// Tuples examined, up to and including the witness.
    pub checked: u128,
    /// Size of the tuple space the strategy covers.
    pub total: u128,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<Violation>,
    pub strategy: StrategyRecord,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    /// Re-evaluates the witness and compares with the recorded values.
    pub fn recheck(&self, p1: &MultilinearPoly, p2: &MultilinearPoly, spec: &PreserverSpec) -> Result<bool> {
        let Some(w) = &self.witness else { return Ok(true) };
        let image: Vec<Matrix> = w.tuple.iter().map(|a| spec.apply(a)).collect::<Result<_>>()?;
        let v1 = p1.evaluate(&w.tuple)?;
        let v2 = p2.evaluate(&image)?;
        let kind_ok = match w.kind {
            ViolationKind::ZeroNotPreserved => v1.is_zero() && !v2.is_zero(),
            ViolationKind::ZeroCreated => !v1.is_zero() && v2.is_zero(),
        };
        Ok(kind_ok && image == w.image && v1 == w.source_value && v2 == w.image_value)
    }
}

fn mismatch(z1: bool, z2: bool, strong: bool) -> Option<ViolationKind> {
    if z1 && !z2 {
        Some(ViolationKind::ZeroNotPreserved)
    } else if strong && !z1 && z2 {
        Some(ViolationKind::ZeroCreated)
    } else {
        None
    }
}

fn check_tuple(p1: &MultilinearPoly, p2: &MultilinearPoly, strong: bool, t: &[Matrix], img: &[Matrix]) -> Option<ViolationKind> {
    mismatch(p1.eval_unchecked(t).is_zero(), p2.eval_unchecked(img).is_zero(), strong)
}

fn validate(p1: &MultilinearPoly, p2: &MultilinearPoly, spec: &PreserverSpec) -> Result<()> {
    if p1.field() != &spec.field || p2.field() != &spec.field {
        return Err(Error::FieldMismatch("polynomials and map must share a field".into()));
    }
    if p1.k() != p2.k() {
        return Err(Error::DimensionMismatch(format!("arities {} and {} differ", p1.k(), p2.k())));
    }
    Ok(())
}

/// Searches for a tuple whose zero status under p₁ is not carried to p₂ by
/// the map; in strong mode both directions are checked. The reported
/// witness is the first in the strategy's order, whatever the job count.
pub fn check_maps_zeros(
    p1: &MultilinearPoly,
    p2: &MultilinearPoly,
    spec: &PreserverSpec,
    strong: bool,
    strategy: &Strategy,
    jobs: usize,
) -> Result<Verdict> {
    validate(p1, p2, spec)?;
    let field = &spec.field;
    let (n, k) = (spec.n, p1.k());
    let record = |checked: u128, total: u128, seed: Option<u64>| StrategyRecord {
        mode: strategy.name().to_string(),
        strong,
        checked,
        total,
        seed,
    };
    let finish = |found: Option<(u128, Option<&'static str>, Vec<Matrix>)>, total: u128, seed: Option<u64>| -> Verdict {
        match found {
            None => Verdict { outcome: Outcome::Holds, witness: None, strategy: record(total, total, seed) },
            Some((index, family, tuple)) => {
                let image: Vec<Matrix> = tuple.iter().map(|a| spec.apply_unchecked(a)).collect();
                let source_value = p1.eval_unchecked(&tuple);
                let image_value = p2.eval_unchecked(&image);
                let kind = mismatch(source_value.is_zero(), image_value.is_zero(), strong).expect("witness re-evaluates");
                Verdict {
                    outcome: Outcome::Violated,
                    witness: Some(Violation {
                        kind,
                        index,
                        family: family.map(str::to_string),
                        tuple,
                        image,
                        source_value,
                        image_value,
                    }),
                    strategy: record(index + 1, total, seed),
                }
            }
        }
    };
    match strategy {
        Strategy::Exhaustive => {
            if !field.is_finite() {
                return Err(Error::Unsupported("exhaustive checks need a finite field".into()));
            }
            let per = matrix_count(field, n, n)?;
            let total = budget::pow_sat(per, k as u32);
            budget::check(total, budget::TUPLE_BUDGET)?;
            let mats: Vec<Matrix> = (0..per).map(|i| matrix_from_index(field, n, n, i)).collect();
            let imgs: Vec<Matrix> = par::map_range(per as usize, jobs, |i| spec.apply_unchecked(&mats[i]));
            let indices = |mut i: u128| {
                let mut ix = vec![0usize; k];
                for slot in ix.iter_mut().rev() {
                    *slot = (i % per) as usize;
                    i /= per;
                }
                ix
            };
            let hit = par::find_first(total, jobs, |i| {
                let ix = indices(i);
                let t: Vec<Matrix> = ix.iter().map(|&j| mats[j].clone()).collect();
                let img: Vec<Matrix> = ix.iter().map(|&j| imgs[j].clone()).collect();
                check_tuple(p1, p2, strong, &t, &img).is_some()
            });
            Ok(finish(hit.map(|i| (i, None, indices(i).iter().map(|&j| mats[j].clone()).collect())), total, None))
        }
        Strategy::Witnesses { extra } => {
            for t in extra {
                p1.evaluate(t)?;
                if t[0].rows() != n {
                    return Err(Error::DimensionMismatch(format!("witness tuples must hold {n}×{n} matrices")));
                }
            }
            let tuples = structured_witness_tuples(p1, n, extra)?;
            let total = tuples.len() as u128;
            let hit = par::find_first(total, jobs, |i| {
                let t = &tuples[i as usize].tuple;
                let img: Vec<Matrix> = t.iter().map(|a| spec.apply_unchecked(a)).collect();
                check_tuple(p1, p2, strong, t, &img).is_some()
            });
            Ok(finish(hit.map(|i| (i, Some(tuples[i as usize].family), tuples[i as usize].tuple.clone())), total, None))
        }
        Strategy::Sample { count, seed } => {
            let total = *count as u128;
            let hit = par::find_first(total, jobs, |i| {
                let t = sampled_tuple(field, n, k, *seed, i as u64);
                let img: Vec<Matrix> = t.iter().map(|a| spec.apply_unchecked(a)).collect();
                check_tuple(p1, p2, strong, &t, &img).is_some()
            });
            Ok(finish(hit.map(|i| (i, None, sampled_tuple(field, n, k, *seed, i as u64))), total, Some(*seed)))
        }
    }
}

/// The commutator case p₁ = p₂ = xy − yx.
pub fn check_commutativity_preservation(spec: &PreserverSpec, strong: bool, strategy: &Strategy, jobs: usize) -> Result<Verdict> {
    let c = MultilinearPoly::commutator(&spec.field);
    check_maps_zeros(&c, &c, spec, strong, strategy, jobs)
}

/// Searches for A with Φ(A) = 0 ≠ A, or Φ(0) ≠ 0. Witness tuples have one
/// entry; the recorded values are A and Φ(A).
pub fn check_zero_kernel(spec: &PreserverSpec, strategy: &Strategy, jobs: usize) -> Result<Verdict> {
    let field = &spec.field;
    let n = spec.n;
    let bad = |a: &Matrix| -> Option<ViolationKind> {
        let z = spec.apply_unchecked(a).is_zero();
        match (a.is_zero(), z) {
            (true, false) => Some(ViolationKind::ZeroNotPreserved),
            (false, true) => Some(ViolationKind::ZeroCreated),
            _ => None,
        }
    };
    let (total, seed, candidates): (u128, Option<u64>, Option<Vec<Matrix>>) = match strategy {
        Strategy::Exhaustive => {
            if !field.is_finite() {
                return Err(Error::Unsupported("exhaustive checks need a finite field".into()));
            }
            let per = matrix_count(field, n, n)?;
            budget::check(per, budget::MATRIX_BUDGET)?;
            (per, None, None)
        }
        Strategy::Witnesses { extra } => {
            let mut c: Vec<Matrix> = extra.iter().flatten().cloned().collect();
            if c.iter().any(|m| m.field() != field || m.rows() != n || m.cols() != n) {
                return Err(Error::DimensionMismatch(format!("candidates must be {n}×{n} over {}", field.name())));
            }
            c.extend(unit_matrices(field, n));
            let scalars: Vec<_> = match field.order() {
                Some(q) => field.elements().take(q.min(8) as usize).collect(),
                None => (-3..=3).map(|i| field.from_i64(i)).collect(),
            };
            c.extend(scalars.into_iter().map(|s| Matrix::scalar(field, n, s)));
            let mut seen = std::collections::HashSet::new();
            c.retain(|m| seen.insert(m.clone()));
            (c.len() as u128, None, Some(c))
        }
        Strategy::Sample { count, seed } => (*count as u128, Some(*seed), None),
    };
    let at = |i: u128| -> Matrix {
        match (strategy, &candidates) {
            (_, Some(c)) => c[i as usize].clone(),
            (Strategy::Sample { seed, .. }, _) => sampled_tuple(field, n, 1, *seed, i as u64).pop().unwrap(),
            _ => matrix_from_index(field, n, n, i),
        }
    };
    let hit = par::find_first(total, jobs, |i| bad(&at(i)).is_some());
    let mode = strategy.name().to_string();
    Ok(match hit {
        None => Verdict { outcome: Outcome::Holds, witness: None, strategy: StrategyRecord { mode, strong: true, checked: total, total, seed } },
        Some(i) => {
            let a = at(i);
            let img = spec.apply_unchecked(&a);
            Verdict {
                outcome: Outcome::Violated,
                witness: Some(Violation {
                    kind: bad(&a).unwrap(),
                    index: i,
                    family: None,
                    tuple: vec![a.clone()],
                    image: vec![img.clone()],
                    source_value: a,
                    image_value: img,
                }),
                strategy: StrategyRecord { mode, strong: true, checked: i + 1, total, seed },
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentReport {
    /// Strong witness check of p under the map, run first.
    pub precondition: Verdict,
    /// Number of rank-one idempotents examined.
    pub total: usize,
    /// Images that are exactly idempotent.
    pub exact: usize,
    /// (P, Φ(P)) where Φ(P) is not a nonzero multiple of a rank-one idempotent.
    pub exceptions: Vec<(Matrix, Matrix)>,
    /// (P, c) with Φ(P) = c·R, R a rank-one idempotent and c ≠ 1.
    pub scaled: Vec<(Matrix, crate::exactfield::FieldElem)>,
}

impl IdempotentReport {
    pub fn holds(&self) -> bool {
        self.exceptions.is_empty()
    }
}

/// Checks that every rank-one idempotent maps to a nonzero multiple of a
/// rank-one idempotent, after confirming with the witness families that the
/// map strongly preserves the zeros of the generic polynomial p.
pub fn check_rank_one_idempotent_structure(spec: &PreserverSpec, p: &MultilinearPoly, jobs: usize) -> Result<IdempotentReport> {
    let field = &spec.field;
    if !field.is_finite() {
        return Err(Error::Unsupported("idempotent enumeration needs a finite field".into()));
    }
    if p.classify() != PolyClass::Generic {
        return Err(Error::Derogatory);
    }
    let pre = check_maps_zeros(p, p, spec, true, &Strategy::witnesses(), jobs)?;
    if let Some(w) = &pre.witness {
        return Err(Error::Precondition(format!(
            "map does not strongly preserve the zeros of {} (witness at index {})",
            p.to_pretty(),
            w.index
        )));
    }
    let q = field.order().unwrap() as u128;
    budget::check(budget::pow_sat(q, spec.n as u32), budget::VECTOR_BUDGET)?;
    let idem = rank_one_idempotents(field, spec.n)?;
    let images = par::map_range(idem.len(), jobs, |i| spec.apply_unchecked(&idem[i]));
    let mut exceptions = Vec::new();
    let mut scaled = Vec::new();
    let mut exact = 0;
    for (pm, img) in idem.iter().zip(images) {
        let c = img.trace();
        if img.is_rank_one() && !field.is_zero(&c) && img.mul(&img) == img.scale(&c) {
            if field.is_one(&c) {
                exact += 1;
            } else {
                scaled.push((pm.clone(), c));
            }
        } else {
            exceptions.push((pm.clone(), img));
        }
    }
    Ok(IdempotentReport { precondition: pre, total: idem.len(), exact, exceptions, scaled })
}

/// A map agreeing with `spec` off the rank-one idempotents and sending each
/// rank-one idempotent to an idempotent, by dividing Φ(P) by its trace.
pub fn rescale_to_idempotent_preserving(spec: &PreserverSpec, p: &MultilinearPoly, jobs: usize) -> Result<PreserverSpec> {
    let report = check_rank_one_idempotent_structure(spec, p, jobs)?;
    if !report.holds() {
        return Err(Error::Precondition(format!(
            "{} rank-one idempotents have images outside F·I¹",
            report.exceptions.len()
        )));
    }
    if report.scaled.is_empty() {
        return Ok(spec.clone());
    }
    let f = &spec.field;
    let mut out = spec.clone();
    match &mut out.mode {
        Mode::Table(map) => {
            for (pm, c) in &report.scaled {
                let img = spec.apply_unchecked(pm).scale(&f.inv(c).unwrap());
                map.insert(pm.canonical_key(), (pm.clone(), img));
            }
        }
        Mode::Parametric(Parametric { gamma, shift, .. }) => {
            let (mut values, default) = match gamma.clone() {
                Gamma::Constant(c) => (BTreeMap::new(), c),
                Gamma::Table { values, default } => (values, default),
            };
            let mut shifts = match shift.clone() {
                Shift::None => BTreeMap::new(),
                Shift::Table(m) => m,
            };
            for (pm, c) in &report.scaled {
                let key = pm.canonical_key();
                let inv = f.inv(c).unwrap();
                let g = values.get(&key).unwrap_or(&default).clone();
                values.insert(key.clone(), f.mul(&g, &inv));
                if let Some(mu) = shifts.get(&key).cloned() {
                    shifts.insert(key, f.mul(&mu, &inv));
                }
            }
            *gamma = Gamma::Table { values, default };
            if let Shift::Table(_) = shift {
                *shift = Shift::Table(shifts);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Field, FieldHom};
    use crate::preserver::EntryTweak;

    fn e(f: &Field, n: usize, i: usize, j: usize) -> Matrix {
        Matrix::unit(f, n, i - 1, j - 1)
    }

    fn transpose_spec(f: &Field, n: usize) -> PreserverSpec {
        PreserverSpec::parametric(Matrix::identity(f, n), FieldHom::Identity, true, Gamma::Constant(f.one()), Shift::None, EntryTweak::None).unwrap()
    }

    #[test]
    fn a12_shift_breaks_xyz_minus_yxz() {
        let f3 = Field::gf(3).unwrap();
        let p = MultilinearPoly::from_i64_terms(&f3, 3, &[(&[1, 2, 3], 1), (&[2, 1, 3], -1)]).unwrap();
        let spec = PreserverSpec::tweak_only(&f3, 3, EntryTweak::AddA12Identity).unwrap();
        for jobs in [1, 4] {
            let v = check_maps_zeros(&p, &p, &spec, false, &Strategy::witnesses(), jobs).unwrap();
            let w = v.witness.as_ref().unwrap();
            assert_eq!(w.tuple, vec![e(&f3, 3, 1, 1), e(&f3, 3, 1, 2), e(&f3, 3, 1, 2)]);
            assert_eq!(w.kind, ViolationKind::ZeroNotPreserved);
            assert_eq!(w.image_value, e(&f3, 3, 1, 2));
            assert!(v.recheck(&p, &p, &spec).unwrap());
        }
    }

    #[test]
    fn transpose_breaks_product() {
        let q = Field::rationals();
        let p = MultilinearPoly::product(&q);
        let v = check_maps_zeros(&p, &p, &transpose_spec(&q, 2), false, &Strategy::witnesses(), 1).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.tuple, vec![e(&q, 2, 1, 1), e(&q, 2, 2, 1)]);
        assert_eq!(w.image_value, e(&q, 2, 1, 2));
    }

    #[test]
    fn transpose_preserves_jordan_product() {
        let f5 = Field::gf(5).unwrap();
        let p = MultilinearPoly::jordan(&f5);
        let v = check_maps_zeros(&p, &p, &transpose_spec(&f5, 2), true, &Strategy::Sample { count: 3000, seed: 3 }, 2).unwrap();
        assert!(v.holds());
        assert_eq!(v.strategy.checked, 3000);
    }

    #[test]
    fn gaussian_conjugation_breaks_twisted_commutator() {
        let g = Field::gaussian();
        let i = g.imaginary_unit().unwrap();
        let p = MultilinearPoly::new(&g, 2, vec![(vec![1, 2], g.one()), (vec![2, 1], g.neg(&i))]).unwrap();
        let a = Matrix::from_i64(&g, 2, 2, &[1, 1, -1, 1]);
        let b = Matrix::new(&g, 2, 2, vec![g.one(), i.clone(), i.clone(), g.from_i64(-1)]).unwrap();
        assert!(p.evaluate(&[a.clone(), b.clone()]).unwrap().is_zero());
        let spec = PreserverSpec::parametric(Matrix::identity(&g, 2), FieldHom::Conjugation, false, Gamma::Constant(g.one()), Shift::None, EntryTweak::None).unwrap();
        let v = check_maps_zeros(&p, &p, &spec, false, &Strategy::Witnesses { extra: vec![vec![a.clone(), b.clone()]] }, 1).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.tuple, vec![a, b]);
        assert_eq!(w.index, 0);
        assert!(!w.image_value.is_zero());
    }

    fn frobenius_similarity(f4: &Field) -> PreserverSpec {
        let w = f4.elem(2);
        let t = Matrix::new(f4, 2, 2, vec![w.clone(), f4.one(), f4.one(), f4.zero()]).unwrap();
        PreserverSpec::parametric(t, FieldHom::Frobenius(1), false, Gamma::Constant(f4.elem(3)), Shift::None, EntryTweak::None).unwrap()
    }

    #[test]
    fn frobenius_similarity_is_a_strong_preserver_on_gf4() {
        let f4 = Field::gf_ext(2, 2).unwrap();
        let spec = frobenius_similarity(&f4);
        for p in [MultilinearPoly::product(&f4), MultilinearPoly::commutator(&f4)] {
            let v1 = check_maps_zeros(&p, &p, &spec, true, &Strategy::Exhaustive, 1).unwrap();
            let v4 = check_maps_zeros(&p, &p, &spec, true, &Strategy::Exhaustive, 4).unwrap();
            assert!(v1.holds());
            assert_eq!(v1, v4);
            assert_eq!(v1.strategy.total, 1 << 16);
        }
    }

    #[test]
    fn exhaustive_finds_first_violation_independent_of_jobs() {
        let f2 = Field::gf(2).unwrap();
        let p = MultilinearPoly::product(&f2);
        let spec = transpose_spec(&f2, 2);
        let a = check_maps_zeros(&p, &p, &spec, true, &Strategy::Exhaustive, 1).unwrap();
        let b = check_maps_zeros(&p, &p, &spec, true, &Strategy::Exhaustive, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.recheck(&p, &p, &spec).unwrap());
    }

    #[test]
    fn exhaustive_respects_budget() {
        let f3 = Field::gf(3).unwrap();
        let p = MultilinearPoly::product(&f3);
        let r = check_maps_zeros(&p, &p, &PreserverSpec::identity(&f3, 3), false, &Strategy::Exhaustive, 1);
        assert!(matches!(r, Err(Error::Budget { .. })));
    }

    #[test]
    fn commutativity_examples() {
        let f5 = Field::gf(5).unwrap();
        let tr = PreserverSpec::tweak_only(&f5, 3, EntryTweak::SubtractTraceOverN).unwrap();
        let s = Strategy::Sample { count: 2000, seed: 11 };
        assert!(check_commutativity_preservation(&tr, true, &s, 2).unwrap().holds());
        assert!(check_commutativity_preservation(&tr, true, &Strategy::witnesses(), 2).unwrap().holds());
        assert!(tr.apply(&Matrix::identity(&f5, 3)).unwrap().is_zero());

        let a12 = PreserverSpec::tweak_only(&f5, 3, EntryTweak::AddA12Identity).unwrap();
        assert!(check_commutativity_preservation(&a12, true, &s, 2).unwrap().holds());
        assert!(check_commutativity_preservation(&a12, true, &Strategy::witnesses(), 2).unwrap().holds());

        let f2 = Field::gf(2).unwrap();
        let x = e(&f2, 2, 1, 1);
        let y = x.add(&e(&f2, 2, 1, 2));
        let swap = PreserverSpec::table(&f2, 2, vec![(x.clone(), y.clone()), (y, x)]).unwrap();
        let v = check_commutativity_preservation(&swap, false, &Strategy::witnesses(), 1).unwrap();
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.kind, ViolationKind::ZeroNotPreserved);
        assert!(v.recheck(&MultilinearPoly::commutator(&f2), &MultilinearPoly::commutator(&f2), &swap).unwrap());
    }

    #[test]
    fn zero_kernel_examples() {
        let f5 = Field::gf(5).unwrap();
        let t = Matrix::from_i64(&f5, 2, 2, &[1, 2, 3, 4]);
        let sim = PreserverSpec::similarity(t.clone()).unwrap();
        assert!(check_zero_kernel(&sim, &Strategy::Exhaustive, 2).unwrap().holds());
        let scaled = PreserverSpec::parametric(t, FieldHom::Identity, false, Gamma::Constant(f5.from_i64(3)), Shift::None, EntryTweak::None).unwrap();
        assert!(check_zero_kernel(&scaled, &Strategy::Exhaustive, 2).unwrap().holds());
        let tr = PreserverSpec::tweak_only(&f5, 3, EntryTweak::SubtractTraceOverN).unwrap();
        let v = check_zero_kernel(&tr, &Strategy::witnesses(), 1).unwrap();
        assert_eq!(v.witness.unwrap().tuple, vec![Matrix::identity(&f5, 3)]);
    }

    #[test]
    fn idempotent_structure_examples() {
        let f2 = Field::gf(2).unwrap();
        let t = Matrix::from_i64(&f2, 3, 3, &[1, 1, 0, 0, 1, 1, 0, 0, 1]);
        let sim = PreserverSpec::similarity(t).unwrap();
        let r = check_rank_one_idempotent_structure(&sim, &MultilinearPoly::product(&f2), 2).unwrap();
        assert_eq!((r.total, r.exact), (28, 28));
        assert!(r.holds() && r.scaled.is_empty());

        let f5 = Field::gf(5).unwrap();
        let r = check_rank_one_idempotent_structure(&transpose_spec(&f5, 3), &MultilinearPoly::jordan(&f5), 2).unwrap();
        assert_eq!(r.total, 31 * 25);
        assert!(r.holds());

        let f3 = Field::gf(3).unwrap();
        let a12 = PreserverSpec::tweak_only(&f3, 3, EntryTweak::AddA12Identity).unwrap();
        let err = check_rank_one_idempotent_structure(&a12, &MultilinearPoly::jordan(&f3), 1).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn rescaling_a_doubled_similarity() {
        let f5 = Field::gf(5).unwrap();
        let t = Matrix::from_i64(&f5, 2, 2, &[2, 1, 1, 1]);
        let two = f5.from_i64(2);
        let spec = PreserverSpec::parametric(t, FieldHom::Identity, false, Gamma::Constant(two.clone()), Shift::None, EntryTweak::None).unwrap();
        let p = MultilinearPoly::product(&f5);
        let fixed = rescale_to_idempotent_preserving(&spec, &p, 2).unwrap();
        let Mode::Parametric(par) = &fixed.mode else { panic!() };
        let Gamma::Table { values, default } = &par.gamma else { panic!() };
        assert_eq!(default, &two);
        assert_eq!(values.len(), 30);
        assert!(values.values().all(|g| f5.is_one(g)));
        for pm in rank_one_idempotents(&f5, 2).unwrap() {
            assert!(fixed.apply(&pm).unwrap().is_idempotent());
        }
        let a = Matrix::from_i64(&f5, 2, 2, &[1, 2, 3, 4]);
        assert_eq!(fixed.apply(&a).unwrap(), spec.apply(&a).unwrap());
        let again = rescale_to_idempotent_preserving(&fixed, &p, 2).unwrap();
        assert_eq!(again, fixed);
    }

    #[test]
    fn rescaling_a_table_map() {
        let f3 = Field::gf(3).unwrap();
        let pm = e(&f3, 2, 1, 1);
        let spec = PreserverSpec::table(&f3, 2, vec![(pm.clone(), pm.scale(&f3.from_i64(2)))]).unwrap();
        let p = MultilinearPoly::product(&f3);
        let fixed = rescale_to_idempotent_preserving(&spec, &p, 1).unwrap();
        assert_eq!(fixed.apply(&pm).unwrap(), pm);
    }
}
