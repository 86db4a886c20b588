//! Brute-force checks of the supporting lemmas. Everything here is built
//! from field and matrix arithmetic and polynomial evaluation only, so it
//! can be used to cross-check the structured modules.

mod dependence;
mod lemmas;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget;
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldDescriptor, FieldElem, UniPoly};
use crate::matrixcore::{matrix_count, matrix_from_index, Matrix};
use crate::multipoly::MultilinearPoly;
use crate::par;

pub use dependence::{local_linear_dependence, DependenceCase, DependenceReport};
pub use lemmas::{
    nilpotent_condition, orthogonality_instance, verify_b_structure_lemma, verify_nilpotent_proportionality, verify_orthogonality_lemma,
    verify_zero_detection, OraclePlan, OrthogonalityInstance, ZeroDetectionReport,
};

/// A counterexample, re-checkable from its matrices and scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub description: String,
    pub matrices: Vec<(String, Matrix)>,
    pub scalars: Vec<(String, FieldElem)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: String,
    pub field: FieldDescriptor,
    pub n: usize,
    /// Instances examined.
    pub instances: u128,
    /// Instances where the lemma's hypotheses held.
    pub applicable: u128,
    pub failures: Vec<Failure>,
    /// Failures of a converse the lemma does not claim; informational.
    pub converse_failures: Vec<Failure>,
    pub exhaustive: bool,
    pub seed: Option<u64>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tuples of n×n matrices on which p vanishes, in enumeration order
/// (first entry most significant).
pub struct ZeroSet<'a> {
    p: &'a MultilinearPoly,
    n: usize,
    next: u128,
    total: u128,
}

impl Iterator for ZeroSet<'_> {
    type Item = Vec<Matrix>;

    fn next(&mut self) -> Option<Vec<Matrix>> {
        let field = self.p.field();
        let per = matrix_count(field, self.n, self.n).unwrap();
        while self.next < self.total {
            let mut idx = self.next;
            self.next += 1;
            let mut t = vec![Matrix::zeros(field, self.n, self.n); self.p.k()];
            for slot in t.iter_mut().rev() {
                *slot = matrix_from_index(field, self.n, self.n, idx % per);
                idx /= per;
            }
            if self.p.evaluate(&t).expect("well-formed tuple").is_zero() {
                return Some(t);
            }
        }
        None
    }
}

pub fn enumerate_zero_set(p: &MultilinearPoly, n: usize) -> Result<ZeroSet<'_>> {
    let total = zero_set_space(p, n)?;
    Ok(ZeroSet { p, n, next: 0, total })
}

fn zero_set_space(p: &MultilinearPoly, n: usize) -> Result<u128> {
    if !p.field().is_finite() {
        return Err(Error::Unsupported("zero sets are enumerated over finite fields".into()));
    }
    let total = budget::pow_sat(matrix_count(p.field(), n, n)?, p.k() as u32);
    budget::check(total, budget::TUPLE_BUDGET)?;
    Ok(total)
}

/// Size of the zero set, counted in parallel.
pub fn count_zero_set(p: &MultilinearPoly, n: usize, jobs: usize) -> Result<u128> {
    let total = zero_set_space(p, n)?;
    let field = p.field();
    let per = matrix_count(field, n, n)?;
    Ok(par::count(total, jobs, |mut idx| {
        let mut t = vec![Matrix::zeros(field, n, n); p.k()];
        for slot in t.iter_mut().rev() {
            *slot = matrix_from_index(field, n, n, idx % per);
            idx /= per;
        }
        p.evaluate(&t).unwrap().is_zero()
    }))
}

/// The m×m Jordan block with eigenvalue λ.
pub(crate) fn jordan_block(field: &Field, m: usize, lambda: &FieldElem) -> Matrix {
    let mut j = Matrix::scalar(field, m, lambda.clone());
    for i in 1..m {
        j.set(i - 1, i, field.one());
    }
    j
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumPlan {
    /// Every block pair J_m(λ), J_n(μ) with m, n ≤ max_block and λ, μ in the
    /// field, each with `lists` random coefficient lists.
    AllBlocks { lists: u32 },
    /// Random block sizes, eigenvalues and coefficients.
    Random { cases: u32 },
}

/// Checks that X ↦ Σ c_j L^{t−j} X M^j with L = J_m(λ), M = J_n(μ) has
/// characteristic polynomial (x − Σ c_j λ^{t−j} μ^j)^{mn}. The operator is
/// represented by Σ c_j (M^j)ᵀ ⊗ L^{t−j} on column-stacked X.
pub fn check_spectrum_formula(field: &Field, max_block: usize, plan: SpectrumPlan, seed: u64, jobs: usize) -> Result<LemmaReport> {
    let q = field.order().ok_or_else(|| Error::Unsupported("spectrum oracle needs a finite field".into()))?;
    if max_block == 0 {
        return Err(Error::Invalid("max_block must be positive".into()));
    }
    let elems: Vec<FieldElem> = field.elements().collect();
    let cases: Vec<(usize, usize, FieldElem, FieldElem, u64)> = match plan {
        SpectrumPlan::AllBlocks { lists } => {
            let mut v = Vec::new();
            for m in 1..=max_block {
                for n in 1..=max_block {
                    for l in &elems {
                        for mu in &elems {
                            for i in 0..lists {
                                v.push((m, n, l.clone(), mu.clone(), i as u64));
                            }
                        }
                    }
                }
            }
            v
        }
        SpectrumPlan::Random { cases } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..cases)
                .map(|i| {
                    let m = rng.gen_range(1..=max_block);
                    let n = rng.gen_range(1..=max_block);
                    let l = field.elem(rng.gen_range(0..q));
                    let mu = field.elem(rng.gen_range(0..q));
                    (m, n, l, mu, i as u64)
                })
                .collect()
        }
    };
    let results = par::map_range(cases.len(), jobs, |ci| {
        let (m, n, l, mu, stream) = &cases[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995);
        rng.set_stream(ci as u64 * 1_000_003 + stream);
        let t = rng.gen_range(0..=4usize);
        let coeffs: Vec<FieldElem> = (0..=t).map(|_| field.random(&mut rng)).collect();
        let lm = jordan_block(field, *m, l);
        let mm = jordan_block(field, *n, mu);
        let mut op = Matrix::zeros(field, m * n, m * n);
        let mut value = field.zero();
        for (j, c) in coeffs.iter().enumerate() {
            let term = mm.pow(j as u64).transpose().kron(&lm.pow((t - j) as u64));
            op = op.add(&term.scale(c));
            value = field.add(&value, &field.mul(c, &field.mul(&field.pow(l, (t - j) as u64), &field.pow(mu, j as u64))));
        }
        let expected = UniPoly::linear(field, &value).pow((m * n) as u64);
        if op.char_poly() == expected {
            None
        } else {
            Some(Failure {
                description: format!("char poly of the {}×{} operator is not (x − {})^{}", m * n, m * n, field.fmt_elem(&value), m * n),
                matrices: vec![("L".into(), lm), ("M".into(), mm)],
                scalars: coeffs.iter().enumerate().map(|(j, c)| (format!("c{j}"), c.clone())).collect(),
            })
        }
    });
    Ok(LemmaReport {
        lemma: "spectrum".into(),
        field: field.descriptor(),
        n: max_block,
        instances: cases.len() as u128,
        applicable: cases.len() as u128,
        failures: results.into_iter().flatten().collect(),
        converse_failures: Vec::new(),
        exhaustive: matches!(plan, SpectrumPlan::AllBlocks { .. }),
        seed: Some(seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_set_of_product_over_gf2() {
        let f2 = Field::gf(2).unwrap();
        let p = MultilinearPoly::product(&f2);
        let zs: Vec<_> = enumerate_zero_set(&p, 1).unwrap().collect();
        assert_eq!(zs.len(), 3);
        assert!(zs.iter().all(|t| !(t[0].is_identity() && t[1].is_identity())));
        assert_eq!(zs[0], vec![Matrix::zeros(&f2, 1, 1); 2]);
    }

    #[test]
    fn commuting_pairs_match_centralizer_sum() {
        let f2 = Field::gf(2).unwrap();
        let c = MultilinearPoly::commutator(&f2);
        let count = count_zero_set(&c, 2, 3).unwrap();
        assert_eq!(count, enumerate_zero_set(&c, 2).unwrap().count() as u128);
        let centralizers: u128 = (0..16u128)
            .map(|i| {
                let a = matrix_from_index(&f2, 2, 2, i);
                (0..16u128).filter(|&j| {
                    let b = matrix_from_index(&f2, 2, 2, j);
                    a.mul(&b) == b.mul(&a)
                }).count() as u128
            })
            .sum();
        assert_eq!(count, centralizers);
        assert_eq!(count, 88);
    }

    #[test]
    fn zero_set_budget() {
        let f3 = Field::gf(3).unwrap();
        let s = MultilinearPoly::standard_polynomial(&f3, 4).unwrap();
        assert!(matches!(enumerate_zero_set(&s, 2), Err(Error::Budget { .. })));
    }

    #[test]
    fn spectrum_examples() {
        let f7 = Field::gf(7).unwrap();
        let j = jordan_block(&f7, 2, &f7.from_i64(3));
        let k = jordan_block(&f7, 2, &f7.from_i64(5));
        let op = k.transpose().kron(&Matrix::identity(&f7, 2)).add(&Matrix::identity(&f7, 2).kron(&j));
        assert_eq!(op.char_poly(), UniPoly::linear(&f7, &f7.from_i64(8)).pow(4));

        let f5 = Field::gf(5).unwrap();
        let r = check_spectrum_formula(&f5, 3, SpectrumPlan::Random { cases: 200 }, 17, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 200);
        let a = check_spectrum_formula(&f5, 1, SpectrumPlan::AllBlocks { lists: 2 }, 1, 1).unwrap();
        assert_eq!(a.instances, 50);
        assert!(a.passed());
        assert_eq!(a, check_spectrum_formula(&f5, 1, SpectrumPlan::AllBlocks { lists: 2 }, 1, 4).unwrap());
    }
}
