//! Homogeneous multilinear polynomials in k noncommuting variables.
//!
//! A term is stored by its listed word: the permutation `[σ(1), …, σ(k)]`
//! stands for the monomial x_{σ(1)} x_{σ(2)} ⋯ x_{σ(k)}. Coefficient sums
//! are indexed by (variable, slot): `weight(v, s)` adds up the coefficients
//! of the terms in which variable v sits at slot s.

mod admissible;
mod identity;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElem};
use crate::matrixcore::Matrix;

pub use admissible::{validate_admissible, AdmissibleSet};
pub use identity::{is_identity_on, sampled_tuple, tuple_from_index, IdentityMode, IdentityVerdict};

pub const MAX_ARITY: usize = 8;

/// One-based image array of a permutation of {1..k}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let k = images.len();
        let mut seen = vec![false; k + 1];
        for &v in &images {
            if v == 0 || v > k || seen[v] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation of 1..{k}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Permutation {
        Permutation((1..=k).collect())
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// σ(i), one-based.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.k()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// +1 or −1.
    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.k()];
        let mut s = 1;
        for start in 0..self.k() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] - 1;
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// Slot at which variable `var` appears in the listed word.
    pub fn slot_of(&self, var: usize) -> usize {
        self.0.iter().position(|&v| v == var).unwrap() + 1
    }

    /// All permutations of {1..k} in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=k).collect();
        let mut out = vec![Permutation(cur.clone())];
        loop {
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation(cur.clone()));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyClass {
    Generic,
    Derogatory,
}

/// Σ_σ α_σ x_{σ(1)}⋯x_{σ(k)} with nonzero coefficients, terms sorted by word.
#[derive(Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    field: Field,
    k: usize,
    terms: Vec<(Permutation, FieldElem)>,
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pretty())
    }
}

const LETTERS: [char; 8] = ['x', 'y', 'z', 'u', 'v', 'w', 's', 't'];

impl MultilinearPoly {
    /// Builds a polynomial; repeated words are merged and zero terms dropped.
    pub fn new(field: &Field, k: usize, terms: Vec<(Vec<usize>, FieldElem)>) -> Result<MultilinearPoly> {
        if !(2..=MAX_ARITY).contains(&k) {
            return Err(Error::Invalid(format!("arity {k} outside 2..={MAX_ARITY}")));
        }
        let mut acc: Vec<(Permutation, FieldElem)> = Vec::new();
        for (word, c) in terms {
            if word.len() != k {
                return Err(Error::Invalid(format!("term {word:?} has arity {}, expected {k}", word.len())));
            }
            if !field.contains(&c) {
                return Err(Error::FieldMismatch(format!("coefficient {c:?} is not in {}", field.name())));
            }
            acc.push((Permutation::new(word)?, c));
        }
        acc.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Permutation, FieldElem)> = Vec::new();
        for (p, c) in acc {
            match merged.last_mut() {
                Some((q, d)) if *q == p => *d = field.add(d, &c),
                _ => merged.push((p, c)),
            }
        }
        merged.retain(|(_, c)| !field.is_zero(c));
        Ok(MultilinearPoly { field: field.clone(), k, terms: merged })
    }

    pub fn from_i64_terms(field: &Field, k: usize, terms: &[(&[usize], i64)]) -> Result<MultilinearPoly> {
        MultilinearPoly::new(field, k, terms.iter().map(|(w, c)| (w.to_vec(), field.from_i64(*c))).collect())
    }

    /// xy
    pub fn product(field: &Field) -> MultilinearPoly {
        MultilinearPoly::from_i64_terms(field, 2, &[(&[1, 2], 1)]).unwrap()
    }

    /// xy − yx
    pub fn commutator(field: &Field) -> MultilinearPoly {
        MultilinearPoly::from_i64_terms(field, 2, &[(&[1, 2], 1), (&[2, 1], -1)]).unwrap()
    }

    /// xy + yx
    pub fn jordan(field: &Field) -> MultilinearPoly {
        MultilinearPoly::from_i64_terms(field, 2, &[(&[1, 2], 1), (&[2, 1], 1)]).unwrap()
    }

    /// s_m = Σ sign(σ) x_{σ(1)}⋯x_{σ(m)}.
    pub fn standard_polynomial(field: &Field, m: usize) -> Result<MultilinearPoly> {
        if m < 2 {
            return Err(Error::Invalid("standard polynomial needs m ≥ 2".into()));
        }
        let terms = Permutation::all(m).into_iter().map(|p| {
            let s = p.sign();
            (p.0, field.from_i64(s))
        });
        MultilinearPoly::new(field, m, terms.collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(Permutation, FieldElem)] {
        &self.terms
    }

    pub fn coeff_of(&self, word: &[usize]) -> FieldElem {
        self.terms
            .iter()
            .find(|(p, _)| p.images() == word)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    pub fn evaluate(&self, tuple: &[Matrix]) -> Result<Matrix> {
        if tuple.len() != self.k {
            return Err(Error::DimensionMismatch(format!("{} matrices for arity {}", tuple.len(), self.k)));
        }
        let n = tuple[0].rows();
        for a in tuple {
            if a.field() != &self.field {
                return Err(Error::FieldMismatch(format!("matrix over {} for a polynomial over {}", a.field().name(), self.field.name())));
            }
            if a.rows() != n || a.cols() != n {
                return Err(Error::DimensionMismatch("tuple matrices must be square of one size".into()));
            }
        }
        Ok(self.eval_unchecked(tuple))
    }

    pub(crate) fn eval_unchecked(&self, tuple: &[Matrix]) -> Matrix {
        let n = tuple[0].rows();
        let mut acc = Matrix::zeros(&self.field, n, n);
        for (p, c) in &self.terms {
            let mut prod = tuple[p.at(1) - 1].clone();
            for s in 2..=self.k {
                if prod.is_zero() {
                    break;
                }
                prod = prod.mul(&tuple[p.at(s) - 1]);
            }
            if !prod.is_zero() {
                acc = acc.add(&prod.scale(c));
            }
        }
        acc
    }

    pub fn is_zero_tuple(&self, tuple: &[Matrix]) -> Result<bool> {
        Ok(self.evaluate(tuple)?.is_zero())
    }

    pub fn coeff_sum(&self) -> FieldElem {
        self.terms.iter().fold(self.field.zero(), |acc, (_, c)| self.field.add(&acc, c))
    }

    pub fn classify(&self) -> PolyClass {
        if self.field.is_zero(&self.coeff_sum()) {
            PolyClass::Derogatory
        } else {
            PolyClass::Generic
        }
    }

    /// Sum of the coefficients of the terms with variable `var` at slot `slot`
    /// (both one-based).
    pub fn weight(&self, var: usize, slot: usize) -> FieldElem {
        self.terms
            .iter()
            .filter(|(p, _)| p.at(slot) == var)
            .fold(self.field.zero(), |acc, (_, c)| self.field.add(&acc, c))
    }

    /// k×k matrix with (i, j) entry `weight(i, j)` and whether it is invertible.
    pub fn cof_matrix(&self) -> (Matrix, bool) {
        let k = self.k;
        let mut m = Matrix::zeros(&self.field, k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.weight(i + 1, j + 1));
            }
        }
        let inv = !self.field.is_zero(&m.det());
        (m, inv)
    }

    /// Exchanges the labels of variables a and b.
    pub fn swap_variables(&self, a: usize, b: usize) -> MultilinearPoly {
        let swap = |v: usize| if v == a { b } else if v == b { a } else { v };
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.images().iter().map(|&v| swap(v)).collect(), c.clone()))
            .collect();
        MultilinearPoly::new(&self.field, self.k, terms).unwrap()
    }

    pub fn scale(&self, c: &FieldElem) -> MultilinearPoly {
        let terms = self.terms.iter().map(|(p, d)| (p.images().to_vec(), self.field.mul(c, d))).collect();
        MultilinearPoly::new(&self.field, self.k, terms).unwrap()
    }

    /// Same words and coefficients over another field via `map`.
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(&FieldElem) -> FieldElem) -> MultilinearPoly {
        let terms = self.terms.iter().map(|(p, c)| (p.images().to_vec(), map(c))).collect();
        MultilinearPoly::new(target, self.k, terms).unwrap()
    }

    pub fn normalize(&self) -> Result<NormalizedPoly> {
        NormalizedPoly::new(self)
    }

    pub fn to_pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                let word: String = if self.k <= LETTERS.len() {
                    p.images().iter().map(|&v| LETTERS[v - 1]).collect()
                } else {
                    p.images().iter().map(|v| format!("x{v}")).collect()
                };
                if self.field.is_one(c) {
                    word
                } else {
                    format!("({}){word}", self.field.fmt_elem(c))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// A generic polynomial rescaled so that the slot-1 weight of variable 1 is
/// one, together with the derived coefficient sums. Indices are one-based.
#[derive(Clone, Debug)]
pub struct NormalizedPoly {
    pub original: MultilinearPoly,
    pub base: MultilinearPoly,
    /// Variable exchanged with variable 1 before rescaling.
    pub i0: usize,
    /// The weight divided out: base = (original with 1 ↔ i0) / scale.
    pub scale: FieldElem,
    /// β_i = weight(1, i) of the base polynomial; β_1 = 1.
    pub beta: Vec<FieldElem>,
    /// ξ = β_2 + … + β_k.
    pub xi: FieldElem,
    pub j0: usize,
    /// tildeβ_i = weight(j0, i).
    pub tilde_beta: Vec<FieldElem>,
    /// tildeβ_k, nonzero.
    pub xi_j0k: FieldElem,
    /// tildeβ / ξ_{j0 k}.
    pub hat_beta: Vec<FieldElem>,
}

impl NormalizedPoly {
    pub fn new(p: &MultilinearPoly) -> Result<NormalizedPoly> {
        if p.classify() == PolyClass::Derogatory {
            return Err(Error::Derogatory);
        }
        let f = p.field().clone();
        let k = p.k();
        let i0 = (1..=k).find(|&v| !f.is_zero(&p.weight(v, 1))).expect("generic polynomial has a nonzero slot-1 weight");
        let swapped = if i0 == 1 { p.clone() } else { p.swap_variables(1, i0) };
        let scale = swapped.weight(1, 1);
        let base = swapped.scale(&f.inv(&scale).unwrap());
        let beta: Vec<FieldElem> = (1..=k).map(|s| base.weight(1, s)).collect();
        let xi = beta[1..].iter().fold(f.zero(), |acc, b| f.add(&acc, b));
        let j0 = (1..=k)
            .find(|&v| !f.is_zero(&base.weight(v, k)))
            .expect("the slot-k weights sum to the nonzero coefficient sum");
        let tilde_beta: Vec<FieldElem> = (1..=k).map(|s| base.weight(j0, s)).collect();
        let xi_j0k = tilde_beta[k - 1].clone();
        let inv = f.inv(&xi_j0k).unwrap();
        let hat_beta = tilde_beta.iter().map(|b| f.mul(b, &inv)).collect();
        Ok(NormalizedPoly { original: p.clone(), base, i0, scale, beta, xi, j0, tilde_beta, xi_j0k, hat_beta })
    }

    pub fn field(&self) -> &Field {
        self.base.field()
    }

    pub fn k(&self) -> usize {
        self.base.k()
    }

    /// Smallest j ≥ 2 with τ_j ≠ 0, where τ_j sums the base coefficients of
    /// the words starting x_1 x_j.
    pub fn find_tau_index(&self) -> Result<(usize, FieldElem)> {
        let k = self.k();
        if k < 3 {
            return Err(Error::Precondition("find_tau_index needs arity at least 3".into()));
        }
        let f = self.field();
        for j in 2..=k {
            let tau = self
                .base
                .terms()
                .iter()
                .filter(|(p, _)| p.at(1) == 1 && p.at(2) == j)
                .fold(f.zero(), |acc, (_, c)| f.add(&acc, c));
            if !f.is_zero(&tau) {
                return Ok((j, tau));
            }
        }
        unreachable!("the τ_j sum to β_1 = 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(f: &Field, n: usize, i: usize, j: usize) -> Matrix {
        Matrix::unit(f, n, i - 1, j - 1)
    }

    fn random(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::new(field, n, n, (0..n * n).map(|_| field.random(rng)).collect()).unwrap()
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(3)[1].images(), &[1, 3, 2]);
        let p = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(p.inverse().images(), &[3, 1, 2]);
        assert_eq!(p.sign(), 1);
        assert_eq!(Permutation::new(vec![2, 1, 3]).unwrap().sign(), -1);
        assert_eq!(p.slot_of(1), 3);
    }

    #[test]
    fn evaluation_examples() {
        let q = Field::rationals();
        let comm = MultilinearPoly::commutator(&q);
        assert_eq!(comm.evaluate(&[e(&q, 2, 1, 1), e(&q, 2, 1, 2)]).unwrap(), e(&q, 2, 1, 2));

        let p = MultilinearPoly::from_i64_terms(&q, 3, &[(&[1, 2, 3], 1), (&[2, 1, 3], -1)]).unwrap();
        let t = [e(&q, 3, 1, 1), e(&q, 3, 1, 2), e(&q, 3, 1, 2)];
        assert!(p.evaluate(&t).unwrap().is_zero());
        let id = Matrix::identity(&q, 3);
        let shifted = [e(&q, 3, 1, 1), id.add(&e(&q, 3, 1, 2)), id.add(&e(&q, 3, 1, 2))];
        assert_eq!(p.evaluate(&shifted).unwrap(), e(&q, 3, 1, 2));

        let xy = MultilinearPoly::product(&q);
        assert!(xy.is_zero_tuple(&[e(&q, 2, 1, 1), e(&q, 2, 2, 1)]).unwrap());
        assert!(!xy.is_zero_tuple(&[e(&q, 2, 1, 1), e(&q, 2, 1, 2)]).unwrap());
        let z = Matrix::zeros(&q, 2, 2);
        assert!(p.is_zero_tuple(&[z.clone(), z.clone(), z]).unwrap());
    }

    #[test]
    fn evaluation_errors() {
        let q = Field::rationals();
        let f3 = Field::gf(3).unwrap();
        let xy = MultilinearPoly::product(&q);
        assert!(xy.evaluate(&[Matrix::identity(&q, 2)]).is_err());
        assert!(xy.evaluate(&[Matrix::identity(&q, 2), Matrix::identity(&f3, 2)]).is_err());
        assert!(xy.evaluate(&[Matrix::identity(&q, 2), Matrix::identity(&q, 3)]).is_err());
    }

    #[test]
    fn coefficient_sums_and_classes() {
        let f3 = Field::gf(3).unwrap();
        let f2 = Field::gf(2).unwrap();
        let q = Field::rationals();
        let j3 = MultilinearPoly::jordan(&f3);
        assert_eq!((j3.coeff_sum(), j3.classify()), (f3.from_i64(2), PolyClass::Generic));
        assert_eq!(MultilinearPoly::commutator(&q).classify(), PolyClass::Derogatory);
        assert_eq!(MultilinearPoly::jordan(&f2).classify(), PolyClass::Derogatory);
        assert_eq!(MultilinearPoly::jordan(&f2).coeff_sum(), f2.zero());
    }

    #[test]
    fn cof_matrix_examples() {
        let q = Field::rationals();
        let f3 = Field::gf(3).unwrap();
        let (m, inv) = MultilinearPoly::product(&q).cof_matrix();
        assert_eq!((m, inv), (Matrix::identity(&q, 2), true));
        let (m, inv) = MultilinearPoly::commutator(&q).cof_matrix();
        assert_eq!((m, inv), (Matrix::from_i64(&q, 2, 2, &[1, -1, -1, 1]), false));
        let (m, inv) = MultilinearPoly::jordan(&f3).cof_matrix();
        assert_eq!((m, inv), (Matrix::from_i64(&f3, 2, 2, &[1, 1, 1, 1]), false));
    }

    #[test]
    fn cof_rows_sum_to_coefficient_sum() {
        let f = Field::gf(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let k = rng.gen_range(2..=4);
            let mut terms = Vec::new();
            for p in Permutation::all(k) {
                if rng.gen_bool(0.5) {
                    terms.push((p.images().to_vec(), f.random(&mut rng)));
                }
            }
            let p = MultilinearPoly::new(&f, k, terms).unwrap();
            let (m, _) = p.cof_matrix();
            for i in 0..k {
                let s = m.row(i).iter().fold(f.zero(), |a, b| f.add(&a, b));
                assert_eq!(s, p.coeff_sum());
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let f5 = Field::gf(5).unwrap();
        let np = MultilinearPoly::jordan(&f5).normalize().unwrap();
        let ones = vec![f5.one(), f5.one()];
        assert_eq!((np.i0, np.j0), (1, 1));
        assert_eq!((np.beta.clone(), np.xi.clone()), (ones.clone(), f5.one()));
        assert_eq!((np.tilde_beta.clone(), np.xi_j0k.clone()), (ones, f5.one()));

        let q = Field::rationals();
        let np = MultilinearPoly::product(&q).normalize().unwrap();
        assert_eq!(np.beta, vec![q.one(), q.zero()]);
        assert_eq!(np.xi, q.zero());
        assert_eq!(np.j0, 2);
        assert_eq!(np.tilde_beta, vec![q.zero(), q.one()]);

        let single = MultilinearPoly::from_i64_terms(&q, 3, &[(&[1, 2, 3], 1)]).unwrap();
        let np = single.normalize().unwrap();
        assert_eq!(np.beta, vec![q.one(), q.zero(), q.zero()]);
        assert_eq!(np.j0, 3);

        assert_eq!(MultilinearPoly::commutator(&q).normalize().unwrap_err(), Error::Derogatory);
    }

    #[test]
    fn normalize_swaps_variables_when_needed() {
        let f7 = Field::gf(7).unwrap();
        // yx + 3 yxz-like: variable 1 never at slot 1
        let p = MultilinearPoly::from_i64_terms(&f7, 3, &[(&[2, 1, 3], 3), (&[3, 2, 1], 1)]).unwrap();
        let np = p.normalize().unwrap();
        assert_eq!(np.i0, 2);
        assert_eq!(np.beta[0], f7.one());
        // Σβ = 1 + ξ = coefficient sum / scale
        let sum = np.beta.iter().fold(f7.zero(), |a, b| f7.add(&a, b));
        assert_eq!(sum, f7.div(&p.coeff_sum(), &np.scale));
        assert_eq!(sum, f7.add(&f7.one(), &np.xi));
        // base on a tuple equals p on the tuple with slots 1 and i0 exchanged, divided by scale
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let t: Vec<Matrix> = (0..3).map(|_| random(&f7, 2, &mut rng)).collect();
            let mut swapped = t.clone();
            swapped.swap(0, np.i0 - 1);
            let lhs = np.base.evaluate(&t).unwrap();
            let rhs = p.evaluate(&swapped).unwrap().scale(&f7.inv(&np.scale).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn standard_polynomials() {
        let q = Field::rationals();
        assert_eq!(MultilinearPoly::standard_polynomial(&q, 2).unwrap(), MultilinearPoly::commutator(&q));
        let s3 = MultilinearPoly::standard_polynomial(&q, 3).unwrap();
        assert_eq!(s3.terms().len(), 6);
        let s4 = MultilinearPoly::standard_polynomial(&q, 4).unwrap();
        assert_eq!(s4.terms().len(), 24);
        assert_eq!(s4.coeff_sum(), q.zero());
    }

    #[test]
    fn tau_index_examples() {
        let q = Field::rationals();
        let p = MultilinearPoly::from_i64_terms(&q, 3, &[(&[1, 2, 3], 1)]).unwrap();
        assert_eq!(p.normalize().unwrap().find_tau_index().unwrap(), (2, q.one()));
        // x1x3x2 + x1x2x3 − x2x1x3: the slot-1 weight of x1 is 2, so the
        // normalized coefficient of x1x2x3 is 1/2
        let p = MultilinearPoly::from_i64_terms(&q, 3, &[(&[1, 3, 2], 1), (&[1, 2, 3], 1), (&[2, 1, 3], -1)]).unwrap();
        let np = p.normalize().unwrap();
        assert_eq!(np.scale, q.from_i64(2));
        assert_eq!(np.find_tau_index().unwrap(), (2, q.from_ratio(1, 2).unwrap()));
        let p = MultilinearPoly::from_i64_terms(&q, 3, &[(&[1, 3, 2], 1), (&[2, 3, 1], 1)]).unwrap();
        assert_eq!(p.normalize().unwrap().find_tau_index().unwrap().0, 3);
        assert!(MultilinearPoly::jordan(&q).normalize().unwrap().find_tau_index().is_err());
    }

    #[test]
    fn multilinearity_and_equivariance() {
        let f = Field::gf(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = MultilinearPoly::from_i64_terms(&f, 3, &[(&[1, 2, 3], 1), (&[3, 1, 2], 2), (&[2, 3, 1], 4)]).unwrap();
        for _ in 0..20 {
            let t: Vec<Matrix> = (0..3).map(|_| random(&f, 3, &mut rng)).collect();
            let b = random(&f, 3, &mut rng);
            let pos = rng.gen_range(0..3);
            let mut ta = t.clone();
            ta[pos] = t[pos].add(&b);
            let mut tb = t.clone();
            tb[pos] = b;
            assert_eq!(p.evaluate(&ta).unwrap(), p.evaluate(&t).unwrap().add(&p.evaluate(&tb).unwrap()));

            let s = random(&f, 3, &mut rng);
            if let Some(si) = s.inverse() {
                let conj: Vec<Matrix> = t.iter().map(|a| s.mul(a).mul(&si)).collect();
                assert_eq!(p.evaluate(&conj).unwrap(), s.mul(&p.evaluate(&t).unwrap()).mul(&si));
            }
        }
    }

    #[test]
    fn coefficient_fixing_hom_commutes_with_evaluation() {
        let gf4 = Field::gf_ext(2, 2).unwrap();
        let p = MultilinearPoly::from_i64_terms(&gf4, 3, &[(&[1, 2, 3], 1), (&[3, 2, 1], 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for hom in gf4.enumerate_homs() {
            for _ in 0..10 {
                let t: Vec<Matrix> = (0..3).map(|_| random(&gf4, 2, &mut rng)).collect();
                let th: Vec<Matrix> = t.iter().map(|a| a.apply_hom(hom).unwrap()).collect();
                assert_eq!(p.evaluate(&th).unwrap(), p.evaluate(&t).unwrap().apply_hom(hom).unwrap());
            }
        }
    }
}
