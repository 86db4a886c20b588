//! Enumeration of vectors and structured matrices over finite fields.
//!
//! Index order reads the row-major entries as base-q digits with the first
//! entry least significant, so E_11 precedes E_12 precedes E_21.

use super::Matrix;
use crate::budget;
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElem};

fn require_finite(field: &Field) -> Result<u128> {
    field
        .order()
        .map(|q| q as u128)
        .ok_or_else(|| Error::Unsupported(format!("enumeration over the infinite field {}", field.name())))
}

/// q^{rows·cols}, saturating.
pub fn matrix_count(field: &Field, rows: usize, cols: usize) -> Result<u128> {
    let q = require_finite(field)?;
    Ok(budget::pow_sat(q, (rows * cols) as u32))
}

pub fn matrix_from_index(field: &Field, rows: usize, cols: usize, mut idx: u128) -> Matrix {
    let q = field.order().expect("finite field") as u128;
    let mut data = vec![field.zero(); rows * cols];
    for slot in data.iter_mut() {
        *slot = field.elem((idx % q) as u64);
        idx /= q;
    }
    Matrix::raw(field, rows, cols, data)
}

pub fn matrix_index(m: &Matrix) -> u128 {
    let q = m.field().order().expect("finite field") as u128;
    m.entries().iter().rev().fold(0u128, |acc, a| acc * q + m.field().index_of(a) as u128)
}

pub fn vector_from_index(field: &Field, n: usize, idx: u128) -> Matrix {
    matrix_from_index(field, n, 1, idx)
}

/// All column vectors of length n.
pub fn vectors(field: &Field, n: usize) -> Result<Vec<Matrix>> {
    let count = matrix_count(field, n, 1)?;
    budget::check(count, budget::VECTOR_BUDGET)?;
    Ok((0..count).map(|i| vector_from_index(field, n, i)).collect())
}

/// Nonzero column vectors whose first nonzero entry is one.
pub fn normalized_vectors(field: &Field, n: usize) -> Result<Vec<Matrix>> {
    Ok(vectors(field, n)?
        .into_iter()
        .filter(|v| v.entries().iter().find(|a| !field.is_zero(a)).is_some_and(|a| field.is_one(a)))
        .collect())
}

fn dot(field: &Field, a: &Matrix, b: &Matrix) -> FieldElem {
    a.entries()
        .iter()
        .zip(b.entries())
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

/// q^{n−1}(q^n − 1)/(q − 1).
pub fn count_rank_one_idempotents(q: u128, n: u32) -> u128 {
    budget::pow_sat(q, n - 1) * ((budget::pow_sat(q, n) - 1) / (q - 1))
}

/// Every rank-one idempotent x·fᵀ (fᵀx = 1) exactly once: f runs over
/// normalized vectors, then x over vectors with fᵀx = 1.
pub fn rank_one_idempotents(field: &Field, n: usize) -> Result<Vec<Matrix>> {
    let all = vectors(field, n)?;
    let mut out = Vec::new();
    for f in normalized_vectors(field, n)? {
        let ft = f.transpose();
        for x in &all {
            if field.is_one(&dot(field, &f, x)) {
                out.push(x.mul(&ft));
            }
        }
    }
    Ok(out)
}

fn rank_one_filtered(field: &Field, n: usize, keep: impl Fn(&FieldElem) -> bool) -> Result<Vec<Matrix>> {
    let all = vectors(field, n)?;
    let mut out = Vec::new();
    for x in normalized_vectors(field, n)? {
        for f in all.iter().filter(|f| !f.is_zero()) {
            if keep(&dot(field, f, &x)) {
                out.push(x.mul(&f.transpose()));
            }
        }
    }
    Ok(out)
}

/// Every rank-one matrix exactly once (x normalized, f nonzero).
pub fn rank_one_matrices(field: &Field, n: usize) -> Result<Vec<Matrix>> {
    rank_one_filtered(field, n, |_| true)
}

/// Rank-one square-zero matrices x·fᵀ with fᵀx = 0.
pub fn rank_one_nilpotents(field: &Field, n: usize) -> Result<Vec<Matrix>> {
    rank_one_filtered(field, n, |t| field.is_zero(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force<F: Fn(&Matrix) -> bool>(field: &Field, n: usize, pred: F) -> Vec<Matrix> {
        let total = matrix_count(field, n, n).unwrap();
        (0..total).map(|i| matrix_from_index(field, n, n, i)).filter(|m| pred(m)).collect()
    }

    #[test]
    fn idempotent_counts_match_exhaustive_scan() {
        for (p, n, expected) in [(2u64, 2usize, 6u128), (2, 3, 28), (3, 2, 12), (3, 3, 117)] {
            let f = Field::gf(p).unwrap();
            let listed = rank_one_idempotents(&f, n).unwrap();
            assert_eq!(listed.len() as u128, expected);
            assert_eq!(count_rank_one_idempotents(p as u128, n as u32), expected);
            let mut brute = brute_force(&f, n, |m| m.is_idempotent() && m.rank() == 1);
            let mut sorted = listed.clone();
            sorted.sort_by(|a, b| a.cmp_canonical(b));
            brute.sort_by(|a, b| a.cmp_canonical(b));
            assert_eq!(sorted, brute);
        }
    }

    #[test]
    fn rank_one_and_nilpotent_counts() {
        let f = Field::gf(3).unwrap();
        let r1 = rank_one_matrices(&f, 2).unwrap();
        assert_eq!(r1.len(), brute_force(&f, 2, |m| m.rank() == 1).len());
        let nil = rank_one_nilpotents(&f, 2).unwrap();
        assert_eq!(nil.len(), brute_force(&f, 2, |m| m.rank() == 1 && m.is_square_zero()).len());
    }

    #[test]
    fn index_round_trip() {
        let f = Field::gf(3).unwrap();
        for i in 0..81 {
            assert_eq!(matrix_index(&matrix_from_index(&f, 2, 2, i)), i);
        }
        assert!(matrix_from_index(&f, 2, 2, 0).is_zero());
        assert_eq!(matrix_from_index(&f, 2, 2, 1), Matrix::unit(&f, 2, 0, 0));
        assert_eq!(matrix_from_index(&f, 2, 2, 3), Matrix::unit(&f, 2, 0, 1));
    }

    #[test]
    fn infinite_fields_are_rejected() {
        assert!(rank_one_idempotents(&Field::rationals(), 2).is_err());
    }
}
