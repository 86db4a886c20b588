use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::MultilinearPoly;
use crate::budget;
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::matrixcore::{matrix_count, matrix_from_index, Matrix};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    /// No tuple evaluated to a nonzero matrix.
    pub no_witness: bool,
    /// `no_witness` and every tuple was checked.
    pub identity: bool,
    pub exhaustive: bool,
    /// Tuples examined (up to and including the witness, when found).
    pub checked: u128,
    pub witness: Option<Vec<Matrix>>,
    pub value: Option<Matrix>,
    pub seed: Option<u64>,
}

/// The `idx`-th k-tuple of n×n matrices, the first matrix most significant.
pub fn tuple_from_index(field: &Field, n: usize, k: usize, mut idx: u128) -> Vec<Matrix> {
    let per = matrix_count(field, n, n).expect("finite field");
    let mut out = vec![Matrix::zeros(field, n, n); k];
    for slot in out.iter_mut().rev() {
        *slot = matrix_from_index(field, n, n, idx % per);
        idx /= per;
    }
    out
}

/// The `i`-th sampled k-tuple for a seed; independent of any other sample.
pub fn sampled_tuple(field: &Field, n: usize, k: usize, seed: u64, i: u64) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    (0..k)
        .map(|_| Matrix::raw(field, n, n, (0..n * n).map(|_| field.random(&mut rng)).collect()))
        .collect()
}

/// Tests whether p vanishes on M_n(F) for a finite field F.
pub fn is_identity_on(p: &MultilinearPoly, n: usize, mode: IdentityMode, jobs: usize) -> Result<IdentityVerdict> {
    let field = p.field().clone();
    if !field.is_finite() {
        return Err(Error::Unsupported("identity testing needs a finite field".into()));
    }
    let k = p.k();
    match mode {
        IdentityMode::Exhaustive => {
            let total = budget::pow_sat(matrix_count(&field, n, n)?, k as u32);
            budget::check(total, budget::TUPLE_BUDGET)?;
            let hit = par::find_first(total, jobs, |i| !p.eval_unchecked(&tuple_from_index(&field, n, k, i)).is_zero());
            Ok(match hit {
                None => IdentityVerdict {
                    no_witness: true,
                    identity: true,
                    exhaustive: true,
                    checked: total,
                    witness: None,
                    value: None,
                    seed: None,
                },
                Some(i) => {
                    let t = tuple_from_index(&field, n, k, i);
                    let v = p.eval_unchecked(&t);
                    IdentityVerdict {
                        no_witness: false,
                        identity: false,
                        exhaustive: true,
                        checked: i + 1,
                        witness: Some(t),
                        value: Some(v),
                        seed: None,
                    }
                }
            })
        }
        IdentityMode::Sample { count, seed } => {
            let hit = par::find_first(count as u128, jobs, |i| {
                !p.eval_unchecked(&sampled_tuple(&field, n, k, seed, i as u64)).is_zero()
            });
            let (witness, value, checked) = match hit {
                None => (None, None, count as u128),
                Some(i) => {
                    let t = sampled_tuple(&field, n, k, seed, i as u64);
                    let v = p.eval_unchecked(&t);
                    (Some(t), Some(v), i + 1)
                }
            };
            Ok(IdentityVerdict {
                no_witness: witness.is_none(),
                identity: false,
                exhaustive: false,
                checked,
                witness,
                value,
                seed: Some(seed),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_witness_on_2x2_over_gf2() {
        let f2 = Field::gf(2).unwrap();
        let v = is_identity_on(&MultilinearPoly::commutator(&f2), 2, IdentityMode::Exhaustive, 1).unwrap();
        assert!(!v.identity);
        let w = v.witness.unwrap();
        assert_eq!(w, vec![Matrix::unit(&f2, 2, 0, 0), Matrix::unit(&f2, 2, 0, 1)]);
        assert_eq!(v.value.unwrap(), Matrix::unit(&f2, 2, 0, 1));
    }

    #[test]
    fn sampling_reports_no_witness_rather_than_identity() {
        let f2 = Field::gf(2).unwrap();
        let s4 = MultilinearPoly::standard_polynomial(&f2, 4).unwrap();
        let v = is_identity_on(&s4, 2, IdentityMode::Sample { count: 200, seed: 1 }, 2).unwrap();
        assert!(v.no_witness && !v.identity);
    }

    #[test]
    fn budget_is_enforced() {
        let f3 = Field::gf(3).unwrap();
        let s4 = MultilinearPoly::standard_polynomial(&f3, 4).unwrap();
        assert!(matches!(
            is_identity_on(&s4, 2, IdentityMode::Exhaustive, 1),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn sampled_tuples_are_reproducible() {
        let f5 = Field::gf(5).unwrap();
        assert_eq!(sampled_tuple(&f5, 3, 2, 7, 4), sampled_tuple(&f5, 3, 2, 7, 4));
        assert_ne!(sampled_tuple(&f5, 3, 2, 7, 4), sampled_tuple(&f5, 3, 2, 7, 5));
    }
}
