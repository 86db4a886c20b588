//! Parametric and tabulated matrix maps, with engines that check whether a
//! map sends zeros of one multilinear polynomial to zeros of another.

mod examples;
mod verify;
mod witnesses;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElem, FieldHom};
use crate::matrixcore::Matrix;

pub use examples::{reproduce_example, ExampleReport, EXAMPLE_IDS};
pub use verify::{
    check_commutativity_preservation, check_maps_zeros, check_rank_one_idempotent_structure, check_zero_kernel,
    rescale_to_idempotent_preserving, IdempotentReport, Outcome, Strategy, StrategyRecord, Verdict, Violation,
    ViolationKind,
};
pub use witnesses::{structured_witness_tuples, unit_matrices, WitnessTuple};

/// γ(A): a constant, or a table keyed by canonical matrix text with a default
/// for matrices not listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gamma {
    Constant(FieldElem),
    Table { values: BTreeMap<String, FieldElem>, default: FieldElem },
}

/// μ(A), the coefficient of the added identity; unlisted matrices get 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shift {
    None,
    Table(BTreeMap<String, FieldElem>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryTweak {
    None,
    /// A ↦ A + a₁₂·Id.
    AddA12Identity,
    /// A ↦ A − (Tr A / n)·Id.
    SubtractTraceOverN,
}

impl EntryTweak {
    pub fn name(self) -> &'static str {
        match self {
            EntryTweak::None => "none",
            EntryTweak::AddA12Identity => "add_a12_identity",
            EntryTweak::SubtractTraceOverN => "subtract_trace_over_n",
        }
    }

    pub fn from_name(s: &str) -> Result<EntryTweak> {
        match s {
            "none" => Ok(EntryTweak::None),
            "add_a12_identity" => Ok(EntryTweak::AddA12Identity),
            "subtract_trace_over_n" => Ok(EntryTweak::SubtractTraceOverN),
            _ => Err(Error::Invalid(format!("unknown entry tweak {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametric {
    pub t: Matrix,
    pub t_inv: Matrix,
    pub hom: FieldHom,
    pub transpose: bool,
    pub gamma: Gamma,
    pub shift: Shift,
    pub tweak: EntryTweak,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Parametric(Parametric),
    /// Explicit images keyed by the canonical text of the source; every
    /// matrix not listed maps to itself.
    Table(BTreeMap<String, (Matrix, Matrix)>),
}

/// A map Φ on M_n(F).
///
/// Parametric maps apply, in this order: the entry tweak, the field
/// homomorphism, the optional transpose, conjugation by T, scaling by γ(A)
/// and adding μ(A)·Id, where γ and μ are read at the original A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreserverSpec {
    pub n: usize,
    pub field: Field,
    pub mode: Mode,
}

impl PreserverSpec {
    pub fn parametric(
        t: Matrix,
        hom: FieldHom,
        transpose: bool,
        gamma: Gamma,
        shift: Shift,
        tweak: EntryTweak,
    ) -> Result<PreserverSpec> {
        if !t.is_square() {
            return Err(Error::DimensionMismatch("T must be square".into()));
        }
        let field = t.field().clone();
        let n = t.rows();
        let t_inv = t.inverse().ok_or(Error::Singular)?;
        if !field.supports_hom(hom) {
            return Err(Error::Invalid(format!("{hom:?} is not an automorphism of {}", field.name())));
        }
        let gammas: Vec<&FieldElem> = match &gamma {
            Gamma::Constant(c) => vec![c],
            Gamma::Table { values, default } => values.values().chain(std::iter::once(default)).collect(),
        };
        for g in gammas {
            if !field.contains(g) {
                return Err(Error::FieldMismatch("γ value outside the field".into()));
            }
            if field.is_zero(g) {
                return Err(Error::Invalid("γ values must be nonzero".into()));
            }
        }
        if let Shift::Table(m) = &shift {
            if m.values().any(|c| !field.contains(c)) {
                return Err(Error::FieldMismatch("shift value outside the field".into()));
            }
        }
        match tweak {
            EntryTweak::AddA12Identity if n < 2 => {
                return Err(Error::Invalid("add_a12_identity needs n ≥ 2".into()));
            }
            EntryTweak::SubtractTraceOverN if field.is_zero(&field.from_i64(n as i64)) => {
                return Err(Error::Invalid(format!("n = {n} is zero in {}", field.name())));
            }
            _ => {}
        }
        Ok(PreserverSpec { n, field, mode: Mode::Parametric(Parametric { t, t_inv, hom, transpose, gamma, shift, tweak }) })
    }

    /// Similarity A ↦ T A T⁻¹.
    pub fn similarity(t: Matrix) -> Result<PreserverSpec> {
        let one = t.field().one();
        PreserverSpec::parametric(t, FieldHom::Identity, false, Gamma::Constant(one), Shift::None, EntryTweak::None)
    }

    pub fn identity(field: &Field, n: usize) -> PreserverSpec {
        PreserverSpec::similarity(Matrix::identity(field, n)).expect("identity is invertible")
    }

    pub fn tweak_only(field: &Field, n: usize, tweak: EntryTweak) -> Result<PreserverSpec> {
        PreserverSpec::parametric(Matrix::identity(field, n), FieldHom::Identity, false, Gamma::Constant(field.one()), Shift::None, tweak)
    }

    /// A tabulated map from (source, image) pairs; unlisted matrices are fixed.
    pub fn table(field: &Field, n: usize, pairs: Vec<(Matrix, Matrix)>) -> Result<PreserverSpec> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            for m in [&a, &b] {
                if m.field() != field || m.rows() != n || m.cols() != n {
                    return Err(Error::DimensionMismatch(format!("table entries must be {n}×{n} over {}", field.name())));
                }
            }
            if map.insert(a.canonical_key(), (a, b)).is_some() {
                return Err(Error::Invalid("table lists a source twice".into()));
            }
        }
        Ok(PreserverSpec { n, field: field.clone(), mode: Mode::Table(map) })
    }

    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        if a.field() != &self.field || a.rows() != self.n || a.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("expected a {}×{} matrix over {}", self.n, self.n, self.field.name())));
        }
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &Matrix) -> Matrix {
        let f = &self.field;
        match &self.mode {
            Mode::Table(map) => map.get(&a.canonical_key()).map_or_else(|| a.clone(), |(_, b)| b.clone()),
            Mode::Parametric(p) => {
                let key = a.canonical_key();
                let mut b = match p.tweak {
                    EntryTweak::None => a.clone(),
                    EntryTweak::AddA12Identity => a.add(&Matrix::scalar(f, self.n, a.get(0, 1).clone())),
                    EntryTweak::SubtractTraceOverN => {
                        let c = f.div(&a.trace(), &f.from_i64(self.n as i64));
                        a.sub(&Matrix::scalar(f, self.n, c))
                    }
                };
                if p.hom != FieldHom::Identity {
                    b = b.apply_hom(p.hom).expect("validated homomorphism");
                }
                if p.transpose {
                    b = b.transpose();
                }
                b = p.t.mul(&b).mul(&p.t_inv);
                let g = match &p.gamma {
                    Gamma::Constant(c) => c,
                    Gamma::Table { values, default } => values.get(&key).unwrap_or(default),
                };
                if !f.is_one(g) {
                    b = b.scale(g);
                }
                if let Shift::Table(m) = &p.shift {
                    if let Some(mu) = m.get(&key) {
                        b = b.add(&Matrix::scalar(f, self.n, mu.clone()));
                    }
                }
                b
            }
        }
    }
}
