use num_integer::Integer;

use super::{factor_poly, roots, Field, FieldElem, UniPoly};
use crate::error::{Error, Result};

/// Field embedding GF(q) → GF(q^m). For a prime base field the prime
/// subfield encodings coincide; otherwise the base generator is sent to a
/// fixed root of the base modulus.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    generator_image: Option<FieldElem>,
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        Embedding { source: field.clone(), target: field.clone(), generator_image: None }
    }

    /// Embedding of `source` into `target`, which must be a finite extension
    /// of the same characteristic whose degree is a multiple of the source's.
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if source == target {
            return Ok(Embedding::identity(source));
        }
        if !source.is_finite()
            || !target.is_finite()
            || source.characteristic() != target.characteristic()
            || !target.degree().is_multiple_of(source.degree())
        {
            return Err(Error::FieldMismatch(format!(
                "{} does not embed into {}",
                source.name(),
                target.name()
            )));
        }
        let generator_image = if source.degree() == 1 {
            None
        } else {
            let modulus = match source.descriptor() {
                super::FieldDescriptor::Extension { modulus, .. } => modulus,
                _ => unreachable!(),
            };
            let lifted = UniPoly::new(target, modulus.iter().map(|&c| target.elem(c)).collect());
            let rs = roots(&lifted)?;
            let first = rs
                .into_iter()
                .map(|(r, _)| r)
                .min_by(|a, b| target.cmp(a, b))
                .ok_or_else(|| Error::FieldMismatch("base modulus has no root in target".into()))?;
            Some(first)
        };
        Ok(Embedding { source: source.clone(), target: target.clone(), generator_image })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    pub fn map_elem(&self, a: &FieldElem) -> FieldElem {
        if self.is_identity() {
            return a.clone();
        }
        match &self.generator_image {
            None => a.clone(),
            Some(g) => {
                let t = &self.target;
                let digits = self.source.digits(a);
                digits.iter().rev().fold(t.zero(), |acc, &c| t.add(&t.mul(&acc, g), &t.elem(c)))
            }
        }
    }

    pub fn map_poly(&self, f: &UniPoly) -> UniPoly {
        f.map_coeffs(&self.target, |c| self.map_elem(c))
    }
}

/// The smallest extension of a finite field in which `f` splits, with the
/// embedding of the base field. Non-finite fields are accepted only when `f`
/// already splits.
pub fn splitting_field(f: &UniPoly) -> Result<(Field, Embedding)> {
    let field = f.field().clone();
    let monic = f.monic();
    let m = if monic.degree().unwrap_or(0) == 0 {
        1
    } else {
        factor_poly(&monic)?
            .iter()
            .fold(1usize, |acc, (g, _)| acc.lcm(&g.degree().unwrap()))
    };
    if m == 1 {
        return Ok((field.clone(), Embedding::identity(&field)));
    }
    if !field.is_finite() {
        return Err(Error::NotSplit);
    }
    let target = Field::gf_ext(field.characteristic(), field.degree() * m as u32)?;
    let emb = Embedding::new(&field, &target)?;
    Ok((target, emb))
}
