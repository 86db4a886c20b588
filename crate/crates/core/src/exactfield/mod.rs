//! Exact scalar fields: GF(p), GF(p^k), ℚ and ℚ(i).
//!
//! A [`Field`] is a cheap shared handle; [`FieldElem`] values carry no field
//! reference and are only meaningful together with the handle that made them.

mod factor;
mod finite;
mod poly;
mod split;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use finite::FiniteField;

pub use factor::{factor_poly, factor_poly_seeded, is_irreducible, roots};
pub use poly::UniPoly;
pub use split::{splitting_field, Embedding};

/// Serializable description of a field, sufficient to rebuild it exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Prime { p: u64 },
    /// GF(p^k) as GF(p)[x]/(modulus); modulus lowest degree first, monic.
    Extension { p: u64, modulus: Vec<u64> },
    Rationals,
    GaussianRationals,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

/// A field element in canonical form. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    /// Encoding Σ c_i p^i of the coefficient vector (the residue for GF(p)).
    Fin(u64),
    Rat(Box<BigRational>),
    Gauss(Box<Gaussian>),
}

/// Field automorphisms supported by the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldHom {
    Identity,
    /// x ↦ x^{p^e} on GF(p^k), 1 ≤ e < k.
    Frobenius(u32),
    /// a + bi ↦ a − bi on ℚ(i).
    Conjugation,
}

#[derive(Debug)]
enum Kind {
    Finite(FiniteField),
    Rationals,
    Gaussian,
}

#[derive(Clone)]
pub struct Field(Arc<Kind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Kind::Finite(a), Kind::Finite(b)) => a == b,
            (Kind::Rationals, Kind::Rationals) | (Kind::Gaussian, Kind::Gaussian) => true,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field {
    pub fn new(desc: &FieldDescriptor) -> Result<Field> {
        match desc {
            FieldDescriptor::Prime { p } => Field::gf(*p),
            FieldDescriptor::Extension { p, modulus } => Field::gf_with_modulus(*p, modulus),
            FieldDescriptor::Rationals => Ok(Field::rationals()),
            FieldDescriptor::GaussianRationals => Ok(Field::gaussian()),
        }
    }

    pub fn gf(p: u64) -> Result<Field> {
        if p >= 1 << 31 || !finite::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(Kind::Finite(FiniteField::prime(p)))))
    }

    /// GF(p^k) defined by the given monic modulus (lowest degree first).
    pub fn gf_with_modulus(p: u64, modulus: &[u64]) -> Result<Field> {
        let base = Field::gf(p)?;
        if modulus.len() < 2 || modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(Error::Reducible { p });
        }
        if modulus.len() == 2 {
            return Ok(base);
        }
        let k = (modulus.len() - 1) as u32;
        if (p as u128).checked_pow(k).is_none_or(|q| q >= 1 << 62) {
            return Err(Error::Unsupported(format!("GF({p}^{k}) is too large")));
        }
        let f = UniPoly::new(&base, modulus.iter().map(|&c| FieldElem::Fin(c)).collect());
        if !is_irreducible(&f)? {
            return Err(Error::Reducible { p });
        }
        Ok(Field(Arc::new(Kind::Finite(FiniteField::new(p, modulus.to_vec())))))
    }

    /// GF(p^k) with the lexicographically first monic irreducible modulus.
    pub fn gf_ext(p: u64, k: u32) -> Result<Field> {
        let base = Field::gf(p)?;
        if k == 1 {
            return Ok(base);
        }
        let modulus = first_irreducible(&base, k as usize)?;
        Field::gf_with_modulus(p, &modulus)
    }

    pub fn rationals() -> Field {
        Field(Arc::new(Kind::Rationals))
    }

    pub fn gaussian() -> Field {
        Field(Arc::new(Kind::Gaussian))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match &*self.0 {
            Kind::Finite(f) if f.k == 1 => FieldDescriptor::Prime { p: f.p },
            Kind::Finite(f) => FieldDescriptor::Extension { p: f.p, modulus: f.modulus.clone() },
            Kind::Rationals => FieldDescriptor::Rationals,
            Kind::Gaussian => FieldDescriptor::GaussianRationals,
        }
    }

    pub fn name(&self) -> String {
        match &*self.0 {
            Kind::Finite(f) if f.k == 1 => format!("GF({})", f.p),
            Kind::Finite(f) => format!("GF({}^{})", f.p, f.k),
            Kind::Rationals => "Q".to_string(),
            Kind::Gaussian => "Q(i)".to_string(),
        }
    }

    fn finite(&self) -> Option<&FiniteField> {
        match &*self.0 {
            Kind::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite().is_some()
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(&*self.0, Kind::Gaussian)
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        self.finite().map(|f| f.q)
    }

    pub fn characteristic(&self) -> u64 {
        self.finite().map_or(0, |f| f.p)
    }

    /// Extension degree over the prime field (1 for ℚ and GF(p), 2 for ℚ(i)).
    pub fn degree(&self) -> u32 {
        match &*self.0 {
            Kind::Finite(f) => f.k as u32,
            Kind::Rationals => 1,
            Kind::Gaussian => 2,
        }
    }

    pub fn zero(&self) -> FieldElem {
        match &*self.0 {
            Kind::Finite(_) => FieldElem::Fin(0),
            Kind::Rationals => FieldElem::Rat(Box::new(BigRational::zero())),
            Kind::Gaussian => FieldElem::Gauss(Box::new(Gaussian {
                re: BigRational::zero(),
                im: BigRational::zero(),
            })),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match &*self.0 {
            Kind::Finite(f) => FieldElem::Fin(n.rem_euclid(f.p as i64) as u64),
            Kind::Rationals => FieldElem::Rat(Box::new(rat(n, 1))),
            Kind::Gaussian => FieldElem::Gauss(Box::new(Gaussian {
                re: rat(n, 1),
                im: BigRational::zero(),
            })),
        }
    }

    /// The rational `num/den`, mapped into the field; `None` if `den` vanishes there.
    pub fn from_ratio(&self, num: i64, den: i64) -> Option<FieldElem> {
        let d = self.from_i64(den);
        let d_inv = self.inv(&d)?;
        Some(self.mul(&self.from_i64(num), &d_inv))
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElem> {
        match &*self.0 {
            Kind::Rationals => Ok(FieldElem::Rat(Box::new(r.clone()))),
            Kind::Gaussian => Ok(FieldElem::Gauss(Box::new(Gaussian {
                re: r.clone(),
                im: BigRational::zero(),
            }))),
            Kind::Finite(_) => Err(Error::FieldMismatch(format!(
                "rational literal {r} in {}",
                self.name()
            ))),
        }
    }

    pub fn gaussian_elem(&self, re: BigRational, im: BigRational) -> Result<FieldElem> {
        match &*self.0 {
            Kind::Gaussian => Ok(FieldElem::Gauss(Box::new(Gaussian { re, im }))),
            _ => Err(Error::FieldMismatch(format!("gaussian literal in {}", self.name()))),
        }
    }

    /// i ∈ ℚ(i).
    pub fn imaginary_unit(&self) -> Result<FieldElem> {
        self.gaussian_elem(BigRational::zero(), BigRational::one())
    }

    /// Finite-field element from its coefficient vector (lowest first).
    pub fn from_digits(&self, digits: &[u64]) -> Result<FieldElem> {
        let f = self
            .finite()
            .ok_or_else(|| Error::FieldMismatch(format!("coefficient vector in {}", self.name())))?;
        if digits.len() > f.k || digits.iter().any(|&d| d >= f.p) {
            return Err(Error::Invalid(format!(
                "coefficient vector {digits:?} does not describe an element of {}",
                self.name()
            )));
        }
        Ok(FieldElem::Fin(f.from_digits(digits)))
    }

    pub fn digits(&self, a: &FieldElem) -> Vec<u64> {
        let f = self.finite().expect("digits of a finite-field element");
        f.digits(a.fin())
    }

    /// The element with encoding `index`, for finite fields.
    pub fn elem(&self, index: u64) -> FieldElem {
        let f = self.finite().expect("indexed elements need a finite field");
        assert!(index < f.q, "index {index} out of range for {}", self.name());
        FieldElem::Fin(index)
    }

    pub fn index_of(&self, a: &FieldElem) -> u64 {
        a.fin()
    }

    /// All elements in encoding order, for finite fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        let q = self.order().expect("element enumeration needs a finite field");
        (0..q).map(FieldElem::Fin)
    }

    /// A random element: uniform for finite fields, small numerators and
    /// denominators for ℚ and ℚ(i).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        match &*self.0 {
            Kind::Finite(f) => FieldElem::Fin(rng.gen_range(0..f.q)),
            Kind::Rationals => {
                FieldElem::Rat(Box::new(rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))))
            }
            Kind::Gaussian => FieldElem::Gauss(Box::new(Gaussian {
                re: rat(rng.gen_range(-4..=4), rng.gen_range(1..=2)),
                im: rat(rng.gen_range(-4..=4), rng.gen_range(1..=2)),
            })),
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Fin(v) => *v == 0,
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Gauss(g) => g.re.is_zero() && g.im.is_zero(),
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&*self.0, a, b) {
            (Kind::Finite(f), FieldElem::Fin(x), FieldElem::Fin(y)) => FieldElem::Fin(f.add(*x, *y)),
            (Kind::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => {
                FieldElem::Rat(Box::new(&**x + &**y))
            }
            (Kind::Gaussian, FieldElem::Gauss(x), FieldElem::Gauss(y)) => {
                FieldElem::Gauss(Box::new(Gaussian { re: &x.re + &y.re, im: &x.im + &y.im }))
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (&*self.0, a) {
            (Kind::Finite(f), FieldElem::Fin(x)) => FieldElem::Fin(f.neg(*x)),
            (Kind::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(Box::new(-&**x)),
            (Kind::Gaussian, FieldElem::Gauss(x)) => {
                FieldElem::Gauss(Box::new(Gaussian { re: -&x.re, im: -&x.im }))
            }
            _ => mismatch(self, a, a),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&*self.0, a, b) {
            (Kind::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => {
                FieldElem::Rat(Box::new(&**x - &**y))
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&*self.0, a, b) {
            (Kind::Finite(f), FieldElem::Fin(x), FieldElem::Fin(y)) => FieldElem::Fin(f.mul(*x, *y)),
            (Kind::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => {
                FieldElem::Rat(Box::new(&**x * &**y))
            }
            (Kind::Gaussian, FieldElem::Gauss(x), FieldElem::Gauss(y)) => {
                FieldElem::Gauss(Box::new(Gaussian {
                    re: &x.re * &y.re - &x.im * &y.im,
                    im: &x.re * &y.im + &x.im * &y.re,
                }))
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (&*self.0, a) {
            (Kind::Finite(f), FieldElem::Fin(x)) => FieldElem::Fin(f.inv(*x)?),
            (Kind::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(Box::new(x.recip())),
            (Kind::Gaussian, FieldElem::Gauss(x)) => {
                let norm = &x.re * &x.re + &x.im * &x.im;
                FieldElem::Gauss(Box::new(Gaussian { re: &x.re / &norm, im: -&x.im / &norm }))
            }
            _ => mismatch(self, a, a),
        })
    }

    /// a / b; panics when b = 0.
    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let b_inv = self.inv(b).expect("division by zero");
        self.mul(a, &b_inv)
    }

    pub fn pow(&self, a: &FieldElem, e: u64) -> FieldElem {
        if let (Kind::Finite(f), FieldElem::Fin(x)) = (&*self.0, a) {
            return FieldElem::Fin(f.pow(*x, e));
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Canonical total order: encodings for finite fields, numeric for ℚ,
    /// (re, im) lexicographic for ℚ(i).
    pub fn cmp(&self, a: &FieldElem, b: &FieldElem) -> Ordering {
        match (a, b) {
            (FieldElem::Fin(x), FieldElem::Fin(y)) => x.cmp(y),
            (FieldElem::Rat(x), FieldElem::Rat(y)) => x.cmp(y),
            (FieldElem::Gauss(x), FieldElem::Gauss(y)) => {
                x.re.cmp(&y.re).then_with(|| x.im.cmp(&y.im))
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        match (&*self.0, a) {
            (Kind::Finite(f), FieldElem::Fin(x)) => *x < f.q,
            (Kind::Rationals, FieldElem::Rat(_)) | (Kind::Gaussian, FieldElem::Gauss(_)) => true,
            _ => false,
        }
    }

    /// Field automorphisms: Frobenius powers for GF(p^k), {id} for ℚ,
    /// {id, conjugation} for ℚ(i).
    pub fn enumerate_homs(&self) -> Vec<FieldHom> {
        match &*self.0 {
            Kind::Finite(f) => std::iter::once(FieldHom::Identity)
                .chain((1..f.k as u32).map(FieldHom::Frobenius))
                .collect(),
            Kind::Rationals => vec![FieldHom::Identity],
            Kind::Gaussian => vec![FieldHom::Identity, FieldHom::Conjugation],
        }
    }

    pub fn supports_hom(&self, hom: FieldHom) -> bool {
        match (hom, &*self.0) {
            (FieldHom::Identity, _) => true,
            (FieldHom::Frobenius(e), Kind::Finite(f)) => (e as usize) < f.k,
            (FieldHom::Conjugation, Kind::Gaussian) => true,
            _ => false,
        }
    }

    pub fn apply_hom(&self, hom: FieldHom, a: &FieldElem) -> Result<FieldElem> {
        if !self.supports_hom(hom) {
            return Err(Error::FieldMismatch(format!("{hom:?} is not an automorphism of {}", self.name())));
        }
        if !self.contains(a) {
            return Err(Error::FieldMismatch(format!("element does not belong to {}", self.name())));
        }
        Ok(match (hom, &*self.0, a) {
            (FieldHom::Identity, _, _) => a.clone(),
            (FieldHom::Frobenius(e), Kind::Finite(f), FieldElem::Fin(x)) => {
                let mut v = *x;
                for _ in 0..e {
                    v = f.pow(v, f.p);
                }
                FieldElem::Fin(v)
            }
            (FieldHom::Conjugation, Kind::Gaussian, FieldElem::Gauss(g)) => {
                FieldElem::Gauss(Box::new(Gaussian { re: g.re.clone(), im: -&g.im }))
            }
            _ => unreachable!(),
        })
    }

    pub fn fmt_elem(&self, a: &FieldElem) -> String {
        match (&*self.0, a) {
            (Kind::Finite(f), FieldElem::Fin(x)) if f.k == 1 => x.to_string(),
            (Kind::Finite(f), FieldElem::Fin(x)) => format!("{:?}", f.digits(*x)),
            (_, FieldElem::Rat(r)) => fmt_rational(r),
            (_, FieldElem::Gauss(g)) => {
                let sign = if g.im.is_negative() { "-" } else { "+" };
                format!("{}{}{}i", fmt_rational(&g.re), sign, fmt_rational(&g.im.abs()))
            }
            _ => format!("{a:?}"),
        }
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn mismatch(field: &Field, a: &FieldElem, b: &FieldElem) -> ! {
    panic!("elements {a:?}, {b:?} do not belong to {}", field.name())
}

impl FieldElem {
    pub(crate) fn fin(&self) -> u64 {
        match self {
            FieldElem::Fin(v) => *v,
            other => panic!("expected a finite-field element, got {other:?}"),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_gaussian(&self) -> Option<&Gaussian> {
        match self {
            FieldElem::Gauss(g) => Some(g),
            _ => None,
        }
    }
}

fn first_irreducible(base: &Field, k: usize) -> Result<Vec<u64>> {
    let p = base.order().unwrap();
    let count = p.checked_pow(k as u32).ok_or_else(|| Error::Unsupported("extension too large".into()))?;
    for idx in 0..count {
        let mut low = Vec::with_capacity(k + 1);
        let mut v = idx;
        for _ in 0..k {
            low.push(v % p);
            v /= p;
        }
        if low[0] == 0 {
            continue;
        }
        low.push(1);
        let f = UniPoly::new(base, low.iter().map(|&c| FieldElem::Fin(c)).collect());
        if is_irreducible(&f)? {
            return Ok(low);
        }
    }
    Err(Error::Unsupported(format!("no irreducible of degree {k} over GF({p})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_make_examples() {
        let f5 = Field::gf(5).unwrap();
        assert_eq!(f5.mul(&f5.from_i64(2), &f5.from_i64(3)), f5.one());

        let gf4 = Field::gf_with_modulus(2, &[1, 1, 1]).unwrap();
        assert_eq!(gf4.order(), Some(4));

        let q = Field::rationals();
        let sum = q.add(&q.from_ratio(1, 2).unwrap(), &q.from_ratio(1, 3).unwrap());
        assert_eq!(sum, q.from_ratio(5, 6).unwrap());
        assert_eq!(q.fmt_elem(&sum), "5/6");
    }

    #[test]
    fn field_make_errors() {
        assert_eq!(Field::gf(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::gf(1), Err(Error::NotPrime(1)));
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(Field::gf_with_modulus(2, &[1, 0, 1]), Err(Error::Reducible { p: 2 }));
        // not monic
        assert!(Field::gf_with_modulus(3, &[1, 0, 2]).is_err());
    }

    #[test]
    fn gf4_modulus_is_the_only_irreducible_quadratic() {
        // exhaustive check over the four monic quadratics of GF(2)
        let f2 = Field::gf(2).unwrap();
        let irreducible: Vec<_> = (0..4u64)
            .filter(|idx| {
                let (c0, c1) = (idx % 2, idx / 2);
                (0..2u64).all(|x| (x * x + c1 * x + c0) % 2 != 0)
            })
            .collect();
        assert_eq!(irreducible, vec![3]);
        assert_eq!(first_irreducible(&f2, 2).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn enumerate_homs_examples() {
        let gf4 = Field::gf_ext(2, 2).unwrap();
        assert_eq!(gf4.enumerate_homs(), vec![FieldHom::Identity, FieldHom::Frobenius(1)]);
        assert_eq!(Field::rationals().enumerate_homs(), vec![FieldHom::Identity]);
        assert_eq!(Field::gf(3).unwrap().enumerate_homs(), vec![FieldHom::Identity]);
        assert_eq!(
            Field::gaussian().enumerate_homs(),
            vec![FieldHom::Identity, FieldHom::Conjugation]
        );
    }

    #[test]
    fn frobenius_is_a_ring_hom_on_gf4_by_exhaustion() {
        let gf4 = Field::gf_ext(2, 2).unwrap();
        let phi = FieldHom::Frobenius(1);
        for a in gf4.elements() {
            for b in gf4.elements() {
                let sum = gf4.apply_hom(phi, &gf4.add(&a, &b)).unwrap();
                let prod = gf4.apply_hom(phi, &gf4.mul(&a, &b)).unwrap();
                let (pa, pb) = (gf4.apply_hom(phi, &a).unwrap(), gf4.apply_hom(phi, &b).unwrap());
                assert_eq!(sum, gf4.add(&pa, &pb));
                assert_eq!(prod, gf4.mul(&pa, &pb));
            }
        }
        let g = gf4.from_digits(&[0, 1]).unwrap();
        assert_eq!(gf4.apply_hom(phi, &g).unwrap(), gf4.mul(&g, &g));
    }

    #[test]
    fn apply_hom_examples() {
        let qi = Field::gaussian();
        let one_plus_i = qi.add(&qi.one(), &qi.imaginary_unit().unwrap());
        let conj = qi.apply_hom(FieldHom::Conjugation, &one_plus_i).unwrap();
        assert_eq!(conj, qi.sub(&qi.one(), &qi.imaginary_unit().unwrap()));

        let q = Field::rationals();
        let x = q.from_ratio(7, 3).unwrap();
        assert_eq!(q.apply_hom(FieldHom::Identity, &x).unwrap(), x);

        assert!(q.apply_hom(FieldHom::Conjugation, &x).is_err());
        assert!(Field::gf(3).unwrap().apply_hom(FieldHom::Identity, &x).is_err());
    }

    #[test]
    fn homs_preserve_one_and_operations_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [
            Field::gf_ext(3, 3).unwrap(),
            Field::gf_ext(5, 2).unwrap(),
            Field::gaussian(),
            Field::rationals(),
        ] {
            for hom in field.enumerate_homs() {
                assert_eq!(field.apply_hom(hom, &field.one()).unwrap(), field.one());
                for _ in 0..50 {
                    let (a, b) = (field.random(&mut rng), field.random(&mut rng));
                    let pa = field.apply_hom(hom, &a).unwrap();
                    let pb = field.apply_hom(hom, &b).unwrap();
                    assert_eq!(field.apply_hom(hom, &field.add(&a, &b)).unwrap(), field.add(&pa, &pb));
                    assert_eq!(field.apply_hom(hom, &field.mul(&a, &b)).unwrap(), field.mul(&pa, &pb));
                }
            }
        }
    }

    #[test]
    fn field_axioms_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [
            Field::gf(7).unwrap(),
            Field::gf_ext(2, 5).unwrap(),
            Field::gf_ext(3, 13).unwrap(),
            Field::rationals(),
            Field::gaussian(),
        ] {
            for _ in 0..100 {
                let (a, b, c) = (field.random(&mut rng), field.random(&mut rng), field.random(&mut rng));
                assert_eq!(
                    field.mul(&field.mul(&a, &b), &c),
                    field.mul(&a, &field.mul(&b, &c))
                );
                assert_eq!(
                    field.mul(&a, &field.add(&b, &c)),
                    field.add(&field.mul(&a, &b), &field.mul(&a, &c))
                );
                assert!(field.is_zero(&field.add(&a, &field.neg(&a))));
                if let Some(ai) = field.inv(&a) {
                    assert!(field.is_one(&field.mul(&a, &ai)));
                }
            }
        }
    }
}
