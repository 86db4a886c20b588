use std::fmt;

use super::{Field, FieldElem};

/// Dense univariate polynomial, coefficients lowest degree first, trailing
/// zeros stripped (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pretty())
    }
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: FieldElem) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    /// x
    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// x − a
    pub fn linear(field: &Field, a: &FieldElem) -> UniPoly {
        UniPoly::new(field, vec![field.neg(a), field.one()])
    }

    /// c·x^d
    pub fn monomial(field: &Field, c: FieldElem, d: usize) -> UniPoly {
        let mut coeffs = vec![field.zero(); d];
        coeffs.push(c);
        UniPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).unwrap();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElem) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut acc = UniPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let f = &self.field;
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(&rem[top], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, b));
            }
            quot[top - dd] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(f, quot), UniPoly::new(f, rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.divrem(divisor).1
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        UniPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// self^e mod m.
    pub fn pow_mod(&self, e: &num_bigint::BigUint, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(&self.field).rem(m);
        let base = self.rem(m);
        for bit in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(bit) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Applies `g` to every coefficient, producing a polynomial over `target`.
    pub fn map_coeffs(&self, target: &Field, g: impl Fn(&FieldElem) -> FieldElem) -> UniPoly {
        UniPoly::new(target, self.coeffs.iter().map(g).collect())
    }

    /// Lexicographic comparison of coefficient lists (lowest degree first),
    /// shorter lists first.
    pub fn cmp_canonical(&self, other: &UniPoly) -> std::cmp::Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                let o = self.field.cmp(a, b);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    }

    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.fmt_elem(c);
            let term = match (i, f.is_one(c)) {
                (0, _) => cs,
                (1, true) => "x".into(),
                (1, false) => format!("({cs})x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("({cs})x^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_reconstructs_dividend() {
        let f = Field::gf(7).unwrap();
        let a = UniPoly::from_i64(&f, &[3, 0, 5, 1, 6]);
        let b = UniPoly::from_i64(&f, &[1, 2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_over_rationals() {
        let q = Field::rationals();
        // (x-1)(x-2) and (x-1)(x+3)
        let a = UniPoly::from_i64(&q, &[2, -3, 1]);
        let b = UniPoly::from_i64(&q, &[-3, 2, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_i64(&q, &[-1, 1]));
    }

    #[test]
    fn derivative_in_characteristic_p() {
        let f = Field::gf(3).unwrap();
        // d/dx x^3 = 3x^2 = 0
        assert!(UniPoly::from_i64(&f, &[0, 0, 0, 1]).derivative().is_zero());
    }
}
