//! Factorization of univariate polynomials.
//!
//! Finite fields: square-free decomposition, then either trial division by
//! every monic candidate (small q^deg) or distinct-degree plus
//! Cantor–Zassenhaus equal-degree splitting driven by a seeded RNG.
//! ℚ: rational roots for any degree, quadratic splitting of quartics, and
//! nothing beyond degree four. ℚ(i): Gaussian-rational roots plus the
//! quadratic formula.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, FieldElem, UniPoly};
use crate::error::{Error, Result};

const SEARCH_LIMIT: u128 = 1 << 16;
const DIVISOR_LIMIT: i128 = 1_000_000_000_000;
const GAUSS_BOX_LIMIT: i128 = 2000;

/// Factors a monic polynomial into monic irreducibles with multiplicities,
/// sorted canonically (by coefficient list, lowest degree first).
pub fn factor_poly(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    factor_poly_seeded(f, 0)
}

pub fn factor_poly_seeded(f: &UniPoly, seed: u64) -> Result<Vec<(UniPoly, usize)>> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Err(Error::Invalid("cannot factor a constant polynomial".into()));
    }
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let field = f.field();
    let mut out = if field.is_finite() {
        let q = field.order().unwrap() as u128;
        if crate::budget::pow_sat(q, deg as u32) <= SEARCH_LIMIT {
            factor_by_search(f)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            factor_finite(f, &mut rng)
        }
    } else if field.is_gaussian() {
        factor_gaussian(f)?
    } else {
        factor_rational(f)?
    };
    normalize_factor_list(&mut out);
    Ok(out)
}

fn normalize_factor_list(list: &mut Vec<(UniPoly, usize)>) {
    list.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    let mut merged: Vec<(UniPoly, usize)> = Vec::with_capacity(list.len());
    for (g, m) in list.drain(..) {
        match merged.last_mut() {
            Some((h, mh)) if *h == g => *mh += m,
            _ => merged.push((g, m)),
        }
    }
    *list = merged;
}

/// Distinct roots lying in the polynomial's own field, with multiplicities.
pub fn roots(f: &UniPoly) -> Result<Vec<(FieldElem, usize)>> {
    let field = f.field().clone();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let monic = f.monic();
    let mut out = Vec::new();
    if field.is_finite() && field.order().unwrap() <= SEARCH_LIMIT as u64 {
        // direct evaluation is cheapest for small fields
        for a in field.elements() {
            let lin = UniPoly::linear(&field, &a);
            let mut g = monic.clone();
            let mut m = 0;
            while let Some(q) = g.exact_div(&lin) {
                g = q;
                m += 1;
            }
            if m > 0 {
                out.push((a, m));
            }
        }
        return Ok(out);
    }
    for (g, m) in factor_poly(&monic)? {
        if g.degree() == Some(1) {
            out.push((field.neg(&g.coeff(0)), m));
        }
    }
    Ok(out)
}

pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(d) => d,
    };
    let field = f.field();
    if field.is_finite() {
        let f = f.monic();
        let q = BigUint::from(field.order().unwrap());
        let x = UniPoly::x(field);
        // x^{q^d} ≡ x (mod f), and gcd(x^{q^{d/r}} − x, f) = 1 for primes r | d
        let frob = |times: usize| {
            let mut h = x.clone();
            for _ in 0..times {
                h = h.pow_mod(&q, &f);
            }
            h
        };
        if frob(d).sub(&x).rem(&f).degree().is_some() {
            return Ok(false);
        }
        for r in super::finite::prime_factors(d as u64) {
            let h = frob(d / r as usize).sub(&x);
            if h.gcd(&f).degree() != Some(0) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let facs = factor_poly(&f.monic())?;
    Ok(facs.len() == 1 && facs[0].1 == 1)
}

// ---------------------------------------------------------------- finite

fn monic_from_index(field: &Field, degree: usize, mut idx: u64) -> UniPoly {
    let q = field.order().unwrap();
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        coeffs.push(field.elem(idx % q));
        idx /= q;
    }
    coeffs.push(field.one());
    UniPoly::new(field, coeffs)
}

/// Trial division by every monic polynomial in increasing degree; each
/// divisor found this way is irreducible.
pub(crate) fn factor_by_search(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field().clone();
    let q = field.order().unwrap();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        for idx in 0..q.pow(d as u32) {
            let g = monic_from_index(&field, d, idx);
            let mut m = 0;
            while let Some(quot) = rest.exact_div(&g) {
                rest = quot;
                m += 1;
            }
            if m > 0 {
                out.push((g, m));
            }
            if rest.degree().unwrap() < 2 * d {
                break;
            }
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        out.push((rest, 1));
    }
    out
}

fn factor_finite<R: Rng>(f: &UniPoly, rng: &mut R) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, rng) {
                out.push((irr, m));
            }
        }
    }
    out
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &UniPoly) -> UniPoly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let k = field.degree();
    let root_exp = field.order().unwrap() / p as u64; // a ↦ a^{q/p} inverts Frobenius
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| if k == 1 { c.clone() } else { field.pow(c, root_exp) })
        .collect();
    UniPoly::new(field, coeffs)
}

pub(crate) fn squarefree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let one = UniPoly::one(field);
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if z.degree().unwrap() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = c.exact_div(&y).unwrap();
    }
    if c != one {
        let root = pth_root(&c);
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let q = BigUint::from(field.order().unwrap());
    let x = UniPoly::x(field);
    let one = UniPoly::one(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap() >= 2 * i {
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g != one {
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap() > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn equal_degree<R: Rng>(f: &UniPoly, d: usize, rng: &mut R) -> Vec<UniPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.order().unwrap();
    let one = UniPoly::one(field);
    loop {
        let a = UniPoly::new(field, (0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&one)
        } else {
            // trace map a + a^2 + a^4 + … over GF(2)
            let bits = field.degree() as usize * d;
            let two = BigUint::from(2u32);
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..bits {
                t = t.pow_mod(&two, f);
                acc = acc.add(&t);
            }
            acc
        };
        let g = f.gcd(&b);
        if g != one && g.degree() != f.degree() {
            let h = f.exact_div(&g).unwrap();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

// ---------------------------------------------------------------- rationals

fn big_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or_else(|| Error::Unsupported("coefficients too large for root search".into()))
}

fn divisors(n: i128) -> Result<Vec<i128>> {
    let n = n.abs();
    if n > DIVISOR_LIMIT {
        return Err(Error::Unsupported(format!("divisor enumeration of {n}")));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Monic integer polynomial g(y) = D^deg f(y/D) and the scale D.
fn integer_monic(f: &UniPoly) -> Result<(Vec<BigInt>, BigInt)> {
    let n = f.degree().unwrap();
    let mut d = BigInt::one();
    for c in f.coeffs() {
        d = big_lcm(&d, c.as_rational().unwrap().denom());
    }
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in f.coeffs().iter().enumerate() {
        let r = c.as_rational().unwrap() * BigRational::from_integer(num_traits::pow(d.clone(), n - i));
        debug_assert!(r.is_integer());
        out.push(r.to_integer());
    }
    Ok((out, d))
}

fn eval_int(coeffs: &[BigInt], y: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
}

fn factor_rational(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let field = f.field().clone();
    let x = UniPoly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut zero_mult = 0;
    while rest.degree().unwrap() > 0 && field.is_zero(&rest.coeff(0)) {
        rest = rest.exact_div(&x).unwrap();
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((x.clone(), zero_mult));
    }
    if rest.degree().unwrap() == 0 {
        return Ok(out);
    }
    // integer roots of the scaled monic polynomial
    let (g, scale) = integer_monic(&rest)?;
    let c0 = to_i128(&g[0])?;
    for dv in divisors(c0)? {
        for cand in [dv, -dv] {
            if rest.degree().unwrap() == 0 {
                break;
            }
            let y = BigInt::from(cand);
            if eval_int(&g, &y).is_zero() {
                let r = BigRational::new(y, scale.clone());
                let root = FieldElem::Rat(Box::new(r));
                let lin = UniPoly::linear(&field, &root);
                let mut m = 0;
                while let Some(q) = rest.exact_div(&lin) {
                    rest = q;
                    m += 1;
                }
                out.push((lin, m));
            }
        }
    }
    match rest.degree().unwrap() {
        0 => {}
        1..=3 => out.push((rest, 1)),
        4 => match split_quartic(&rest)? {
            Some((a, b)) if a == b => out.push((a, 2)),
            Some((a, b)) => {
                out.push((a, 1));
                out.push((b, 1));
            }
            None => out.push((rest, 1)),
        },
        d => {
            return Err(Error::Unsupported(format!(
                "rational factorization of a degree-{d} part without rational roots"
            )))
        }
    }
    Ok(out)
}

fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Splits a root-free monic quartic over ℚ into two monic quadratics.
fn split_quartic(f: &UniPoly) -> Result<Option<(UniPoly, UniPoly)>> {
    let field = f.field().clone();
    let (g, scale) = integer_monic(f)?;
    let (d, c, b, a) = (&g[0], &g[1], &g[2], &g[3]);
    let back = |p: &BigInt, r: &BigInt| {
        // y^2 + p y + r with y = D x, made monic in x
        let s = BigRational::from_integer(scale.clone());
        let c1 = BigRational::from_integer(p.clone()) / &s;
        let c0 = BigRational::from_integer(r.clone()) / (&s * &s);
        UniPoly::new(
            &field,
            vec![FieldElem::Rat(Box::new(c0)), FieldElem::Rat(Box::new(c1)), field.one()],
        )
    };
    for dv in divisors(to_i128(d)?)? {
        for r in [dv, -dv] {
            let r = BigInt::from(r);
            let t = d / &r;
            let found = if t != r {
                let num = c - &r * a;
                let den = &t - &r;
                if !(&num % &den).is_zero() {
                    continue;
                }
                let p = num / den;
                let s = a - &p;
                (&r + &t + &p * &s == *b).then_some((p, s))
            } else {
                if *c != &r * a {
                    continue;
                }
                let disc = a * a - BigInt::from(4) * (b - BigInt::from(2) * &r);
                is_square(&disc).and_then(|sq| {
                    let two = BigInt::from(2);
                    let p = a + &sq;
                    p.is_even().then(|| (&p / &two, (a - &sq) / &two))
                })
            };
            if let Some((p, s)) = found {
                let mut pair = [back(&p, &r), back(&s, &t)];
                pair.sort_by(|x, y| x.cmp_canonical(y));
                let [u, v] = pair;
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- gaussian

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = is_square(r.numer())?;
    let d = is_square(r.denom())?;
    Some(BigRational::new(n, d))
}

/// A square root in ℚ(i), if one exists.
pub(crate) fn gaussian_sqrt(field: &Field, z: &FieldElem) -> Option<FieldElem> {
    let g = z.as_gaussian()?;
    let two = BigRational::from_integer(BigInt::from(2));
    if g.im.is_zero() {
        if let Some(s) = rat_sqrt(&g.re) {
            return field.gaussian_elem(s, BigRational::zero()).ok();
        }
        let s = rat_sqrt(&-&g.re)?;
        return field.gaussian_elem(BigRational::zero(), s).ok();
    }
    let m = rat_sqrt(&(&g.re * &g.re + &g.im * &g.im))?;
    let x = rat_sqrt(&((&g.re + &m) / &two))?;
    if x.is_zero() {
        return None;
    }
    let y = &g.im / (&two * &x);
    field.gaussian_elem(x, y).ok()
}

fn quadratic_roots(f: &UniPoly) -> Option<(FieldElem, FieldElem)> {
    let field = f.field();
    let (b, c) = (f.coeff(1), f.coeff(0));
    let four = field.from_i64(4);
    let disc = field.sub(&field.mul(&b, &b), &field.mul(&four, &c));
    let s = if field.is_gaussian() {
        gaussian_sqrt(field, &disc)?
    } else {
        FieldElem::Rat(Box::new(rat_sqrt(disc.as_rational()?)?))
    };
    let half = field.from_ratio(1, 2).unwrap();
    let nb = field.neg(&b);
    Some((
        field.mul(&field.add(&nb, &s), &half),
        field.mul(&field.sub(&nb, &s), &half),
    ))
}

fn factor_gaussian(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let field = f.field().clone();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let strip = |rest: &mut UniPoly, root: &FieldElem, out: &mut Vec<(UniPoly, usize)>| {
        let lin = UniPoly::linear(&field, root);
        let mut m = 0;
        while let Some(q) = rest.exact_div(&lin) {
            *rest = q;
            m += 1;
        }
        if m > 0 {
            out.push((lin, m));
        }
    };
    if rest.degree().unwrap() > 2 {
        for root in gaussian_root_candidates(&rest)? {
            strip(&mut rest, &root, &mut out);
        }
    }
    match rest.degree().unwrap() {
        0 => {}
        1 => out.push((rest, 1)),
        2 => match quadratic_roots(&rest) {
            Some((r1, r2)) => {
                strip(&mut rest, &r1, &mut out);
                strip(&mut rest, &r2, &mut out);
            }
            None => out.push((rest, 1)),
        },
        3 => out.push((rest, 1)),
        d => {
            return Err(Error::Unsupported(format!(
                "Gaussian factorization of a root-free degree-{d} part"
            )))
        }
    }
    Ok(out)
}

/// Gaussian-rational roots of a monic polynomial over ℚ(i), by searching
/// Gaussian-integer divisors of the scaled constant term.
fn gaussian_root_candidates(f: &UniPoly) -> Result<Vec<FieldElem>> {
    let field = f.field().clone();
    let n = f.degree().unwrap();
    let mut scale = BigInt::one();
    for c in f.coeffs() {
        let g = c.as_gaussian().unwrap();
        scale = big_lcm(&scale, g.re.denom());
        scale = big_lcm(&scale, g.im.denom());
    }
    // coefficients of D^n f(y/D) as Gaussian integers (re, im)
    let mut coeffs = Vec::with_capacity(n + 1);
    for (i, c) in f.coeffs().iter().enumerate() {
        let g = c.as_gaussian().unwrap();
        let factor = BigRational::from_integer(num_traits::pow(scale.clone(), n - i));
        let re = (&g.re * &factor).to_integer();
        let im = (&g.im * &factor).to_integer();
        coeffs.push((to_i128(&re)?, to_i128(&im)?));
    }
    let (c0r, c0i) = coeffs[0];
    let norm = c0r * c0r + c0i * c0i;
    let mut out = Vec::new();
    if norm == 0 {
        out.push(field.zero());
        return Ok(out);
    }
    let bound = (norm as f64).sqrt().ceil() as i128;
    if bound > GAUSS_BOX_LIMIT {
        return Err(Error::Unsupported("Gaussian root search box too large".into()));
    }
    let eval = |x: i128, y: i128| -> Option<bool> {
        let (mut ar, mut ai) = (0i128, 0i128);
        for &(cr, ci) in coeffs.iter().rev() {
            let nr = ar.checked_mul(x)?.checked_sub(ai.checked_mul(y)?)?.checked_add(cr)?;
            let ni = ar.checked_mul(y)?.checked_add(ai.checked_mul(x)?)?.checked_add(ci)?;
            ar = nr;
            ai = ni;
        }
        Some(ar == 0 && ai == 0)
    };
    for x in -bound..=bound {
        for y in -bound..=bound {
            let nz = x * x + y * y;
            if nz == 0 || nz > norm || norm % nz != 0 {
                continue;
            }
            match eval(x, y) {
                Some(true) => {
                    let s = BigRational::from_integer(scale.clone());
                    let re = BigRational::from_integer(BigInt::from(x)) / &s;
                    let im = BigRational::from_integer(BigInt::from(y)) / &s;
                    out.push(field.gaussian_elem(re, im)?);
                }
                Some(false) => {}
                None => return Err(Error::Unsupported("overflow in Gaussian root search".into())),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(field: &Field, facs: &[(UniPoly, usize)]) -> UniPoly {
        facs.iter().fold(UniPoly::one(field), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    #[test]
    fn x2_plus_1_over_gf5_splits() {
        let f5 = Field::gf(5).unwrap();
        let f = UniPoly::from_i64(&f5, &[1, 0, 1]);
        // root search oracle: 2 and 3 are the square roots of -1 mod 5
        let roots: Vec<i64> = (0..5).filter(|x| (x * x + 1) % 5 == 0).collect();
        assert_eq!(roots, vec![2, 3]);
        let facs = factor_poly(&f).unwrap();
        assert_eq!(
            facs,
            vec![
                (UniPoly::from_i64(&f5, &[2, 1]), 1),
                (UniPoly::from_i64(&f5, &[3, 1]), 1)
            ]
        );
    }

    #[test]
    fn x2_plus_1_over_gf3_is_irreducible() {
        let f3 = Field::gf(3).unwrap();
        assert!((0..3).all(|x| (x * x + 1) % 3 != 0));
        let f = UniPoly::from_i64(&f3, &[1, 0, 1]);
        assert_eq!(factor_poly(&f).unwrap(), vec![(f.clone(), 1)]);
        assert!(is_irreducible(&f).unwrap());
    }

    #[test]
    fn x_cubed_over_q() {
        let q = Field::rationals();
        let f = UniPoly::from_i64(&q, &[0, 0, 0, 1]);
        assert_eq!(factor_poly(&f).unwrap(), vec![(UniPoly::x(&q), 3)]);
    }

    #[test]
    fn non_monic_and_constant_inputs_error() {
        let q = Field::rationals();
        assert_eq!(factor_poly(&UniPoly::from_i64(&q, &[1, 2])), Err(Error::NonMonic));
        assert!(factor_poly(&UniPoly::from_i64(&q, &[3])).is_err());
    }

    #[test]
    fn rational_quartics() {
        let q = Field::rationals();
        // (x^2 + 3)(x^2 - 2x + 5)
        let a = UniPoly::from_i64(&q, &[3, 0, 1]);
        let b = UniPoly::from_i64(&q, &[5, -2, 1]);
        let facs = factor_poly(&a.mul(&b)).unwrap();
        assert_eq!(facs.len(), 2);
        assert_eq!(product(&q, &facs), a.mul(&b));
        // (x^2 + 1)^2
        let sq = factor_poly(&UniPoly::from_i64(&q, &[1, 0, 1]).pow(2)).unwrap();
        assert_eq!(sq, vec![(UniPoly::from_i64(&q, &[1, 0, 1]), 2)]);
        // x^4 + 1 is irreducible over Q
        let f = UniPoly::from_i64(&q, &[1, 0, 0, 0, 1]);
        assert_eq!(factor_poly(&f).unwrap(), vec![(f.clone(), 1)]);
        // (x - 1/2)(x + 3)(x^2 + x + 1) with rational coefficients
        let half = q.from_ratio(1, 2).unwrap();
        let g = UniPoly::linear(&q, &half)
            .mul(&UniPoly::from_i64(&q, &[3, 1]))
            .mul(&UniPoly::from_i64(&q, &[1, 1, 1]));
        assert_eq!(product(&q, &factor_poly(&g).unwrap()), g);
        assert_eq!(factor_poly(&g).unwrap().len(), 3);
    }

    #[test]
    fn rational_degree_five_without_roots_is_unsupported() {
        let q = Field::rationals();
        let f = UniPoly::from_i64(&q, &[2, 0, 0, 0, 0, 1]);
        assert!(matches!(factor_poly(&f), Err(Error::Unsupported(_))));
        // but roots that exhaust the degree are fine
        let g = UniPoly::from_i64(&q, &[0, 1]).pow(3).mul(&UniPoly::from_i64(&q, &[1, 0, 1]));
        assert_eq!(product(&q, &factor_poly(&g).unwrap()), g);
    }

    #[test]
    fn gaussian_factorization() {
        let qi = Field::gaussian();
        // x^2 + 1 = (x - i)(x + i)
        let f = UniPoly::from_i64(&qi, &[1, 0, 1]);
        let facs = factor_poly(&f).unwrap();
        assert_eq!(facs.len(), 2);
        assert_eq!(product(&qi, &facs), f);
        // x^2 - 3 stays irreducible
        let g = UniPoly::from_i64(&qi, &[-3, 0, 1]);
        assert_eq!(factor_poly(&g).unwrap(), vec![(g.clone(), 1)]);
        // (x - (1+i))(x + 2)(x^2 + 2)
        let one_i = qi.add(&qi.one(), &qi.imaginary_unit().unwrap());
        let h = UniPoly::linear(&qi, &one_i)
            .mul(&UniPoly::from_i64(&qi, &[2, 1]))
            .mul(&UniPoly::from_i64(&qi, &[2, 0, 1]));
        let facs = factor_poly(&h).unwrap();
        assert_eq!(product(&qi, &facs), h);
        assert_eq!(facs.len(), 3);
    }

    #[test]
    fn search_and_cantor_zassenhaus_agree() {
        let f7 = Field::gf(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let deg = rng.gen_range(1..=8);
            let mut coeffs: Vec<FieldElem> = (0..deg).map(|_| f7.random(&mut rng)).collect();
            coeffs.push(f7.one());
            let f = UniPoly::new(&f7, coeffs);
            let mut a = factor_by_search(&f);
            let mut b = factor_finite(&f, &mut rng);
            normalize_factor_list(&mut a);
            normalize_factor_list(&mut b);
            assert_eq!(a, b, "{f:?}");
            assert_eq!(product(&f7, &a), f);
            for (g, _) in &a {
                assert!(is_irreducible(g).unwrap());
            }
        }
    }

    #[test]
    fn factorization_in_characteristic_two_with_repeated_factors() {
        let gf4 = Field::gf_ext(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = UniPoly::new(&gf4, vec![gf4.random(&mut rng), gf4.random(&mut rng), gf4.one()]);
            let b = UniPoly::new(&gf4, vec![gf4.random(&mut rng), gf4.one()]);
            let f = a.pow(2).mul(&b.pow(3));
            let facs = factor_finite(&f, &mut rng);
            assert_eq!(product(&gf4, &facs), f);
            assert!(facs.iter().all(|(g, _)| is_irreducible(g).unwrap()));
        }
    }

    #[test]
    fn roots_in_small_and_large_fields() {
        let f5 = Field::gf(5).unwrap();
        let f = UniPoly::from_i64(&f5, &[4, 0, 1]); // x^2 - 1
        assert_eq!(roots(&f).unwrap(), vec![(f5.from_i64(1), 1), (f5.from_i64(4), 1)]);
        let big = Field::gf_ext(2, 17).unwrap();
        let g = UniPoly::x(&big).pow(2).sub(&UniPoly::x(&big)); // x^2 - x
        let r = roots(&g).unwrap();
        assert_eq!(r.len(), 2);
    }
}
