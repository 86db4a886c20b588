//! Arithmetic in GF(p^k) on canonical integer encodings.
//!
//! An element with coefficient vector (c_0, …, c_{k-1}) modulo the defining
//! polynomial is encoded as Σ c_i p^i, so encodings run over 0..q and the
//! prime subfield is the range 0..p. Extensions with q ≤ 2^20 use
//! exp/log/Zech tables; larger ones fall back to polynomial arithmetic.

const TABLE_LIMIT: u64 = 1 << 20;
const NONE: u32 = u32::MAX;

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

#[derive(Debug)]
pub(crate) struct FiniteField {
    pub(crate) p: u64,
    pub(crate) k: usize,
    pub(crate) q: u64,
    /// Monic defining polynomial, lowest degree first, length k+1.
    pub(crate) modulus: Vec<u64>,
    tables: Option<Tables>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl FiniteField {
    /// Builds GF(p^k) from a monic modulus; irreducibility is the caller's job.
    pub(crate) fn new(p: u64, modulus: Vec<u64>) -> Self {
        let k = modulus.len() - 1;
        let q = p.pow(k as u32);
        let mut f = FiniteField { p, k, q, modulus, tables: None };
        if k > 1 && q <= TABLE_LIMIT {
            f.tables = Some(f.build_tables());
        }
        f
    }

    pub(crate) fn prime(p: u64) -> Self {
        FiniteField { p, k: 1, q: p, modulus: vec![0, 1], tables: None }
    }

    pub(crate) fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut d = vec![0u64; self.k];
        for slot in d.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    pub(crate) fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c % self.p)
    }

    fn slow_add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&s)
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, x) in da.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce by the monic modulus from the top down
        for top in (self.k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..self.k {
                let sub = c * self.modulus[i] % p;
                let idx = top - self.k + i;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        self.from_digits(&prod[..self.k])
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let order = self.q - 1;
        let factors = prime_factors(order);
        let g = (2..self.q)
            .find(|&c| factors.iter().all(|r| self.slow_pow(c, order / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NONE; self.q as usize];
        let mut cur = 1u64;
        for i in 0..order as usize {
            exp[i] = cur as u32;
            log[cur as usize] = i as u32;
            cur = self.slow_mul(cur, g);
        }
        let zech = (0..order as usize)
            .map(|d| {
                let s = self.slow_add(1, exp[d] as u64);
                if s == 0 {
                    NONE
                } else {
                    log[s as usize]
                }
            })
            .collect();
        Tables { exp, log, zech }
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let ord = (self.q - 1) as u32;
                let la = t.log[a as usize];
                let lb = t.log[b as usize];
                let d = if lb >= la { lb - la } else { lb + ord - la };
                let z = t.zech[d as usize];
                if z == NONE {
                    0
                } else {
                    let e = (la as u64 + z as u64) % ord as u64;
                    t.exp[e as usize] as u64
                }
            }
            None => self.slow_add(a, b),
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            return 0;
        }
        if self.k == 1 {
            return self.p - a;
        }
        let d: Vec<u64> = self.digits(a).iter().map(|c| (self.p - c) % self.p).collect();
        self.from_digits(&d)
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let ord = self.q - 1;
                let e = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % ord;
                t.exp[e as usize] as u64
            }
            None => self.slow_mul(a, b),
        }
    }

    pub(crate) fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            return Some(mod_pow(a, self.p - 2, self.p));
        }
        match &self.tables {
            Some(t) => {
                let ord = self.q - 1;
                let e = (ord - t.log[a as usize] as u64) % ord;
                Some(t.exp[e as usize] as u64)
            }
            None => Some(self.slow_pow(a, self.q - 2)),
        }
    }

    pub(crate) fn pow(&self, a: u64, mut e: u64) -> u64 {
        if self.k == 1 {
            return mod_pow(a, e, self.p);
        }
        if let Some(t) = &self.tables {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let ord = self.q - 1;
            e %= ord;
            let l = (t.log[a as usize] as u128 * e as u128 % ord as u128) as usize;
            return t.exp[l] as u64;
        }
        self.slow_pow(a, e)
    }
}
