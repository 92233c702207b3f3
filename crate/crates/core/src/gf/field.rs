use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{is_prime, prime_factors, FiniteField, GfError, EXHAUSTIVE_LIMIT};
use crate::poly::Poly;

const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 256;

/// An element of a [`Field`]: the base-p integer Σ cᵢ pⁱ of its coefficient
/// list relative to the field modulus.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// JSON shape of a field description: `{"p": 3, "n": 2, "modulus": [1,0,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u64,
    #[serde(default = "one")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one() -> usize {
    1
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

struct Inner {
    p: u64,
    n: usize,
    q: u64,
    modulus: Vec<u64>,
    nonsquare: Fe,
    tables: Option<Tables>,
}

/// The finite field F_q, q = pⁿ with p odd.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
    seed: u64,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.n == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}{:?}", self.inner.p, self.inner.n, self.inner.modulus)
        }
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, GfError> {
        Self::new(p, 1, None)
    }

    /// Builds F_{pⁿ}. `modulus` is the little-endian coefficient list of a
    /// monic irreducible polynomial of degree `n` over F_p and is required
    /// when `n > 1`.
    pub fn new(p: u64, n: usize, modulus: Option<Vec<u64>>) -> Result<Self, GfError> {
        if p == 2 || p >= 1 << 62 || !is_prime(p) {
            return Err(GfError::BadCharacteristic(p));
        }
        if n == 0 {
            return Err(GfError::BadDegree);
        }
        let q = (p as u128)
            .checked_pow(n as u32)
            .filter(|&q| q < 1 << 62)
            .ok_or(GfError::TooLarge(p, n))? as u64;
        let modulus = match (n, modulus) {
            (1, None) => vec![0, 1],
            (_, None) => return Err(GfError::MissingModulus(n)),
            (_, Some(m)) => {
                if m.len() != n + 1 || m[n] != 1 {
                    return Err(GfError::BadModulus { expected: n, got: m });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(GfError::CoefficientRange(c, p));
                }
                m
            }
        };
        if n > 1 {
            let fp = Field::prime(p)?;
            let poly = Poly::new(modulus.iter().map(|&c| Fe(c)).collect(), &fp);
            if !poly.is_irreducible(&fp) {
                return Err(GfError::ReducibleModulus(p));
            }
        }
        let mut inner = Inner {
            p,
            n,
            q,
            modulus,
            nonsquare: Fe(0),
            tables: None,
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        let field = Field {
            inner: Arc::new(inner),
            seed: 0,
        };
        let nonsquare = field.find_nonsquare();
        let mut inner = Arc::try_unwrap(field.inner).ok().expect("fresh field");
        inner.nonsquare = nonsquare;
        Ok(Field {
            inner: Arc::new(inner),
            seed: 0,
        })
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Self, GfError> {
        Self::new(desc.p, desc.n, desc.modulus.clone())
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.inner.p,
            n: self.inner.n,
            modulus: (self.inner.n > 1).then(|| self.inner.modulus.clone()),
        }
    }

    /// Same field, different factorization seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        Field {
            inner: Arc::clone(&self.inner),
            seed,
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.n
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Element from its little-endian coefficient list.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe, GfError> {
        if coeffs.len() > self.inner.n {
            return Err(GfError::ElementLength {
                expected: self.inner.n,
                got: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.inner.p) {
            return Err(GfError::CoefficientRange(c, self.inner.p));
        }
        Ok(Fe(encode(coeffs, self.inner.p)))
    }

    /// Checks that a raw element value belongs to this field.
    pub fn check(&self, a: Fe) -> Result<Fe, GfError> {
        if a.0 < self.inner.q {
            Ok(a)
        } else {
            Err(GfError::MixedField)
        }
    }

    fn find_nonsquare(&self) -> Fe {
        let half = (self.inner.q as u128 - 1) / 2;
        let minus_one = self.neg(self.one());
        (1..self.inner.q)
            .map(Fe)
            .find(|&x| self.pow(x, half) == minus_one)
            .expect("every odd-order field has a nonsquare")
    }
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut v: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for c in out.iter_mut() {
        *c = v % p;
        v /= p;
    }
    out
}

fn slow_add(inner: &Inner, a: u64, b: u64) -> u64 {
    let p = inner.p;
    if inner.n == 1 {
        return ((a as u128 + b as u128) % p as u128) as u64;
    }
    let (mut a, mut b) = (a, b);
    let mut acc = 0u64;
    let mut place = 1u64;
    for _ in 0..inner.n {
        let d = (a % p + b % p) % p;
        acc += d * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    acc
}

fn slow_mul(inner: &Inner, a: u64, b: u64) -> u64 {
    let p = inner.p;
    let n = inner.n;
    if n == 1 {
        return ((a as u128 * b as u128) % p as u128) as u64;
    }
    let mulp = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let da = decode(a, p, n);
    let db = decode(b, p, n);
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulp(x, y)) % p;
        }
    }
    for top in (n..2 * n - 1).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &m) in inner.modulus[..n].iter().enumerate() {
            let idx = top - n + i;
            prod[idx] = (prod[idx] + p - mulp(c, m)) % p;
        }
    }
    encode(&prod[..n], p)
}

fn slow_pow(inner: &Inner, a: u64, mut e: u128) -> u64 {
    let mut base = a;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        base = slow_mul(inner, base, base);
        e >>= 1;
    }
    acc
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let order = q as u128 - 1;
    let primes = prime_factors(order);
    let generator = (2..q)
        .chain(std::iter::once(1))
        .find(|&g| primes.iter().all(|&r| slow_pow(inner, g, order / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut log = vec![0u32; q as usize];
    let mut x = 1u64;
    for i in 0..q - 1 {
        exp.push(x as u32);
        log[x as usize] = i as u32;
        x = slow_mul(inner, x, generator);
    }
    let add = (inner.n > 1 && q <= ADD_TABLE_LIMIT).then(|| {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = slow_add(inner, a, b) as u32;
            }
        }
        t
    });
    Tables { exp, log, add }
}

impl FiniteField for Field {
    type Elem = Fe;

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn order(&self) -> u128 {
        self.inner.q as u128
    }

    fn zero(&self) -> Fe {
        Fe(0)
    }

    fn one(&self) -> Fe {
        Fe(1)
    }

    fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.inner;
        if let Some(t) = inner.tables.as_ref().and_then(|t| t.add.as_ref()) {
            return Fe(t[(a.0 * inner.q + b.0) as usize] as u64);
        }
        Fe(slow_add(inner, a.0, b.0))
    }

    fn neg(&self, a: Fe) -> Fe {
        let p = self.inner.p;
        if self.inner.n == 1 {
            return Fe((p - a.0) % p);
        }
        let digits = decode(a.0, p, self.inner.n);
        let neg: Vec<u64> = digits.iter().map(|&d| (p - d) % p).collect();
        Fe(encode(&neg, p))
    }

    fn mul(&self, a: Fe, b: Fe) -> Fe {
        if let Some(t) = &self.inner.tables {
            if a.0 == 0 || b.0 == 0 {
                return Fe(0);
            }
            let n = t.exp.len();
            let l = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return Fe(t.exp[l % n] as u64);
        }
        Fe(slow_mul(&self.inner, a.0, b.0))
    }

    fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.0 == 0 {
            return Err(GfError::InverseOfZero);
        }
        if let Some(t) = &self.inner.tables {
            let n = t.exp.len();
            let l = t.log[a.0 as usize] as usize;
            return Ok(Fe(t.exp[(n - l) % n] as u64));
        }
        Ok(self.pow(a, self.inner.q as u128 - 2))
    }

    fn from_int(&self, n: i64) -> Fe {
        let p = self.inner.p as i128;
        Fe((n as i128).rem_euclid(p) as u64)
    }

    fn element(&self, i: u128) -> Fe {
        debug_assert!(i < self.inner.q as u128);
        Fe(i as u64)
    }

    fn index(&self, a: Fe) -> u128 {
        a.0 as u128
    }

    fn coefficients(&self, a: Fe) -> Vec<u64> {
        decode(a.0, self.inner.p, self.inner.n)
    }

    fn nonsquare(&self) -> Fe {
        self.inner.nonsquare
    }

    fn rng_seed(&self) -> u64 {
        self.seed
    }

    fn is_square(&self, a: Fe) -> bool {
        if a.0 == 0 {
            return true;
        }
        match &self.inner.tables {
            Some(t) => t.log[a.0 as usize] % 2 == 0,
            None => self.pow(a, (self.inner.q as u128 - 1) / 2) == Fe(1),
        }
    }
}

impl Field {
    /// Whether the exhaustive code paths apply.
    pub fn is_small(&self) -> bool {
        (self.inner.q as u128) <= EXHAUSTIVE_LIMIT
    }
}
