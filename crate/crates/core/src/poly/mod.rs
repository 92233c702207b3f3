//! Dense univariate polynomials over a [`FiniteField`].
//!
//! A [`Poly`] is only a coefficient vector; every operation takes the field
//! as an explicit argument, so the same code runs over F_q and F_{q²}.

mod factor;

pub use factor::Factorization;

use thiserror::Error;

use crate::gf::FiniteField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("{0} is not invertible modulo the given polynomial")]
    NotInvertible(String),
}

/// Little-endian coefficients with no trailing zero; the zero polynomial is
/// the empty list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly<E> {
    c: Vec<E>,
}

impl<E: std::fmt::Debug> std::fmt::Debug for Poly<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl<E: Copy + Eq + std::fmt::Debug> Poly<E> {
    pub fn new<F: FiniteField<Elem = E>>(mut c: Vec<E>, k: &F) -> Self {
        while c.last().is_some_and(|&x| k.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant<F: FiniteField<Elem = E>>(a: E, k: &F) -> Self {
        Self::new(vec![a], k)
    }

    pub fn one<F: FiniteField<Elem = E>>(k: &F) -> Self {
        Poly { c: vec![k.one()] }
    }

    /// The variable t.
    pub fn x<F: FiniteField<Elem = E>>(k: &F) -> Self {
        Poly {
            c: vec![k.zero(), k.one()],
        }
    }

    /// t − a.
    pub fn linear<F: FiniteField<Elem = E>>(a: E, k: &F) -> Self {
        Poly {
            c: vec![k.neg(a), k.one()],
        }
    }

    pub fn monomial<F: FiniteField<Elem = E>>(a: E, deg: usize, k: &F) -> Self {
        let mut c = vec![k.zero(); deg + 1];
        c[deg] = a;
        Self::new(c, k)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<E> {
        self.c.last().copied()
    }

    pub fn coeff<F: FiniteField<Elem = E>>(&self, i: usize, k: &F) -> E {
        self.c.get(i).copied().unwrap_or_else(|| k.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one<F: FiniteField<Elem = E>>(&self, k: &F) -> bool {
        self.c.len() == 1 && self.c[0] == k.one()
    }

    pub fn is_monic<F: FiniteField<Elem = E>>(&self, k: &F) -> bool {
        self.lc() == Some(k.one())
    }

    pub fn map<G: Copy + Eq + std::fmt::Debug, K: FiniteField<Elem = G>>(&self, k: &K, f: impl Fn(E) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(|&x| f(x)).collect(), k)
    }

    pub fn add<F: FiniteField<Elem = E>>(&self, o: &Self, k: &F) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| k.add(self.coeff(i, k), o.coeff(i, k))).collect();
        Self::new(c, k)
    }

    pub fn neg<F: FiniteField<Elem = E>>(&self, k: &F) -> Self {
        Poly {
            c: self.c.iter().map(|&x| k.neg(x)).collect(),
        }
    }

    pub fn sub<F: FiniteField<Elem = E>>(&self, o: &Self, k: &F) -> Self {
        self.add(&o.neg(k), k)
    }

    pub fn scale<F: FiniteField<Elem = E>>(&self, a: E, k: &F) -> Self {
        Self::new(self.c.iter().map(|&x| k.mul(x, a)).collect(), k)
    }

    pub fn mul<F: FiniteField<Elem = E>>(&self, o: &Self, k: &F) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![k.zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = k.add(c[i + j], k.mul(a, b));
            }
        }
        Self::new(c, k)
    }

    pub fn pow<F: FiniteField<Elem = E>>(&self, mut e: u64, k: &F) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, k);
            }
        }
        acc
    }

    /// Multiplication by tⁿ.
    pub fn shift<F: FiniteField<Elem = E>>(&self, n: usize, k: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![k.zero(); n];
        c.extend_from_slice(&self.c);
        Poly { c }
    }

    pub fn divrem<F: FiniteField<Elem = E>>(&self, d: &Self, k: &F) -> Result<(Self, Self), PolyError> {
        let dl = d.lc().ok_or(PolyError::DivisionByZero)?;
        if self.c.len() < d.c.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = k.inv(dl).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let dn = d.c.len() - 1;
        let mut quo = vec![k.zero(); r.len() - dn];
        for i in (0..quo.len()).rev() {
            let coef = k.mul(r[i + dn], inv);
            quo[i] = coef;
            if k.is_zero(coef) {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[i + j] = k.sub(r[i + j], k.mul(coef, b));
            }
        }
        r.truncate(dn);
        Ok((Self::new(quo, k), Self::new(r, k)))
    }

    pub fn rem<F: FiniteField<Elem = E>>(&self, d: &Self, k: &F) -> Self {
        self.divrem(d, k).expect("nonzero modulus").1
    }

    /// Quotient of an exact division; panics if the division is not exact.
    pub fn div_exact<F: FiniteField<Elem = E>>(&self, d: &Self, k: &F) -> Self {
        let (q, r) = self.divrem(d, k).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides<F: FiniteField<Elem = E>>(&self, other: &Self, k: &F) -> bool {
        !self.is_zero() && other.rem(self, k).is_zero()
    }

    pub fn monic<F: FiniteField<Elem = E>>(&self, k: &F) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(l) => self.scale(k.inv(l).expect("nonzero"), k),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd<F: FiniteField<Elem = E>>(&self, o: &Self, k: &F) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// (g, s, t) with s·self + t·o = g = gcd, g monic.
    pub fn ext_gcd<F: FiniteField<Elem = E>>(&self, o: &Self, k: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(k), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, k).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, k), k);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, k), k);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = k.inv(l).expect("nonzero");
                (r0.scale(inv, k), s0.scale(inv, k), t0.scale(inv, k))
            }
        }
    }

    /// Inverse of `self` modulo `m`.
    pub fn inv_mod<F: FiniteField<Elem = E>>(&self, m: &Self, k: &F) -> Result<Self, PolyError> {
        let (g, s, _) = self.rem(m, k).ext_gcd(m, k);
        if !g.is_one(k) {
            return Err(PolyError::NotInvertible(format!("{self:?}")));
        }
        Ok(s.rem(m, k))
    }

    pub fn mul_mod<F: FiniteField<Elem = E>>(&self, o: &Self, m: &Self, k: &F) -> Self {
        self.mul(o, k).rem(m, k)
    }

    pub fn pow_mod<F: FiniteField<Elem = E>>(&self, mut e: u128, m: &Self, k: &F) -> Self {
        let mut base = self.rem(m, k);
        let mut acc = Self::one(k).rem(m, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m, k);
            }
        }
        acc
    }

    pub fn derivative<F: FiniteField<Elem = E>>(&self, k: &F) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| k.mul(k.from_int(i as i64), a))
            .collect();
        Self::new(c, k)
    }

    pub fn eval<F: FiniteField<Elem = E>>(&self, x: E, k: &F) -> E {
        self.c.iter().rev().fold(k.zero(), |acc, &a| k.add(k.mul(acc, x), a))
    }

    /// self(g).
    pub fn compose<F: FiniteField<Elem = E>>(&self, g: &Self, k: &F) -> Self {
        self.c
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &a| acc.mul(g, k).add(&Self::constant(a, k), k))
    }

    /// Σ cᵢ nⁱ d^(h−i): the numerator of self(n/d) homogenized to degree
    /// `h ≥ deg self`.
    pub fn homogenize<F: FiniteField<Elem = E>>(&self, n: &Self, d: &Self, h: usize, k: &F) -> Self {
        assert!(h >= self.deg() || self.is_zero());
        let mut npow = vec![Self::one(k)];
        let mut dpow = vec![Self::one(k)];
        for i in 1..=h {
            npow.push(npow[i - 1].mul(n, k));
            dpow.push(dpow[i - 1].mul(d, k));
        }
        self.c.iter().enumerate().fold(Self::zero(), |acc, (i, &a)| {
            acc.add(&npow[i].mul(&dpow[h - i], k).scale(a, k), k)
        })
    }

    /// tⁿ·self(1/t) for n = deg self.
    pub fn reverse<F: FiniteField<Elem = E>>(&self, k: &F) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Self::new(c, k)
    }

    /// Multiplicity of `p` as a factor, and the cofactor.
    pub fn valuation<F: FiniteField<Elem = E>>(&self, p: &Self, k: &F) -> (usize, Self) {
        assert!(!self.is_zero() && p.deg() >= 1);
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(p, k).expect("nonzero");
            if !r.is_zero() {
                return (v, cur);
            }
            v += 1;
            cur = q;
        }
    }

    /// Res(self, o).
    pub fn resultant<F: FiniteField<Elem = E>>(&self, o: &Self, k: &F) -> E {
        if self.is_zero() || o.is_zero() {
            return k.zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut res = k.one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return k.mul(res, k.pow(b.c[0], da as u128));
            }
            if da == 0 {
                return k.mul(res, k.pow(a.c[0], db as u128));
            }
            let r = a.rem(&b, k);
            if r.is_zero() {
                return k.zero();
            }
            if da % 2 == 1 && db % 2 == 1 {
                res = k.neg(res);
            }
            res = k.mul(res, k.pow(b.lc().unwrap(), (da - r.deg()) as u128));
            a = b;
            b = r;
        }
    }

    /// Canonical index of the coefficient vector, for enumeration order.
    pub fn index_key<F: FiniteField<Elem = E>>(&self, k: &F) -> Vec<u128> {
        self.c.iter().rev().map(|&x| k.index(x)).collect()
    }

    /// The polynomial whose coefficient vector has canonical index `i`
    /// (base-q digits, little-endian).
    pub fn from_index<F: FiniteField<Elem = E>>(mut i: u128, k: &F) -> Self {
        let q = k.order();
        let mut c = Vec::new();
        while i > 0 {
            c.push(k.element(i % q));
            i /= q;
        }
        Self::new(c, k)
    }

    /// Every monic polynomial of degree `d`, in canonical order.
    pub fn monics<F: FiniteField<Elem = E>>(d: usize, k: &F) -> impl Iterator<Item = Self> + '_ {
        let q = k.order();
        let count = q.checked_pow(d as u32).expect("enumeration too large");
        (0..count).map(move |i| {
            let mut c = Self::from_index(i, k).c;
            c.resize(d, k.zero());
            c.push(k.one());
            Poly { c }
        })
    }
}
