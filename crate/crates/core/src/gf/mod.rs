//! Exact arithmetic in finite fields of odd characteristic.
//!
//! [`Field`] is F_q = F_p[x]/(modulus) with elements encoded as base-p
//! integers. [`QuadExt`] is the quadratic extension F_q(√α) built on top of a
//! [`Field`], with α the field's fixed nonsquare. Both implement
//! [`FiniteField`], so the polynomial layer runs over either.

mod field;
mod quad;

pub use field::{Fe, Field, FieldDesc};
pub use quad::{Fq2, QuadExt};

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use thiserror::Error;

/// Fields above this order are not scanned element by element.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("characteristic {0} is not an odd prime")]
    BadCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("a modulus is required for extension degree {0}")]
    MissingModulus(usize),
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: usize, got: Vec<u64> },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("field order {0}^{1} is too large")]
    TooLarge(u64, usize),
    #[error("coefficient {0} is not in [0, {1})")]
    CoefficientRange(u64, u64),
    #[error("element has {got} coefficients, field has degree {expected}")]
    ElementLength { expected: usize, got: usize },
    #[error("element does not belong to this field")]
    MixedField,
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("element is not a square")]
    NotASquare,
    #[error("norm equation has no solution for v = 0")]
    ZeroNorm,
}

/// Arithmetic context for a finite field of odd characteristic.
///
/// Elements are plain `Copy` values; every operation goes through the field
/// object, which owns all tables.
pub trait FiniteField: Clone + Debug {
    type Elem: Copy + Eq + Ord + Hash + Debug;

    fn characteristic(&self) -> u64;
    /// Number of elements q.
    fn order(&self) -> u128;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem, GfError>;
    /// Image of an integer under Z → F_q.
    fn from_int(&self, n: i64) -> Self::Elem;
    /// The element with canonical index `i`, for `i < order()`.
    fn element(&self, i: u128) -> Self::Elem;
    fn index(&self, a: Self::Elem) -> u128;
    /// Little-endian coefficient list over F_p.
    fn coefficients(&self, a: Self::Elem) -> Vec<u64>;
    /// A fixed nonsquare of the multiplicative group.
    fn nonsquare(&self) -> Self::Elem;
    /// Seed for the randomized parts of polynomial factorization.
    fn rng_seed(&self) -> u64;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// x ↦ x^p applied `times` times.
    fn frobenius(&self, a: Self::Elem, times: u32) -> Self::Elem {
        let p = self.characteristic() as u128;
        (0..times).fold(a, |x, _| self.pow(x, p))
    }

    /// Euler's criterion; zero counts as a square.
    fn is_square(&self, a: Self::Elem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        self.pow(a, (self.order() - 1) / 2) == self.one()
    }

    /// Square root with the lexicographically smaller coefficient list of
    /// the two candidates.
    fn sqrt(&self, a: Self::Elem) -> Result<Self::Elem, GfError> {
        if self.is_zero(a) {
            return Ok(a);
        }
        let y = if self.order() <= EXHAUSTIVE_LIMIT {
            self.elements()
                .find(|&y| self.mul(y, y) == a)
                .ok_or(GfError::NotASquare)?
        } else {
            if !self.is_square(a) {
                return Err(GfError::NotASquare);
            }
            tonelli_shanks(self, a)
        };
        debug_assert_eq!(self.mul(y, y), a);
        let other = self.neg(y);
        Ok(if self.coefficients(other) < self.coefficients(y) {
            other
        } else {
            y
        })
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.element(i)))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.element(rng.gen_range(0..self.order()))
    }
}

fn tonelli_shanks<F: FiniteField + ?Sized>(k: &F, a: F::Elem) -> F::Elem {
    let q = k.order();
    let mut s = 0u32;
    let mut odd = q - 1;
    while odd % 2 == 0 {
        odd /= 2;
        s += 1;
    }
    let z = k.nonsquare();
    let mut m = s;
    let mut c = k.pow(z, odd);
    let mut t = k.pow(a, odd);
    let mut r = k.pow(a, (odd + 1) / 2);
    while t != k.one() {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != k.one() {
            t2 = k.mul(t2, t2);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = k.mul(b, b);
        }
        m = i;
        c = k.mul(b, b);
        t = k.mul(t, c);
        r = k.mul(r, b);
    }
    r
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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
