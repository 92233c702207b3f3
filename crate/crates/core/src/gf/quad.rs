use std::fmt;

use super::{Fe, Field, FiniteField, GfError, EXHAUSTIVE_LIMIT};

/// An element a + b·s of F_{q²} = F_q[s]/(s² − α).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq2 {
    pub re: Fe,
    pub im: Fe,
}

impl fmt::Debug for Fq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}+{:?}s)", self.re, self.im)
    }
}

/// The quadratic extension l = F_q(√α) of a [`Field`], α its fixed
/// nonsquare. The nontrivial automorphism σ is the q-power Frobenius,
/// which acts as a + b·s ↦ a − b·s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    base: Field,
    alpha: Fe,
}

impl QuadExt {
    pub fn new(base: &Field) -> Self {
        QuadExt {
            base: base.clone(),
            alpha: base.nonsquare(),
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn alpha(&self) -> Fe {
        self.alpha
    }

    /// The square root s of α.
    pub fn sqrt_alpha(&self) -> Fq2 {
        Fq2 { re: Fe(0), im: Fe(1) }
    }

    pub fn embed(&self, a: Fe) -> Fq2 {
        Fq2 { re: a, im: Fe(0) }
    }

    /// Inverse of [`embed`](Self::embed) on the fixed field of σ.
    pub fn descend(&self, x: Fq2) -> Option<Fe> {
        (x.im == Fe(0)).then_some(x.re)
    }

    /// σ(x) = x^q.
    pub fn conj(&self, x: Fq2) -> Fq2 {
        Fq2 {
            re: x.re,
            im: self.base.neg(x.im),
        }
    }

    /// N(x) = x·σ(x) = a² − α b².
    pub fn norm(&self, x: Fq2) -> Fe {
        let k = &self.base;
        k.sub(k.mul(x.re, x.re), k.mul(self.alpha, k.mul(x.im, x.im)))
    }

    /// Finds u with u·σ(u) = v.
    ///
    /// Small extensions are searched exhaustively in canonical order. Larger
    /// ones solve a² − αb² = v by scanning b until v + αb² is a square.
    pub fn solve_norm_equation(&self, v: Fe) -> Result<Fq2, GfError> {
        let k = &self.base;
        if v == Fe(0) {
            return Err(GfError::ZeroNorm);
        }
        let u = if self.order() <= EXHAUSTIVE_LIMIT {
            self.elements()
                .find(|&u| self.norm(u) == v)
                .expect("the norm map of a finite field extension is surjective")
        } else {
            (0..k.order())
                .map(|i| k.element(i))
                .find_map(|b| {
                    let a2 = k.add(v, k.mul(self.alpha, k.mul(b, b)));
                    k.sqrt(a2).ok().map(|a| Fq2 { re: a, im: b })
                })
                .expect("the norm map of a finite field extension is surjective")
        };
        debug_assert_eq!(self.norm(u), v);
        Ok(u)
    }
}

impl FiniteField for QuadExt {
    type Elem = Fq2;

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn order(&self) -> u128 {
        let q = self.base.order();
        q * q
    }

    fn zero(&self) -> Fq2 {
        Fq2::default()
    }

    fn one(&self) -> Fq2 {
        self.embed(Fe(1))
    }

    fn add(&self, a: Fq2, b: Fq2) -> Fq2 {
        Fq2 {
            re: self.base.add(a.re, b.re),
            im: self.base.add(a.im, b.im),
        }
    }

    fn neg(&self, a: Fq2) -> Fq2 {
        Fq2 {
            re: self.base.neg(a.re),
            im: self.base.neg(a.im),
        }
    }

    fn mul(&self, a: Fq2, b: Fq2) -> Fq2 {
        let k = &self.base;
        let re = k.add(k.mul(a.re, b.re), k.mul(self.alpha, k.mul(a.im, b.im)));
        let im = k.add(k.mul(a.re, b.im), k.mul(a.im, b.re));
        Fq2 { re, im }
    }

    fn inv(&self, a: Fq2) -> Result<Fq2, GfError> {
        let n = self.norm(a);
        let ninv = self.base.inv(n)?;
        let c = self.conj(a);
        Ok(Fq2 {
            re: self.base.mul(c.re, ninv),
            im: self.base.mul(c.im, ninv),
        })
    }

    fn from_int(&self, n: i64) -> Fq2 {
        self.embed(self.base.from_int(n))
    }

    fn element(&self, i: u128) -> Fq2 {
        let q = self.base.order();
        Fq2 {
            re: self.base.element(i % q),
            im: self.base.element(i / q),
        }
    }

    fn index(&self, a: Fq2) -> u128 {
        self.base.index(a.re) + self.base.order() * self.base.index(a.im)
    }

    fn coefficients(&self, a: Fq2) -> Vec<u64> {
        let mut c = self.base.coefficients(a.re);
        c.extend(self.base.coefficients(a.im));
        c
    }

    fn nonsquare(&self) -> Fq2 {
        // A generator of the multiplicative group is a nonsquare; scan for the
        // first element failing Euler's criterion.
        let half = (self.order() - 1) / 2;
        let minus_one = self.neg(self.one());
        (1..self.order())
            .map(|i| self.element(i))
            .find(|&x| self.pow(x, half) == minus_one)
            .expect("odd-order field has a nonsquare")
    }

    fn rng_seed(&self) -> u64 {
        self.base.rng_seed()
    }
}
