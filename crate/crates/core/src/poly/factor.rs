//! Squarefree decomposition, distinct- and equal-degree factorization, and
//! the irreducibility test.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Poly, PolyError};
use crate::gf::{prime_factors, FiniteField};

/// f = unit · ∏ pᵢ^eᵢ with the pᵢ monic irreducible, sorted by degree and
/// then by coefficients from the top down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, usize)>,
}

impl<E: Copy + Eq + std::fmt::Debug> Factorization<E> {
    pub fn product<F: FiniteField<Elem = E>>(&self, k: &F) -> Poly<E> {
        self.factors.iter().fold(Poly::constant(self.unit, k), |acc, (p, e)| {
            acc.mul(&p.pow(*e as u64, k), k)
        })
    }
}

fn sort_key<E: Copy + Eq + std::fmt::Debug, F: FiniteField<Elem = E>>(p: &Poly<E>, k: &F) -> (usize, Vec<u128>) {
    (p.deg(), p.index_key(k))
}

/// Stable FNV-1a digest of the coefficient indices, mixed into the RNG seed
/// so that every input gets its own deterministic stream.
fn digest<E: Copy + Eq + std::fmt::Debug, F: FiniteField<Elem = E>>(f: &Poly<E>, k: &F) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &c in f.coeffs() {
        for b in k.index(c).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

impl<E: Copy + Eq + std::fmt::Debug> Poly<E> {
    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root<F: FiniteField<Elem = E>>(&self, k: &F) -> Self {
        let p = k.characteristic() as usize;
        let e = k.order() / p as u128;
        let c = self.coeffs().iter().step_by(p).map(|&a| k.pow(a, e)).collect();
        Poly::new(c, k)
    }

    /// Pairs (gᵢ, i) with self.monic() = ∏ gᵢ^i, gᵢ squarefree and pairwise
    /// coprime. Multiplicities are distinct and increasing.
    pub fn squarefree_decomposition<F: FiniteField<Elem = E>>(&self, k: &F) -> Vec<(Self, usize)> {
        let f = self.monic(k);
        let mut out: Vec<(Self, usize)> = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let push = |out: &mut Vec<(Self, usize)>, g: Self, m: usize| {
            if let Some(slot) = out.iter_mut().find(|(_, e)| *e == m) {
                slot.0 = slot.0.mul(&g, k);
            } else {
                out.push((g, m));
            }
        };
        let p = k.characteristic() as usize;
        let df = f.derivative(k);
        if df.is_zero() {
            for (g, m) in f.pth_root(k).squarefree_decomposition(k) {
                push(&mut out, g, m * p);
            }
        } else {
            let mut c = f.gcd(&df, k);
            let mut w = f.div_exact(&c, k);
            let mut i = 1;
            while w.deg() > 0 {
                let y = w.gcd(&c, k);
                let z = w.div_exact(&y, k);
                if z.deg() > 0 {
                    push(&mut out, z, i);
                }
                i += 1;
                c = c.div_exact(&y, k);
                w = y;
            }
            if c.deg() > 0 {
                for (g, m) in c.pth_root(k).squarefree_decomposition(k) {
                    push(&mut out, g, m * p);
                }
            }
        }
        out.sort_by_key(|(_, m)| *m);
        out
    }

    /// Splits a monic squarefree polynomial into (gᵈ, d), gᵈ the product of
    /// its irreducible factors of degree d.
    pub fn distinct_degree<F: FiniteField<Elem = E>>(&self, k: &F) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(k);
        let x = Poly::x(k);
        let q = k.order();
        let mut h = x.rem(&f, k);
        let mut d = 0;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(q, &f, k);
            let g = h.sub(&x, k).gcd(&f, k);
            if g.deg() > 0 {
                f = f.div_exact(&g, k);
                h = h.rem(&f, k);
                out.push((g, d));
            }
        }
        if f.deg() > 0 {
            let n = f.deg();
            out.push((f, n));
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of distinct monic
    /// irreducibles of degree `d`.
    pub fn equal_degree<F: FiniteField<Elem = E>>(&self, d: usize, k: &F, rng: &mut ChaCha8Rng) -> Vec<Self> {
        let n = self.deg();
        if n == d {
            return vec![self.monic(k)];
        }
        let q = k.order();
        let one = Poly::one(k);
        loop {
            let a = Poly::new((0..n).map(|_| k.random(rng)).collect(), k);
            if a.deg() == 0 {
                continue;
            }
            // a^{(q^d − 1)/2} = (a^{1 + q + … + q^{d−1}})^{(q − 1)/2}
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.pow_mod(q, self, k);
                acc = acc.mul_mod(&t, self, k);
            }
            let b = acc.pow_mod((q - 1) / 2, self, k);
            let g = b.sub(&one, k).gcd(self, k);
            if g.deg() > 0 && g.deg() < n {
                let h = self.div_exact(&g, k);
                let mut out = g.equal_degree(d, k, rng);
                out.extend(h.equal_degree(d, k, rng));
                return out;
            }
        }
    }

    pub fn factor<F: FiniteField<Elem = E>>(&self, k: &F) -> Result<Factorization<E>, PolyError> {
        let unit = self.lc().ok_or(PolyError::ZeroPolynomial)?;
        let mut rng = ChaCha8Rng::seed_from_u64(k.rng_seed() ^ digest(self, k));
        let mut factors = Vec::new();
        for (g, m) in self.squarefree_decomposition(k) {
            for (h, d) in g.distinct_degree(k) {
                for p in h.equal_degree(d, k, &mut rng) {
                    factors.push((p, m));
                }
            }
        }
        factors.sort_by_key(|a| sort_key(&a.0, k));
        Ok(Factorization { unit, factors })
    }

    /// Monic irreducible factors without multiplicity, in canonical order.
    pub fn irreducible_factors<F: FiniteField<Elem = E>>(&self, k: &F) -> Vec<Self> {
        match self.factor(k) {
            Ok(f) => f.factors.into_iter().map(|(p, _)| p).collect(),
            Err(_) => Vec::new(),
        }
    }

    /// Rabin's test: f of degree n is irreducible iff t^{q^n} ≡ t and
    /// gcd(t^{q^{n/r}} − t, f) = 1 for every prime r | n.
    pub fn is_irreducible<F: FiniteField<Elem = E>>(&self, k: &F) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic(k);
        let x = Poly::x(k);
        let q = k.order();
        let mut frob = vec![x.clone()];
        for i in 1..=n {
            let next = frob[i - 1].pow_mod(q, &f, k);
            frob.push(next);
        }
        if frob[n] != x.rem(&f, k) {
            return false;
        }
        prime_factors(n as u128)
            .into_iter()
            .all(|r| frob[n / r as usize].sub(&x, k).gcd(&f, k).is_one(k))
    }

    /// Roots in the coefficient field, sorted by index.
    pub fn roots<F: FiniteField<Elem = E>>(&self, k: &F) -> Vec<E> {
        let mut r: Vec<E> = self
            .irreducible_factors(k)
            .into_iter()
            .filter(|p| p.deg() == 1)
            .map(|p| k.neg(p.coeffs()[0]))
            .collect();
        r.sort_by_key(|&a| k.index(a));
        r
    }
}
