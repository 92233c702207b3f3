use super::ClosedPoint;
use crate::gf::{Fe, Field, FiniteField};
use crate::poly::Poly;

/// κ(P) = F_q[t]/(p_P), with elements kept as reduced polynomials.
///
/// At the infinite place this is F_q presented as F_q[u]/(u), matching the
/// chart swap used for residues there.
#[derive(Clone, Debug)]
pub struct ResidueField {
    k: Field,
    modulus: Poly<Fe>,
}

impl ResidueField {
    pub fn new(k: &Field, p: &ClosedPoint) -> Self {
        let modulus = match p {
            ClosedPoint::Finite(m) => m.clone(),
            ClosedPoint::Infinity => Poly::x(k),
        };
        ResidueField { k: k.clone(), modulus }
    }

    pub fn base(&self) -> &Field {
        &self.k
    }

    pub fn modulus(&self) -> &Poly<Fe> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn reduce(&self, a: &Poly<Fe>) -> Poly<Fe> {
        a.rem(&self.modulus, &self.k)
    }

    pub fn one(&self) -> Poly<Fe> {
        Poly::one(&self.k)
    }

    pub fn constant(&self, a: Fe) -> Poly<Fe> {
        Poly::constant(a, &self.k)
    }

    pub fn mul(&self, a: &Poly<Fe>, b: &Poly<Fe>) -> Poly<Fe> {
        a.mul_mod(b, &self.modulus, &self.k)
    }

    pub fn inv(&self, a: &Poly<Fe>) -> Poly<Fe> {
        a.inv_mod(&self.modulus, &self.k)
            .expect("residue-field element is a unit")
    }

    /// aⁿ for any integer n; a must be a unit when n < 0.
    pub fn pow(&self, a: &Poly<Fe>, n: i64) -> Poly<Fe> {
        let base = if n < 0 { self.inv(a) } else { self.reduce(a) };
        base.pow_mod(n.unsigned_abs() as u128, &self.modulus, &self.k)
    }

    /// N_{κ(P)/F_q}(a) as the product of the Frobenius conjugates
    /// a · a^q ⋯ a^{q^{d−1}}.
    pub fn norm_by_frobenius(&self, a: &Poly<Fe>) -> Fe {
        let q = self.k.order();
        let mut conj = self.reduce(a);
        let mut acc = conj.clone();
        for _ in 1..self.degree() {
            conj = conj.pow_mod(q, &self.modulus, &self.k);
            acc = self.mul(&acc, &conj);
        }
        debug_assert!(acc.deg() == 0);
        acc.coeff(0, &self.k)
    }

    /// N_{κ(P)/F_q}(a) = Res(p_P, a).
    pub fn norm_by_resultant(&self, a: &Poly<Fe>) -> Fe {
        self.modulus.resultant(&self.reduce(a), &self.k)
    }

    /// Euler's criterion a^{(q^d−1)/2} = 1, evaluated as the F_q criterion on
    /// the Frobenius-product norm.
    pub fn is_square(&self, a: &Poly<Fe>) -> bool {
        self.k.is_square(self.norm_by_frobenius(a))
    }

    /// Square test through the resultant norm; an independent route.
    pub fn is_square_by_resultant(&self, a: &Poly<Fe>) -> bool {
        self.k.is_square(self.norm_by_resultant(a))
    }

    /// The element with canonical index `i` (base-q digits of the
    /// coefficient vector).
    pub fn element(&self, i: u128) -> Poly<Fe> {
        Poly::from_index(i, &self.k)
    }

    /// The first nonsquare in canonical order. For odd degree it is the
    /// base field's nonsquare.
    pub fn canonical_nonsquare(&self) -> Poly<Fe> {
        (1u128..)
            .map(|i| self.element(i))
            .find(|a| !self.is_square(a))
            .expect("κ(P)^× has nonsquares")
    }
}
