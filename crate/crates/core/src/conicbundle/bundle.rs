use super::BundleError;
use crate::gf::{Fe, Field, FiniteField};
use crate::p1curve::RationalMap;
use crate::poly::Poly;

/// The conic a x² + b y² + c z² = 0 over F_q(t).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConicBundle {
    field: Field,
    coeffs: [Poly<Fe>; 3],
}

impl ConicBundle {
    pub fn new(a: Poly<Fe>, b: Poly<Fe>, c: Poly<Fe>, k: &Field) -> Result<Self, BundleError> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(BundleError::ZeroCoefficient);
        }
        Ok(ConicBundle {
            field: k.clone(),
            coeffs: [a, b, c],
        })
    }

    /// Convenience constructor from small integer coefficient lists.
    pub fn from_ints(a: &[i64], b: &[i64], c: &[i64], k: &Field) -> Result<Self, BundleError> {
        let p = |v: &[i64]| Poly::new(v.iter().map(|&x| k.from_int(x)).collect(), k);
        Self::new(p(a), p(b), p(c), k)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> &Poly<Fe> {
        &self.coeffs[0]
    }

    pub fn b(&self) -> &Poly<Fe> {
        &self.coeffs[1]
    }

    pub fn c(&self) -> &Poly<Fe> {
        &self.coeffs[2]
    }

    pub fn coeffs(&self) -> &[Poly<Fe>; 3] {
        &self.coeffs
    }

    /// The model in the chart u = 1/t: e(t) ↦ u^{2⌈deg e/2⌉} e(1/u).
    pub fn chart_swap(&self) -> ConicBundle {
        let k = &self.field;
        let swap = |e: &Poly<Fe>| {
            let r = e.reverse(k);
            if e.deg() % 2 == 1 {
                r.shift(1, k)
            } else {
                r
            }
        };
        ConicBundle {
            field: k.clone(),
            coeffs: [swap(self.a()), swap(self.b()), swap(self.c())],
        }
    }

    /// Multiplies each coefficient by the given nonzero polynomials squared.
    pub fn scale_by_squares(&self, s: [&Poly<Fe>; 3]) -> ConicBundle {
        let k = &self.field;
        let mut coeffs = self.coeffs.clone();
        for (c, f) in coeffs.iter_mut().zip(s) {
            assert!(!f.is_zero());
            *c = c.mul(&f.mul(f, k), k);
        }
        ConicBundle {
            field: k.clone(),
            coeffs,
        }
    }

    /// Base change along φ: each coefficient becomes the numerator of e(φ)
    /// over an even power of D, with square factors removed.
    pub fn pullback(&self, phi: &RationalMap) -> ConicBundle {
        let k = &self.field;
        let raw = self.pullback_unreduced(phi);
        ConicBundle {
            field: k.clone(),
            coeffs: raw.coeffs.map(|e| strip_squares(&e, k)),
        }
    }

    /// [`pullback`](Self::pullback) without removing square factors.
    pub fn pullback_unreduced(&self, phi: &RationalMap) -> ConicBundle {
        let k = &self.field;
        let pull = |e: &Poly<Fe>| e.homogenize(phi.num(), phi.den(), e.deg() + e.deg() % 2, k);
        ConicBundle {
            field: k.clone(),
            coeffs: [pull(self.a()), pull(self.b()), pull(self.c())],
        }
    }
}

/// lc(f) · ∏ of the squarefree parts with odd multiplicity.
pub fn strip_squares(f: &Poly<Fe>, k: &Field) -> Poly<Fe> {
    let lc = f.lc().expect("nonzero");
    f.squarefree_decomposition(k)
        .into_iter()
        .filter(|(_, m)| m % 2 == 1)
        .fold(Poly::constant(lc, k), |acc, (g, _)| acc.mul(&g, k))
}
