use super::{ClosedPoint, P1Error, RatPoint, RationalMap};
use crate::gf::{Fe, Field, FiniteField};
use crate::poly::Poly;

/// t ↦ (a t + b)/(c t + d) with ad − bc ≠ 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mobius {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Mobius {
    pub fn new(a: Fe, b: Fe, c: Fe, d: Fe, k: &Field) -> Result<Self, P1Error> {
        let m = Mobius { a, b, c, d };
        if k.is_zero(m.det(k)) {
            return Err(P1Error::Singular);
        }
        Ok(m)
    }

    pub fn identity(k: &Field) -> Self {
        Mobius {
            a: k.one(),
            b: k.zero(),
            c: k.zero(),
            d: k.one(),
        }
    }

    /// t ↦ λ t + μ.
    pub fn affine(lambda: Fe, mu: Fe, k: &Field) -> Result<Self, P1Error> {
        Self::new(lambda, mu, k.zero(), k.one(), k)
    }

    pub fn det(&self, k: &Field) -> Fe {
        k.sub(k.mul(self.a, self.d), k.mul(self.b, self.c))
    }

    pub fn apply(&self, p: RatPoint, k: &Field) -> RatPoint {
        let (x, y) = p.homogeneous(k);
        RatPoint::from_homogeneous(
            k.add(k.mul(self.a, x), k.mul(self.b, y)),
            k.add(k.mul(self.c, x), k.mul(self.d, y)),
            k,
        )
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &Mobius, k: &Field) -> Mobius {
        let m = |x: Fe, y: Fe, z: Fe, w: Fe| k.add(k.mul(x, y), k.mul(z, w));
        Mobius {
            a: m(self.a, inner.a, self.b, inner.c),
            b: m(self.a, inner.b, self.b, inner.d),
            c: m(self.c, inner.a, self.d, inner.c),
            d: m(self.c, inner.b, self.d, inner.d),
        }
    }

    pub fn inverse(&self, k: &Field) -> Mobius {
        Mobius {
            a: self.d,
            b: k.neg(self.b),
            c: k.neg(self.c),
            d: self.a,
        }
        .canonical(k)
    }

    /// Representative scaled so that its first nonzero entry in (c, d, a, b)
    /// order is 1; equal as projective maps iff canonical forms are equal.
    pub fn canonical(&self, k: &Field) -> Mobius {
        let lead = [self.c, self.d]
            .into_iter()
            .find(|&x| !k.is_zero(x))
            .expect("nonsingular");
        let s = k.inv(lead).expect("nonzero");
        Mobius {
            a: k.mul(self.a, s),
            b: k.mul(self.b, s),
            c: k.mul(self.c, s),
            d: k.mul(self.d, s),
        }
    }

    pub fn same_map(&self, other: &Mobius, k: &Field) -> bool {
        self.canonical(k) == other.canonical(k)
    }

    pub fn to_map(&self, k: &Field) -> RationalMap {
        RationalMap::new(
            Poly::new(vec![self.b, self.a], k),
            Poly::new(vec![self.d, self.c], k),
            k,
        )
        .expect("a Möbius map has degree 1")
    }

    /// The map sending [x : y] to 0 at `p1`, ∞ at `p2` and 1 at `p3`.
    fn to_standard(p: [RatPoint; 3], k: &Field) -> Result<Mobius, P1Error> {
        if p[0] == p[1] || p[0] == p[2] || p[1] == p[2] {
            return Err(P1Error::RepeatedPoint);
        }
        let [(x1, y1), (x2, y2), (x3, y3)] = p.map(|q| q.homogeneous(k));
        // L_i(x, y) = y_i x − x_i y vanishes at p_i.
        let l1 = k.sub(k.mul(y1, x3), k.mul(x1, y3));
        let l2 = k.sub(k.mul(y2, x3), k.mul(x2, y3));
        let lambda = k.div(l2, l1).expect("p3 differs from p1");
        Mobius::new(k.mul(lambda, y1), k.neg(k.mul(lambda, x1)), y2, k.neg(x2), k)
    }

    /// The unique map with pᵢ ↦ qᵢ.
    pub fn from_points(p: [RatPoint; 3], q: [RatPoint; 3], k: &Field) -> Result<Mobius, P1Error> {
        let mp = Self::to_standard(p, k)?;
        let mq = Self::to_standard(q, k)?;
        Ok(mq.inverse(k).compose(&mp, k).canonical(k))
    }

    /// The image of a closed point.
    pub fn apply_closed(&self, p: &ClosedPoint, k: &Field) -> ClosedPoint {
        match p {
            ClosedPoint::Infinity => self.apply(RatPoint::Infinity, k).to_closed(k),
            ClosedPoint::Finite(m) => {
                // Zeros of m ∘ μ⁻¹, homogenized.
                let inv = self.inverse(k);
                let n = Poly::new(vec![inv.b, inv.a], k);
                let d = Poly::new(vec![inv.d, inv.c], k);
                let h = m.homogenize(&n, &d, m.deg(), k);
                if h.deg() < m.deg() {
                    debug_assert_eq!(m.deg(), 1);
                    ClosedPoint::Infinity
                } else {
                    ClosedPoint::Finite(h.monic(k))
                }
            }
        }
    }

    /// PGL₂(F_q) in canonical form: q³ − q elements.
    pub fn all(k: &Field) -> Vec<Mobius> {
        let els: Vec<Fe> = k.elements().collect();
        let mut out = Vec::with_capacity(els.len().pow(3));
        for &a in &els {
            for &b in &els {
                for &d in &els {
                    let m = Mobius { a, b, c: k.one(), d };
                    if !k.is_zero(m.det(k)) {
                        out.push(m);
                    }
                }
            }
        }
        for &a in els.iter().filter(|&&a| !k.is_zero(a)) {
            for &b in &els {
                out.push(Mobius {
                    a,
                    b,
                    c: k.zero(),
                    d: k.one(),
                });
            }
        }
        out
    }

    /// Elements of PGL₂(F_q) fixing `p` as a closed point.
    pub fn stabilizer(p: &ClosedPoint, k: &Field) -> Vec<Mobius> {
        Self::all(k)
            .into_iter()
            .filter(|m| &m.apply_closed(p, k) == p)
            .collect()
    }
}
