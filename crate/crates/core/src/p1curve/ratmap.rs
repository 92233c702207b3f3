use std::fmt;

use super::{ClosedPoint, P1Error, RatPoint, ResidueField};
use crate::gf::{Fe, Field, FiniteField};
use crate::poly::Poly;

/// A dominant self-map T ↦ N(T)/D(T) of P¹ over F_q, gcd(N, D) = 1 and D
/// monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMap {
    field: Field,
    num: Poly<Fe>,
    den: Poly<Fe>,
}

/// A point of a fibre with its ramification index e and residue degree f.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibrePoint {
    pub point: ClosedPoint,
    pub e: usize,
    pub f: usize,
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num.coeffs(), self.den.coeffs())
    }
}

impl RationalMap {
    pub fn new(num: Poly<Fe>, den: Poly<Fe>, k: &Field) -> Result<Self, P1Error> {
        if den.is_zero() {
            return Err(P1Error::ZeroDenominator);
        }
        let g = num.gcd(&den, k);
        let (mut num, mut den) = (num.div_exact(&g, k), den.div_exact(&g, k));
        let l = k.inv(den.lc().expect("nonzero")).expect("nonzero");
        num = num.scale(l, k);
        den = den.scale(l, k);
        if num.deg().max(den.deg()) == 0 {
            return Err(P1Error::ConstantMap);
        }
        Ok(RationalMap {
            field: k.clone(),
            num,
            den,
        })
    }

    pub fn identity(k: &Field) -> Self {
        RationalMap {
            field: k.clone(),
            num: Poly::x(k),
            den: Poly::one(k),
        }
    }

    /// T ↦ T^n / c.
    pub fn power(n: usize, c: Fe, k: &Field) -> Self {
        Self::new(Poly::monomial(k.inv(c).expect("nonzero"), n, k), Poly::one(k), k).expect("n ≥ 1")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num(&self) -> &Poly<Fe> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Fe> {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field)
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &RationalMap) -> RationalMap {
        let k = &self.field;
        let h = self.degree();
        let n = self.num.homogenize(&inner.num, &inner.den, h, k);
        let d = self.den.homogenize(&inner.num, &inner.den, h, k);
        RationalMap::new(n, d, k).expect("composition of dominant maps is dominant")
    }

    /// 1/φ.
    pub fn reciprocal(&self) -> RationalMap {
        RationalMap::new(self.den.clone(), self.num.clone(), &self.field).expect("degree ≥ 1")
    }

    pub fn eval(&self, p: RatPoint) -> RatPoint {
        let k = &self.field;
        let h = self.degree();
        match p {
            RatPoint::Finite(x) => RatPoint::from_homogeneous(self.num.eval(x, k), self.den.eval(x, k), k),
            RatPoint::Infinity => {
                // Leading coefficients of the degree-h parts.
                RatPoint::from_homogeneous(self.num.coeff(h, k), self.den.coeff(h, k), k)
            }
        }
    }

    /// φ(m) as a closed point: the minimal polynomial of φ(θ) for a root θ
    /// of p_m.
    pub fn image(&self, m: &ClosedPoint) -> ClosedPoint {
        let k = &self.field;
        let p = match m {
            ClosedPoint::Infinity => return self.eval(RatPoint::Infinity).to_closed(k),
            ClosedPoint::Finite(p) => p,
        };
        let kp = ResidueField::new(k, m);
        let theta = Poly::x(k);
        let dv = kp.reduce(&self.den.compose(&theta, k));
        if dv.is_zero() {
            return ClosedPoint::Infinity;
        }
        let beta = kp.mul(&kp.reduce(&self.num), &kp.inv(&dv));
        // Conjugates β, β^q, … up to the first repeat.
        let q = k.order();
        let mut conj = vec![beta.clone()];
        loop {
            let next = conj.last().unwrap().pow_mod(q, p, k);
            if next == beta {
                break;
            }
            conj.push(next);
        }
        // ∏ (X − βᵢ) with coefficients in κ(m); they lie in F_q.
        let mut coeffs: Vec<Poly<Fe>> = vec![kp.one()];
        for b in &conj {
            let mut next = vec![Poly::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c, k);
                next[i] = next[i].sub(&kp.mul(c, b), k);
            }
            coeffs = next;
        }
        let mp = Poly::new(
            coeffs
                .iter()
                .map(|c| {
                    assert!(c.deg() == 0, "minimal polynomial descends to F_q");
                    c.coeff(0, k)
                })
                .collect(),
            k,
        );
        ClosedPoint::Finite(mp)
    }

    /// The fibre over `s`, sorted by point.
    pub fn fibre(&self, s: &ClosedPoint) -> Vec<FibrePoint> {
        let k = &self.field;
        let n = self.degree();
        let p = match s {
            ClosedPoint::Infinity => {
                return self.reciprocal().fibre(&ClosedPoint::rational(k.zero(), k));
            }
            ClosedPoint::Finite(p) => p,
        };
        let d = p.deg();
        let h = p.homogenize(&self.num, &self.den, d, k);
        let mut out: Vec<FibrePoint> = h
            .factor(k)
            .expect("fibre form is nonzero")
            .factors
            .into_iter()
            .map(|(g, e)| {
                assert_eq!(g.deg() % d, 0, "residue degrees are multiples of deg s");
                FibrePoint {
                    f: g.deg() / d,
                    point: ClosedPoint::Finite(g),
                    e,
                }
            })
            .collect();
        if h.deg() < d * n {
            assert_eq!(d, 1, "∞ cannot lie over a point of degree > 1");
            out.push(FibrePoint {
                point: ClosedPoint::Infinity,
                e: d * n - h.deg(),
                f: 1,
            });
        }
        out.sort();
        debug_assert_eq!(out.iter().map(|t| t.e * t.f).sum::<usize>(), n);
        out
    }

    /// Rational points of the fibre over `s`.
    pub fn rational_preimages(&self, s: &ClosedPoint) -> Vec<RatPoint> {
        self.fibre(s)
            .into_iter()
            .filter(|t| t.point.is_rational())
            .map(|t| t.point.as_rational(&self.field).expect("rational"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64], k: &Field) -> Poly<Fe> {
        Poly::new(c.iter().map(|&x| k.from_int(x)).collect(), k)
    }

    fn map(n: &[i64], d: &[i64], k: &Field) -> RationalMap {
        RationalMap::new(p(n, k), p(d, k), k).unwrap()
    }

    fn fp(c: &[i64], e: usize, f: usize, k: &Field) -> FibrePoint {
        FibrePoint {
            point: ClosedPoint::Finite(p(c, k)),
            e,
            f,
        }
    }

    #[test]
    fn squaring_fibres() {
        let k = Field::prime(5).unwrap();
        let sq = map(&[0, 0, 1], &[1], &k);
        let at = |a: i64| ClosedPoint::rational(k.from_int(a), &k);
        assert_eq!(sq.fibre(&at(0)), vec![fp(&[0, 1], 2, 1, &k)]);
        assert_eq!(sq.fibre(&at(2)), vec![fp(&[-2, 0, 1], 1, 2, &k)]);
        assert_eq!(sq.fibre(&at(4)), vec![fp(&[-3, 1], 1, 1, &k), fp(&[-2, 1], 1, 1, &k)]);
        assert_eq!(
            sq.fibre(&ClosedPoint::Infinity),
            vec![FibrePoint {
                point: ClosedPoint::Infinity,
                e: 2,
                f: 1
            }]
        );
    }

    #[test]
    fn composition_examples() {
        let k = Field::prime(3).unwrap();
        let sq = map(&[0, 0, 1], &[1], &k);
        assert_eq!(sq.compose(&sq), map(&[0, 0, 0, 0, 1], &[1], &k));
        assert_eq!(sq.compose(&map(&[1, 1], &[1], &k)), map(&[1, 2, 1], &[1], &k));
        let inv = map(&[1], &[0, 1], &k);
        let c = inv.compose(&sq);
        assert_eq!(c, map(&[1], &[0, 0, 1], &k));
        let fib = c.fibre(&ClosedPoint::rational(k.zero(), &k));
        assert_eq!(
            fib,
            vec![FibrePoint {
                point: ClosedPoint::Infinity,
                e: 2,
                f: 1
            }]
        );
    }

    #[test]
    fn normalization_and_errors() {
        let k = Field::prime(5).unwrap();
        // (2t² + 2t)/(2t + 2) = t.
        assert!(map(&[0, 2, 2], &[2, 2], &k).is_identity());
        assert_eq!(
            RationalMap::new(p(&[1], &k), p(&[], &k), &k),
            Err(P1Error::ZeroDenominator)
        );
        assert_eq!(
            RationalMap::new(p(&[0, 1], &k), p(&[0, 1], &k), &k),
            Err(P1Error::ConstantMap)
        );
    }

    #[test]
    fn images_of_closed_points() {
        let k = Field::prime(5).unwrap();
        let sq = map(&[0, 0, 1], &[1], &k);
        // (t² − 2) ↦ (t − 2); a quartic point t⁴ − 2 ↦ (t² − 2).
        let m = ClosedPoint::Finite(p(&[-2, 0, 1], &k));
        assert_eq!(sq.image(&m), ClosedPoint::Finite(p(&[-2, 1], &k)));
        let m4 = ClosedPoint::finite(p(&[-2, 0, 0, 0, 1], &k), &k).unwrap();
        assert_eq!(sq.image(&m4), m);
        assert_eq!(sq.image(&ClosedPoint::Infinity), ClosedPoint::Infinity);
        let inv = map(&[1], &[0, 1], &k);
        assert_eq!(inv.image(&ClosedPoint::rational(k.zero(), &k)), ClosedPoint::Infinity);
    }
}
