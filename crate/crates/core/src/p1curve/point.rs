use std::cmp::Ordering;
use std::fmt;

use super::P1Error;
use crate::gf::{Fe, Field, FiniteField};
use crate::poly::Poly;

/// A closed point of P¹ over F_q.
///
/// Points are ordered by degree and then by coefficients from the top
/// down, with the infinite place after every finite one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ClosedPoint {
    Finite(Poly<Fe>),
    Infinity,
}

/// A rational point, in the form Möbius maps act on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RatPoint {
    Finite(Fe),
    Infinity,
}

impl RatPoint {
    /// P¹(F_q) with ∞ last.
    pub fn all(k: &Field) -> Vec<RatPoint> {
        k.elements()
            .map(RatPoint::Finite)
            .chain(std::iter::once(RatPoint::Infinity))
            .collect()
    }

    pub fn to_closed(self, k: &Field) -> ClosedPoint {
        match self {
            RatPoint::Finite(a) => ClosedPoint::Finite(Poly::linear(a, k)),
            RatPoint::Infinity => ClosedPoint::Infinity,
        }
    }

    /// Homogeneous coordinates [x : y].
    pub fn homogeneous(self, k: &Field) -> (Fe, Fe) {
        match self {
            RatPoint::Finite(a) => (a, k.one()),
            RatPoint::Infinity => (k.one(), k.zero()),
        }
    }

    pub fn from_homogeneous(x: Fe, y: Fe, k: &Field) -> RatPoint {
        if k.is_zero(y) {
            RatPoint::Infinity
        } else {
            RatPoint::Finite(k.div(x, y).expect("nonzero"))
        }
    }

    /// Position in [`RatPoint::all`].
    pub fn index(self, k: &Field) -> usize {
        match self {
            RatPoint::Finite(a) => k.index(a) as usize,
            RatPoint::Infinity => k.order() as usize,
        }
    }
}

impl ClosedPoint {
    /// The point cut out by `p`, which must be monic and irreducible.
    pub fn finite(p: Poly<Fe>, k: &Field) -> Result<Self, P1Error> {
        if !p.is_monic(k) {
            return Err(P1Error::NotMonic);
        }
        if !p.is_irreducible(k) {
            return Err(P1Error::NotIrreducible);
        }
        Ok(ClosedPoint::Finite(p))
    }

    pub fn rational(a: Fe, k: &Field) -> Self {
        RatPoint::Finite(a).to_closed(k)
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Finite(p) => p.deg(),
            ClosedPoint::Infinity => 1,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn poly(&self) -> Option<&Poly<Fe>> {
        match self {
            ClosedPoint::Finite(p) => Some(p),
            ClosedPoint::Infinity => None,
        }
    }

    pub fn as_rational(&self, k: &Field) -> Option<RatPoint> {
        match self {
            ClosedPoint::Infinity => Some(RatPoint::Infinity),
            ClosedPoint::Finite(p) if p.deg() == 1 => Some(RatPoint::Finite(k.neg(p.coeffs()[0]))),
            _ => None,
        }
    }

    /// Every closed point of degree `d`, in canonical order.
    pub fn of_degree(d: usize, k: &Field) -> Vec<ClosedPoint> {
        let mut out: Vec<ClosedPoint> = Poly::monics(d, k)
            .filter(|f| f.is_irreducible(k))
            .map(ClosedPoint::Finite)
            .collect();
        if d == 1 {
            out.push(ClosedPoint::Infinity);
        }
        out
    }

    /// The distinct closed points where a nonzero polynomial vanishes.
    pub fn zeros_of(f: &Poly<Fe>, k: &Field) -> Vec<ClosedPoint> {
        f.irreducible_factors(k).into_iter().map(ClosedPoint::Finite).collect()
    }

    fn key(&self) -> (usize, u8, Vec<u64>) {
        match self {
            ClosedPoint::Infinity => (usize::MAX, 1, Vec::new()),
            ClosedPoint::Finite(p) => {
                let c = p.coeffs().iter().rev().map(|&x| x.value()).collect();
                (p.deg(), 0, c)
            }
        }
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Infinity => write!(f, "inf"),
            ClosedPoint::Finite(p) => write!(f, "({:?})", p.coeffs()),
        }
    }
}

/// v_P(f) for a nonzero polynomial.
pub fn valuation(f: &Poly<Fe>, p: &ClosedPoint, k: &Field) -> Result<i64, P1Error> {
    if f.is_zero() {
        return Err(P1Error::ZeroInput);
    }
    Ok(match p {
        ClosedPoint::Infinity => -(f.deg() as i64),
        ClosedPoint::Finite(m) => f.valuation(m, k).0 as i64,
    })
}

/// v_P(num/den).
pub fn valuation_of_fraction(num: &Poly<Fe>, den: &Poly<Fe>, p: &ClosedPoint, k: &Field) -> Result<i64, P1Error> {
    Ok(valuation(num, p, k)? - valuation(den, p, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64], k: &Field) -> Poly<Fe> {
        Poly::new(c.iter().map(|&x| k.from_int(x)).collect(), k)
    }

    #[test]
    fn valuation_examples() {
        let k = Field::prime(3).unwrap();
        let t = ClosedPoint::rational(k.zero(), &k);
        assert_eq!(valuation(&p(&[0, 0, 1], &k), &t, &k), Ok(2));
        assert_eq!(valuation(&p(&[0, 1], &k), &ClosedPoint::Infinity, &k), Ok(-1));
        let m = ClosedPoint::finite(p(&[1, 0, 1], &k), &k).unwrap();
        assert_eq!(valuation(&p(&[1, 0, 2, 0, 1], &k), &m, &k), Ok(2));
        assert_eq!(valuation(&Poly::zero(), &m, &k), Err(P1Error::ZeroInput));
        assert_eq!(
            valuation_of_fraction(&p(&[0, 1], &k), &p(&[0, 0, 0, 1], &k), &ClosedPoint::Infinity, &k),
            Ok(2)
        );
    }

    #[test]
    fn ordering_puts_infinity_last() {
        let k = Field::prime(3).unwrap();
        let pts = ClosedPoint::of_degree(1, &k);
        assert_eq!(pts.len(), 4);
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
        assert!(ClosedPoint::of_degree(2, &k)[0] < ClosedPoint::Infinity);
        assert!(pts[0] < ClosedPoint::of_degree(2, &k)[0]);
    }

    #[test]
    fn constructor_checks() {
        let k = Field::prime(5).unwrap();
        assert_eq!(ClosedPoint::finite(p(&[1, 0, 2], &k), &k), Err(P1Error::NotMonic));
        assert_eq!(
            ClosedPoint::finite(p(&[-4, 0, 1], &k), &k),
            Err(P1Error::NotIrreducible)
        );
        assert!(ClosedPoint::finite(p(&[-2, 0, 1], &k), &k).is_ok());
    }
}
