use serde_json::json;

use super::{Cover, StepKind, SynthError};
use crate::gf::{Fe, Field, FiniteField};
use crate::json;
use crate::p1curve::{ClosedPoint, Mobius, RatPoint, RationalMap};
use crate::poly::Poly;

/// The class of the constant c in T ↦ T²/c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    Trivial,
    Nontrivial,
}

impl Twist {
    pub fn constant(self, k: &Field) -> Fe {
        match self {
            Twist::Trivial => k.one(),
            Twist::Nontrivial => k.nonsquare(),
        }
    }

    pub fn other(self) -> Twist {
        match self {
            Twist::Trivial => Twist::Nontrivial,
            Twist::Nontrivial => Twist::Trivial,
        }
    }
}

/// How a closed point behaves under a degree-2 cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FibreType {
    /// Two points with f = 1.
    Split,
    /// One point with f = 2.
    Inert,
    /// One point with e = 2.
    Ramified,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FibreClassification {
    pub split: Vec<ClosedPoint>,
    pub inert: Vec<ClosedPoint>,
    pub ramified: Vec<ClosedPoint>,
}

/// The Möbius map sending p to 0 and q to ∞.
pub(crate) fn to_zero_infinity(p: RatPoint, q: RatPoint, k: &Field) -> Mobius {
    let (o, z) = (k.one(), k.zero());
    match (p, q) {
        (RatPoint::Finite(p), RatPoint::Finite(q)) => Mobius::new(o, k.neg(p), o, k.neg(q), k),
        (RatPoint::Finite(p), RatPoint::Infinity) => Mobius::new(o, k.neg(p), z, o, k),
        (RatPoint::Infinity, RatPoint::Finite(q)) => Mobius::new(z, o, o, k.neg(q), k),
        (RatPoint::Infinity, RatPoint::Infinity) => unreachable!("p ≠ q"),
    }
    .expect("distinct points")
}

pub(crate) fn mobius_params(m: &Mobius, k: &Field) -> serde_json::Value {
    json!({
        "a": json::elem(k, m.a),
        "b": json::elem(k, m.b),
        "c": json::elem(k, m.c),
        "d": json::elem(k, m.d),
    })
}

pub(crate) fn mobius_cover(m: &Mobius, k: &Field) -> Cover {
    Cover::from_step(StepKind::Mobius, mobius_params(m, k), m.to_map(k))
}

/// μ⁻¹ ∘ (T ↦ T²/c) with μ sending P to 0 and Q to ∞: totally ramified
/// over P and Q, with ramification points 0 and ∞ on the source.
pub fn double_cover(p: RatPoint, q: RatPoint, twist: Twist, k: &Field) -> Result<Cover, SynthError> {
    if p == q {
        return Err(SynthError::BadInput("branch points must be distinct".into()));
    }
    let c = twist.constant(k);
    let sq = Cover::from_step(
        StepKind::Squaring,
        json!({ "c": json::elem(k, c) }),
        RationalMap::power(2, c, k),
    );
    let mu_inv = to_zero_infinity(p, q, k).inverse(k);
    if mu_inv.same_map(&Mobius::identity(k), k) {
        Ok(sq)
    } else {
        Ok(mobius_cover(&mu_inv, k).then(&sq))
    }
}

pub fn fibre_type(map: &RationalMap, s: &ClosedPoint) -> FibreType {
    assert_eq!(map.degree(), 2, "fibre types are defined for degree-2 covers");
    let f = map.fibre(s);
    match f[..] {
        [ref t] if t.e == 2 => FibreType::Ramified,
        [_] => FibreType::Inert,
        _ => FibreType::Split,
    }
}

pub fn classify_fibres(cover: &Cover, points: &[ClosedPoint]) -> Result<FibreClassification, SynthError> {
    if cover.degree() != 2 {
        return Err(SynthError::BadInput("classification needs a degree-2 cover".into()));
    }
    let mut out = FibreClassification::default();
    for p in points {
        match fibre_type(cover.map(), p) {
            FibreType::Split => out.split.push(p.clone()),
            FibreType::Inert => out.inert.push(p.clone()),
            FibreType::Ramified => out.ramified.push(p.clone()),
        }
    }
    Ok(out)
}

/// Δ(t) = B² − 4AC for N(T) − t·D(T) = A T² + B T + C. Its zeros, and ∞
/// when deg Δ < 2, form the branch locus; its square class over F_q(t)
/// is the class of the cover.
pub fn fibral_discriminant(map: &RationalMap) -> Poly<Fe> {
    assert_eq!(map.degree(), 2);
    let k = map.field();
    let coef = |i: usize| Poly::new(vec![map.num().coeff(i, k), k.neg(map.den().coeff(i, k))], k);
    let (a, b, c) = (coef(2), coef(1), coef(0));
    b.mul(&b, k).sub(&a.mul(&c, k).scale(k.from_int(4), k), k)
}

pub fn branch_locus(map: &RationalMap) -> Vec<ClosedPoint> {
    let k = map.field();
    let delta = fibral_discriminant(map);
    let mut pts = ClosedPoint::zeros_of(&delta, k);
    if delta.deg() < 2 {
        pts.push(ClosedPoint::Infinity);
    }
    pts
}

/// A parametrization T ↦ t of the conic y² = G(t), deg G ∈ {1, 2}, by
/// lines through its first affine point.
pub fn conic_cover(g: &Poly<Fe>, k: &Field) -> Result<Cover, SynthError> {
    if g.is_zero() || g.deg() == 0 || g.deg() > 2 {
        return Err(SynthError::BadInput("conic needs a polynomial of degree 1 or 2".into()));
    }
    let (t0, y0) = k
        .elements()
        .find_map(|t| k.sqrt(g.eval(t, k)).ok().map(|y| (t, y)))
        .expect("y² = G(t) has an affine F_q-point");
    let g2 = g.coeff(2, k);
    let num = Poly::new(
        vec![
            k.sub(g.derivative(k).eval(t0, k), k.mul(t0, g2)),
            k.neg(k.add(y0, y0)),
            t0,
        ],
        k,
    );
    let den = Poly::new(vec![k.neg(g2), k.zero(), k.one()], k);
    let map = RationalMap::new(num, den, k).expect("nonconstant");
    assert_eq!(
        map.degree(),
        2,
        "G is not a square, so the parametrization has degree 2"
    );
    Ok(Cover::from_step(
        StepKind::Twist,
        json!({ "g": json::poly(k, g), "t0": json::elem(k, t0), "y0": json::elem(k, y0) }),
        map,
    ))
}

/// The degree-2 cover with the same branch locus and the other torsor
/// class: the conic y² = α·Δ(t) parametrized through a rational point.
pub fn twist_cover(cover: &Cover) -> Result<Cover, SynthError> {
    if cover.degree() != 2 {
        return Err(SynthError::BadInput("twisting needs a degree-2 cover".into()));
    }
    let k = cover.field();
    let delta = fibral_discriminant(cover.map());
    let twisted = conic_cover(&delta.scale(k.nonsquare(), k), k)?;
    let d2 = fibral_discriminant(twisted.map());
    if d2.monic(k) != delta.monic(k) {
        return Err(SynthError::Verification("twist changed the branch locus".into()));
    }
    Ok(twisted)
}
