//! Bundles with a prescribed non-split locus, for tests and self-checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::CertifyError;
use crate::conicbundle::{nonsplit_locus, ConicBundle};
use crate::gf::{Fe, Field, FiniteField};
use crate::p1curve::{ClosedPoint, RatPoint, ResidueField};
use crate::poly::Poly;

/// Attempts at a CRT lift before giving up.
const LIFTS: usize = 500;

#[derive(Clone, Debug)]
pub struct Prescribed {
    pub bundle: ConicBundle,
    /// The locus actually realized, in canonical order.
    pub locus: Vec<ClosedPoint>,
    /// ∞ was added to make the request even.
    pub added_infinity: bool,
}

/// x ≡ rᵢ mod mᵢ for pairwise coprime mᵢ.
fn crt(residues: &[(Poly<Fe>, Poly<Fe>)], k: &Field) -> Poly<Fe> {
    let modulus = residues.iter().fold(Poly::one(k), |acc, (m, _)| acc.mul(m, k));
    residues
        .iter()
        .fold(Poly::zero(), |acc, (m, r)| {
            let cofactor = modulus.div_exact(m, k);
            let inv = cofactor.rem(m, k).inv_mod(m, k).expect("coprime moduli");
            acc.add(&cofactor.mul(&r.mul_mod(&inv, m, k), k), k)
        })
        .rem(&modulus, k)
}

/// A bundle (λa, b, −1) whose non-split locus is `points`, with ∞ added
/// when the request has odd size.
///
/// a is the product of the finite points, λ ∈ {1, α}, and b is a nonsquare
/// modulo each of them. Zeros of b can add unwanted points, so b is re-lifted at random
/// until the locus comes out exactly right.
pub fn bundle_with_prescribed_locus<R: Rng + ?Sized>(
    points: &[ClosedPoint],
    k: &Field,
    rng: &mut R,
) -> Result<Prescribed, CertifyError> {
    let mut want: Vec<ClosedPoint> = points.to_vec();
    want.sort();
    if want.windows(2).any(|w| w[0] == w[1]) {
        return Err(CertifyError::Unrealizable("requested points repeat".into()));
    }
    let mut added_infinity = false;
    if want.len() % 2 == 1 {
        if want.contains(&ClosedPoint::Infinity) {
            return Err(CertifyError::Unrealizable(
                "the locus has even size, and ∞ is already requested".into(),
            ));
        }
        want.push(ClosedPoint::Infinity);
        added_infinity = true;
    }
    let finite: Vec<&Poly<Fe>> = want.iter().filter_map(|p| p.poly()).collect();
    let a = finite.iter().fold(Poly::one(k), |acc, p| acc.mul(p, k));
    let minus_one = Poly::constant(k.neg(k.one()), k);
    if finite.is_empty() {
        let b = ConicBundle::new(Poly::one(k), Poly::one(k), minus_one, k).expect("nonzero");
        return Ok(Prescribed {
            bundle: b,
            locus: Vec::new(),
            added_infinity,
        });
    }
    let residues: Vec<(Poly<Fe>, Poly<Fe>)> = want
        .iter()
        .filter(|p| p.poly().is_some())
        .map(|p| {
            let kp = ResidueField::new(k, p);
            (p.poly().expect("finite").clone(), kp.canonical_nonsquare())
        })
        .collect();
    let b0 = crt(&residues, k);
    for attempt in 0..LIFTS {
        // The constant in front of a fixes the class at ∞ when a has even
        // degree and b odd degree; it does not touch the finite residues.
        let lambda = if attempt % 2 == 0 { k.one() } else { k.nonsquare() };
        let b = if attempt < 2 {
            b0.clone()
        } else {
            let r = Poly::new((0..=rng.gen_range(0..=2)).map(|_| k.random(rng)).collect(), k);
            b0.add(&a.mul(&r, k), k)
        };
        if b.is_zero() {
            continue;
        }
        let bundle = ConicBundle::new(a.scale(lambda, k), b, minus_one.clone(), k).expect("nonzero");
        if nonsplit_locus(&bundle).points() == want {
            return Ok(Prescribed {
                bundle,
                locus: want,
                added_infinity,
            });
        }
    }
    Err(CertifyError::Unrealizable(format!(
        "no lift realized {want:?} after {LIFTS} attempts"
    )))
}

/// Distinct random closed points with the given degrees; degree-1 points
/// include ∞.
pub fn random_points<R: Rng + ?Sized>(degrees: &[usize], k: &Field, rng: &mut R) -> Vec<ClosedPoint> {
    let rational = degrees.iter().filter(|&&d| d == 1).count() as u128;
    assert!(rational <= k.order() + 1, "more rational points requested than exist");
    let mut out: Vec<ClosedPoint> = Vec::new();
    for &d in degrees {
        assert!(d >= 1);
        let p = loop {
            let p = if d == 1 {
                RatPoint::all(k).choose(rng).expect("nonempty").to_closed(k)
            } else {
                let mut c: Vec<Fe> = (0..d).map(|_| k.random(rng)).collect();
                c.push(k.one());
                let f = Poly::new(c, k);
                if !f.is_irreducible(k) {
                    continue;
                }
                ClosedPoint::Finite(f)
            };
            if !out.contains(&p) {
                break p;
            }
        };
        out.push(p);
    }
    out.sort();
    out
}
