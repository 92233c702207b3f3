use serde_json::json;

use super::double::mobius_cover;
use super::{Cover, StepKind, SynthError};
use crate::gf::{Fe, Field, FiniteField, QuadExt};
use crate::json;
use crate::p1curve::{ClosedPoint, FibrePoint, Mobius, RationalMap};
use crate::poly::Poly;

/// The degree-2 point (t² − α).
pub fn sqrt_alpha_point(k: &Field) -> ClosedPoint {
    ClosedPoint::Finite(Poly::new(vec![k.neg(k.nonsquare()), k.zero(), k.one()], k))
}

/// A degree-d map φ over F_q sending the degree-2d point m to (t² − α).
///
/// Over l = F_q(√α), p_m = p₁·σ(p₁). With f = p₁/(u·σ(p₁)), where u·σ(u)
/// is the constant f·σ(f) before rescaling, the map g(f) with
/// g(x) = √α(x + 1)/(x − 1) is σ-invariant and so has coefficients in F_q
/// once its denominator is made monic.
pub fn reduce_degree_cover(m: &ClosedPoint, k: &Field) -> Result<Cover, SynthError> {
    let pm = match m {
        ClosedPoint::Finite(p) if p.deg() % 2 == 0 => p,
        _ => return Err(SynthError::BadInput(format!("{m:?} does not have even degree"))),
    };
    let d = pm.deg() / 2;
    let l = QuadExt::new(k);
    let pl = pm.map(&l, |a| l.embed(a));
    let factors = pl.factor(&l).expect("nonzero").factors;
    let p1 = match &factors[..] {
        [(a, 1), (b, 1)] if a.deg() == d && b.deg() == d => a.clone(),
        _ => {
            return Err(SynthError::Verification(format!(
                "{m:?} does not split into two conjugates over F_q²"
            )))
        }
    };
    let p2 = p1.map(&l, |x| l.conj(x));
    if p1.mul(&p2, &l) != pl {
        return Err(SynthError::Verification("conjugate factors do not recover p_m".into()));
    }
    // f = p₁/p₂; f·σ(f) is the constant v = lc(p₁)σ(lc(p₁)) / lc(p₂)σ(lc(p₂)).
    let lc1 = p1.lc().expect("nonzero");
    let lc2 = p2.lc().expect("nonzero");
    let v = l
        .descend(
            l.div(l.mul(lc1, l.conj(lc1)), l.mul(lc2, l.conj(lc2)))
                .expect("nonzero"),
        )
        .expect("norms lie in F_q");
    let u = l.solve_norm_equation(v).expect("v ≠ 0");
    let big_p1 = p1.scale(l.inv(u).expect("nonzero"), &l);
    let s = l.sqrt_alpha();
    let num_l = big_p1.add(&p2, &l).scale(s, &l);
    let den_l = big_p1.sub(&p2, &l);
    let scale = l.inv(den_l.lc().expect("p₁ ≠ p₂")).expect("nonzero");
    let descend = |p: &Poly<crate::gf::Fq2>| -> Result<Poly<Fe>, SynthError> {
        let c = p
            .scale(scale, &l)
            .coeffs()
            .iter()
            .map(|&x| l.descend(x))
            .collect::<Option<Vec<Fe>>>()
            .ok_or_else(|| SynthError::Verification("composed map is not Frobenius-fixed".into()))?;
        Ok(Poly::new(c, k))
    };
    let phi =
        RationalMap::new(descend(&num_l)?, descend(&den_l)?, k).map_err(|e| SynthError::Verification(e.to_string()))?;
    let target = sqrt_alpha_point(k);
    let want = vec![FibrePoint {
        point: m.clone(),
        e: 1,
        f: d,
    }];
    if phi.degree() != d || phi.image(m) != target || phi.fibre(&target) != want {
        return Err(SynthError::Verification(format!(
            "descended map {phi:?} misses (t² − α)"
        )));
    }
    Ok(Cover::from_step(
        StepKind::Descent,
        json!({ "point": json::point(k, m), "d": d }),
        phi,
    ))
}

/// The first monic irreducible quartic in canonical order.
pub fn first_quartic_point(k: &Field) -> ClosedPoint {
    ClosedPoint::Finite(
        Poly::monics(4, k)
            .find(|f| f.is_irreducible(k))
            .expect("irreducible quartics exist"),
    )
}

/// A degree-2 cover whose fibre over the degree-2 point P2 is one point of
/// degree 4.
pub fn quadruple_point_cover(p2: &ClosedPoint, k: &Field) -> Result<Cover, SynthError> {
    let f = match p2 {
        ClosedPoint::Finite(f) if f.deg() == 2 => f,
        _ => return Err(SynthError::BadInput(format!("{p2:?} does not have degree 2"))),
    };
    let m = first_quartic_point(k);
    let theta = reduce_degree_cover(&m, k)?;
    // t ↦ (κ/2)t − b/2 sends the roots ±√α of t² − α to the roots
    // (−b ± √(b² − 4c))/2 of t² + bt + c, where κ² = (b² − 4c)/α.
    let (b, c) = (f.coeff(1, k), f.coeff(0, k));
    let disc = k.sub(k.mul(b, b), k.mul(k.from_int(4), c));
    let kappa = k
        .sqrt(k.div(disc, k.nonsquare()).expect("α ≠ 0"))
        .expect("an irreducible quadratic has nonsquare discriminant");
    let half = k.inv(k.from_int(2)).expect("p odd");
    let mu = Mobius::affine(k.mul(kappa, half), k.neg(k.mul(b, half)), k).expect("κ ≠ 0");
    let phi = mobius_cover(&mu, k).then(&theta);
    let want = vec![FibrePoint {
        point: m.clone(),
        e: 1,
        f: 2,
    }];
    if phi.map().fibre(p2) != want {
        return Err(SynthError::Verification(format!(
            "fibre over {p2:?} is not a single quartic"
        )));
    }
    Ok(phi)
}
