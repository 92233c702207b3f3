use super::descent::quadruple_point_cover;
use super::double::{branch_locus, double_cover, fibre_type, mobius_cover, twist_cover, FibreType, Twist};
use super::kill::{kill_rational_parity, kill_rational_residues, AnchorSearch};
use super::{Cover, SynthError};
use crate::conicbundle::NonSplitLocus;
use crate::gf::{Field, FiniteField};
use crate::p1curve::{ClosedPoint, Mobius, RatPoint};

/// State budget for each anchored search.
const MAX_STATES: usize = 1 << 20;

fn parity_holds(cover: &Cover, points: &[ClosedPoint]) -> bool {
    points
        .iter()
        .all(|s| cover.map().fibre(s).iter().all(|t| t.e * t.f % 2 == 0))
}

fn has_rational_point_over(cover: &Cover, s: RatPoint, k: &Field) -> bool {
    cover.map().fibre(&s.to_closed(k)).iter().any(|t| t.f == 1)
}

fn split_rational_preimages(cover: &Cover, rat: &[RatPoint], k: &Field) -> Vec<RatPoint> {
    let mut out: Vec<RatPoint> = rat
        .iter()
        .flat_map(|&r| {
            let s = r.to_closed(k);
            if fibre_type(cover.map(), &s) == FibreType::Split {
                cover.map().rational_preimages(&s)
            } else {
                Vec::new()
            }
        })
        .collect();
    out.sort();
    out
}

fn compose(psi: Cover, theta: Cover) -> Cover {
    if theta.chain().is_empty() {
        psi
    } else {
        psi.then(&theta)
    }
}

fn split_locus(locus: &NonSplitLocus) -> (Vec<RatPoint>, Vec<ClosedPoint>) {
    let k = locus.field();
    let mut rat = Vec::new();
    let mut other = Vec::new();
    for p in locus.points() {
        match p.as_rational(k) {
            Some(r) => rat.push(r),
            None => other.push(p),
        }
    }
    (rat, other)
}

/// A cover with 2 | e·f over every point of a locus satisfying (★).
pub fn synth_unirational_cover(locus: &NonSplitLocus) -> Result<Cover, SynthError> {
    if !locus.condition_star() {
        return Err(SynthError::HypothesisNotMet("condition (★) fails".into()));
    }
    let k = locus.field();
    let (rat, other) = split_locus(locus);
    let p2 = other.iter().find(|p| p.degree() == 2).cloned();
    let odd = other.iter().find(|p| p.degree() % 2 == 1).cloned();

    let psi = match (&p2, &odd) {
        (None, None) => None,
        (Some(p), _) => {
            let mut psi = quadruple_point_cover(p, k)?;
            if let Some(q) = &odd {
                if fibre_type(psi.map(), q) == FibreType::Split {
                    psi = twist_cover(&psi)?;
                }
            }
            if fibre_type(psi.map(), p) != FibreType::Inert {
                return Err(SynthError::Verification(format!("{p:?} is no longer inert")));
            }
            Some(psi)
        }
        (None, Some(q)) => {
            let mut designated: Vec<RatPoint> = rat.clone();
            designated.extend(RatPoint::all(k).into_iter().filter(|r| !rat.contains(r)));
            let (a, b) = (designated[0], designated[1]);
            let mut psi = double_cover(a, b, Twist::Trivial, k)?;
            if fibre_type(psi.map(), q) != FibreType::Inert {
                psi = double_cover(a, b, Twist::Nontrivial, k)?;
            }
            if fibre_type(psi.map(), q) != FibreType::Inert {
                return Err(SynthError::Verification(format!("{q:?} is inert under neither twist")));
            }
            Some(psi)
        }
    };
    let phi = match psi {
        None => kill_rational_parity(&rat, k),
        Some(psi) => {
            let b2 = split_rational_preimages(&psi, &rat, k);
            compose(psi, kill_rational_parity(&b2, k))
        }
    };
    if !parity_holds(&phi, &locus.points()) {
        return Err(SynthError::Verification(format!("parity fails for {:?}", phi.map())));
    }
    Ok(phi)
}

/// A cover with 2 | e·f over a locus satisfying (★★) and a rational point
/// above each of s0 and s1.
pub fn synth_requiv_cover(locus: &NonSplitLocus, s0: RatPoint, s1: RatPoint) -> Result<Cover, SynthError> {
    if !locus.condition_star_star() {
        return Err(SynthError::HypothesisNotMet("condition (★★) fails".into()));
    }
    if s0 == s1 {
        return Err(SynthError::BadInput("s0 and s1 must differ".into()));
    }
    let k = locus.field();
    let points = locus.points();
    let (rat, other) = split_locus(locus);
    let accept =
        |c: &Cover| parity_holds(c, &points) && has_rational_point_over(c, s0, k) && has_rational_point_over(c, s1, k);
    let mut search: Option<AnchorSearch> = None;
    let mut anchored = |b: &[RatPoint], anchors: &[RatPoint]| -> Result<Cover, SynthError> {
        if search.is_none() {
            search = Some(AnchorSearch::new(k)?);
        }
        search.as_ref().expect("built").run(b, anchors, MAX_STATES)
    };

    match other.first() {
        Some(m) if m.degree() == 2 => {
            let psi0 = quadruple_point_cover(m, k)?;
            let bases = [psi0.clone(), twist_cover(&psi0)?];
            let mut candidates: Vec<(bool, Cover)> = Vec::new();
            for base in &bases {
                let branch: Vec<RatPoint> = branch_locus(base.map())
                    .iter()
                    .filter_map(|p| p.as_rational(k))
                    .collect();
                for nu in Mobius::stabilizer(m, k) {
                    let hits = branch.iter().any(|&b| nu.apply(b, k) == s1);
                    let c = if nu.same_map(&Mobius::identity(k), k) {
                        base.clone()
                    } else {
                        mobius_cover(&nu, k).then(base)
                    };
                    candidates.push((hits, c));
                }
            }
            // Stable sort: covers ramified over s1 first.
            candidates.sort_by_key(|(hits, _)| !hits);
            for (_, psi) in &candidates {
                if let Some(phi) = finish_requiv(psi, &rat, s0, s1, k, &mut anchored, &accept) {
                    return Ok(phi);
                }
            }
            // Every degree-2 cover of P¹ with m inert.
            let all = AnchorSearch::new(k)?;
            for psi in all.steps() {
                if fibre_type(psi.map(), m) != FibreType::Inert {
                    continue;
                }
                if let Some(phi) = finish_requiv(psi, &rat, s0, s1, k, &mut anchored, &accept) {
                    return Ok(phi);
                }
            }
            Err(SynthError::SearchExhausted(format!(
                "no cover found for the degree-2 point {m:?} with s0 = {s0:?}, s1 = {s1:?}"
            )))
        }
        m => {
            let rest: Vec<RatPoint> = rat.iter().copied().filter(|&r| r != s0 && r != s1).collect();
            let mut twists = vec![Twist::Trivial, Twist::Nontrivial];
            if let Some(m) = m {
                let c = double_cover(s0, s1, Twist::Trivial, k)?;
                if fibre_type(c.map(), m) != FibreType::Inert {
                    twists.reverse();
                }
                twists.truncate(1);
            }
            for tw in twists {
                let psi = double_cover(s0, s1, tw, k)?;
                let b2 = split_rational_preimages(&psi, &rest, k);
                let zero = RatPoint::Finite(k.zero());
                let theta = if b2.is_empty() {
                    Ok(Cover::identity(k))
                } else {
                    kill_rational_residues(&b2, zero, RatPoint::Infinity, k)
                        .or_else(|_| anchored(&b2, &[zero, RatPoint::Infinity]))
                };
                if let Ok(theta) = theta {
                    let phi = compose(psi, theta);
                    if accept(&phi) {
                        return Ok(phi);
                    }
                }
            }
            if m.is_none() {
                let phi = anchored(&rat, &[s0, s1])?;
                if accept(&phi) {
                    return Ok(phi);
                }
            }
            Err(SynthError::SearchExhausted(format!(
                "no cover found for s0 = {s0:?}, s1 = {s1:?}"
            )))
        }
    }
}

/// Completes a degree-2 cover ψ that already handles the non-rational point:
/// kills the split rational points while keeping rational points over s0
/// and s1.
fn finish_requiv(
    psi: &Cover,
    rat: &[RatPoint],
    s0: RatPoint,
    s1: RatPoint,
    k: &Field,
    anchored: &mut impl FnMut(&[RatPoint], &[RatPoint]) -> Result<Cover, SynthError>,
    accept: &impl Fn(&Cover) -> bool,
) -> Option<Cover> {
    let over = |s: RatPoint| -> Option<(bool, Vec<RatPoint>)> {
        let c = s.to_closed(k);
        match fibre_type(psi.map(), &c) {
            FibreType::Inert => None,
            t => Some((t == FibreType::Ramified, psi.map().rational_preimages(&c))),
        }
    };
    let (ram0, over0) = over(s0)?;
    let (ram1, over1) = over(s1)?;
    let b2 = split_rational_preimages(psi, rat, k);
    if b2.is_empty() {
        return accept(psi).then(|| psi.clone());
    }
    if ram0 && ram1 {
        if let Ok(theta) = kill_rational_residues(&b2, over0[0], over1[0], k) {
            let phi = psi.then(&theta);
            if accept(&phi) {
                return Some(phi);
            }
        }
    }
    for &a0 in &over0 {
        for &a1 in &over1 {
            if let Ok(theta) = anchored(&b2, &[a0, a1]) {
                let phi = compose(psi.clone(), theta);
                if accept(&phi) {
                    return Some(phi);
                }
            }
        }
    }
    None
}
