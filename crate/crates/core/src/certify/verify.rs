//! Checks that read only a bundle, a locus and a cover's map or chain.

use serde::Serialize;
use serde_json::{json, Value};

use crate::conicbundle::{nonsplit_locus, ConicBundle};
use crate::coversynth::{Cover, Step, StepKind};
use crate::gf::{Field, FiniteField};
use crate::json;
use crate::p1curve::{ClosedPoint, FibrePoint, Mobius, RatPoint, RationalMap};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

fn fibre_json(map: &RationalMap, f: &[FibrePoint]) -> Value {
    let k = map.field();
    Value::Array(
        f.iter()
            .map(|t| json!({ "point": json::point(k, &t.point), "e": t.e, "f": t.f }))
            .collect(),
    )
}

/// 2 | e·f at every point over every s in `points`.
pub fn verify_parity(map: &RationalMap, points: &[ClosedPoint]) -> Check {
    let k = map.field();
    let mut passed = true;
    let detail = points
        .iter()
        .map(|s| {
            let f = map.fibre(s);
            let ok = f.iter().all(|t| t.e * t.f % 2 == 0);
            passed &= ok;
            json!({ "point": json::point(k, s), "fibre": fibre_json(map, &f), "ok": ok })
        })
        .collect();
    Check {
        name: "parity",
        passed,
        detail: Value::Array(detail),
    }
}

/// The pulled-back bundle has empty non-split locus.
pub fn verify_pullback_vanishing(bundle: &ConicBundle, map: &RationalMap) -> Check {
    let pb = bundle.pullback(map);
    let l = nonsplit_locus(&pb);
    let k = bundle.field();
    Check {
        name: "pullback_residues_vanish",
        passed: l.is_empty(),
        detail: json!({
            "pullback": { "a": json::poly(k, pb.a()), "b": json::poly(k, pb.b()), "c": json::poly(k, pb.c()) },
            "remaining": l.points().iter().map(|p| json::point(k, p)).collect::<Vec<_>>(),
        }),
    }
}

/// The fibres over s0 and s1 each contain a rational point.
pub fn verify_requiv(map: &RationalMap, s0: RatPoint, s1: RatPoint) -> Check {
    let k = map.field();
    let mut passed = s0 != s1;
    let detail = [s0, s1]
        .iter()
        .map(|&s| {
            let f = map.fibre(&s.to_closed(k));
            let ok = f.iter().any(|t| t.f == 1);
            passed &= ok;
            json!({ "point": json::rational_point(k, s), "fibre": fibre_json(map, &f), "ok": ok })
        })
        .collect();
    Check {
        name: "fibre_rational_points",
        passed,
        detail: Value::Array(detail),
    }
}

const MALFORMED: &str = "parameters are malformed";

/// Why a chain step disagrees with its own parameters, if it does. Missing
/// or unreadable parameters come back as `Some(None)` from the inner closure.
fn step_problem(step: &Step, k: &Field) -> Option<String> {
    let p = &step.params;
    let map = &step.map;
    let elem = |key: &str| json::parse_elem(k, p.get(key)?, key).ok();
    let check = || -> Option<Option<&'static str>> {
        Some(match step.kind {
            StepKind::Mobius => {
                let [a, b, c, d] = ["a", "b", "c", "d"].map(elem);
                let m = Mobius::new(a?, b?, c?, d?, k).ok()?;
                (m.to_map(k) != *map).then_some("map differs from its matrix")
            }
            StepKind::Squaring => {
                let c = elem("c").filter(|&c| !k.is_zero(c))?;
                (RationalMap::power(2, c, k) != *map).then_some("map is not T²/c")
            }
            StepKind::Twist => {
                let g = json::parse_poly(k, p.get("g")?, "g").ok()?;
                let (t0, y0) = (elem("t0")?, elem("y0")?);
                if map.degree() != 2 {
                    Some("twist does not have degree 2")
                } else if k.mul(y0, y0) != g.eval(t0, k) {
                    Some("(t0, y0) is not on y² = g(t)")
                } else if map.eval(RatPoint::Infinity) != RatPoint::Finite(t0) {
                    Some("∞ does not map to t0")
                } else {
                    None
                }
            }
            StepKind::Descent => {
                let m = json::parse_point(k, p.get("point")?, "point").ok()?;
                let d = p.get("d")?.as_u64()? as usize;
                (map.degree() != d || m.degree() != 2 * d || map.image(&m).degree() != 2)
                    .then_some("the point does not map to a degree-2 point")
            }
            StepKind::Composition => {
                let m = json::parse_map(k, p.get("map")?, "map").ok()?;
                (m != *map).then_some("map differs from the recorded map")
            }
        })
    };
    match check() {
        Some(problem) => problem.map(str::to_string),
        None => Some(MALFORMED.to_string()),
    }
}

/// Each step matches its parameters, the chain recomposes to the map, and
/// the step degrees multiply to the degree of the map.
pub fn verify_chain(cover: &Cover) -> Check {
    let k = cover.field();
    let problems: Vec<Value> = cover
        .chain()
        .iter()
        .enumerate()
        .filter_map(|(i, s)| step_problem(s, k).map(|m| json!({ "step": i, "problem": m })))
        .collect();
    let recomposes = cover.chain_is_consistent();
    Check {
        name: "audit_chain",
        passed: recomposes && problems.is_empty(),
        detail: json!({
            "steps": cover.chain().len(),
            "degree": cover.degree(),
            "recomposes": recomposes,
            "step_problems": problems,
        }),
    }
}
