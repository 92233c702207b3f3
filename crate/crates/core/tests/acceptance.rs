//! Seeded property-based acceptance run. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use unirat::certify::{
    bundle_with_prescribed_locus, random_points, section_search_oracle, verify_chain, verify_cover, verify_parity,
    verify_pullback_vanishing, verify_requiv, SectionLimits, SectionOutcome,
};
use unirat::conicbundle::{
    candidate_points, fibre_split_direct, nonsplit_locus, residue_at, residue_raw, residue_tame_oracle,
    tame_symbol_raw, ConicBundle,
};
use unirat::coversynth::{
    double_cover, fibre_type, quadruple_point_cover, reduce_degree_cover, synth_requiv_cover, synth_unirational_cover,
    twist_cover, Cover, FibreType, StepKind, SynthError, Twist,
};
use unirat::gf::{Fe, Field, FiniteField};
use unirat::json;
use unirat::p1curve::{ClosedPoint, FibrePoint, Mobius, RatPoint, RationalMap, ResidueField};
use unirat::poly::Poly;

type Verdict = Result<String, String>;

fn fields() -> Vec<Field> {
    vec![
        Field::prime(3).unwrap(),
        Field::prime(5).unwrap(),
        Field::prime(7).unwrap(),
        Field::new(3, 2, Some(vec![1, 0, 1])).unwrap(),
    ]
}

fn random_poly(k: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly<Fe> {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let p = Poly::new((0..=d).map(|_| k.random(rng)).collect(), k);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_bundle(k: &Field, rng: &mut ChaCha8Rng) -> ConicBundle {
    let [a, b, c] = [(); 3].map(|_| random_poly(k, 4, rng));
    ConicBundle::new(a, b, c, k).unwrap()
}

fn random_map(k: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> RationalMap {
    loop {
        let d = rng.gen_range(1..=max_deg);
        let num = Poly::new((0..=d).map(|_| k.random(rng)).collect(), k);
        let den = Poly::new((0..=d).map(|_| k.random(rng)).collect(), k);
        if let Ok(m) = RationalMap::new(num, den, k) {
            if m.degree() >= 1 {
                return m;
            }
        }
    }
}

fn random_mobius(k: &Field, rng: &mut ChaCha8Rng) -> Mobius {
    loop {
        let [a, b, c, d] = [(); 4].map(|_| k.random(rng));
        if let Ok(m) = Mobius::new(a, b, c, d, k) {
            return m;
        }
    }
}

fn random_closed_point(k: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> ClosedPoint {
    let d = rng.gen_range(1..=max_deg);
    random_points(&[d], k, rng).pop().unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Residues on random bundles.

struct ResidueStats {
    bundles: usize,
    points: usize,
    split_mismatch: Vec<String>,
    oracle_mismatch: Vec<String>,
    odd_loci: Vec<String>,
}

fn residue_sweep(rng: &mut ChaCha8Rng) -> ResidueStats {
    let mut st = ResidueStats {
        bundles: 0,
        points: 0,
        split_mismatch: Vec::new(),
        oracle_mismatch: Vec::new(),
        odd_loci: Vec::new(),
    };
    for k in fields() {
        for _ in 0..130 {
            let b = random_bundle(&k, rng);
            st.bundles += 1;
            for p in candidate_points(&b) {
                st.points += 1;
                let r = residue_at(&b, &p);
                if r.trivial != fibre_split_direct(&b, &p) {
                    st.split_mismatch.push(format!("{b:?} at {p:?}"));
                }
                let o = residue_tame_oracle(&b, &p);
                let kp = ResidueField::new(&k, &p);
                let prod = kp.mul(&residue_raw(&b, &p), &tame_symbol_raw(&b, &p));
                if r != o || !kp.is_square(&prod) {
                    st.oracle_mismatch.push(format!("{b:?} at {p:?}"));
                }
            }
            if nonsplit_locus(&b).len() % 2 == 1 {
                st.odd_loci.push(format!("{b:?}"));
            }
        }
    }
    st
}

fn summarize(bad: &[String], ok: String) -> Verdict {
    if bad.is_empty() {
        Ok(ok)
    } else {
        Err(format!("{} failures, first: {}", bad.len(), bad[0]))
    }
}

// ---------------------------------------------------------------------------
// Base change of residues along covers.

fn base_change(rng: &mut ChaCha8Rng) -> Verdict {
    let fs = fields();
    let mut fibre_points = 0;
    for i in 0..200 {
        let k = &fs[i % fs.len()];
        let b = random_bundle(k, rng);
        let phi = random_map(k, 8, rng);
        let pb = b.pullback(&phi);
        let locus = nonsplit_locus(&b);
        for s in candidate_points(&b) {
            let rs = residue_at(&b, &s);
            for t in phi.fibre(&s) {
                fibre_points += 1;
                let nontrivial = !residue_at(&pb, &t.point).trivial;
                let predicted = t.e * t.f % 2 == 1 && !rs.trivial;
                check(nontrivial == predicted, || {
                    format!(
                        "{b:?} along {phi:?}: over {s:?} at {:?} (e={}, f={})",
                        t.point, t.e, t.f
                    )
                })?;
            }
        }
        // Nothing new appears away from the preimage of the locus.
        for t in nonsplit_locus(&pb).points() {
            check(locus.points().contains(&phi.image(&t)), || {
                format!("{b:?} along {phi:?}: {t:?} lies over a split fibre")
            })?;
        }
    }
    Ok(format!("200 pairs, {fibre_points} fibre points"))
}

// ---------------------------------------------------------------------------
// End-to-end synthesis.

/// Degrees of a random locus: some rational points, and up to two further
/// points allowed by the hypothesis.
fn locus_degrees(k: &Field, both: bool, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let rational = rng.gen_range(0..=(k.order() as usize + 1).min(6));
    let mut d = vec![1; rational];
    if both {
        if rng.gen_bool(0.6) {
            d.push(2);
        }
        if rng.gen_bool(0.6) {
            d.push(*[3, 3, 5].choose(rng).unwrap());
        }
    } else if rng.gen_bool(0.7) {
        d.push(*[2, 3, 5].choose(rng).unwrap());
    }
    d
}

fn prescribed(k: &Field, both: bool, rng: &mut ChaCha8Rng) -> ConicBundle {
    loop {
        let pts = random_points(&locus_degrees(k, both, rng), k, rng);
        if let Ok(p) = bundle_with_prescribed_locus(&pts, k, rng) {
            return p.bundle;
        }
    }
}

#[derive(Clone)]
struct Certified {
    bundle: ConicBundle,
    cover: Cover,
    anchors: Option<(RatPoint, RatPoint)>,
}

fn unirational_end_to_end(rng: &mut ChaCha8Rng, out: &mut Vec<Certified>) -> Verdict {
    let mut max_degree = 0;
    let mut total = 0;
    for p in [3, 5, 7] {
        let k = Field::prime(p).unwrap();
        for _ in 0..100 {
            let b = prescribed(&k, true, rng);
            let locus = nonsplit_locus(&b);
            check(locus.condition_star(), || {
                format!("generator broke the hypothesis: {b:?}")
            })?;
            let cover = synth_unirational_cover(&locus).map_err(|e| format!("{b:?}: {e}"))?;
            let parity = verify_parity(cover.map(), &locus.points());
            let vanish = verify_pullback_vanishing(&b, cover.map());
            check(parity.passed && vanish.passed, || {
                format!("{b:?}: parity {} vanishing {}", parity.passed, vanish.passed)
            })?;
            max_degree = max_degree.max(cover.degree());
            total += 1;
            out.push(Certified {
                bundle: b,
                cover,
                anchors: None,
            });
        }
    }
    Ok(format!("{total} loci, largest cover degree {max_degree}"))
}

fn requiv_end_to_end(rng: &mut ChaCha8Rng, out: &mut Vec<Certified>) -> Verdict {
    let mut max_degree = 0;
    let mut total = 0;
    let mut exhausted = Vec::new();
    let mut failures = Vec::new();
    for p in [3, 5] {
        let k = Field::prime(p).unwrap();
        for _ in 0..50 {
            let b = prescribed(&k, false, rng);
            let locus = nonsplit_locus(&b);
            check(locus.condition_star_star(), || {
                format!("generator broke the hypothesis: {b:?}")
            })?;
            let rat = RatPoint::all(&k);
            let mut pick = rat.choose_multiple(rng, 2);
            let (s0, s1) = (*pick.next().unwrap(), *pick.next().unwrap());
            total += 1;
            let cover = match synth_requiv_cover(&locus, s0, s1) {
                Ok(c) => c,
                Err(SynthError::SearchExhausted(e)) => {
                    exhausted.push(format!("{b:?} with s0={s0:?}, s1={s1:?}: {e}"));
                    continue;
                }
                Err(e) => {
                    failures.push(format!("{b:?} with s0={s0:?}, s1={s1:?}: {e}"));
                    continue;
                }
            };
            let checks = [
                verify_parity(cover.map(), &locus.points()),
                verify_pullback_vanishing(&b, cover.map()),
                verify_requiv(cover.map(), s0, s1),
            ];
            if let Some(c) = checks.iter().find(|c| !c.passed) {
                failures.push(format!("{b:?} with s0={s0:?}, s1={s1:?}: {} failed", c.name));
                continue;
            }
            max_degree = max_degree.max(cover.degree());
            out.push(Certified {
                bundle: b,
                cover,
                anchors: Some((s0, s1)),
            });
        }
    }
    for e in &exhausted {
        println!("    degree-2 fallback search exhausted: {e}");
    }
    if !failures.is_empty() || !exhausted.is_empty() {
        return Err(format!(
            "{} failures, {} fallback exhaustions of {total}; first: {}",
            failures.len(),
            exhausted.len(),
            failures.first().or(exhausted.first()).unwrap()
        ));
    }
    Ok(format!("{total} loci, largest cover degree {max_degree}"))
}

// ---------------------------------------------------------------------------
// Sections found by the bounded oracle.

fn is_section(b: &ConicBundle, x: &Poly<Fe>, y: &Poly<Fe>, z: &Poly<Fe>) -> bool {
    let k = b.field();
    let sq = |p: &Poly<Fe>| p.mul(p, k);
    let lhs = b
        .a()
        .mul(&sq(x), k)
        .add(&b.b().mul(&sq(y), k), k)
        .add(&b.c().mul(&sq(z), k), k);
    lhs.is_zero() && !(x.is_zero() && y.is_zero() && z.is_zero())
}

fn sections(rng: &mut ChaCha8Rng) -> Verdict {
    let k = Field::prime(3).unwrap();
    let t = Poly::x(&k);
    let base = ConicBundle::new(
        t.clone(),
        Poly::constant(k.neg(k.one()), &k),
        Poly::constant(k.neg(k.one()), &k),
        &k,
    )
    .unwrap();
    let pb = base.pullback_unreduced(&RationalMap::power(2, k.one(), &k));
    check(pb.a() == &t.mul(&t, &k), || format!("pullback is {pb:?}"))?;
    match section_search_oracle(&pb, 1, &SectionLimits::default()) {
        SectionOutcome::Found { x, y, z } => {
            check(x == Poly::one(&k) && y == t && z.is_zero(), || {
                format!("found ({x:?}, {y:?}, {z:?})")
            })?;
            check(is_section(&pb, &x, &y, &z), || "(1, t, 0) fails substitution".into())?;
        }
        o => return Err(format!("no section on (t², −1, −1): {o:?}")),
    }

    let mut seen: Vec<ConicBundle> = Vec::new();
    let mut not_found = Vec::new();
    let mut degrees: HashMap<usize, usize> = HashMap::new();
    // Pullbacks along synthesized covers, and along random low-degree maps
    // that happen to kill the locus.
    let mut attempts = 0;
    while seen.len() < 20 && attempts < 20_000 {
        attempts += 1;
        let (b, phi) = if attempts % 2 == 0 {
            let b = prescribed(&k, true, rng);
            let Ok(cover) = synth_unirational_cover(&nonsplit_locus(&b)) else {
                continue;
            };
            (b, cover.map().clone())
        } else {
            let [a, bb, c] = [(); 3].map(|_| random_poly(&k, 2, rng));
            let b = ConicBundle::new(a, bb, c, &k).unwrap();
            let phi = random_map(&k, 3, rng);
            if !nonsplit_locus(&b.pullback(&phi)).is_empty() {
                continue;
            }
            (b, phi)
        };
        if nonsplit_locus(&b).is_empty() {
            continue;
        }
        let pb = b.pullback(&phi);
        if pb.coeffs().iter().any(|c| c.deg() > 6) || seen.contains(&pb) {
            continue;
        }
        check(nonsplit_locus(&pb).is_empty(), || {
            format!("pullback of {b:?} has a non-split fibre")
        })?;
        let found = (0..=3).find_map(|d| match section_search_oracle(&pb, d, &SectionLimits::default()) {
            SectionOutcome::Found { x, y, z } => Some((d, x, y, z)),
            _ => None,
        });
        match found {
            Some((d, x, y, z)) => {
                check(is_section(&pb, &x, &y, &z), || {
                    format!("oracle returned a non-section on {pb:?}")
                })?;
                *degrees.entry(d).or_default() += 1;
            }
            None => not_found.push(format!("{pb:?}")),
        }
        seen.push(pb);
    }
    check(seen.len() >= 10, || {
        format!("only {} micro instances generated", seen.len())
    })?;
    check(not_found.is_empty(), || {
        format!(
            "{} of {} without a section of degree ≤ 3, first {}",
            not_found.len(),
            seen.len(),
            not_found[0]
        )
    })?;
    let mut by_deg: Vec<_> = degrees.into_iter().collect();
    by_deg.sort();
    Ok(format!(
        "(1, t, 0) found; {} micro instances, section degrees {by_deg:?}",
        seen.len()
    ))
}

// ---------------------------------------------------------------------------
// Double covers and twists, against a discriminant oracle.

/// Fibre type of a degree-2 map over s from the discriminant of
/// N(T) − t·D(T) as a quadratic in T, read in the residue field at s.
fn discriminant_type(map: &RationalMap, s: &ClosedPoint) -> FibreType {
    let k = map.field();
    let (n, d) = (map.num(), map.den());
    // A(t)T² + B(t)T + C(t) with A = n₂ − d₂t, and so on.
    let coef = |i: usize| Poly::new(vec![n.coeff(i, k), k.neg(d.coeff(i, k))], k);
    let (a, b, c) = (coef(2), coef(1), coef(0));
    let disc = b.mul(&b, k).sub(&a.mul(&c, k).scale(k.from_int(4), k), k);
    let (square, zero) = match s.poly() {
        Some(_) => {
            let kp = ResidueField::new(k, s);
            let v = kp.reduce(&disc);
            (!v.is_zero() && kp.is_square(&v), v.is_zero())
        }
        // At ∞ the quadratic form's discriminant is the t² coefficient.
        None => {
            let v = disc.coeff(2, k);
            (!k.is_zero(v) && k.is_square(v), k.is_zero(v))
        }
    };
    match (zero, square) {
        (true, _) => FibreType::Ramified,
        (false, true) => FibreType::Split,
        (false, false) => FibreType::Inert,
    }
}

fn twist_table(rng: &mut ChaCha8Rng) -> Verdict {
    let mut compared = 0;
    let mut flips = 0;
    for p in [3, 5] {
        let k = Field::prime(p).unwrap();
        let points: Vec<ClosedPoint> = (1..=4).flat_map(|d| ClosedPoint::of_degree(d, &k)).collect();
        for _ in 0..20 {
            let psi = loop {
                let m = random_map(&k, 2, rng);
                if m.degree() == 2 {
                    break m;
                }
            };
            let cover = Cover::from_map(psi.clone());
            let twisted = twist_cover(&cover).map_err(|e| format!("{psi:?}: {e}"))?;
            for s in &points {
                let (a, b) = (discriminant_type(&psi, s), discriminant_type(twisted.map(), s));
                check(fibre_type(&psi, s) == a && fibre_type(twisted.map(), s) == b, || {
                    format!("fibre() disagrees with the discriminant for {psi:?} over {s:?}")
                })?;
                let ok = match (a, s.degree() % 2) {
                    (FibreType::Ramified, _) => b == FibreType::Ramified,
                    (_, 1) => b != a && b != FibreType::Ramified,
                    _ => b == a,
                };
                check(ok, || format!("{psi:?} over {s:?}: {a:?} became {b:?}"))?;
                compared += 1;
                flips += (a != b) as usize;
            }
        }
    }
    Ok(format!("40 covers, {compared} fibres, {flips} flips"))
}

// ---------------------------------------------------------------------------
// Degree reduction for even-degree points.

fn find<'a>(fibre: &'a [FibrePoint], p: &ClosedPoint) -> Option<&'a FibrePoint> {
    fibre.iter().find(|t| &t.point == p)
}

fn descent(rng: &mut ChaCha8Rng) -> Verdict {
    let mut n = 0;
    for p in [3, 5] {
        let k = Field::prime(p).unwrap();
        for d in 1..=3 {
            for _ in 0..6 {
                let m = random_points(&[2 * d], &k, rng).pop().unwrap();
                let c = reduce_degree_cover(&m, &k).map_err(|e| format!("{m:?}: {e}"))?;
                let phi = c.map();
                let image = phi.image(&m);
                check(phi.degree() == d && image.degree() == 2, || {
                    format!("{m:?}: degree {} with image {image:?}", phi.degree())
                })?;
                let f = phi.fibre(&image);
                let t = find(&f, &m).ok_or_else(|| format!("{m:?} missing from its own fibre"))?;
                check(t.e == 1 && t.f == d, || format!("{m:?}: e={}, f={}", t.e, t.f))?;
                n += 1;
            }
        }
        for p2 in ClosedPoint::of_degree(2, &k) {
            let c = quadruple_point_cover(&p2, &k).map_err(|e| format!("{p2:?}: {e}"))?;
            let f = c.map().fibre(&p2);
            check(
                f.len() == 1 && f[0].e == 1 && f[0].f == 2 && f[0].point.degree() == 4,
                || format!("fibre over {p2:?} is {f:?}"),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

// ---------------------------------------------------------------------------
// Structural invariants.

fn fibre_sum(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let fs = fields();
    for i in 0..200 {
        let k = &fs[i % fs.len()];
        let phi = random_map(k, 8, rng);
        let s = random_closed_point(k, 3, rng);
        let f = phi.fibre(&s);
        let sum: usize = f.iter().map(|t| t.e * t.f).sum();
        check(sum == phi.degree(), || format!("{phi:?} over {s:?}: Σef = {sum}"))?;
        for t in &f {
            check(t.point.degree() == t.f * s.degree() && phi.image(&t.point) == s, || {
                format!("{phi:?} over {s:?}: bad fibre point {t:?}")
            })?;
        }
    }
    Ok(200)
}

fn towers(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let fs = fields();
    for i in 0..100 {
        let k = &fs[i % fs.len()];
        let (psi, theta) = (random_map(k, 3, rng), random_map(k, 3, rng));
        let phi = psi.compose(&theta);
        check(phi.degree() == psi.degree() * theta.degree(), || {
            format!("{psi:?} ∘ {theta:?}")
        })?;
        let s = random_closed_point(k, 2, rng);
        let upper = psi.fibre(&s);
        for t in phi.fibre(&s) {
            let u = theta.image(&t.point);
            let over_s = find(&upper, &u).ok_or_else(|| format!("{u:?} not over {s:?}"))?;
            let over_u = theta.fibre(&u);
            let at_t = find(&over_u, &t.point).ok_or_else(|| format!("{t:?} not over {u:?}"))?;
            check(t.e == over_s.e * at_t.e && t.f == over_s.f * at_t.f, || {
                format!("{psi:?} ∘ {theta:?} at {t:?}")
            })?;
        }
    }
    Ok(100)
}

fn mobius_invariance(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let fs = fields();
    let sorted = |mut v: Vec<(ClosedPoint, usize, usize)>| {
        v.sort();
        v
    };
    let triples = |f: Vec<FibrePoint>| sorted(f.into_iter().map(|t| (t.point, t.e, t.f)).collect());
    for i in 0..100 {
        let k = &fs[i % fs.len()];
        let phi = random_map(k, 6, rng);
        let mu = random_mobius(k, rng);
        let s = random_closed_point(k, 3, rng);
        let base = triples(phi.fibre(&s));
        // Precomposition moves the fibre by μ⁻¹.
        let inv = mu.inverse(k);
        let moved = sorted(base.iter().map(|(p, e, f)| (inv.apply_closed(p, k), *e, *f)).collect());
        check(triples(phi.compose(&mu.to_map(k)).fibre(&s)) == moved, || {
            format!("{phi:?} ∘ {mu:?} over {s:?}")
        })?;
        // Postcomposition moves the base point.
        let post = mu.to_map(k).compose(&phi);
        check(triples(post.fibre(&mu.apply_closed(&s, k))) == base, || {
            format!("{mu:?} ∘ {phi:?} over {s:?}")
        })?;
    }
    Ok(100)
}

fn round_trip(certs: &[Certified]) -> Result<usize, String> {
    for c in certs {
        let report = verify_cover(&c.bundle, &c.cover, c.anchors, 1);
        let text = serde_json::to_string(&report.to_json()).map_err(|e| e.to_string())?;
        let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let bundle = json::parse_bundle(&v["bundle"]).map_err(|e| e.to_string())?;
        let k = bundle.field().clone();
        let cert = &v["certificate"];
        let cover = json::parse_cover(&k, &cert["cover"], "$.certificate.cover").map_err(|e| e.to_string())?;
        let anchors = match (cert.get("s0"), cert.get("s1")) {
            (Some(a), Some(b)) => Some((
                json::parse_rational_point(&k, a, "s0").map_err(|e| e.to_string())?,
                json::parse_rational_point(&k, b, "s1").map_err(|e| e.to_string())?,
            )),
            _ => None,
        };
        check(
            bundle == c.bundle && cover.map() == c.cover.map() && anchors == c.anchors,
            || format!("round trip changed {:?}", c.bundle),
        )?;
        let again = verify_cover(&bundle, &cover, anchors, 1);
        check(
            again.checks.iter().all(|x| x.passed) && again.outcome.exit_code() == 0,
            || format!("re-verification failed for {:?}", c.bundle),
        )?;
    }
    Ok(certs.len())
}

const KINDS: [StepKind; 5] = [
    StepKind::Mobius,
    StepKind::Squaring,
    StepKind::Twist,
    StepKind::Descent,
    StepKind::Composition,
];

/// Every single-entry mutation of every chain: the map of a step is shifted
/// by t ↦ t + 1, its kind is changed, or its first numeric parameter is
/// bumped.
fn mutations(certs: &[Certified]) -> Result<usize, String> {
    let mut n = 0;
    for c in certs {
        let k = c.bundle.field();
        let shift = Mobius::affine(k.one(), k.one(), k).unwrap().to_map(k);
        let detected = |m: &Cover| {
            m.map() != c.cover.map() || !verify_chain(m).passed || {
                let r = verify_cover(&c.bundle, m, c.anchors, 1);
                !r.checks.iter().all(|x| x.passed)
            }
        };
        for i in 0..c.cover.chain().len() {
            let mut variants = Vec::new();
            let mut m = c.cover.clone();
            m.chain_mut()[i].map = shift.compose(&m.chain()[i].map);
            variants.push(("map", m));
            for kind in KINDS {
                if kind != c.cover.chain()[i].kind {
                    let mut m = c.cover.clone();
                    m.chain_mut()[i].kind = kind;
                    variants.push(("kind", m));
                }
            }
            let mut m = c.cover.clone();
            if let Some(obj) = m.chain_mut()[i].params.as_object_mut() {
                if let Some(v) = obj.values_mut().find(|v| v.is_u64()) {
                    *v = Value::from((v.as_u64().unwrap() + 1) % k.p());
                    variants.push(("params", m));
                }
            }
            for (what, m) in variants {
                check(detected(&m), || {
                    format!("{what} mutation of step {i} undetected for {:?}", c.bundle)
                })?;
                n += 1;
            }
        }
        // Changing the map itself breaks the chain.
        let m = Cover::from_parts(shift.compose(c.cover.map()), c.cover.chain().to_vec());
        check(!verify_chain(&m).passed, || {
            format!("map mutation undetected for {:?}", c.bundle)
        })?;
        n += 1;
    }
    Ok(n)
}

fn invariants(rng: &mut ChaCha8Rng, certs: &[Certified]) -> Verdict {
    let sums = fibre_sum(rng)?;
    let tw = towers(rng)?;
    let mob = mobius_invariance(rng)?;
    for c in certs {
        let v = verify_chain(&c.cover);
        check(v.passed, || {
            format!("chain of {:?} does not verify: {}", c.bundle, v.detail)
        })?;
    }
    let sample: Vec<Certified> = certs.iter().step_by(4).cloned().collect();
    let rt = round_trip(&sample)?;
    let mu = mutations(&sample)?;
    // A cover built by hand, so the mutation check sees every step kind.
    let k = Field::prime(5).unwrap();
    let sq = double_cover(RatPoint::Finite(k.one()), RatPoint::Infinity, Twist::Trivial, &k).unwrap();
    let hand = twist_cover(&sq)
        .unwrap()
        .then(&reduce_degree_cover(&random_points(&[4], &k, rng)[0], &k).unwrap());
    let b = ConicBundle::new(Poly::one(&k), Poly::one(&k), Poly::constant(k.neg(k.one()), &k), &k).unwrap();
    let hand = Certified {
        bundle: b,
        cover: hand,
        anchors: None,
    };
    check(verify_chain(&hand.cover).passed, || {
        "hand-built chain does not verify".into()
    })?;
    let mh = mutations(std::slice::from_ref(&hand))?;
    Ok(format!(
        "{sums} fibre sums, {tw} towers, {mob} Möbius checks, {} chains, {rt} round trips, {} mutations caught",
        certs.len(),
        mu + mh
    ))
}

// ---------------------------------------------------------------------------

struct Runner {
    failed: usize,
}

impl Runner {
    fn report(&mut self, n: usize, name: &str, limit: Duration, elapsed: Duration, v: Verdict) {
        let v = match v {
            Ok(s) if elapsed > limit => Err(format!("{s}; over the {} s limit", limit.as_secs())),
            v => v,
        };
        let (tag, detail) = match v {
            Ok(s) => ("PASS", s),
            Err(s) => {
                self.failed += 1;
                ("FAIL", s)
            }
        };
        println!(
            "criterion {n:>2} {name}: {tag} ({detail}; {:.1} s)",
            elapsed.as_secs_f64()
        );
    }

    fn run(&mut self, n: usize, name: &str, limit: Duration, f: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let v = f();
        self.report(n, name, limit, start.elapsed(), v);
    }
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut r = Runner { failed: 0 };
    let min = |m: u64| Duration::from_secs(60 * m);

    let start = Instant::now();
    let st = residue_sweep(&mut rng);
    let elapsed = start.elapsed();
    let ok = format!("{} bundles, {} points", st.bundles, st.points);
    r.report(
        1,
        "residue triviality matches fibre splitting",
        Duration::from_secs(60),
        elapsed,
        summarize(&st.split_mismatch, ok.clone()),
    );
    r.report(
        2,
        "residues match the tame-symbol oracle",
        Duration::from_secs(60),
        elapsed,
        summarize(&st.oracle_mismatch, ok.clone()),
    );
    r.report(
        3,
        "non-split loci have even size",
        Duration::from_secs(60),
        elapsed,
        summarize(&st.odd_loci, ok),
    );

    r.run(4, "pullback residues follow the parity of e·f", min(2), || {
        base_change(&mut rng)
    });

    let mut certs = Vec::new();
    r.run(5, "unirational covers end-to-end", min(10), || {
        unirational_end_to_end(&mut rng, &mut certs)
    });
    r.run(6, "R-equivalence covers end-to-end", min(10), || {
        requiv_end_to_end(&mut rng, &mut certs)
    });
    r.run(7, "sections on micro pullbacks", min(5), || sections(&mut rng));
    r.run(8, "twisting flips odd and keeps even fibres", min(5), || {
        twist_table(&mut rng)
    });
    r.run(9, "even-degree points descend to degree 2", min(5), || {
        descent(&mut rng)
    });
    r.run(10, "structural invariants", min(3), || invariants(&mut rng, &certs));

    if r.failed == 0 {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", r.failed);
        ExitCode::FAILURE
    }
}
