use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::verify::{verify_chain, verify_parity, verify_pullback_vanishing, verify_requiv, Check};
use crate::conicbundle::{nonsplit_locus, residue_scan, ConicBundle, NonSplitLocus};
use crate::coversynth::{synth_requiv_cover, synth_unirational_cover, Cover, SynthError};
use crate::json;
use crate::p1curve::RatPoint;

/// What a run established, and the matching process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Outcome {
    #[default]
    Success,
    HypothesisNotMet,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::HypothesisNotMet => 1,
            Outcome::VerificationFailed => 2,
        }
    }
}

const SCOPE: &str = "Verified: 2 | e·f over every non-split point, and the pulled-back bundle has no \
non-split fibre, hence a section. The section itself is exhibited only by the bounded section oracle.";

/// A cover together with the checks it passed.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub bundle: ConicBundle,
    pub locus: NonSplitLocus,
    pub cover: Cover,
    pub checks: Vec<Check>,
    pub anchors: Option<(RatPoint, RatPoint)>,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        let k = self.bundle.field();
        let mut v = json!({
            "scope": SCOPE,
            "degree": self.cover.degree(),
            "cover": json::cover(&self.cover),
        });
        if let Some((s0, s1)) = self.anchors {
            v["s0"] = json::rational_point(k, s0);
            v["s1"] = json::rational_point(k, s1);
        }
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub field: Value,
    pub bundle: Value,
    pub locus: Value,
    pub delta: usize,
    pub star: bool,
    pub star_star: bool,
    pub certificate: Option<Value>,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub timings: Map<String, Value>,
    #[serde(skip)]
    pub outcome: Outcome,
}

impl Report {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    fn time(&mut self, name: &str, start: Instant) {
        self.timings
            .insert(format!("{name}_ms"), json!(start.elapsed().as_secs_f64() * 1e3));
    }

    fn fail(&mut self, name: &'static str, e: &SynthError) {
        self.outcome = match e {
            SynthError::HypothesisNotMet(_) => Outcome::HypothesisNotMet,
            _ => Outcome::VerificationFailed,
        };
        self.checks.push(Check {
            name,
            passed: false,
            detail: json!(e.to_string()),
        });
    }
}

/// Rebuilds the bundle over the same field carrying the run's seed.
fn seeded(bundle: &ConicBundle, seed: u64) -> ConicBundle {
    let k = bundle.field().with_seed(seed);
    ConicBundle::new(bundle.a().clone(), bundle.b().clone(), bundle.c().clone(), &k).expect("nonzero")
}

fn locus_json(bundle: &ConicBundle) -> Value {
    let k = bundle.field();
    Value::Array(
        residue_scan(bundle)
            .iter()
            .map(|r| {
                json!({
                    "point": json::point(k, &r.point),
                    "degree": r.point.degree(),
                    "residue_representative": json::poly(k, &r.representative),
                    "trivial": r.trivial,
                })
            })
            .collect(),
    )
}

fn base_report(bundle: &ConicBundle, seed: u64) -> (Report, NonSplitLocus) {
    let start = Instant::now();
    let l = nonsplit_locus(bundle);
    let mut r = Report {
        field: json::field(bundle.field()),
        bundle: json::bundle(bundle),
        locus: locus_json(bundle),
        delta: l.delta(),
        star: l.condition_star(),
        star_star: l.condition_star_star(),
        certificate: None,
        checks: Vec::new(),
        seed,
        timings: Map::new(),
        outcome: Outcome::Success,
    };
    r.time("locus", start);
    (r, l)
}

/// Locus, δ and the two hypothesis flags. Fails with
/// [`Outcome::HypothesisNotMet`] when (★) does not hold.
pub fn analyze(bundle: &ConicBundle, seed: u64) -> Report {
    let bundle = seeded(bundle, seed);
    let (mut r, _) = base_report(&bundle, seed);
    if !r.star {
        r.outcome = Outcome::HypothesisNotMet;
    }
    r
}

fn run_checks(
    bundle: &ConicBundle,
    locus: &NonSplitLocus,
    cover: &Cover,
    anchors: Option<(RatPoint, RatPoint)>,
) -> Vec<Check> {
    let mut checks = vec![
        verify_parity(cover.map(), &locus.points()),
        verify_pullback_vanishing(bundle, cover.map()),
        verify_chain(cover),
    ];
    if let Some((s0, s1)) = anchors {
        checks.push(verify_requiv(cover.map(), s0, s1));
    }
    checks
}

fn certify(
    bundle: &ConicBundle,
    seed: u64,
    anchors: Option<(RatPoint, RatPoint)>,
    synth: impl FnOnce(&NonSplitLocus) -> Result<Cover, SynthError>,
) -> (Report, Option<Certificate>) {
    let bundle = seeded(bundle, seed);
    let (mut r, locus) = base_report(&bundle, seed);
    let start = Instant::now();
    let cover = synth(&locus);
    r.time("synthesis", start);
    let cover = match cover {
        Ok(c) => c,
        Err(e) => {
            r.fail("synthesis", &e);
            return (r, None);
        }
    };
    let start = Instant::now();
    let checks = run_checks(&bundle, &locus, &cover, anchors);
    r.time("verification", start);
    r.checks = checks.clone();
    if checks.iter().all(|c| c.passed) {
        let cert = Certificate {
            bundle,
            locus,
            cover,
            checks,
            anchors,
        };
        r.certificate = Some(cert.to_json());
        (r, Some(cert))
    } else {
        r.outcome = Outcome::VerificationFailed;
        (r, None)
    }
}

pub fn certify_unirational(bundle: &ConicBundle, seed: u64) -> (Report, Option<Certificate>) {
    certify(bundle, seed, None, synth_unirational_cover)
}

pub fn certify_requiv(bundle: &ConicBundle, s0: RatPoint, s1: RatPoint, seed: u64) -> (Report, Option<Certificate>) {
    certify(bundle, seed, Some((s0, s1)), |l| synth_requiv_cover(l, s0, s1))
}

/// Re-runs every check on a bundle and a cover given from outside, with the
/// rational-fibre check when s0 and s1 are given.
pub fn verify_cover(bundle: &ConicBundle, cover: &Cover, anchors: Option<(RatPoint, RatPoint)>, seed: u64) -> Report {
    let bundle = seeded(bundle, seed);
    let (mut r, locus) = base_report(&bundle, seed);
    let start = Instant::now();
    r.checks = run_checks(&bundle, &locus, cover, anchors);
    r.time("verification", start);
    if r.checks.iter().all(|c| c.passed) {
        r.certificate = Some(
            Certificate {
                bundle,
                locus,
                cover: cover.clone(),
                checks: r.checks.clone(),
                anchors,
            }
            .to_json(),
        );
    } else {
        r.outcome = Outcome::VerificationFailed;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Field, FiniteField};

    #[test]
    fn report_shape() {
        let k = Field::prime(3).unwrap();
        let b = ConicBundle::from_ints(&[0, 1], &[-1], &[-1], &k).unwrap();
        let r = analyze(&b, 7);
        let v = r.to_json();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        assert_eq!(
            keys,
            [
                "field",
                "bundle",
                "locus",
                "delta",
                "star",
                "star_star",
                "certificate",
                "checks",
                "seed",
                "timings"
            ]
        );
        assert_eq!(v["delta"], 2);
        assert_eq!(r.outcome, Outcome::Success);

        let (r, cert) = certify_unirational(&b, 7);
        assert_eq!(r.outcome, Outcome::Success);
        let cert = cert.unwrap();
        assert_eq!(cert.cover.map(), &crate::p1curve::RationalMap::power(2, k.one(), &k));
        assert!(r.checks.iter().all(|c| c.passed));
    }
}
