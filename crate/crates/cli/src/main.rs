use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use unirat::certify::{
    analyze, bundle_with_prescribed_locus, certify_requiv, certify_unirational, random_points, section_search_oracle,
    verify_cover, Check, Outcome, Report, SectionLimits, SectionOutcome,
};
use unirat::conicbundle::ConicBundle;
use unirat::gf::Field;
use unirat::json::{self as uj, InputError};
use unirat::p1curve::RatPoint;

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "unirat",
    version,
    about = "Non-split loci and unirationality certificates for conic bundles over P¹ over F_q"
)]
struct Cli {
    /// Seed for randomized factorization and generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the full JSON report instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Wall-clock budget for the section oracle and the self-test.
    #[arg(long, global = true, value_name = "MS")]
    budget_ms: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Non-split locus, δ and the two hypotheses.
    Analyze { file: PathBuf },
    /// Synthesize and verify a cover after which the bundle has a section.
    CertifyUnirational { file: PathBuf },
    /// As certify-unirational, with rational points over s0 and s1.
    CertifyRequiv {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s0: String,
        #[arg(long, allow_hyphen_values = true)]
        s1: String,
    },
    /// Re-verify a cover, given alone, as a certificate, or as a report.
    Verify {
        file: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Search for a section of degree at most N.
    OracleSection {
        file: PathBuf,
        #[arg(long)]
        max_deg: usize,
    },
    /// Run a seeded battery of certify and re-verify round trips.
    Selftest,
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_bundle(path: &Path) -> Result<ConicBundle, String> {
    let v = read_json(path)?;
    uj::parse_bundle(&v).map_err(|e| format!("{}: {e}", path.display()))
}

/// A rational point given as "inf", an integer, or a JSON element.
fn parse_point_arg(k: &Field, s: &str, name: &str) -> Result<RatPoint, InputError> {
    let v = serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()));
    uj::parse_rational_point(k, &v, name)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summary(r: &Report) -> String {
    let mut out = Vec::new();
    out.push(format!("field: {}", r.field));
    let locus: Vec<String> = r
        .locus
        .as_array()
        .into_iter()
        .flatten()
        .filter(|p| p["trivial"] == false)
        .map(|p| format!("{} (degree {})", p["point"], p["degree"]))
        .collect();
    out.push(format!(
        "non-split locus: {}",
        if locus.is_empty() {
            "empty".to_string()
        } else {
            locus.join(", ")
        }
    ));
    out.push(format!(
        "delta: {}, star: {}, star_star: {}",
        r.delta,
        yes(r.star),
        yes(r.star_star)
    ));
    if let Some(c) = &r.certificate {
        out.push(format!(
            "certificate: cover of degree {} with {} steps",
            c["degree"],
            c["cover"]["chain"].as_array().map_or(0, Vec::len)
        ));
        out.push(format!("cover: ({}) / ({})", c["cover"]["num"], c["cover"]["den"]));
    }
    for c in &r.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        match c.detail.get("outcome") {
            Some(o) => out.push(format!(
                "check {}: {status} ({})",
                c.name,
                o.as_str().unwrap_or_default()
            )),
            None => out.push(format!("check {}: {status}", c.name)),
        }
        if !c.passed {
            out.push(format!("  {}", c.detail));
        }
    }
    let outcome = match r.outcome {
        Outcome::Success => "success",
        Outcome::HypothesisNotMet => "hypothesis not met",
        Outcome::VerificationFailed => "verification failed",
    };
    out.push(format!("outcome: {outcome}"));
    out.join("\n")
}

fn emit(r: &Report, as_json: bool) -> u8 {
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&r.to_json()).expect("reports serialize")
        );
    } else {
        println!("{}", summary(r));
    }
    r.outcome.exit_code() as u8
}

/// The cover inside a report, a certificate, or a bare cover, with the
/// anchors when the certificate records them.
fn cover_value(v: &Value) -> (&Value, &Value) {
    let cert = match v.get("certificate") {
        Some(c) if !c.is_null() => c,
        _ => v,
    };
    match cert.get("cover") {
        Some(c) => (c, cert),
        None => (cert, cert),
    }
}

fn oracle(bundle: &ConicBundle, max_deg: usize, seed: u64, budget: Option<Duration>) -> Report {
    let mut r = analyze(bundle, seed);
    let k = bundle.field();
    let limits = SectionLimits {
        deadline: budget.map(|b| Instant::now() + b),
        ..SectionLimits::default()
    };
    let start = Instant::now();
    let outcome = section_search_oracle(bundle, max_deg, &limits);
    r.timings
        .insert("oracle_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    let empty = r.delta == 0;
    let (passed, detail) = match outcome {
        SectionOutcome::Found { x, y, z } => (
            empty,
            json!({ "outcome": "found", "max_deg": max_deg, "x": uj::poly(k, &x), "y": uj::poly(k, &y), "z": uj::poly(k, &z) }),
        ),
        SectionOutcome::NoneExists => (
            true,
            json!({ "outcome": "none_exists", "max_deg": max_deg, "reason": "the non-split locus is nonempty" }),
        ),
        SectionOutcome::Exhausted => (
            false,
            json!({ "outcome": "exhausted", "max_deg": max_deg, "reason": "no section of degree ≤ max_deg; a higher degree may be needed" }),
        ),
        SectionOutcome::BudgetExceeded { examined } => (
            false,
            json!({ "outcome": "budget_exceeded", "max_deg": max_deg, "examined": examined }),
        ),
    };
    r.checks.push(Check {
        name: "section",
        passed,
        detail,
    });
    r.outcome = if passed {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    };
    r
}

fn selftest(seed: u64, budget: Option<Duration>, as_json: bool) -> u8 {
    let start = Instant::now();
    let deadline = budget.map(|b| start + b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let (mut run, mut complete) = (0, true);
    'outer: for p in [3, 5, 7] {
        let k = Field::prime(p).expect("prime");
        for i in 0..20 {
            if deadline.is_some_and(|d| Instant::now() > d) {
                complete = false;
                break 'outer;
            }
            let extra: [&[usize]; 4] = [&[], &[2], &[3], &[2, 3]];
            let mut degrees = vec![1; i % 4];
            degrees.extend(extra[(i / 4) % 4]);
            let pts = random_points(&degrees, &k, &mut rng);
            let Ok(pre) = bundle_with_prescribed_locus(&pts, &k, &mut rng) else {
                continue;
            };
            run += 1;
            let (report, cert) = certify_unirational(&pre.bundle, seed);
            let again = cert.map(|c| verify_cover(&c.bundle, &c.cover, None, seed));
            match again {
                Some(a) if a.outcome == Outcome::Success && report.outcome == Outcome::Success => {}
                _ => failures.push(json!({ "bundle": uj::bundle(&pre.bundle), "report": report.to_json() })),
            }
        }
    }
    let ok = failures.is_empty() && complete;
    let out = json!({
        "seed": seed,
        "instances": run,
        "completed": complete,
        "failures": failures,
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    });
    if as_json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
    } else {
        println!(
            "selftest: {run} instances, {} failures{}",
            out["failures"].as_array().map_or(0, Vec::len),
            if complete { "" } else { ", stopped by the budget" }
        );
    }
    if ok {
        0
    } else {
        2
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let budget = cli.budget_ms.map(Duration::from_millis);
    let code = match cli.command {
        Command::Analyze { file } => emit(&analyze(&read_bundle(&file)?, cli.seed), cli.json),
        Command::CertifyUnirational { file } => emit(&certify_unirational(&read_bundle(&file)?, cli.seed).0, cli.json),
        Command::CertifyRequiv { file, s0, s1 } => {
            let b = read_bundle(&file)?;
            let s0 = parse_point_arg(b.field(), &s0, "--s0").map_err(|e| e.to_string())?;
            let s1 = parse_point_arg(b.field(), &s1, "--s1").map_err(|e| e.to_string())?;
            if s0 == s1 {
                return Err("--s0 and --s1 must differ".into());
            }
            emit(&certify_requiv(&b, s0, s1, cli.seed).0, cli.json)
        }
        Command::Verify { file, cover } => {
            let b = read_bundle(&file)?;
            let v = read_json(&cover)?;
            let k = b.field();
            let (cv, cert) = cover_value(&v);
            let c = uj::parse_cover(k, cv, "$.cover").map_err(|e| format!("{}: {e}", cover.display()))?;
            let anchors = match (cert.get("s0"), cert.get("s1")) {
                (Some(a), Some(b)) => Some((
                    uj::parse_rational_point(k, a, "$.s0").map_err(|e| e.to_string())?,
                    uj::parse_rational_point(k, b, "$.s1").map_err(|e| e.to_string())?,
                )),
                _ => None,
            };
            emit(&verify_cover(&b, &c, anchors, cli.seed), cli.json)
        }
        Command::OracleSection { file, max_deg } => {
            emit(&oracle(&read_bundle(&file)?, max_deg, cli.seed, budget), cli.json)
        }
        Command::Selftest => selftest(cli.seed, budget, cli.json),
    };
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
