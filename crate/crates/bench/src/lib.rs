//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unirat::certify::{bundle_with_prescribed_locus, random_points};
use unirat::conicbundle::ConicBundle;
use unirat::gf::{Fe, Field, FiniteField};
use unirat::p1curve::RationalMap;
use unirat::poly::Poly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly(k: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly<Fe> {
    loop {
        let p = Poly::new((0..=deg).map(|_| k.random(rng)).collect(), k);
        if p.deg() == deg {
            return p;
        }
    }
}

pub fn random_bundle(k: &Field, deg: usize, rng: &mut ChaCha8Rng) -> ConicBundle {
    let [a, b, c] = [(); 3].map(|_| random_poly(k, deg, rng));
    ConicBundle::new(a, b, c, k).expect("nonzero")
}

pub fn random_map(k: &Field, deg: usize, rng: &mut ChaCha8Rng) -> RationalMap {
    loop {
        let num = random_poly(k, deg, rng);
        let den = random_poly(k, rng.gen_range(0..=deg), rng);
        if let Ok(m) = RationalMap::new(num, den, k) {
            if m.degree() == deg {
                return m;
            }
        }
    }
}

/// A bundle whose non-split locus has the given point degrees.
pub fn prescribed(k: &Field, degrees: &[usize], rng: &mut ChaCha8Rng) -> ConicBundle {
    loop {
        let pts = random_points(degrees, k, rng);
        if let Ok(p) = bundle_with_prescribed_locus(&pts, k, rng) {
            return p.bundle;
        }
    }
}
