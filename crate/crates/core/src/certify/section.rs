//! Exhaustive search for low-degree sections a·x² + b·y² + c·z² = 0.

use std::collections::HashMap;
use std::time::Instant;

use crate::conicbundle::{nonsplit_locus, ConicBundle};
use crate::gf::{Fe, FiniteField};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionOutcome {
    Found {
        x: Poly<Fe>,
        y: Poly<Fe>,
        z: Poly<Fe>,
    },
    /// Nothing of degree ≤ max_deg. Evidence only: a section may need
    /// higher degree.
    Exhausted,
    /// Nothing of degree ≤ max_deg, and the non-split locus is nonempty, so
    /// no section exists at any degree.
    NoneExists,
    BudgetExceeded {
        examined: u64,
    },
}

#[derive(Clone, Debug)]
pub struct SectionLimits {
    pub max_candidates: u64,
    pub deadline: Option<Instant>,
}

impl Default for SectionLimits {
    fn default() -> Self {
        SectionLimits {
            max_candidates: 50_000_000,
            deadline: None,
        }
    }
}

/// Polynomials of degree ≤ d, in canonical order.
fn all_polys(d: usize, k: &crate::gf::Field) -> impl Iterator<Item = Poly<Fe>> + '_ {
    let n = k.order().pow(d as u32 + 1);
    (0..n).map(move |i| Poly::from_index(i, k))
}

/// Searches (x, y, z) of degree ≤ max_deg, scaled so that x is monic, or x = 0
/// and z is monic. The values −b·y² are tabulated and a·x² + c·z² is looked
/// up in the table.
pub fn section_search_oracle(bundle: &ConicBundle, max_deg: usize, limits: &SectionLimits) -> SectionOutcome {
    let k = bundle.field();
    let (a, b, c) = (bundle.a(), bundle.b(), bundle.c());
    let mut examined = 0u64;
    let over_budget = |examined: u64| {
        examined > limits.max_candidates
            || (examined % 4096 == 0 && limits.deadline.is_some_and(|d| Instant::now() > d))
    };
    let mut table: HashMap<Poly<Fe>, Poly<Fe>> = HashMap::new();
    for y in all_polys(max_deg, k) {
        examined += 1;
        if over_budget(examined) {
            return SectionOutcome::BudgetExceeded { examined };
        }
        table.entry(b.mul(&y, k).mul(&y, k).neg(k)).or_insert(y);
    }
    let monics = || (0..=max_deg).flat_map(|d| Poly::monics(d, k));
    let pairs = monics()
        .flat_map(|x| all_polys(max_deg, k).map(move |z| (x.clone(), z)))
        .chain(monics().map(|z| (Poly::zero(), z)));
    for (x, z) in pairs {
        examined += 1;
        if over_budget(examined) {
            return SectionOutcome::BudgetExceeded { examined };
        }
        let key = a.mul(&x, k).mul(&x, k).add(&c.mul(&z, k).mul(&z, k), k);
        if let Some(y) = table.get(&key) {
            return SectionOutcome::Found { x, y: y.clone(), z };
        }
    }
    if nonsplit_locus(bundle).is_empty() {
        SectionOutcome::Exhausted
    } else {
        SectionOutcome::NoneExists
    }
}
