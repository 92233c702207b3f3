use super::{residue_at, ConicBundle, ResidueClass};
use crate::gf::Field;
use crate::p1curve::ClosedPoint;

/// The points with nontrivial residue, in canonical order, and their total
/// degree δ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonSplitLocus {
    field: Field,
    entries: Vec<ResidueClass>,
    delta: usize,
}

impl NonSplitLocus {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[ResidueClass] {
        &self.entries
    }

    pub fn points(&self) -> Vec<ClosedPoint> {
        self.entries.iter().map(|r| r.point.clone()).collect()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.point.degree()).collect()
    }

    /// (★): besides rational points, at most one point of degree ≤ 2 and one
    /// of odd degree.
    pub fn condition_star(&self) -> bool {
        condition_star(&self.degrees())
    }

    /// (★★): besides rational points, at most one point, of degree 2 or odd.
    pub fn condition_star_star(&self) -> bool {
        condition_star_star(&self.degrees())
    }
}

fn non_rational(degrees: &[usize]) -> Vec<usize> {
    let mut nr: Vec<usize> = degrees.iter().copied().filter(|&d| d > 1).collect();
    nr.sort_unstable();
    nr
}

pub fn condition_star(degrees: &[usize]) -> bool {
    match non_rational(degrees)[..] {
        [] => true,
        [d] => d == 2 || d % 2 == 1,
        [d1, d2] => d1 == 2 && d2 % 2 == 1,
        _ => false,
    }
}

pub fn condition_star_star(degrees: &[usize]) -> bool {
    match non_rational(degrees)[..] {
        [] => true,
        [d] => d == 2 || d % 2 == 1,
        _ => false,
    }
}

/// Irreducible factors of a, b, c and the infinite place, sorted.
pub fn candidate_points(bundle: &ConicBundle) -> Vec<ClosedPoint> {
    let k = bundle.field();
    let mut pts: Vec<ClosedPoint> = bundle
        .coeffs()
        .iter()
        .flat_map(|e| ClosedPoint::zeros_of(e, k))
        .collect();
    pts.push(ClosedPoint::Infinity);
    pts.sort();
    pts.dedup();
    pts
}

/// Residues at every candidate point, trivial ones included.
pub fn residue_scan(bundle: &ConicBundle) -> Vec<ResidueClass> {
    candidate_points(bundle).iter().map(|p| residue_at(bundle, p)).collect()
}

pub fn nonsplit_locus(bundle: &ConicBundle) -> NonSplitLocus {
    let entries: Vec<ResidueClass> = residue_scan(bundle).into_iter().filter(|r| !r.trivial).collect();
    NonSplitLocus {
        field: bundle.field().clone(),
        delta: entries.iter().map(|r| r.point.degree()).sum(),
        entries,
    }
}
