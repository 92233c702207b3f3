use super::ConicBundle;
use crate::gf::{Fe, FiniteField};
use crate::p1curve::{ClosedPoint, ResidueField};
use crate::poly::Poly;

/// The local form a′x² + b′y² − z² at a closed point, v(a′) ∈ {0, 1} and
/// b′ a unit. Units are stored through their images in κ(P).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub a_val: u8,
    pub a_unit: Poly<Fe>,
    pub b_unit: Poly<Fe>,
    /// Which of (a, b, c) landed in the x, y and z slots.
    pub slots: [usize; 3],
}

/// A class in κ(P)^×/(κ(P)^×)².
///
/// The representative is canonical: 1 for the trivial class and the first
/// nonsquare of κ(P) otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    pub point: ClosedPoint,
    pub representative: Poly<Fe>,
    pub trivial: bool,
}

impl ResidueClass {
    pub fn from_raw(bundle: &ConicBundle, point: &ClosedPoint, raw: &Poly<Fe>) -> Self {
        let kp = ResidueField::new(bundle.field(), point);
        let raw = kp.reduce(raw);
        assert!(!raw.is_zero(), "residues are units");
        let trivial = kp.is_square(&raw);
        ResidueClass {
            point: point.clone(),
            representative: if trivial { kp.one() } else { kp.canonical_nonsquare() },
            trivial,
        }
    }
}

/// Minimal splitting field of a fibre: degree 1 or 2 over κ(P), with the
/// class whose square root splits it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingField {
    pub degree: usize,
    pub witness: Poly<Fe>,
}

/// The bundle and closed point to work with at P; ∞ is handled as u = 0 in
/// the swapped chart.
fn local_model(bundle: &ConicBundle, p: &ClosedPoint) -> (ConicBundle, Poly<Fe>) {
    let k = bundle.field();
    match p {
        ClosedPoint::Finite(m) => (bundle.clone(), m.clone()),
        ClosedPoint::Infinity => (bundle.chart_swap(), Poly::x(k)),
    }
}

pub fn normalize_at(bundle: &ConicBundle, p: &ClosedPoint) -> NormalForm {
    let k = bundle.field();
    let kp = ResidueField::new(k, p);
    let (local, pi) = local_model(bundle, p);
    let data: Vec<(u8, Poly<Fe>)> = local
        .coeffs()
        .iter()
        .map(|x| {
            let (v, unit) = x.valuation(&pi, k);
            ((v % 2) as u8, kp.reduce(&unit))
        })
        .collect();
    let (i, j, l) = [(0, 1, 2), (1, 0, 2), (2, 0, 1)]
        .into_iter()
        .find(|&(_, j, l)| data[j].0 == data[l].0)
        .expect("two of three parities agree");
    let minus_inv_l = kp.inv(&data[l].1).neg(k);
    let a_val = if data[l].0 == 0 { data[i].0 } else { 1 - data[i].0 };
    NormalForm {
        a_val,
        a_unit: kp.mul(&data[i].1, &minus_inv_l),
        b_unit: kp.mul(&data[j].1, &minus_inv_l),
        slots: [i, j, l],
    }
}

/// b′^{v(a′)} before canonicalization.
pub fn residue_raw(bundle: &ConicBundle, p: &ClosedPoint) -> Poly<Fe> {
    let nf = normalize_at(bundle, p);
    if nf.a_val == 0 {
        Poly::one(bundle.field())
    } else {
        nf.b_unit
    }
}

pub fn residue_at(bundle: &ConicBundle, p: &ClosedPoint) -> ResidueClass {
    ResidueClass::from_raw(bundle, p, &residue_raw(bundle, p))
}

/// (valuation, unit residue) of a nonzero polynomial at P, computed at ∞
/// from the degree and leading coefficient rather than a chart swap.
fn local_unit(e: &Poly<Fe>, p: &ClosedPoint, kp: &ResidueField) -> (i64, Poly<Fe>) {
    let k = kp.base();
    match p {
        ClosedPoint::Infinity => (-(e.deg() as i64), kp.constant(e.lc().expect("nonzero"))),
        ClosedPoint::Finite(m) => {
            let (v, unit) = e.valuation(m, k);
            (v as i64, kp.reduce(&unit))
        }
    }
}

/// The tame symbol of (−a/c, −b/c): (−1)^{v(x)v(y)} x^{v(y)} y^{−v(x)} mod P,
/// before canonicalization.
pub fn tame_symbol_raw(bundle: &ConicBundle, p: &ClosedPoint) -> Poly<Fe> {
    let k = bundle.field();
    let kp = ResidueField::new(k, p);
    let [(va, ua), (vb, ub), (vc, uc)] = [bundle.a(), bundle.b(), bundle.c()].map(|e| local_unit(e, p, &kp));
    let minus_inv_c = kp.inv(&uc).neg(k);
    let (vx, ux) = (va - vc, kp.mul(&ua, &minus_inv_c));
    let (vy, uy) = (vb - vc, kp.mul(&ub, &minus_inv_c));
    let sign = if (vx * vy) % 2 == 0 {
        kp.one()
    } else {
        kp.constant(k.neg(k.one()))
    };
    kp.mul(&sign, &kp.mul(&kp.pow(&ux, vy), &kp.pow(&uy, -vx)))
}

pub fn residue_tame_oracle(bundle: &ConicBundle, p: &ClosedPoint) -> ResidueClass {
    ResidueClass::from_raw(bundle, p, &tame_symbol_raw(bundle, p))
}

/// Splitness of the fibre read off the local form: a smooth fibre is split,
/// and b′y² − z² is split iff b′ is a square, tested through the resultant
/// norm.
pub fn fibre_split_direct(bundle: &ConicBundle, p: &ClosedPoint) -> bool {
    let nf = normalize_at(bundle, p);
    nf.a_val == 0 || ResidueField::new(bundle.field(), p).is_square_by_resultant(&nf.b_unit)
}

pub fn minimal_splitting_field(bundle: &ConicBundle, p: &ClosedPoint) -> SplittingField {
    let r = residue_at(bundle, p);
    SplittingField {
        degree: if r.trivial { 1 } else { 2 },
        witness: r.representative,
    }
}
