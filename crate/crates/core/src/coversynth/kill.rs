//! Covers with 2 | e·f over a set of rational points.
//!
//! Three strategies:
//! - [`kill_rational_residues`] keeps two designated points totally
//!   ramified, descending through squaring maps and backtracking over the
//!   twist choice. It can fail: a cover totally ramified over 0 and ∞ is
//!   c·T^N after a source change of coordinates, and T^N = x/c has a
//!   rational root whenever x/c lies in the odd-order part of F_q^×. So if
//!   the remaining points meet every coset of that subgroup, no such cover
//!   exists (for instance all of P¹(F_3) with P = 0, Q = ∞).
//! - [`kill_rational_parity`] lets each level pick its own branch points
//!   among the current points, which always terminates.
//! - [`AnchorSearch`] is a breadth-first search over degree-2 steps that also
//!   keeps a rational point above each anchor.

use std::collections::{HashMap, HashSet, VecDeque};

use super::double::{conic_cover, double_cover, to_zero_infinity, Twist};
use super::{Cover, SynthError};
use crate::gf::{Field, FiniteField};
use crate::p1curve::{ClosedPoint, RatPoint};

/// Rational preimages of w ∉ {p, q} under double_cover(p, q, twist), if w
/// splits.
fn split_preimages(p: RatPoint, q: RatPoint, twist: Twist, w: RatPoint, k: &Field) -> Option<[RatPoint; 2]> {
    let x = match to_zero_infinity(p, q, k).apply(w, k) {
        RatPoint::Finite(x) => x,
        RatPoint::Infinity => unreachable!("w ≠ q"),
    };
    let y = k.sqrt(k.mul(twist.constant(k), x)).ok()?;
    Some([RatPoint::Finite(y), RatPoint::Finite(k.neg(y))])
}

struct Level {
    twist: Twist,
    preimages: Vec<RatPoint>,
}

/// Both twists of double_cover(p, q) on `rest`, fewest split points first.
fn levels(rest: &[RatPoint], p: RatPoint, q: RatPoint, k: &Field) -> [Level; 2] {
    let mk = |twist| {
        let mut preimages: Vec<RatPoint> = rest
            .iter()
            .filter_map(|&w| split_preimages(p, q, twist, w, k))
            .flatten()
            .collect();
        preimages.sort();
        Level { twist, preimages }
    };
    let (a, b) = (mk(Twist::Trivial), mk(Twist::Nontrivial));
    if b.preimages.len() < a.preimages.len() {
        [b, a]
    } else {
        [a, b]
    }
}

/// A 2-power-degree cover totally ramified over P and Q with 2 | e·f over
/// every point of `b`.
///
/// P and Q need not lie in `b`. Fails with [`SynthError::Unattainable`] when
/// every branch of the twist choices revisits a configuration.
pub fn kill_rational_residues(b: &[RatPoint], p: RatPoint, q: RatPoint, k: &Field) -> Result<Cover, SynthError> {
    if p == q {
        return Err(SynthError::BadInput("designated points must be distinct".into()));
    }
    let mut rest: Vec<RatPoint> = b.iter().copied().filter(|&w| w != p && w != q).collect();
    rest.sort();
    rest.dedup();
    let mut visited = HashSet::new();
    visited.insert(rest.clone());
    descend(&rest, p, q, k, &mut visited).ok_or_else(|| {
        SynthError::Unattainable(format!(
            "no 2-power cover totally ramified over {p:?} and {q:?} kills {rest:?}"
        ))
    })
}

fn descend(
    rest: &[RatPoint],
    p: RatPoint,
    q: RatPoint,
    k: &Field,
    visited: &mut HashSet<Vec<RatPoint>>,
) -> Option<Cover> {
    for level in levels(rest, p, q, k) {
        let psi = double_cover(p, q, level.twist, k).expect("p ≠ q");
        if level.preimages.is_empty() {
            return Some(psi);
        }
        if !visited.insert(level.preimages.clone()) {
            continue;
        }
        let zero = RatPoint::Finite(k.zero());
        if let Some(theta) = descend(&level.preimages, zero, RatPoint::Infinity, k, visited) {
            return Some(psi.then(&theta));
        }
    }
    None
}

/// A 2-power-degree cover with 2 | e·f over every point of `b`, branching
/// each level over its first two points.
pub fn kill_rational_parity(b: &[RatPoint], k: &Field) -> Cover {
    let mut pts: Vec<RatPoint> = b.to_vec();
    pts.sort();
    pts.dedup();
    match pts[..] {
        [] => Cover::identity(k),
        [p] => {
            let q = RatPoint::all(k).into_iter().find(|&w| w != p).expect("q + 1 ≥ 4");
            double_cover(p, q, Twist::Trivial, k).expect("p ≠ q")
        }
        [p, q, ref rest @ ..] => {
            let [best, _] = levels(rest, p, q, k);
            let psi = double_cover(p, q, best.twist, k).expect("p ≠ q");
            if best.preimages.is_empty() {
                psi
            } else {
                psi.then(&kill_rational_parity(&best.preimages, k))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Local {
    Ramified(u8),
    Split(u8, u8),
    Inert,
}

/// Breadth-first search for a cover with 2 | e·f over a rational set and a
/// rational point above each anchor.
///
/// Every degree-2 cover of P¹ is determined by its branch divisor and its
/// class, so the steps are indexed by a pair of rational branch points or a
/// degree-2 branch point, in both classes. States are the current point
/// set and the current anchor points.
pub struct AnchorSearch {
    field: Field,
    points: Vec<RatPoint>,
    steps: Vec<Cover>,
    table: Vec<Vec<Local>>,
}

type State = (u128, Vec<u8>);

impl AnchorSearch {
    pub fn new(k: &Field) -> Result<Self, SynthError> {
        let points = RatPoint::all(k);
        if points.len() > 128 {
            return Err(SynthError::SearchExhausted("anchor search supports q ≤ 127".into()));
        }
        let mut steps = Vec::new();
        for (i, &p) in points.iter().enumerate() {
            for &q in &points[i + 1..] {
                for tw in [Twist::Trivial, Twist::Nontrivial] {
                    steps.push(double_cover(p, q, tw, k)?);
                }
            }
        }
        for m in ClosedPoint::of_degree(2, k) {
            let g = m.poly().expect("finite").clone();
            for c in [k.one(), k.nonsquare()] {
                steps.push(conic_cover(&g.scale(c, k), k)?);
            }
        }
        let index = |t: &ClosedPoint| t.as_rational(k).expect("rational").index(k) as u8;
        let table = steps
            .iter()
            .map(|s| {
                points
                    .iter()
                    .map(|&x| {
                        let f = s.map().fibre(&x.to_closed(k));
                        match &f[..] {
                            [t] if t.e == 2 => Local::Ramified(index(&t.point)),
                            [_] => Local::Inert,
                            [t1, t2] => Local::Split(index(&t1.point), index(&t2.point)),
                            _ => unreachable!("degree 2"),
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(AnchorSearch {
            field: k.clone(),
            points,
            steps,
            table,
        })
    }

    /// The degree-2 covers the search steps through.
    pub fn steps(&self) -> &[Cover] {
        &self.steps
    }

    fn mask(&self, pts: &[RatPoint]) -> u128 {
        pts.iter().fold(0, |m, p| m | 1u128 << p.index(&self.field))
    }

    /// Searches at most `max_states` states.
    pub fn run(&self, b: &[RatPoint], anchors: &[RatPoint], max_states: usize) -> Result<Cover, SynthError> {
        let k = &self.field;
        let mut a0: Vec<u8> = anchors.iter().map(|p| p.index(k) as u8).collect();
        a0.sort_unstable();
        a0.dedup();
        let start: State = (self.mask(b), a0);
        if start.0 == 0 {
            return Ok(Cover::identity(k));
        }
        let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            for (si, row) in self.table.iter().enumerate() {
                let mut next_b = 0u128;
                for x in 0..self.points.len() {
                    if state.0 >> x & 1 == 1 {
                        if let Local::Split(r1, r2) = row[x] {
                            next_b |= 1 << r1 | 1 << r2;
                        }
                    }
                }
                let mut choices: Vec<Vec<u8>> = vec![Vec::new()];
                for &a in &state.1 {
                    let opts: Vec<u8> = match row[a as usize] {
                        Local::Inert => Vec::new(),
                        Local::Ramified(r) => vec![r],
                        Local::Split(r1, r2) => vec![r1, r2],
                    };
                    choices = choices
                        .iter()
                        .flat_map(|c| {
                            opts.iter().map(move |&r| {
                                let mut c = c.clone();
                                c.push(r);
                                c
                            })
                        })
                        .collect();
                }
                for mut anchors in choices {
                    anchors.sort_unstable();
                    anchors.dedup();
                    let next = (next_b, anchors);
                    if parent.contains_key(&next) {
                        continue;
                    }
                    parent.insert(next.clone(), Some((state.clone(), si)));
                    if next_b == 0 {
                        return Ok(self.rebuild(&parent, next));
                    }
                    if parent.len() >= max_states {
                        return Err(SynthError::SearchExhausted(format!(
                            "anchor search hit its budget of {max_states} states"
                        )));
                    }
                    queue.push_back(next);
                }
            }
        }
        Err(SynthError::SearchExhausted(
            "anchor search exhausted the state space".into(),
        ))
    }

    fn rebuild(&self, parent: &HashMap<State, Option<(State, usize)>>, mut s: State) -> Cover {
        let mut path = Vec::new();
        while let Some(Some((prev, si))) = parent.get(&s) {
            path.push(*si);
            s = prev.clone();
        }
        path.iter().rev().fold(Cover::identity(&self.field), |acc, &si| {
            if acc.chain().is_empty() {
                self.steps[si].clone()
            } else {
                acc.then(&self.steps[si])
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(a: i64, k: &Field) -> RatPoint {
        RatPoint::Finite(k.from_int(a))
    }

    fn parity_ok(c: &Cover, b: &[RatPoint], k: &Field) -> bool {
        b.iter()
            .all(|p| c.map().fibre(&p.to_closed(k)).iter().all(|t| t.e * t.f % 2 == 0))
    }

    #[test]
    fn designated_points_stay_ramified() {
        let k = Field::prime(5).unwrap();
        let inf = RatPoint::Infinity;
        let c = kill_rational_residues(&[fin(0, &k), inf], fin(0, &k), inf, &k).unwrap();
        assert_eq!(c.map(), &crate::p1curve::RationalMap::power(2, k.one(), &k));

        let b = [fin(0, &k), fin(1, &k), fin(2, &k), inf];
        let c = kill_rational_residues(&b, fin(0, &k), inf, &k).unwrap();
        assert!(c.degree() <= 4);
        assert!(parity_ok(&c, &b, &k));
        for p in [fin(0, &k), inf] {
            assert_eq!(c.map().fibre(&p.to_closed(&k)).len(), 1);
        }
        assert!(c.chain_is_consistent());
    }

    #[test]
    fn total_ramification_can_be_unattainable() {
        let k = Field::prime(3).unwrap();
        let all = RatPoint::all(&k);
        let e = kill_rational_residues(&all, fin(0, &k), RatPoint::Infinity, &k).unwrap_err();
        assert!(matches!(e, SynthError::Unattainable(_)));
        let c = kill_rational_parity(&all, &k);
        assert!(parity_ok(&c, &all, &k));
    }

    #[test]
    fn free_and_anchored_kills() {
        for p in [3, 5, 7] {
            let k = Field::prime(p).unwrap();
            let all = RatPoint::all(&k);
            let search = AnchorSearch::new(&k).unwrap();
            for n in 0..=all.len() {
                let b = &all[..n];
                let c = kill_rational_parity(b, &k);
                assert!(parity_ok(&c, b, &k));
                assert!(c.chain_is_consistent());
                let anchors = [all[0], all[all.len() - 1]];
                let c = search.run(b, &anchors, 1 << 20).unwrap();
                assert!(parity_ok(&c, b, &k));
                for a in anchors {
                    assert!(c.map().fibre(&a.to_closed(&k)).iter().any(|t| t.f == 1));
                }
            }
        }
    }
}
