//! Fan posets: partial orders on the chambers of a complete fan.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{CanonicalCone, Fan};
use crate::linalg::{self, to_q, QVec, Q};
use crate::partition::Partition;
use crate::polyhedral::{combinations, feasible, simplicial_hrep, Constraint, Rel};

pub const DEFAULT_CHAIN_LIMIT: usize = 1_000_000;

/// A labelled cover `lower ⋖ upper` across the wall `wall` (face ids).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub wall: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanPoset {
    elements: Vec<usize>,
    index: HashMap<usize, usize>,
    covers: Vec<Cover>,
    up: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialInterval {
    pub cone: usize,
    pub min: usize,
    pub max: usize,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetReport {
    pub intervals_ok: bool,
    /// A cone whose star is not an interval.
    pub interval_witness: Option<usize>,
    pub convex_ok: bool,
    /// An interval `(lower, upper)` whose union is not a polyhedral cone.
    pub convex_witness: Option<(usize, usize)>,
    /// The simply-connected variant is not decided.
    pub weak_variant: &'static str,
}

impl PosetReport {
    pub fn passes(&self) -> bool {
        self.intervals_ok && self.convex_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDegeneracy {
    pub nondegenerate: bool,
    /// Two identified cones whose induced posets differ.
    pub witness: Option<(usize, usize)>,
}

impl FanPoset {
    /// Poset on the chambers generated by the given covers `(lower, upper)`.
    pub fn from_covers(fan: &Fan, pairs: &[(usize, usize)]) -> Result<FanPoset> {
        if !fan.is_finite_complete() {
            return Err(Error::NotComplete);
        }
        let elements = fan.chambers();
        let index: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut covers = Vec::with_capacity(pairs.len());
        for &(lo, hi) in pairs {
            for c in [lo, hi] {
                if !index.contains_key(&c) {
                    return Err(Error::NotAChamber(fan.face(c).clone()));
                }
            }
            let common: Vec<usize> = fan.face(lo).iter().copied().filter(|i| fan.face(hi).contains(i)).collect();
            if common.len() + 1 != fan.dim() {
                return Err(Error::PosetInvalid(format!(
                    "{:?} and {:?} are not adjacent",
                    fan.face(lo),
                    fan.face(hi)
                )));
            }
            covers.push(Cover { lower: lo, upper: hi, wall: fan.id_of(&common)? });
        }
        covers.sort();
        covers.dedup();
        let n = elements.len();
        let mut up = vec![Vec::new(); n];
        for c in &covers {
            up[index[&c.lower]].push(index[&c.upper]);
        }
        let mut leq = vec![vec![false; n]; n];
        for (s, row) in leq.iter_mut().enumerate() {
            let mut stack = vec![s];
            row[s] = true;
            while let Some(x) = stack.pop() {
                for &y in &up[x] {
                    if !row[y] {
                        row[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        for c in &covers {
            if leq[index[&c.upper]][index[&c.lower]] {
                return Err(Error::PosetInvalid(format!("cycle through {:?}", fan.face(c.lower))));
            }
        }
        Ok(FanPoset { elements, index, covers, up, leq })
    }

    /// Orient every wall by the sign of `b` on its normal.
    pub fn from_functional(fan: &Fan, b: &[Q]) -> Result<FanPoset> {
        if !fan.is_finite_complete() {
            return Err(Error::NotComplete);
        }
        if b.len() != fan.dim() {
            return Err(Error::DimensionMismatch(b.len(), fan.dim()));
        }
        let mut pairs = Vec::new();
        for w in fan.walls() {
            let (neg, pos) = fan.wall_sides(w).ok_or(Error::NotComplete)?;
            let s = linalg::dot(b, &to_q(&fan.wall_normal(w)));
            match s.cmp(&Q::zero()) {
                Ordering::Greater => pairs.push((neg, pos)),
                Ordering::Less => pairs.push((pos, neg)),
                Ordering::Equal => return Err(Error::DegenerateFunctional(fan.face(w).clone())),
            }
        }
        FanPoset::from_covers(fan, &pairs)
    }

    /// The two-chain poset of a planar fan: `base` at the bottom, the chamber opposite its
    /// angle bisector at the top, and the two boundary paths between them.
    pub fn bisector(fan: &Fan, base: usize) -> Result<FanPoset> {
        if fan.dim() != 2 {
            return Err(Error::NotRank2);
        }
        if !fan.is_finite_complete() {
            return Err(Error::NotComplete);
        }
        if fan.face_dim(base) != 2 {
            return Err(Error::NotAChamber(fan.face(base).clone()));
        }
        let ring = ccw_chambers(fan);
        let m = ring.len();
        let start = ring.iter().position(|&(c, _, _)| c == base).expect("chamber");
        let (_, r1, r2) = ring[start];
        let rq = |i: usize| to_q(&fan.rays()[i]);
        let (u1, u2) = (rq(r1), rq(r2));
        let (p1, p2) = (linalg::dot(&u1, &u1), linalg::dot(&u2, &u2));
        // sign of cross(v, -(u1/|u1| + u2/|u2|))
        let side = |v: &QVec| -> Ordering {
            linalg::sign_sqrt_sum(&-linalg::cross2(v, &u1), &p1, &-linalg::cross2(v, &u2), &p2)
        };
        let mut top = None;
        for k in 1..m {
            let (c, a, bb) = ring[(start + k) % m];
            let sa = side(&rq(a));
            let sb = side(&rq(bb));
            if sa == Ordering::Equal {
                top = Some(c);
                break;
            }
            if sa == Ordering::Greater && sb == Ordering::Less {
                top = Some(c);
                break;
            }
        }
        let top = top.ok_or_else(|| Error::PosetInvalid("opposite bisector not found".into()))?;
        let d = (0..m).find(|&k| ring[(start + k) % m].0 == top).expect("top chamber");
        let two_chains = |d: usize| -> Result<FanPoset> {
            let mut pairs = Vec::new();
            for k in 0..d {
                pairs.push((ring[(start + k) % m].0, ring[(start + k + 1) % m].0));
            }
            let mut cur = start;
            for _ in 0..m - d {
                let prev = (cur + m - 1) % m;
                pairs.push((ring[cur].0, ring[prev].0));
                cur = prev;
            }
            FanPoset::from_covers(fan, &pairs)
        };
        // a top chamber sharing a ray with the base makes that ray's star the whole fan
        let d = match d {
            _ if m < 4 => return Err(Error::PosetInvalid("fewer than four chambers".into())),
            1 => 2,
            d if d == m - 1 => m - 2,
            d => d,
        };
        two_chains(d)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn contains(&self, c: usize) -> bool {
        self.index.contains_key(&c)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(&i), Some(&j)) => self.leq[i][j],
            _ => false,
        }
    }

    pub fn upper_covers(&self, a: usize) -> Vec<&Cover> {
        self.covers.iter().filter(|c| c.lower == a).collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        self.elements.iter().copied().find(|&m| self.elements.iter().all(|&x| self.leq(m, x)))
    }

    pub fn maximum(&self) -> Option<usize> {
        self.elements.iter().copied().find(|&m| self.elements.iter().all(|&x| self.leq(x, m)))
    }

    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.elements.iter().copied().filter(|&x| self.leq(lo, x) && self.leq(x, hi)).collect()
    }

    pub fn facial_interval(&self, fan: &Fan, cone: usize) -> Result<FacialInterval> {
        let members = fan.star_chambers(cone);
        let min = members.iter().copied().find(|&m| members.iter().all(|&x| self.leq(m, x)));
        let max = members.iter().copied().find(|&m| members.iter().all(|&x| self.leq(x, m)));
        match (min, max) {
            (Some(lo), Some(hi)) if self.interval(lo, hi) == members => {
                Ok(FacialInterval { cone, min: lo, max: hi, members })
            }
            _ => Err(Error::NotAnInterval(fan.face(cone).clone())),
        }
    }

    /// Maximal chains of `[lo, hi]` as sequences of covers.
    pub fn maximal_chains(&self, lo: usize, hi: usize, limit: usize) -> Result<Vec<Vec<Cover>>> {
        let mut out = Vec::new();
        if !self.leq(lo, hi) {
            return Ok(out);
        }
        let mut stack: Vec<(usize, Vec<Cover>)> = vec![(lo, Vec::new())];
        while let Some((x, path)) = stack.pop() {
            if x == hi {
                out.push(path);
                if out.len() > limit {
                    return Err(Error::ChainLimit(limit));
                }
                continue;
            }
            let i = self.index[&x];
            for &j in self.up[i].iter().rev() {
                let y = self.elements[j];
                if self.leq(y, hi) {
                    let c = *self.covers.iter().find(|c| c.lower == x && c.upper == y).expect("cover");
                    let mut p = path.clone();
                    p.push(c);
                    stack.push((y, p));
                }
            }
        }
        Ok(out)
    }

    /// Check the facial-interval axiom and that every interval is a polyhedral cone.
    pub fn check(&self, fan: &Fan) -> PosetReport {
        let interval_witness = (0..fan.num_faces()).find(|&c| self.facial_interval(fan, c).is_err());
        let mut convex_witness = None;
        'outer: for &lo in &self.elements {
            for &hi in &self.elements {
                if self.leq(lo, hi) && !interval_is_cone(fan, &self.interval(lo, hi)) {
                    convex_witness = Some((lo, hi));
                    break 'outer;
                }
            }
        }
        PosetReport {
            intervals_ok: interval_witness.is_none(),
            interval_witness,
            convex_ok: convex_witness.is_none(),
            convex_witness,
            weak_variant: "not checked",
        }
    }

    /// Projected covers of the chambers around `σ`.
    fn projected_covers(&self, fan: &Fan, s: usize) -> BTreeSet<(CanonicalCone, CanonicalCone)> {
        let star = fan.star_chambers(s);
        self.covers
            .iter()
            .filter(|c| star.contains(&c.lower) && star.contains(&c.upper))
            .map(|c| (fan.projected(s, c.lower).unwrap().clone(), fan.projected(s, c.upper).unwrap().clone()))
            .collect()
    }

    /// Identified cones induce the same order on their projected stars.
    pub fn check_nondegenerate(&self, fan: &Fan, partition: &Partition) -> Result<NonDegeneracy> {
        if !partition.belongs_to(fan) {
            return Err(Error::FanMismatch);
        }
        for block in partition.blocks() {
            if block.len() < 2 {
                continue;
            }
            let reference = self.projected_covers(fan, block[0]);
            for &other in &block[1..] {
                if self.projected_covers(fan, other) != reference {
                    return Ok(NonDegeneracy { nondegenerate: false, witness: Some((block[0], other)) });
                }
            }
        }
        Ok(NonDegeneracy { nondegenerate: true, witness: None })
    }
}

/// Chambers of a complete planar fan in counterclockwise order, each with its rays
/// in counterclockwise order.
pub fn ccw_chambers(fan: &Fan) -> Vec<(usize, usize, usize)> {
    let mut out: Vec<(usize, usize, usize)> = fan
        .chambers()
        .into_iter()
        .map(|c| {
            let (a, b) = (fan.face(c)[0], fan.face(c)[1]);
            let cr = linalg::cross2(&to_q(&fan.rays()[a]), &to_q(&fan.rays()[b]));
            if cr.is_positive() {
                (c, a, b)
            } else {
                (c, b, a)
            }
        })
        .collect();
    out.sort_by(|x, y| linalg::angle_cmp(&to_q(&fan.rays()[x.1]), &to_q(&fan.rays()[y.1])));
    out
}

/// The union of the chambers is the cone generated by all their rays.
fn interval_is_cone(fan: &Fan, members: &[usize]) -> bool {
    let n = fan.dim();
    let rays: BTreeSet<usize> = members.iter().flat_map(|&c| fan.face(c).iter().copied()).collect();
    let rays: Vec<QVec> = rays.iter().map(|&i| to_q(&fan.rays()[i])).collect();
    let mut facets: Vec<QVec> = Vec::new();
    if n >= 2 {
        for subset in combinations(rays.len(), n - 1) {
            let vs: Vec<QVec> = subset.iter().map(|&i| rays[i].clone()).collect();
            let Ok(nu) = linalg::hyperplane_normal(&vs, n) else { continue };
            let nu = to_q(&nu);
            let signs: Vec<Q> = rays.iter().map(|r| linalg::dot(&nu, r)).collect();
            if signs.iter().all(|s| !s.is_negative()) {
                facets.push(nu);
            } else if signs.iter().all(|s| !s.is_positive()) {
                facets.push(nu.iter().map(|x| -x).collect());
            }
        }
    } else {
        let pos = rays.iter().any(|r| r[0].is_positive());
        let neg = rays.iter().any(|r| r[0].is_negative());
        if pos != neg {
            facets.push(vec![if pos { linalg::q(1) } else { linalg::q(-1) }]);
        }
    }
    for c in fan.chambers() {
        if members.contains(&c) {
            continue;
        }
        let (_, ineqs) = simplicial_hrep(&fan.ray_vectors(c), n).expect("chamber");
        let cons: Vec<Constraint> =
            facets.iter().chain(&ineqs).map(|v| Constraint::new(v.clone(), Rel::Gt)).collect();
        if feasible(&cons, n) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::linalg::qv;

    #[test]
    fn functional_on_square() {
        let f = builtins::fan_sq();
        let p = FanPoset::from_functional(&f, &qv(&[1, 1])).unwrap();
        assert_eq!(p.minimum(), Some(f.id_of(&[1, 2]).unwrap()));
        assert_eq!(p.maximum(), Some(f.id_of(&[0, 3]).unwrap()));
        assert!(p.check(&f).passes());
        assert!(matches!(
            FanPoset::from_functional(&f, &qv(&[1, 0])),
            Err(Error::DegenerateFunctional(_))
        ));
        let fi = p.facial_interval(&f, f.id_of(&[0]).unwrap()).unwrap();
        assert_eq!((fi.min, fi.max), (f.id_of(&[0, 1]).unwrap(), f.id_of(&[0, 3]).unwrap()));
    }

    #[test]
    fn bisector_on_square() {
        let f = builtins::fan_sq();
        let base = f.id_of(&[0, 3]).unwrap();
        let p = FanPoset::bisector(&f, base).unwrap();
        assert_eq!(p.minimum(), Some(base));
        assert_eq!(p.maximum(), Some(f.id_of(&[1, 2]).unwrap()));
        assert_eq!(p.maximal_chains(base, f.id_of(&[1, 2]).unwrap(), 10).unwrap().len(), 2);
        assert!(p.check(&f).passes());
    }

    #[test]
    fn bisector_tie_break() {
        // opposite bisector of the first quadrant lies on the ray (-1,-1)
        let f = Fan::from_ints(
            2,
            &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
        )
        .unwrap();
        let p = FanPoset::bisector(&f, f.id_of(&[0, 1]).unwrap()).unwrap();
        assert_eq!(p.maximum(), Some(f.id_of(&[3, 4]).unwrap()));
    }

    #[test]
    fn bisector_tie_next_to_base() {
        // opposite bisector of cone{(1,0),(0,-1)} is the ray (-1,1)
        let f = builtins::fan_hzb(1);
        let base = f.id_of(&[0, 1]).unwrap();
        let p = FanPoset::bisector(&f, base).unwrap();
        let r = p.check(&f);
        assert!(r.intervals_ok);
        assert!(!r.convex_ok);
        // opposite bisector interior to a chamber next to the base
        let f = builtins::fan_hzb(2);
        let p = FanPoset::bisector(&f, f.id_of(&[0, 1]).unwrap()).unwrap();
        assert_eq!(p.maximum(), Some(f.id_of(&[2, 3]).unwrap()));
        assert!(p.check(&f).intervals_ok);
    }

    #[test]
    fn swapped_cover_breaks_intervals() {
        let f = builtins::fan_sq();
        let c = |a: usize, b: usize| f.id_of(&[a, b]).unwrap();
        let p = FanPoset::from_covers(
            &f,
            &[(c(1, 2), c(0, 1)), (c(1, 2), c(2, 3)), (c(0, 3), c(0, 1)), (c(2, 3), c(0, 3))],
        )
        .unwrap();
        let r = p.check(&f);
        assert!(!r.intervals_ok);
        assert!(r.interval_witness.is_some());
    }
}
