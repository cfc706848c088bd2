//! Simplicial fans given by primitive integer rays and maximal cones.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, complement_projection, primitive_ray, span_key, to_q, IVec, Matrix, QVec};
use crate::polyhedral::{extreme_rays, simplicial_hrep};

/// A cone of a fan, as a sorted set of ray indices. The empty set is the zero cone.
pub type Cone = Vec<usize>;

/// A cone given by its lexicographically sorted primitive rays.
pub type CanonicalCone = Vec<IVec>;

/// The projected star `π_σ(star σ)` as a set of canonical cones.
pub type ProjectedFan = BTreeSet<CanonicalCone>;

#[derive(Debug, Clone)]
pub struct Fan {
    dim: usize,
    rays: Vec<IVec>,
    max_cones: Vec<Cone>,
    faces: Vec<Cone>,
    index: BTreeMap<Cone, usize>,
    stars: Vec<Vec<usize>>,
    span_keys: Vec<Vec<QVec>>,
    projections: Vec<Matrix>,
    projected: HashMap<(usize, usize), CanonicalCone>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub first: Cone,
    pub second: Cone,
    /// Extreme rays of the actual intersection.
    pub intersection: CanonicalCone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkComplex {
    /// Cones of `star(σ)` of dimension `dim σ + 1`.
    pub vertices: Vec<usize>,
    /// Nonempty simplices as sets of vertices (face ids).
    pub simplices: Vec<Vec<usize>>,
}

impl LinkComplex {
    pub fn simplices_of_size(&self, k: usize) -> usize {
        self.simplices.iter().filter(|s| s.len() == k).count()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// Pure, and every ridge lies in exactly two facets (a 0-sphere has two isolated vertices).
    pub fn is_pseudomanifold(&self) -> bool {
        let Some(d) = self.dimension() else { return false };
        let facets: Vec<&Vec<usize>> = self.simplices.iter().filter(|s| s.len() == d + 1).collect();
        let maximal = self.simplices.iter().all(|s| s.len() == d + 1 || facets.iter().any(|f| s.iter().all(|v| f.contains(v))));
        if !maximal {
            return false;
        }
        if d == 0 {
            return facets.len() == 2;
        }
        self.simplices.iter().filter(|s| s.len() == d).all(|ridge| {
            facets.iter().filter(|f| ridge.iter().all(|v| f.contains(v))).count() == 2
        })
    }
}

impl Fan {
    /// Build a simplicial fan; rays are normalized to primitive form and all faces derived.
    pub fn new(dim: usize, rays: Vec<QVec>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let mut prim: Vec<IVec> = Vec::with_capacity(rays.len());
        for r in &rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(r.len(), dim));
            }
            prim.push(primitive_ray(r)?);
        }
        for i in 0..prim.len() {
            for j in 0..i {
                if prim[i] == prim[j] {
                    return Err(Error::DuplicateRay(j, i));
                }
            }
        }
        let mut cones: BTreeSet<Cone> = BTreeSet::new();
        for c in max_cones {
            let mut c = c;
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= prim.len()) {
                return Err(Error::BadIndex(bad));
            }
            let vs: Vec<QVec> = c.iter().map(|&i| to_q(&prim[i])).collect();
            if linalg::rank(&vs, dim) != c.len() {
                return Err(Error::NonSimplicialCone(c));
            }
            cones.insert(c);
        }
        let maximal: Vec<Cone> = cones
            .iter()
            .filter(|c| !cones.iter().any(|d| d.len() > c.len() && c.iter().all(|i| d.contains(i))))
            .cloned()
            .collect();
        let mut face_set: BTreeSet<Cone> = BTreeSet::new();
        face_set.insert(Vec::new());
        for c in &maximal {
            for mask in 0u64..(1u64 << c.len()) {
                face_set.insert(c.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect());
            }
        }
        let mut faces: Vec<Cone> = face_set.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: BTreeMap<Cone, usize> = faces.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let stars: Vec<Vec<usize>> = faces
            .iter()
            .map(|s| (0..faces.len()).filter(|&t| s.iter().all(|i| faces[t].contains(i))).collect())
            .collect();
        let span_keys: Vec<Vec<QVec>> = faces
            .iter()
            .map(|c| span_key(&c.iter().map(|&i| to_q(&prim[i])).collect::<Vec<_>>(), dim))
            .collect();
        let projections: Vec<Matrix> = faces
            .iter()
            .map(|c| {
                let basis: Vec<QVec> = c.iter().map(|&i| to_q(&prim[i])).collect();
                complement_projection(&basis, dim).expect("independent rays")
            })
            .collect();
        let mut fan = Fan {
            dim,
            rays: prim,
            max_cones: maximal,
            faces,
            index,
            stars,
            span_keys,
            projections,
            projected: HashMap::new(),
        };
        let mut projected = HashMap::new();
        for s in 0..fan.faces.len() {
            for &t in &fan.stars[s] {
                projected.insert((s, t), fan.compute_projection(s, t));
            }
        }
        fan.projected = projected;
        Ok(fan)
    }

    pub fn from_ints(dim: usize, rays: &[Vec<i64>], max_cones: &[Vec<usize>]) -> Result<Fan> {
        Fan::new(dim, rays.iter().map(|r| linalg::qv(r)).collect(), max_cones.to_vec())
    }

    fn compute_projection(&self, s: usize, t: usize) -> CanonicalCone {
        let p = &self.projections[s];
        let mut out: CanonicalCone = self.faces[t]
            .iter()
            .filter(|i| !self.faces[s].contains(i))
            .map(|&i| primitive_ray(&p.apply_i(&self.rays[i])).expect("ray outside span"))
            .collect();
        out.sort();
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hash of rays and maximal cones, used to tell fans apart.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.dim.hash(&mut h);
        self.rays.hash(&mut h);
        self.max_cones.hash(&mut h);
        h.finish()
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// All cones, ordered by dimension and then lexicographically; id 0 is the zero cone.
    pub fn faces(&self) -> &[Cone] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, id: usize) -> &Cone {
        &self.faces[id]
    }

    pub fn face_dim(&self, id: usize) -> usize {
        self.faces[id].len()
    }

    pub fn id_of(&self, cone: &[usize]) -> Result<usize> {
        let mut c = cone.to_vec();
        c.sort_unstable();
        c.dedup();
        self.index.get(&c).copied().ok_or(Error::UnknownCone(c))
    }

    pub fn faces_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].len() == d).collect()
    }

    /// Maximal cones of full dimension, as face ids.
    pub fn chambers(&self) -> Vec<usize> {
        self.faces_of_dim(self.dim)
    }

    pub fn walls(&self) -> Vec<usize> {
        if self.dim == 0 {
            return Vec::new();
        }
        self.faces_of_dim(self.dim - 1)
    }

    pub fn is_face_of(&self, s: usize, t: usize) -> bool {
        self.faces[s].iter().all(|i| self.faces[t].contains(i))
    }

    /// `star(σ)` as face ids, in face order.
    pub fn star(&self, id: usize) -> &[usize] {
        &self.stars[id]
    }

    pub fn star_chambers(&self, id: usize) -> Vec<usize> {
        self.stars[id].iter().copied().filter(|&t| self.faces[t].len() == self.dim).collect()
    }

    pub fn ray_vectors(&self, id: usize) -> Vec<QVec> {
        self.faces[id].iter().map(|&i| to_q(&self.rays[i])).collect()
    }

    /// Sum of the rays of a cone, a point of its relative interior.
    pub fn interior_point(&self, id: usize) -> IVec {
        let mut out = vec![BigInt::zero(); self.dim];
        for &i in &self.faces[id] {
            for (o, x) in out.iter_mut().zip(&self.rays[i]) {
                *o += x;
            }
        }
        out
    }

    pub fn span_key(&self, id: usize) -> &Vec<QVec> {
        &self.span_keys[id]
    }

    pub fn projection(&self, id: usize) -> &Matrix {
        &self.projections[id]
    }

    /// Canonical form of `π_σ(τ)` for `τ ∈ star(σ)`.
    pub fn projected(&self, s: usize, t: usize) -> Result<&CanonicalCone> {
        self.projected.get(&(s, t)).ok_or_else(|| Error::UnknownCone(self.faces[t].clone()))
    }

    pub fn project_star(&self, id: usize) -> ProjectedFan {
        self.stars[id].iter().map(|&t| self.projected[&(id, t)].clone()).collect()
    }

    pub fn canonical_cone(&self, id: usize) -> CanonicalCone {
        let mut c: CanonicalCone = self.faces[id].iter().map(|&i| self.rays[i].clone()).collect();
        c.sort();
        c
    }

    /// Chambers containing a face, in face order.
    pub fn cofacets(&self, id: usize) -> Vec<usize> {
        let d = self.faces[id].len() + 1;
        self.stars[id].iter().copied().filter(|&t| self.faces[t].len() == d).collect()
    }

    /// Check that every pair of maximal cones meets in a common face.
    pub fn validate(&self) -> ValidationReport {
        let hreps: Vec<(Vec<QVec>, Vec<QVec>)> = self
            .max_cones
            .iter()
            .map(|c| {
                let vs: Vec<QVec> = c.iter().map(|&i| to_q(&self.rays[i])).collect();
                simplicial_hrep(&vs, self.dim).expect("simplicial")
            })
            .collect();
        let mut violations = Vec::new();
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let eqs: Vec<QVec> = hreps[a].0.iter().chain(&hreps[b].0).cloned().collect();
                let ineqs: Vec<QVec> = hreps[a].1.iter().chain(&hreps[b].1).cloned().collect();
                let actual = extreme_rays(&eqs, &ineqs, self.dim);
                let common: Cone = self.max_cones[a].iter().copied().filter(|i| self.max_cones[b].contains(i)).collect();
                let mut expected: CanonicalCone = common.iter().map(|&i| self.rays[i].clone()).collect();
                expected.sort();
                if actual != expected {
                    violations.push(Violation {
                        first: self.max_cones[a].clone(),
                        second: self.max_cones[b].clone(),
                        intersection: actual,
                    });
                }
            }
        }
        ValidationReport { valid: violations.is_empty(), violations }
    }

    /// Every wall lies in exactly two chambers, every maximal cone is full-dimensional,
    /// and the wall-crossing graph is connected.
    pub fn is_finite_complete(&self) -> bool {
        if self.dim == 0 || self.max_cones.iter().any(|c| c.len() != self.dim) {
            return false;
        }
        let chambers = self.chambers();
        if chambers.is_empty() {
            return false;
        }
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for w in self.walls() {
            let cs = self.cofacets(w);
            if cs.len() != 2 {
                return false;
            }
            adj.entry(cs[0]).or_default().push(cs[1]);
            adj.entry(cs[1]).or_default().push(cs[0]);
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut queue = VecDeque::from([chambers[0]]);
        seen.insert(chambers[0]);
        while let Some(c) = queue.pop_front() {
            for &d in adj.get(&c).into_iter().flatten() {
                if seen.insert(d) {
                    queue.push_back(d);
                }
            }
        }
        seen.len() == chambers.len()
    }

    /// The simplicial complex `S([σ])` of a block of cones sharing one projected star.
    pub fn link_complex(&self, block: &[usize]) -> Result<LinkComplex> {
        if !self.is_finite_complete() {
            return Err(Error::NotComplete);
        }
        let Some(&rep) = block.first() else {
            return Err(Error::UnknownCone(Vec::new()));
        };
        let star = self.project_star(rep);
        for &other in &block[1..] {
            if self.span_keys[other] != self.span_keys[rep] || self.project_star(other) != star {
                return Err(Error::MixedBlock(self.faces[rep].clone(), self.faces[other].clone()));
            }
        }
        let k = self.faces[rep].len();
        let vertices = self.cofacets(rep);
        let simplices = self.stars[rep]
            .iter()
            .filter(|&&t| self.faces[t].len() > k)
            .map(|&t| vertices.iter().copied().filter(|&v| self.is_face_of(v, t)).collect())
            .collect();
        Ok(LinkComplex { vertices, simplices })
    }

    /// Primitive normal of the hyperplane spanned by a wall, first nonzero entry positive.
    pub fn wall_normal(&self, wall: usize) -> IVec {
        linalg::hyperplane_normal(&self.ray_vectors(wall), self.dim).expect("wall spans a hyperplane")
    }

    /// The two chambers of a wall as (negative side, positive side) of its canonical normal.
    pub fn wall_sides(&self, wall: usize) -> Option<(usize, usize)> {
        let cs = self.cofacets(wall);
        if cs.len() != 2 {
            return None;
        }
        let n = self.wall_normal(wall);
        let s0 = linalg::dot_i(&n, &self.interior_point(cs[0]));
        if s0.is_positive() {
            Some((cs[1], cs[0]))
        } else {
            Some((cs[0], cs[1]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::linalg::iv;

    #[test]
    fn face_counts() {
        assert_eq!(builtins::fan_hzb(1).num_faces(), 9);
        assert_eq!(builtins::fan_sq().num_faces(), 9);
    }

    #[test]
    fn dependent_rays_rejected() {
        let r = Fan::from_ints(2, &[vec![1, 0], vec![2, 0]], &[vec![0, 1]]);
        assert!(matches!(r, Err(Error::DuplicateRay(..))));
        let r = Fan::from_ints(2, &[vec![1, 0], vec![-2, 0]], &[vec![0, 1]]);
        assert!(matches!(r, Err(Error::NonSimplicialCone(_))));
    }

    #[test]
    fn validation() {
        assert!(builtins::fan_sq().validate().valid);
        let bad = Fan::from_ints(2, &[vec![1, 0], vec![0, 1], vec![1, 1]], &[vec![0, 1], vec![0, 2]]).unwrap();
        let rep = bad.validate();
        assert!(!rep.valid);
        assert_eq!(rep.violations[0].intersection, vec![iv(&[1, 0]), iv(&[1, 1])]);
        let single = Fan::from_ints(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert!(single.validate().valid);
    }

    #[test]
    fn completeness() {
        assert!(builtins::fan_sq().is_finite_complete());
        assert!(builtins::fan_hzb(1).is_finite_complete());
        let quad = Fan::from_ints(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert!(!quad.is_finite_complete());
    }

    #[test]
    fn stars() {
        let f = builtins::fan_sq();
        let s1 = f.id_of(&[0]).unwrap();
        let star: Vec<Cone> = f.star(s1).iter().map(|&t| f.face(t).clone()).collect();
        assert_eq!(star, vec![vec![0], vec![0, 1], vec![0, 3]]);
        assert_eq!(f.star(0).len(), 9);
        let t = f.id_of(&[0, 3]).unwrap();
        assert_eq!(f.star(t), &[t]);
    }

    #[test]
    fn projected_stars() {
        let f = builtins::fan_hzb(1);
        let s2 = f.id_of(&[1]).unwrap();
        let s4 = f.id_of(&[3]).unwrap();
        let t1 = f.id_of(&[0, 3]).unwrap();
        let t2 = f.id_of(&[0, 1]).unwrap();
        let t3 = f.id_of(&[1, 2]).unwrap();
        assert_eq!(f.projected(s2, t2).unwrap(), &vec![iv(&[1, 0])]);
        assert_eq!(f.projected(s2, t2).unwrap(), f.projected(s4, t1).unwrap());
        assert_eq!(f.projected(s2, t3).unwrap(), &vec![iv(&[-1, 0])]);
        let tmax = f.chambers()[0];
        assert_eq!(f.project_star(tmax), BTreeSet::from([Vec::new()]));
    }

    #[test]
    fn links() {
        let f = builtins::fan_sq();
        let l0 = f.link_complex(&[0]).unwrap();
        assert_eq!((l0.vertices.len(), l0.simplices_of_size(2)), (4, 4));
        assert!(l0.is_pseudomanifold());
        let l1 = f.link_complex(&[f.id_of(&[0]).unwrap()]).unwrap();
        assert_eq!((l1.vertices.len(), l1.simplices_of_size(2)), (2, 0));
        let h = builtins::fan_hzb(1);
        let l = h.link_complex(&[h.id_of(&[1]).unwrap(), h.id_of(&[3]).unwrap()]).unwrap();
        assert_eq!((l.vertices.len(), l.simplices_of_size(2)), (2, 0));
        assert!(matches!(
            h.link_complex(&[h.id_of(&[0]).unwrap(), h.id_of(&[2]).unwrap()]),
            Err(Error::MixedBlock(..))
        ));
    }
}
