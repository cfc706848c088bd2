//! Central hyperplane arrangements: the induced fan, flats, the poset of regions, shards,
//! and the wall algebra of the Brauer cycle arrangement.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::builtins::BRAUER_NORMALS;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::group::Word;
use crate::linalg::{self, to_q, IVec, QVec};
use crate::partition::Partition;
use crate::picture::PictureGroup;
use crate::polyhedral::{feasible, Constraint, Rel};
use crate::poset::FanPoset;

pub const MAX_HYPERPLANES: usize = 12;

pub type SignVector = Vec<i8>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<IVec>,
}

impl Arrangement {
    pub fn new(dim: usize, normals: &[Vec<i64>]) -> Result<Arrangement> {
        let mut out: Vec<IVec> = Vec::new();
        for n in normals {
            if n.len() != dim {
                return Err(Error::DimensionMismatch(dim, n.len()));
            }
            if n.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector);
            }
            let v = linalg::primitive_int(&linalg::iv(n));
            if let Some(j) = out.iter().position(|m| linalg::rank_i(&[m.clone(), v.clone()], dim) < 2) {
                return Err(Error::DuplicateRay(j, out.len()));
            }
            out.push(v);
        }
        Ok(Arrangement { dim, normals: out })
    }

    pub fn brauer() -> Arrangement {
        let normals: Vec<Vec<i64>> = BRAUER_NORMALS.iter().map(|n| n.to_vec()).collect();
        Arrangement::new(3, &normals).expect("brauer normals")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[IVec] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    fn constraints(&self, signs: &[i8]) -> Vec<Constraint> {
        self.normals
            .iter()
            .zip(signs)
            .map(|(n, &s)| {
                let q = to_q(n);
                match s {
                    0 => Constraint::new(q, Rel::Eq),
                    1 => Constraint::new(q, Rel::Gt),
                    _ => Constraint::new(q.iter().map(|x| -x).collect(), Rel::Gt),
                }
            })
            .collect()
    }

    pub fn realizable(&self, signs: &[i8]) -> bool {
        feasible(&self.constraints(signs), self.dim)
    }

    pub fn sign_of(&self, point: &[BigInt]) -> SignVector {
        self.normals
            .iter()
            .map(|n| {
                let d = linalg::dot_i(n, point);
                if d.is_positive() {
                    1
                } else if d.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .collect()
    }

    /// Closure of a set of hyperplanes: all hyperplanes containing their intersection.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let rows: Vec<QVec> = set.iter().map(|&i| to_q(&self.normals[i])).collect();
        let r = linalg::rank(&rows, self.dim);
        (0..self.len())
            .filter(|&i| {
                let mut ext = rows.clone();
                ext.push(to_q(&self.normals[i]));
                linalg::rank(&ext, self.dim) == r
            })
            .collect()
    }

    /// All flats, as closed sets of hyperplanes, ordered by size then lexicographically.
    pub fn flats(&self) -> Result<Vec<Flat>> {
        if self.len() > MAX_HYPERPLANES {
            return Err(Error::TooLarge(format!("{} hyperplanes", self.len())));
        }
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << self.len()) {
            let set: BTreeSet<usize> = (0..self.len()).filter(|i| mask >> i & 1 == 1).collect();
            seen.insert(self.closure(&set));
        }
        let mut flats: Vec<Flat> = seen.into_iter().map(|h| self.flat(h)).collect();
        flats.sort_by(|a, b| (a.hyperplanes.len(), &a.hyperplanes).cmp(&(b.hyperplanes.len(), &b.hyperplanes)));
        Ok(flats)
    }

    fn flat(&self, hyperplanes: BTreeSet<usize>) -> Flat {
        let rows: Vec<QVec> = hyperplanes.iter().map(|&i| to_q(&self.normals[i])).collect();
        let basis = linalg::nullspace(&rows, self.dim).iter().map(|v| linalg::primitive_ray(v).expect("nonzero")).collect();
        Flat { hyperplanes, basis }
    }
}

/// An intersection of hyperplanes, recorded by the closed set of hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    pub hyperplanes: BTreeSet<usize>,
    pub basis: Vec<IVec>,
}

impl Flat {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The fan of an arrangement together with the sign vector of every face.
#[derive(Debug, Clone)]
pub struct ArrangementFan {
    pub arrangement: Arrangement,
    pub fan: Fan,
    pub signs: Vec<SignVector>,
}

pub fn arrangement_fan(arr: &Arrangement) -> Result<ArrangementFan> {
    let m = arr.len();
    let n = arr.dim;
    if m > MAX_HYPERPLANES {
        return Err(Error::TooLarge(format!("{m} hyperplanes")));
    }
    let all: Vec<QVec> = arr.normals.iter().map(|v| to_q(v)).collect();
    if linalg::rank(&all, n) < n {
        return Err(Error::NotSimplicialArrangement(vec![0; m]));
    }
    let mut faces: Vec<SignVector> = Vec::new();
    let mut sv = vec![-1i8; m];
    loop {
        if arr.realizable(&sv) {
            faces.push(sv.clone());
        }
        let mut i = 0;
        while i < m && sv[i] == 1 {
            sv[i] = -1;
            i += 1;
        }
        if i == m {
            break;
        }
        sv[i] += 1;
    }
    let zero_rank = |s: &SignVector| -> usize {
        let rows: Vec<QVec> = (0..m).filter(|&i| s[i] == 0).map(|i| all[i].clone()).collect();
        linalg::rank(&rows, n)
    };
    let mut ray_signs: Vec<SignVector> = faces.iter().filter(|s| zero_rank(s) == n - 1).cloned().collect();
    ray_signs.sort();
    let mut rays: Vec<QVec> = Vec::new();
    for s in &ray_signs {
        let rows: Vec<QVec> = (0..m).filter(|&i| s[i] == 0).map(|i| all[i].clone()).collect();
        let mut v = linalg::nullspace(&rows, n).remove(0);
        let i = (0..m).find(|&i| s[i] != 0).expect("ray off some hyperplane");
        if (linalg::dot(&v, &all[i]).is_positive()) != (s[i] > 0) {
            v = v.iter().map(|x| -x).collect();
        }
        rays.push(to_q(&linalg::primitive_ray(&v)?));
    }
    let conforms = |ray: &SignVector, face: &SignVector| (0..m).all(|i| ray[i] == 0 || ray[i] == face[i]);
    let mut chambers = Vec::new();
    for s in &faces {
        let d = n - zero_rank(s);
        let members: Vec<usize> = (0..ray_signs.len()).filter(|&r| conforms(&ray_signs[r], s)).collect();
        if d > 0 && members.len() != d {
            return Err(Error::NotSimplicialArrangement(s.clone()));
        }
        if d == n {
            chambers.push(members);
        }
    }
    let fan = Fan::new(n, rays, chambers)?;
    let signs = (0..fan.num_faces()).map(|f| arr.sign_of(&fan.interior_point(f))).collect();
    Ok(ArrangementFan { arrangement: arr.clone(), fan, signs })
}

impl ArrangementFan {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    fn zero_set(&self, face: usize) -> BTreeSet<usize> {
        (0..self.arrangement.len()).filter(|&i| self.signs[face][i] == 0).collect()
    }

    /// Smallest flat containing the face.
    pub fn support(&self, face: usize) -> Result<Flat> {
        if face >= self.fan.num_faces() {
            return Err(Error::BadIndex(face));
        }
        Ok(self.arrangement.flat(self.arrangement.closure(&self.zero_set(face))))
    }

    pub fn support_of_cone(&self, cone: &[usize]) -> Result<Flat> {
        let id = self.fan.id_of(cone).map_err(|_| Error::UnknownFace(cone.to_vec()))?;
        self.support(id)
    }

    pub fn flat_partition(&self) -> Result<Partition> {
        let mut groups: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
        for f in 0..self.fan.num_faces() {
            groups.entry(self.arrangement.closure(&self.zero_set(f))).or_default().push(f);
        }
        Partition::from_blocks(&self.fan, &groups.into_values().collect::<Vec<_>>())
    }

    pub fn chamber_containing(&self, point: &[i64]) -> Result<usize> {
        let s = self.arrangement.sign_of(&linalg::iv(point));
        self.signs
            .iter()
            .position(|x| *x == s && !s.contains(&0))
            .ok_or_else(|| Error::NotAChamber(point.iter().map(|&x| x as usize).collect()))
    }

    fn require_chamber(&self, c: usize) -> Result<()> {
        if c >= self.fan.num_faces() || self.fan.face_dim(c) != self.fan.dim() {
            return Err(Error::NotAChamber(if c < self.fan.num_faces() { self.fan.face(c).clone() } else { vec![c] }));
        }
        Ok(())
    }

    /// Hyperplanes separating `region` from `base`.
    pub fn separating_set(&self, base: usize, region: usize) -> Result<Vec<usize>> {
        self.require_chamber(base)?;
        self.require_chamber(region)?;
        Ok((0..self.arrangement.len()).filter(|&i| self.signs[base][i] != self.signs[region][i]).collect())
    }

    pub fn poset_of_regions(&self, base: usize) -> Result<FanPoset> {
        self.require_chamber(base)?;
        let mut pairs = Vec::new();
        for w in self.fan.walls() {
            let cs = self.fan.cofacets(w);
            let (a, b) = (cs[0], cs[1]);
            if self.separating_set(base, a)?.len() < self.separating_set(base, b)?.len() {
                pairs.push((a, b));
            } else {
                pairs.push((b, a));
            }
        }
        FanPoset::from_covers(&self.fan, &pairs)
    }

    /// Hyperplanes bounding the region of the subarrangement `sub` that contains `base`.
    fn basic(&self, sub: &BTreeSet<usize>, base: usize) -> BTreeSet<usize> {
        let base_signs = &self.signs[base];
        sub.iter()
            .copied()
            .filter(|&h| {
                let cons: Vec<Constraint> = sub
                    .iter()
                    .map(|&j| {
                        let q = to_q(&self.arrangement.normals[j]);
                        let s = if j == h { 0 } else { base_signs[j] };
                        if s > 0 {
                            Constraint::new(q, Rel::Gt)
                        } else if s < 0 {
                            Constraint::new(q.iter().map(|x| -x).collect(), Rel::Gt)
                        } else {
                            Constraint::new(q, Rel::Eq)
                        }
                    })
                    .collect();
                feasible(&cons, self.fan.dim())
            })
            .collect()
    }

    /// Shards with respect to `base`: each hyperplane's walls split into components by the
    /// codimension-2 flats along which the hyperplane is cut.
    pub fn shards(&self, base: usize) -> Result<Vec<Shard>> {
        self.require_chamber(base)?;
        let n = self.fan.dim();
        let mut cut: BTreeSet<(usize, BTreeSet<usize>)> = BTreeSet::new();
        if n >= 2 {
            for flat in self.arrangement.flats()?.into_iter().filter(|f| f.dim() + 2 == n) {
                let basic = self.basic(&flat.hyperplanes, base);
                for &h in &flat.hyperplanes {
                    if !basic.contains(&h) {
                        cut.insert((h, flat.hyperplanes.clone()));
                    }
                }
            }
        }
        let walls = self.fan.walls();
        let mut out = Vec::new();
        for h in 0..self.arrangement.len() {
            let members: Vec<usize> = walls.iter().copied().filter(|&w| self.zero_set(w) == BTreeSet::from([h])).collect();
            let mut parent: Vec<usize> = (0..members.len()).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                p[x] = r;
                r
            }
            if n >= 2 {
                for ridge in self.fan.faces_of_dim(n - 2) {
                    let z = self.zero_set(ridge);
                    if !z.contains(&h) || cut.contains(&(h, self.arrangement.closure(&z))) {
                        continue;
                    }
                    let touching: Vec<usize> =
                        (0..members.len()).filter(|&i| self.fan.is_face_of(ridge, members[i])).collect();
                    for pair in touching.windows(2) {
                        let (a, b) = (find(&mut parent, pair[0]), find(&mut parent, pair[1]));
                        parent[a] = b;
                    }
                }
            }
            let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for i in 0..members.len() {
                let r = find(&mut parent, i);
                comps.entry(r).or_default().push(members[i]);
            }
            let mut shards: Vec<Vec<usize>> = comps.into_values().collect();
            shards.sort();
            out.extend(shards.into_iter().map(|walls| Shard { hyperplane: h, walls }));
        }
        Ok(out)
    }

    /// Cones with the same smallest intersection of shards containing them share a block.
    pub fn shard_partition(&self, base: usize) -> Result<Partition> {
        let shards = self.shards(base)?;
        let closures: Vec<BTreeSet<usize>> = shards
            .iter()
            .map(|s| (0..self.fan.num_faces()).filter(|&f| s.walls.iter().any(|&w| self.fan.is_face_of(f, w))).collect())
            .collect();
        let mut groups: BTreeMap<Option<BTreeSet<usize>>, Vec<usize>> = BTreeMap::new();
        for f in 0..self.fan.num_faces() {
            let mut key: Option<BTreeSet<usize>> = None;
            for c in closures.iter().filter(|c| c.contains(&f)) {
                key = Some(match key {
                    None => c.clone(),
                    Some(k) => k.intersection(c).copied().collect(),
                });
            }
            groups.entry(key).or_default().push(f);
        }
        Partition::from_blocks(&self.fan, &groups.into_values().collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shard {
    pub hyperplane: usize,
    /// Codimension-1 cones making up the shard.
    pub walls: Vec<usize>,
}

/// Basis element of the wall algebra: a vector of `N` or the absorbing element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WallBasis {
    Vector([i64; 3]),
    Absorber,
}

pub const UNIT: WallBasis = WallBasis::Vector([0, 0, 0]);

/// The basis `N ∪ {0}`: the seven normals, the zero vector and the absorber.
pub fn wall_basis() -> Vec<WallBasis> {
    let mut b: Vec<WallBasis> = vec![UNIT];
    b.extend(BRAUER_NORMALS.iter().map(|&n| WallBasis::Vector(n)));
    b.push(WallBasis::Absorber);
    b
}

fn in_n(v: &[i64; 3]) -> bool {
    *v == [0, 0, 0] || BRAUER_NORMALS.contains(v)
}

pub fn wa_mul_basis(a: WallBasis, b: WallBasis) -> Result<WallBasis> {
    match (a, b) {
        (WallBasis::Vector(m), _) if !in_n(&m) => Err(Error::WrongBasis(m.to_vec())),
        (_, WallBasis::Vector(n)) if !in_n(&n) => Err(Error::WrongBasis(n.to_vec())),
        (WallBasis::Absorber, _) | (_, WallBasis::Absorber) => Ok(WallBasis::Absorber),
        (WallBasis::Vector(m), WallBasis::Vector(n)) => {
            let s = [m[0] + n[0], m[1] + n[1], m[2] + n[2]];
            Ok(if in_n(&s) { WallBasis::Vector(s) } else { WallBasis::Absorber })
        }
    }
}

/// Element of the wall algebra. The absorber is also the additive identity, so its
/// coefficient is dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WallElement(BTreeMap<[i64; 3], i64>);

impl WallElement {
    pub fn basis(b: WallBasis) -> WallElement {
        let mut e = WallElement::default();
        e.add_term(b, 1);
        e
    }

    pub fn unit() -> WallElement {
        WallElement::basis(UNIT)
    }

    fn add_term(&mut self, b: WallBasis, c: i64) {
        if let WallBasis::Vector(v) = b {
            let e = self.0.entry(v).or_insert(0);
            *e += c;
            if *e == 0 {
                self.0.remove(&v);
            }
        }
    }

    pub fn plus(&self, other: &WallElement) -> WallElement {
        let mut out = self.clone();
        for (&v, &c) in &other.0 {
            out.add_term(WallBasis::Vector(v), c);
        }
        out
    }

    pub fn minus(&self, other: &WallElement) -> WallElement {
        let mut out = self.clone();
        for (&v, &c) in &other.0 {
            out.add_term(WallBasis::Vector(v), -c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<[i64; 3], i64> {
        &self.0
    }
}

pub fn wa_mul(a: &WallElement, b: &WallElement) -> Result<WallElement> {
    let mut out = WallElement::default();
    for (&m, &c) in &a.0 {
        for (&n, &d) in &b.0 {
            out.add_term(wa_mul_basis(WallBasis::Vector(m), WallBasis::Vector(n))?, c * d);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallAlgebraReport {
    pub associative: bool,
    pub commutative: bool,
    pub generators_distinct: bool,
    /// Index of the first relator whose image is not the unit.
    pub failed_relator: Option<usize>,
}

impl WallAlgebraReport {
    pub fn passes(&self) -> bool {
        self.associative && self.commutative && self.generators_distinct && self.failed_relator.is_none()
    }
}

pub fn wa_associative() -> bool {
    let b = wall_basis();
    b.iter().all(|&x| {
        b.iter().all(|&y| {
            b.iter().all(|&z| {
                let l = wa_mul_basis(wa_mul_basis(x, y).unwrap(), z).unwrap();
                let r = wa_mul_basis(x, wa_mul_basis(y, z).unwrap()).unwrap();
                l == r
            })
        })
    })
}

pub fn wa_commutative() -> bool {
    let b = wall_basis();
    b.iter().all(|&x| b.iter().all(|&y| wa_mul_basis(x, y).unwrap() == wa_mul_basis(y, x).unwrap()))
}

/// Image of a word under `X_m ↦ 𝟎 ⊞ m`, `X_m⁻¹ ↦ 𝟎 ⊟ m`.
pub fn wa_image(word: &Word, normals: &[[i64; 3]]) -> Result<WallElement> {
    let mut acc = WallElement::unit();
    for l in &word.0 {
        let m = WallElement::basis(WallBasis::Vector(normals[l.gen]));
        let f = if l.inv { WallElement::unit().minus(&m) } else { WallElement::unit().plus(&m) };
        acc = wa_mul(&acc, &f)?;
    }
    Ok(acc)
}

/// Checks that `φ` is a homomorphism from the picture group to the wall algebra and
/// separates the generators.
pub fn wa_certify(fan: &Fan, partition: &Partition, group: &PictureGroup) -> Result<WallAlgebraReport> {
    let to3 = |v: &IVec| -> Option<[i64; 3]> {
        if v.len() != 3 {
            return None;
        }
        let w: Vec<i64> = v.iter().map(|x| i64::try_from(x).ok()).collect::<Option<_>>()?;
        Some([w[0], w[1], w[2]])
    };
    let mut fan_normals: BTreeSet<[i64; 3]> = BTreeSet::new();
    for w in fan.walls() {
        fan_normals.insert(to3(&fan.wall_normal(w)).ok_or(Error::WrongArrangement)?);
    }
    if fan_normals != BRAUER_NORMALS.iter().copied().collect() {
        return Err(Error::WrongArrangement);
    }
    let normals: Vec<[i64; 3]> = group
        .blocks
        .iter()
        .map(|&b| to3(&fan.wall_normal(partition.block(b)[0])).expect("checked"))
        .collect();
    let images: Vec<WallElement> = (0..normals.len()).map(|i| wa_image(&Word::gen(i), &normals)).collect::<Result<_>>()?;
    let mut generators_distinct = images.iter().all(|e| *e != WallElement::unit());
    let distinct_images: HashMap<Vec<([i64; 3], i64)>, usize> =
        images.iter().map(|e| (e.0.iter().map(|(k, v)| (*k, *v)).collect(), 0)).collect();
    let distinct_normals: BTreeSet<[i64; 3]> = normals.iter().copied().collect();
    generators_distinct &= distinct_images.len() == distinct_normals.len();
    let mut failed_relator = None;
    for (i, r) in group.presentation.relators.iter().enumerate() {
        if wa_image(r, &normals)? != WallElement::unit() {
            failed_relator = Some(i);
            break;
        }
    }
    Ok(WallAlgebraReport { associative: wa_associative(), commutative: wa_commutative(), generators_distinct, failed_relator })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_arrangement() {
        let a = Arrangement::new(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let af = arrangement_fan(&a).unwrap();
        assert_eq!(af.fan.chambers().len(), 4);
        let fp = af.flat_partition().unwrap();
        assert_eq!(fp.num_blocks(), 4);
        let base = af.chamber_containing(&[1, 1]).unwrap();
        assert_eq!(af.shards(base).unwrap().len(), 2);
        assert_eq!(af.shard_partition(base).unwrap(), fp);
        let p = af.poset_of_regions(base).unwrap();
        assert_eq!(p.minimum(), Some(base));
        assert_eq!(p.maximum(), Some(af.chamber_containing(&[-1, -1]).unwrap()));
    }

    #[test]
    fn three_lines_cut() {
        let a = Arrangement::new(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let af = arrangement_fan(&a).unwrap();
        assert_eq!(af.fan.chambers().len(), 6);
        let base = af.chamber_containing(&[2, 1]).unwrap();
        let base_basic = af.basic(&(0..3).collect(), base);
        let shards = af.shards(base).unwrap();
        assert_eq!(shards.len(), 4);
        let cut: Vec<usize> = (0..3).filter(|h| !base_basic.contains(h)).collect();
        assert_eq!(shards.iter().filter(|s| s.hyperplane == cut[0]).count(), 2);
        let sp = af.shard_partition(base).unwrap();
        let fp = af.flat_partition().unwrap();
        assert!(sp.refines(&fp).unwrap() && sp != fp);
        assert!(sp.is_admissible(&af.fan).unwrap().admissible);
    }

    #[test]
    fn one_dimensional() {
        let af = arrangement_fan(&Arrangement::new(1, &[vec![1]]).unwrap()).unwrap();
        assert_eq!(af.flat_partition().unwrap().num_blocks(), 2);
    }

    #[test]
    fn wall_algebra_rules() {
        let v = |x: [i64; 3]| WallBasis::Vector(x);
        assert_eq!(wa_mul_basis(v([1, 1, 0]), v([0, 0, 1])).unwrap(), v([1, 1, 1]));
        assert_eq!(wa_mul_basis(v([1, 1, 0]), v([0, 1, 1])).unwrap(), WallBasis::Absorber);
        assert_eq!(wa_mul_basis(UNIT, v([0, 1, 1])).unwrap(), v([0, 1, 1]));
        assert_eq!(wa_mul_basis(WallBasis::Absorber, v([0, 1, 1])).unwrap(), WallBasis::Absorber);
        assert!(wa_mul_basis(v([2, 0, 0]), UNIT).is_err());
        assert!(wa_associative() && wa_commutative());
        let x = Word::gen(0);
        assert_eq!(wa_image(&x.concat(&x.inverse()), &[[1, 0, 0]]).unwrap(), WallElement::unit());
        assert_ne!(wa_image(&x, &[[1, 0, 0]]).unwrap(), WallElement::unit());
    }

    #[test]
    fn unknown_face_and_chamber() {
        let a = Arrangement::new(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let af = arrangement_fan(&a).unwrap();
        assert!(matches!(af.support_of_cone(&[0, 3]), Err(Error::UnknownFace(_))));
        assert!(matches!(af.separating_set(0, 1), Err(Error::NotAChamber(_))));
        assert!(af.support(0).unwrap().hyperplanes.len() == 2);
    }
}
