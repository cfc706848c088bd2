//! Potential identifications, admissible partitions and their lattice.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fan::{CanonicalCone, Fan, ProjectedFan};
use crate::linalg::QVec;

/// The classes `E_σ`: cones with equal span and equal projected star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentTable {
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl IdentTable {
    pub fn class_of(&self, face: usize) -> usize {
        self.class_of[face]
    }

    pub fn possible(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

pub fn potential_identifications(fan: &Fan) -> IdentTable {
    let mut keys: BTreeMap<(Vec<QVec>, ProjectedFan), Vec<usize>> = BTreeMap::new();
    for id in 0..fan.num_faces() {
        keys.entry((fan.span_key(id).clone(), fan.project_star(id))).or_default().push(id);
    }
    let mut classes: Vec<Vec<usize>> = keys.into_values().collect();
    classes.sort();
    let mut class_of = vec![0; fan.num_faces()];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            class_of[m] = c;
        }
    }
    IdentTable { classes, class_of }
}

/// A partition of the cones of a fan. Blocks are sorted and ordered by their least face id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    fan: u64,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    /// `(σ₁, σ₂, τ₁, τ₂)` with `σ₁ ∼ σ₂`, `π_{σ₁}(τ₁) = π_{σ₂}(τ₂)` but `τ₁ ≁ τ₂`.
    pub witness: Option<[usize; 4]>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|i| self.find(i)).collect()
    }
}

impl Partition {
    fn from_labels(fan: u64, labels: &[usize]) -> Partition {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(i);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![0; labels.len()];
        for (b, members) in blocks.iter().enumerate() {
            for &m in members {
                block_of[m] = b;
            }
        }
        Partition { fan, blocks, block_of }
    }

    pub fn finest(fan: &Fan) -> Partition {
        let labels: Vec<usize> = (0..fan.num_faces()).collect();
        Partition::from_labels(fan.fingerprint(), &labels)
    }

    /// The partition into the classes `E_σ`.
    pub fn coarsest(fan: &Fan) -> Partition {
        let idents = potential_identifications(fan);
        let labels: Vec<usize> = (0..fan.num_faces()).map(|i| idents.class_of(i)).collect();
        Partition::from_labels(fan.fingerprint(), &labels)
    }

    /// Build from listed blocks of face ids; unlisted faces become singletons.
    pub fn from_blocks(fan: &Fan, blocks: &[Vec<usize>]) -> Result<Partition> {
        let n = fan.num_faces();
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            for &f in block {
                if f >= n {
                    return Err(Error::BadIndex(f));
                }
                if labels[f].is_some() {
                    return Err(Error::Parse(format!("face {:?} listed twice", fan.face(f))));
                }
                labels[f] = Some(n + b);
            }
        }
        let labels: Vec<usize> = labels.iter().enumerate().map(|(i, l)| l.unwrap_or(i)).collect();
        Ok(Partition::from_labels(fan.fingerprint(), &labels))
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_of(&self, face: usize) -> usize {
        self.block_of[face]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn num_faces(&self) -> usize {
        self.block_of.len()
    }

    pub fn belongs_to(&self, fan: &Fan) -> bool {
        self.fan == fan.fingerprint() && self.block_of.len() == fan.num_faces()
    }

    fn check_fan(&self, fan: &Fan) -> Result<()> {
        if self.belongs_to(fan) {
            Ok(())
        } else {
            Err(Error::FanMismatch)
        }
    }

    /// Every block lies inside one class `E_σ`.
    pub fn check_possible(&self, fan: &Fan, idents: &IdentTable) -> Result<()> {
        self.check_fan(fan)?;
        for block in &self.blocks {
            if let Some(&bad) = block.iter().find(|&&m| !idents.possible(block[0], m)) {
                return Err(Error::PossibleIdentViolation(fan.face(block[0]).clone(), fan.face(bad).clone()));
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self, fan: &Fan) -> Result<Admissibility> {
        self.check_possible(fan, &potential_identifications(fan))?;
        let lookup = star_lookup(fan);
        for block in &self.blocks {
            for (i, &s1) in block.iter().enumerate() {
                for &s2 in &block[i + 1..] {
                    for &t1 in fan.star(s1) {
                        let key = fan.projected(s1, t1)?;
                        if let Some(&t2) = lookup[s2].get(key) {
                            if !self.same_block(t1, t2) {
                                return Ok(Admissibility { admissible: false, witness: Some([s1, s2, t1, t2]) });
                            }
                        }
                    }
                }
            }
        }
        Ok(Admissibility { admissible: true, witness: None })
    }

    /// Smallest admissible partition containing the seed pairs.
    pub fn closure(fan: &Fan, seeds: &[(usize, usize)]) -> Result<Partition> {
        let idents = potential_identifications(fan);
        let n = fan.num_faces();
        for &(a, b) in seeds {
            if a >= n || b >= n {
                return Err(Error::BadIndex(a.max(b)));
            }
            if !idents.possible(a, b) {
                return Err(Error::SeedNotPossible(fan.face(a).clone(), fan.face(b).clone()));
            }
        }
        let lookup = star_lookup(fan);
        let mut uf = UnionFind::new(n);
        for &(a, b) in seeds {
            uf.union(a, b);
        }
        loop {
            let mut changed = false;
            let labels = uf.labels();
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, &l) in labels.iter().enumerate() {
                groups.entry(l).or_default().push(i);
            }
            for block in groups.values().filter(|b| b.len() > 1) {
                let s1 = block[0];
                for &s2 in &block[1..] {
                    for &t1 in fan.star(s1) {
                        if let Some(&t2) = lookup[s2].get(fan.projected(s1, t1)?) {
                            changed |= uf.union(t1, t2);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let p = Partition::from_labels(fan.fingerprint(), &uf.labels());
        p.check_possible(fan, &idents)?;
        Ok(p)
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_fan(other)?;
        let mut keys: HashMap<(usize, usize), usize> = HashMap::new();
        let labels: Vec<usize> = (0..self.num_faces())
            .map(|i| {
                let k = keys.len();
                *keys.entry((self.block_of[i], other.block_of[i])).or_insert(k)
            })
            .collect();
        Ok(Partition::from_labels(self.fan, &labels))
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.same_fan(other)?;
        let mut uf = UnionFind::new(self.num_faces());
        for block in self.blocks.iter().chain(&other.blocks) {
            for &m in &block[1..] {
                uf.union(block[0], m);
            }
        }
        Ok(Partition::from_labels(self.fan, &uf.labels()))
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.same_fan(other)?;
        Ok(self.blocks.iter().all(|b| b.iter().all(|&m| other.same_block(b[0], m))))
    }

    fn same_fan(&self, other: &Partition) -> Result<()> {
        if self.fan == other.fan && self.block_of.len() == other.block_of.len() {
            Ok(())
        } else {
            Err(Error::FanMismatch)
        }
    }
}

/// For each face `σ`, the map from `π_σ(τ)` back to `τ ∈ star(σ)`.
pub fn star_lookup(fan: &Fan) -> Vec<HashMap<CanonicalCone, usize>> {
    (0..fan.num_faces())
        .map(|s| fan.star(s).iter().map(|&t| (fan.projected(s, t).expect("star").clone(), t)).collect())
        .collect()
}

pub const DEFAULT_ENUMERATION_LIMIT: usize = 16;
const MAX_CANDIDATES: u128 = 5_000_000;

fn bell(n: usize) -> u128 {
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap().saturating_add(*x);
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Restricted growth strings of length `n`: all set partitions of `n` items.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { max + 1 };
        for v in 0..=top {
            cur.push(v);
            rec(n, max.max(v), cur, out);
            cur.pop();
        }
    }
    rec(n, 0, &mut cur, &mut out);
    out
}

/// Every admissible partition of a small fan.
pub fn enumerate_admissible(fan: &Fan, limit: usize) -> Result<Vec<Partition>> {
    if fan.num_faces() > limit {
        return Err(Error::TooLarge(format!("{} cones exceed the limit of {}", fan.num_faces(), limit)));
    }
    let idents = potential_identifications(fan);
    let total = idents.classes.iter().fold(1u128, |acc, c| acc.saturating_mul(bell(c.len())));
    if total > MAX_CANDIDATES {
        return Err(Error::TooLarge(format!("{total} candidate partitions")));
    }
    let per_class: Vec<Vec<Vec<usize>>> = idents.classes.iter().map(|c| set_partitions(c.len())).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_class.len()];
    loop {
        let mut labels = vec![0usize; fan.num_faces()];
        for (ci, class) in idents.classes.iter().enumerate() {
            let rgs = &per_class[ci][choice[ci]];
            for (k, &m) in class.iter().enumerate() {
                labels[m] = class[rgs.iter().position(|&v| v == rgs[k]).unwrap()];
            }
        }
        let p = Partition::from_labels(fan.fingerprint(), &labels);
        if p.is_admissible(fan)?.admissible {
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < per_class[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn ids(fan: &Fan, cones: &[&[usize]]) -> Vec<usize> {
        let mut v: Vec<usize> = cones.iter().map(|c| fan.id_of(c).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn bell_numbers() {
        assert_eq!((0..6).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52]);
        assert_eq!(set_partitions(4).len(), 15);
    }

    #[test]
    fn idents_of_square() {
        let f = builtins::fan_sq();
        let t = potential_identifications(&f);
        let expected = vec![
            vec![0],
            ids(&f, &[&[0], &[2]]),
            ids(&f, &[&[1], &[3]]),
            ids(&f, &[&[0, 1], &[0, 3], &[1, 2], &[2, 3]]),
        ];
        let mut got = t.classes.clone();
        got.sort();
        let mut expected = expected;
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn single_quadrant_is_rigid() {
        let f = Fan::from_ints(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert!(potential_identifications(&f).classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn hirzebruch_witness() {
        let f = builtins::fan_hzb(1);
        let s2 = f.id_of(&[1]).unwrap();
        let s4 = f.id_of(&[3]).unwrap();
        let p = Partition::from_blocks(&f, &[vec![s2, s4]]).unwrap();
        let a = p.is_admissible(&f).unwrap();
        assert!(!a.admissible);
        assert_eq!(a.witness, Some([s2, s4, f.id_of(&[0, 1]).unwrap(), f.id_of(&[0, 3]).unwrap()]));
        assert!(Partition::finest(&f).is_admissible(&f).unwrap().admissible);
    }

    #[test]
    fn crossing_blocks_rejected() {
        let f = builtins::fan_sq();
        let p = Partition::from_blocks(&f, &[vec![1, 2]]).unwrap();
        assert!(matches!(p.is_admissible(&f), Err(Error::PossibleIdentViolation(..))));
        assert!(matches!(Partition::closure(&f, &[(1, 2)]), Err(Error::SeedNotPossible(..))));
    }

    #[test]
    fn lattice_bounds() {
        let f = builtins::fan_hzb(1);
        let p1 = Partition::closure(&f, &[(f.id_of(&[1]).unwrap(), f.id_of(&[3]).unwrap())]).unwrap();
        let fin = Partition::finest(&f);
        assert_eq!(p1.meet(&fin).unwrap(), fin);
        assert_eq!(p1.join(&fin).unwrap(), p1);
        assert!(fin.refines(&p1).unwrap());
        assert!(!p1.refines(&fin).unwrap());
        let other = Partition::finest(&builtins::fan_sq());
        assert!(matches!(p1.meet(&other), Err(Error::FanMismatch)));
    }

    #[test]
    fn enumeration_counts() {
        let sq = enumerate_admissible(&builtins::fan_sq(), DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert!(sq.contains(&Partition::finest(&builtins::fan_sq())));
        assert!(sq.contains(&Partition::coarsest(&builtins::fan_sq())));
        assert!(matches!(
            enumerate_admissible(&builtins::fan_sq(), 4),
            Err(Error::TooLarge(_))
        ));
    }
}
