//! The category of a partitioned fan and its cubical structure.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::fan::{CanonicalCone, Fan};
use crate::partition::{star_lookup, Partition};

/// A morphism class `[f_{στ}]`, identified by its blocks and the canonical cone `π_σ(τ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    pub rank: usize,
    pub cone: CanonicalCone,
    /// All inclusions `(σ, τ)` in the class, as face ids.
    pub reps: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct Category {
    fan: Fan,
    partition: Partition,
    morphisms: Vec<Morphism>,
    rep_of: HashMap<(usize, usize), usize>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    identities: Vec<usize>,
    lookup: Vec<HashMap<CanonicalCone, usize>>,
    composition: HashMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeObject {
    /// Indices into `FactorizationCube::rays`.
    pub subset: Vec<usize>,
    pub first: usize,
    pub second: usize,
    pub middle: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCube {
    pub anchor: usize,
    /// Rays of `τ ∖ σ` for the chosen representative.
    pub rays: Vec<usize>,
    /// Indexed by subset bitmask.
    pub objects: Vec<CubeObject>,
    /// Pairs of object indices `(S, S ∪ {i})`.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: u8,
    pub morphisms: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    /// Number of instances examined per axiom.
    pub checked: [usize; 5],
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn axiom_passes(&self, axiom: u8) -> bool {
        !self.violations.iter().any(|v| v.axiom == axiom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    pub counterexample: Option<Vec<usize>>,
}

impl Category {
    pub fn new(fan: &Fan, partition: &Partition) -> Result<Category> {
        let adm = partition.is_admissible(fan)?;
        if !adm.admissible {
            return Err(Error::NotAdmissible(adm.witness.map(|w| w.map(|i| fan.face(i).clone()))));
        }
        let mut classes: BTreeMap<(usize, usize, usize, CanonicalCone), Vec<(usize, usize)>> = BTreeMap::new();
        for s in 0..fan.num_faces() {
            for &t in fan.star(s) {
                let key = (
                    partition.block_of(s),
                    partition.block_of(t),
                    fan.face_dim(t) - fan.face_dim(s),
                    fan.projected(s, t)?.clone(),
                );
                classes.entry(key).or_default().push((s, t));
            }
        }
        let nb = partition.num_blocks();
        let mut morphisms = Vec::with_capacity(classes.len());
        let mut rep_of = HashMap::new();
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut outgoing = vec![Vec::new(); nb];
        let mut incoming = vec![Vec::new(); nb];
        let mut identities = vec![usize::MAX; nb];
        for ((src, tgt, rank, cone), reps) in classes {
            let id = morphisms.len();
            for &r in &reps {
                rep_of.insert(r, id);
            }
            homs.entry((src, tgt)).or_default().push(id);
            outgoing[src].push(id);
            incoming[tgt].push(id);
            if rank == 0 {
                identities[src] = id;
            }
            morphisms.push(Morphism { src, tgt, rank, cone, reps });
        }
        let mut cat = Category {
            fan: fan.clone(),
            partition: partition.clone(),
            morphisms,
            rep_of,
            homs,
            outgoing,
            incoming,
            identities,
            lookup: star_lookup(fan),
            composition: HashMap::new(),
        };
        let mut composition = HashMap::new();
        for f in 0..cat.morphisms.len() {
            for &g in &cat.outgoing[cat.morphisms[f].tgt] {
                let (k2, t2) = cat.morphisms[g].reps[0];
                let mut result = None;
                for &(s1, k1b) in &cat.morphisms[f].reps {
                    let r = cat.compose_reps(s1, k1b, k2, t2).ok_or(Error::NotAdmissible(None))?;
                    match result {
                        None => result = Some(r),
                        Some(prev) if prev != r => return Err(Error::NotAdmissible(None)),
                        _ => {}
                    }
                }
                composition.insert((f, g), result.expect("nonempty class"));
            }
        }
        cat.composition = composition;
        Ok(cat)
    }

    /// Composite of `f_{σ₁κ₁}` followed by `f_{κ₂τ₂}` for `κ₁ ∼ κ₂`, by matching projected cones.
    pub fn compose_reps(&self, s1: usize, k1: usize, k2: usize, t2: usize) -> Option<usize> {
        let key = self.fan.projected(k2, t2).ok()?;
        let t1 = *self.lookup[k1].get(key)?;
        self.rep_of.get(&(s1, t1)).copied()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn num_objects(&self) -> usize {
        self.partition.num_blocks()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, id: usize) -> &Morphism {
        &self.morphisms[id]
    }

    pub fn identity(&self, block: usize) -> usize {
        self.identities[block]
    }

    /// Class of the inclusion `σ ⊆ τ`.
    pub fn class_of(&self, s: usize, t: usize) -> Result<usize> {
        self.rep_of.get(&(s, t)).copied().ok_or_else(|| Error::UnknownCone(self.fan.face(t).clone()))
    }

    pub fn hom(&self, src: usize, tgt: usize) -> &[usize] {
        self.homs.get(&(src, tgt)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn homs(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.homs
    }

    pub fn outgoing(&self, block: usize) -> &[usize] {
        &self.outgoing[block]
    }

    pub fn incoming(&self, block: usize) -> &[usize] {
        &self.incoming[block]
    }

    /// `g ∘ f` for `f` followed by `g`.
    pub fn compose(&self, f: usize, g: usize) -> Result<usize> {
        if f >= self.morphisms.len() || g >= self.morphisms.len() {
            return Err(Error::BadIndex(f.max(g)));
        }
        self.composition.get(&(f, g)).copied().ok_or(Error::NotComposable)
    }

    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.composition.keys().copied().collect();
        v.sort_unstable();
        v
    }

    #[doc(hidden)]
    pub fn override_composition(&mut self, f: usize, g: usize, result: usize) {
        self.composition.insert((f, g), result);
    }

    /// First triple `(f, g, h)` where `h ∘ (g ∘ f) ≠ (h ∘ g) ∘ f`.
    pub fn check_associativity(&self) -> Option<[usize; 3]> {
        for (f, g) in self.composable_pairs() {
            let gf = self.composition[&(f, g)];
            for &h in &self.outgoing[self.morphisms[g].tgt] {
                let hg = self.composition[&(g, h)];
                if self.composition.get(&(gf, h)) != self.composition.get(&(f, hg)) {
                    return Some([f, g, h]);
                }
            }
        }
        None
    }

    /// Composites do not depend on the chosen representatives of either factor.
    pub fn check_well_defined(&self) -> Option<(usize, usize)> {
        for (f, g) in self.composable_pairs() {
            let expected = self.composition[&(f, g)];
            for &(s1, k1) in &self.morphisms[f].reps {
                for &(k2, t2) in &self.morphisms[g].reps {
                    if self.compose_reps(s1, k1, k2, t2) != Some(expected) {
                        return Some((f, g));
                    }
                }
            }
        }
        None
    }

    pub fn factorization_cube(&self, f: usize) -> FactorizationCube {
        let (s, t) = self.morphisms[f].reps[0];
        self.factorization_cube_at(f, s, t)
    }

    /// The cube `S ↦ (σ → cone{σ, v_i : i ∈ S} → τ)` for the representative `(σ, τ)`.
    pub fn factorization_cube_at(&self, f: usize, s: usize, t: usize) -> FactorizationCube {
        let sigma = self.fan.face(s);
        let rays: Vec<usize> = self.fan.face(t).iter().copied().filter(|i| !sigma.contains(i)).collect();
        let k = rays.len();
        let mut objects = Vec::with_capacity(1 << k);
        for mask in 0usize..(1 << k) {
            let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let mut cone = sigma.clone();
            cone.extend(subset.iter().map(|&i| rays[i]));
            let mid = self.fan.id_of(&cone).expect("face of τ");
            objects.push(CubeObject {
                subset,
                first: self.rep_of[&(s, mid)],
                second: self.rep_of[&(mid, t)],
                middle: self.partition.block_of(mid),
            });
        }
        let mut edges = Vec::new();
        for mask in 0usize..(1 << k) {
            for i in 0..k {
                if mask >> i & 1 == 0 {
                    edges.push((mask, mask | 1 << i));
                }
            }
        }
        FactorizationCube { anchor: f, rays, objects, edges }
    }

    /// All factorizations `(g, h)` with `h ∘ g = f`, read off the composition table.
    pub fn factorizations(&self, f: usize) -> Vec<(usize, usize)> {
        let m = &self.morphisms[f];
        let mut out = Vec::new();
        for &g in &self.outgoing[m.src] {
            for &h in self.hom(self.morphisms[g].tgt, m.tgt) {
                if self.composition.get(&(g, h)) == Some(&f) {
                    out.push((g, h));
                }
            }
        }
        out
    }

    /// Morphisms `u` of the factorization category from `(g, h)` to `(g2, h2)`.
    fn faq_morphisms(&self, a: (usize, usize), b: (usize, usize)) -> Vec<usize> {
        self.hom(self.morphisms[a.0].tgt, self.morphisms[b.0].tgt)
            .iter()
            .copied()
            .filter(|&u| self.composition.get(&(a.0, u)) == Some(&b.0) && self.composition.get(&(u, b.1)) == Some(&a.1))
            .collect()
    }

    pub fn first_factors(&self, f: usize) -> Result<Vec<usize>> {
        let m = &self.morphisms[f];
        if m.rank == 0 {
            return Err(Error::RankZero);
        }
        let (s, t) = m.reps[0];
        let sigma = self.fan.face(s);
        let mut out: Vec<usize> = self
            .fan
            .face(t)
            .iter()
            .filter(|i| !sigma.contains(i))
            .map(|&v| {
                let mut c = sigma.clone();
                c.push(v);
                self.rep_of[&(s, self.fan.id_of(&c).expect("face"))]
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn last_factors(&self, f: usize) -> Result<Vec<usize>> {
        let m = &self.morphisms[f];
        if m.rank == 0 {
            return Err(Error::RankZero);
        }
        let (s, t) = m.reps[0];
        let sigma = self.fan.face(s);
        let tau = self.fan.face(t);
        let mut out: Vec<usize> = tau
            .iter()
            .filter(|i| !sigma.contains(i))
            .map(|&v| {
                let lambda: Vec<usize> = tau.iter().copied().filter(|&i| i != v).collect();
                self.rep_of[&(self.fan.id_of(&lambda).expect("face"), t)]
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn check_cubical(&self) -> AxiomReport {
        let mut rep = AxiomReport::default();
        for (f, g) in self.composable_pairs() {
            rep.checked[0] += 1;
            let gf = self.composition[&(f, g)];
            if self.morphisms[gf].rank != self.morphisms[f].rank + self.morphisms[g].rank {
                rep.violations.push(AxiomViolation {
                    axiom: 1,
                    morphisms: vec![f, g, gf],
                    detail: "rank is not additive".into(),
                });
            }
        }
        let mut by_first: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut by_last: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in 0..self.morphisms.len() {
            let k = self.morphisms[f].rank;
            let cube = self.factorization_cube(f);
            let faq: BTreeSet<(usize, usize)> = self.factorizations(f).into_iter().collect();
            let cube_objs: Vec<(usize, usize)> = cube.objects.iter().map(|o| (o.first, o.second)).collect();
            let cube_set: BTreeSet<(usize, usize)> = cube_objs.iter().copied().collect();
            rep.checked[1] += 1;
            rep.checked[2] += 1;
            if faq.len() != 1 << k || faq != cube_set {
                rep.violations.push(AxiomViolation {
                    axiom: 2,
                    morphisms: vec![f],
                    detail: format!("{} factorizations for rank {}", faq.len(), k),
                });
                continue;
            }
            let mut cube_ok = true;
            let mut at_most_one = true;
            for (a, oa) in cube_objs.iter().enumerate() {
                for (b, ob) in cube_objs.iter().enumerate() {
                    let n = self.faq_morphisms(*oa, *ob).len();
                    at_most_one &= n <= 1;
                    cube_ok &= (n == 1) == (a & b == a);
                }
            }
            if !cube_ok {
                rep.violations.push(AxiomViolation {
                    axiom: 2,
                    morphisms: vec![f],
                    detail: "factorization category is not the subset poset".into(),
                });
            }
            let middles: BTreeSet<usize> = cube.objects.iter().map(|o| o.middle).collect();
            if middles.len() != cube.objects.len() || !at_most_one {
                rep.violations.push(AxiomViolation {
                    axiom: 3,
                    morphisms: vec![f],
                    detail: "middle-object functor is not an embedding".into(),
                });
            }
            if k == 0 {
                continue;
            }
            let mut firsts: Vec<usize> =
                faq.iter().filter(|(g, _)| self.morphisms[*g].rank == 1).map(|&(g, _)| g).collect();
            let mut lasts: Vec<usize> =
                faq.iter().filter(|(_, h)| self.morphisms[*h].rank == 1).map(|&(_, h)| h).collect();
            firsts.sort_unstable();
            lasts.sort_unstable();
            for (axiom, factors, formula, seen) in [
                (4u8, firsts, self.first_factors(f), &mut by_first),
                (5u8, lasts, self.last_factors(f), &mut by_last),
            ] {
                rep.checked[axiom as usize - 1] += 1;
                let mut distinct = factors.clone();
                distinct.dedup();
                if distinct.len() != k || formula.ok().as_ref() != Some(&factors) {
                    rep.violations.push(AxiomViolation {
                        axiom,
                        morphisms: vec![f],
                        detail: "factors do not match the generating rays".into(),
                    });
                } else if let Some(&other) = seen.get(&factors) {
                    rep.violations.push(AxiomViolation {
                        axiom,
                        morphisms: vec![other, f],
                        detail: "two morphisms share their factors".into(),
                    });
                } else {
                    seen.insert(factors, f);
                }
            }
        }
        rep
    }

    /// Every set of pairwise compatible rank-1 morphisms into an object is the last-factor
    /// set of a single morphism.
    pub fn check_last_factor_compatibility(&self) -> Compatibility {
        let n = self.fan.dim();
        for block in 0..self.num_objects() {
            let rank1: Vec<usize> = self.incoming[block].iter().copied().filter(|&m| self.morphisms[m].rank == 1).collect();
            let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
            let mut last_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
            for &m in &self.incoming[block] {
                let r = self.morphisms[m].rank;
                if r < 2 {
                    continue;
                }
                let lf = self.last_factors(m).expect("rank at least two");
                if r == 2 {
                    edges.insert((lf[0], lf[1]));
                }
                last_sets.insert(lf);
            }
            let adjacent = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
            let mut found: Option<Vec<usize>> = None;
            let mut stack: Vec<(Vec<usize>, usize)> = (0..rank1.len()).map(|i| (vec![rank1[i]], i + 1)).collect();
            while let Some((clique, next)) = stack.pop() {
                if clique.len() >= 3 && !last_sets.contains(&clique) {
                    found = Some(clique.clone());
                    break;
                }
                if clique.len() > n {
                    continue;
                }
                for j in (next..rank1.len()).rev() {
                    let c = rank1[j];
                    if clique.iter().all(|&x| adjacent(x, c)) {
                        let mut ext = clique.clone();
                        ext.push(c);
                        stack.push((ext, j + 1));
                    }
                }
            }
            if found.is_some() {
                return Compatibility { compatible: false, counterexample: found };
            }
        }
        Compatibility { compatible: true, counterexample: None }
    }

    pub fn block_label(&self, block: usize) -> String {
        self.partition
            .block(block)
            .iter()
            .map(|&c| cone_label(self.fan.face(c)))
            .collect::<Vec<_>>()
            .join(" ~ ")
    }

    /// Graphviz digraph of the rank-1 morphisms.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph category {\n  rankdir=BT;\n");
        for b in 0..self.num_objects() {
            let _ = writeln!(out, "  b{} [label=\"{}\"];", b, self.block_label(b));
        }
        for (id, m) in self.morphisms.iter().enumerate() {
            if m.rank == 1 {
                let ray: Vec<String> = m.cone[0].iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "  b{} -> b{} [label=\"m{} ({})\"];", m.src, m.tgt, id, ray.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn cone_label(cone: &[usize]) -> String {
    if cone.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = cone.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(","))
}
