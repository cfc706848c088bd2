//! Picture groups of a partitioned fan with a fan poset, and the functor `Ψ` into them.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::category::Category;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::group::{Letter, Presentation, Word};
use crate::partition::Partition;
use crate::poset::{Cover, FanPoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Chain relators from the facial interval of every cone.
    Full,
    /// Only codimension-2 facial intervals; valid for polygonal lattices.
    Codim2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PictureGroup {
    pub presentation: Presentation,
    /// Partition block of each generator.
    pub blocks: Vec<usize>,
    pub type1: usize,
    pub type2: usize,
}

impl PictureGroup {
    pub fn generator_of(&self, block: usize) -> Option<usize> {
        self.blocks.iter().position(|&b| b == block)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub holds: bool,
    /// Two parallel morphisms that could not be separated.
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorReport {
    pub passed: bool,
    pub checked: usize,
    pub failure: Option<(usize, usize)>,
    pub reason: Option<String>,
}

/// Blocks of codimension-1 cones, in block order.
pub fn wall_blocks(fan: &Fan, partition: &Partition) -> Vec<usize> {
    (0..partition.num_blocks())
        .filter(|&b| fan.face_dim(partition.block(b)[0]) + 1 == fan.dim())
        .collect()
}

/// Symbol for a block: the sorted primitive rays of its least member.
pub fn generator_name(fan: &Fan, members: &[usize]) -> String {
    let best = members.iter().map(|&c| fan.canonical_cone(c)).min().unwrap_or_default();
    let parts: Vec<String> = best
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("X[{}]", parts.join("|"))
}

fn chamber_name(fan: &Fan, c: usize) -> String {
    let parts: Vec<String> = fan
        .canonical_cone(c)
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("g[{}]", parts.join("|"))
}

struct Labels {
    gen_of: HashMap<usize, usize>,
}

impl Labels {
    fn new(blocks: &[usize]) -> Labels {
        Labels { gen_of: blocks.iter().enumerate().map(|(i, &b)| (b, i)).collect() }
    }

    fn letter(&self, partition: &Partition, wall: usize) -> Letter {
        Letter::new(self.gen_of[&partition.block_of(wall)], false)
    }

    fn chain(&self, partition: &Partition, chain: &[Cover]) -> Word {
        Word(chain.iter().map(|c| self.letter(partition, c.wall)).collect())
    }
}

fn require_intervals(fan: &Fan, poset: &FanPoset) -> Result<()> {
    for c in 0..fan.num_faces() {
        if poset.facial_interval(fan, c).is_err() {
            return Err(Error::PosetInvalid(format!(
                "star of {} is not an interval",
                crate::category::cone_label(fan.face(c))
            )));
        }
    }
    Ok(())
}

/// Canonical maximal chain from `lo` up to `hi` inside the star of `s`: at each step the
/// cover whose upper chamber has the least projection to `s`.
fn canonical_chain(fan: &Fan, poset: &FanPoset, s: usize, lo: usize, hi: usize) -> Vec<Cover> {
    let mut out = Vec::new();
    let mut cur = lo;
    while cur != hi {
        let next = poset
            .upper_covers(cur)
            .into_iter()
            .filter(|c| poset.leq(c.upper, hi))
            .min_by(|a, b| fan.projected(s, a.upper).ok().cmp(&fan.projected(s, b.upper).ok()))
            .copied()
            .expect("cover towards upper bound");
        out.push(next);
        cur = next.upper;
    }
    out
}

/// Chain `σ⁻ → κ⁻` for the inclusion `σ ⊆ κ`.
fn rep_chain(fan: &Fan, poset: &FanPoset, s: usize, k: usize) -> Result<Vec<Cover>> {
    let broken = |c: usize| Error::IntervalBroken(fan.face(c).clone());
    let fs = poset.facial_interval(fan, s).map_err(|_| broken(s))?;
    let fk = poset.facial_interval(fan, k).map_err(|_| broken(k))?;
    if !fs.members.contains(&fk.min) || !poset.leq(fs.min, fk.min) {
        return Err(broken(k));
    }
    Ok(canonical_chain(fan, poset, s, fs.min, fk.min))
}

pub fn picture_group(cat: &Category, poset: &FanPoset, mode: Mode, chain_limit: usize) -> Result<PictureGroup> {
    let fan = cat.fan();
    let partition = cat.partition();
    require_intervals(fan, poset)?;
    let blocks = wall_blocks(fan, partition);
    let labels = Labels::new(&blocks);
    let generators = blocks.iter().map(|&b| generator_name(fan, partition.block(b))).collect();
    let cones: Vec<usize> = match mode {
        Mode::Full => (0..fan.num_faces()).collect(),
        Mode::Codim2 if fan.dim() >= 2 => fan.faces_of_dim(fan.dim() - 2),
        Mode::Codim2 => Vec::new(),
    };
    let mut relators = Vec::new();
    for c in cones {
        let fi = poset.facial_interval(fan, c)?;
        let chains = poset.maximal_chains(fi.min, fi.max, chain_limit)?;
        let Some((first, rest)) = chains.split_first() else { continue };
        let reference = labels.chain(partition, first).inverse();
        for ch in rest {
            let r = labels.chain(partition, ch).concat(&reference);
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }
    let type1 = relators.len();
    if !poset.check_nondegenerate(fan, partition)?.nondegenerate {
        for m in cat.morphisms() {
            let Some((&(s0, k0), rest)) = m.reps.split_first() else { continue };
            let w0 = labels.chain(partition, &rep_chain(fan, poset, s0, k0)?);
            for &(s, k) in rest {
                let w = labels.chain(partition, &rep_chain(fan, poset, s, k)?);
                let r = w0.concat(&w.inverse());
                if !r.is_empty() {
                    relators.push(r);
                }
            }
        }
    }
    let type2 = relators.len() - type1;
    Ok(PictureGroup { presentation: Presentation::new(generators, relators), blocks, type1, type2 })
}

/// `Ψ` on a morphism class: the label word of a chain from `σ⁻` up to `κ⁻`.
pub fn psi(cat: &Category, poset: &FanPoset, f: usize) -> Result<Word> {
    let (s, k) = cat.morphism(f).reps[0];
    psi_rep(cat, poset, s, k)
}

pub fn psi_rep(cat: &Category, poset: &FanPoset, s: usize, k: usize) -> Result<Word> {
    let blocks = wall_blocks(cat.fan(), cat.partition());
    let labels = Labels::new(&blocks);
    Ok(labels.chain(cat.partition(), &rep_chain(cat.fan(), poset, s, k)?))
}

/// Checks `Ψ(g∘f) = Ψ(f)Ψ(g)` on every composable pair. Both sides are label words of
/// maximal chains in `[σ⁻, τ⁻]`; extending each by a common chain to `σ⁺` turns them into
/// maximal chains of the facial interval of `σ`, whose relators witness the equality.
pub fn functor_check(cat: &Category, poset: &FanPoset) -> FunctorReport {
    let fan = cat.fan();
    let mut checked = 0;
    let fail = |f: usize, g: usize, why: String, checked: usize| FunctorReport {
        passed: false,
        checked,
        failure: Some((f, g)),
        reason: Some(why),
    };
    for (f, g) in cat.composable_pairs() {
        let h = match cat.compose(f, g) {
            Ok(h) => h,
            Err(e) => return fail(f, g, e.to_string(), checked),
        };
        let (s1, k1) = cat.morphism(f).reps[0];
        let Some(&(_, t1)) = cat
            .morphism(h)
            .reps
            .iter()
            .find(|&&(s, t)| s == s1 && fan.is_face_of(k1, t) && cat.class_of(k1, t).ok() == Some(g))
        else {
            return fail(f, g, "no matching representative".into(), checked);
        };
        let words = (|| -> Result<_> {
            Ok((
                psi(cat, poset, f)?,
                psi(cat, poset, g)?,
                psi(cat, poset, h)?,
                psi_rep(cat, poset, s1, k1)?,
                psi_rep(cat, poset, k1, t1)?,
                psi_rep(cat, poset, s1, t1)?,
            ))
        })();
        let (pf, pg, ph, rf, rg, rh) = match words {
            Ok(w) => w,
            Err(e) => return fail(f, g, e.to_string(), checked),
        };
        if pf != rf || pg != rg || ph != rh {
            return fail(f, g, "word depends on the representative".into(), checked);
        }
        if ph != pf.concat(&pg) {
            // Both chains must extend to maximal chains of the facial interval of σ₁.
            let ok = (|| -> Result<bool> {
                let fs = poset.facial_interval(fan, s1)?;
                let tmin = poset.facial_interval(fan, t1)?.min;
                let c1 = rep_chain(fan, poset, s1, t1)?;
                let mut c2 = rep_chain(fan, poset, s1, k1)?;
                c2.extend(rep_chain(fan, poset, k1, t1)?);
                let tail = canonical_chain(fan, poset, s1, tmin, fs.max);
                let valid = |c: &[Cover]| {
                    let mut cur = fs.min;
                    for cv in c.iter().chain(tail.iter()) {
                        if cv.lower != cur || !poset.covers().contains(cv) || !fs.members.contains(&cv.upper) {
                            return false;
                        }
                        cur = cv.upper;
                    }
                    cur == fs.max
                };
                Ok(valid(&c1) && valid(&c2))
            })();
            if !matches!(ok, Ok(true)) {
                return fail(f, g, "no chain witness".into(), checked);
            }
        }
        checked += 1;
    }
    FunctorReport { passed: true, checked, failure: None, reason: None }
}

/// Presentation with an extra generator `g_τ` per chamber.
pub fn alt_presentation(cat: &Category, poset: &FanPoset) -> Result<Presentation> {
    let fan = cat.fan();
    let partition = cat.partition();
    let nd = poset.check_nondegenerate(fan, partition)?;
    if let Some((a, _)) = nd.witness {
        return Err(Error::Degenerate(fan.face(a).clone()));
    }
    let min = poset.minimum().ok_or_else(|| Error::PosetInvalid("no minimum".into()))?;
    let blocks = wall_blocks(fan, partition);
    let labels = Labels::new(&blocks);
    let mut generators: Vec<String> = blocks.iter().map(|&b| generator_name(fan, partition.block(b))).collect();
    let base = generators.len();
    let g_of: HashMap<usize, usize> = poset.elements().iter().enumerate().map(|(i, &c)| (c, base + i)).collect();
    generators.extend(poset.elements().iter().map(|&c| chamber_name(fan, c)));
    let mut relators: Vec<Word> = poset
        .covers()
        .iter()
        .map(|c| {
            Word(vec![
                Letter::new(g_of[&c.lower], false),
                Letter::new(g_of[&c.upper], true),
                labels.letter(partition, c.wall).inverse(),
            ])
        })
        .collect();
    relators.push(Word::gen(g_of[&min]));
    Ok(Presentation::new(generators, relators))
}

/// The alternate presentation with every `g_τ` eliminated along a breadth-first tree of
/// covers from the minimum.
pub fn alt_eliminated(cat: &Category, poset: &FanPoset) -> Result<Presentation> {
    let alt = alt_presentation(cat, poset)?;
    let fan = cat.fan();
    let partition = cat.partition();
    let blocks = wall_blocks(fan, partition);
    let labels = Labels::new(&blocks);
    let min = poset.minimum().expect("checked");
    let mut value: HashMap<usize, Word> = HashMap::from([(min, Word::empty())]);
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([min]);
    while let Some(x) = queue.pop_front() {
        for (i, c) in poset.covers().iter().enumerate() {
            if c.lower == x && !value.contains_key(&c.upper) {
                // g_hi = X⁻¹ g_lo
                let w = Word(vec![labels.letter(partition, c.wall).inverse()]).concat(&value[&x]);
                value.insert(c.upper, w);
                tree.push(i);
                queue.push_back(c.upper);
            }
        }
    }
    let relators = poset
        .covers()
        .iter()
        .enumerate()
        .filter(|(i, _)| !tree.contains(i))
        .map(|(_, c)| {
            value[&c.lower]
                .concat(&value[&c.upper].inverse())
                .concat(&Word(vec![labels.letter(partition, c.wall).inverse()]))
        })
        .filter(|w| !w.is_empty())
        .collect();
    Ok(Presentation::new(alt.generators[..blocks.len()].to_vec(), relators))
}

/// A picture group presented over a fixed finer partition, with the generators of newly
/// identified walls equated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub base: Presentation,
    /// Least member of each base generator's block.
    pub generator_faces: Vec<usize>,
    pub partition: Partition,
}

impl QuotientPresentation {
    pub fn new(group: &PictureGroup, partition: &Partition) -> QuotientPresentation {
        QuotientPresentation {
            base: group.presentation.clone(),
            generator_faces: group.blocks.iter().map(|&b| partition.block(b)[0]).collect(),
            partition: partition.clone(),
        }
    }

    pub fn quotient(&self, coarse: &Partition) -> Result<QuotientPresentation> {
        if !self.partition.refines(coarse)? {
            return Err(Error::NotComparable);
        }
        Ok(QuotientPresentation { partition: coarse.clone(), ..self.clone() })
    }

    /// Identification relators `X_a X_b⁻¹` relative to the base generators.
    pub fn identifications(&self) -> Vec<Word> {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &face) in self.generator_faces.iter().enumerate() {
            classes.entry(self.partition.block_of(face)).or_default().push(i);
        }
        let mut out = Vec::new();
        for gens in classes.values() {
            for &other in &gens[1..] {
                out.push(Word(vec![Letter::new(gens[0], false), Letter::new(other, true)]));
            }
        }
        out.sort();
        out
    }

    pub fn presentation(&self) -> Presentation {
        let mut p = self.base.clone();
        p.relators.extend(self.identifications());
        p
    }
}

pub fn quotient_presentation(
    fine_group: &PictureGroup,
    fine: &Partition,
    coarse: &Partition,
) -> Result<QuotientPresentation> {
    QuotientPresentation::new(fine_group, fine).quotient(coarse)
}

/// Distinct parallel morphisms of a rank-2 category have distinct `Ψ`-images, separated
/// in the abelianization of the picture group.
pub fn rank2_faithfulness_certificate(cat: &Category, poset: &FanPoset) -> Result<Certificate> {
    if cat.fan().dim() != 2 {
        return Err(Error::NotRank2);
    }
    let group = picture_group(cat, poset, Mode::Full, crate::poset::DEFAULT_CHAIN_LIMIT)?;
    for morphs in cat.homs().values() {
        let words: Vec<Word> = morphs.iter().map(|&f| psi(cat, poset, f)).collect::<Result<_>>()?;
        for i in 0..morphs.len() {
            for j in i + 1..morphs.len() {
                if group.presentation.abelian_equal(&words[i], &words[j]) {
                    return Ok(Certificate { holds: false, witness: Some((morphs[i], morphs[j])) });
                }
            }
        }
    }
    Ok(Certificate { holds: true, witness: None })
}

/// Parallel morphisms out of a fixed source cone end at chambers with distinct lower
/// bounds. Requires a verified wall-algebra homomorphism for the generator hypothesis.
pub fn hom_distinctness_certificate(cat: &Category, poset: &FanPoset, wall_algebra_ok: bool) -> Result<Certificate> {
    if !wall_algebra_ok {
        return Err(Error::MissingWallAlgebraCertificate);
    }
    let fan = cat.fan();
    for morphs in cat.homs().values() {
        let s = cat.partition().block(cat.morphism(morphs[0]).src)[0];
        let mut lows: Vec<(usize, usize)> = Vec::new();
        for &f in morphs {
            let Some(&(_, k)) = cat.morphism(f).reps.iter().find(|r| r.0 == s) else {
                return Ok(Certificate { holds: false, witness: Some((f, f)) });
            };
            let lo = poset.facial_interval(fan, k).map_err(|_| Error::IntervalBroken(fan.face(k).clone()))?.min;
            if let Some(&(g, _)) = lows.iter().find(|l| l.1 == lo) {
                return Ok(Certificate { holds: false, witness: Some((g, f)) });
            }
            lows.push((f, lo));
        }
    }
    Ok(Certificate { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{fan_3lines, fan_hzb, fan_sq, partition_three_lines};
    use crate::linalg::q;
    use crate::poset::DEFAULT_CHAIN_LIMIT;

    fn torus(fan: &Fan) -> Partition {
        let id = |c: &[usize]| fan.id_of(c).unwrap();
        Partition::from_blocks(fan, &[vec![id(&[0]), id(&[2])], vec![id(&[1]), id(&[3])], fan.chambers()]).unwrap()
    }

    fn cyclic_variants(w: &Word) -> Vec<Word> {
        let mut out = Vec::new();
        for v in [w.clone(), w.inverse()] {
            for i in 0..v.len().max(1) {
                let mut x = v.0[i..].to_vec();
                x.extend_from_slice(&v.0[..i]);
                out.push(Word(x));
            }
        }
        out
    }

    #[test]
    fn torus_picture_group_is_commutator() {
        let fan = fan_sq();
        let cat = Category::new(&fan, &torus(&fan)).unwrap();
        let poset = FanPoset::from_functional(&fan, &[q(1), q(1)]).unwrap();
        let g = picture_group(&cat, &poset, Mode::Full, DEFAULT_CHAIN_LIMIT).unwrap();
        assert_eq!(g.presentation.generators.len(), 2);
        assert_eq!(g.presentation.relators.len(), 1);
        let r = &g.presentation.relators[0];
        assert_eq!(r.len(), 4);
        assert!(r.abelian(2).iter().all(|x| *x == 0.into()));
        assert_eq!(g.presentation.abelianization().free_rank, 2);
    }

    #[test]
    fn finest_square_and_alt() {
        let fan = fan_sq();
        let cat = Category::new(&fan, &Partition::finest(&fan)).unwrap();
        let poset = FanPoset::from_functional(&fan, &[q(1), q(1)]).unwrap();
        let g = picture_group(&cat, &poset, Mode::Full, DEFAULT_CHAIN_LIMIT).unwrap();
        assert_eq!((g.presentation.generators.len(), g.presentation.relators.len()), (4, 1));
        let alt = alt_presentation(&cat, &poset).unwrap();
        assert_eq!((alt.generators.len(), alt.relators.len()), (8, 5));
        let elim = alt_eliminated(&cat, &poset).unwrap();
        assert_eq!(elim.relators.len(), 1);
        assert!(cyclic_variants(&g.presentation.relators[0]).contains(&elim.relators[0]));
    }

    #[test]
    fn psi_words() {
        let fan = fan_sq();
        let cat = Category::new(&fan, &torus(&fan)).unwrap();
        let poset = FanPoset::from_functional(&fan, &[q(1), q(1)]).unwrap();
        for b in 0..cat.num_objects() {
            assert!(psi(&cat, &poset, cat.identity(b)).unwrap().is_empty());
        }
        let zero = cat.partition().block_of(0);
        let chambers = cat.partition().block_of(fan.chambers()[0]);
        let mut lens: Vec<usize> =
            cat.hom(zero, chambers).iter().map(|&f| psi(&cat, &poset, f).unwrap().len()).collect();
        lens.sort();
        assert_eq!(lens, vec![0, 1, 1, 2]);
        assert!(functor_check(&cat, &poset).passed);
        assert!(rank2_faithfulness_certificate(&cat, &poset).unwrap().holds);
    }

    #[test]
    fn quotients_compose() {
        let fan = fan_hzb(1);
        let fine = Partition::finest(&fan);
        let cat = Category::new(&fan, &fine).unwrap();
        let poset = FanPoset::from_functional(&fan, &[q(1), q(2)]).unwrap();
        let g = picture_group(&cat, &poset, Mode::Full, DEFAULT_CHAIN_LIMIT).unwrap();
        let same = quotient_presentation(&g, &fine, &fine).unwrap();
        assert!(same.identifications().is_empty());
        let coarse = Partition::coarsest(&fan);
        assert!(QuotientPresentation::new(&g, &coarse).quotient(&fine).is_err());
    }

    #[test]
    fn three_lines_faithful() {
        let fan = fan_3lines();
        let p = partition_three_lines(&fan);
        let cat = Category::new(&fan, &p).unwrap();
        let poset = FanPoset::bisector(&fan, fan.chambers()[0]).unwrap();
        let g = picture_group(&cat, &poset, Mode::Full, DEFAULT_CHAIN_LIMIT).unwrap();
        assert_eq!(g.presentation.generators.len(), 3);
        assert!(rank2_faithfulness_certificate(&cat, &poset).unwrap().holds);
        assert!(functor_check(&cat, &poset).passed);
    }

    #[test]
    fn brauer_certificate_needs_wall_algebra() {
        let fan = fan_sq();
        let cat = Category::new(&fan, &torus(&fan)).unwrap();
        let poset = FanPoset::from_functional(&fan, &[q(1), q(1)]).unwrap();
        assert_eq!(
            hom_distinctness_certificate(&cat, &poset, false).unwrap_err(),
            Error::MissingWallAlgebraCertificate
        );
        assert!(hom_distinctness_certificate(&cat, &poset, true).unwrap().holds);
    }
}
