//! The CW structure of the classifying space: one cell per block, attaching words of the
//! 2-cells and a spanning-tree presentation of the fundamental group.

use std::collections::VecDeque;

use crate::category::Category;
use crate::error::{Error, Result};
use crate::fan::{CanonicalCone, Fan};
use crate::group::{Abelianization, Letter, Presentation, Word};
use crate::linalg::{self, to_q};
use crate::partition::Partition;
use crate::picture::generator_name;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCell {
    pub block: usize,
    pub name: String,
    /// 0-cell indices.
    pub tail: usize,
    pub head: usize,
    /// Projection of the chamber on the positive side, relative to the representative wall.
    positive: CanonicalCone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub block: usize,
    /// Cyclic attaching word over 1-cell indices.
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwComplex {
    pub dim: usize,
    /// Blocks carrying the cells of each dimension.
    pub cells: Vec<Vec<usize>>,
    pub one_cells: Vec<OneCell>,
    pub two_cells: Vec<TwoCell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Comparison {
    pub generators_match: bool,
    pub abelian_match: bool,
    pub pi1_generators: usize,
    pub picture_generators: usize,
    pub pi1_abelian: Abelianization,
    pub picture_abelian: Abelianization,
}

impl Pi1Comparison {
    pub fn matches(&self) -> bool {
        self.generators_match && self.abelian_match
    }
}

/// Chambers of the star of a codimension-2 cone in angular order around it.
fn cyclic_star(fan: &Fan, s: usize) -> Vec<usize> {
    let frame = linalg::complement_frame(&fan.ray_vectors(s), fan.dim()).expect("complement frame");
    let mut chambers: Vec<(usize, Vec<_>)> = fan
        .star_chambers(s)
        .into_iter()
        .map(|c| (c, linalg::frame_coords(&to_q(&fan.interior_point(c)), &frame)))
        .collect();
    chambers.sort_by(|a, b| linalg::angle_cmp(&a.1, &b.1));
    chambers.into_iter().map(|(c, _)| c).collect()
}

fn shared_wall(fan: &Fan, a: usize, b: usize) -> usize {
    let common: Vec<usize> = fan.face(a).iter().copied().filter(|r| fan.face(b).contains(r)).collect();
    fan.id_of(&common).expect("adjacent chambers share a wall")
}

pub fn build_cw(fan: &Fan, partition: &Partition) -> Result<CwComplex> {
    if !fan.is_finite_complete() {
        return Err(Error::NotComplete);
    }
    let adm = partition.is_admissible(fan)?;
    if !adm.admissible {
        return Err(Error::NotAdmissible(
            adm.witness.map(|w| w.map(|c| fan.face(c).clone())),
        ));
    }
    let n = fan.dim();
    let mut cells = vec![Vec::new(); n + 1];
    for b in 0..partition.num_blocks() {
        cells[n - fan.face_dim(partition.block(b)[0])].push(b);
    }
    let vertex = |chamber: usize| cells[0].iter().position(|&b| b == partition.block_of(chamber)).expect("chamber block");
    let mut one_cells = Vec::new();
    for &b in cells.get(1).map(|v| v.as_slice()).unwrap_or(&[]) {
        let w = partition.block(b)[0];
        let (neg, pos) = fan.wall_sides(w).expect("complete fan");
        let (vn, vp) = (vertex(neg), vertex(pos));
        let (tail, head, positive) = if vn > vp {
            (vp, vn, fan.projected(w, neg)?.clone())
        } else {
            (vn, vp, fan.projected(w, pos)?.clone())
        };
        one_cells.push(OneCell { block: b, name: generator_name(fan, partition.block(b)), tail, head, positive });
    }
    let mut two_cells = Vec::new();
    if n >= 2 {
        for &b in &cells[2] {
            let s = partition.block(b)[0];
            let ring = cyclic_star(fan, s);
            let mut letters = Vec::new();
            for i in 0..ring.len() {
                let (from, to) = (ring[i], ring[(i + 1) % ring.len()]);
                let w = shared_wall(fan, from, to);
                let e = one_cells.iter().position(|c| c.block == partition.block_of(w)).expect("1-cell");
                let forward = fan.projected(w, to)? == &one_cells[e].positive;
                letters.push(Letter::new(e, !forward));
            }
            two_cells.push(TwoCell { block: b, word: Word(letters) });
        }
    }
    Ok(CwComplex { dim: n, cells, one_cells, two_cells })
}

pub fn build_cw_for(cat: &Category) -> Result<CwComplex> {
    build_cw(cat.fan(), cat.partition())
}

impl CwComplex {
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(d, c)| if d % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) }).sum()
    }

    /// Generators are the 1-cells off a breadth-first spanning tree rooted at the first
    /// 0-cell; relators are the 2-cell words with tree edges deleted.
    pub fn pi1_presentation(&self) -> Result<Presentation> {
        let nv = self.cells[0].len();
        if nv == 0 {
            return Err(Error::Disconnected);
        }
        let mut seen = vec![false; nv];
        let mut tree = vec![false; self.one_cells.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for (i, e) in self.one_cells.iter().enumerate() {
                let other = if e.tail == v {
                    e.head
                } else if e.head == v {
                    e.tail
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    tree[i] = true;
                    queue.push_back(other);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }
        let gens: Vec<usize> = (0..self.one_cells.len()).filter(|&i| !tree[i]).collect();
        let relators = self
            .two_cells
            .iter()
            .map(|c| {
                Word(
                    c.word
                        .0
                        .iter()
                        .filter(|l| !tree[l.gen])
                        .map(|l| Letter::new(gens.iter().position(|&g| g == l.gen).unwrap(), l.inv))
                        .collect(),
                )
                .reduced()
            })
            .filter(|w| !w.is_empty())
            .collect();
        Ok(Presentation::new(gens.iter().map(|&i| self.one_cells[i].name.clone()).collect(), relators))
    }

    /// Whether a word over 1-cells traces a closed edge path in the 1-skeleton.
    pub fn is_closed_path(&self, word: &Word) -> bool {
        let ends = |l: &Letter| {
            let e = &self.one_cells[l.gen];
            if l.inv { (e.head, e.tail) } else { (e.tail, e.head) }
        };
        let n = word.len();
        (0..n).all(|i| ends(&word.0[i]).1 == ends(&word.0[(i + 1) % n]).0)
    }

    pub fn one_cell_names(&self) -> Vec<String> {
        self.one_cells.iter().map(|c| c.name.clone()).collect()
    }
}

/// Compare the π₁ presentation with a picture-group presentation when all chambers form a
/// single block.
pub fn compare_pi1_picture(cw: &CwComplex, picture: &Presentation) -> Result<Pi1Comparison> {
    if cw.cells[0].len() != 1 {
        return Err(Error::PreconditionUnmet("maximal cones are not all identified".into()));
    }
    let pi1 = cw.pi1_presentation()?;
    let (a, b) = (pi1.abelianization(), picture.abelianization());
    Ok(Pi1Comparison {
        generators_match: pi1.num_generators() == picture.num_generators(),
        abelian_match: a == b,
        pi1_generators: pi1.num_generators(),
        picture_generators: picture.num_generators(),
        pi1_abelian: a,
        picture_abelian: b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{fan_hzb, fan_octants, fan_sq, partition_hzb_p1, partition_torus};

    #[test]
    fn torus() {
        let fan = fan_sq();
        let cw = build_cw(&fan, &partition_torus(&fan)).unwrap();
        assert_eq!(cw.cell_counts(), vec![1, 2, 1]);
        assert_eq!(cw.euler_characteristic(), 0);
        let p = cw.pi1_presentation().unwrap();
        assert_eq!((p.num_generators(), p.relators.len()), (2, 1));
        assert_eq!(p.abelianization().free_rank, 2);
        assert_eq!(cw.two_cells[0].word.len(), 4);
    }

    #[test]
    fn cylinder() {
        let fan = fan_hzb(1);
        let cw = build_cw(&fan, &partition_hzb_p1(&fan)).unwrap();
        assert_eq!(cw.cell_counts(), vec![2, 3, 1]);
        assert_eq!(cw.euler_characteristic(), 0);
        let p = cw.pi1_presentation().unwrap().simplify();
        assert_eq!((p.num_generators(), p.relators.len()), (1, 0));
    }

    #[test]
    fn disk_and_octants() {
        let fan = fan_sq();
        let cw = build_cw(&fan, &Partition::finest(&fan)).unwrap();
        assert_eq!(cw.cell_counts(), vec![4, 4, 1]);
        assert_eq!(cw.euler_characteristic(), 1);
        let p = cw.pi1_presentation().unwrap();
        assert_eq!((p.num_generators(), p.relators.len(), p.relators[0].len()), (1, 1, 1));
        assert_eq!(p.simplify().num_generators(), 0);
        assert!(cw.two_cells.iter().all(|c| cw.is_closed_path(&c.word)));
        let oct = fan_octants();
        let cw = build_cw(&oct, &Partition::finest(&oct)).unwrap();
        assert_eq!(cw.cell_counts(), vec![8, 12, 6, 1]);
        assert_eq!(cw.euler_characteristic(), 1);
    }
}
