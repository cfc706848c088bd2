use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use partfan::arrangement::{arrangement_fan, Arrangement, ArrangementFan};
use partfan::builtins;
use partfan::category::Category;
use partfan::cw::build_cw;
use partfan::group::{Letter, Presentation, Word};
use partfan::linalg::{self, q, Matrix, Q, QVec};
use partfan::partition::{enumerate_admissible, potential_identifications, DEFAULT_ENUMERATION_LIMIT};
use partfan::picture::{self, picture_group, Mode, QuotientPresentation};
use partfan::poset::{FanPoset, DEFAULT_CHAIN_LIMIT};
use partfan::{Fan, Partition};

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn qvec(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(rational(), n)
}

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..max_len)
        .prop_map(|v| Word(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

fn small_fans() -> Vec<Fan> {
    vec![builtins::fan_sq(), builtins::fan_hzb(1), builtins::fan_hzb(2)]
}

fn rank2_fans() -> Vec<Fan> {
    vec![builtins::fan_sq(), builtins::fan_hzb(1), builtins::fan_hzb(2), builtins::fan_3lines()]
}

fn arrangements() -> &'static [ArrangementFan] {
    static CACHE: OnceLock<Vec<ArrangementFan>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let planar = Arrangement::new(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let octants = Arrangement::new(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        [planar, octants, Arrangement::brauer()].iter().map(|a| arrangement_fan(a).unwrap()).collect()
    })
}

/// Complete planar fan from a set of directions, or `None` if some gap is at least a half-turn.
fn planar_fan(dirs: &[(i64, i64)]) -> Option<Fan> {
    let mut prim: Vec<(i64, i64)> = dirs
        .iter()
        .filter(|d| **d != (0, 0))
        .map(|&(x, y)| {
            let g = x.gcd(&y);
            (x / g, y / g)
        })
        .collect();
    prim.sort_by(|a, b| {
        let (fa, fb) = ((a.1 as f64).atan2(a.0 as f64), (b.1 as f64).atan2(b.0 as f64));
        fa.partial_cmp(&fb).unwrap()
    });
    prim.dedup();
    if prim.len() < 3 {
        return None;
    }
    let m = prim.len();
    for i in 0..m {
        let (a, b) = (prim[i], prim[(i + 1) % m]);
        if a.0 * b.1 - a.1 * b.0 <= 0 {
            return None;
        }
    }
    let rays: Vec<Vec<i64>> = prim.iter().map(|&(x, y)| vec![x, y]).collect();
    let cones: Vec<Vec<usize>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    Fan::from_ints(2, &rays, &cones).ok()
}

fn planar_dirs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 3..8)
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    partfan::polyhedral::combinations(n, k)
}

/// Rank and gcd of the maximal nonzero minors: the order of the torsion subgroup.
fn minor_oracle(rows: &[Vec<i128>], cols: usize) -> (usize, i128) {
    for r in (1..=rows.len().min(cols)).rev() {
        let mut g: i128 = 0;
        for rs in subsets(rows.len(), r) {
            for cs in subsets(cols, r) {
                let m: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
                g = g.gcd(&det(&m));
            }
        }
        if g != 0 {
            return (r, g.abs());
        }
    }
    (0, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complement_projection_is_orthogonal_projector(basis in prop::collection::vec(qvec(3), 0..3)) {
        prop_assume!(linalg::rank(&basis, 3) == basis.len());
        let p = linalg::complement_projection(&basis, 3).unwrap();
        prop_assert_eq!(p.mul(&p), p.clone());
        prop_assert_eq!(p.transpose(), p.clone());
        for b in &basis {
            prop_assert!(linalg::is_zero(&p.apply(b)));
        }
        prop_assert_eq!(p.sub(&Matrix::identity(3)).mul(&p), Matrix::zeros(3, 3));
    }

    #[test]
    fn primitive_ray_is_scale_invariant(v in qvec(3), s in rational()) {
        prop_assume!(!linalg::is_zero(&v) && s.is_positive());
        let p = linalg::primitive_ray(&v).unwrap();
        prop_assert_eq!(linalg::primitive_ray(&linalg::scale(&v, &s)).unwrap(), p.clone());
        prop_assert_eq!(linalg::primitive_ray(&linalg::to_q(&p)).unwrap(), p.clone());
        let g = p.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        prop_assert!(g.is_one());
    }

    #[test]
    fn span_equal_is_an_equivalence(a in prop::collection::vec(qvec(3), 1..3), b in prop::collection::vec(qvec(3), 1..3), c in prop::collection::vec(qvec(3), 1..3)) {
        let eq = |x: &[QVec], y: &[QVec]| linalg::span_equal(x, y).unwrap();
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
        let doubled: Vec<QVec> = a.iter().map(|v| linalg::scale(v, &q(2))).collect();
        prop_assert!(eq(&a, &doubled));
    }

    #[test]
    fn word_reduction(w in word(4, 12), u in word(4, 12)) {
        let r = w.reduced();
        prop_assert_eq!(r.reduced(), r.clone());
        prop_assert!(r.0.windows(2).all(|p| p[0] != p[1].inverse()));
        prop_assert!(w.concat(&w.inverse()).is_empty());
        let sum: Vec<BigInt> = w.abelian(4).iter().zip(u.abelian(4)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(w.concat(&u).abelian(4), sum);
        prop_assert_eq!(w.abelian(4), r.abelian(4));
    }

    #[test]
    fn abelianization_matches_minor_oracle(rels in prop::collection::vec(word(3, 8), 0..4)) {
        let pres = Presentation::new(vec!["a".into(), "b".into(), "c".into()], rels);
        let rows: Vec<Vec<i128>> = pres.relator_matrix().iter().map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect()).collect();
        let (rank, order) = minor_oracle(&rows, 3);
        let ab = pres.abelianization();
        prop_assert_eq!(ab.free_rank, 3 - rank);
        let prod = ab.torsion.iter().fold(BigInt::one(), |p, t| p * t);
        prop_assert_eq!(prod, BigInt::from(order));
        prop_assert!(ab.torsion.iter().all(|t| t > &BigInt::one()));
        prop_assert!(ab.torsion.windows(2).all(|p| (&p[1] % &p[0]).is_zero()));
        let parsed = Presentation::parse_text(&pres.to_text()).unwrap();
        prop_assert_eq!(parsed.abelianization(), ab);
    }

    #[test]
    fn random_planar_fans(dirs in planar_dirs()) {
        let Some(fan) = planar_fan(&dirs) else { return Ok(()) };
        prop_assert!(fan.validate().valid);
        prop_assert!(fan.is_finite_complete());
        let m = fan.chambers().len();
        let link = fan.link_complex(&[0]).unwrap();
        prop_assert_eq!(link.vertices.len(), m);
        prop_assert_eq!(link.simplices_of_size(2), m);
        prop_assert!(link.is_pseudomanifold());
        for r in 0..fan.rays().len() {
            let l = fan.link_complex(&[fan.id_of(&[r]).unwrap()]).unwrap();
            prop_assert_eq!((l.vertices.len(), l.dimension()), (2, Some(0)));
        }
        let cw = build_cw(&fan, &Partition::finest(&fan)).unwrap();
        prop_assert_eq!(cw.cell_counts(), vec![m, m, 1]);
        prop_assert_eq!(cw.euler_characteristic(), 1);
        let coarse = Partition::coarsest(&fan);
        prop_assert!(coarse.is_admissible(&fan).unwrap().admissible);
    }

    #[test]
    fn functional_posets_are_nondegenerate(b in qvec(2), k in 0usize..3) {
        let fan = small_fans().swap_remove(k);
        let generic = fan.walls().iter().all(|&w| !linalg::dot(&b, &linalg::to_q(&fan.wall_normal(w))).is_zero());
        prop_assume!(generic);
        let poset = FanPoset::from_functional(&fan, &b).unwrap();
        // a wide minimum next to the maximum leaves their shared ray without an interval star
        prop_assume!(poset.check(&fan).intervals_ok);
        let fi = poset.facial_interval(&fan, 0).unwrap();
        prop_assert_eq!((Some(fi.min), Some(fi.max)), (poset.minimum(), poset.maximum()));
        for p in enumerate_admissible(&fan, DEFAULT_ENUMERATION_LIMIT).unwrap() {
            prop_assert!(poset.check_nondegenerate(&fan, &p).unwrap().nondegenerate);
        }
    }

    #[test]
    fn closure_is_least_admissible_partition(seeds in prop::collection::vec((0usize..64, 0usize..64), 0..3), k in 0usize..3) {
        let fan = small_fans().swap_remove(k);
        let idents = potential_identifications(&fan);
        let n = fan.num_faces();
        let pairs: Vec<(usize, usize)> = seeds
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|&(a, b)| idents.possible(a, b))
            .collect();
        let cl = Partition::closure(&fan, &pairs).unwrap();
        prop_assert!(cl.is_admissible(&fan).unwrap().admissible);
        for &(a, b) in &pairs {
            prop_assert!(cl.same_block(a, b));
        }
        let finest = Partition::finest(&fan);
        let coarsest = Partition::coarsest(&fan);
        for p in enumerate_admissible(&fan, DEFAULT_ENUMERATION_LIMIT).unwrap() {
            if pairs.iter().all(|&(a, b)| p.same_block(a, b)) {
                prop_assert!(cl.refines(&p).unwrap());
            }
            prop_assert!(finest.refines(&p).unwrap() && p.refines(&coarsest).unwrap());
        }
    }

    #[test]
    fn quotients_compose_along_lattice_chains(choices in prop::collection::vec(0usize..64, 8), k in 0usize..3) {
        let fan = small_fans().swap_remove(k);
        let all = enumerate_admissible(&fan, DEFAULT_ENUMERATION_LIMIT).unwrap();
        let fine = Partition::finest(&fan);
        let coarse = Partition::coarsest(&fan);
        let poset = FanPoset::from_functional(&fan, &[q(1), q(3)]).unwrap();
        let cat = Category::new(&fan, &fine).unwrap();
        let g = picture_group(&cat, &poset, Mode::Full, DEFAULT_CHAIN_LIMIT).unwrap();
        let start = QuotientPresentation::new(&g, &fine);
        let mut cur = start.clone();
        let mut here = fine.clone();
        for c in choices {
            let above: Vec<&Partition> = all.iter().filter(|p| **p != here && here.refines(p).unwrap()).collect();
            if above.is_empty() {
                break;
            }
            here = above[c % above.len()].clone();
            cur = cur.quotient(&here).unwrap();
        }
        cur = cur.quotient(&coarse).unwrap();
        let direct = start.quotient(&coarse).unwrap();
        prop_assert_eq!(cur.presentation().relator_multiset(), direct.presentation().relator_multiset());
    }

    #[test]
    fn regions_poset_is_the_functional_poset(idx in 0usize..64, which in 0usize..3) {
        let af = &arrangements()[which];
        let ch = af.fan.chambers();
        let base = ch[idx % ch.len()];
        let regions = af.poset_of_regions(base).unwrap();
        let b: QVec = af.fan.interior_point(base).iter().map(|x| -BigRational::from_integer(x.clone())).collect();
        let functional = FanPoset::from_functional(&af.fan, &b).unwrap();
        let covers = |p: &FanPoset| p.covers().iter().map(|c| (c.lower, c.upper)).collect::<BTreeSet<_>>();
        prop_assert_eq!(covers(&regions), covers(&functional));
        prop_assert_eq!(regions.minimum(), Some(base));
        for c in regions.covers() {
            let lo = af.separating_set(base, c.lower).unwrap();
            let hi = af.separating_set(base, c.upper).unwrap();
            prop_assert_eq!(lo.len() + 1, hi.len());
            prop_assert!(lo.iter().all(|h| hi.contains(h)));
        }
    }

    #[test]
    fn shards_partition_the_walls(idx in 0usize..64, which in 0usize..3) {
        let af = &arrangements()[which];
        let fan = &af.fan;
        let ch = fan.chambers();
        let base = ch[idx % ch.len()];
        let shards = af.shards(base).unwrap();
        let mut seen = BTreeSet::new();
        for s in &shards {
            for &w in &s.walls {
                prop_assert!(seen.insert(w));
                prop_assert_eq!(af.support(w).unwrap().hyperplanes, BTreeSet::from([s.hyperplane]));
            }
        }
        prop_assert_eq!(seen, fan.walls().into_iter().collect::<BTreeSet<_>>());
        let sp = af.shard_partition(base).unwrap();
        let fp = af.flat_partition().unwrap();
        prop_assert!(sp.is_admissible(fan).unwrap().admissible);
        prop_assert!(fp.is_admissible(fan).unwrap().admissible);
        prop_assert!(sp.refines(&fp).unwrap());
        prop_assert_eq!(&fp, &Partition::coarsest(fan));
    }
}

#[test]
fn categories_of_admissible_partitions() {
    for fan in small_fans() {
        let fan = &fan;
        for p in enumerate_admissible(fan, DEFAULT_ENUMERATION_LIMIT).unwrap() {
            let cat = Category::new(fan, &p).unwrap();
            assert_eq!(cat.check_associativity(), None);
            assert_eq!(cat.check_well_defined(), None);
            for b in 0..cat.num_objects() {
                for t in 0..cat.num_objects() {
                    let brute: BTreeSet<_> = p
                        .block(b)
                        .iter()
                        .flat_map(|&s| p.block(t).iter().filter(move |&&x| fan.is_face_of(s, x)).map(move |&x| (s, x)))
                        .map(|(s, x)| fan.projected(s, x).unwrap().clone())
                        .collect();
                    assert_eq!(cat.hom(b, t).len(), brute.len());
                }
            }
            for f in 0..cat.num_morphisms() {
                let m = cat.morphism(f);
                assert!(m.reps.iter().all(|&(s, t)| fan.face_dim(t) - fan.face_dim(s) == m.rank));
                let cube = cat.factorization_cube(f);
                assert_eq!(cube.objects.len(), 1 << m.rank);
            }
            let cw = build_cw(fan, &p).unwrap();
            let mut by_dim = vec![0; 3];
            for b in p.blocks() {
                by_dim[2 - fan.face_dim(b[0])] += 1;
            }
            assert_eq!(cw.cell_counts(), by_dim);
        }
    }
}

#[test]
fn psi_on_rank2_builtins() {
    for fan in rank2_fans() {
        let mut parts = vec![Partition::finest(&fan)];
        if fan.num_faces() <= DEFAULT_ENUMERATION_LIMIT && fan.rays().len() < 6 {
            parts = enumerate_admissible(&fan, DEFAULT_ENUMERATION_LIMIT).unwrap();
        }
        for c in fan.chambers() {
            let poset = FanPoset::bisector(&fan, c).unwrap();
            assert!(poset.check(&fan).intervals_ok);
            for p in &parts {
                if !poset.check_nondegenerate(&fan, p).unwrap().nondegenerate {
                    continue;
                }
                let cat = Category::new(&fan, p).unwrap();
                for b in 0..cat.num_objects() {
                    assert!(picture::psi(&cat, &poset, cat.identity(b)).unwrap().is_empty());
                }
                assert!(picture::functor_check(&cat, &poset).passed);
            }
        }
    }
}

#[test]
fn attaching_words_are_closed_and_sized() {
    for fan in small_fans() {
        for p in enumerate_admissible(&fan, DEFAULT_ENUMERATION_LIMIT).unwrap() {
            let cw = build_cw(&fan, &p).unwrap();
            for cell in &cw.two_cells {
                assert!(cw.is_closed_path(&cell.word));
                let rep = p.block(cell.block)[0];
                assert_eq!(cell.word.len(), fan.star_chambers(rep).len());
            }
        }
    }
}
