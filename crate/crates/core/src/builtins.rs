//! Built-in example fans and arrangements.

use crate::fan::Fan;
use crate::partition::Partition;

/// Fan of the Hirzebruch surface: rays (1,0), (0,-1), (-1,a), (0,1).
pub fn fan_hzb(a: i64) -> Fan {
    Fan::from_ints(
        2,
        &[vec![1, 0], vec![0, -1], vec![-1, a], vec![0, 1]],
        &[vec![0, 3], vec![0, 1], vec![1, 2], vec![2, 3]],
    )
    .expect("hirzebruch fan")
}

/// Complete fan of the four coordinate quadrants in the plane.
pub fn fan_sq() -> Fan {
    Fan::from_ints(
        2,
        &[vec![1, 0], vec![0, -1], vec![-1, 0], vec![0, 1]],
        &[vec![0, 3], vec![0, 1], vec![1, 2], vec![2, 3]],
    )
    .expect("square fan")
}

/// Complete planar fan on the three lines through ±(1,0), ±(0,1), ±(2,-3), rays in
/// counterclockwise order.
pub fn fan_3lines() -> Fan {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-2, 3], vec![-1, 0], vec![0, -1], vec![2, -3]];
    let cones: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
    Fan::from_ints(2, &rays, &cones).expect("three-lines fan")
}

/// The eight coordinate orthants of ℝ³.
pub fn fan_octants() -> Fan {
    let rays = vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]];
    let mut cones = Vec::new();
    for x in 0..2 {
        for y in 2..4 {
            for z in 4..6 {
                cones.push(vec![x, y, z]);
            }
        }
    }
    Fan::from_ints(3, &rays, &cones).expect("octant fan")
}

/// Normals of the rank-3 Brauer cycle arrangement: the seven nonzero 0/1 vectors.
pub const BRAUER_NORMALS: [[i64; 3]; 7] =
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]];

fn ray_face(fan: &Fan, i: usize) -> usize {
    fan.id_of(&[i]).expect("ray")
}

/// Opposite rays of the square identified, all chambers in one block.
pub fn partition_torus(fan: &Fan) -> Partition {
    let r = |i| ray_face(fan, i);
    Partition::from_blocks(fan, &[vec![r(0), r(2)], vec![r(1), r(3)], fan.chambers()]).expect("torus partition")
}

/// Closure of `σ₂ ∼ σ₄` on the Hirzebruch fan.
pub fn partition_hzb_p1(fan: &Fan) -> Partition {
    Partition::closure(fan, &[(ray_face(fan, 1), ray_face(fan, 3))]).expect("hirzebruch partition")
}

/// Opposite rays of the three lines identified, all chambers in one block.
pub fn partition_three_lines(fan: &Fan) -> Partition {
    let ch = fan.chambers();
    let mut seeds: Vec<(usize, usize)> = (0..3).map(|i| (ray_face(fan, i), ray_face(fan, i + 3))).collect();
    seeds.extend(ch[1..].iter().map(|&c| (ch[0], c)));
    Partition::closure(fan, &seeds).expect("three-lines partition")
}
