//! Homogeneous linear systems: exact feasibility and extreme rays of polyhedral cones.

use num_traits::{Signed, Zero};

use crate::linalg::{self, dot, nullspace, primitive_ray, rank, IVec, Matrix, QVec, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    Ge,
    Gt,
}

/// A homogeneous constraint `coeffs · x (rel) 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub coeffs: QVec,
    pub rel: Rel,
}

impl Constraint {
    pub fn new(coeffs: QVec, rel: Rel) -> Self {
        Constraint { coeffs, rel }
    }

    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let s = lead.abs();
            for c in self.coeffs.iter_mut() {
                *c = &*c / &s;
            }
            if self.rel == Rel::Eq && lead.is_negative() {
                for c in self.coeffs.iter_mut() {
                    *c = -c.clone();
                }
            }
        }
        self
    }
}

/// Whether a homogeneous system of equalities, weak and strict inequalities has a solution.
/// Fourier–Motzkin elimination with strictness tracking.
pub fn feasible(constraints: &[Constraint], dim: usize) -> bool {
    let mut cs: Vec<Constraint> = constraints.iter().cloned().map(Constraint::normalized).collect();
    for var in 0..dim {
        if let Some(pos) = cs.iter().position(|c| c.rel == Rel::Eq && !c.coeffs[var].is_zero()) {
            let e = cs.remove(pos);
            let a = e.coeffs[var].clone();
            for c in cs.iter_mut() {
                if c.coeffs[var].is_zero() {
                    continue;
                }
                let f = &c.coeffs[var] / &a;
                for j in 0..dim {
                    let t = &f * &e.coeffs[j];
                    c.coeffs[j] -= t;
                }
            }
        } else {
            let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for c in cs.drain(..) {
                if c.coeffs[var].is_positive() {
                    pos.push(c);
                } else if c.coeffs[var].is_negative() {
                    neg.push(c);
                } else {
                    rest.push(c);
                }
            }
            for p in &pos {
                for n in &neg {
                    let a = p.coeffs[var].clone();
                    let b = -n.coeffs[var].clone();
                    let coeffs: QVec = (0..dim).map(|j| &p.coeffs[j] * &b + &n.coeffs[j] * &a).collect();
                    let rel = if p.rel == Rel::Gt || n.rel == Rel::Gt { Rel::Gt } else { Rel::Ge };
                    rest.push(Constraint::new(coeffs, rel).normalized());
                }
            }
            rest.sort();
            rest.dedup();
            cs = rest;
        }
        if cs.iter().any(|c| c.rel == Rel::Gt && linalg::is_zero(&c.coeffs)) {
            return false;
        }
    }
    !cs.iter().any(|c| c.rel == Rel::Gt)
}

/// Extreme rays of the pointed cone `{x : eqs·x = 0, ineqs·x >= 0}`.
pub fn extreme_rays(eqs: &[QVec], ineqs: &[QVec], dim: usize) -> Vec<IVec> {
    let basis = nullspace(eqs, dim);
    let d = basis.len();
    if d == 0 {
        return Vec::new();
    }
    let lift = |y: &[Q]| -> QVec {
        let mut x = vec![Q::zero(); dim];
        for (b, c) in basis.iter().zip(y) {
            for j in 0..dim {
                x[j] += &b[j] * c;
            }
        }
        x
    };
    let reduced: Vec<QVec> = ineqs.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let mut out: Vec<IVec> = Vec::new();
    let mut consider = |y: QVec| {
        for s in [1i64, -1] {
            let ys: QVec = y.iter().map(|c| c * linalg::q(s)).collect();
            if reduced.iter().all(|a| !dot(a, &ys).is_negative()) {
                let r = primitive_ray(&lift(&ys)).expect("nonzero");
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    };
    if d == 1 {
        consider(vec![Q::from_integer(1.into())]);
    } else {
        for subset in combinations(reduced.len(), d - 1) {
            let rows: Vec<QVec> = subset.iter().map(|&i| reduced[i].clone()).collect();
            if rank(&rows, d) != d - 1 {
                continue;
            }
            let ns = nullspace(&rows, d);
            consider(ns[0].clone());
        }
    }
    out.sort();
    out
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// H-representation of a simplicial cone: equalities cutting out its span and
/// inequalities from the dual basis inside the span.
pub fn simplicial_hrep(rays: &[QVec], dim: usize) -> Option<(Vec<QVec>, Vec<QVec>)> {
    let eqs = nullspace(rays, dim);
    if rays.is_empty() {
        return Some((eqs, Vec::new()));
    }
    let r = Matrix::from_rows(rays.to_vec(), dim);
    let gram = r.mul(&r.transpose());
    let inv = gram.inverse()?;
    let u = inv.mul(&r);
    Some((eqs, u.data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{iv, qv};

    #[test]
    fn strict_systems() {
        // x > 0, -x > 0 infeasible
        let c = vec![Constraint::new(qv(&[1]), Rel::Gt), Constraint::new(qv(&[-1]), Rel::Gt)];
        assert!(!feasible(&c, 1));
        // x >= 0, -x >= 0 feasible (x = 0)
        let c = vec![Constraint::new(qv(&[1]), Rel::Ge), Constraint::new(qv(&[-1]), Rel::Ge)];
        assert!(feasible(&c, 1));
        // x > 0, y > 0, x + y = 0 infeasible
        let c = vec![
            Constraint::new(qv(&[1, 0]), Rel::Gt),
            Constraint::new(qv(&[0, 1]), Rel::Gt),
            Constraint::new(qv(&[1, 1]), Rel::Eq),
        ];
        assert!(!feasible(&c, 2));
        // x > 0, x - y = 0 feasible
        let c = vec![Constraint::new(qv(&[1, 0]), Rel::Gt), Constraint::new(qv(&[1, -1]), Rel::Eq)];
        assert!(feasible(&c, 2));
    }

    #[test]
    fn rays_of_quadrant_intersection() {
        let (e1, i1) = simplicial_hrep(&[qv(&[1, 0]), qv(&[0, 1])], 2).unwrap();
        let (e2, i2) = simplicial_hrep(&[qv(&[1, 0]), qv(&[1, 1])], 2).unwrap();
        let eqs: Vec<QVec> = e1.into_iter().chain(e2).collect();
        let ineqs: Vec<QVec> = i1.into_iter().chain(i2).collect();
        assert_eq!(extreme_rays(&eqs, &ineqs, 2), vec![iv(&[1, 0]), iv(&[1, 1])]);
    }

    #[test]
    fn rays_of_trivial_intersection() {
        let (e1, i1) = simplicial_hrep(&[qv(&[1, 0])], 2).unwrap();
        let (e2, i2) = simplicial_hrep(&[qv(&[-1, 0])], 2).unwrap();
        let eqs: Vec<QVec> = e1.into_iter().chain(e2).collect();
        let ineqs: Vec<QVec> = i1.into_iter().chain(i2).collect();
        assert!(extreme_rays(&eqs, &ineqs, 2).is_empty());
    }
}
