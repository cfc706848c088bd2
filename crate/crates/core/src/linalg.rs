//! Exact rational linear algebra.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type QVec = Vec<Q>;
pub type IVec = Vec<BigInt>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qv(v: &[i64]) -> QVec {
    v.iter().map(|&x| q(x)).collect()
}

pub fn iv(v: &[i64]) -> IVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_q(v: &[BigInt]) -> QVec {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_i(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn sum_i(vs: &[&IVec], n: usize) -> IVec {
    let mut out = vec![BigInt::zero(); n];
    for v in vs {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += x;
        }
    }
    out
}

/// Unique primitive integer vector that is a positive multiple of `v`.
pub fn primitive_ray(v: &[Q]) -> Result<IVec> {
    if is_zero(v) {
        return Err(Error::ZeroVector);
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    Ok(primitive_int(&ints))
}

pub fn primitive_int(v: &[BigInt]) -> IVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Dense rational matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<QVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Q::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Q::one();
        }
        m
    }

    pub fn from_rows(data: Vec<QVec>, cols: usize) -> Self {
        Matrix { rows: data.len(), cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> QVec {
        self.data.iter().map(|row| dot(row, v)).collect()
    }

    pub fn apply_i(&self, v: &[BigInt]) -> QVec {
        self.apply(&to_q(v))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.rows;
        let mut a: Vec<QVec> = self.data.clone();
        let mut inv = Matrix::identity(n).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let t = &f * &a[col][j];
                        a[r][j] -= t;
                        let t = &f * &inv[col][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        Some(Matrix { rows: n, cols: n, data: inv })
    }
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[QVec], cols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut a: Vec<QVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &pv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[QVec], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

pub fn rank_i(rows: &[IVec], cols: usize) -> usize {
    let qs: Vec<QVec> = rows.iter().map(|r| to_q(r)).collect();
    rank(&qs, cols)
}

/// Canonical key of the row space of `rows`.
pub fn span_key(rows: &[QVec], cols: usize) -> Vec<QVec> {
    rref(rows, cols).0
}

/// Basis of the null space `{x : rows · x = 0}`.
pub fn nullspace(rows: &[QVec], cols: usize) -> Vec<QVec> {
    let (r, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            v
        })
        .collect()
}

/// Matrix of the orthogonal projection onto the orthogonal complement of `span(basis)`.
pub fn complement_projection(basis: &[QVec], dim: usize) -> Result<Matrix> {
    for b in basis {
        if b.len() != dim {
            return Err(Error::DimensionMismatch(b.len(), dim));
        }
    }
    if basis.is_empty() {
        return Ok(Matrix::identity(dim));
    }
    let b = Matrix::from_rows(basis.to_vec(), dim).transpose();
    let gram = b.transpose().mul(&b);
    let inv = gram.inverse().ok_or(Error::DependentBasis)?;
    let p = b.mul(&inv).mul(&b.transpose());
    Ok(Matrix::identity(dim).sub(&p))
}

/// Whether two generating sets span the same linear subspace.
pub fn span_equal(a: &[QVec], b: &[QVec]) -> Result<bool> {
    let n = a.iter().chain(b).map(|v| v.len()).next().unwrap_or(0);
    for v in a.iter().chain(b) {
        if v.len() != n {
            return Err(Error::DimensionMismatch(v.len(), n));
        }
    }
    Ok(span_key(a, n) == span_key(b, n))
}

/// Orthogonal rational basis of the orthogonal complement of `span(basis)`.
pub fn complement_frame(basis: &[QVec], dim: usize) -> Result<Vec<QVec>> {
    let p = complement_projection(basis, dim)?;
    let mut frame: Vec<QVec> = Vec::new();
    for j in 0..dim {
        let mut e = vec![Q::zero(); dim];
        e[j] = Q::one();
        let mut v = p.apply(&e);
        for f in &frame {
            let c = dot(&v, f) / dot(f, f);
            v = sub(&v, &scale(f, &c));
        }
        if !is_zero(&v) {
            frame.push(v);
        }
    }
    Ok(frame)
}

/// Coordinates of `v` in an orthogonal frame.
pub fn frame_coords(v: &[Q], frame: &[QVec]) -> QVec {
    frame.iter().map(|f| dot(v, f) / dot(f, f)).collect()
}

/// Primitive integer normal of the hyperplane spanned by `vs` (n−1 independent vectors),
/// normalized so that its first nonzero entry is positive.
pub fn hyperplane_normal(vs: &[QVec], dim: usize) -> Result<IVec> {
    let ns = nullspace(vs, dim);
    if ns.len() != 1 {
        return Err(Error::DependentBasis);
    }
    let mut n = primitive_ray(&ns[0])?;
    if n.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false) {
        n = n.iter().map(|x| -x).collect();
    }
    Ok(n)
}

/// Cyclic (counterclockwise from the positive x-axis) order of nonzero planar vectors.
pub fn angle_cmp(a: &[Q], b: &[Q]) -> Ordering {
    let half = |v: &[Q]| -> u8 {
        if v[1].is_negative() || (v[1].is_zero() && v[0].is_negative()) {
            1
        } else {
            0
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

pub fn cross2(a: &[Q], b: &[Q]) -> Q {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Sign of `a/√p + b/√q` for positive `p`, `q`.
pub fn sign_sqrt_sum(a: &Q, p: &Q, b: &Q, qq: &Q) -> Ordering {
    let sa = a.cmp(&Q::zero());
    let sb = b.cmp(&Q::zero());
    if sa == sb || sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    let lhs = a * a * qq;
    let rhs = b * b * p;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_ray(&qv(&[2, -4])).unwrap(), iv(&[1, -2]));
        let v = vec![Q::new(1.into(), 3.into()), Q::new(1.into(), 6.into())];
        assert_eq!(primitive_ray(&v).unwrap(), iv(&[2, 1]));
        assert_eq!(primitive_ray(&qv(&[0, 0, 5])).unwrap(), iv(&[0, 0, 1]));
        assert!(matches!(primitive_ray(&qv(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn projection_examples() {
        let p = complement_projection(&[qv(&[0, 1])], 2).unwrap();
        assert_eq!(p, Matrix::from_rows(vec![qv(&[1, 0]), qv(&[0, 0])], 2));
        assert_eq!(p.apply(&qv(&[-1, 1])), qv(&[-1, 0]));
        assert_eq!(complement_projection(&[], 3).unwrap(), Matrix::identity(3));
        assert!(matches!(
            complement_projection(&[qv(&[1, 1]), qv(&[2, 2])], 2),
            Err(Error::DependentBasis)
        ));
    }

    #[test]
    fn span_examples() {
        assert!(span_equal(&[qv(&[0, 1])], &[qv(&[0, -1])]).unwrap());
        assert!(!span_equal(&[qv(&[1, 0])], &[qv(&[0, 1])]).unwrap());
        assert!(span_equal(&[qv(&[1, 0]), qv(&[0, 1])], &[qv(&[1, 1]), qv(&[1, -1])]).unwrap());
        assert!(matches!(span_equal(&[qv(&[1, 0])], &[qv(&[1])]), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn angular_order() {
        let mut vs = vec![qv(&[0, -1]), qv(&[-1, 0]), qv(&[1, 1]), qv(&[1, 0]), qv(&[-1, 1])];
        vs.sort_by(|a, b| angle_cmp(a, b));
        assert_eq!(vs, vec![qv(&[1, 0]), qv(&[1, 1]), qv(&[-1, 1]), qv(&[-1, 0]), qv(&[0, -1])]);
    }

    #[test]
    fn sqrt_sign() {
        // 1/√2 - 1/√3 > 0
        assert_eq!(sign_sqrt_sum(&q(1), &q(2), &q(-1), &q(3)), Ordering::Greater);
        assert_eq!(sign_sqrt_sum(&q(1), &q(4), &q(-2), &q(16)), Ordering::Equal);
    }
}
