//! Exact rationals, rational vectors and the small amount of linear algebra
//! needed on top of them.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

pub type Q = num_rational::Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Fractional part `q - floor(q)`, always in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

/// Lowest-terms `p/q` rendering; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serde helper writing a rational as its `fmt_q` string.
pub fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub fn parse_q(s: &str) -> Result<Q, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((a, b)) => {
            let n: i64 = a.trim().parse().map_err(|_| bad())?;
            let d: i64 = b.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(q(t.parse().map_err(|_| bad())?)),
    }
}

/// A vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVec(pub Vec<Q>);

impl QVec {
    pub fn zeros(n: usize) -> Self {
        QVec(vec![Q::zero(); n])
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I) -> Self {
        QVec(it.into_iter().map(q).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVec) -> Q {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: Q) -> QVec {
        QVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Q> {
        self.0.iter()
    }

    /// Integer coordinates, if every entry is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_q).collect()
    }
}

impl fmt::Debug for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for QVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl Index<usize> for QVec {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVec {
    fn index_mut(&mut self, i: usize) -> &mut Q {
        &mut self.0[i]
    }
}

impl Add<&QVec> for &QVec {
    type Output = QVec;
    fn add(self, o: &QVec) -> QVec {
        QVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&QVec> for &QVec {
    type Output = QVec;
    fn sub(self, o: &QVec) -> QVec {
        QVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVec {
    type Output = QVec;
    fn neg(self) -> QVec {
        QVec(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<Q> for &QVec {
    type Output = QVec;
    fn mul(self, c: Q) -> QVec {
        self.scale(c)
    }
}

/// Dense square or rectangular matrix over Q, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn from_ints(rows: usize, cols: usize, data: &[i64]) -> Self {
        QMat { rows, cols, data: data.iter().map(|&x| q(x)).collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> Q {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn mul(&self, o: &QMat) -> QMat {
        assert_eq!(self.cols, o.rows);
        let mut m = QMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    m.data[idx] += a * o.at(k, j);
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        assert_eq!(self.cols, v.len());
        QVec(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.at(i, j) * v[j]).sum())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> QVec {
        QVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.at(r, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let d = a.at(c, c);
            for j in 0..n {
                a.data[c * n + j] /= d;
                inv.data[c * n + j] /= d;
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.at(r, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (x, y) = (a.at(c, j), inv.at(c, j));
                    a.data[r * n + j] -= f * x;
                    inv.data[r * n + j] -= f * y;
                }
            }
        }
        Some(inv)
    }

    /// Positive definiteness of a symmetric matrix via leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.rows;
        (1..=n).all(|k| {
            let mut m = QMat::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    m.set(i, j, self.at(i, j));
                }
            }
            m.determinant().is_positive()
        })
    }

    pub fn determinant(&self) -> Q {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.at(r, c).is_zero()) else {
                return Q::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let d = a.at(c, c);
            det *= d;
            for r in c + 1..n {
                let f = a.at(r, c) / d;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let x = a.at(c, j);
                    a.data[r * n + j] -= f * x;
                }
            }
        }
        det
    }
}

/// Solves `m x = b` exactly. Returns one solution plus a basis of the kernel,
/// or `None` when the system is inconsistent.
pub fn solve_affine(m: &QMat, b: &QVec) -> Option<(QVec, Vec<QVec>)> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let mut r = m.row(i).0;
            r.push(b[i]);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let d = a[r][c];
        for x in a[r].iter_mut() {
            *x /= d;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..=cols {
                    let t = a[r][j];
                    a[i][j] -= f * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = QVec::zeros(cols);
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols];
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = QVec::zeros(cols);
            v[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][f];
            }
            v
        })
        .collect();
    Some((x, kernel))
}

pub fn lcm_all<I: IntoIterator<Item = i64>>(it: I) -> i64 {
    it.into_iter().fold(1, |a, b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_is_in_unit_interval() {
        assert_eq!(frac(qr(-1, 3)), qr(2, 3));
        assert_eq!(frac(qr(7, 2)), qr(1, 2));
        assert_eq!(frac(q(3)), q(0));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["1/2", "-3/4", "5", "0"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("2/4").unwrap()), "1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let a = QMat::from_ints(2, 2, &[2, -1, -1, 2]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.at(0, 0), qr(2, 3));
        assert_eq!(inv.at(0, 1), qr(1, 3));
        assert_eq!(a.mul(&inv), QMat::identity(2));
    }

    #[test]
    fn affine_solve_reports_kernel() {
        let m = QMat::from_ints(1, 3, &[1, 1, 0]);
        let (x, ker) = solve_affine(&m, &QVec::from_ints([2])).unwrap();
        assert_eq!(m.apply(&x), QVec::from_ints([2]));
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(m.apply(k).is_zero());
        }
        let bad = QMat::from_ints(2, 1, &[1, 1]);
        assert!(solve_affine(&bad, &QVec::from_ints([0, 1])).is_none());
    }
}
